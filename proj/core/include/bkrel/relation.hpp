#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bkrel/lattice.hpp"

namespace bkrel {

/// A named finite set: the source or target universe of a relation.  Label
/// order is significant; two signatures wire together when their labels
/// match position by position.
class DomainSig {
public:
  DomainSig(std::string name, std::vector<std::string> labels);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::string describe() const;  // "A{a0,a1}"

private:
  std::string name_;
  std::vector<std::string> labels_;
};

/// Positional label equality; the domain *name* does not participate, so a
/// relation loaded from a file (which names only its labels) can wire against
/// a programmatically built one.
bool same_labels(const DomainSig& a, const DomainSig& b);
bool operator==(const DomainSig& a, const DomainSig& b);

/// An immutable fuzzy relation: a dense |source| x |target| matrix of truth
/// values over one lattice.
class Relation {
public:
  Relation(DomainSig source, DomainSig target,
           std::shared_ptr<const Lattice> lattice, std::vector<TruthValue> cells);

  static Relation constant(DomainSig source, DomainSig target,
                           std::shared_ptr<const Lattice> lattice, TruthValue v);
  static Relation zeros(DomainSig source, DomainSig target,
                        std::shared_ptr<const Lattice> lattice);
  static Relation ones(DomainSig source, DomainSig target,
                       std::shared_ptr<const Lattice> lattice);
  /// Crisp identity E on one domain: top on the diagonal, bottom elsewhere.
  static Relation identity(DomainSig domain, std::shared_ptr<const Lattice> lattice);
  /// Row-major unit-interval values; unit-interval lattices only.
  static Relation from_units(DomainSig source, DomainSig target,
                             std::shared_ptr<const Lattice> lattice,
                             const std::vector<double>& values);
  /// Row-major element names, resolved through Lattice::parse_value.
  static Relation from_names(DomainSig source, DomainSig target,
                             std::shared_ptr<const Lattice> lattice,
                             const std::vector<std::string>& values);

  const DomainSig& source() const noexcept { return source_; }
  const DomainSig& target() const noexcept { return target_; }
  const Lattice& lattice() const noexcept { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const noexcept { return lattice_; }
  std::size_t rows() const noexcept { return source_.size(); }
  std::size_t cols() const noexcept { return target_.size(); }
  TruthValue at(std::size_t i, std::size_t j) const;

  std::string describe() const;  // "A{..} -> B{..} over godel"

private:
  DomainSig source_;
  DomainSig target_;
  std::shared_ptr<const Lattice> lattice_;
  std::vector<TruthValue> cells_;  // row-major
};

/// result(j,i) = r(i,j); source and target swap.
Relation converse(const Relation& r);

/// (r o s)(i,k) = join_j tensor(r(i,j), s(j,k)).
Relation circle(const Relation& r, const Relation& s);

/// (r <| s)(i,k) = meet_j residuum(r(i,j), s(j,k)) — "row i of r is included
/// in column k of s".
Relation sub(const Relation& r, const Relation& s);

/// (r |> s)(i,k) = meet_j residuum(s(j,k), r(i,j)) — "row i of r contains
/// column k of s".
Relation sup(const Relation& r, const Relation& s);

/// (r [] s)(i,k) = meet_j biresiduum(r(i,j), s(j,k)).
Relation square(const Relation& r, const Relation& s);

enum class MeanKind { Sub, Sup, Square };

/// Arithmetic mean over j of the chosen connective instead of the meet.
/// Means are not lattice operations, so this needs the unit interval and
/// rejects finite-table lattices.
Relation mean_product(const Relation& r, const Relation& s, MeanKind kind);

/// Pointwise order: every cell of r below the matching cell of s.  Shapes and
/// lattices must agree.
bool included_in(const Relation& r, const Relation& s);

/// Entrywise equality under the lattice's tolerant comparison.
bool equal(const Relation& r, const Relation& s);

struct InclusionViolation {
  std::size_t row = 0;
  std::size_t col = 0;
  TruthValue lhs;
  TruthValue rhs;
};

/// The cell where r exceeds s most strongly, graded by residuum(lhs, rhs)
/// (degree to which the cell still satisfies the inclusion); ties resolve to
/// the first cell in row-major order.  Empty when r is included in s.
std::optional<InclusionViolation> worst_inclusion_violation(const Relation& r,
                                                            const Relation& s);

/// Every entry is bottom or top.
bool is_crisp(const Relation& r);
/// Crisp with at most one top per row.  Fuzzy input is simply not univalent.
bool is_univalent(const Relation& r);
/// Crisp with at least one top per row.
bool is_covering(const Relation& r);
/// Univalent and covering: the matrix of a total function.
bool is_total_function(const Relation& r);

}  // namespace bkrel
