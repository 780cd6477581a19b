#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bkrel/errors.hpp"

namespace bkrel {

/// Absolute tolerance for unit-interval comparisons.  Every order test on
/// real truth values is `a <= b + kUnitEps`; equality is |a-b| <= kUnitEps.
inline constexpr double kUnitEps = 1e-9;

enum class LatticeKind { Godel, Lukasiewicz, Product, NilpotentMin, FiniteTable };

class Lattice;

/// One element of a residuated lattice.  A value is permanently tied to the
/// lattice that created it; operations mixing lattices throw
/// LatticeMismatchError.  Unit-interval lattices store the real number,
/// finite lattices store the carrier index.
class TruthValue {
public:
  const Lattice& lattice() const noexcept { return *lattice_; }

  /// The real number in [0,1].  Only valid for unit-interval lattices.
  double unit() const;

  /// The carrier index.  Only valid for finite table lattices.
  std::size_t elem() const;

private:
  friend class Lattice;
  TruthValue(const Lattice* lattice, double raw) noexcept
      : lattice_(lattice), raw_(raw) {}

  const Lattice* lattice_;
  double raw_;  // unit value, or carrier index as a double
};

/// One axiom or identity checked by validate_lattice.
struct LatticeCheck {
  std::string id;
  bool pass = false;
  std::string witness;  // first failing assignment, empty when pass
};

struct ValidationReport {
  std::string lattice;
  std::vector<LatticeCheck> checks;
  bool all_pass = false;
};

/// A complete residuated lattice (L, <=, meet, join, tensor, residuum, 0, 1).
///
/// Four built-in structures live on [0,1] with the standard order; finite
/// structures are loaded as explicit tables over a named carrier.  Instances
/// are immutable and shared; TruthValue holds a plain pointer back to its
/// lattice, so keep the shared_ptr alive as long as any of its values.
class Lattice {
public:
  /// min / implication-by-truncation.
  static std::shared_ptr<const Lattice> godel();
  /// max(0, a+b-1) / min(1, 1-a+b).
  static std::shared_ptr<const Lattice> lukasiewicz();
  /// a*b / capped division.
  static std::shared_ptr<const Lattice> product();
  /// nilpotent minimum: min(a,b) gated by a+b > 1.
  static std::shared_ptr<const Lattice> nilpotent_min();
  /// The two-element chain {0,1}, classical conjunction and implication.
  static std::shared_ptr<const Lattice> boolean();
  /// Built-in unit-interval lattice by kind; rejects FiniteTable.
  static std::shared_ptr<const Lattice> builtin(LatticeKind kind);

  /// Raw material for a finite lattice.  leq/tensor/residuum are n*n
  /// row-major tables over carrier indices; residuum may be empty, in which
  /// case it is derived as residuum(a,b) = join{c : tensor(a,c) <= b} and
  /// the adjunction is verified for every pair during derivation.
  struct FiniteSpec {
    std::vector<std::string> names;
    std::vector<bool> leq;
    std::vector<std::size_t> tensor;
    std::vector<std::size_t> residuum;  // empty = derive
    std::size_t bottom = 0;
    std::size_t top = 0;
  };

  /// Builds a finite lattice.  Structural defects (not a partial order,
  /// missing meets/joins, bad shapes, duplicate names, underivable residuum)
  /// throw LatticeDefinitionError.  Semantic defects in supplied tensor or
  /// residuum tables (associativity, adjunction, ...) are NOT checked here;
  /// run validate_lattice, which reports them check by check.
  static std::shared_ptr<const Lattice> finite_table(FiniteSpec spec);

  LatticeKind kind() const noexcept { return kind_; }
  bool is_unit_interval() const noexcept { return kind_ != LatticeKind::FiniteTable; }
  bool is_finite() const noexcept { return kind_ == LatticeKind::FiniteTable; }

  /// Human-readable identity, e.g. "lukasiewicz" or "finite{0,0.5,1}".
  std::string describe() const;

  std::size_t carrier_size() const;                     // finite only
  const std::string& element_name(std::size_t i) const; // finite only

  // -- element construction ------------------------------------------------
  TruthValue unit(double v) const;        // unit-interval lattices only
  TruthValue elem(std::size_t idx) const; // finite lattices only
  TruthValue bottom() const;
  TruthValue top() const;

  /// Parses an element: decimal in [0,1] for unit lattices, carrier name for
  /// finite ones.  Throws ValueError on anything else.
  TruthValue parse_value(std::string_view text) const;

  /// Display form: carrier name, or decimal with trailing zeros trimmed.
  std::string format_value(TruthValue v) const;

  // -- operations (operands must belong to this lattice) --------------------
  bool leq(TruthValue a, TruthValue b) const;
  bool equal(TruthValue a, TruthValue b) const;
  TruthValue meet(TruthValue a, TruthValue b) const;
  TruthValue join(TruthValue a, TruthValue b) const;
  TruthValue tensor(TruthValue a, TruthValue b) const;
  TruthValue residuum(TruthValue a, TruthValue b) const;
  TruthValue biresiduum(TruthValue a, TruthValue b) const;

  // -- enumeration support ---------------------------------------------------
  /// Whole carrier of a finite lattice, in table order.
  std::vector<TruthValue> carrier() const;
  /// {i/(points-1)} for unit-interval lattices; points >= 2.
  std::vector<TruthValue> unit_grid(std::size_t points) const;
  /// carrier() when finite, unit_grid(grid_points) otherwise.
  std::vector<TruthValue> sample_values(std::size_t grid_points) const;

private:
  struct Tag {};

public:
  Lattice(Tag, LatticeKind kind);  // public for make_shared; use factories

private:
  void require_mine(TruthValue v) const;
  TruthValue make(double raw) const { return TruthValue(this, raw); }

  LatticeKind kind_;
  // finite-table payload (unused for builtins)
  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::vector<std::size_t> tensor_;
  std::vector<std::size_t> residuum_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

// Free-function views of the element operations; all throw
// LatticeMismatchError when the operands disagree about their lattice.
inline bool leq(TruthValue a, TruthValue b) { return a.lattice().leq(a, b); }
inline bool equal(TruthValue a, TruthValue b) { return a.lattice().equal(a, b); }
inline TruthValue meet(TruthValue a, TruthValue b) { return a.lattice().meet(a, b); }
inline TruthValue join(TruthValue a, TruthValue b) { return a.lattice().join(a, b); }
inline TruthValue tensor(TruthValue a, TruthValue b) { return a.lattice().tensor(a, b); }
inline TruthValue residuum(TruthValue a, TruthValue b) { return a.lattice().residuum(a, b); }
inline TruthValue biresiduum(TruthValue a, TruthValue b) { return a.lattice().biresiduum(a, b); }

/// Recomputes residuum(a,b) from first principles as the largest c with
/// tensor(a,c) <= b, searching the carrier (finite) or a uniform grid of
/// `grid_points` reals (unit interval).  Exists so tests can cross-check the
/// closed forms against the defining property without sharing code with them.
TruthValue galois_residuum_oracle(TruthValue a, TruthValue b,
                                  std::size_t grid_points = 1001);

/// Checks every residuated-lattice axiom and a battery of derived identities
/// over the whole carrier (finite) or a fixed 101-point grid (built-ins).
/// Each check lands in the report with a stable id and, on failure, the first
/// witnessing assignment.  Never throws on semantic failure.
ValidationReport validate_lattice(const Lattice& lattice);

}  // namespace bkrel
