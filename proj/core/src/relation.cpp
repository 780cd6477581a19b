#include "bkrel/relation.hpp"

#include <algorithm>

namespace bkrel {

// ---------------------------------------------------------------------------
// DomainSig

DomainSig::DomainSig(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (name_.empty()) throw ValueError("domain name must not be empty");
  if (labels_.empty())
    throw ValueError("domain '" + name_ + "' must have at least one element");
  for (const auto& l : labels_)
    if (l.empty())
      throw ValueError("domain '" + name_ + "' contains an empty label");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw ValueError("domain '" + name_ + "' has duplicate label '" + labels_[i] + "'");
}

std::string DomainSig::describe() const {
  std::string out = name_ + "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ",";
    out += labels_[i];
  }
  return out + "}";
}

bool same_labels(const DomainSig& a, const DomainSig& b) {
  return a.labels() == b.labels();
}

bool operator==(const DomainSig& a, const DomainSig& b) {
  return a.name() == b.name() && a.labels() == b.labels();
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(DomainSig source, DomainSig target,
                   std::shared_ptr<const Lattice> lattice, std::vector<TruthValue> cells)
    : source_(std::move(source)),
      target_(std::move(target)),
      lattice_(std::move(lattice)),
      cells_(std::move(cells)) {
  if (!lattice_) throw ValueError("relation needs a lattice");
  if (cells_.size() != source_.size() * target_.size())
    throw ValueError("relation over " + source_.describe() + " -> " + target_.describe() +
                     " needs " + std::to_string(source_.size() * target_.size()) +
                     " cells, got " + std::to_string(cells_.size()));
  for (const TruthValue& v : cells_)
    if (&v.lattice() != lattice_.get())
      throw LatticeMismatchError("relation cell belongs to " + v.lattice().describe() +
                                 ", expected " + lattice_->describe());
}

Relation Relation::constant(DomainSig source, DomainSig target,
                            std::shared_ptr<const Lattice> lattice, TruthValue v) {
  std::vector<TruthValue> cells(source.size() * target.size(), v);
  return Relation(std::move(source), std::move(target), std::move(lattice), std::move(cells));
}

Relation Relation::zeros(DomainSig source, DomainSig target,
                         std::shared_ptr<const Lattice> lattice) {
  TruthValue v = lattice->bottom();
  return constant(std::move(source), std::move(target), std::move(lattice), v);
}

Relation Relation::ones(DomainSig source, DomainSig target,
                        std::shared_ptr<const Lattice> lattice) {
  TruthValue v = lattice->top();
  return constant(std::move(source), std::move(target), std::move(lattice), v);
}

Relation Relation::identity(DomainSig domain, std::shared_ptr<const Lattice> lattice) {
  const std::size_t n = domain.size();
  std::vector<TruthValue> cells;
  cells.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cells.push_back(i == j ? lattice->top() : lattice->bottom());
  DomainSig copy = domain;
  return Relation(std::move(copy), std::move(domain), std::move(lattice), std::move(cells));
}

Relation Relation::from_units(DomainSig source, DomainSig target,
                              std::shared_ptr<const Lattice> lattice,
                              const std::vector<double>& values) {
  std::vector<TruthValue> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(lattice->unit(v));
  return Relation(std::move(source), std::move(target), std::move(lattice), std::move(cells));
}

Relation Relation::from_names(DomainSig source, DomainSig target,
                              std::shared_ptr<const Lattice> lattice,
                              const std::vector<std::string>& values) {
  std::vector<TruthValue> cells;
  cells.reserve(values.size());
  for (const auto& v : values) cells.push_back(lattice->parse_value(v));
  return Relation(std::move(source), std::move(target), std::move(lattice), std::move(cells));
}

TruthValue Relation::at(std::size_t i, std::size_t j) const {
  if (i >= rows() || j >= cols()) throw ValueError("relation cell index out of range");
  return cells_[i * cols() + j];
}

std::string Relation::describe() const {
  return source_.describe() + " -> " + target_.describe() + " over " + lattice_->describe();
}

// ---------------------------------------------------------------------------
// Wiring guards

namespace {

void require_same_lattice(const Relation& r, const Relation& s, const char* op) {
  if (r.lattice_ptr() != s.lattice_ptr())
    throw LatticeMismatchError(std::string(op) + ": operands over different lattices (" +
                               r.lattice().describe() + " vs " + s.lattice().describe() + ")");
}

void require_chainable(const Relation& r, const Relation& s, const char* op) {
  require_same_lattice(r, s, op);
  if (!same_labels(r.target(), s.source()))
    throw WiringError(std::string(op) + ": middle domains do not match: " + r.describe() +
                      " vs " + s.describe());
}

void require_same_shape(const Relation& r, const Relation& s, const char* op) {
  require_same_lattice(r, s, op);
  if (!same_labels(r.source(), s.source()) || !same_labels(r.target(), s.target()))
    throw WiringError(std::string(op) + ": shapes do not match: " + r.describe() + " vs " +
                      s.describe());
}

template <typename Inner>
Relation harsh_product(const Relation& r, const Relation& s, const char* op, Inner inner) {
  require_chainable(r, s, op);
  const Lattice& lat = r.lattice();
  const std::size_t n = r.rows(), m = r.cols(), p = s.cols();
  std::vector<TruthValue> cells;
  cells.reserve(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      TruthValue acc = inner(r.at(i, 0), s.at(0, k));
      for (std::size_t j = 1; j < m; ++j)
        acc = lat.meet(acc, inner(r.at(i, j), s.at(j, k)));
      cells.push_back(acc);
    }
  }
  return Relation(r.source(), s.target(), r.lattice_ptr(), std::move(cells));
}

}  // namespace

// ---------------------------------------------------------------------------
// Products

Relation converse(const Relation& r) {
  std::vector<TruthValue> cells;
  cells.reserve(r.rows() * r.cols());
  for (std::size_t j = 0; j < r.cols(); ++j)
    for (std::size_t i = 0; i < r.rows(); ++i) cells.push_back(r.at(i, j));
  return Relation(r.target(), r.source(), r.lattice_ptr(), std::move(cells));
}

Relation circle(const Relation& r, const Relation& s) {
  require_chainable(r, s, "circle");
  const Lattice& lat = r.lattice();
  const std::size_t n = r.rows(), m = r.cols(), p = s.cols();
  std::vector<TruthValue> cells;
  cells.reserve(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      TruthValue acc = lat.tensor(r.at(i, 0), s.at(0, k));
      for (std::size_t j = 1; j < m; ++j)
        acc = lat.join(acc, lat.tensor(r.at(i, j), s.at(j, k)));
      cells.push_back(acc);
    }
  }
  return Relation(r.source(), s.target(), r.lattice_ptr(), std::move(cells));
}

Relation sub(const Relation& r, const Relation& s) {
  const Lattice& lat = r.lattice();
  return harsh_product(r, s, "sub",
                       [&lat](TruthValue a, TruthValue b) { return lat.residuum(a, b); });
}

Relation sup(const Relation& r, const Relation& s) {
  const Lattice& lat = r.lattice();
  return harsh_product(r, s, "sup",
                       [&lat](TruthValue a, TruthValue b) { return lat.residuum(b, a); });
}

Relation square(const Relation& r, const Relation& s) {
  const Lattice& lat = r.lattice();
  return harsh_product(r, s, "square",
                       [&lat](TruthValue a, TruthValue b) { return lat.biresiduum(a, b); });
}

Relation mean_product(const Relation& r, const Relation& s, MeanKind kind) {
  require_chainable(r, s, "mean product");
  const Lattice& lat = r.lattice();
  if (!lat.is_unit_interval())
    throw UnsupportedLatticeError("mean product needs the unit interval; " + lat.describe() +
                                  " has no arithmetic mean");
  const std::size_t n = r.rows(), m = r.cols(), p = s.cols();
  auto inner = [&lat, kind](TruthValue a, TruthValue b) -> double {
    switch (kind) {
      case MeanKind::Sub: return lat.residuum(a, b).unit();
      case MeanKind::Sup: return lat.residuum(b, a).unit();
      case MeanKind::Square: return lat.biresiduum(a, b).unit();
    }
    throw ValueError("mean product: unknown kind");
  };
  std::vector<TruthValue> cells;
  cells.reserve(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) sum += inner(r.at(i, j), s.at(j, k));
      cells.push_back(lat.unit(sum / static_cast<double>(m)));
    }
  }
  return Relation(r.source(), s.target(), r.lattice_ptr(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Comparisons

bool included_in(const Relation& r, const Relation& s) {
  require_same_shape(r, s, "included_in");
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!lat.leq(r.at(i, j), s.at(i, j))) return false;
  return true;
}

bool equal(const Relation& r, const Relation& s) {
  require_same_shape(r, s, "equal");
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!lat.equal(r.at(i, j), s.at(i, j))) return false;
  return true;
}

std::optional<InclusionViolation> worst_inclusion_violation(const Relation& r,
                                                            const Relation& s) {
  require_same_shape(r, s, "worst_inclusion_violation");
  const Lattice& lat = r.lattice();
  std::optional<InclusionViolation> worst;
  TruthValue worst_degree = lat.top();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) {
      TruthValue a = r.at(i, j), b = s.at(i, j);
      if (lat.leq(a, b)) continue;
      // Grade by how far the cell is from satisfying the inclusion; a lower
      // residuum means a harder violation.
      TruthValue degree = lat.residuum(a, b);
      if (!worst || (!lat.leq(worst_degree, degree) && lat.leq(degree, worst_degree))) {
        worst = InclusionViolation{i, j, a, b};
        worst_degree = degree;
      }
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Crispness predicates

bool is_crisp(const Relation& r) {
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      TruthValue v = r.at(i, j);
      if (!lat.equal(v, lat.bottom()) && !lat.equal(v, lat.top())) return false;
    }
  return true;
}

bool is_univalent(const Relation& r) {
  if (!is_crisp(r)) return false;
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t tops = 0;
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (lat.equal(r.at(i, j), lat.top())) ++tops;
    if (tops > 1) return false;
  }
  return true;
}

bool is_covering(const Relation& r) {
  if (!is_crisp(r)) return false;
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t tops = 0;
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (lat.equal(r.at(i, j), lat.top())) ++tops;
    if (tops == 0) return false;
  }
  return true;
}

bool is_total_function(const Relation& r) { return is_univalent(r) && is_covering(r); }

}  // namespace bkrel
