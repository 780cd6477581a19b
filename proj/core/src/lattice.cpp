#include "bkrel/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bkrel {

namespace {

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruthValue

double TruthValue::unit() const {
  if (!lattice_->is_unit_interval())
    throw UnsupportedLatticeError("unit(): value belongs to finite lattice " +
                                  lattice_->describe());
  return raw_;
}

std::size_t TruthValue::elem() const {
  if (!lattice_->is_finite())
    throw UnsupportedLatticeError("elem(): value belongs to unit-interval lattice " +
                                  lattice_->describe());
  return static_cast<std::size_t>(raw_);
}

// ---------------------------------------------------------------------------
// Construction

Lattice::Lattice(Tag, LatticeKind kind) : kind_(kind) {}

std::shared_ptr<const Lattice> Lattice::builtin(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Godel: return godel();
    case LatticeKind::Lukasiewicz: return lukasiewicz();
    case LatticeKind::Product: return product();
    case LatticeKind::NilpotentMin: return nilpotent_min();
    case LatticeKind::FiniteTable:
      throw ValueError("builtin(): finite lattices are built from tables");
  }
  throw ValueError("builtin(): unknown lattice kind");
}

std::shared_ptr<const Lattice> Lattice::godel() {
  static const auto inst = std::make_shared<Lattice>(Tag{}, LatticeKind::Godel);
  return inst;
}

std::shared_ptr<const Lattice> Lattice::lukasiewicz() {
  static const auto inst = std::make_shared<Lattice>(Tag{}, LatticeKind::Lukasiewicz);
  return inst;
}

std::shared_ptr<const Lattice> Lattice::product() {
  static const auto inst = std::make_shared<Lattice>(Tag{}, LatticeKind::Product);
  return inst;
}

std::shared_ptr<const Lattice> Lattice::nilpotent_min() {
  static const auto inst = std::make_shared<Lattice>(Tag{}, LatticeKind::NilpotentMin);
  return inst;
}

std::shared_ptr<const Lattice> Lattice::boolean() {
  static const auto inst = [] {
    FiniteSpec spec;
    spec.names = {"0", "1"};
    spec.leq = {true, true, false, true};
    spec.tensor = {0, 0, 0, 1};
    spec.bottom = 0;
    spec.top = 1;
    return finite_table(std::move(spec));
  }();
  return inst;
}

std::shared_ptr<const Lattice> Lattice::finite_table(FiniteSpec spec) {
  const std::size_t n = spec.names.size();
  auto fail = [](const std::string& msg) -> void {
    throw LatticeDefinitionError("finite lattice: " + msg);
  };
  if (n == 0) fail("carrier is empty");
  for (const auto& name : spec.names)
    if (name.empty()) fail("carrier contains an empty element name");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (spec.names[i] == spec.names[j])
        fail("duplicate element name '" + spec.names[i] + "'");

  if (spec.leq.size() != n * n)
    fail("leq table has " + std::to_string(spec.leq.size()) + " entries, expected " +
         std::to_string(n * n));
  auto le = [&](std::size_t i, std::size_t j) -> bool { return spec.leq[i * n + j]; };
  const auto& nm = spec.names;

  for (std::size_t i = 0; i < n; ++i)
    if (!le(i, i)) fail("order is not reflexive at '" + nm[i] + "'");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && le(i, j) && le(j, i))
        fail("order is not antisymmetric between '" + nm[i] + "' and '" + nm[j] + "'");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (le(i, j) && le(j, k) && !le(i, k))
          fail("order is not transitive via '" + nm[i] + "' <= '" + nm[j] + "' <= '" + nm[k] + "'");

  if (spec.bottom >= n) fail("bottom index out of range");
  if (spec.top >= n) fail("top index out of range");
  for (std::size_t i = 0; i < n; ++i) {
    if (!le(spec.bottom, i)) fail("'" + nm[spec.bottom] + "' is not below '" + nm[i] + "'");
    if (!le(i, spec.top)) fail("'" + nm[i] + "' is not below '" + nm[spec.top] + "'");
  }

  // Meets and joins must exist for every pair; tabulate them.
  std::vector<std::size_t> meet_tab(n * n, 0), join_tab(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t glb = kNpos;
      for (std::size_t c = 0; c < n; ++c) {
        if (!le(c, i) || !le(c, j)) continue;
        bool greatest = true;
        for (std::size_t d = 0; d < n; ++d)
          if (le(d, i) && le(d, j) && !le(d, c)) { greatest = false; break; }
        if (greatest) { glb = c; break; }
      }
      if (glb == kNpos) fail("no meet for '" + nm[i] + "' and '" + nm[j] + "'");
      meet_tab[i * n + j] = glb;

      std::size_t lub = kNpos;
      for (std::size_t c = 0; c < n; ++c) {
        if (!le(i, c) || !le(j, c)) continue;
        bool least = true;
        for (std::size_t d = 0; d < n; ++d)
          if (le(i, d) && le(j, d) && !le(c, d)) { least = false; break; }
        if (least) { lub = c; break; }
      }
      if (lub == kNpos) fail("no join for '" + nm[i] + "' and '" + nm[j] + "'");
      join_tab[i * n + j] = lub;
    }
  }

  if (spec.tensor.size() != n * n)
    fail("tensor table has " + std::to_string(spec.tensor.size()) + " entries, expected " +
         std::to_string(n * n));
  for (std::size_t v : spec.tensor)
    if (v >= n) fail("tensor table entry out of range");

  if (spec.residuum.empty()) {
    // Derive residuum(a,b) as the join of every c with tensor(a,c) <= b,
    // then insist the result actually witnesses the adjunction.  A tensor
    // that is not residuated over this order must not produce a lattice.
    spec.residuum.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t r = spec.bottom;
        for (std::size_t c = 0; c < n; ++c)
          if (le(spec.tensor[a * n + c], b)) r = join_tab[r * n + c];
        spec.residuum[a * n + b] = r;
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (le(spec.tensor[a * n + c], b) != le(c, spec.residuum[a * n + b]))
            fail("tensor is not residuated: adjunction fails at a='" + nm[a] +
                 "', b='" + nm[b] + "', c='" + nm[c] + "'");
  } else {
    if (spec.residuum.size() != n * n)
      fail("residuum table has " + std::to_string(spec.residuum.size()) +
           " entries, expected " + std::to_string(n * n));
    for (std::size_t v : spec.residuum)
      if (v >= n) fail("residuum table entry out of range");
  }

  auto lat = std::make_shared<Lattice>(Tag{}, LatticeKind::FiniteTable);
  lat->names_ = std::move(spec.names);
  lat->leq_ = std::move(spec.leq);
  lat->meet_ = std::move(meet_tab);
  lat->join_ = std::move(join_tab);
  lat->tensor_ = std::move(spec.tensor);
  lat->residuum_ = std::move(spec.residuum);
  lat->bottom_ = spec.bottom;
  lat->top_ = spec.top;
  return lat;
}

// ---------------------------------------------------------------------------
// Introspection

std::string Lattice::describe() const {
  switch (kind_) {
    case LatticeKind::Godel: return "godel";
    case LatticeKind::Lukasiewicz: return "lukasiewicz";
    case LatticeKind::Product: return "product";
    case LatticeKind::NilpotentMin: return "nilmin";
    case LatticeKind::FiniteTable: return "finite{" + join_names(names_) + "}";
  }
  return "?";
}

std::size_t Lattice::carrier_size() const {
  if (!is_finite())
    throw UnsupportedLatticeError("carrier_size(): " + describe() + " is not finite");
  return names_.size();
}

const std::string& Lattice::element_name(std::size_t i) const {
  if (!is_finite())
    throw UnsupportedLatticeError("element_name(): " + describe() + " is not finite");
  if (i >= names_.size()) throw ValueError("element_name(): index out of range");
  return names_[i];
}

// ---------------------------------------------------------------------------
// Element construction

TruthValue Lattice::unit(double v) const {
  if (!is_unit_interval())
    throw UnsupportedLatticeError("unit(): " + describe() + " has no unit-interval carrier");
  if (std::isnan(v) || v < -kUnitEps || v > 1.0 + kUnitEps)
    throw ValueError("unit(): value " + std::to_string(v) + " is outside [0,1]");
  return make(std::clamp(v, 0.0, 1.0));
}

TruthValue Lattice::elem(std::size_t idx) const {
  if (!is_finite())
    throw UnsupportedLatticeError("elem(): " + describe() + " has no finite carrier");
  if (idx >= names_.size())
    throw ValueError("elem(): index " + std::to_string(idx) + " out of range for " + describe());
  return make(static_cast<double>(idx));
}

TruthValue Lattice::bottom() const {
  return is_finite() ? make(static_cast<double>(bottom_)) : make(0.0);
}

TruthValue Lattice::top() const {
  return is_finite() ? make(static_cast<double>(top_)) : make(1.0);
}

TruthValue Lattice::parse_value(std::string_view text) const {
  if (is_finite()) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == text) return make(static_cast<double>(i));
    throw ValueError("'" + std::string(text) + "' is not an element of " + describe());
  }
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ValueError("'" + std::string(text) + "' is not a decimal truth value");
  if (v < -kUnitEps || v > 1.0 + kUnitEps)
    throw ValueError("'" + std::string(text) + "' is outside [0,1]");
  return make(std::clamp(v, 0.0, 1.0));
}

std::string Lattice::format_value(TruthValue v) const {
  require_mine(v);
  if (is_finite()) return names_[static_cast<std::size_t>(v.raw_)];
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v.raw_);
  std::string s(buf);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.size() > 1 && s.back() == '.') s.pop_back();
  return s;
}

// ---------------------------------------------------------------------------
// Operations

void Lattice::require_mine(TruthValue v) const {
  if (v.lattice_ != this)
    throw LatticeMismatchError("operands belong to different lattices: " + describe() +
                               " vs " + v.lattice_->describe());
}

bool Lattice::leq(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  if (is_finite()) {
    const std::size_t n = names_.size();
    return leq_[a.elem() * n + b.elem()];
  }
  return a.raw_ <= b.raw_ + kUnitEps;
}

bool Lattice::equal(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  if (is_finite()) return a.elem() == b.elem();
  return std::fabs(a.raw_ - b.raw_) <= kUnitEps;
}

TruthValue Lattice::meet(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  if (is_finite()) {
    const std::size_t n = names_.size();
    return make(static_cast<double>(meet_[a.elem() * n + b.elem()]));
  }
  return make(std::min(a.raw_, b.raw_));
}

TruthValue Lattice::join(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  if (is_finite()) {
    const std::size_t n = names_.size();
    return make(static_cast<double>(join_[a.elem() * n + b.elem()]));
  }
  return make(std::max(a.raw_, b.raw_));
}

TruthValue Lattice::tensor(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  const double x = a.raw_, y = b.raw_;
  switch (kind_) {
    case LatticeKind::Godel:
      return make(std::min(x, y));
    case LatticeKind::Lukasiewicz:
      return make(std::max(0.0, x + y - 1.0));
    case LatticeKind::Product:
      return make(x * y);
    case LatticeKind::NilpotentMin:
      // Tolerant gate: pairs summing to 1 within eps collapse to 0, keeping
      // the connective consistent with the eps-order used by residuum.
      return make(x + y > 1.0 + kUnitEps ? std::min(x, y) : 0.0);
    case LatticeKind::FiniteTable: {
      const std::size_t n = names_.size();
      return make(static_cast<double>(tensor_[a.elem() * n + b.elem()]));
    }
  }
  throw ValueError("tensor(): unknown lattice kind");
}

TruthValue Lattice::residuum(TruthValue a, TruthValue b) const {
  require_mine(a);
  require_mine(b);
  const double x = a.raw_, y = b.raw_;
  switch (kind_) {
    case LatticeKind::Godel:
      return make(x <= y + kUnitEps ? 1.0 : y);
    case LatticeKind::Lukasiewicz:
      return make(std::min(1.0, 1.0 - x + y));
    case LatticeKind::Product:
      return make(x <= y + kUnitEps ? 1.0 : y / x);
    case LatticeKind::NilpotentMin:
      return make(x <= y + kUnitEps ? 1.0 : std::max(1.0 - x, y));
    case LatticeKind::FiniteTable: {
      const std::size_t n = names_.size();
      return make(static_cast<double>(residuum_[a.elem() * n + b.elem()]));
    }
  }
  throw ValueError("residuum(): unknown lattice kind");
}

TruthValue Lattice::biresiduum(TruthValue a, TruthValue b) const {
  return meet(residuum(a, b), residuum(b, a));
}

// ---------------------------------------------------------------------------
// Enumeration support

std::vector<TruthValue> Lattice::carrier() const {
  if (!is_finite())
    throw UnsupportedLatticeError("carrier(): " + describe() + " is not finite");
  std::vector<TruthValue> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(make(static_cast<double>(i)));
  return out;
}

std::vector<TruthValue> Lattice::unit_grid(std::size_t points) const {
  if (!is_unit_interval())
    throw UnsupportedLatticeError("unit_grid(): " + describe() + " is not a unit-interval lattice");
  if (points < 2) throw ValueError("unit_grid(): need at least 2 points");
  std::vector<TruthValue> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i)
    out.push_back(make(static_cast<double>(i) / static_cast<double>(points - 1)));
  return out;
}

std::vector<TruthValue> Lattice::sample_values(std::size_t grid_points) const {
  return is_finite() ? carrier() : unit_grid(grid_points);
}

// ---------------------------------------------------------------------------
// Oracle and validation

TruthValue galois_residuum_oracle(TruthValue a, TruthValue b, std::size_t grid_points) {
  const Lattice& lat = a.lattice();
  TruthValue best = lat.bottom();
  bool found = false;
  for (TruthValue c : lat.sample_values(grid_points)) {
    if (!lat.leq(lat.tensor(a, c), b)) continue;
    best = found ? lat.join(best, c) : c;
    found = true;
  }
  return best;  // bottom always qualifies for the built-ins; found stays true
}

ValidationReport validate_lattice(const Lattice& lat) {
  const std::vector<TruthValue> vals = lat.sample_values(101);
  ValidationReport rep;
  rep.lattice = lat.describe();

  auto name1 = [&](TruthValue a) { return "a=" + lat.format_value(a); };
  auto name2 = [&](TruthValue a, TruthValue b) {
    return name1(a) + " b=" + lat.format_value(b);
  };
  auto name3 = [&](TruthValue a, TruthValue b, TruthValue c) {
    return name2(a, b) + " c=" + lat.format_value(c);
  };

  auto run1 = [&](const char* id, auto&& pred) {
    for (TruthValue a : vals)
      if (!pred(a)) { rep.checks.push_back({id, false, name1(a)}); return; }
    rep.checks.push_back({id, true, ""});
  };
  auto run2 = [&](const char* id, auto&& pred) {
    for (TruthValue a : vals)
      for (TruthValue b : vals)
        if (!pred(a, b)) { rep.checks.push_back({id, false, name2(a, b)}); return; }
    rep.checks.push_back({id, true, ""});
  };
  auto run3 = [&](const char* id, auto&& pred) {
    for (TruthValue a : vals)
      for (TruthValue b : vals)
        for (TruthValue c : vals)
          if (!pred(a, b, c)) { rep.checks.push_back({id, false, name3(a, b, c)}); return; }
    rep.checks.push_back({id, true, ""});
  };

  auto L = [&](TruthValue a, TruthValue b) { return lat.leq(a, b); };
  auto E = [&](TruthValue a, TruthValue b) { return lat.equal(a, b); };
  auto M = [&](TruthValue a, TruthValue b) { return lat.meet(a, b); };
  auto J = [&](TruthValue a, TruthValue b) { return lat.join(a, b); };
  auto T = [&](TruthValue a, TruthValue b) { return lat.tensor(a, b); };
  auto R = [&](TruthValue a, TruthValue b) { return lat.residuum(a, b); };

  run1("order-reflexive", [&](TruthValue a) { return L(a, a); });
  run2("order-antisymmetric",
       [&](TruthValue a, TruthValue b) { return !(L(a, b) && L(b, a)) || E(a, b); });
  run3("order-transitive", [&](TruthValue a, TruthValue b, TruthValue c) {
    return !(L(a, b) && L(b, c)) || L(a, c);
  });
  run1("bottom-least", [&](TruthValue a) { return L(lat.bottom(), a); });
  run1("top-greatest", [&](TruthValue a) { return L(a, lat.top()); });

  run2("meet-lower-bound",
       [&](TruthValue a, TruthValue b) { return L(M(a, b), a) && L(M(a, b), b); });
  run3("meet-greatest-lower-bound", [&](TruthValue a, TruthValue b, TruthValue c) {
    return !(L(c, a) && L(c, b)) || L(c, M(a, b));
  });
  run2("join-upper-bound",
       [&](TruthValue a, TruthValue b) { return L(a, J(a, b)) && L(b, J(a, b)); });
  run3("join-least-upper-bound", [&](TruthValue a, TruthValue b, TruthValue c) {
    return !(L(a, c) && L(b, c)) || L(J(a, b), c);
  });

  run2("tensor-commutative",
       [&](TruthValue a, TruthValue b) { return E(T(a, b), T(b, a)); });
  run3("tensor-associative", [&](TruthValue a, TruthValue b, TruthValue c) {
    return E(T(T(a, b), c), T(a, T(b, c)));
  });
  run1("tensor-identity", [&](TruthValue a) { return E(T(a, lat.top()), a); });
  run3("tensor-monotone", [&](TruthValue a, TruthValue b, TruthValue c) {
    return !L(a, b) || L(T(a, c), T(b, c));
  });

  run3("galois-adjunction", [&](TruthValue a, TruthValue b, TruthValue c) {
    return L(T(a, b), c) == L(a, R(b, c));
  });
  run3("residuum-exchange", [&](TruthValue a, TruthValue b, TruthValue c) {
    return E(R(T(a, b), c), R(a, R(b, c)));
  });
  run3("tensor-join-distributive", [&](TruthValue a, TruthValue b, TruthValue c) {
    return E(T(a, J(b, c)), J(T(a, b), T(a, c)));
  });
  run3("residuum-meet-distributive", [&](TruthValue a, TruthValue b, TruthValue c) {
    return E(R(a, M(b, c)), M(R(a, b), R(a, c)));
  });
  run3("residuum-join-antitone", [&](TruthValue a, TruthValue b, TruthValue c) {
    return E(R(J(a, b), c), M(R(a, c), R(b, c)));
  });
  run3("tensor-meet-below", [&](TruthValue a, TruthValue b, TruthValue c) {
    return L(T(a, M(b, c)), M(T(a, b), T(a, c)));
  });
  run3("residuum-join-above", [&](TruthValue a, TruthValue b, TruthValue c) {
    return L(J(R(a, b), R(a, c)), R(a, J(b, c)));
  });
  run3("residuum-meet-arg-above", [&](TruthValue a, TruthValue b, TruthValue c) {
    return L(J(R(a, c), R(b, c)), R(M(a, b), c));
  });

  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const LatticeCheck& c) { return c.pass; });
  return rep;
}

}  // namespace bkrel
