#include "bkrel/search.hpp"

#include <string>
#include <utility>

#include "bkrel/morphism.hpp"

namespace bkrel {

std::string to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::VerifiedExhaustive: return "verified-exhaustive";
    case SearchVerdict::VerifiedSampled: return "verified-sampled";
    case SearchVerdict::Counterexample: return "counterexample";
  }
  return "?";
}

SearchSpace SearchSpace::over(std::shared_ptr<const Lattice> lattice,
                              std::size_t grid_points,
                              std::array<std::size_t, 4> sizes, std::size_t budget) {
  SearchSpace sp;
  sp.lattice = std::move(lattice);
  if (!sp.lattice) throw ValueError("search space needs a lattice");
  sp.values = sp.lattice->sample_values(grid_points);
  sp.sizes = sizes;
  sp.budget = budget;
  return sp;
}

namespace {

void validate_space(const SearchSpace& sp) {
  if (!sp.lattice) throw ValueError("search space has no lattice");
  if (sp.values.empty()) throw ValueError("search space has an empty value set");
  for (std::size_t s : sp.sizes)
    if (s < 1 || s > 3)
      throw ValueError("search domain sizes must lie between 1 and 3, got " +
                       std::to_string(s));
  if (sp.budget == 0) throw ValueError("search budget must be positive");
}

DomainSig make_domain(char name, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  const char lower = static_cast<char>(name - 'A' + 'a');
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(std::string(1, lower) + std::to_string(i + 1));
  return DomainSig(std::string(1, name), std::move(labels));
}

// Counts through value-index tuples, last position fastest, so the tuple
// sequence is lexicographic over the concatenated cell list.
class Odometer {
public:
  Odometer(std::size_t positions, std::size_t base)
      : digits_(positions, 0), base_(base) {}
  const std::size_t* data() const noexcept { return digits_.data(); }
  bool advance() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < base_) return true;
      digits_[i] = 0;
    }
    return false;
  }

private:
  std::vector<std::size_t> digits_;
  std::size_t base_;
};

Relation make_relation(const SearchSpace& sp, const DomainSig& src, const DomainSig& tgt,
                       const std::size_t* digits) {
  const std::size_t cells_n = src.size() * tgt.size();
  std::vector<TruthValue> cells;
  cells.reserve(cells_n);
  for (std::size_t c = 0; c < cells_n; ++c) cells.push_back(sp.values[digits[c]]);
  return Relation(src, tgt, sp.lattice, std::move(cells));
}

SearchOutcome init_outcome(const SearchSpace& sp, std::string property) {
  SearchOutcome out;
  out.property = std::move(property);
  out.lattice = sp.lattice->describe();
  out.sizes = sp.sizes;
  out.values.reserve(sp.values.size());
  for (TruthValue v : sp.values) out.values.push_back(sp.lattice->format_value(v));
  out.budget = sp.budget;
  return out;
}

Relation pointwise_join(const Relation& a, const Relation& b) {
  const Lattice& lat = a.lattice();
  std::vector<TruthValue> cells;
  cells.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      cells.push_back(lat.join(a.at(i, j), b.at(i, j)));
  return Relation(a.source(), a.target(), a.lattice_ptr(), std::move(cells));
}

bool on_grid(const SearchSpace& sp, const Relation& r) {
  const Lattice& lat = r.lattice();
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      bool hit = false;
      for (TruthValue v : sp.values)
        if (lat.equal(r.at(i, j), v)) { hit = true; break; }
      if (!hit) return false;
    }
  return true;
}

std::string cell_values(const Lattice& lat, const char* lhs_label, TruthValue lhs,
                        const char* rhs_label, TruthValue rhs, std::size_t row,
                        std::size_t col) {
  return std::string(lhs_label) + "(" + std::to_string(row) + "," + std::to_string(col) +
         ")=" + lat.format_value(lhs) + " " + rhs_label + "(" + std::to_string(row) + "," +
         std::to_string(col) + ")=" + lat.format_value(rhs);
}

}  // namespace

// ---------------------------------------------------------------------------
// Bootstrap

SearchOutcome check_bootstrap(const SearchSpace& sp) {
  validate_space(sp);
  SearchOutcome out = init_outcome(sp, "bootstrap");
  const Lattice& lat = *sp.lattice;
  const DomainSig A = make_domain('A', sp.sizes[0]);
  const DomainSig B = make_domain('B', sp.sizes[1]);
  const DomainSig C = make_domain('C', sp.sizes[2]);
  const std::size_t ct = A.size() * B.size();
  const std::size_t cu = B.size() * C.size();
  const std::size_t cv = A.size() * C.size();

  Odometer od(ct + cu + cv, sp.values.size());
  bool more = true;
  while (more) {
    if (out.instances >= sp.budget) {
      out.verdict = SearchVerdict::VerifiedSampled;
      return out;
    }
    const Relation t = make_relation(sp, A, B, od.data());
    const Relation u = make_relation(sp, B, C, od.data() + ct);
    const Relation v = make_relation(sp, A, C, od.data() + ct + cu);
    const Relation tu = circle(t, u);
    const Relation v_over_u = sup(v, converse(u));
    const Relation t_into_v = sub(converse(t), v);
    const bool b1 = included_in(tu, v);
    const bool b2 = included_in(t, v_over_u);
    const bool b3 = included_in(u, t_into_v);
    ++out.instances;
    if (b1 != b2 || b2 != b3) {
      out.verdict = SearchVerdict::Counterexample;
      SearchWitness w;
      w.relations = {{"T", t}, {"U", u}, {"V", v}};
      const std::string split = std::string("equivalence split: [T o U [= V]=") +
                                (b1 ? "true" : "false") + " [T [= V |> U']=" +
                                (b2 ? "true" : "false") + " [U [= T' <| V]=" +
                                (b3 ? "true" : "false");
      auto record = [&](const Relation& lhs, const Relation& rhs, const char* leg) {
        auto viol = worst_inclusion_violation(lhs, rhs);
        w.row = viol->row;
        w.col = viol->col;
        w.detail = split + "; " + leg + " fails: " +
                   cell_values(lat, "lhs", viol->lhs, "rhs", viol->rhs, viol->row, viol->col);
      };
      if (!b1) record(tu, v, "[T o U [= V]");
      else if (!b2) record(t, v_over_u, "[T [= V |> U']");
      else record(u, t_into_v, "[U [= T' <| V]");
      out.witness = std::move(w);
      return out;
    }
    more = od.advance();
  }
  out.verdict = SearchVerdict::VerifiedExhaustive;
  return out;
}

// ---------------------------------------------------------------------------
// Pseudo-associativity

SearchOutcome check_pseudo_assoc(const SearchSpace& sp, int law) {
  validate_space(sp);
  if (law < 1 || law > 3)
    throw ValueError("pseudo-associativity law must be 1, 2, or 3, got " +
                     std::to_string(law));
  SearchOutcome out = init_outcome(sp, "assoc" + std::to_string(law));
  const Lattice& lat = *sp.lattice;
  const DomainSig A = make_domain('A', sp.sizes[0]);
  const DomainSig B = make_domain('B', sp.sizes[1]);
  const DomainSig C = make_domain('C', sp.sizes[2]);
  const DomainSig D = make_domain('D', sp.sizes[3]);
  const std::size_t cq = A.size() * B.size();
  const std::size_t cr = B.size() * C.size();
  const std::size_t cs = C.size() * D.size();

  Odometer od(cq + cr + cs, sp.values.size());
  bool more = true;
  while (more) {
    if (out.instances >= sp.budget) {
      out.verdict = SearchVerdict::VerifiedSampled;
      return out;
    }
    const Relation q = make_relation(sp, A, B, od.data());
    const Relation r = make_relation(sp, B, C, od.data() + cq);
    const Relation s = make_relation(sp, C, D, od.data() + cq + cr);
    Relation lhs = law == 1   ? sub(q, sup(r, s))
                   : law == 2 ? sub(q, sub(r, s))
                              : sup(q, sup(r, s));
    Relation rhs = law == 1   ? sup(sub(q, r), s)
                   : law == 2 ? sub(circle(q, r), s)
                              : sup(q, circle(r, s));
    ++out.instances;
    if (!equal(lhs, rhs)) {
      out.verdict = SearchVerdict::Counterexample;
      SearchWitness w;
      w.relations = {{"Q", q}, {"R", r}, {"S", s}};
      for (std::size_t i = 0; i < lhs.rows() && !out.witness; ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k)
          if (!lat.equal(lhs.at(i, k), rhs.at(i, k))) {
            w.row = i;
            w.col = k;
            w.detail = cell_values(lat, "lhs", lhs.at(i, k), "rhs", rhs.at(i, k), i, k);
            out.witness = std::move(w);
            break;
          }
      return out;
    }
    more = od.advance();
  }
  out.verdict = SearchVerdict::VerifiedExhaustive;
  return out;
}

// ---------------------------------------------------------------------------
// Solver maximality

namespace {

struct Shape {
  const DomainSig* src;
  const DomainSig* tgt;
};

// One fixed-triple/X-role configuration.  `composite` builds the morphism
// composite whose inclusion in `target` defines compatibility of X.
template <typename BoundFn, typename CompositeFn, typename TargetFn>
SearchOutcome run_maximality(const SearchSpace& sp, std::string property,
                             std::array<const char*, 3> fixed_names,
                             std::array<Shape, 3> fixed_shapes, const char* x_name,
                             Shape x_shape, BoundFn bound_fn, CompositeFn composite_fn,
                             TargetFn target_fn) {
  SearchOutcome out = init_outcome(sp, std::move(property));
  const Lattice& lat = *sp.lattice;
  std::array<std::size_t, 3> fixed_cells{};
  std::size_t fixed_total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    fixed_cells[i] = fixed_shapes[i].src->size() * fixed_shapes[i].tgt->size();
    fixed_total += fixed_cells[i];
  }
  const std::size_t x_cells = x_shape.src->size() * x_shape.tgt->size();

  Odometer outer(fixed_total, sp.values.size());
  bool more_outer = true;
  while (more_outer) {
    const Relation f0 = make_relation(sp, *fixed_shapes[0].src, *fixed_shapes[0].tgt,
                                      outer.data());
    const Relation f1 = make_relation(sp, *fixed_shapes[1].src, *fixed_shapes[1].tgt,
                                      outer.data() + fixed_cells[0]);
    const Relation f2 = make_relation(sp, *fixed_shapes[2].src, *fixed_shapes[2].tgt,
                                      outer.data() + fixed_cells[0] + fixed_cells[1]);
    const Relation bound = bound_fn(f0, f1, f2);
    const bool bound_within_grid = on_grid(sp, bound);
    Relation joinmax = Relation::zeros(*x_shape.src, *x_shape.tgt, sp.lattice);

    auto fixed_witness = [&]() {
      std::vector<std::pair<std::string, Relation>> rels;
      for (std::size_t i = 0; i < 3; ++i)
        rels.emplace_back(fixed_names[i],
                          i == 0 ? f0 : i == 1 ? f1 : f2);
      rels.emplace_back("bound", bound);
      return rels;
    };

    Odometer inner(x_cells, sp.values.size());
    bool more_inner = true;
    while (more_inner) {
      if (out.instances >= sp.budget) {
        out.verdict = SearchVerdict::VerifiedSampled;
        return out;
      }
      const Relation x = make_relation(sp, *x_shape.src, *x_shape.tgt, inner.data());
      const Relation comp = composite_fn(f0, f1, f2, x);
      const Relation& tgt = target_fn(f0, f1, f2);
      const bool compat = included_in(comp, tgt);
      const bool under_bound = included_in(x, bound);
      ++out.instances;
      if (compat != under_bound) {
        out.verdict = SearchVerdict::Counterexample;
        SearchWitness w;
        w.relations = fixed_witness();
        w.relations.emplace_back(x_name, x);
        if (compat) {
          auto viol = worst_inclusion_violation(x, bound);
          w.row = viol->row;
          w.col = viol->col;
          w.detail = std::string(x_name) + " is compatible yet exceeds the bound: " +
                     cell_values(lat, x_name, viol->lhs, "bound", viol->rhs, viol->row,
                                 viol->col);
        } else {
          auto viol = worst_inclusion_violation(comp, tgt);
          w.row = viol->row;
          w.col = viol->col;
          w.detail = std::string(x_name) +
                     " lies under the bound yet its composite escapes the target: " +
                     cell_values(lat, "composite", viol->lhs, "target", viol->rhs,
                                 viol->row, viol->col);
        }
        out.witness = std::move(w);
        return out;
      }
      if (compat) joinmax = pointwise_join(joinmax, x);
      more_inner = inner.advance();
    }

    // The bound must solve its own constraint...
    {
      const Relation comp = composite_fn(f0, f1, f2, bound);
      const Relation& tgt = target_fn(f0, f1, f2);
      if (!included_in(comp, tgt)) {
        out.verdict = SearchVerdict::Counterexample;
        SearchWitness w;
        w.relations = fixed_witness();
        auto viol = worst_inclusion_violation(comp, tgt);
        w.row = viol->row;
        w.col = viol->col;
        w.detail = std::string("the bound itself is not compatible: ") +
                   cell_values(lat, "composite", viol->lhs, "target", viol->rhs, viol->row,
                               viol->col);
        out.witness = std::move(w);
        return out;
      }
    }
    // ...and where the grid can express it, enumeration must reach it.
    if (bound_within_grid && !equal(joinmax, bound)) {
      out.verdict = SearchVerdict::Counterexample;
      SearchWitness w;
      w.relations = fixed_witness();
      w.relations.emplace_back("max", joinmax);
      for (std::size_t i = 0; i < joinmax.rows() && !out.witness; ++i)
        for (std::size_t j = 0; j < joinmax.cols(); ++j)
          if (!lat.equal(joinmax.at(i, j), bound.at(i, j))) {
            w.row = i;
            w.col = j;
            w.detail = std::string("join of compatible candidates misses the bound: ") +
                       cell_values(lat, "max", joinmax.at(i, j), "bound", bound.at(i, j),
                                   i, j);
            out.witness = std::move(w);
            break;
          }
      return out;
    }
    more_outer = outer.advance();
  }
  out.verdict = SearchVerdict::VerifiedExhaustive;
  return out;
}

}  // namespace

SearchOutcome check_solver_maximality(const SearchSpace& sp, SolveTarget which,
                                      Direction direction) {
  validate_space(sp);
  const bool fwd = direction == Direction::Forward;
  if ((which == SolveTarget::R && !fwd) || (which == SolveTarget::S && fwd))
    throw ValueError(
        "no greatest solution in that direction: R is bounded above for forward "
        "compatibility only, S for backward only");

  const DomainSig A = make_domain('A', sp.sizes[0]);
  const DomainSig B = make_domain('B', sp.sizes[1]);
  const DomainSig C = make_domain('C', sp.sizes[2]);
  const DomainSig D = make_domain('D', sp.sizes[3]);
  const Shape shape_r{&A, &B}, shape_s{&C, &D}, shape_f{&A, &C}, shape_g{&B, &D};
  const char* dir_name = fwd ? "forward" : "backward";

  switch (which) {
    case SolveTarget::R:
      return run_maximality(
          sp, std::string("maximality-R-") + dir_name, {"S", "F", "G"},
          {shape_s, shape_f, shape_g}, "R", shape_r,
          [](const Relation& s, const Relation& f, const Relation& g) {
            return solve_r_upper(s, f, g);
          },
          [](const Relation&, const Relation& f, const Relation& g, const Relation& x) {
            return circle(circle(converse(f), x), g);
          },
          [](const Relation& s, const Relation&, const Relation&) -> const Relation& {
            return s;
          });
    case SolveTarget::S:
      return run_maximality(
          sp, std::string("maximality-S-") + dir_name, {"R", "F", "G"},
          {shape_r, shape_f, shape_g}, "S", shape_s,
          [](const Relation& r, const Relation& f, const Relation& g) {
            return solve_s_upper(r, f, g);
          },
          [](const Relation&, const Relation& f, const Relation& g, const Relation& x) {
            return circle(circle(f, x), converse(g));
          },
          [](const Relation& r, const Relation&, const Relation&) -> const Relation& {
            return r;
          });
    case SolveTarget::F:
      if (fwd)
        return run_maximality(
            sp, "maximality-F-forward", {"R", "S", "G"}, {shape_r, shape_s, shape_g}, "F",
            shape_f,
            [](const Relation& r, const Relation& s, const Relation& g) {
              return solve_f_forward(r, s, g);
            },
            [](const Relation& r, const Relation&, const Relation& g, const Relation& x) {
              return circle(circle(converse(x), r), g);
            },
            [](const Relation&, const Relation& s, const Relation&) -> const Relation& {
              return s;
            });
      return run_maximality(
          sp, "maximality-F-backward", {"R", "S", "G"}, {shape_r, shape_s, shape_g}, "F",
          shape_f,
          [](const Relation& r, const Relation& s, const Relation& g) {
            return solve_f_backward(r, s, g);
          },
          [](const Relation&, const Relation& s, const Relation& g, const Relation& x) {
            return circle(circle(x, s), converse(g));
          },
          [](const Relation& r, const Relation&, const Relation&) -> const Relation& {
            return r;
          });
    case SolveTarget::G:
      if (fwd)
        return run_maximality(
            sp, "maximality-G-forward", {"R", "S", "F"}, {shape_r, shape_s, shape_f}, "G",
            shape_g,
            [](const Relation& r, const Relation& s, const Relation& f) {
              return solve_g_forward(r, s, f);
            },
            [](const Relation& r, const Relation&, const Relation& f, const Relation& x) {
              return circle(circle(converse(f), r), x);
            },
            [](const Relation&, const Relation& s, const Relation&) -> const Relation& {
              return s;
            });
      return run_maximality(
          sp, "maximality-G-backward", {"R", "S", "F"}, {shape_r, shape_s, shape_f}, "G",
          shape_g,
          [](const Relation& r, const Relation& s, const Relation& f) {
            return solve_g_backward(r, s, f);
          },
          [](const Relation&, const Relation& s, const Relation& f, const Relation& x) {
            return circle(circle(f, s), converse(x));
          },
          [](const Relation& r, const Relation&, const Relation&) -> const Relation& {
            return r;
          });
  }
  throw ValueError("unknown solve target");
}

}  // namespace bkrel
