#include "bkrel/morphism.hpp"

namespace bkrel {

namespace {

void require_wiring(bool ok, const std::string& what, const Relation& a, const Relation& b) {
  if (!ok)
    throw WiringError("morphism square: " + what + " (" + a.describe() + " vs " +
                      b.describe() + ")");
}

void require_square_lattice(const Relation& a, const Relation& b) {
  if (a.lattice_ptr() != b.lattice_ptr())
    throw LatticeMismatchError("morphism square: relations over different lattices (" +
                               a.lattice().describe() + " vs " + b.lattice().describe() + ")");
}

Relation forward_composite(const Relation& r, const Relation& f, const Relation& g) {
  return circle(circle(converse(f), r), g);  // F' o R o G : C -> D
}

Relation backward_composite(const Relation& s, const Relation& f, const Relation& g) {
  return circle(circle(f, s), converse(g));  // F o S o G' : A -> B
}

}  // namespace

MorphismSquare::MorphismSquare(Relation r_, Relation s_, Relation f_, Relation g_)
    : r(std::move(r_)), s(std::move(s_)), f(std::move(f_)), g(std::move(g_)) {
  require_square_lattice(r, s);
  require_square_lattice(r, f);
  require_square_lattice(r, g);
  require_wiring(same_labels(f.source(), r.source()), "F and R must share source A", f, r);
  require_wiring(same_labels(g.source(), r.target()), "G must start at R's target B", g, r);
  require_wiring(same_labels(f.target(), s.source()), "F must land in S's source C", f, s);
  require_wiring(same_labels(g.target(), s.target()), "G must land in S's target D", g, s);
}

bool forward_compatible(const MorphismSquare& m) {
  return included_in(forward_composite(m.r, m.f, m.g), m.s);
}

bool backward_compatible(const MorphismSquare& m) {
  return included_in(backward_composite(m.s, m.f, m.g), m.r);
}

CompatReport amphimorphism(const MorphismSquare& m) {
  CompatReport rep;
  Relation fwd = forward_composite(m.r, m.f, m.g);
  Relation bwd = backward_composite(m.s, m.f, m.g);
  rep.forward_violation = worst_inclusion_violation(fwd, m.s);
  rep.backward_violation = worst_inclusion_violation(bwd, m.r);
  rep.forward = !rep.forward_violation.has_value();
  rep.backward = !rep.backward_violation.has_value();
  rep.bothways = rep.forward && rep.backward;
  return rep;
}

// ---------------------------------------------------------------------------
// Solvers.  Each bound follows from peeling the compatibility inclusion with
// the two residuation equivalences
//   T o U [= V  <=>  T [= V |> U'  <=>  U [= T' <| V
// so it is simultaneously a solution and an upper bound on all solutions.

Relation solve_r_upper(const Relation& s, const Relation& f, const Relation& g) {
  return sub(f, sup(s, converse(g)));
}

Relation solve_r_lower(const Relation& s, const Relation& f, const Relation& g) {
  return backward_composite(s, f, g);
}

Relation solve_s_upper(const Relation& r, const Relation& f, const Relation& g) {
  return sub(converse(f), sup(r, g));
}

Relation solve_s_lower(const Relation& r, const Relation& f, const Relation& g) {
  return forward_composite(r, f, g);
}

Relation solve_f_forward(const Relation& r, const Relation& s, const Relation& g) {
  return sub(r, sub(g, converse(s)));
}

Relation solve_f_backward(const Relation& r, const Relation& s, const Relation& g) {
  return sup(sup(r, g), converse(s));
}

Relation solve_g_forward(const Relation& r, const Relation& s, const Relation& f) {
  return sub(converse(r), sub(f, s));
}

Relation solve_g_backward(const Relation& r, const Relation& s, const Relation& f) {
  return sup(sup(converse(r), f), s);
}

// ---------------------------------------------------------------------------
// Crisp predicates

namespace {

void require_crisp_square(const MorphismSquare& m) {
  if (!is_crisp(m.r) || !is_crisp(m.s) || !is_crisp(m.f) || !is_crisp(m.g))
    throw NotCrispError("homomorphism predicates need a fully crisp square");
}

}  // namespace

bool is_homomorphism(const MorphismSquare& m) {
  require_crisp_square(m);
  if (!is_total_function(m.f) || !is_total_function(m.g)) return false;
  return equal(forward_composite(m.r, m.f, m.g), m.s) &&
         equal(backward_composite(m.s, m.f, m.g), m.r);
}

bool is_partial_homomorphism(const MorphismSquare& m) {
  require_crisp_square(m);
  if (!is_univalent(m.f) || !is_univalent(m.g)) return false;
  return equal(circle(m.r, m.g), circle(m.f, m.s));
}

}  // namespace bkrel
