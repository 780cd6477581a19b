#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"

#include "bkrel/errors.hpp"
#include "bkrel/lattice.hpp"
#include "bkrel/relation.hpp"

using namespace bkrel;

namespace {

DomainSig dom(const std::string& name, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(name + std::to_string(i + 1));
  }
  return DomainSig(name, labels);
}

Relation units(const std::string& s, const std::string& t,
               std::shared_ptr<const Lattice> lat, std::size_t rows,
               std::size_t cols, const std::vector<double>& values) {
  return Relation::from_units(dom(s, rows), dom(t, cols), std::move(lat),
                              values);
}

bool cell_is(const Relation& r, std::size_t i, std::size_t j, double v) {
  return std::fabs(r.at(i, j).unit() - v) <= 1e-9;
}

}  // namespace

TEST_SUITE_BEGIN("relation");

TEST_CASE("domain signatures validate their labels") {
  CHECK_THROWS_AS(DomainSig("A", {}), ValueError);
  CHECK_THROWS_AS(DomainSig("A", {"x", "x"}), ValueError);
  CHECK_THROWS_AS(DomainSig("A", {"x", ""}), ValueError);
  CHECK_THROWS_AS(DomainSig("", {"x"}), ValueError);
  DomainSig a("A", {"a1", "a2"});
  CHECK(a.describe() == "A{a1,a2}");
  CHECK(a.size() == 2);
  // Compatibility is positional on labels; the domain name is cosmetic.
  CHECK(same_labels(a, DomainSig("Other", {"a1", "a2"})));
  CHECK_FALSE(same_labels(a, DomainSig("A", {"a2", "a1"})));
  CHECK_FALSE(a == DomainSig("Other", {"a1", "a2"}));
  CHECK(a == DomainSig("A", {"a1", "a2"}));
}

TEST_CASE("construction validates shape and lattice") {
  auto g = Lattice::godel();
  auto l = Lattice::lukasiewicz();
  CHECK_THROWS_AS(units("A", "B", g, 2, 2, {0.1, 0.2, 0.3}), ValueError);
  std::vector<TruthValue> mixed = {g->unit(0.1), l->unit(0.2)};
  CHECK_THROWS_AS(Relation(dom("A", 1), dom("B", 2), g, mixed),
                  LatticeMismatchError);
  auto r = units("A", "B", g, 2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  CHECK(r.rows() == 2);
  CHECK(r.cols() == 3);
  CHECK(cell_is(r, 1, 2, 0.6));
  CHECK(r.describe() == "A{A1,A2} -> B{B1,B2,B3} over godel");
}

TEST_CASE("constant, zeros, ones, identity") {
  auto g = Lattice::godel();
  auto z = Relation::zeros(dom("A", 2), dom("B", 2), g);
  auto o = Relation::ones(dom("A", 2), dom("B", 2), g);
  auto e = Relation::identity(dom("A", 2), g);
  CHECK(cell_is(z, 0, 1, 0.0));
  CHECK(cell_is(o, 1, 0, 1.0));
  CHECK(cell_is(e, 0, 0, 1.0));
  CHECK(cell_is(e, 0, 1, 0.0));
  CHECK(is_crisp(e));
  CHECK(is_total_function(e));
  CHECK(included_in(z, o));
}

TEST_CASE("converse transposes and swaps domains") {
  auto g = Lattice::godel();
  auto r = units("A", "B", g, 2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  auto c = converse(r);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 2);
  CHECK(cell_is(c, 2, 0, 0.3));
  CHECK(cell_is(c, 0, 1, 0.4));
  CHECK(same_labels(c.source(), r.target()));
  CHECK(same_labels(c.target(), r.source()));
  CHECK(equal(converse(c), r));
}

TEST_CASE("circle composes with join of tensors") {
  auto g = Lattice::godel();
  auto r = units("A", "B", g, 2, 2, {1.0, 0.5, 0.0, 1.0});
  auto s = units("B", "C", g, 2, 2, {0.3, 1.0, 0.7, 0.2});
  auto rs = circle(r, s);
  CHECK(cell_is(rs, 0, 0, 0.5));
  CHECK(cell_is(rs, 0, 1, 1.0));
  CHECK(cell_is(rs, 1, 0, 0.7));
  CHECK(cell_is(rs, 1, 1, 0.2));
  // The crisp identity is the unit of composition.
  auto ea = Relation::identity(dom("A", 2), g);
  auto eb = Relation::identity(dom("B", 2), g);
  CHECK(equal(circle(ea, r), r));
  CHECK(equal(circle(r, eb), r));
}

TEST_CASE("circle is associative") {
  auto l = Lattice::lukasiewicz();
  auto r = units("A", "B", l, 2, 2, {0.9, 0.4, 0.1, 1.0});
  auto s = units("B", "C", l, 2, 3, {0.3, 1.0, 0.6, 0.7, 0.2, 0.8});
  auto t = units("C", "D", l, 3, 2, {0.5, 0.1, 0.9, 0.6, 0.2, 1.0});
  CHECK(equal(circle(circle(r, s), t), circle(r, circle(s, t))));
}

TEST_CASE("sub, sup, and square match their hand-evaluated forms") {
  auto l = Lattice::lukasiewicz();
  auto row = units("X", "Y", l, 1, 2, {0.8, 0.3});
  auto col = units("Y", "Z", l, 2, 1, {0.5, 1.0});
  CHECK(cell_is(sub(row, col), 0, 0, 0.7));
  CHECK(cell_is(square(row, col), 0, 0, 0.3));
  auto row2 = units("X", "Y", l, 1, 2, {0.5, 1.0});
  auto col2 = units("Y", "Z", l, 2, 1, {0.8, 0.3});
  CHECK(cell_is(sup(row2, col2), 0, 0, 0.7));
}

TEST_CASE("residuum into all-ones yields all-ones") {
  auto l = Lattice::lukasiewicz();
  auto r = units("A", "B", l, 2, 2, {0.8, 0.3, 0.6, 0.1});
  auto ones_bc = Relation::ones(dom("B", 2), dom("C", 2), l);
  auto res = sub(r, ones_bc);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(cell_is(res, i, j, 1.0));
    }
  }
  auto ones_ab = Relation::ones(dom("A", 2), dom("B", 2), l);
  auto sup_res = sup(ones_ab, units("B", "C", l, 2, 2, {0.2, 0.9, 0.4, 0.7}));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(cell_is(sup_res, i, j, 1.0));
    }
  }
}

TEST_CASE("duality identities") {
  auto l = Lattice::lukasiewicz();
  auto r = units("A", "B", l, 2, 3, {0.9, 0.4, 0.2, 0.1, 1.0, 0.6});
  auto s = units("B", "C", l, 3, 2, {0.3, 1.0, 0.7, 0.2, 0.5, 0.8});
  CHECK(equal(converse(circle(r, s)), circle(converse(s), converse(r))));
  CHECK(equal(converse(sub(r, s)), sup(converse(s), converse(r))));
  CHECK(equal(sup(r, s), converse(sub(converse(s), converse(r)))));
}

TEST_CASE("monotonicity directions of the products") {
  auto g = Lattice::godel();
  auto r1 = units("A", "B", g, 2, 2, {0.2, 0.5, 0.1, 0.4});
  auto r2 = units("A", "B", g, 2, 2, {0.3, 0.6, 0.5, 0.4});  // r1 [= r2
  auto s1 = units("B", "C", g, 2, 2, {0.1, 0.3, 0.2, 0.6});
  auto s2 = units("B", "C", g, 2, 2, {0.4, 0.3, 0.8, 0.9});  // s1 [= s2
  REQUIRE(included_in(r1, r2));
  REQUIRE(included_in(s1, s2));
  // circle: monotone in both arguments.
  CHECK(included_in(circle(r1, s1), circle(r2, s1)));
  CHECK(included_in(circle(r1, s1), circle(r1, s2)));
  // sub: antitone in the first argument, monotone in the second.
  CHECK(included_in(sub(r2, s1), sub(r1, s1)));
  CHECK(included_in(sub(r1, s1), sub(r1, s2)));
  // sup: monotone in the first argument, antitone in the second.
  CHECK(included_in(sup(r1, s1), sup(r2, s1)));
  CHECK(included_in(sup(r1, s2), sup(r1, s1)));
}

TEST_CASE("middle-domain and lattice mismatches are rejected") {
  auto g = Lattice::godel();
  auto l = Lattice::lukasiewicz();
  auto r = units("A", "B", g, 2, 2, {0.1, 0.2, 0.3, 0.4});
  auto s_bad = units("X", "C", g, 3, 2, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  CHECK_THROWS_AS(circle(r, s_bad), WiringError);
  CHECK_THROWS_AS(sub(r, s_bad), WiringError);
  auto s_luk = units("B", "C", l, 2, 2, {0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(circle(r, s_luk), LatticeMismatchError);
  auto r2 = units("A", "B", g, 2, 2, {0.0, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(included_in(r, s_luk), LatticeMismatchError);
  CHECK_THROWS_AS(included_in(r, s_bad), WiringError);
  CHECK(included_in(r2, r));
}

TEST_CASE("mean products average the connective values") {
  auto l = Lattice::lukasiewicz();
  auto row = units("X", "Y", l, 1, 2, {0.8, 0.3});
  auto col = units("Y", "Z", l, 2, 1, {0.5, 1.0});
  CHECK(cell_is(mean_product(row, col, MeanKind::Sub), 0, 0, 0.85));
  // (bires(0.8,0.5) + bires(0.3,1)) / 2 = (0.7 + 0.3) / 2.
  CHECK(cell_is(mean_product(row, col, MeanKind::Square), 0, 0, 0.5));
  // (0.5 -> 0.8, 1 -> 0.3 reversed for sup): ((0.5<-0.8?) ...) use values:
  // sup connective is residuum(s(j,k), r(i,j)): (0.5->0.8)=1, (1->0.3)=0.3.
  CHECK(cell_is(mean_product(row, col, MeanKind::Sup), 0, 0, 0.65));
  // Single middle element: mean equals harsh.
  auto r1 = units("X", "Y", l, 1, 1, {0.8});
  auto s1 = units("Y", "Z", l, 1, 1, {0.5});
  CHECK(cell_is(mean_product(r1, s1, MeanKind::Sub), 0, 0, 0.7));
  CHECK(equal(mean_product(r1, s1, MeanKind::Sub), sub(r1, s1)));
  // Mean is an arithmetic notion; finite carriers have no arithmetic.
  auto b = Lattice::boolean();
  auto cr = Relation::ones(dom("A", 1), dom("B", 1), b);
  auto cs = Relation::ones(dom("B", 1), dom("C", 1), b);
  CHECK_THROWS_AS(mean_product(cr, cs, MeanKind::Sub),
                  UnsupportedLatticeError);
}

TEST_CASE("inclusion and equality are pointwise with tolerance") {
  auto g = Lattice::godel();
  auto a = units("A", "B", g, 1, 1, {0.5});
  auto b = units("A", "B", g, 1, 1, {0.4});
  CHECK_FALSE(included_in(a, b));
  CHECK(included_in(b, a));
  CHECK(included_in(a, a));
  auto a_eps = units("A", "B", g, 1, 1, {0.5 + 1e-10});
  CHECK(equal(a, a_eps));
  CHECK(included_in(a_eps, a));
}

TEST_CASE("worst inclusion violation reports the most violated cell") {
  auto g = Lattice::godel();
  auto lhs = units("A", "B", g, 2, 2, {1.0, 0.5, 0.0, 1.0});
  auto rhs = units("A", "B", g, 2, 2, {0.5, 1.0, 0.7, 0.2});
  auto v = worst_inclusion_violation(lhs, rhs);
  REQUIRE(v.has_value());
  // Violations at (0,0): 1 > 0.5 (residuum 0.5) and (1,1): 1 > 0.2
  // (residuum 0.2); the lower residuum is worse.
  CHECK(v->row == 1);
  CHECK(v->col == 1);
  CHECK(cell_is(lhs, v->row, v->col, 1.0));
  CHECK(std::fabs(v->lhs.unit() - 1.0) <= 1e-9);
  CHECK(std::fabs(v->rhs.unit() - 0.2) <= 1e-9);
  CHECK_FALSE(worst_inclusion_violation(rhs, rhs).has_value());
}

TEST_CASE("crispness and function-shape predicates") {
  auto g = Lattice::godel();
  auto e = Relation::identity(dom("A", 2), g);
  CHECK(is_crisp(e));
  CHECK(is_univalent(e));
  CHECK(is_covering(e));
  CHECK(is_total_function(e));

  auto z = Relation::zeros(dom("A", 2), dom("B", 2), g);
  CHECK(is_crisp(z));
  CHECK(is_univalent(z));
  CHECK_FALSE(is_covering(z));
  CHECK_FALSE(is_total_function(z));

  auto fuzzy = units("A", "B", g, 1, 1, {0.5});
  CHECK_FALSE(is_crisp(fuzzy));
  CHECK_FALSE(is_univalent(fuzzy));
  CHECK_FALSE(is_covering(fuzzy));
  CHECK_FALSE(is_total_function(fuzzy));

  // Two successors in a row: covering but not univalent.
  auto wide = units("A", "B", g, 2, 2, {1.0, 1.0, 0.0, 1.0});
  CHECK(is_crisp(wide));
  CHECK_FALSE(is_univalent(wide));
  CHECK(is_covering(wide));
  CHECK_FALSE(is_total_function(wide));
}

TEST_CASE("square of a relation against itself tops the diagonal") {
  auto l = Lattice::lukasiewicz();
  auto r = units("A", "A2", l, 2, 2, {0.8, 0.3, 0.1, 0.9});
  // square(r, converse(r)) compares row i of r with row k of r.
  auto sq = square(r, converse(r));
  CHECK(cell_is(sq, 0, 0, 1.0));
  CHECK(cell_is(sq, 1, 1, 1.0));
  // Off-diagonal: min(bires(0.8,0.1), bires(0.3,0.9)) = min(0.3, 0.4).
  CHECK(cell_is(sq, 0, 1, 0.3));
}

TEST_SUITE_END();
