#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"

#include "bkrel/errors.hpp"
#include "bkrel/expr.hpp"
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

/// Round trip: text -> AST -> text.
std::string reprint(const std::string& text) {
  return pretty_print(*parse(text));
}

Workspace square_workspace(std::shared_ptr<const Lattice> lat) {
  Workspace ws(lat);
  ws.add("R", Relation::from_units(dom("A", 2), dom("B", 2), lat,
                                   {1.0, 0.5, 0.0, 1.0}));
  ws.add("S", Relation::from_units(dom("B", 2), dom("C", 2), lat,
                                   {0.3, 1.0, 0.7, 0.2}));
  ws.add("Q", Relation::from_units(dom("A", 2), dom("A", 2), lat,
                                   {0.9, 0.1, 0.4, 0.6}));
  return ws;
}

}  // namespace

TEST_SUITE_BEGIN("expr");

TEST_CASE("parsing and printing round-trip the operator spellings") {
  CHECK(reprint("R o S") == "R o S");
  CHECK(reprint("R <| S") == "R <| S");
  CHECK(reprint("R |> S") == "R |> S");
  CHECK(reprint("R [] S") == "R [] S");
  CHECK(reprint("R m<| S") == "R m<| S");
  CHECK(reprint("R m|> S") == "R m|> S");
  CHECK(reprint("R m[] S") == "R m[] S");
  CHECK(reprint("R'") == "R'");
  CHECK(reprint("R''") == "R''");
  CHECK(reprint("(R o S)'") == "(R o S)'");
  CHECK(reprint("R o S o T") == "R o S o T");
  CHECK(reprint("R o (S o T)") == "R o (S o T)");
  CHECK(reprint("(R o S) o T") == "R o S o T");  // left spine flattens
  CHECK(reprint("R <= S") == "R <= S");
  CHECK(reprint("R == S") == "R == S");
  // The four solver bounds exactly as they are typed at the CLI.
  CHECK(reprint("F <| (S |> G')") == "F <| (S |> G')");
  CHECK(reprint("F' <| (R |> G)") == "F' <| (R |> G)");
  CHECK(reprint("R <| (G <| S')") == "R <| (G <| S')");
  CHECK(reprint("(R |> G) |> S'") == "(R |> G) |> S'");
  CHECK(reprint("(R' |> F) |> S") == "(R' |> F) |> S");
  CHECK(reprint("F' o R o G <= S") == "F' o R o G <= S");
}

TEST_CASE("parse produces the expected shapes") {
  auto chain = parse("R o S o T");
  CHECK(chain->kind() == ExprKind::Circle);
  CHECK(chain->lhs()->kind() == ExprKind::Circle);
  CHECK(chain->rhs()->kind() == ExprKind::RelRef);
  CHECK(chain->rhs()->name() == "T");

  auto cmp = parse("R o S <= T");
  CHECK(cmp->kind() == ExprKind::Included);
  CHECK(cmp->lhs()->kind() == ExprKind::Circle);

  auto conv = parse("R'");
  CHECK(conv->kind() == ExprKind::Converse);
  CHECK(conv->lhs()->kind() == ExprKind::RelRef);

  CHECK(parse("R m[] S")->kind() == ExprKind::MeanSquare);
  CHECK(parse("R == S")->kind() == ExprKind::Equal);
  CHECK(is_comparison(parse("R == S")->kind()));
  CHECK(is_product(ExprKind::Sub));
  CHECK_FALSE(is_product(ExprKind::Converse));
}

TEST_CASE("structural equality distinguishes shape, not spelling") {
  CHECK(structurally_equal(*parse("R o (S o T)"), *parse("R o (S o T)")));
  CHECK_FALSE(structurally_equal(*parse("R o (S o T)"), *parse("R o S o T")));
  CHECK(structurally_equal(*parse("  R   o S "), *parse("R o S")));
  CHECK_FALSE(structurally_equal(*parse("R o S"), *parse("S o R")));
}

TEST_CASE("non-circle operators refuse to chain without parentheses") {
  CHECK_THROWS_AS(parse("R <| S <| T"), ParseError);
  CHECK_THROWS_AS(parse("R <| S |> T"), ParseError);
  CHECK_THROWS_AS(parse("R o S <| T"), ParseError);
  CHECK_THROWS_AS(parse("R <| S o T"), ParseError);
  CHECK_THROWS_AS(parse("R [] S [] T"), ParseError);
  CHECK_THROWS_AS(parse("R m<| S m<| T"), ParseError);
  // Parenthesized forms are fine.
  CHECK_NOTHROW(parse("(R <| S) <| T"));
  CHECK_NOTHROW(parse("R <| (S <| T)"));
  CHECK_NOTHROW(parse("(R o S) <| T"));
}

TEST_CASE("malformed expressions carry a position") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("R o"), ParseError);
  CHECK_THROWS_AS(parse("(R"), ParseError);
  CHECK_THROWS_AS(parse("R)"), ParseError);
  CHECK_THROWS_AS(parse("R @ S"), ParseError);
  CHECK_THROWS_AS(parse("o"), ParseError);
  CHECK_THROWS_AS(parse("R <= S <= T"), ParseError);
  CHECK_THROWS_AS(parse("R == S == T"), ParseError);
  CHECK_THROWS_AS(parse("'R"), ParseError);
  try {
    parse("R @ S");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("comparisons only appear at the top level") {
  // The grammar cannot nest them; an AST built by hand is caught at
  // evaluation time.
  auto nested = Expr::binary(ExprKind::Circle,
                             Expr::binary(ExprKind::Included, Expr::ref("R"),
                                          Expr::ref("R")),
                             Expr::ref("S"));
  auto ws = square_workspace(Lattice::godel());
  CHECK_THROWS_AS(evaluate(*nested, ws), ValueError);
  CHECK_THROWS_AS(parse("(R <= S) o T"), ParseError);
}

TEST_CASE("workspace bindings are validated") {
  auto g = Lattice::godel();
  Workspace ws(g);
  auto r = Relation::from_units(dom("A", 1), dom("B", 1), g, {0.5});
  ws.add("R", r);
  CHECK(ws.has("R"));
  CHECK_FALSE(ws.has("S"));
  CHECK_THROWS_AS(ws.add("R", r), ValueError);   // duplicate
  CHECK_THROWS_AS(ws.add("o", r), ValueError);   // reserved word
  CHECK_THROWS_AS(ws.get("S"), ValueError);      // unbound
  auto luk_rel =
      Relation::from_units(dom("A", 1), dom("B", 1), Lattice::lukasiewicz(),
                           {0.5});
  CHECK_THROWS_AS(ws.add("L", luk_rel), LatticeMismatchError);
}

TEST_CASE("evaluation matches the relation operations") {
  auto g = Lattice::godel();
  auto ws = square_workspace(g);
  const auto& r = ws.get("R");
  const auto& s = ws.get("S");

  auto composed = std::get<Relation>(evaluate(*parse("R o S"), ws));
  CHECK(equal(composed, circle(r, s)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R <| S"), ws)), sub(r, s)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R |> S"), ws)), sup(r, s)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R [] S"), ws)),
              square(r, s)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R m<| S"), ws)),
              mean_product(r, s, MeanKind::Sub)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R m|> S"), ws)),
              mean_product(r, s, MeanKind::Sup)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R m[] S"), ws)),
              mean_product(r, s, MeanKind::Square)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("R'"), ws)), converse(r)));
  CHECK(equal(std::get<Relation>(evaluate(*parse("Q o R o S"), ws)),
              circle(circle(ws.get("Q"), r), s)));
}

TEST_CASE("comparisons evaluate to booleans") {
  auto g = Lattice::godel();
  auto ws = square_workspace(g);
  CHECK(std::get<bool>(evaluate(*parse("R <= R"), ws)));
  CHECK(std::get<bool>(evaluate(*parse("R == R"), ws)));
  CHECK(std::get<bool>(evaluate(*parse("Q o R <= Q o R"), ws)));
  CHECK_FALSE(std::get<bool>(evaluate(*parse("Q == Q'"), ws)));
  // The bootstrap equivalence, written in the surface syntax.
  const bool b1 = std::get<bool>(evaluate(*parse("R o S <= R o S"), ws));
  CHECK(b1);
}

TEST_CASE("evaluation reports unbound names and bad wirings") {
  auto ws = square_workspace(Lattice::godel());
  CHECK_THROWS_AS(evaluate(*parse("R o Missing"), ws), ValueError);
  // S o R is not chainable: C -> A mismatch.
  CHECK_THROWS_AS(evaluate(*parse("S o R"), ws), WiringError);
  // Comparing different shapes is a wiring error too.
  CHECK_THROWS_AS(evaluate(*parse("R <= S"), ws), WiringError);
}

TEST_CASE("names are word-shaped and keywords are reserved") {
  CHECK(parse("Rel_1 o Rel_2")->lhs()->name() == "Rel_1");
  // A lone 'm' is a name, not a prefix: 'm <|' with a space is 'm' then '<|',
  // which cannot follow an atom.
  CHECK_THROWS_AS(parse("R m <| S"), ParseError);
  // 'mx' is an ordinary name.
  CHECK(parse("mx o S")->lhs()->name() == "mx");
  // 'o' cannot be an operand.
  CHECK_THROWS_AS(parse("R o o"), ParseError);
}

TEST_SUITE_END();
