#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "bkrel/errors.hpp"
#include "bkrel/io.hpp"
#include "bkrel/lattice.hpp"
#include "bkrel/relation.hpp"
#include "bkrel/search.hpp"

using namespace bkrel;
namespace fs = std::filesystem;

namespace {

DomainSig dom(const std::string& name, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(name + std::to_string(i + 1));
  }
  return DomainSig(name, labels);
}

/// Scratch directory shared by the file-based cases, cleaned per process.
fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("bkrel_io_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

const std::string kLuk3Json = R"({
  "names": ["0", "0.5", "1"],
  "leq": [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
  "tensor": [[0, 0, 0], [0, 0, 1], [0, 1, 2]],
  "bottom": 0,
  "top": 2
})";

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("csv writer lays out name, labels, and trimmed decimals") {
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("a", 2), dom("b", 2), g,
                                {1.0, 0.5, 0.0, 0.25});
  CHECK(relation_to_csv("R", r) == "R,b1,b2\na1,1,0.5\na2,0,0.25\n");
  // Finite lattices write element names.
  auto b = Lattice::boolean();
  auto cr = Relation::identity(dom("x", 2), b);
  CHECK(relation_to_csv("E", cr) == "E,x1,x2\nx1,1,0\nx2,0,1\n");
}

TEST_CASE("csv fields must stay delimiter-free") {
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("a", 1), dom("b", 1), g, {0.5});
  CHECK_THROWS_AS(relation_to_csv("bad,name", r), IoError);
  CHECK_THROWS_AS(relation_to_csv("", r), IoError);
  CHECK_NOTHROW(relation_to_csv("R <| (S |> G')", r));
}

TEST_CASE("csv reader round-trips and tolerates formatting noise") {
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("a", 2), dom("b", 3), g,
                                {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  auto loaded = relation_from_csv(relation_to_csv("T", r), g);
  CHECK(loaded.name == "T");
  CHECK(equal(loaded.relation, r));

  // Whitespace around fields, blank lines, and CRLF endings are accepted.
  const std::string noisy =
      "\r\n T , b1 ,b2\r\n\n a1, 0.25 , 1\r\na2,0,0.5\n\n";
  auto noisy_loaded = relation_from_csv(noisy, g);
  CHECK(noisy_loaded.name == "T");
  CHECK(noisy_loaded.relation.rows() == 2);
  CHECK(noisy_loaded.relation.cols() == 2);
  CHECK(noisy_loaded.relation.at(0, 1).unit() == doctest::Approx(1.0));
  CHECK(noisy_loaded.relation.source().labels()[0] == "a1");
}

TEST_CASE("csv reader rejects malformed tables") {
  auto g = Lattice::godel();
  CHECK_THROWS_AS(relation_from_csv("", g), IoError);
  CHECK_THROWS_AS(relation_from_csv("R,b1\n", g), IoError);
  CHECK_THROWS_AS(relation_from_csv("R\na1\n", g), IoError);
  // Ragged data row.
  CHECK_THROWS_AS(relation_from_csv("R,b1,b2\na1,0.5\n", g), IoError);
  // Empty name cell.
  CHECK_THROWS_AS(relation_from_csv(",b1\na1,0.5\n", g), IoError);
  // Unparsable value.
  CHECK_THROWS_AS(relation_from_csv("R,b1\na1,zero\n", g), IoError);
  CHECK_THROWS_AS(relation_from_csv("R,b1\na1,1.5\n", g), IoError);
  // Duplicate labels surface as an IoError, not a raw domain error.
  CHECK_THROWS_AS(relation_from_csv("R,b1,b1\na1,0.5,0.5\n", g), IoError);
}

TEST_CASE("csv reader resolves finite element names") {
  auto lat = lattice_from_json(kLuk3Json);
  auto loaded = relation_from_csv("W,y1\nx1,0.5\nx2,1\n", lat);
  CHECK(loaded.relation.lattice().format_value(loaded.relation.at(0, 0)) ==
        "0.5");
  CHECK_THROWS_AS(relation_from_csv("W,y1\nx1,0.7\n", lat), IoError);
}

TEST_CASE("json relation round-trip in both cell styles") {
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("a", 2), dom("b", 2), g,
                                {1.0, 0.5, 0.0, 0.25});
  auto loaded = relation_from_json(relation_to_json("R", r), g);
  CHECK(loaded.name == "R");
  CHECK(equal(loaded.relation, r));

  // String-valued cells parse through the lattice too.
  const std::string text = R"({"name":"X","source":["a1"],"target":["b1"],
                               "cells":[["0.25"]]})";
  CHECK(relation_from_json(text, g).relation.at(0, 0).unit() ==
        doctest::Approx(0.25));

  // Finite lattices round-trip element names.
  auto b = Lattice::boolean();
  auto e = Relation::identity(dom("x", 2), b);
  auto finite_loaded = relation_from_json(relation_to_json("E", e), b);
  CHECK(equal(finite_loaded.relation, e));
}

TEST_CASE("json relation schema violations are reported") {
  auto g = Lattice::godel();
  auto b = Lattice::boolean();
  CHECK_THROWS_AS(relation_from_json("[1,2]", g), IoError);
  CHECK_THROWS_AS(relation_from_json("{not json", g), IoError);
  CHECK_THROWS_AS(
      relation_from_json(R"({"source":["a"],"target":["b"],"cells":[[1]]})",
                         g),
      IoError);
  CHECK_THROWS_AS(
      relation_from_json(
          R"({"name":"R","source":["a"],"target":["b"],"cells":[[1, 0]]})",
          g),
      IoError);
  CHECK_THROWS_AS(
      relation_from_json(
          R"({"name":"R","source":["a"],"target":["b"],"cells":[[true]]})",
          g),
      IoError);
  // Numbers are meaningless for finite carriers; names are required.
  CHECK_THROWS_AS(
      relation_from_json(
          R"({"name":"R","source":["a"],"target":["b"],"cells":[[1]]})", b),
      IoError);
}

TEST_CASE("relation files dispatch on their extension") {
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("a", 1), dom("b", 1), g, {0.5});
  auto csv_path = write_file("rel.csv", relation_to_csv("R", r));
  auto json_path = write_file("rel.json", relation_to_json("R", r));
  CHECK(equal(load_relation_file(csv_path.string(), g).relation, r));
  CHECK(equal(load_relation_file(json_path.string(), g).relation, r));
  CHECK_THROWS_AS(load_relation_file("/nonexistent/rel.csv", g), IoError);
  // Errors carry the file path for context.
  auto bad_path = write_file("bad.csv", "R,b1\na1,oops\n");
  try {
    load_relation_file(bad_path.string(), g);
    FAIL("expected an IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("bad.csv") != std::string::npos);
  }
}

TEST_CASE("finite lattice specs decode and validate") {
  auto lat = lattice_from_json(kLuk3Json);
  CHECK(lat->is_finite());
  CHECK(lat->carrier_size() == 3);
  CHECK(lat->element_name(1) == "0.5");
  // Derived residuum: 1 -> 0.5 is 0.5 on the three-element chain.
  CHECK(lat->equal(lat->residuum(lat->elem(2), lat->elem(1)), lat->elem(1)));

  auto spec = finite_spec_from_json(kLuk3Json);
  CHECK(spec.names.size() == 3);
  CHECK(spec.leq.size() == 9);
  CHECK(spec.tensor.size() == 9);
  CHECK(spec.residuum.empty());
  CHECK(spec.bottom == 0);
  CHECK(spec.top == 2);
}

TEST_CASE("finite lattice schema violations are reported") {
  CHECK_THROWS_AS(finite_spec_from_json("null"), IoError);
  CHECK_THROWS_AS(finite_spec_from_json("{}"), IoError);
  CHECK_THROWS_AS(finite_spec_from_json(R"({"names":[]})"), IoError);
  CHECK_THROWS_AS(
      finite_spec_from_json(
          R"({"names":["0","1"],"leq":[[1,1],[0]],"tensor":[[0,0],[0,1]],
              "bottom":0,"top":1})"),
      IoError);
  CHECK_THROWS_AS(
      finite_spec_from_json(
          R"({"names":["0","1"],"leq":[[1,1],[0,1]],"tensor":[[0,0],[0,-1]],
              "bottom":0,"top":1})"),
      IoError);
  CHECK_THROWS_AS(
      finite_spec_from_json(
          R"({"names":["0","1"],"leq":[[1,1],[0,1]],"tensor":[[0,0],[0,1]],
              "bottom":0})"),
      IoError);
  // leq entries may be booleans or 0/1 but nothing else.
  CHECK_THROWS_AS(
      finite_spec_from_json(
          R"({"names":["0","1"],"leq":[[1,2],[0,1]],"tensor":[[0,0],[0,1]],
              "bottom":0,"top":1})"),
      IoError);
}

TEST_CASE("semantically broken tables are rejected with check names") {
  // Adjunction-violating residuum table: structure is fine, semantics fail.
  const std::string bad = R"({
    "names": ["0", "1"],
    "leq": [[1, 1], [0, 1]],
    "tensor": [[0, 0], [0, 1]],
    "residuum": [[1, 1], [1, 1]],
    "bottom": 0, "top": 1
  })";
  try {
    lattice_from_json(bad);
    FAIL("expected rejection");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("galois-adjunction") !=
          std::string::npos);
  }
}

TEST_CASE("lattice spec strings resolve builtins and tables") {
  CHECK(parse_lattice_spec("godel") == Lattice::godel());
  CHECK(parse_lattice_spec("lukasiewicz") == Lattice::lukasiewicz());
  CHECK(parse_lattice_spec("product") == Lattice::product());
  CHECK(parse_lattice_spec("nilmin") == Lattice::nilpotent_min());
  auto path = write_file("luk3.json", kLuk3Json);
  auto lat = parse_lattice_spec("table:" + path.string());
  CHECK(lat->is_finite());
  CHECK_THROWS_AS(parse_lattice_spec("boolean algebra"), ValueError);
  CHECK_THROWS_AS(parse_lattice_spec("table:"), ValueError);
  CHECK_THROWS_AS(parse_lattice_spec("table:/nonexistent.json"), IoError);
}

TEST_CASE("report serializers emit well-formed machine output") {
  auto report = validate_lattice(*Lattice::boolean());
  auto doc = nlohmann::json::parse(validation_report_json(report));
  CHECK(doc["lattice"] == "finite{0,1}");
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() == 21);
  CHECK(doc["checks"][0]["witness"].is_null());

  auto text = validation_report_text(report);
  CHECK(text.find("PASS order-reflexive") != std::string::npos);
  CHECK(text.find("21/21 checks passed") != std::string::npos);

  // Compat report with one failing direction.
  auto g = Lattice::godel();
  auto r = Relation::from_units(dom("A", 1), dom("B", 1), g, {0.9});
  auto s = Relation::from_units(dom("C", 1), dom("D", 1), g, {0.1});
  auto f = Relation::ones(dom("A", 1), dom("C", 1), g);
  auto gm = Relation::ones(dom("B", 1), dom("D", 1), g);
  auto compat = amphimorphism(MorphismSquare(r, s, f, gm));
  auto cdoc = nlohmann::json::parse(compat_report_json(compat));
  CHECK(cdoc["forward"] == false);
  CHECK(cdoc["backward"] == true);
  CHECK(cdoc["bothways"] == false);
  CHECK(cdoc["forward_violation"]["row"] == 0);
  CHECK(cdoc["forward_violation"]["lhs"] == "0.9");
  CHECK(cdoc["forward_violation"]["rhs"] == "0.1");
  CHECK(cdoc["backward_violation"].is_null());

  // Search outcome, with and without a witness.
  auto good = check_bootstrap(SearchSpace::over(Lattice::boolean()));
  auto gdoc = nlohmann::json::parse(search_outcome_json(good));
  CHECK(gdoc["verdict"] == "verified-exhaustive");
  CHECK(gdoc["witness"].is_null());
  CHECK(gdoc["instances"] == 4096);

  auto bad = check_pseudo_assoc(SearchSpace::over(Lattice::boolean()), 3);
  auto bdoc = nlohmann::json::parse(search_outcome_json(bad));
  CHECK(bdoc["verdict"] == "counterexample");
  CHECK(bdoc["witness"]["relations"].size() == 3);
  CHECK(bdoc["witness"]["relations"][0]["name"] == "Q");
  CHECK(bdoc["witness"]["cell"].size() == 2);
  CHECK_FALSE(bdoc["witness"]["detail"].get<std::string>().empty());
}

TEST_CASE("text files read fully or fail loudly") {
  auto p = write_file("plain.txt", "hello\nworld\n");
  CHECK(read_text_file(p.string()) == "hello\nworld\n");
  CHECK_THROWS_AS(read_text_file("/nonexistent/file"), IoError);
}

TEST_SUITE_END();
