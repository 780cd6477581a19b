// Command-line front end: evaluate relation expressions, check morphism
// squares, solve for the extremal relation completing a square, validate
// lattice tables, and run the enumeration searches.
//
// Exit codes: 0 success (or a true comparison / all checks passed),
// 1 a false comparison, failed check, or counterexample, 2 usage or I/O
// problems.  Diagnostics go to stderr; results go to stdout.

#include <array>
#include <charconv>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bkrel/errors.hpp"
#include "bkrel/expr.hpp"
#include "bkrel/io.hpp"
#include "bkrel/lattice.hpp"
#include "bkrel/morphism.hpp"
#include "bkrel/relation.hpp"
#include "bkrel/search.hpp"

namespace {

using bkrel::Direction;
using bkrel::Lattice;
using bkrel::NamedRelation;
using bkrel::Relation;
using bkrel::SolveTarget;

std::shared_ptr<const Lattice> lattice_for(const std::string& spec) {
  return bkrel::parse_lattice_spec(spec);
}

std::array<std::size_t, 4> parse_sizes(const std::string& text) {
  std::array<std::size_t, 4> out{};
  std::size_t k = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = text.find(',', begin);
    const std::string part =
        text.substr(begin, comma == std::string::npos ? comma : comma - begin);
    if (k >= 4) {
      throw bkrel::ValueError("--sizes expects exactly four comma-separated "
                              "counts, got '" + text + "'");
    }
    std::size_t value = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value == 0) {
      throw bkrel::ValueError("--sizes entries must be positive integers, "
                              "got '" + part + "'");
    }
    out[k++] = value;
    if (comma == std::string::npos) {
      break;
    }
    begin = comma + 1;
  }
  if (k != 4) {
    throw bkrel::ValueError("--sizes expects exactly four comma-separated "
                            "counts, got '" + text + "'");
  }
  return out;
}

struct RelArg {
  std::string name;
  std::string path;
};

RelArg split_rel_arg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw bkrel::ValueError("--rel expects name=file, got '" + arg + "'");
  }
  return RelArg{arg.substr(0, eq), arg.substr(eq + 1)};
}

int run_eval(const std::string& lattice_spec,
             const std::vector<std::string>& rel_args,
             const std::string& expr_text, bool as_json) {
  auto lattice = lattice_for(lattice_spec);
  bkrel::Workspace ws(lattice);
  for (const auto& arg : rel_args) {
    RelArg rel = split_rel_arg(arg);
    NamedRelation loaded = bkrel::load_relation_file(rel.path, lattice);
    ws.add(rel.name, std::move(loaded.relation));
  }
  bkrel::ExprPtr ast = bkrel::parse(expr_text);
  bkrel::EvalResult result = bkrel::evaluate(*ast, ws);
  if (std::holds_alternative<bool>(result)) {
    const bool value = std::get<bool>(result);
    std::cout << (value ? "true" : "false") << "\n";
    return value ? 0 : 1;
  }
  const Relation& rel = std::get<Relation>(result);
  const std::string name = bkrel::pretty_print(*ast);
  std::cout << (as_json ? bkrel::relation_to_json(name, rel)
                        : bkrel::relation_to_csv(name, rel));
  return 0;
}

int run_check(const std::string& mode, const std::string& lattice_spec,
              const std::string& r_path, const std::string& s_path,
              const std::string& f_path, const std::string& g_path) {
  auto lattice = lattice_for(lattice_spec);
  bkrel::MorphismSquare square(
      bkrel::load_relation_file(r_path, lattice).relation,
      bkrel::load_relation_file(s_path, lattice).relation,
      bkrel::load_relation_file(f_path, lattice).relation,
      bkrel::load_relation_file(g_path, lattice).relation);
  bkrel::CompatReport report = bkrel::amphimorphism(square);
  std::cout << bkrel::compat_report_json(report);
  bool ok = false;
  if (mode == "forward") {
    ok = report.forward;
  } else if (mode == "backward") {
    ok = report.backward;
  } else {
    ok = report.bothways;
  }
  return ok ? 0 : 1;
}

int run_solve(const std::string& target, const std::string& direction,
              const std::string& lattice_spec, const std::string& r_path,
              const std::string& s_path, const std::string& f_path,
              const std::string& g_path, bool as_json) {
  auto lattice = lattice_for(lattice_spec);
  const bool forward = direction == "forward";
  auto need = [&](const std::string& path, const char* flag) -> Relation {
    if (path.empty()) {
      throw bkrel::ValueError(std::string("solve ") + target + " needs " +
                              flag);
    }
    return bkrel::load_relation_file(path, lattice).relation;
  };

  Relation solution = [&]() -> Relation {
    if (target == "R") {
      Relation s = need(s_path, "--S");
      Relation f = need(f_path, "--F");
      Relation g = need(g_path, "--G");
      if (forward) {
        std::cerr << "greatest R with F' o R o G [= S\n";
        return bkrel::solve_r_upper(s, f, g);
      }
      std::cerr << "least R with F o S o G' [= R\n";
      return bkrel::solve_r_lower(s, f, g);
    }
    if (target == "S") {
      Relation r = need(r_path, "--R");
      Relation f = need(f_path, "--F");
      Relation g = need(g_path, "--G");
      if (forward) {
        std::cerr << "least S with F' o R o G [= S\n";
        return bkrel::solve_s_lower(r, f, g);
      }
      std::cerr << "greatest S with F o S o G' [= R\n";
      return bkrel::solve_s_upper(r, f, g);
    }
    if (target == "F") {
      Relation r = need(r_path, "--R");
      Relation s = need(s_path, "--S");
      Relation g = need(g_path, "--G");
      if (forward) {
        std::cerr << "greatest F with F' o R o G [= S\n";
        return bkrel::solve_f_forward(r, s, g);
      }
      std::cerr << "greatest F with F o S o G' [= R\n";
      return bkrel::solve_f_backward(r, s, g);
    }
    Relation r = need(r_path, "--R");
    Relation s = need(s_path, "--S");
    Relation f = need(f_path, "--F");
    if (forward) {
      std::cerr << "greatest G with F' o R o G [= S\n";
      return bkrel::solve_g_forward(r, s, f);
    }
    std::cerr << "greatest G with F o S o G' [= R\n";
    return bkrel::solve_g_backward(r, s, f);
  }();

  std::cout << (as_json ? bkrel::relation_to_json(target, solution)
                        : bkrel::relation_to_csv(target, solution));
  return 0;
}

int run_lattice_validate(const std::string& spec_or_path, bool as_json) {
  bkrel::ValidationReport report;
  const bool builtin = spec_or_path == "godel" ||
                       spec_or_path == "lukasiewicz" ||
                       spec_or_path == "product" ||
                       spec_or_path == "nilmin" ||
                       spec_or_path == "boolean";
  try {
    std::shared_ptr<const Lattice> lat;
    if (spec_or_path == "boolean") {
      lat = Lattice::boolean();
    } else if (builtin) {
      lat = lattice_for(spec_or_path);
    } else {
      lat = Lattice::finite_table(
          bkrel::finite_spec_from_json(bkrel::read_text_file(spec_or_path)));
    }
    report = bkrel::validate_lattice(*lat);
  } catch (const bkrel::LatticeDefinitionError& e) {
    // A table that cannot even be constructed counts as a failed validation,
    // not a usage error.
    report.lattice = spec_or_path;
    report.checks.push_back({"construction", false, e.what()});
    report.all_pass = false;
  }
  std::cout << (as_json ? bkrel::validation_report_json(report)
                        : bkrel::validation_report_text(report));
  return report.all_pass ? 0 : 1;
}

int run_search(const std::string& property, const std::string& lattice_spec,
               std::size_t grid, const std::string& sizes_text,
               std::size_t budget) {
  auto lattice = lattice_for(lattice_spec);
  const std::array<std::size_t, 4> sizes = parse_sizes(sizes_text);
  bkrel::SearchSpace space =
      bkrel::SearchSpace::over(lattice, grid, sizes, budget);

  std::vector<bkrel::SearchOutcome> outcomes;
  if (property == "bootstrap") {
    outcomes.push_back(bkrel::check_bootstrap(space));
  } else if (property == "assoc1" || property == "assoc2" ||
             property == "assoc3") {
    outcomes.push_back(
        bkrel::check_pseudo_assoc(space, property.back() - '0'));
  } else {
    const std::pair<SolveTarget, Direction> combos[] = {
        {SolveTarget::R, Direction::Forward},
        {SolveTarget::S, Direction::Backward},
        {SolveTarget::F, Direction::Forward},
        {SolveTarget::F, Direction::Backward},
        {SolveTarget::G, Direction::Forward},
        {SolveTarget::G, Direction::Backward},
    };
    for (const auto& [which, dir] : combos) {
      outcomes.push_back(bkrel::check_solver_maximality(space, which, dir));
    }
  }

  if (outcomes.size() == 1) {
    std::cout << bkrel::search_outcome_json(outcomes.front());
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& outcome : outcomes) {
      arr.push_back(
          nlohmann::ordered_json::parse(bkrel::search_outcome_json(outcome)));
    }
    std::cout << arr.dump(2) << "\n";
  }
  for (const auto& outcome : outcomes) {
    if (outcome.verdict == bkrel::SearchVerdict::Counterexample) {
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy-relation calculator: triangle products, morphism "
               "squares, extremal solvers, and property searches over "
               "residuated lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bkrel 0.1.0");

  const std::vector<std::string> lattice_help_names = {
      "godel", "lukasiewicz", "product", "nilmin"};
  const std::string lattice_help =
      "lattice spec: godel | lukasiewicz | product | nilmin | table:<path>";

  // --- eval ---
  auto* eval_cmd = app.add_subcommand(
      "eval", "evaluate a relation expression; prints CSV (or a boolean for "
              "comparisons)");
  std::string eval_lattice = "godel";
  std::vector<std::string> eval_rels;
  std::string eval_expr;
  bool eval_json = false;
  eval_cmd->add_option("--lattice", eval_lattice, lattice_help);
  eval_cmd->add_option("--rel", eval_rels,
                       "bind a relation: name=file (.csv or .json)");
  eval_cmd->add_option("expr", eval_expr, "expression to evaluate")
      ->required();
  eval_cmd->add_flag("--json", eval_json, "emit the result relation as JSON");

  // --- check ---
  auto* check_cmd = app.add_subcommand(
      "check", "test a morphism square; prints the compatibility report");
  std::string check_mode;
  std::string check_lattice = "godel";
  std::string check_r, check_s, check_f, check_g;
  check_cmd->add_option("mode", check_mode, "forward | backward | bothways")
      ->required()
      ->check(CLI::IsMember({"forward", "backward", "bothways"}));
  check_cmd->add_option("--lattice", check_lattice, lattice_help);
  check_cmd->add_option("--R", check_r, "relation R (A -> B)")->required();
  check_cmd->add_option("--S", check_s, "relation S (C -> D)")->required();
  check_cmd->add_option("--F", check_f, "relation F (A -> C)")->required();
  check_cmd->add_option("--G", check_g, "relation G (B -> D)")->required();

  // --- solve ---
  auto* solve_cmd = app.add_subcommand(
      "solve", "compute the extremal relation completing a morphism square; "
               "prints CSV");
  std::string solve_target;
  std::string solve_direction;
  std::string solve_lattice = "godel";
  std::string solve_r, solve_s, solve_f, solve_g;
  bool solve_json = false;
  solve_cmd->add_option("target", solve_target, "R | S | F | G")
      ->required()
      ->check(CLI::IsMember({"R", "S", "F", "G"}));
  solve_cmd
      ->add_option("--direction", solve_direction, "forward | backward")
      ->required()
      ->check(CLI::IsMember({"forward", "backward"}));
  solve_cmd->add_option("--lattice", solve_lattice, lattice_help);
  solve_cmd->add_option("--R", solve_r, "relation R (A -> B)");
  solve_cmd->add_option("--S", solve_s, "relation S (C -> D)");
  solve_cmd->add_option("--F", solve_f, "relation F (A -> C)");
  solve_cmd->add_option("--G", solve_g, "relation G (B -> D)");
  solve_cmd->add_flag("--json", solve_json, "emit the solution as JSON");

  // --- lattice validate ---
  auto* lattice_cmd =
      app.add_subcommand("lattice", "lattice table utilities");
  lattice_cmd->require_subcommand(1);
  auto* validate_cmd = lattice_cmd->add_subcommand(
      "validate", "run the axiom suite against a table file or a builtin");
  std::string validate_arg;
  bool validate_json = false;
  validate_cmd
      ->add_option("lattice", validate_arg,
                   "table file, or godel | lukasiewicz | product | nilmin | "
                   "boolean")
      ->required();
  validate_cmd->add_flag("--json", validate_json, "emit the report as JSON");

  // --- search ---
  auto* search_cmd = app.add_subcommand(
      "search", "enumerate small instances of a law; prints a JSON report");
  std::string search_property;
  std::string search_lattice = "godel";
  std::size_t search_grid = 3;
  std::string search_sizes = "2,2,2,2";
  std::size_t search_budget = 10'000'000;
  search_cmd
      ->add_option("property", search_property,
                   "bootstrap | assoc1 | assoc2 | assoc3 | maximality")
      ->required()
      ->check(CLI::IsMember(
          {"bootstrap", "assoc1", "assoc2", "assoc3", "maximality"}));
  search_cmd->add_option("--lattice", search_lattice, lattice_help);
  search_cmd->add_option(
      "--grid", search_grid,
      "number of evenly spaced truth values for unit-interval lattices "
      "(finite lattices always use their whole carrier)");
  search_cmd->add_option("--sizes", search_sizes,
                         "domain sizes |A|,|B|,|C|,|D| (each 1..3)");
  search_cmd->add_option("--budget", search_budget,
                         "maximum instances before sampling cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) {
      return run_eval(eval_lattice, eval_rels, eval_expr, eval_json);
    }
    if (check_cmd->parsed()) {
      return run_check(check_mode, check_lattice, check_r, check_s, check_f,
                       check_g);
    }
    if (solve_cmd->parsed()) {
      return run_solve(solve_target, solve_direction, solve_lattice, solve_r,
                       solve_s, solve_f, solve_g, solve_json);
    }
    if (lattice_cmd->parsed()) {
      return run_lattice_validate(validate_arg, validate_json);
    }
    if (search_cmd->parsed()) {
      return run_search(search_property, search_lattice, search_grid,
                        search_sizes, search_budget);
    }
  } catch (const bkrel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
