#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkrel/relation.hpp"

namespace bkrel {

enum class SearchVerdict { VerifiedExhaustive, VerifiedSampled, Counterexample };

std::string to_string(SearchVerdict v);

/// Everything a check enumerates over: the lattice, the candidate cell
/// values, the four domain cardinalities (A, B, C, D; each 1..3), and the
/// instance budget.  The value set need not be closed under the lattice
/// operations; products may leave the grid and comparisons stay well-defined.
struct SearchSpace {
  std::shared_ptr<const Lattice> lattice;
  std::vector<TruthValue> values;
  std::array<std::size_t, 4> sizes{2, 2, 2, 2};
  std::size_t budget = 10'000'000;

  /// Full carrier for finite lattices; a uniform grid of `grid_points`
  /// values (default {0, 1/2, 1}) for unit-interval ones.
  static SearchSpace over(std::shared_ptr<const Lattice> lattice,
                          std::size_t grid_points = 3,
                          std::array<std::size_t, 4> sizes = {2, 2, 2, 2},
                          std::size_t budget = 10'000'000);
};

struct SearchWitness {
  std::vector<std::pair<std::string, Relation>> relations;  // role name -> relation
  std::size_t row = 0;
  std::size_t col = 0;
  std::string detail;
};

struct SearchOutcome {
  std::string property;
  std::string lattice;
  std::array<std::size_t, 4> sizes{};
  std::vector<std::string> values;
  std::size_t budget = 0;
  std::size_t instances = 0;
  SearchVerdict verdict = SearchVerdict::VerifiedExhaustive;
  std::optional<SearchWitness> witness;  // present iff verdict == Counterexample
};

/// Enumerates every (T: A->B, U: B->C, V: A->C) over the space and checks the
/// three-way residuation equivalence
///   T o U [= V  <=>  T [= V |> U'  <=>  U [= T' <| V.
/// A counterexample would expose an implementation bug, since the equivalence
/// is provable in every residuated lattice.
SearchOutcome check_bootstrap(const SearchSpace& space);

/// Probes one of the three mixed associativity laws over every
/// (Q: A->B, R: B->C, S: C->D):
///   1:  Q <| (R |> S) == (Q <| R) |> S
///   2:  Q <| (R <| S) == (Q o R) <| S     (provable; must verify)
///   3:  Q |> (R |> S) == Q |> (R o S)
/// Laws 1 and 3 are empirical: the outcome records whatever the enumeration
/// finds, witness included.
SearchOutcome check_pseudo_assoc(const SearchSpace& space, int law);

enum class SolveTarget { R, S, F, G };
enum class Direction { Forward, Backward };

/// For every fixed triple, compares the solver bound for the remaining
/// relation X against enumeration: compatibility of X must hold exactly when
/// X lies under the bound, the bound itself must be compatible, and where the
/// grid can express the bound, the join of all compatible X must equal it.
/// Valid combinations: R+forward, S+backward, F and G in both directions.
SearchOutcome check_solver_maximality(const SearchSpace& space, SolveTarget which,
                                      Direction direction);

}  // namespace bkrel
