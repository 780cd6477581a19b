#pragma once

#include <optional>

#include "bkrel/relation.hpp"

namespace bkrel {

/// The commuting-square data for generalized morphisms:
///
///        R : A -> B
///        F : A -> C      G : B -> D
///        S : C -> D
///
/// Construction checks exactly this wiring and that all four relations share
/// one lattice.
struct MorphismSquare {
  MorphismSquare(Relation r, Relation s, Relation f, Relation g);

  Relation r, s, f, g;
};

/// F'oRoG included in S: S simulates R across the maps.
bool forward_compatible(const MorphismSquare& m);

/// FoSoG' included in R: R absorbs S pulled back across the maps.  Also known
/// as proteromorphism; the two notions coincide, so there is one code path.
bool backward_compatible(const MorphismSquare& m);

struct CompatReport {
  bool forward = false;
  bool backward = false;
  bool bothways = false;
  std::optional<InclusionViolation> forward_violation;
  std::optional<InclusionViolation> backward_violation;
};

/// Both directions plus the worst violating cell per failing direction.
CompatReport amphimorphism(const MorphismSquare& m);

// ---------------------------------------------------------------------------
// Greatest / least solutions.  Each function takes the three fixed relations
// of the square and returns the extreme fourth one:
//
//   solve_r_upper  — greatest R with forward compatibility:   F <| (S |> G')
//   solve_r_lower  — least R with backward compatibility:     F o S o G'
//   solve_s_upper  — greatest S with backward compatibility:  F' <| (R |> G)
//   solve_s_lower  — least S with forward compatibility:      F' o R o G
//   solve_f_forward  — greatest F, forward:                   R <| (G <| S')
//   solve_f_backward — greatest F, backward:                  (R |> G) |> S'
//   solve_g_forward  — greatest G, forward:                   R' <| (F <| S)
//   solve_g_backward — greatest G, backward:                  (R' |> F) |> S
//
// A direction holds for a candidate X exactly when X lies under the matching
// upper bound (respectively over the lower bound); the pair of bounds for one
// relation brackets the both-ways-compatible candidates.

Relation solve_r_upper(const Relation& s, const Relation& f, const Relation& g);
Relation solve_r_lower(const Relation& s, const Relation& f, const Relation& g);
Relation solve_s_upper(const Relation& r, const Relation& f, const Relation& g);
Relation solve_s_lower(const Relation& r, const Relation& f, const Relation& g);
Relation solve_f_forward(const Relation& r, const Relation& s, const Relation& g);
Relation solve_f_backward(const Relation& r, const Relation& s, const Relation& g);
Relation solve_g_forward(const Relation& r, const Relation& s, const Relation& f);
Relation solve_g_backward(const Relation& r, const Relation& s, const Relation& f);

/// Classical homomorphism test: F'oRoG == S, FoSoG' == R, and F, G are total
/// functions.  All four relations must be crisp; throws NotCrispError
/// otherwise.
bool is_homomorphism(const MorphismSquare& m);

/// Partial homomorphism: RoG == FoS with F, G univalent.  Same crispness
/// requirement.
bool is_partial_homomorphism(const MorphismSquare& m);

}  // namespace bkrel
