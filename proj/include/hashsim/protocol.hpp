#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hashsim/belldiag.hpp"

namespace hashsim {

// The two physical realizations of a hashing round. Both reveal the parity
// S.X of the round string with the current error string; they differ in the
// entangling gate (bilateral CNOT vs bilateral CZ) and the local rotations
// around it, and therefore in how the surviving labels transform.
enum class Variant { kCnot, kCz };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Round string S: one two-bit symbol per live pair, packed exactly like an
// ErrorString (symbol j at bits (2j, 2j+1), first symbol bit in bit 2j).
// A symbol 00 leaves its pair untouched; the first pair with a nonzero
// symbol becomes the round's target and is measured out.
struct RoundString {
  int pairs = 0;
  std::uint64_t bits = 0;

  RoundString() = default;
  RoundString(int n, std::uint64_t packed) : pairs(n), bits(packed) {}

  PauliLabel symbol(int j) const {
    return static_cast<PauliLabel>((bits >> (2 * j)) & 3);
  }
  bool operator==(const RoundString& o) const {
    return pairs == o.pairs && bits == o.bits;
  }
};

std::string round_string_to_string(const RoundString& s);
RoundString round_string_from_string(const std::string& text);

// Uniform draw over the 4^n - 1 nonzero round strings; all-zero draws are
// rejected and redrawn.
RoundString sample_round_string(int pairs, std::mt19937_64& rng);

// Index of the target pair (first nonzero symbol). Requires S != 0.
int target_pair(const RoundString& s);

// Parity of the boolean inner product sum_j (s1_j a_j + s2_j b_j) mod 2.
// With the shared packing this is just popcount(S & X) mod 2.
int boolean_inner_product(const RoundString& s, const ErrorString& x);

struct RoundOutcome {
  int parity = 0;        // measured parity bit, equals S.X of the input
  ErrorString survivor;  // labels of the n-1 surviving pairs, reindexed
};

// Run one round on a definite error string: local rotations (step 2),
// entangling gates into the target (step 3), measurement of the target
// (step 4). Requires pairs >= 2 and S != 0.
RoundOutcome apply_round(const ErrorString& x, const RoundString& s,
                         Variant variant);

// GF(2)-linear form of a round. transform is the full 2n x 2n bit-linear
// map on the packed string (column i = image of basis bit i) applied by
// steps 2-4 before the measurement removes the target pair. The parity is
// the target amplitude bit of (transform . x); parity_mask is that row of
// the matrix, so parity = popcount(parity_mask & x) mod 2. The survivor
// drops the target pair's two bits and compacts higher pairs down.
struct RoundLinearMaps {
  int pairs = 0;
  int target = 0;
  std::vector<std::uint64_t> transform;  // 2n columns
  std::uint64_t parity_mask = 0;

  std::uint64_t apply_transform(std::uint64_t x) const;
  std::uint64_t project_survivor(std::uint64_t transformed) const;
};

RoundLinearMaps round_linear_maps(const RoundString& s, Variant variant);

// Step-2 label maps, exposed so the density-matrix oracle can validate them
// against the literal rotations. role_target selects the map applied to the
// target pair (the CZ variant treats target and controls differently).
PauliLabel step2_label_map(Variant variant, bool role_target, PauliLabel s,
                           PauliLabel in);

// --- Gate-schedule compilation -------------------------------------------

enum class Party { kAlice, kBob, kBoth };

// One hardware instruction of a compiled round. Rotation angles are given
// in units of pi (0.5 = quarter turn) with the convention
// R_axis(theta) = exp(-i theta sigma_axis / 2). pairs holds physical pair
// ids, [control, target] for the entangling gates.
struct GateScheduleItem {
  int round = 0;  // 1-based
  int step = 0;   // protocol step: 2 (local rotations), 3 (entangling), 4
  Party party = Party::kBoth;
  std::string gate;  // "rx" | "ry" | "rz" | "cnot" | "cz" | "measure_z"
  double angle_pi = 0.0;
  std::vector<int> pairs;
};

// Instructions for a single round acting on the given physical pairs
// (physical_ids[j] is the id of live pair j). Emits step-2 rotations in
// ascending pair order, then entangling gates in ascending control order,
// then the step-4 operations on the target.
std::vector<GateScheduleItem> compile_round(
    const RoundString& s, Variant variant, int round_number,
    const std::vector<int>& physical_ids);

// Full multi-round compilation starting from physical pairs 0..n-1; round k
// must have one symbol per pair still alive (n - k + 1). Physical ids stay
// stable as measured pairs drop out.
std::vector<GateScheduleItem> compile_schedule(
    const std::vector<RoundString>& rounds, Variant variant, int pairs);

// JSON array of {round, step, party, gate, angle, pairs} in that key order;
// the serialized angle is in radians.
std::string schedule_to_json(const std::vector<GateScheduleItem>& items);

}  // namespace hashsim
