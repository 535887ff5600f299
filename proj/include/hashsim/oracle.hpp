#pragma once

#include <string>
#include <vector>

#include "hashsim/belldiag.hpp"
#include "hashsim/protocol.hpp"

namespace hashsim {

struct OracleBranch {
  std::vector<int> parities;   // measured parity per round
  double probability = 0.0;    // branch probability
  double map_fidelity = 0.0;   // largest Bell-diagonal entry, normalized
};

struct OracleResult {
  double expected_fidelity = 0.0;  // sum over branches of prob * fidelity
  double max_off_diagonal = 0.0;   // worst Bell-basis off-diagonal seen
  std::vector<OracleBranch> branches;  // lexicographic by parity sequence
};

// Literal density-matrix simulation of the physical protocol, for n <= 3
// pairs. Builds the Bell-diagonal input state, executes the exact gate list
// emitted by compile_round (rotations with R(theta) = exp(-i theta sigma/2),
// bilateral CNOT/CZ, computational-basis measurement of the target pair) and
// follows both parity branches of every round. A branch's fidelity is its
// largest Bell-basis diagonal entry, i.e. the best local-Pauli alignment.
OracleResult dm_simulate(const BellDiagonalDistribution& input,
                         const std::vector<RoundString>& schedule,
                         Variant variant);

// Validates the classical label maps against first principles: applies the
// protocol's literal rotations and entangling gates to Bell states and
// checks the induced label permutations against step2_label_map and the
// step-3/step-4 maps inside apply_round, plus the measurement-parity rule
// (computational outcomes agree iff the amplitude bit is 0). Mismatches are
// described in *diagnostics when provided.
bool validate_label_maps(Variant variant, std::string* diagnostics = nullptr);

}  // namespace hashsim
