#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hashsim/belldiag.hpp"
#include "hashsim/protocol.hpp"

namespace hashsim {

// A fixed multi-round schedule used as an error-correcting or -detecting
// code: round k consumes one pair, so its string has one fewer symbol than
// the previous round's.
struct FixedSchedule {
  enum class Mode { kCorrect, kDetect };

  std::string name;
  int pairs = 0;
  Mode mode = Mode::kCorrect;
  std::vector<RoundString> rounds;
};

// Built-in schedules: "n5-correct" (5 pairs, 4 rounds, corrects every
// weight-1 error) and "n4-detect" (4 pairs, 2 rounds, detects every
// weight-1 error). Throws for unknown names.
FixedSchedule builtin_schedule(const std::string& name);
std::vector<std::string> builtin_schedule_names();

// The identity string followed by all 3n weight-1 errors, pair-major with
// label codes ascending within a pair.
std::vector<ErrorString> first_order_errors(int pairs);

struct SyndromeEntry {
  ErrorString error;           // input-frame error
  std::uint32_t syndrome = 0;  // parity of round k in bit k-1
  ErrorString residual;        // error left on the surviving pairs
};

// Pushes each error through the schedule's rounds and records the parity
// bits plus the surviving-frame residual. Deterministic and exact.
std::vector<SyndromeEntry> effective_syndrome_table(
    const FixedSchedule& schedule, Variant variant,
    const std::vector<ErrorString>& errors);

// Same, over the default error set {identity} u weight-1 errors.
std::vector<SyndromeEntry> effective_syndrome_table(
    const FixedSchedule& schedule, Variant variant);

struct CodeReport {
  std::string code;
  int error_classes = 0;
  int syndrome_bits = 0;
  int distinct_syndromes = 0;
  int detected = 0;   // non-identity errors with a nonzero syndrome
  int corrected = 0;  // errors whose decoded residual matches exactly
  std::vector<std::pair<ErrorString, ErrorString>> collisions;
};

// Exhaustive verification over {identity} u weight-1 errors. Decoding picks
// the best-prior class per syndrome (identity first, then enumeration
// order) and counts an error as corrected when the decoded residual equals
// its true residual, so undoing it leaves the survivors error-free.
CodeReport verify_code(const FixedSchedule& schedule, Variant variant);

struct PostselectionResult {
  double conditional_fidelity = 0.0;    // survivors all phi+ given accept
  double acceptance_probability = 0.0;  // all-zero syndrome branch mass
};

// Runs the schedule on an i.i.d. Werner input and keeps only the all-zero
// syndrome branch. Requires fidelity in (0.25, 1].
PostselectionResult postselected_fidelity(const FixedSchedule& schedule,
                                          double fidelity, Variant variant);

}  // namespace hashsim
