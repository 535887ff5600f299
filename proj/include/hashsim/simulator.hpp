#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hashsim/belldiag.hpp"
#include "hashsim/protocol.hpp"

namespace hashsim {

struct TruncationPolicy {
  enum class Kind { kNone, kTopK, kMassBudget };
  Kind kind = Kind::kNone;
  std::uint64_t top_k = 0;  // kTopK: keep this many highest-weight strings
  double delta = 0.0;       // kMassBudget: keep minimal top set with
                            // mass >= 1 - delta
};

struct TruncationOutcome {
  BellDiagonalDistribution dist;  // kept strings, renormalized
  double retained_mass = 1.0;     // mass kept before renormalization
  double eps_trunc = 0.0;         // purified distance sqrt(1 - retained)
};

// Keeps the highest-weight strings per the policy (ties broken toward lower
// index) and renormalizes. The purified distance between the input and the
// renormalized truncation is exactly sqrt(1 - retained mass), which later
// certifies a fidelity floor for results computed from the truncation.
TruncationOutcome truncate(const BellDiagonalDistribution& p,
                           const TruncationPolicy& policy);

enum class SimulationMode { kExactBranch, kSampledSyndrome };

struct SimulationConfig {
  IIDWernerSpec werner;
  std::vector<int> round_counts;  // depths to report, ascending, max < n
  int trials = 1;
  Variant variant = Variant::kCnot;
  SimulationMode mode = SimulationMode::kExactBranch;
  TruncationPolicy truncation;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: HASHSIM_THREADS env var, else hardware concurrency
};

struct SimulationRow {
  int rounds = 0;
  double mean_fidelity = 0.0;
  double std_err = 0.0;     // sample standard error across trials
  double reference = 0.0;   // F_in^(n - rounds), fresh-pair baseline
  double eps_trunc = 0.0;
  double f_lb = 0.0;        // certified floor 1 - (sqrt(1-mean) + eps)^2
};

struct SimulationResult {
  std::vector<SimulationRow> rows;
  double eps_trunc = 0.0;
};

// Deterministic per-trial stream: trial t of seed s always sees the same
// draws, independent of thread count or other trials.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Fresh uniform nonzero round strings, round k drawn over n - k live pairs.
std::vector<RoundString> draw_schedule(int pairs, int rounds,
                                       std::mt19937_64& rng);

// Expected output fidelity of one schedule under exact branch tracking: the
// dense posterior is pushed through every parity branch of every round, and
// the result is the branch-probability-weighted best-label posterior, i.e.
// sum over leaves of the leaf's largest unnormalized weight. report_depths
// selects the round counts at which to record the running value (0 = before
// any round); the returned vector is aligned with it.
std::vector<double> run_trial_exact_branch(const BellDiagonalDistribution& p,
                                           const std::vector<RoundString>& schedule,
                                           Variant variant,
                                           const std::vector<int>& report_depths);
double run_trial_exact_branch(const BellDiagonalDistribution& p,
                              const std::vector<RoundString>& schedule,
                              Variant variant);

// Single-syndrome estimate: samples a definite error from p, measures its
// (deterministic) parities, and conditions the tracked posterior on them.
// Unbiased: averaged over the error draw it reproduces the exact-branch
// value for the same schedule.
std::vector<double> run_trial_sampled(const BellDiagonalDistribution& p,
                                      const std::vector<RoundString>& schedule,
                                      Variant variant, std::mt19937_64& rng,
                                      const std::vector<int>& report_depths);

// Unnormalized posterior of one prescribed syndrome branch.
struct BranchPosterior {
  int live_pairs = 0;
  std::vector<double> weights;  // dense over surviving strings
  double probability = 0.0;     // branch probability (sum of weights)
};
BranchPosterior conditioned_posterior(const BellDiagonalDistribution& p,
                                      const std::vector<RoundString>& schedule,
                                      Variant variant,
                                      const std::vector<int>& parities);

// Runs `trials` independent schedules (fresh strings each round, per-trial
// RNG streams) and aggregates one row per requested round count. Trials may
// execute on several threads; results are reduced in trial order, so the
// output is identical for any thread count.
SimulationResult run_experiment(const SimulationConfig& cfg);

}  // namespace hashsim
