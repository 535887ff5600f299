#pragma once

#include <optional>
#include <vector>

#include "hashsim/belldiag.hpp"
#include "hashsim/entropy.hpp"

namespace hashsim {

// Split of the total error budget eps: eps1 buys entropy smoothing, eps2
// bounds the chance that the revealed parities fail to single out the right
// error candidate. Valid when eps1 > 0, eps2 in (0, 1], eps1 + eps2 <= eps.
struct EpsilonSplit {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

// One evaluation of the finite-size guarantee: hashing r rounds out of n
// pairs leaves m = n - r pairs within purified distance eps of the target,
// where r = ceil(H0^{eps1} - 2 log2 eps2), floored at zero. When the
// smoothed distribution keeps a single error string the parities have
// nothing left to disambiguate, so r = 0 outright. m (and the rate m/n) may
// be negative; guarantee marks m >= 1.
struct BoundReport {
  int pairs = 0;
  double eps = 0.0;
  EpsilonSplit split;
  SmoothHartleyResult entropy;  // smooth Hartley at split.eps1
  int hash_rounds = 0;          // r
  int surviving_pairs = 0;      // m = pairs - r
  double rate = 0.0;            // m / n
  bool guarantee = false;       // m >= 1

  // Single-budget comparison variant r' = ceil(H0 - 2 log2 eps) using the
  // unsmoothed Hartley entropy of the same input.
  int non_tight_rounds = 0;
  int non_tight_surviving = 0;
};

// Purified-distance budget that guarantees output fidelity at least f_out:
// eps = sqrt(1 - f_out). Requires f_out in (0, 1).
double epsilon_for_output_fidelity(double f_out);

// Yield bound for an i.i.d. Werner input, with an explicit split or an
// optimized one (grid search over eps1 at 1e-4 resolution plus a local
// golden-section refinement, eps2 = eps - eps1). Requires eps in (0, 1).
// Werner inputs with fidelity below 1/4 are only supported up to the dense
// pair limit (the weight classes are no longer probability-sorted).
BoundReport yield_lower_bound(const IIDWernerSpec& spec, double eps,
                              const EpsilonSplit& split);
BoundReport yield_lower_bound(const IIDWernerSpec& spec, double eps);

// Same bound for an explicit dense distribution (normalized).
BoundReport yield_lower_bound(const BellDiagonalDistribution& p, double eps,
                              const EpsilonSplit& split);
BoundReport yield_lower_bound(const BellDiagonalDistribution& p, double eps);

// Identical computation; the rate field m/n is the headline value.
BoundReport rate_lower_bound(const IIDWernerSpec& spec, double eps,
                             const EpsilonSplit& split);
BoundReport rate_lower_bound(const IIDWernerSpec& spec, double eps);

// Smallest n for which the optimized-split bound guarantees at least one
// output pair (m >= 1) at the eps implied by f_out, scanning n = 1..n_max;
// nullopt when no n qualifies. Requires n_max in [1, 100000]. The scan cost
// grows quadratically with the first qualifying n (or n_max when none).
std::optional<int> single_pair_threshold(double f_in, double f_out, int n_max);

struct RateCurvePoint {
  double f_in = 0.0;
  int pairs = 0;
  EpsilonSplit split;
  double entropy_bits = 0.0;
  int surviving_pairs = 0;
  double rate = 0.0;
};

// Optimized-split rate bound over a grid of Werner fidelities and pair
// counts; rows ordered fidelity-major, n-minor.
std::vector<RateCurvePoint> rate_curve(const std::vector<double>& f_in,
                                       double f_out,
                                       const std::vector<int>& n_values);

}  // namespace hashsim
