#pragma once

#include <cstdint>
#include <vector>

#include "hashsim/belldiag.hpp"

namespace hashsim {

// Result of a smooth Hartley entropy computation.
//
// H0^eps(P) = log2 k, where k is the smallest number of highest-weight
// strings whose combined mass reaches 1 - eps^2. The optimizer may always be
// taken normalized (truncate to the top-k set and renormalize), and the
// purified distance to P of that optimizer is sqrt(1 - retained mass).
struct SmoothHartleyResult {
  double value_bits = 0.0;    // log2 k
  bool k_is_exact = false;    // k fits an exact 64-bit count
  std::uint64_t k = 0;        // valid when k_is_exact
  double log2_k = 0.0;        // always valid (equals value_bits)
  int boundary_weight = -1;   // label-weight class the cut lands in, -1 if n/a
  double boundary_fraction = 0.0;  // fraction of the boundary class included
  double retained_mass = 0.0;      // mass of the kept top-k set
};

// Hartley entropy: log2 of the support size. Weights below 1e-300 count as
// zero support.
double hartley(const BellDiagonalDistribution& dist);

// Smooth Hartley entropy of an arbitrary dense distribution: sorts weights
// descending (ties by lower index) and accumulates until 1 - eps^2.
// Requires 0 < eps < 1 and a dense distribution.
SmoothHartleyResult smooth_hartley_generic(const BellDiagonalDistribution& dist,
                                           double eps);

// Per-weight-class view of an IID Werner ensemble, usable far beyond dense
// capacity (n up to ~1e5). Class w holds the C(n,w) 3^w strings with exactly
// w pairs in error, each of probability F^(n-w) ((1-F)/3)^w; the class masses
// are the Binomial(n, 1-F) probabilities.
class WeightClassProfile {
 public:
  explicit WeightClassProfile(const IIDWernerSpec& spec);

  int pairs() const { return pairs_; }
  double fidelity() const { return fidelity_; }

  double ln_string_prob(int w) const { return ln_prob_[w]; }
  double ln_class_count(int w) const { return ln_count_[w]; }
  double class_mass(int w) const { return mass_[w]; }

  // Exact string count of class w; valid only while counts fit (flagged).
  bool counts_exact() const { return counts_exact_; }
  std::uint64_t class_count(int w) const { return count_[w]; }

  // Sum of class masses (should be 1 up to accumulation error).
  double total_mass() const;

 private:
  int pairs_;
  double fidelity_;
  bool counts_exact_;
  std::vector<double> ln_prob_;
  std::vector<double> ln_count_;
  std::vector<double> mass_;
  std::vector<std::uint64_t> count_;
};

// Smooth Hartley entropy of an IID Werner ensemble via its weight-class
// structure. Requires fidelity > 1/4 so string probability is strictly
// decreasing in the class weight (otherwise use the generic solver).
SmoothHartleyResult smooth_hartley_werner(const WeightClassProfile& profile,
                                          double eps);
SmoothHartleyResult smooth_hartley_werner(const IIDWernerSpec& spec,
                                          double eps);

struct ShannonRate {
  double shannon_bits = 0.0;     // per-pair Shannon entropy of the label
  double asymptotic_rate = 0.0;  // 1 - shannon_bits
};

// Per-pair Shannon entropy H = -F log2 F - (1-F) log2((1-F)/3) of a Werner
// label, and the asymptotic hashing yield 1 - H.
ShannonRate shannon_and_asymptotic_rate(double fidelity);

}  // namespace hashsim
