#include "hashsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hashsim {

namespace {

constexpr double kGridStep = 1e-4;
// Entropies are accurate to well below this, so nudge values computed as
// "integer plus rounding noise" off the ceiling edge.
constexpr double kCeilSlack = 1e-9;

int ceil_rounds(double v) {
  const double c = std::ceil(v - kCeilSlack);
  return c <= 0.0 ? 0 : static_cast<int>(c);
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("error budget must lie in (0, 1)");
  }
}

void check_split(double eps, const EpsilonSplit& split) {
  if (!(split.eps1 > 0.0) || !(split.eps2 > 0.0) || !(split.eps2 <= 1.0)) {
    throw std::invalid_argument("split parts must be positive (eps2 <= 1)");
  }
  if (split.eps1 + split.eps2 > eps + 1e-12) {
    throw std::invalid_argument("split parts must sum to at most the budget");
  }
}

// Smooth Hartley entropy of the uniform distribution over 4^n strings: the
// smallest k with k 4^-n >= 1 - eps^2.
SmoothHartleyResult uniform_smooth_hartley(int pairs, double eps) {
  const double target = 1.0 - eps * eps;
  SmoothHartleyResult r;
  if (2 * pairs <= 50) {
    const double k = std::ceil(std::scalbn(target, 2 * pairs));
    r.k = static_cast<std::uint64_t>(k);
    r.k_is_exact = true;
    r.log2_k = std::log2(k);
    r.retained_mass = std::scalbn(k, -2 * pairs);
  } else {
    r.k_is_exact = false;
    r.log2_k = 2.0 * pairs + std::log2(target);
    r.retained_mass = target;
  }
  r.value_bits = r.log2_k;
  r.boundary_weight = -1;
  return r;
}

// Smooth Hartley evaluator reused across many eps values for one input.
// Werner inputs above fidelity 1/4 use the weight-class walk; at exactly
// 1/4 the distribution is uniform and solved in closed form; below 1/4 the
// classes are no longer probability-sorted, so fall back to the dense
// generic solver (limited to the dense pair range).
class SmoothHartleyEvaluator {
 public:
  explicit SmoothHartleyEvaluator(const IIDWernerSpec& spec) : pairs_(spec.pairs) {
    if (spec.fidelity > 0.25) {
      profile_.emplace(spec);
    } else if (spec.fidelity == 0.25) {
      uniform_ = true;
      if (spec.pairs < 1) {
        throw std::invalid_argument("pair count out of range");
      }
    } else {
      if (spec.pairs > BellDiagonalDistribution::kDenseMaxPairs) {
        throw std::invalid_argument(
            "werner fidelity below 1/4 needs a dense-sized input");
      }
      owned_.emplace(werner_distribution(spec));
      dense_ = &*owned_;
    }
  }

  explicit SmoothHartleyEvaluator(const BellDiagonalDistribution& p)
      : pairs_(p.pairs()), dense_(&p) {}

  int pairs() const { return pairs_; }

  SmoothHartleyResult operator()(double eps) const {
    if (profile_) return smooth_hartley_werner(*profile_, eps);
    if (uniform_) return uniform_smooth_hartley(pairs_, eps);
    return smooth_hartley_generic(*dense_, eps);
  }

  // log2 of the support size; zero means a single surviving string.
  double hartley_bits() const {
    if (dense_) return hartley(*dense_);
    if (uniform_) return 2.0 * pairs_;
    const double f = profile_->fidelity();
    if (f == 1.0) return 0.0;
    if (f == 0.0) return pairs_ * std::log2(3.0);
    return 2.0 * pairs_;
  }

 private:
  int pairs_ = 0;
  std::optional<WeightClassProfile> profile_;
  std::optional<BellDiagonalDistribution> owned_;
  const BellDiagonalDistribution* dense_ = nullptr;
  bool uniform_ = false;
};

int rounds_for(const SmoothHartleyResult& entropy, double eps2) {
  // A single surviving candidate needs no parity bits at all: with k
  // candidates the union bound gives failure <= (k - 1) 2^-r, which is
  // already zero at r = 0 when k = 1.
  if (entropy.k_is_exact && entropy.k == 1) return 0;
  return ceil_rounds(entropy.log2_k - 2.0 * std::log2(eps2));
}

BoundReport assemble(const SmoothHartleyEvaluator& entropy_of, double eps,
                     const EpsilonSplit& split) {
  BoundReport report;
  report.pairs = entropy_of.pairs();
  report.eps = eps;
  report.split = split;
  report.entropy = entropy_of(split.eps1);
  report.hash_rounds = rounds_for(report.entropy, split.eps2);
  report.surviving_pairs = report.pairs - report.hash_rounds;
  report.rate = static_cast<double>(report.surviving_pairs) / report.pairs;
  report.guarantee = report.surviving_pairs >= 1;

  const double h0 = entropy_of.hartley_bits();
  report.non_tight_rounds =
      h0 == 0.0 ? 0 : ceil_rounds(h0 - 2.0 * std::log2(eps));
  report.non_tight_surviving = report.pairs - report.non_tight_rounds;
  return report;
}

EpsilonSplit optimize_split(const SmoothHartleyEvaluator& entropy_of,
                            double eps) {
  auto rounds_at = [&](double eps1) {
    return rounds_for(entropy_of(eps1), eps - eps1);
  };

  std::vector<double> candidates;
  for (double e1 = kGridStep; e1 < eps - kGridStep / 2; e1 += kGridStep) {
    candidates.push_back(e1);
  }
  candidates.push_back(eps / 2);
  std::sort(candidates.begin(), candidates.end());

  double best_eps1 = candidates.front();
  int best_r = rounds_at(best_eps1);
  for (double e1 : candidates) {
    const int r = rounds_at(e1);
    if (r < best_r) {
      best_r = r;
      best_eps1 = e1;
    }
  }

  // Local golden-section pass on the pre-ceiling objective around the grid
  // winner; the objective is a step function, so this only sharpens the
  // position within one grid cell.
  const double span = std::min(kGridStep, eps / 4);
  double lo = std::max(best_eps1 - span, eps * 1e-9);
  double hi = std::min(best_eps1 + span, eps * (1.0 - 1e-9));
  auto smooth_objective = [&](double eps1) {
    const SmoothHartleyResult h = entropy_of(eps1);
    if (h.k_is_exact && h.k == 1) return -2.0 * std::log2(eps - eps1);
    return h.log2_k - 2.0 * std::log2(eps - eps1);
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = smooth_objective(x1), f2 = smooth_objective(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = smooth_objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = smooth_objective(x2);
    }
  }
  const double refined = f1 <= f2 ? x1 : x2;
  const int refined_r = rounds_at(refined);
  if (refined_r < best_r ||
      (refined_r == best_r && refined < best_eps1)) {
    best_eps1 = refined;
  }
  return {best_eps1, eps - best_eps1};
}

}  // namespace

double epsilon_for_output_fidelity(double f_out) {
  if (!(f_out > 0.0) || !(f_out < 1.0)) {
    throw std::invalid_argument("output fidelity must lie in (0, 1)");
  }
  return std::sqrt(1.0 - f_out);
}

BoundReport yield_lower_bound(const IIDWernerSpec& spec, double eps,
                              const EpsilonSplit& split) {
  check_eps(eps);
  check_split(eps, split);
  return assemble(SmoothHartleyEvaluator(spec), eps, split);
}

BoundReport yield_lower_bound(const IIDWernerSpec& spec, double eps) {
  check_eps(eps);
  SmoothHartleyEvaluator entropy_of(spec);
  return assemble(entropy_of, eps, optimize_split(entropy_of, eps));
}

BoundReport yield_lower_bound(const BellDiagonalDistribution& p, double eps,
                              const EpsilonSplit& split) {
  check_eps(eps);
  check_split(eps, split);
  return assemble(SmoothHartleyEvaluator(p), eps, split);
}

BoundReport yield_lower_bound(const BellDiagonalDistribution& p, double eps) {
  check_eps(eps);
  SmoothHartleyEvaluator entropy_of(p);
  return assemble(entropy_of, eps, optimize_split(entropy_of, eps));
}

BoundReport rate_lower_bound(const IIDWernerSpec& spec, double eps,
                             const EpsilonSplit& split) {
  return yield_lower_bound(spec, eps, split);
}

BoundReport rate_lower_bound(const IIDWernerSpec& spec, double eps) {
  return yield_lower_bound(spec, eps);
}

std::optional<int> single_pair_threshold(double f_in, double f_out,
                                         int n_max) {
  if (n_max < 1 || n_max > 100000) {
    throw std::invalid_argument("n_max must lie in [1, 100000]");
  }
  const double eps = epsilon_for_output_fidelity(f_out);
  for (int n = 1; n <= n_max; ++n) {
    const IIDWernerSpec spec{f_in, n};
    SmoothHartleyEvaluator entropy_of(spec);
    // Cheap necessary condition: every valid split has at least as much
    // entropy as smoothing with the whole budget and at least as many
    // penalty bits as eps2 = eps, so this r underestimates all of them.
    const int r_floor = rounds_for(entropy_of(eps), eps);
    if (n - r_floor < 1) continue;
    const BoundReport report =
        assemble(entropy_of, eps, optimize_split(entropy_of, eps));
    if (report.surviving_pairs >= 1) {
      if (n > 1) {
        const BoundReport below = yield_lower_bound(IIDWernerSpec{f_in, n - 1}, eps);
        if (below.surviving_pairs >= 1) {
          throw std::logic_error("threshold scan skipped a qualifying n");
        }
      }
      return n;
    }
  }
  return std::nullopt;
}

std::vector<RateCurvePoint> rate_curve(const std::vector<double>& f_in,
                                       double f_out,
                                       const std::vector<int>& n_values) {
  const double eps = epsilon_for_output_fidelity(f_out);
  std::vector<RateCurvePoint> rows;
  rows.reserve(f_in.size() * n_values.size());
  for (double f : f_in) {
    for (int n : n_values) {
      const BoundReport report = yield_lower_bound(IIDWernerSpec{f, n}, eps);
      RateCurvePoint row;
      row.f_in = f;
      row.pairs = n;
      row.split = report.split;
      row.entropy_bits = report.entropy.value_bits;
      row.surviving_pairs = report.surviving_pairs;
      row.rate = report.rate;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace hashsim
