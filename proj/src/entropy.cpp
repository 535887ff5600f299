#include "hashsim/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hashsim {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Some (fidelity, eps) combinations put the target mass exactly on a string
// boundary; the class walk and the dense cumulative sum must resolve such
// ties the same way, so both aim a hair below the ideal target.
constexpr double kBoundarySlack = 1e-12;

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// log2(sum_i 2^(a_i)) without overflow; -inf entries are ignored.
double log2_sum_exp2(const std::vector<double>& a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : a) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : a) s += std::exp2(v - m);
  return m + std::log2(s);
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("smoothing parameter must lie in (0, 1)");
  }
}

}  // namespace

double hartley(const BellDiagonalDistribution& dist) {
  std::uint64_t support = 0;
  if (dist.is_dense()) {
    for (double w : dist.dense_weights()) {
      if (w > 1e-300) ++support;
    }
  } else {
    for (const auto& [x, w] : dist.sparse_weights()) {
      if (w > 1e-300) ++support;
    }
  }
  if (support == 0) {
    throw std::invalid_argument("distribution has empty support");
  }
  return std::log2(static_cast<double>(support));
}

SmoothHartleyResult smooth_hartley_generic(const BellDiagonalDistribution& dist,
                                           double eps) {
  check_eps(eps);
  const auto& w = dist.dense_weights();
  const double mass = dist.total_mass();
  if (std::abs(mass - 1.0) > 1e-9) {
    throw std::invalid_argument("smooth Hartley expects a normalized input");
  }

  std::vector<std::uint32_t> order(w.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    if (w[i] != w[j]) return w[i] > w[j];
    return i < j;
  });

  const double threshold = 1.0 - eps * eps - kBoundarySlack;
  KahanSum cum;
  std::uint64_t k = 0;
  for (std::uint32_t idx : order) {
    cum.add(w[idx]);
    ++k;
    if (cum.sum >= threshold) break;
  }

  SmoothHartleyResult res;
  res.k_is_exact = true;
  res.k = k;
  res.log2_k = std::log2(static_cast<double>(k));
  res.value_bits = res.log2_k;
  res.retained_mass = cum.sum;

  const int wb = label_weight(order[k - 1]);
  res.boundary_weight = wb;
  std::uint64_t in_class = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (label_weight(order[i]) == wb) ++in_class;
  }
  // Class size C(n,wb) 3^wb; n <= 13 so this fits comfortably. The running
  // product keeps C(n,i) integral at every step.
  std::uint64_t size = 1;
  for (int i = 1; i <= wb; ++i) {
    size = size * (dist.pairs() - i + 1) / i;
  }
  for (int i = 0; i < wb; ++i) size *= 3;
  res.boundary_fraction =
      static_cast<double>(in_class) / static_cast<double>(size);
  return res;
}

WeightClassProfile::WeightClassProfile(const IIDWernerSpec& spec)
    : pairs_(spec.pairs), fidelity_(spec.fidelity) {
  if (spec.pairs < 1) {
    throw std::invalid_argument("profile needs at least one pair");
  }
  if (spec.fidelity < 0.0 || spec.fidelity > 1.0) {
    throw std::invalid_argument("werner fidelity must lie in [0, 1]");
  }
  const int n = pairs_;
  const double f = fidelity_;
  const double q = (1.0 - f) / 3.0;
  const double ln_f = std::log(f);   // -inf at f = 0 is fine
  const double ln_q = std::log(q);
  const double ln3 = std::log(3.0);

  ln_prob_.resize(n + 1);
  ln_count_.resize(n + 1);
  mass_.resize(n + 1);
  count_.assign(n + 1, 0);
  counts_exact_ = true;

  // 0 * log(0) must contribute nothing, not NaN, so skip zero multipliers.
  const auto scaled_log = [](int count, double ln_term) {
    return count == 0 ? 0.0 : count * ln_term;
  };

  unsigned __int128 c = 1;  // C(n,w) 3^w, tracked exactly while it fits
  for (int w = 0; w <= n; ++w) {
    ln_prob_[w] = scaled_log(n - w, ln_f) + scaled_log(w, ln_q);
    ln_count_[w] = std::lgamma(n + 1.0) - std::lgamma(w + 1.0) -
                   std::lgamma(n - w + 1.0) + w * ln3;
    if (counts_exact_) {
      count_[w] = static_cast<std::uint64_t>(c);
      if (c > static_cast<unsigned __int128>(
                  std::numeric_limits<std::uint64_t>::max())) {
        counts_exact_ = false;
        std::fill(count_.begin(), count_.end(), 0);
      }
    }
    if (w < n) {
      c = c * static_cast<unsigned>(n - w) / static_cast<unsigned>(w + 1) * 3;
      if (c > (static_cast<unsigned __int128>(1) << 100)) counts_exact_ = false;
    }

    // Class mass = count * string probability. Use the exact count and a
    // plain product while everything is representable; otherwise fall back
    // to the log form (which may underflow to zero for negligible classes).
    if (counts_exact_ && n <= 60) {
      double p = 1.0;
      for (int i = 0; i < n - w; ++i) p *= f;
      for (int i = 0; i < w; ++i) p *= q;
      mass_[w] = static_cast<double>(count_[w]) * p;
    } else {
      mass_[w] = std::exp(ln_count_[w] + ln_prob_[w]);
    }
  }
}

double WeightClassProfile::total_mass() const {
  KahanSum s;
  for (double m : mass_) s.add(m);
  return s.sum;
}

SmoothHartleyResult smooth_hartley_werner(const WeightClassProfile& profile,
                                          double eps) {
  check_eps(eps);
  if (!(profile.fidelity() > 0.25)) {
    throw std::invalid_argument(
        "weight-class solver needs fidelity > 1/4 (per-string probability "
        "must decrease with class weight); use the generic solver");
  }
  const int n = profile.pairs();
  const double threshold = 1.0 - eps * eps - kBoundarySlack;

  KahanSum cum;
  std::vector<double> log2_counts;  // fully included classes
  unsigned __int128 k_full = 0;
  // Exactness only needs the counts of the classes actually walked, so a
  // count overflow in classes beyond the boundary cannot spoil it.
  bool k_exact = true;

  int wb = n;
  for (int w = 0; w <= n; ++w) {
    const double class_mass = profile.class_mass(w);
    if (cum.sum + class_mass >= threshold || w == n) {
      wb = w;
      break;
    }
    cum.add(class_mass);
    log2_counts.push_back(profile.ln_class_count(w) / kLn2);
    if (k_exact && profile.counts_exact()) {
      k_full += profile.class_count(w);
    } else {
      k_exact = false;
    }
  }

  // Partial inclusion of the boundary class: smallest j with
  // cum + j * p_wb >= threshold. p_wb can underflow a double for large n,
  // so the division happens in log space.
  const double missing = std::max(0.0, threshold - cum.sum);
  const double ln_p = profile.ln_string_prob(wb);
  const double ln_count = profile.ln_class_count(wb);
  double ln_j;
  std::uint64_t j = 0;
  bool j_exact = false;
  if (missing <= 0.0) {
    ln_j = -std::numeric_limits<double>::infinity();
    j = 1;
    j_exact = true;  // at least one string is always kept
  } else {
    ln_j = std::log(missing) - ln_p;
    ln_j = std::min(ln_j, ln_count);  // never more than the class holds
    if (ln_j < 62 * kLn2) {
      const double jd = std::exp(ln_j);
      j = static_cast<std::uint64_t>(std::ceil(jd));
      if (j == 0) j = 1;
      if (profile.counts_exact() && j > profile.class_count(wb)) {
        j = profile.class_count(wb);
      }
      j_exact = true;
      ln_j = std::log(static_cast<double>(j));
    }
  }
  if (j_exact && j == 0) j = 1;

  SmoothHartleyResult res;
  res.boundary_weight = wb;
  res.boundary_fraction = std::exp(ln_j - ln_count);
  log2_counts.push_back(ln_j / kLn2);
  res.log2_k = log2_sum_exp2(log2_counts);
  res.value_bits = res.log2_k;
  if (k_exact && j_exact) {
    unsigned __int128 k_total = k_full + j;
    if (k_total <= static_cast<unsigned __int128>(
                       std::numeric_limits<std::uint64_t>::max())) {
      res.k_is_exact = true;
      res.k = static_cast<std::uint64_t>(k_total);
      res.log2_k = std::log2(static_cast<double>(res.k));
      res.value_bits = res.log2_k;
    }
  }
  if (j_exact) {
    res.retained_mass =
        cum.sum + static_cast<double>(j) * std::exp(ln_p);
  } else {
    res.retained_mass = cum.sum + std::exp(ln_j + ln_p);
  }
  res.retained_mass = std::min(res.retained_mass, 1.0);
  return res;
}

SmoothHartleyResult smooth_hartley_werner(const IIDWernerSpec& spec,
                                          double eps) {
  return smooth_hartley_werner(WeightClassProfile(spec), eps);
}

ShannonRate shannon_and_asymptotic_rate(double fidelity) {
  if (fidelity < 0.0 || fidelity > 1.0) {
    throw std::invalid_argument("fidelity must lie in [0, 1]");
  }
  double h = 0.0;
  if (fidelity > 0.0) h -= fidelity * std::log2(fidelity);
  if (fidelity < 1.0) {
    const double q = (1.0 - fidelity) / 3.0;
    h -= (1.0 - fidelity) * std::log2(q);
  }
  return {h, 1.0 - h};
}

}  // namespace hashsim
