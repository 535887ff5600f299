#include "hashsim/belldiag.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hashsim {

std::string label_to_string(PauliLabel l) {
  std::string s(2, '0');
  s[0] = static_cast<char>('0' + phase_bit(l));
  s[1] = static_cast<char>('0' + amplitude_bit(l));
  return s;
}

PauliLabel label_from_string(const std::string& s) {
  if (s.size() != 2 || (s[0] != '0' && s[0] != '1') ||
      (s[1] != '0' && s[1] != '1')) {
    throw std::invalid_argument("pauli label must be two bits, got '" + s +
                                "'");
  }
  return make_label(s[0] - '0', s[1] - '0');
}

int label_weight(std::uint64_t bits) {
  // A pair is in error iff either of its two bits is set; fold amplitude
  // bits onto phase bits and count pair slots.
  constexpr std::uint64_t kPhaseMask = 0x5555555555555555ull;
  return std::popcount((bits | (bits >> 1)) & kPhaseMask);
}

std::string error_string_to_string(const ErrorString& x) {
  std::string out;
  for (int j = 0; j < x.pairs; ++j) {
    if (j) out += ' ';
    out += label_to_string(x.label(j));
  }
  return out;
}

ErrorString error_string_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  ErrorString x;
  while (in >> tok) {
    if (x.pairs >= kMaxPairs) {
      throw std::invalid_argument("error string exceeds " +
                                  std::to_string(kMaxPairs) + " pairs");
    }
    x.set_label(x.pairs, label_from_string(tok));
    ++x.pairs;
  }
  if (x.pairs == 0) {
    throw std::invalid_argument("empty error string");
  }
  return x;
}

BellDiagonalDistribution::BellDiagonalDistribution(int pairs,
                                                   std::vector<double> dense)
    : pairs_(pairs), dense_(std::move(dense)) {
  if (pairs < 1 || pairs > kDenseMaxPairs) {
    throw std::invalid_argument(
        "dense distribution requires 1 <= pairs <= " +
        std::to_string(kDenseMaxPairs) + ", got " + std::to_string(pairs));
  }
  if (dense_.size() != (std::uint64_t{1} << (2 * pairs))) {
    throw std::invalid_argument("dense weight array must have 4^pairs entries");
  }
  check_nonnegative();
}

BellDiagonalDistribution::BellDiagonalDistribution(
    int pairs, std::unordered_map<std::uint64_t, double> sparse)
    : pairs_(pairs), sparse_(std::move(sparse)) {
  if (pairs < 1 || pairs > kMaxPairs) {
    throw std::invalid_argument("pairs out of range");
  }
  check_nonnegative();
}

void BellDiagonalDistribution::check_nonnegative() const {
  for (double w : dense_) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
  for (const auto& [x, w] : sparse_) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
    if (x >> (2 * pairs_)) {
      throw std::invalid_argument("sparse index outside 4^pairs range");
    }
  }
}

const std::vector<double>& BellDiagonalDistribution::dense_weights() const {
  if (dense_.empty()) {
    throw std::logic_error(
        "operation requires the dense representation (pairs <= " +
        std::to_string(kDenseMaxPairs) + ")");
  }
  return dense_;
}

std::vector<double>& BellDiagonalDistribution::mutable_dense_weights() {
  if (dense_.empty()) {
    throw std::logic_error("operation requires the dense representation");
  }
  return dense_;
}

double BellDiagonalDistribution::weight(std::uint64_t x) const {
  if (!dense_.empty()) {
    return dense_[x];
  }
  auto it = sparse_.find(x);
  return it == sparse_.end() ? 0.0 : it->second;
}

double BellDiagonalDistribution::total_mass() const {
  // Compensated sum: sub-normalized masses feed fidelity formulas where a
  // stray 1e-13 matters once 1 - mass gets squared.
  double sum = 0.0, c = 0.0;
  auto add = [&](double w) {
    double y = w - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  };
  if (!dense_.empty()) {
    for (double w : dense_) add(w);
  } else {
    for (const auto& [x, w] : sparse_) add(w);
  }
  return sum;
}

BellDiagonalDistribution werner_distribution(const IIDWernerSpec& spec) {
  if (spec.fidelity < 0.0 || spec.fidelity > 1.0) {
    throw std::invalid_argument("werner fidelity must lie in [0, 1]");
  }
  if (spec.pairs < 1) {
    throw std::invalid_argument("werner spec needs at least one pair");
  }
  if (spec.pairs > BellDiagonalDistribution::kDenseMaxPairs) {
    throw std::invalid_argument(
        "werner_distribution is dense-only (pairs <= " +
        std::to_string(BellDiagonalDistribution::kDenseMaxPairs) +
        "); use the weight-class form for larger n");
  }
  const double f = spec.fidelity;
  const double q = (1.0 - f) / 3.0;
  const double factor[4] = {f, q, q, q};

  // Extend one pair at a time so each weight is the left-to-right product
  // of per-pair factors, pair 0 first.
  std::vector<double> w{1.0};
  w.reserve(std::size_t{1} << (2 * spec.pairs));
  for (int j = 0; j < spec.pairs; ++j) {
    std::vector<double> next(w.size() * 4);
    for (std::size_t l = 0; l < 4; ++l) {
      for (std::size_t x = 0; x < w.size(); ++x) {
        next[(l << (2 * j)) | x] = w[x] * factor[l];
      }
    }
    w = std::move(next);
  }
  return BellDiagonalDistribution(spec.pairs, std::move(w));
}

double fidelity_to_target(const BellDiagonalDistribution& dist) {
  return dist.weight(0);
}

FidelityResult classical_fidelity_and_purified_distance(
    const BellDiagonalDistribution& p, const BellDiagonalDistribution& q) {
  if (p.pairs() != q.pairs()) {
    throw std::invalid_argument("fidelity needs distributions over the same n");
  }
  const double mp = p.total_mass();
  const double mq = q.total_mass();
  if (mp > 1.0 + 1e-9 || mq > 1.0 + 1e-9) {
    throw std::invalid_argument("distributions must have mass <= 1");
  }

  double overlap = 0.0, c = 0.0;
  auto add = [&](double v) {
    double y = v - c;
    double t = overlap + y;
    c = (t - overlap) - y;
    overlap = t;
  };
  if (p.is_dense() && q.is_dense()) {
    const auto& pw = p.dense_weights();
    const auto& qw = q.dense_weights();
    for (std::size_t x = 0; x < pw.size(); ++x) {
      if (pw[x] > 0.0 && qw[x] > 0.0) add(std::sqrt(pw[x] * qw[x]));
    }
  } else {
    // Iterate whichever support is explicit; zero weights contribute nothing.
    const auto& sp = p.is_dense() ? q.sparse_weights() : p.sparse_weights();
    const auto& other = p.is_dense() ? p : q;
    for (const auto& [x, w] : sp) {
      double o = other.weight(x);
      if (w > 0.0 && o > 0.0) add(std::sqrt(w * o));
    }
  }

  const double slack = std::sqrt(std::max(0.0, 1.0 - mp) *
                                 std::max(0.0, 1.0 - mq));
  double root = overlap + slack;
  double fid = std::min(1.0, root * root);
  return {fid, std::sqrt(std::max(0.0, 1.0 - fid))};
}

}  // namespace hashsim
