#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace hashsim {

// A shared pair in a Bell-diagonal state carries a two-bit Pauli error label:
//
//   00 -> phi+    10 -> phi-    01 -> psi+    11 -> psi-
//
// The first bit is the phase bit (a), the second the amplitude bit (b).
// Label codes pack the phase bit into bit 0 and the amplitude bit into bit 1,
// so code = a | (b << 1) and the textual form "ab" reads phase-then-amplitude.
using PauliLabel = std::uint8_t;

inline constexpr PauliLabel kPhiPlus = 0;   // "00"
inline constexpr PauliLabel kPhiMinus = 1;  // "10"
inline constexpr PauliLabel kPsiPlus = 2;   // "01"
inline constexpr PauliLabel kPsiMinus = 3;  // "11"

inline constexpr int phase_bit(PauliLabel l) { return l & 1; }
inline constexpr int amplitude_bit(PauliLabel l) { return (l >> 1) & 1; }
inline constexpr PauliLabel make_label(int phase, int amplitude) {
  return static_cast<PauliLabel>((phase & 1) | ((amplitude & 1) << 1));
}

std::string label_to_string(PauliLabel l);
PauliLabel label_from_string(const std::string& s);

// An n-pair error string, two bits per pair. Pair j occupies bits (2j, 2j+1)
// of the packed word: bit 2j is the phase bit, bit 2j+1 the amplitude bit.
// Pair 0 sits in the least significant bits, so the packed word doubles as
// the integer encoding of the string (a bijection with {0, ..., 4^n - 1}).
struct ErrorString {
  int pairs = 0;
  std::uint64_t bits = 0;

  ErrorString() = default;
  ErrorString(int n, std::uint64_t packed) : pairs(n), bits(packed) {}

  PauliLabel label(int j) const {
    return static_cast<PauliLabel>((bits >> (2 * j)) & 3);
  }
  void set_label(int j, PauliLabel l) {
    bits = (bits & ~(std::uint64_t{3} << (2 * j))) |
           (std::uint64_t{l} << (2 * j));
  }
  bool operator==(const ErrorString& o) const {
    return pairs == o.pairs && bits == o.bits;
  }
};

// Largest n for which a packed word fits in 64 bits.
inline constexpr int kMaxPairs = 31;

// Number of pairs carrying a non-identity label.
int label_weight(std::uint64_t bits);
inline int label_weight(const ErrorString& x) { return label_weight(x.bits); }

std::string error_string_to_string(const ErrorString& x);
ErrorString error_string_from_string(const std::string& text);

// Distribution over error strings of n pairs. Stored dense (one weight per
// string, indexed by the packed word) for n <= kDenseMaxPairs; a sparse map
// is accepted for larger n but the dense-only operations reject it.
class BellDiagonalDistribution {
 public:
  static constexpr int kDenseMaxPairs = 13;

  BellDiagonalDistribution(int pairs, std::vector<double> dense_weights);
  BellDiagonalDistribution(int pairs,
                           std::unordered_map<std::uint64_t, double> sparse);

  int pairs() const { return pairs_; }
  bool is_dense() const { return !dense_.empty() || pairs_ <= kDenseMaxPairs; }

  // Dense weight array, indexed by packed error string. Throws for sparse
  // storage; callers that can handle both should use weight().
  const std::vector<double>& dense_weights() const;
  std::vector<double>& mutable_dense_weights();

  double weight(std::uint64_t x) const;
  double total_mass() const;

  const std::unordered_map<std::uint64_t, double>& sparse_weights() const {
    return sparse_;
  }

 private:
  void check_nonnegative() const;

  int pairs_;
  std::vector<double> dense_;
  std::unordered_map<std::uint64_t, double> sparse_;
};

// Werner-state ensemble of n independent identical pairs. A Werner pair with
// parameter W has fidelity F = (1 + 3W) / 4 to phi+; its error label is
// phi+ with probability F and each of the other three with (1 - F) / 3.
struct IIDWernerSpec {
  double fidelity = 1.0;
  int pairs = 1;

  static IIDWernerSpec from_werner_w(double w, int pairs) {
    return {(1.0 + 3.0 * w) / 4.0, pairs};
  }
  double werner_w() const { return (4.0 * fidelity - 1.0) / 3.0; }
};

// Dense n-fold product distribution of the ensemble. Requires fidelity in [0, 1]
// and pairs <= kDenseMaxPairs; for larger n use the weight-class form
// (WeightClassProfile) instead of materializing 4^n weights.
BellDiagonalDistribution werner_distribution(const IIDWernerSpec& spec);

// Weight of the all-zero string: overlap with the n-pair target phi+ state.
double fidelity_to_target(const BellDiagonalDistribution& dist);

struct FidelityResult {
  double fidelity = 0.0;           // generalized fidelity, squared convention
  double purified_distance = 0.0;  // sqrt(1 - fidelity)
};

// Generalized fidelity between two (possibly sub-normalized) distributions
// over the same index set:
//   F(P, Q) = (sum_x sqrt(P(x) Q(x)) + sqrt((1 - |P|)(1 - |Q|)))^2
// with |P| the total mass. Both inputs must have mass <= 1 and no negative
// weights. The purified distance is sqrt(1 - F).
FidelityResult classical_fidelity_and_purified_distance(
    const BellDiagonalDistribution& p, const BellDiagonalDistribution& q);

}  // namespace hashsim
