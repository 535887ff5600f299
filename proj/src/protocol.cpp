#include "hashsim/protocol.hpp"

#include <bit>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hashsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string variant_name(Variant v) {
  return v == Variant::kCnot ? "cnot" : "cz";
}

Variant variant_from_name(const std::string& name) {
  if (name == "cnot") return Variant::kCnot;
  if (name == "cz") return Variant::kCz;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string round_string_to_string(const RoundString& s) {
  std::string out;
  for (int j = 0; j < s.pairs; ++j) {
    if (j) out += ' ';
    out += label_to_string(s.symbol(j));
  }
  return out;
}

RoundString round_string_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  RoundString s;
  while (in >> tok) {
    if (s.pairs >= kMaxPairs) {
      throw std::invalid_argument("round string exceeds pair limit");
    }
    s.bits |= std::uint64_t{label_from_string(tok)} << (2 * s.pairs);
    ++s.pairs;
  }
  if (s.pairs == 0) throw std::invalid_argument("empty round string");
  return s;
}

RoundString sample_round_string(int pairs, std::mt19937_64& rng) {
  if (pairs < 1 || pairs > kMaxPairs) {
    throw std::invalid_argument("pair count out of range");
  }
  const std::uint64_t mask = (std::uint64_t{1} << (2 * pairs)) - 1;
  std::uint64_t bits;
  do {
    bits = rng() & mask;
  } while (bits == 0);
  return RoundString(pairs, bits);
}

int target_pair(const RoundString& s) {
  if (s.bits == 0) {
    throw std::invalid_argument("round string must have a nonzero symbol");
  }
  return std::countr_zero(s.bits) / 2;
}

int boolean_inner_product(const RoundString& s, const ErrorString& x) {
  if (s.pairs != x.pairs) {
    throw std::invalid_argument("round and error string sizes differ");
  }
  return std::popcount(s.bits & x.bits) & 1;
}

PauliLabel step2_label_map(Variant variant, bool role_target, PauliLabel s,
                           PauliLabel in) {
  const int a = phase_bit(in);
  const int b = amplitude_bit(in);
  // Three nontrivial local maps show up in step 2:
  //   swap      (a,b) -> (b,a)        bilateral y-rotation
  //   amp shear (a,b) -> (a, a^b)     asymmetric x-rotations
  //   phs shear (a,b) -> (a^b, b)     asymmetric z-rotations
  enum { kId, kSwap, kAmpShear, kPhsShear } op = kId;
  if (variant == Variant::kCnot) {
    // Same map for every participating pair, target included.
    if (s == kPhiMinus) op = kSwap;           // symbol 10
    else if (s == kPsiMinus) op = kAmpShear;  // symbol 11
  } else if (!role_target) {
    // CZ controls match the CNOT maps.
    if (s == kPhiMinus) op = kSwap;
    else if (s == kPsiMinus) op = kAmpShear;
  } else {
    // CZ target: the symbol's inner product must land in the phase bit.
    if (s == kPsiPlus) op = kSwap;            // symbol 01
    else if (s == kPsiMinus) op = kPhsShear;  // symbol 11
  }
  switch (op) {
    case kSwap: return make_label(b, a);
    case kAmpShear: return make_label(a, a ^ b);
    case kPhsShear: return make_label(a ^ b, b);
    default: return in;
  }
}

namespace {

// Steps 2-4 as one bit-linear map on the packed word (measurement and
// removal excluded). For the CZ variant this includes the step-4 swap on
// the target, so in both variants the parity ends up in the target's
// amplitude bit.
std::uint64_t transform_word(std::uint64_t x, const RoundString& s,
                             Variant variant) {
  const int n = s.pairs;
  const int t = target_pair(s);

  // Step 2: local rotations pair by pair.
  std::uint64_t y = 0;
  for (int j = 0; j < n; ++j) {
    PauliLabel in = static_cast<PauliLabel>((x >> (2 * j)) & 3);
    PauliLabel out = s.symbol(j) == kPhiPlus
                         ? in
                         : step2_label_map(variant, j == t, s.symbol(j), in);
    y |= std::uint64_t{out} << (2 * j);
  }

  // Step 3: entangling gates between each active control and the target.
  const std::uint64_t tgt_phase = (y >> (2 * t)) & 1;
  const std::uint64_t tgt_amp = (y >> (2 * t + 1)) & 1;
  std::uint64_t amp_sum = 0;  // parity of control amplitude bits
  for (int j = 0; j < n; ++j) {
    if (j == t || s.symbol(j) == kPhiPlus) continue;
    const std::uint64_t ctl_amp = (y >> (2 * j + 1)) & 1;
    amp_sum ^= ctl_amp;
    if (variant == Variant::kCnot) {
      // Bilateral CNOT: target phase backacts on the control phase,
      // control amplitude accumulates on the target.
      y ^= tgt_phase << (2 * j);
    } else {
      // Bilateral CZ: amplitudes cross over into the partner's phase.
      y ^= tgt_amp << (2 * j);
    }
  }
  if (variant == Variant::kCnot) {
    y ^= amp_sum << (2 * t + 1);
  } else {
    y ^= amp_sum << (2 * t);
    // Step 4 rotation swaps the target's bits so the measured amplitude
    // carries the accumulated parity.
    const std::uint64_t a = (y >> (2 * t)) & 1;
    const std::uint64_t b = (y >> (2 * t + 1)) & 1;
    y &= ~(std::uint64_t{3} << (2 * t));
    y |= (b << (2 * t)) | (a << (2 * t + 1));
  }
  return y;
}

}  // namespace

RoundOutcome apply_round(const ErrorString& x, const RoundString& s,
                         Variant variant) {
  if (x.pairs != s.pairs) {
    throw std::invalid_argument("round and error string sizes differ");
  }
  const int t = target_pair(s);
  const std::uint64_t y = transform_word(x.bits, s, variant);

  RoundOutcome out;
  out.parity = static_cast<int>((y >> (2 * t + 1)) & 1);
  const std::uint64_t low = y & ((std::uint64_t{1} << (2 * t)) - 1);
  const std::uint64_t high = (y >> (2 * t + 2)) << (2 * t);
  out.survivor = ErrorString(x.pairs - 1, low | high);
  return out;
}

std::uint64_t RoundLinearMaps::apply_transform(std::uint64_t x) const {
  std::uint64_t y = 0;
  while (x) {
    y ^= transform[std::countr_zero(x)];
    x &= x - 1;
  }
  return y;
}

std::uint64_t RoundLinearMaps::project_survivor(std::uint64_t tx) const {
  const std::uint64_t low = tx & ((std::uint64_t{1} << (2 * target)) - 1);
  const std::uint64_t high = (tx >> (2 * target + 2)) << (2 * target);
  return low | high;
}

RoundLinearMaps round_linear_maps(const RoundString& s, Variant variant) {
  RoundLinearMaps maps;
  maps.pairs = s.pairs;
  maps.target = target_pair(s);
  maps.transform.resize(2 * s.pairs);
  for (int i = 0; i < 2 * s.pairs; ++i) {
    maps.transform[i] = transform_word(std::uint64_t{1} << i, s, variant);
  }
  const int parity_bit = 2 * maps.target + 1;
  for (int i = 0; i < 2 * s.pairs; ++i) {
    maps.parity_mask |= ((maps.transform[i] >> parity_bit) & 1) << i;
  }
  return maps;
}

namespace {

void emit_rotation_pair(std::vector<GateScheduleItem>& out, int round,
                        int step, const std::string& axis, int pair_id,
                        bool asymmetric) {
  if (asymmetric) {
    out.push_back({round, step, Party::kAlice, axis, 1.5, {pair_id}});
    out.push_back({round, step, Party::kBob, axis, 0.5, {pair_id}});
  } else {
    out.push_back({round, step, Party::kBoth, axis, 0.5, {pair_id}});
  }
}

}  // namespace

std::vector<GateScheduleItem> compile_round(
    const RoundString& s, Variant variant, int round_number,
    const std::vector<int>& physical_ids) {
  if (static_cast<int>(physical_ids.size()) != s.pairs) {
    throw std::invalid_argument("physical id list does not match round size");
  }
  const int t = target_pair(s);
  std::vector<GateScheduleItem> out;

  // Step 2: local rotations.
  for (int j = 0; j < s.pairs; ++j) {
    const PauliLabel sym = s.symbol(j);
    if (sym == kPhiPlus) continue;
    const int id = physical_ids[j];
    if (variant == Variant::kCnot) {
      if (sym == kPhiMinus) emit_rotation_pair(out, round_number, 2, "ry", id, false);
      else if (sym == kPsiMinus) emit_rotation_pair(out, round_number, 2, "rx", id, true);
    } else if (j != t) {
      if (sym == kPhiMinus) emit_rotation_pair(out, round_number, 2, "ry", id, false);
      else if (sym == kPsiMinus) emit_rotation_pair(out, round_number, 2, "rx", id, true);
    } else {
      if (sym == kPsiPlus) emit_rotation_pair(out, round_number, 2, "ry", id, false);
      else if (sym == kPsiMinus) emit_rotation_pair(out, round_number, 2, "rz", id, true);
    }
  }

  // Step 3: entangling gates, ascending control index.
  const std::string gate = variant == Variant::kCnot ? "cnot" : "cz";
  for (int j = 0; j < s.pairs; ++j) {
    if (j == t || s.symbol(j) == kPhiPlus) continue;
    out.push_back({round_number, 3, Party::kBoth, gate, 0.0,
                   {physical_ids[j], physical_ids[t]}});
  }

  // Step 4: basis change (CZ only) and measurement of the target.
  if (variant == Variant::kCz) {
    emit_rotation_pair(out, round_number, 4, "ry", physical_ids[t], false);
  }
  out.push_back(
      {round_number, 4, Party::kBoth, "measure_z", 0.0, {physical_ids[t]}});
  return out;
}

std::vector<GateScheduleItem> compile_schedule(
    const std::vector<RoundString>& rounds, Variant variant, int pairs) {
  std::vector<int> alive(pairs);
  for (int i = 0; i < pairs; ++i) alive[i] = i;

  std::vector<GateScheduleItem> out;
  int round_number = 0;
  for (const RoundString& s : rounds) {
    ++round_number;
    if (s.pairs != static_cast<int>(alive.size())) {
      throw std::invalid_argument(
          "round " + std::to_string(round_number) + " has " +
          std::to_string(s.pairs) + " symbols but " +
          std::to_string(alive.size()) + " pairs are alive");
    }
    auto items = compile_round(s, variant, round_number, alive);
    out.insert(out.end(), items.begin(), items.end());
    alive.erase(alive.begin() + target_pair(s));
  }
  return out;
}

std::string schedule_to_json(const std::vector<GateScheduleItem>& items) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& it : items) {
    const char* party = it.party == Party::kAlice  ? "alice"
                        : it.party == Party::kBob ? "bob"
                                                  : "both";
    nlohmann::ordered_json row;
    row["round"] = it.round;
    row["step"] = it.step;
    row["party"] = party;
    row["gate"] = it.gate;
    row["angle"] = it.angle_pi * kPi;  // radians
    row["pairs"] = it.pairs;
    arr.push_back(std::move(row));
  }
  return arr.dump(2);
}

}  // namespace hashsim
