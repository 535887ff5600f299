#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hashsim/belldiag.hpp"
#include "hashsim/protocol.hpp"

using namespace hashsim;

namespace {

int gf2_rank(std::vector<std::uint64_t> columns) {
  int rank = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::uint64_t col = columns[c];
    if (col == 0) continue;
    const int pivot = std::countr_zero(col);
    ++rank;
    for (std::size_t o = 0; o < columns.size(); ++o) {
      if (o != c && ((columns[o] >> pivot) & 1)) columns[o] ^= col;
    }
  }
  return rank;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  CHECK(variant_name(Variant::kCnot) == "cnot");
  CHECK(variant_name(Variant::kCz) == "cz");
  CHECK(variant_from_name("cnot") == Variant::kCnot);
  CHECK(variant_from_name("cz") == Variant::kCz);
  CHECK_THROWS_AS(variant_from_name("swap"), std::invalid_argument);
}

TEST_CASE("round strings parse and print in pair order") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t word = 1; word < (std::uint64_t{1} << (2 * n)); ++word) {
      const RoundString s(n, word);
      CHECK(round_string_from_string(round_string_to_string(s)) == s);
    }
  }
  const RoundString s = round_string_from_string("00 11 01");
  CHECK(s.pairs == 3);
  CHECK(s.symbol(0) == kPhiPlus);
  CHECK(s.symbol(1) == kPsiMinus);
  CHECK(s.symbol(2) == kPsiPlus);
  CHECK(target_pair(s) == 1);
  CHECK(target_pair(round_string_from_string("01 11")) == 0);
  CHECK_THROWS_AS(target_pair(RoundString(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(round_string_from_string("02 11"), std::invalid_argument);
}

TEST_CASE("sampled round strings are nonzero, uniform, and reproducible") {
  // Same seed, same stream.
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(sample_round_string(3, a) == sample_round_string(3, b));
  }

  // Frozen golden sequence pinning the draw algorithm.
  std::mt19937_64 rng(42);
  const std::uint64_t golden[6] = {22, 40, 10, 14, 21, 60};
  for (std::uint64_t want : golden) {
    CHECK(sample_round_string(3, rng).bits == want);
  }

  // Single-pair draws land uniformly on the three nonzero symbols.
  std::mt19937_64 freq_rng(7);
  int counts[4] = {0, 0, 0, 0};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    counts[sample_round_string(1, freq_rng).bits]++;
  }
  CHECK(counts[0] == 0);
  const double expected = draws / 3.0;
  const double sigma = std::sqrt(draws * (1.0 / 3.0) * (2.0 / 3.0));
  for (int sym = 1; sym < 4; ++sym) {
    CHECK(std::abs(counts[sym] - expected) < 3.0 * sigma);
  }
}

TEST_CASE("boolean inner product matches its single-term expansion") {
  // S selects only the amplitude bit of pair 1.
  const RoundString s = round_string_from_string("00 01");
  ErrorString x(2, 0);
  x.set_label(1, make_label(0, 1));
  CHECK(boolean_inner_product(s, x) == 1);
  x.set_label(1, make_label(1, 0));
  CHECK(boolean_inner_product(s, x) == 0);

  CHECK(boolean_inner_product(round_string_from_string("11"),
                              error_string_from_string("10")) == 1);
  CHECK(boolean_inner_product(round_string_from_string("11 10 01"),
                              ErrorString(3, 0)) == 0);
  CHECK_THROWS_AS(
      boolean_inner_product(round_string_from_string("01"), ErrorString(2, 0)),
      std::invalid_argument);
}

TEST_CASE("measured parity equals the boolean inner product exhaustively") {
  for (Variant v : {Variant::kCnot, Variant::kCz}) {
    for (int n = 1; n <= 4; ++n) {
      const std::uint64_t span = std::uint64_t{1} << (2 * n);
      for (std::uint64_t sbits = 1; sbits < span; ++sbits) {
        const RoundString s(n, sbits);
        for (std::uint64_t xbits = 0; xbits < span; ++xbits) {
          const ErrorString x(n, xbits);
          const RoundOutcome out = apply_round(x, s, v);
          REQUIRE(out.parity == boolean_inner_product(s, x));
          REQUIRE(out.survivor.pairs == n - 1);
        }
      }
    }
  }

  // Error-free inputs stay error-free.
  const RoundString s = round_string_from_string("10 11 01");
  for (Variant v : {Variant::kCnot, Variant::kCz}) {
    const RoundOutcome out = apply_round(ErrorString(3, 0), s, v);
    CHECK(out.parity == 0);
    CHECK(out.survivor.bits == 0);
  }

  // Hand-traced single round: psi+ on pair 1 fires the amplitude parity.
  const RoundOutcome traced =
      apply_round(error_string_from_string("00 01"),
                  round_string_from_string("01 01"), Variant::kCnot);
  CHECK(traced.parity == 1);
}

TEST_CASE("linear maps reproduce the round action") {
  for (Variant v : {Variant::kCnot, Variant::kCz}) {
    for (int n = 2; n <= 3; ++n) {
      const std::uint64_t span = std::uint64_t{1} << (2 * n);
      for (std::uint64_t sbits = 1; sbits < span; ++sbits) {
        const RoundString s(n, sbits);
        const RoundLinearMaps maps = round_linear_maps(s, v);
        REQUIRE(maps.target == target_pair(s));

        // First-round parity functional is S itself, for both variants.
        REQUIRE(maps.parity_mask == sbits);

        for (std::uint64_t xbits = 0; xbits < span; ++xbits) {
          const RoundOutcome out = apply_round(ErrorString(n, xbits), s, v);
          const std::uint64_t tx = maps.apply_transform(xbits);
          REQUIRE(((tx >> (2 * maps.target + 1)) & 1) ==
                  static_cast<std::uint64_t>(out.parity));
          REQUIRE(maps.project_survivor(tx) == out.survivor.bits);
          REQUIRE((std::popcount(maps.parity_mask & xbits) & 1) == out.parity);
        }
      }
    }
  }
}

TEST_CASE("round transforms are invertible bit-linear maps") {
  for (Variant v : {Variant::kCnot, Variant::kCz}) {
    for (int n = 1; n <= 4; ++n) {
      const std::uint64_t span = std::uint64_t{1} << (2 * n);
      for (std::uint64_t sbits = 1; sbits < span; ++sbits) {
        const RoundLinearMaps maps = round_linear_maps(RoundString(n, sbits), v);
        REQUIRE(gf2_rank(maps.transform) == 2 * n);
      }
    }
  }
}

TEST_CASE("linear maps agree with apply_round on random large rounds") {
  std::mt19937_64 rng(5150);
  const int n = 6;
  std::uniform_int_distribution<std::uint64_t> words(
      0, (std::uint64_t{1} << (2 * n)) - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const RoundString s = sample_round_string(n, rng);
    const std::uint64_t xbits = words(rng);
    for (Variant v : {Variant::kCnot, Variant::kCz}) {
      const RoundLinearMaps maps = round_linear_maps(s, v);
      const RoundOutcome out = apply_round(ErrorString(n, xbits), s, v);
      const std::uint64_t tx = maps.apply_transform(xbits);
      REQUIRE(((tx >> (2 * maps.target + 1)) & 1) ==
              static_cast<std::uint64_t>(out.parity));
      REQUIRE(maps.project_survivor(tx) == out.survivor.bits);
    }
  }
}

TEST_CASE("step-2 label maps are linear bijections matching their tables") {
  auto expect_map = [](Variant v, bool target, PauliLabel s, int a, int b,
                       int want_a, int want_b) {
    CHECK(step2_label_map(v, target, s, make_label(a, b)) ==
          make_label(want_a, want_b));
  };
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // CNOT treats every pair alike: 10 swaps, 11 shears the amplitude.
      for (bool target : {false, true}) {
        expect_map(Variant::kCnot, target, kPhiPlus, a, b, a, b);
        expect_map(Variant::kCnot, target, kPsiPlus, a, b, a, b);
        expect_map(Variant::kCnot, target, kPhiMinus, a, b, b, a);
        expect_map(Variant::kCnot, target, kPsiMinus, a, b, a, a ^ b);
      }
      // CZ controls match CNOT; the CZ target stores s.x in the phase bit.
      expect_map(Variant::kCz, false, kPhiMinus, a, b, b, a);
      expect_map(Variant::kCz, false, kPsiMinus, a, b, a, a ^ b);
      expect_map(Variant::kCz, true, kPsiPlus, a, b, b, a);
      expect_map(Variant::kCz, true, kPhiMinus, a, b, a, b);
      expect_map(Variant::kCz, true, kPsiMinus, a, b, a ^ b, b);
    }
  }

  // Every (variant, role, symbol) map is GF(2)-linear and invertible.
  for (Variant v : {Variant::kCnot, Variant::kCz}) {
    for (bool target : {false, true}) {
      for (int sym = 0; sym < 4; ++sym) {
        const auto s = static_cast<PauliLabel>(sym);
        bool seen[4] = {false, false, false, false};
        for (int in = 0; in < 4; ++in) {
          seen[step2_label_map(v, target, s, static_cast<PauliLabel>(in))] =
              true;
        }
        CHECK((seen[0] && seen[1] && seen[2] && seen[3]));
        for (int x = 0; x < 4; ++x) {
          for (int y = 0; y < 4; ++y) {
            CHECK(step2_label_map(v, target, s,
                                  static_cast<PauliLabel>(x ^ y)) ==
                  (step2_label_map(v, target, s, static_cast<PauliLabel>(x)) ^
                   step2_label_map(v, target, s, static_cast<PauliLabel>(y))));
          }
        }
      }
    }
  }
}

TEST_CASE("compiled rounds follow the protocol box ordering") {
  SUBCASE("one control, one target under the cnot variant") {
    const auto items = compile_round(round_string_from_string("01 11"),
                                     Variant::kCnot, 1, {0, 1});
    REQUIRE(items.size() == 4);
    // Step 2: asymmetric x-rotations on the control pair only.
    CHECK(items[0].step == 2);
    CHECK(items[0].gate == "rx");
    CHECK(items[0].party == Party::kAlice);
    CHECK(items[0].angle_pi == 1.5);
    CHECK(items[1].party == Party::kBob);
    CHECK(items[1].angle_pi == 0.5);
    // Step 3: exactly one entangling gate, control pair 1 into target 0.
    CHECK(items[2].step == 3);
    CHECK(items[2].gate == "cnot");
    CHECK(items[2].pairs == std::vector<int>{1, 0});
    // Step 4: measurement, no basis change for the cnot variant.
    CHECK(items[3].gate == "measure_z");
    CHECK(items[3].pairs == std::vector<int>{0});
  }

  SUBCASE("single nonzero symbol needs no entangling gate") {
    const auto items = compile_round(round_string_from_string("00 10"),
                                     Variant::kCnot, 1, {4, 9});
    for (const auto& it : items) {
      CHECK(it.gate != "cnot");
      CHECK(it.gate != "cz");
    }
    CHECK(items.back().gate == "measure_z");
    CHECK(items.back().pairs == std::vector<int>{9});
  }

  SUBCASE("cz variant ends with both-party y-rotations on the target") {
    const auto items = compile_round(round_string_from_string("10 11"),
                                     Variant::kCz, 2, {0, 1});
    REQUIRE(items.size() >= 3);
    const auto& rot = items[items.size() - 2];
    CHECK(rot.step == 4);
    CHECK(rot.gate == "ry");
    CHECK(rot.party == Party::kBoth);
    CHECK(rot.angle_pi == 0.5);
    CHECK(rot.pairs == std::vector<int>{0});
    CHECK(items.back().gate == "measure_z");
    const auto& entangle = items[items.size() - 3];
    CHECK(entangle.gate == "cz");
    CHECK(entangle.pairs == std::vector<int>{1, 0});
  }
}

TEST_CASE("multi-round compilation keeps physical ids stable") {
  const std::vector<RoundString> rounds = {
      round_string_from_string("01 01 01"), round_string_from_string("01 01")};
  const auto items = compile_schedule(rounds, Variant::kCnot, 3);
  // Round 1 measures physical pair 0; round 2's live pairs are {1, 2}.
  bool saw_round2 = false;
  for (const auto& it : items) {
    if (it.round == 2) {
      saw_round2 = true;
      for (int id : it.pairs) CHECK((id == 1 || id == 2));
    }
  }
  CHECK(saw_round2);
  CHECK(items.back().gate == "measure_z");
  CHECK(items.back().pairs == std::vector<int>{1});

  CHECK_THROWS_AS(
      compile_schedule({round_string_from_string("01 01")}, Variant::kCnot, 3),
      std::invalid_argument);
}

TEST_CASE("schedule json freezes the key order and uses radians") {
  const auto items =
      compile_round(round_string_from_string("11"), Variant::kCnot, 1, {0});
  const std::string text = schedule_to_json(items);

  // Documented key order within each item.
  const auto first_obj = text.substr(0, text.find('}'));
  std::size_t at = 0;
  for (const char* key :
       {"\"round\"", "\"step\"", "\"party\"", "\"gate\"", "\"angle\"",
        "\"pairs\""}) {
    const std::size_t pos = first_obj.find(key);
    REQUIRE(pos != std::string::npos);
    REQUIRE(pos > at);
    at = pos;
  }

  const auto parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["gate"] == "rx");
  CHECK(parsed[0]["party"] == "alice");
  CHECK(parsed[0]["angle"].get<double>() ==
        doctest::Approx(4.71238898038469).epsilon(1e-12));
  CHECK(parsed[1]["party"] == "bob");
  CHECK(parsed[1]["angle"].get<double>() ==
        doctest::Approx(1.5707963267948966).epsilon(1e-12));
  CHECK(parsed[2]["gate"] == "measure_z");
  CHECK(parsed[2]["round"] == 1);
}
