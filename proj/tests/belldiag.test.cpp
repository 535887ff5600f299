#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hashsim/belldiag.hpp"

using namespace hashsim;

TEST_CASE("pauli labels pack phase and amplitude bits") {
  CHECK(kPhiPlus == make_label(0, 0));
  CHECK(kPhiMinus == make_label(1, 0));
  CHECK(kPsiPlus == make_label(0, 1));
  CHECK(kPsiMinus == make_label(1, 1));

  CHECK(label_to_string(kPhiPlus) == "00");
  CHECK(label_to_string(kPhiMinus) == "10");
  CHECK(label_to_string(kPsiPlus) == "01");
  CHECK(label_to_string(kPsiMinus) == "11");

  for (int code = 0; code < 4; ++code) {
    const auto l = static_cast<PauliLabel>(code);
    CHECK(label_from_string(label_to_string(l)) == l);
    CHECK(make_label(phase_bit(l), amplitude_bit(l)) == l);
  }
  CHECK_THROWS_AS(label_from_string("2"), std::invalid_argument);
  CHECK_THROWS_AS(label_from_string("011"), std::invalid_argument);
}

TEST_CASE("error strings round-trip through text up to four pairs") {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << (2 * n)); ++word) {
      const ErrorString x(n, word);
      const ErrorString back = error_string_from_string(error_string_to_string(x));
      REQUIRE(back == x);
      // The packed word doubles as the integer encoding.
      REQUIRE(back.bits == word);
    }
  }
  // Pair 0 is the first symbol in the textual form.
  ErrorString x(2, 0);
  x.set_label(0, kPsiPlus);
  CHECK(error_string_to_string(x) == "01 00");
  CHECK(x.label(0) == kPsiPlus);
  CHECK(x.label(1) == kPhiPlus);
  CHECK(label_weight(x) == 1);
  x.set_label(1, kPhiMinus);
  CHECK(label_weight(x) == 2);
}

TEST_CASE("werner weights follow the per-pair product rule") {
  const auto perfect = werner_distribution({1.0, 3});
  CHECK(perfect.weight(0) == 1.0);
  CHECK(perfect.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

  const auto one = werner_distribution({0.9, 1});
  CHECK(one.weight(0) == doctest::Approx(0.9));
  for (std::uint64_t x = 1; x < 4; ++x) {
    CHECK(one.weight(x) == doctest::Approx(0.1 / 3.0));
  }

  const auto two = werner_distribution({0.9, 2});
  CHECK(two.weight(0) == doctest::Approx(0.81));
  for (int j = 0; j < 2; ++j) {
    for (std::uint64_t l = 1; l < 4; ++l) {
      CHECK(two.weight(l << (2 * j)) == doctest::Approx(0.03));
    }
  }
  CHECK(fidelity_to_target(two) == doctest::Approx(0.81));
  CHECK(fidelity_to_target(perfect) == 1.0);
}

TEST_CASE("werner distribution equals the explicit tensor construction") {
  const double f = 0.87;
  const double q = (1.0 - f) / 3.0;
  const double factor[4] = {f, q, q, q};
  for (int n = 1; n <= 4; ++n) {
    const auto dist = werner_distribution({f, n});
    std::vector<double> tensor{1.0};
    for (int j = 0; j < n; ++j) {
      std::vector<double> next(tensor.size() * 4);
      for (std::size_t l = 0; l < 4; ++l) {
        for (std::size_t x = 0; x < tensor.size(); ++x) {
          next[(l << (2 * j)) | x] = tensor[x] * factor[l];
        }
      }
      tensor = std::move(next);
    }
    REQUIRE(dist.dense_weights().size() == tensor.size());
    for (std::size_t x = 0; x < tensor.size(); ++x) {
      REQUIRE(dist.weight(x) == tensor[x]);
      // And the closed form F^(n-w) q^w, up to rounding.
      const int w = label_weight(x);
      REQUIRE(dist.weight(x) ==
              doctest::Approx(std::pow(f, n - w) * std::pow(q, w))
                  .epsilon(1e-13));
    }
  }
}

TEST_CASE("classical fidelity uses the squared generalized form") {
  const auto p = werner_distribution({0.9, 1});

  SUBCASE("identical normalized inputs") {
    const auto r = classical_fidelity_and_purified_distance(p, p);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.purified_distance == doctest::Approx(0.0).epsilon(1e-6));
  }

  SUBCASE("orthogonal point masses") {
    const BellDiagonalDistribution a(1, std::vector<double>{1, 0, 0, 0});
    const BellDiagonalDistribution b(1, std::vector<double>{0, 1, 0, 0});
    const auto r = classical_fidelity_and_purified_distance(a, b);
    CHECK(r.fidelity == 0.0);
    CHECK(r.purified_distance == 1.0);
  }

  SUBCASE("closed-form two-outcome example") {
    const BellDiagonalDistribution a(1, std::vector<double>{0.9, 0.1, 0, 0});
    const BellDiagonalDistribution b(1, std::vector<double>{0.5, 0.5, 0, 0});
    const auto r = classical_fidelity_and_purified_distance(a, b);
    const double root = std::sqrt(0.45) + std::sqrt(0.05);
    CHECK(r.fidelity == doctest::Approx(root * root).epsilon(1e-12));
    CHECK(r.fidelity == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(r.purified_distance == doctest::Approx(std::sqrt(0.2)).epsilon(1e-12));
  }

  SUBCASE("mass defect contributes") {
    // Sub-normalized copies of the same shape still have fidelity 1 only
    // when the masses agree; here both have mass 0.5, so the defect term
    // restores F = 1.
    std::vector<double> half{0.45, 0.05, 0, 0};
    const BellDiagonalDistribution a(1, half);
    const BellDiagonalDistribution b(1, half);
    const auto r = classical_fidelity_and_purified_distance(a, b);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("purified distance obeys the triangle inequality") {
  std::mt19937_64 rng(20240517);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const std::size_t size = std::size_t{1} << (2 * n);
    auto random_dist = [&]() {
      std::vector<double> w(size);
      double mass = 0.0;
      for (double& v : w) {
        v = -std::log(1.0 - unit(rng));
        mass += v;
      }
      // Random total mass in (0.5, 1], exercising the defect term.
      const double target = 0.5 + 0.5 * unit(rng);
      for (double& v : w) v *= target / mass;
      return BellDiagonalDistribution(n, std::move(w));
    };
    for (int trial = 0; trial < 334; ++trial) {
      const auto p = random_dist();
      const auto q = random_dist();
      const auto r = random_dist();
      const double pq =
          classical_fidelity_and_purified_distance(p, q).purified_distance;
      const double qr =
          classical_fidelity_and_purified_distance(q, r).purified_distance;
      const double pr =
          classical_fidelity_and_purified_distance(p, r).purified_distance;
      REQUIRE(pr <= pq + qr + 1e-10);
    }
  }
}

TEST_CASE("invalid distributions are rejected") {
  CHECK_THROWS_AS(BellDiagonalDistribution(1, std::vector<double>{1, -0.1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BellDiagonalDistribution(1, std::vector<double>{1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(werner_distribution({1.2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(werner_distribution({-0.1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(werner_distribution({0.9, 0}), std::invalid_argument);
  CHECK_THROWS_AS(werner_distribution({0.9, 14}), std::invalid_argument);

  const BellDiagonalDistribution heavy(1, std::vector<double>{1.0, 0.5, 0, 0});
  const auto p = werner_distribution({0.9, 1});
  CHECK_THROWS_AS(classical_fidelity_and_purified_distance(heavy, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      classical_fidelity_and_purified_distance(p, werner_distribution({0.9, 2})),
      std::invalid_argument);
}
