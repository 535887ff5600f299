#include "hashsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hashsim {

namespace {

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

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One round applied to one unnormalized dense array over m pairs: relabel
// by the round's bit-linear transform, split on the parity (the target's
// amplitude bit), and marginalize the target's discarded phase bit. The
// transform image is maintained incrementally: stepping x -> x+1 flips the
// trailing bit block, so the image changes by a precomputed prefix-XOR of
// transform columns. One linear pass, two quarter-size outputs.
std::array<std::vector<double>, 2> split_round(const std::vector<double>& w,
                                               int m, const RoundString& s,
                                               Variant variant) {
  const RoundLinearMaps maps = round_linear_maps(s, variant);
  std::array<std::uint64_t, 64> prefix{};
  std::uint64_t acc = 0;
  for (int i = 0; i < 2 * m; ++i) {
    acc ^= maps.transform[i];
    prefix[i] = acc;
  }

  const std::uint64_t size = std::uint64_t{1} << (2 * m);
  const int t = maps.target;
  const std::uint64_t low_mask = (std::uint64_t{1} << (2 * t)) - 1;
  std::array<std::vector<double>, 2> out{
      std::vector<double>(size >> 2, 0.0), std::vector<double>(size >> 2, 0.0)};

  std::uint64_t tx = 0;
  for (std::uint64_t x = 0;;) {
    const double v = w[x];
    if (v != 0.0) {
      const int y = static_cast<int>((tx >> (2 * t + 1)) & 1);
      const std::uint64_t survivor =
          (tx & low_mask) | ((tx >> (2 * t + 2)) << (2 * t));
      out[y][survivor] += v;
    }
    if (++x == size) break;
    tx ^= prefix[std::countr_zero(x)];
  }
  return out;
}

void check_schedule(int pairs, const std::vector<RoundString>& schedule) {
  if (static_cast<int>(schedule.size()) >= pairs) {
    throw std::invalid_argument("schedule must leave at least one pair");
  }
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k].pairs != pairs - static_cast<int>(k)) {
      throw std::invalid_argument("round " + std::to_string(k + 1) +
                                  " sized for the wrong number of live pairs");
    }
    if (schedule[k].bits == 0) {
      throw std::invalid_argument("round strings must be nonzero");
    }
  }
}

double sum_of_branch_maxima(const std::vector<std::vector<double>>& branches) {
  KahanSum total;
  for (const auto& b : branches) {
    double best = 0.0;
    for (double v : b) best = std::max(best, v);
    total.add(best);
  }
  return total.sum;
}

void check_depths(const std::vector<int>& depths, std::size_t rounds) {
  if (depths.empty()) {
    throw std::invalid_argument("no report depths given");
  }
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 0 || depths[i] > static_cast<int>(rounds)) {
      throw std::invalid_argument("report depth outside the schedule");
    }
    if (i && depths[i] <= depths[i - 1]) {
      throw std::invalid_argument("report depths must be strictly ascending");
    }
  }
}

}  // namespace

TruncationOutcome truncate(const BellDiagonalDistribution& p,
                           const TruncationPolicy& policy) {
  const auto& w = p.dense_weights();
  if (std::abs(p.total_mass() - 1.0) > 1e-9) {
    throw std::invalid_argument("truncation expects a normalized input");
  }
  if (policy.kind == TruncationPolicy::Kind::kNone) {
    return {p, 1.0, 0.0};
  }

  std::vector<std::uint32_t> order(w.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return a < b;
  });

  std::uint64_t keep = 0;
  KahanSum kept;
  if (policy.kind == TruncationPolicy::Kind::kTopK) {
    if (policy.top_k == 0) {
      throw std::invalid_argument("top-k truncation needs k >= 1");
    }
    keep = std::min<std::uint64_t>(policy.top_k, w.size());
    for (std::uint64_t i = 0; i < keep; ++i) kept.add(w[order[i]]);
  } else {
    if (!(policy.delta > 0.0) || !(policy.delta < 1.0)) {
      throw std::invalid_argument("mass budget delta must lie in (0, 1)");
    }
    const double target = 1.0 - policy.delta;
    while (keep < w.size() && kept.sum < target) {
      kept.add(w[order[keep]]);
      ++keep;
    }
  }

  const double retained = std::min(kept.sum, 1.0);
  std::vector<double> trunc(w.size(), 0.0);
  for (std::uint64_t i = 0; i < keep; ++i) {
    trunc[order[i]] = w[order[i]] / retained;
  }
  return {BellDiagonalDistribution(p.pairs(), std::move(trunc)), retained,
          std::sqrt(std::max(0.0, 1.0 - retained))};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(
      splitmix64(seed ^ splitmix64(trial + 0x51B592D7DE2C0FE5ull)));
}

std::vector<RoundString> draw_schedule(int pairs, int rounds,
                                       std::mt19937_64& rng) {
  if (rounds < 0 || rounds >= pairs) {
    throw std::invalid_argument("need 0 <= rounds < pairs");
  }
  std::vector<RoundString> schedule;
  schedule.reserve(rounds);
  for (int k = 0; k < rounds; ++k) {
    schedule.push_back(sample_round_string(pairs - k, rng));
  }
  return schedule;
}

std::vector<double> run_trial_exact_branch(
    const BellDiagonalDistribution& p, const std::vector<RoundString>& schedule,
    Variant variant, const std::vector<int>& report_depths) {
  check_schedule(p.pairs(), schedule);
  check_depths(report_depths, schedule.size());

  std::vector<std::vector<double>> branches{p.dense_weights()};
  std::vector<double> values;
  values.reserve(report_depths.size());
  std::size_t next = 0;

  if (report_depths[next] == 0) {
    values.push_back(sum_of_branch_maxima(branches));
    ++next;
  }
  int live = p.pairs();
  for (std::size_t k = 0; k < schedule.size() && next < report_depths.size();
       ++k) {
    std::vector<std::vector<double>> split;
    split.reserve(branches.size() * 2);
    for (const auto& b : branches) {
      auto halves = split_round(b, live, schedule[k], variant);
      split.push_back(std::move(halves[0]));
      split.push_back(std::move(halves[1]));
    }
    branches = std::move(split);
    --live;
    if (report_depths[next] == static_cast<int>(k) + 1) {
      values.push_back(sum_of_branch_maxima(branches));
      ++next;
    }
  }
  return values;
}

double run_trial_exact_branch(const BellDiagonalDistribution& p,
                              const std::vector<RoundString>& schedule,
                              Variant variant) {
  return run_trial_exact_branch(p, schedule, variant,
                                {static_cast<int>(schedule.size())})[0];
}

std::vector<double> run_trial_sampled(const BellDiagonalDistribution& p,
                                      const std::vector<RoundString>& schedule,
                                      Variant variant, std::mt19937_64& rng,
                                      const std::vector<int>& report_depths) {
  check_schedule(p.pairs(), schedule);
  check_depths(report_depths, schedule.size());

  // Draw the hidden true error from the tracked distribution. Rounding can
  // leave a sliver of u after the last entry; land on the last nonzero
  // weight in that case.
  const auto& w = p.dense_weights();
  const double mass = p.total_mass();
  double u = uniform01(rng) * mass;
  std::uint64_t drawn = 0;
  for (std::uint64_t x = 0; x < w.size(); ++x) {
    if (w[x] == 0.0) continue;
    drawn = x;
    u -= w[x];
    if (u <= 0.0) break;
  }
  ErrorString truth(p.pairs(), drawn);

  std::vector<double> tracked = w;
  double tracked_mass = mass;
  auto posterior_best = [&]() {
    double best = 0.0;
    for (double v : tracked) best = std::max(best, v);
    return best / tracked_mass;
  };

  std::vector<double> values;
  std::size_t next = 0;
  if (report_depths[next] == 0) {
    values.push_back(posterior_best());
    ++next;
  }
  int live = p.pairs();
  for (std::size_t k = 0; k < schedule.size() && next < report_depths.size();
       ++k) {
    const RoundOutcome outcome = apply_round(truth, schedule[k], variant);
    auto halves = split_round(tracked, live, schedule[k], variant);
    tracked = std::move(halves[outcome.parity]);
    tracked_mass = 0.0;
    for (double v : tracked) tracked_mass += v;
    truth = outcome.survivor;
    --live;
    if (report_depths[next] == static_cast<int>(k) + 1) {
      values.push_back(posterior_best());
      ++next;
    }
  }
  return values;
}

BranchPosterior conditioned_posterior(const BellDiagonalDistribution& p,
                                      const std::vector<RoundString>& schedule,
                                      Variant variant,
                                      const std::vector<int>& parities) {
  check_schedule(p.pairs(), schedule);
  if (parities.size() != schedule.size()) {
    throw std::invalid_argument("need one parity per round");
  }
  std::vector<double> tracked = p.dense_weights();
  int live = p.pairs();
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    auto halves = split_round(tracked, live, schedule[k], variant);
    tracked = std::move(halves[parities[k] & 1]);
    --live;
  }
  BranchPosterior out;
  out.live_pairs = live;
  KahanSum mass;
  for (double v : tracked) mass.add(v);
  out.probability = mass.sum;
  out.weights = std::move(tracked);
  return out;
}

namespace {

int resolve_threads(const SimulationConfig& cfg) {
  int threads = cfg.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("HASHSIM_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::max(1, std::min(threads, cfg.trials));
  // Exact branch tracking holds ~1.5 copies of the dense array per running
  // trial; keep the combined footprint around a few GB.
  const double per_trial =
      12.0 * static_cast<double>(std::uint64_t{1} << (2 * cfg.werner.pairs));
  const int mem_cap =
      std::max(1, static_cast<int>(4e9 / std::max(per_trial, 1.0)));
  return std::min(threads, mem_cap);
}

}  // namespace

SimulationResult run_experiment(const SimulationConfig& cfg) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("need at least one trial");
  }
  check_depths(cfg.round_counts, static_cast<std::size_t>(cfg.werner.pairs) - 1);
  const int r_max = cfg.round_counts.back();

  const BellDiagonalDistribution p = werner_distribution(cfg.werner);
  TruncationOutcome trunc = truncate(p, cfg.truncation);

  // One value vector per trial, filled by index so the reduction below is
  // deterministic no matter how trials are scheduled onto threads.
  std::vector<std::vector<double>> per_trial(cfg.trials);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const int t = cursor.fetch_add(1);
      if (t >= cfg.trials) return;
      std::mt19937_64 rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
      const auto schedule = draw_schedule(cfg.werner.pairs, r_max, rng);
      per_trial[t] =
          cfg.mode == SimulationMode::kExactBranch
              ? run_trial_exact_branch(trunc.dist, schedule, cfg.variant,
                                       cfg.round_counts)
              : run_trial_sampled(trunc.dist, schedule, cfg.variant, rng,
                                  cfg.round_counts);
    }
  };
  const int threads = resolve_threads(cfg);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SimulationResult result;
  result.eps_trunc = trunc.eps_trunc;
  for (std::size_t d = 0; d < cfg.round_counts.size(); ++d) {
    KahanSum sum;
    for (int t = 0; t < cfg.trials; ++t) sum.add(per_trial[t][d]);
    const double mean = sum.sum / cfg.trials;
    double var = 0.0;
    if (cfg.trials > 1) {
      KahanSum sq;
      for (int t = 0; t < cfg.trials; ++t) {
        const double dlt = per_trial[t][d] - mean;
        sq.add(dlt * dlt);
      }
      var = sq.sum / (cfg.trials - 1);
    }

    SimulationRow row;
    row.rounds = cfg.round_counts[d];
    row.mean_fidelity = mean;
    row.std_err = cfg.trials > 1 ? std::sqrt(var / cfg.trials) : 0.0;
    row.reference =
        std::pow(cfg.werner.fidelity, cfg.werner.pairs - row.rounds);
    row.eps_trunc = trunc.eps_trunc;
    if (trunc.eps_trunc == 0.0) {
      row.f_lb = mean;
    } else {
      const double dist = std::sqrt(std::max(0.0, 1.0 - mean)) + trunc.eps_trunc;
      row.f_lb = std::max(0.0, 1.0 - dist * dist);
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace hashsim
