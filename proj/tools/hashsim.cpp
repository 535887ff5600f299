// hashsim: finite-size guarantees and exact simulation of the one-way
// hashing method for Bell-diagonal entanglement distillation.
//
// Subcommands emit CSV (with a "# key: value" provenance header) or JSON
// (with a "manifest" field). Outputs are deterministic: fixed seeds, C
// locale, 12 significant digits, no timestamps.

#include <clocale>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hashsim/bounds.hpp"
#include "hashsim/codes.hpp"
#include "hashsim/entropy.hpp"
#include "hashsim/manifest.hpp"
#include "hashsim/oracle.hpp"
#include "hashsim/simulator.hpp"

namespace {

using hashsim::BoundReport;
using hashsim::EpsilonSplit;
using hashsim::RunManifest;
using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "a..b" (inclusive), "a,b,c", or a single integer.
std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("range '" + text + "' is empty");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw CLI::ValidationError("empty range '" + text + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CLI::ValidationError("empty list '" + text + "'");
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void print_csv(const RunManifest& manifest, const std::string& payload) {
  std::cout << hashsim::manifest_csv_comment(manifest, payload) << payload;
}

void print_json(const RunManifest& manifest, const Json& body) {
  Json manifest_obj;
  manifest_obj["command"] = manifest.command;
  Json params;
  for (const auto& [key, value] : manifest.parameters) params[key] = value;
  manifest_obj["parameters"] = params;
  if (manifest.seed) manifest_obj["seed"] = *manifest.seed;
  manifest_obj["version"] = hashsim::tool_version_string();
  manifest_obj["digest"] = hashsim::digest_string(body.dump(2));

  Json doc;
  doc["manifest"] = manifest_obj;
  for (const auto& [key, value] : body.items()) doc[key] = value;
  std::cout << doc.dump(2) << "\n";
}

Json bound_report_json(const BoundReport& report, double f_in, double f_out) {
  Json body;
  body["n"] = report.pairs;
  body["f_in"] = f_in;
  body["f_out"] = f_out;
  body["eps"] = report.eps;
  body["eps1"] = report.split.eps1;
  body["eps2"] = report.split.eps2;
  body["entropy_bits"] = report.entropy.value_bits;
  if (report.entropy.k_is_exact) body["entropy_k"] = report.entropy.k;
  body["hash_rounds"] = report.hash_rounds;
  body["surviving_pairs"] = report.surviving_pairs;
  body["rate"] = report.rate;
  body["guarantee"] = report.guarantee;
  body["non_tight_rounds"] = report.non_tight_rounds;
  body["non_tight_surviving"] = report.non_tight_surviving;
  return body;
}

int cmd_bounds(double fidelity, int n, double f_out,
               const std::string& eps_split, const std::string& format) {
  const double eps = hashsim::epsilon_for_output_fidelity(f_out);
  const hashsim::IIDWernerSpec spec{fidelity, n};
  BoundReport report;
  if (eps_split == "auto") {
    report = hashsim::yield_lower_bound(spec, eps);
  } else {
    const auto parts = parse_double_list(eps_split);
    if (parts.size() != 2) {
      throw CLI::ValidationError("--eps-split expects 'auto' or 'e1,e2'");
    }
    report = hashsim::yield_lower_bound(spec, eps, {parts[0], parts[1]});
  }

  RunManifest manifest;
  manifest.command = "bounds";
  manifest.parameters = {{"fidelity", fmt(fidelity)},
                         {"n", std::to_string(n)},
                         {"f_out", fmt(f_out)},
                         {"eps_split", eps_split}};

  if (format == "csv") {
    std::string payload =
        "n,f_in,f_out,eps,eps1,eps2,entropy_bits,hash_rounds,surviving_pairs,"
        "rate,guarantee,non_tight_rounds,non_tight_surviving\n";
    payload += std::to_string(report.pairs) + "," + fmt(fidelity) + "," +
               fmt(f_out) + "," + fmt(report.eps) + "," +
               fmt(report.split.eps1) + "," + fmt(report.split.eps2) + "," +
               fmt(report.entropy.value_bits) + "," +
               std::to_string(report.hash_rounds) + "," +
               std::to_string(report.surviving_pairs) + "," +
               fmt(report.rate) + "," + (report.guarantee ? "1" : "0") + "," +
               std::to_string(report.non_tight_rounds) + "," +
               std::to_string(report.non_tight_surviving) + "\n";
    print_csv(manifest, payload);
  } else {
    Json body = bound_report_json(report, fidelity, f_out);
    if (!report.guarantee) body["note"] = "no guarantee";
    print_json(manifest, body);
  }
  if (!report.guarantee) {
    std::cerr << "no guarantee: m = " << report.surviving_pairs << " < 1\n";
  }
  return 0;
}

int cmd_rate_curve(const std::string& fidelities, double f_out,
                   const std::string& n_range, const std::string& format) {
  const auto f_list = parse_double_list(fidelities);
  const auto n_list = parse_int_range(n_range);
  const auto rows = hashsim::rate_curve(f_list, f_out, n_list);

  RunManifest manifest;
  manifest.command = "rate-curve";
  manifest.parameters = {{"fidelity", fidelities},
                         {"f_out", fmt(f_out)},
                         {"n", n_range}};

  if (format == "json") {
    Json body;
    body["f_out"] = f_out;
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json r;
      r["f_in"] = row.f_in;
      r["n"] = row.pairs;
      r["eps1"] = row.split.eps1;
      r["eps2"] = row.split.eps2;
      r["entropy_bits"] = row.entropy_bits;
      r["surviving_pairs"] = row.surviving_pairs;
      r["rate"] = row.rate;
      arr.push_back(std::move(r));
    }
    body["rows"] = arr;
    print_json(manifest, body);
  } else {
    std::string payload = "f_in,n,eps1,eps2,entropy_bits,m,rate\n";
    for (const auto& row : rows) {
      payload += fmt(row.f_in) + "," + std::to_string(row.pairs) + "," +
                 fmt(row.split.eps1) + "," + fmt(row.split.eps2) + "," +
                 fmt(row.entropy_bits) + "," +
                 std::to_string(row.surviving_pairs) + "," + fmt(row.rate) +
                 "\n";
    }
    print_csv(manifest, payload);
  }
  return 0;
}

int cmd_threshold(double fidelity, double f_out, int n_max,
                  const std::string& format) {
  const auto n_min = hashsim::single_pair_threshold(fidelity, f_out, n_max);

  RunManifest manifest;
  manifest.command = "threshold";
  manifest.parameters = {{"fidelity", fmt(fidelity)},
                         {"f_out", fmt(f_out)},
                         {"n_max", std::to_string(n_max)}};

  if (format == "csv") {
    std::string payload = "f_in,f_out,n_max,n_min\n";
    payload += fmt(fidelity) + "," + fmt(f_out) + "," +
               std::to_string(n_max) + "," +
               (n_min ? std::to_string(*n_min) : std::string("none")) + "\n";
    print_csv(manifest, payload);
  } else {
    Json body;
    body["f_in"] = fidelity;
    body["f_out"] = f_out;
    body["n_max"] = n_max;
    if (n_min) {
      body["n_min"] = *n_min;
    } else {
      body["n_min"] = nullptr;
    }
    print_json(manifest, body);
  }
  return 0;
}

int cmd_entropy(double fidelity, int n, double eps, const std::string& solver,
                const std::string& format) {
  const hashsim::IIDWernerSpec spec{fidelity, n};
  hashsim::SmoothHartleyResult result;
  std::string used = solver;
  if (solver == "generic" ||
      (solver == "auto" && !(fidelity > 0.25) &&
       n <= hashsim::BellDiagonalDistribution::kDenseMaxPairs)) {
    result = hashsim::smooth_hartley_generic(werner_distribution(spec), eps);
    used = "generic";
  } else {
    result = hashsim::smooth_hartley_werner(spec, eps);
    used = "werner";
  }
  const auto shannon = hashsim::shannon_and_asymptotic_rate(fidelity);

  RunManifest manifest;
  manifest.command = "entropy";
  manifest.parameters = {{"fidelity", fmt(fidelity)},
                         {"n", std::to_string(n)},
                         {"eps", fmt(eps)},
                         {"solver", solver}};

  if (format == "csv") {
    std::string payload =
        "f_in,n,eps,solver,value_bits,k_exact,k,boundary_weight,"
        "boundary_fraction,retained_mass,shannon_bits,asymptotic_rate\n";
    payload += fmt(fidelity) + "," + std::to_string(n) + "," + fmt(eps) + "," +
               used + "," + fmt(result.value_bits) + "," +
               (result.k_is_exact ? "1" : "0") + "," +
               (result.k_is_exact ? std::to_string(result.k)
                                  : std::string("")) +
               "," + std::to_string(result.boundary_weight) + "," +
               fmt(result.boundary_fraction) + "," +
               fmt(result.retained_mass) + "," + fmt(shannon.shannon_bits) +
               "," + fmt(shannon.asymptotic_rate) + "\n";
    print_csv(manifest, payload);
  } else {
    Json body;
    body["f_in"] = fidelity;
    body["n"] = n;
    body["eps"] = eps;
    body["solver"] = used;
    body["value_bits"] = result.value_bits;
    body["k_is_exact"] = result.k_is_exact;
    if (result.k_is_exact) body["k"] = result.k;
    body["log2_k"] = result.log2_k;
    body["boundary_weight"] = result.boundary_weight;
    body["boundary_fraction"] = result.boundary_fraction;
    body["retained_mass"] = result.retained_mass;
    body["shannon_bits"] = shannon.shannon_bits;
    body["asymptotic_rate"] = shannon.asymptotic_rate;
    print_json(manifest, body);
  }
  return 0;
}

int cmd_simulate(int n, double fidelity, const std::string& rounds,
                 int trials, std::uint64_t seed, const std::string& variant,
                 const std::string& mode, std::uint64_t top_k, double delta,
                 int threads, const std::string& format) {
  hashsim::SimulationConfig cfg;
  cfg.werner = {fidelity, n};
  cfg.round_counts = parse_int_range(rounds);
  cfg.trials = trials;
  cfg.variant = hashsim::variant_from_name(variant);
  if (mode == "exact-branch") {
    cfg.mode = hashsim::SimulationMode::kExactBranch;
  } else if (mode == "sampled-syndrome") {
    cfg.mode = hashsim::SimulationMode::kSampledSyndrome;
  } else {
    throw CLI::ValidationError("unknown mode '" + mode + "'");
  }
  std::string truncation = "none";
  if (top_k > 0 && delta > 0.0) {
    throw CLI::ValidationError("choose one of --truncate-top-k/--truncate-mass");
  }
  if (top_k > 0) {
    cfg.truncation = {hashsim::TruncationPolicy::Kind::kTopK, top_k, 0.0};
    truncation = "top-k=" + std::to_string(top_k);
  } else if (delta > 0.0) {
    cfg.truncation = {hashsim::TruncationPolicy::Kind::kMassBudget, 0, delta};
    truncation = "mass-delta=" + fmt(delta);
  }
  cfg.seed = seed;
  cfg.threads = threads;

  const auto result = hashsim::run_experiment(cfg);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.parameters = {{"n", std::to_string(n)},
                         {"fidelity", fmt(fidelity)},
                         {"variant", variant},
                         {"mode", mode},
                         {"rounds", join_ints(cfg.round_counts)},
                         {"trials", std::to_string(trials)},
                         {"truncation", truncation}};
  manifest.seed = seed;

  if (format == "json") {
    Json body;
    body["n"] = n;
    body["f_in"] = fidelity;
    body["variant"] = variant;
    body["mode"] = mode;
    body["trials"] = trials;
    body["eps_trunc"] = result.eps_trunc;
    Json arr = Json::array();
    for (const auto& row : result.rows) {
      Json r;
      r["rounds"] = row.rounds;
      r["mean_fidelity"] = row.mean_fidelity;
      r["std_err"] = row.std_err;
      r["reference"] = row.reference;
      r["eps_trunc"] = row.eps_trunc;
      r["f_lb"] = row.f_lb;
      arr.push_back(std::move(r));
    }
    body["rows"] = arr;
    print_json(manifest, body);
  } else {
    std::string payload =
        "n,f_in,variant,mode,rounds,trials,mean_fidelity,std_err,reference,"
        "eps_trunc,f_lb,seed\n";
    for (const auto& row : result.rows) {
      payload += std::to_string(n) + "," + fmt(fidelity) + "," + variant +
                 "," + mode + "," + std::to_string(row.rounds) + "," +
                 std::to_string(trials) + "," + fmt(row.mean_fidelity) + "," +
                 fmt(row.std_err) + "," + fmt(row.reference) + "," +
                 fmt(row.eps_trunc) + "," + fmt(row.f_lb) + "," +
                 std::to_string(seed) + "\n";
    }
    print_csv(manifest, payload);
  }
  return 0;
}

int cmd_verify_codes(const std::string& code, const std::string& variant,
                     const std::string& format) {
  const auto schedule = hashsim::builtin_schedule(code);
  const auto v = hashsim::variant_from_name(variant);
  const auto report = hashsim::verify_code(schedule, v);
  const auto table = hashsim::effective_syndrome_table(schedule, v);

  RunManifest manifest;
  manifest.command = "verify-codes";
  manifest.parameters = {{"code", code}, {"variant", variant}};

  Json body;
  body["code"] = report.code;
  body["variant"] = variant;
  body["error_classes"] = report.error_classes;
  body["syndrome_bits"] = report.syndrome_bits;
  body["distinct_syndromes"] = report.distinct_syndromes;
  body["detected"] = report.detected;
  body["corrected"] = report.corrected;
  Json collisions = Json::array();
  for (const auto& [a, b] : report.collisions) {
    collisions.push_back({hashsim::error_string_to_string(a),
                          hashsim::error_string_to_string(b)});
  }
  body["collisions"] = collisions;

  if (format != "json") {
    std::printf("%-16s %-10s %s\n", "error", "syndrome", "residual");
    for (const auto& entry : table) {
      std::string bits;
      for (int k = 0; k < report.syndrome_bits; ++k) {
        bits += ((entry.syndrome >> k) & 1) ? '1' : '0';
      }
      std::printf("%-16s %-10s %s\n",
                  hashsim::error_string_to_string(entry.error).c_str(),
                  bits.c_str(),
                  hashsim::error_string_to_string(entry.residual).c_str());
    }
    std::printf("\n");
  }
  print_json(manifest, body);
  return 0;
}

int cmd_compile(int n, bool n_given, const std::string& code,
                const std::vector<std::string>& round_texts, int random_rounds,
                std::uint64_t seed, const std::string& variant,
                bool seed_given) {
  const auto v = hashsim::variant_from_name(variant);
  std::vector<hashsim::RoundString> schedule;
  int pairs = n;
  if (!code.empty()) {
    const auto builtin = hashsim::builtin_schedule(code);
    schedule = builtin.rounds;
    pairs = builtin.pairs;
  } else if (!round_texts.empty()) {
    for (const auto& text : round_texts) {
      schedule.push_back(hashsim::round_string_from_string(text));
    }
    pairs = schedule.front().pairs;
  } else if (random_rounds > 0) {
    if (!n_given) throw CLI::ValidationError("--random needs --n");
    if (!seed_given) throw CLI::ValidationError("--random needs --seed");
    auto rng = hashsim::trial_rng(seed, 0);
    schedule = hashsim::draw_schedule(pairs, random_rounds, rng);
  } else {
    throw CLI::ValidationError("give --code, --round, or --random");
  }

  const auto items = hashsim::compile_schedule(schedule, v, pairs);

  RunManifest manifest;
  manifest.command = "compile";
  std::string rounds_text;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (k) rounds_text += ";";
    rounds_text += hashsim::round_string_to_string(schedule[k]);
  }
  manifest.parameters = {{"n", std::to_string(pairs)},
                         {"variant", variant},
                         {"rounds", rounds_text}};
  if (!code.empty()) manifest.parameters.emplace_back("code", code);
  if (random_rounds > 0) manifest.seed = seed;

  Json body;
  body["variant"] = variant;
  body["pairs"] = pairs;
  Json round_list = Json::array();
  for (const auto& s : schedule) {
    round_list.push_back(hashsim::round_string_to_string(s));
  }
  body["rounds"] = round_list;
  body["schedule"] = Json::parse(hashsim::schedule_to_json(items));
  print_json(manifest, body);
  return 0;
}

int cmd_oracle(int n, double fidelity, int rounds, int schedules,
               std::uint64_t seed, const std::string& variant) {
  const auto v = hashsim::variant_from_name(variant);
  const auto input = hashsim::werner_distribution({fidelity, n});
  double worst = 0.0;
  double worst_off_diag = 0.0;
  for (int t = 0; t < schedules; ++t) {
    auto rng = hashsim::trial_rng(seed, static_cast<std::uint64_t>(t));
    const auto schedule = hashsim::draw_schedule(n, rounds, rng);
    const auto oracle = hashsim::dm_simulate(input, schedule, v);
    const double exact = hashsim::run_trial_exact_branch(input, schedule, v);
    worst = std::max(worst, std::abs(oracle.expected_fidelity - exact));
    worst_off_diag = std::max(worst_off_diag, oracle.max_off_diagonal);
  }

  RunManifest manifest;
  manifest.command = "oracle";
  manifest.parameters = {{"n", std::to_string(n)},
                         {"fidelity", fmt(fidelity)},
                         {"rounds", std::to_string(rounds)},
                         {"schedules", std::to_string(schedules)},
                         {"variant", variant}};
  manifest.seed = seed;

  Json body;
  body["max_abs_difference"] = worst;
  body["max_off_diagonal"] = worst_off_diag;
  print_json(manifest, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Finite-size guarantees and exact simulation of the one-way "
               "hashing method for Bell-diagonal entanglement distillation"};
  app.require_subcommand(1);

  // bounds
  double fidelity = 0.9, f_out = 0.99, eps = 0.1, delta = 0.0;
  int n = 2, n_max = 1000, trials = 1, threads = 0;
  int random_rounds = 0, oracle_rounds = 1, oracle_schedules = 10;
  std::uint64_t seed = 0, top_k = 0;
  std::string eps_split = "auto", format = "json", fidelities = "0.9";
  std::string n_range = "2..10", rounds = "0", variant = "cnot";
  std::string mode = "exact-branch", solver = "auto", code;
  std::vector<std::string> round_texts;

  auto* bounds = app.add_subcommand(
      "bounds", "Finite-size yield and rate lower bound for a Werner input");
  bounds->add_option("--fidelity", fidelity, "Input pair fidelity")
      ->required();
  bounds->add_option("--n", n, "Number of input pairs")->required();
  bounds->add_option("--f-out", f_out, "Target output fidelity (sets eps)")
      ->capture_default_str();
  bounds->add_option("--eps-split", eps_split, "'auto' or explicit 'e1,e2'")
      ->capture_default_str();
  bounds->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* curve = app.add_subcommand(
      "rate-curve", "Rate lower bound over a fidelity/pair-count grid");
  curve->add_option("--fidelity", fidelities, "Comma list of input fidelities")
      ->required();
  curve->add_option("--f-out", f_out, "Target output fidelity")
      ->capture_default_str();
  curve->add_option("--n", n_range, "Pair counts: 'a..b' or comma list")
      ->required();
  curve->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("csv");

  auto* threshold = app.add_subcommand(
      "threshold", "Smallest n whose optimized bound guarantees one pair");
  threshold->add_option("--fidelity", fidelity, "Input pair fidelity")
      ->required();
  threshold->add_option("--f-out", f_out, "Target output fidelity")
      ->capture_default_str();
  threshold->add_option("--n-max", n_max, "Scan limit")->capture_default_str();
  threshold->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* entropy = app.add_subcommand(
      "entropy", "Smooth Hartley entropy of an i.i.d. Werner ensemble");
  entropy->add_option("--fidelity", fidelity, "Input pair fidelity")
      ->required();
  entropy->add_option("--n", n, "Number of pairs")->required();
  entropy->add_option("--eps", eps, "Smoothing parameter")->required();
  entropy->add_option("--solver", solver, "auto, werner, or generic")
      ->check(CLI::IsMember({"auto", "werner", "generic"}))
      ->capture_default_str();
  entropy->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo over schedules with exact per-schedule value");
  simulate->add_option("--n", n, "Number of input pairs")->required();
  simulate->add_option("--fidelity", fidelity, "Input pair fidelity")
      ->required();
  simulate->add_option("--rounds", rounds, "Report depths: 'a..b' or list")
      ->required();
  simulate->add_option("--trials", trials, "Schedules to sample")->required();
  simulate->add_option("--seed", seed, "RNG seed (required)")->required();
  simulate->add_option("--variant", variant, "cnot or cz")
      ->check(CLI::IsMember({"cnot", "cz"}))
      ->capture_default_str();
  simulate->add_option("--mode", mode, "exact-branch or sampled-syndrome")
      ->check(CLI::IsMember({"exact-branch", "sampled-syndrome"}))
      ->capture_default_str();
  simulate->add_option("--truncate-top-k", top_k,
                       "Keep only this many highest-weight strings");
  simulate->add_option("--truncate-mass", delta,
                       "Keep the minimal top set with mass >= 1 - delta");
  simulate->add_option("--threads", threads,
                       "Worker threads (0: HASHSIM_THREADS or hardware)");
  simulate->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("csv");

  auto* verify = app.add_subcommand(
      "verify-codes", "Exhaustive syndrome check of a built-in schedule");
  verify->add_option("--code", code, "n5-correct or n4-detect")->required();
  verify->add_option("--variant", variant, "cnot or cz")
      ->check(CLI::IsMember({"cnot", "cz"}))
      ->capture_default_str();
  verify->add_option("--format", format, "text (table + json) or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->default_val("text");

  auto* compile = app.add_subcommand(
      "compile", "Emit the gate schedule for a multi-round run as JSON");
  auto* compile_n =
      compile->add_option("--n", n, "Number of input pairs (with --random)");
  compile->add_option("--code", code, "Compile a built-in schedule");
  compile->add_option("--round", round_texts,
                      "Round string like '01 11 10' (repeatable)");
  compile->add_option("--random", random_rounds,
                      "Draw this many random rounds (needs --n and --seed)");
  auto* compile_seed = compile->add_option("--seed", seed, "RNG seed");
  compile->add_option("--variant", variant, "cnot or cz")
      ->check(CLI::IsMember({"cnot", "cz"}))
      ->capture_default_str();

  auto* oracle = app.add_subcommand(
      "oracle", "Compare exact-branch values against the density-matrix "
                "simulation (n <= 3)");
  oracle->group("");  // debugging tool, hidden from help
  oracle->add_option("--n", n)->required();
  oracle->add_option("--fidelity", fidelity)->required();
  oracle->add_option("--rounds", oracle_rounds)->capture_default_str();
  oracle->add_option("--schedules", oracle_schedules)->capture_default_str();
  oracle->add_option("--seed", seed)->required();
  oracle->add_option("--variant", variant)
      ->check(CLI::IsMember({"cnot", "cz"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) {
      return cmd_bounds(fidelity, n, f_out, eps_split, format);
    }
    if (curve->parsed()) {
      return cmd_rate_curve(fidelities, f_out, n_range, format);
    }
    if (threshold->parsed()) {
      return cmd_threshold(fidelity, f_out, n_max, format);
    }
    if (entropy->parsed()) {
      return cmd_entropy(fidelity, n, eps, solver, format);
    }
    if (simulate->parsed()) {
      return cmd_simulate(n, fidelity, rounds, trials, seed, variant, mode,
                          top_k, delta, threads, format);
    }
    if (verify->parsed()) {
      return cmd_verify_codes(code, variant, format);
    }
    if (compile->parsed()) {
      return cmd_compile(n, compile_n->count() > 0, code, round_texts,
                         random_rounds, seed, variant,
                         compile_seed->count() > 0);
    }
    if (oracle->parsed()) {
      return cmd_oracle(n, fidelity, oracle_rounds, oracle_schedules, seed,
                        variant);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
