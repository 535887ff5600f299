#include "hashsim/codes.hpp"

#include <map>
#include <stdexcept>

#include "hashsim/simulator.hpp"

namespace hashsim {

namespace {

FixedSchedule make_schedule(std::string name, FixedSchedule::Mode mode,
                            std::vector<std::string> round_texts) {
  FixedSchedule s;
  s.name = std::move(name);
  s.mode = mode;
  for (auto& text : round_texts) {
    s.rounds.push_back(round_string_from_string(text));
  }
  s.pairs = s.rounds.front().pairs;
  return s;
}

void check_schedule_shape(const FixedSchedule& s) {
  if (s.rounds.empty() || s.pairs < 2 ||
      static_cast<int>(s.rounds.size()) >= s.pairs) {
    throw std::invalid_argument("schedule must keep at least one pair");
  }
  for (std::size_t k = 0; k < s.rounds.size(); ++k) {
    if (s.rounds[k].pairs != s.pairs - static_cast<int>(k)) {
      throw std::invalid_argument("round " + std::to_string(k + 1) +
                                  " sized for the wrong number of live pairs");
    }
    if (s.rounds[k].bits == 0) {
      throw std::invalid_argument("round strings must be nonzero");
    }
  }
}

}  // namespace

FixedSchedule builtin_schedule(const std::string& name) {
  if (name == "n5-correct") {
    return make_schedule("n5-correct", FixedSchedule::Mode::kCorrect,
                         {"01 01 01 01 00", "10 10 10 00", "01 11 01",
                          "01 10"});
  }
  if (name == "n4-detect") {
    return make_schedule("n4-detect", FixedSchedule::Mode::kDetect,
                         {"11 11 11 11", "11 11 11"});
  }
  throw std::invalid_argument("unknown schedule: " + name);
}

std::vector<std::string> builtin_schedule_names() {
  return {"n5-correct", "n4-detect"};
}

std::vector<ErrorString> first_order_errors(int pairs) {
  if (pairs < 1 || pairs > kMaxPairs) {
    throw std::invalid_argument("pair count out of range");
  }
  std::vector<ErrorString> out;
  out.reserve(1 + 3 * pairs);
  out.emplace_back(pairs, 0);
  for (int j = 0; j < pairs; ++j) {
    for (PauliLabel l = 1; l <= 3; ++l) {
      ErrorString e(pairs, 0);
      e.set_label(j, l);
      out.push_back(e);
    }
  }
  return out;
}

std::vector<SyndromeEntry> effective_syndrome_table(
    const FixedSchedule& schedule, Variant variant,
    const std::vector<ErrorString>& errors) {
  check_schedule_shape(schedule);
  std::vector<SyndromeEntry> table;
  table.reserve(errors.size());
  for (const ErrorString& e : errors) {
    if (e.pairs != schedule.pairs) {
      throw std::invalid_argument("error sized for a different schedule");
    }
    SyndromeEntry entry;
    entry.error = e;
    ErrorString x = e;
    for (std::size_t k = 0; k < schedule.rounds.size(); ++k) {
      const RoundOutcome outcome = apply_round(x, schedule.rounds[k], variant);
      entry.syndrome |= static_cast<std::uint32_t>(outcome.parity) << k;
      x = outcome.survivor;
    }
    entry.residual = x;
    table.push_back(entry);
  }
  return table;
}

std::vector<SyndromeEntry> effective_syndrome_table(
    const FixedSchedule& schedule, Variant variant) {
  return effective_syndrome_table(schedule, variant,
                                  first_order_errors(schedule.pairs));
}

CodeReport verify_code(const FixedSchedule& schedule, Variant variant) {
  const auto table = effective_syndrome_table(schedule, variant);

  CodeReport report;
  report.code = schedule.name;
  report.error_classes = static_cast<int>(table.size());
  report.syndrome_bits = static_cast<int>(schedule.rounds.size());

  // Decoder: the first class listed for a syndrome wins. The error set puts
  // the identity first and weights all weight-1 classes equally, so this is
  // maximum-posterior decoding for any i.i.d. symmetric single-pair noise.
  std::map<std::uint32_t, const SyndromeEntry*> decoder;
  for (const auto& entry : table) {
    auto [it, inserted] = decoder.emplace(entry.syndrome, &entry);
    if (!inserted) {
      report.collisions.emplace_back(it->second->error, entry.error);
    }
  }
  report.distinct_syndromes = static_cast<int>(decoder.size());

  for (const auto& entry : table) {
    if (entry.error.bits != 0 && entry.syndrome != 0) ++report.detected;
    if (decoder.at(entry.syndrome)->residual == entry.residual) {
      ++report.corrected;
    }
  }
  return report;
}

PostselectionResult postselected_fidelity(const FixedSchedule& schedule,
                                          double fidelity, Variant variant) {
  check_schedule_shape(schedule);
  if (!(fidelity > 0.25) || !(fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in (0.25, 1]");
  }
  const BellDiagonalDistribution input =
      werner_distribution({fidelity, schedule.pairs});
  const std::vector<int> zeros(schedule.rounds.size(), 0);
  const BranchPosterior branch =
      conditioned_posterior(input, schedule.rounds, variant, zeros);

  PostselectionResult out;
  out.acceptance_probability = branch.probability;
  out.conditional_fidelity =
      branch.probability > 0.0 ? branch.weights[0] / branch.probability : 0.0;
  return out;
}

}  // namespace hashsim
