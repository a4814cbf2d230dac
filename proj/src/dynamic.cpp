#include "briefaudit/dynamic.hpp"

#include <algorithm>
#include <future>
#include <semaphore>

#include "briefaudit/error.hpp"

namespace briefaudit {

namespace {

using Semaphore = std::counting_semaphore<64>;

class SemaphoreGuard {
 public:
  explicit SemaphoreGuard(Semaphore& s) : s_(s) { s_.acquire(); }
  ~SemaphoreGuard() { s_.release(); }
  SemaphoreGuard(const SemaphoreGuard&) = delete;
  SemaphoreGuard& operator=(const SemaphoreGuard&) = delete;

 private:
  Semaphore& s_;
};

Attempt run_attempt(const AssessmentBrief& brief, const StaticProfile& profile,
                    const std::vector<Deliverable>& deliverables, const DynamicConfig& config,
                    const GeneratorBackend& backend, const AttackStrategy& strategy) {
  Attempt attempt;
  attempt.strategy = strategy;
  try {
    strategy.validate(config.max_rounds);
    const auto resources = strategy.kind == StrategyKind::ContextInjection
                               ? std::span<const ResourceDescriptor>(brief.context.provided_resources)
                               : std::span<const ResourceDescriptor>();
    std::vector<std::string> gaps;
    bool have_best = false;
    for (int round = 1; round <= strategy.rounds; ++round) {
      TranscriptRound entry;
      entry.prompt = build_prompt(brief, strategy, round, gaps, resources, config.prompt_budget);
      entry.response = backend.generate(system_prompt(), entry.prompt);
      auto rubric = evaluate_response(brief, deliverables, profile, entry.response,
                                      brief.context.knowledge_cutoff, config.rubric);
      gaps = rubric.gaps;
      if (!have_best || rubric.exploit > attempt.rubric.exploit) {
        attempt.rubric = std::move(rubric);
        attempt.final_response = entry.response;
        attempt.best_round = round;
        have_best = true;
      }
      attempt.transcript.push_back(std::move(entry));
    }
    attempt.exploit = attempt.rubric.exploit;
  } catch (const std::exception& e) {
    attempt.error = e.what();
    attempt.exploit = 0.0;
  }
  return attempt;
}

}  // namespace

ExploitResult run_dynamic(const AssessmentBrief& brief, const StaticProfile& profile,
                          const DynamicConfig& config, const GeneratorBackend& backend) {
  if (config.strategies.empty()) {
    throw Error(ErrorCode::InvalidArgument, "dynamic testing needs at least one strategy");
  }
  const auto deliverables = extract_deliverables(brief, config.verbs);
  const auto limit = static_cast<std::ptrdiff_t>(
      std::clamp<std::size_t>(std::min(config.concurrency_limit, backend.max_concurrency()), 1, 64));
  Semaphore slots(limit);

  std::vector<std::future<Attempt>> pending;
  pending.reserve(config.strategies.size());
  for (const auto& strategy : config.strategies) {
    pending.push_back(std::async(std::launch::async, [&, strategy] {
      SemaphoreGuard guard(slots);
      return run_attempt(brief, profile, deliverables, config, backend, strategy);
    }));
  }

  ExploitResult result;
  result.backend = backend.descriptor();
  double sum = 0.0;
  for (auto& f : pending) {
    result.attempts.push_back(f.get());
    sum += result.attempts.back().exploit;
    result.exploit_max = std::max(result.exploit_max, result.attempts.back().exploit);
  }
  result.exploit_mean = sum / static_cast<double>(result.attempts.size());
  return result;
}

}  // namespace briefaudit
