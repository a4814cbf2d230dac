#include "briefaudit/dynamic.hpp"

#include "briefaudit/error.hpp"

namespace briefaudit {

namespace {

// Template v1. Changing any of these strings requires a new kTemplateVersion.
constexpr std::string_view kSystemPrompt = "You are a university student completing a written assessment.";
constexpr std::string_view kInstruction =
    "Complete the following assessment as a student would, producing the full submission.\n\n"
    "Assessment brief:\n";
constexpr std::string_view kMaterialsHeader = "\n\nMaterials provided:\n";
constexpr std::string_view kRevisionLead = "\n\nYour previous answer did not address: ";
constexpr std::string_view kRevisionTail = ". Revise to address them.";
constexpr std::string_view kRefineClause =
    "\n\nYour previous answer addressed every task. Refine it further.";

}  // namespace

std::string_view system_prompt() { return kSystemPrompt; }

std::string body_with_line_breaks(const AssessmentBrief& brief) {
  std::string out = brief.body;
  for (std::size_t start : brief.line_starts) {
    if (start > 0 && start <= out.size() && out[start - 1] == ' ') out[start - 1] = '\n';
  }
  return out;
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::SingleShot: return "single_shot";
    case StrategyKind::Iterative: return "iterative";
    case StrategyKind::ContextInjection: return "context_injection";
  }
  return "single_shot";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "single_shot") return StrategyKind::SingleShot;
  if (name == "iterative") return StrategyKind::Iterative;
  if (name == "context_injection") return StrategyKind::ContextInjection;
  throw Error(ErrorCode::SchemaError, "unknown strategy '" + std::string(name) + "'");
}

std::string AttackStrategy::description() const {
  switch (kind) {
    case StrategyKind::SingleShot:
      return "One prompt containing the brief.";
    case StrategyKind::Iterative:
      return std::to_string(rounds) + " rounds; each revision names the deliverables the previous answer missed.";
    case StrategyKind::ContextInjection:
      return "One prompt with the provided course materials pasted after the brief.";
  }
  return {};
}

void AttackStrategy::validate(int max_rounds) const {
  if (kind == StrategyKind::Iterative) {
    if (rounds < 2) throw Error(ErrorCode::SchemaError, "iterative strategy needs at least 2 rounds");
    if (rounds > max_rounds) {
      throw Error(ErrorCode::SchemaError, "iterative rounds " + std::to_string(rounds) +
                                              " exceed the maximum of " + std::to_string(max_rounds));
    }
  } else if (rounds != 1) {
    throw Error(ErrorCode::SchemaError, std::string(to_string(kind)) + " strategy runs exactly one round");
  }
}

std::string build_prompt(const AssessmentBrief& brief, const AttackStrategy& strategy, int round_index,
                         std::span<const std::string> prior_gaps,
                         std::span<const ResourceDescriptor> resources, std::size_t budget) {
  if (round_index < 1 || round_index > strategy.rounds) {
    throw Error(ErrorCode::InvalidArgument, "round index out of range for strategy");
  }
  if (round_index == 1 && !prior_gaps.empty()) {
    throw Error(ErrorCode::InvalidArgument, "the first round has no prior gaps");
  }
  std::string prompt(kInstruction);
  prompt += body_with_line_breaks(brief);

  if (strategy.kind == StrategyKind::ContextInjection && !resources.empty()) {
    prompt += kMaterialsHeader;
    for (const auto& resource : resources) {
      prompt += "- " + resource.label + ":\n";
      if (resource.body) prompt += text::trim(*resource.body) + "\n";
    }
  }

  if (round_index > 1) {
    if (prior_gaps.empty()) {
      prompt += kRefineClause;
    } else {
      prompt += kRevisionLead;
      for (std::size_t i = 0; i < prior_gaps.size(); ++i) {
        if (i > 0) prompt += "; ";
        prompt += prior_gaps[i];
      }
      prompt += kRevisionTail;
    }
  }

  if (prompt.size() > budget) {
    throw Error(ErrorCode::PromptTooLarge, "prompt of " + std::to_string(prompt.size()) +
                                               " bytes exceeds the budget of " + std::to_string(budget));
  }
  return prompt;
}

}  // namespace briefaudit
