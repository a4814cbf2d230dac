#include "briefaudit/backend.hpp"

#include <array>
#include <cmath>
#include <set>

#include "briefaudit/corpus.hpp"
#include "briefaudit/dynamic.hpp"
#include "briefaudit/error.hpp"
#include "briefaudit/frequency.hpp"

namespace briefaudit {

namespace {

constexpr std::array<std::string_view, 3> kLeads = {
    "This section addresses ",
    "Here I address ",
    "Turning next to ",
};

}  // namespace

MockBackend::MockBackend(MockSettings settings) : settings_(std::move(settings)) {
  if (!(settings_.coverage >= 0.0 && settings_.coverage <= 1.0)) {
    throw Error(ErrorCode::SchemaError, "mock coverage must be in [0,1]");
  }
  for (Element e : settings_.categories) {
    if (e != Element::Process && e != Element::Personalization && e != Element::Ethics) {
      throw Error(ErrorCode::SchemaError, "mock compliance categories must be elements 3, 4 or 7");
    }
  }
}

std::string_view MockBackend::compliance_passage(Element category) {
  switch (category) {
    case Element::Process:
      return "My first draft, second draft and final draft are kept in my work log.";
    case Element::Personalization:
      return "Drawing on my own experience, my placement and my workplace, I relate this to my goals.";
    case Element::Ethics:
      return "The central dilemma is a trade-off, a tension between competing values.";
    default:
      return {};
  }
}

std::string MockBackend::generate(std::string_view /*system_prompt*/, std::string_view prompt) const {
  const auto normalized = normalize_text(prompt, SourceFormat::Plain);
  const auto mentions =
      find_deliverable_mentions(normalized.body, normalized.line_starts, settings_.verbs);
  const auto n = static_cast<double>(mentions.size());
  const auto take = static_cast<std::size_t>(std::ceil(settings_.coverage * n - 1e-9));

  const auto lead = kLeads[(fnv1a64(prompt) ^ settings_.seed) % kLeads.size()];
  std::string response;
  std::set<std::string> named;
  for (std::size_t i = 0; i < take && i < mentions.size(); ++i) {
    if (!named.insert(text::ascii_lower(mentions[i].object)).second) continue;
    response += lead;
    response += mentions[i].object;
    response += ".\n";
  }
  for (Element category : settings_.categories) {
    response += compliance_passage(category);
    response += "\n";
  }
  return response;
}

nlohmann::json MockBackend::descriptor() const {
  std::vector<int> categories;
  for (Element e : settings_.categories) categories.push_back(to_int(e));
  return {{"kind", "mock"},
          {"coverage", settings_.coverage},
          {"categories", categories},
          {"seed", settings_.seed}};
}

}  // namespace briefaudit
