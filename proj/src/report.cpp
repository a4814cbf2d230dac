#include "briefaudit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "briefaudit/text.hpp"

namespace briefaudit {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

// Table cells: no raw pipes or line breaks.
std::string cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string strategy_label(const AttackStrategy& s) {
  std::string label(to_string(s.kind));
  if (s.kind == StrategyKind::Iterative) label += " (" + std::to_string(s.rounds) + " rounds)";
  return label;
}

}  // namespace

std::vector<std::string> collect_notes(const AssessmentBrief& brief, const StaticProfile& profile,
                                       const std::optional<ExploitResult>& exploit) {
  std::vector<std::string> notes;
  if (brief.context.temporal_analysis_vacuous()) {
    notes.push_back("temporal analysis is vacuous: delivery date " + brief.context.delivery_date->iso() +
                    " precedes the knowledge cutoff " + profile.knowledge_cutoff.iso());
  }
  const auto& reference = profile.at(Element::Temporal).signals[0];
  if (reference.years && reference.years->years.empty()) {
    notes.push_back("no years mentioned; reference recency is 0");
  }
  if (!exploit) return notes;

  std::set<std::string> infeasible;
  for (const auto& attempt : exploit->attempts) {
    const auto label = strategy_label(attempt.strategy);
    if (attempt.error) notes.push_back(label + " attempt failed: " + *attempt.error);
    if (!attempt.rubric.fabricated_years.empty()) {
      notes.push_back(label + " response cites years after the knowledge cutoff: " +
                      join_ints(attempt.rubric.fabricated_years));
    }
    infeasible.insert(attempt.rubric.infeasible.begin(), attempt.rubric.infeasible.end());
  }
  for (const auto& d : infeasible) notes.push_back("deliverable not attemptable in text: " + d);
  return notes;
}

std::vector<std::string> standard_caveats(bool dynamic_ran) {
  std::vector<std::string> caveats = {
      "Static signals are lexical proxies for design features; a high score means the brief lacks "
      "detectable cues, not that it is unsound.",
      "Scores are relative to the bundled rule set and frequency table recorded in the config echo.",
  };
  if (dynamic_ran) {
    caveats.push_back(
        "The exploitation rubric is an operationalization: it checks that deliverables are addressed "
        "and cues simulated, not the quality of the generated work.");
  }
  return caveats;
}

std::string emit_markdown(const Report& r) {
  std::ostringstream out;
  const auto& c = r.composite;
  out << "# " << r.brief_id << ": " << to_upper(c.classification) << " (fused " << fixed(c.fused, 2) << ")\n\n";
  if (!r.brief_title.empty()) out << "*" << r.brief_title << "*\n\n";
  out << "- Static composite: " << fixed(c.v_static, 2);
  if (c.v_static_adjusted != c.v_static) out << " (synergy-adjusted " << fixed(c.v_static_adjusted, 2) << ")";
  out << "\n";
  if (c.v_dynamic) out << "- Dynamic: " << fixed(*c.v_dynamic, 2) << "\n";
  if (c.borderline) out << "- Borderline: within " << fixed(r.config.thresholds.tolerance, 2)
                        << " of a threshold\n";
  if (c.floor_applied) out << "- Exploit floor applied: green is not available\n";
  out << "- Words: " << r.word_count << "\n\n";

  out << "## Elements\n\n";
  out << "| # | Element | r | v | Evidence |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& score : r.static_profile.elements) {
    std::vector<std::string> snippets;
    for (const auto& s : score.signals) {
      for (const auto& m : s.matches) {
        if (snippets.size() == 3) break;
        snippets.push_back("\"" + cell(text::truncate_chars(m.matched_text, kSnippetChars)) + "\"");
      }
    }
    std::string evidence;
    for (std::size_t i = 0; i < snippets.size(); ++i) evidence += (i ? ", " : "") + snippets[i];
    if (evidence.empty()) evidence = "—";
    out << "| " << to_int(score.element) << " | " << element_info(score.element).short_name << " | "
        << fixed(score.resilience, 2) << " | " << fixed(score.vulnerability, 2) << " | " << evidence << " |\n";
  }

  if (r.exploit_result) {
    const auto& x = *r.exploit_result;
    out << "\n## Dynamic findings\n\n";
    out << "exploit_max " << fixed(x.exploit_max, 2) << ", exploit_mean " << fixed(x.exploit_mean, 2) << "\n\n";
    for (const auto& a : x.attempts) {
      out << "### " << strategy_label(a.strategy) << "\n\n" << a.strategy.description() << "\n\n";
      if (a.error) {
        out << "Failed: " << *a.error << "\n\n";
        continue;
      }
      out << "- exploit " << fixed(a.exploit, 2) << " (coverage " << fixed(a.rubric.coverage, 2)
          << ", simulated compliance " << fixed(a.rubric.simulated_compliance, 2) << ")\n";
      out << "- best round " << a.best_round << " of " << a.transcript.size() << "\n";
      if (!a.rubric.gaps.empty()) {
        out << "- gaps:";
        for (const auto& g : a.rubric.gaps) out << " " << g << ";";
        out << "\n";
      }
      out << "\n";
    }
  }

  out << "\n## Notes\n\n";
  if (r.notes.empty()) out << "None.\n";
  for (const auto& n : r.notes) out << "- " << n << "\n";
  if (!r.caveats.empty()) {
    out << "\n## Caveats\n\n";
    for (const auto& cv : r.caveats) out << cv << "\n\n";
  }
  return out.str();
}

std::string rank_portfolio(std::span<const Report> reports, std::span<const PortfolioFailure> failures) {
  std::vector<const Report*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const Report* a, const Report* b) {
    if (a->composite.fused != b->composite.fused) return a->composite.fused > b->composite.fused;
    return a->brief_id < b->brief_id;
  });
  const bool with_notes = !failures.empty();

  std::string out = "brief_id,fused,classification,v_static,v_dynamic";
  out += with_notes ? ",notes\r\n" : "\r\n";
  for (const Report* r : order) {
    const auto& c = r->composite;
    out += csv_field(r->brief_id) + "," + fixed(c.fused, 2) + "," + std::string(to_string(c.classification)) +
           "," + fixed(c.v_static_adjusted, 2) + "," + (c.v_dynamic ? fixed(*c.v_dynamic, 2) : "");
    out += with_notes ? ",\r\n" : "\r\n";
  }
  std::vector<PortfolioFailure> failed(failures.begin(), failures.end());
  std::sort(failed.begin(), failed.end(), [](const auto& a, const auto& b) { return a.brief_id < b.brief_id; });
  for (const auto& f : failed) out += csv_field(f.brief_id) + ",,error,,," + csv_field(f.message) + "\r\n";
  return out;
}

}  // namespace briefaudit
