#include "briefaudit/report.hpp"

#include <cmath>
#include <cstdio>

#include "briefaudit/error.hpp"

namespace briefaudit {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical serialization

namespace {

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

void dump(const json& value, std::string& out) {
  switch (value.type()) {
    case json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out.push_back(',');
        first = false;
        out += json(key).dump();
        out.push_back(':');
        dump(item, out);
      }
      out.push_back('}');
      break;
    }
    case json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : value) {
        if (!first) out.push_back(',');
        first = false;
        dump(item, out);
      }
      out.push_back(']');
      break;
    }
    case json::value_t::number_float:
      out += format_number(value.get<double>());
      break;
    default:
      out += value.dump();
      break;
  }
}

json span_json(const text::Span& s) { return {{"start", s.begin}, {"end", s.end}}; }

json match_json(const MatchRecord& m) {
  return {{"rule_id", m.rule_id}, {"start", m.span.begin}, {"end", m.span.end}, {"text", m.matched_text}};
}

MatchRecord match_from(const json& j) {
  return {j.at("rule_id").get<std::string>(),
          {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()},
          j.at("text").get<std::string>()};
}

std::string_view method_name(SignalMethod m) {
  switch (m) {
    case SignalMethod::Keyword: return "keyword";
    case SignalMethod::Rarity: return "rarity";
    case SignalMethod::Years: return "years";
  }
  return "keyword";
}

SignalMethod method_from(std::string_view name) {
  if (name == "keyword") return SignalMethod::Keyword;
  if (name == "rarity") return SignalMethod::Rarity;
  if (name == "years") return SignalMethod::Years;
  throw Error(ErrorCode::SchemaError, "unknown signal method '" + std::string(name) + "'");
}

json signal_json(const SubDimensionSignal& s) {
  json j = {{"dimension", element_info(s.dimension.element).dimensions[s.dimension.index].key},
            {"method", method_name(s.method)},
            {"signal", s.signal}};
  if (s.method == SignalMethod::Keyword) {
    j["positive_weight"] = s.positive_weight;
    j["negative_weight"] = s.negative_weight;
    j["k_pos"] = s.k_pos;
    j["k_neg"] = s.k_neg;
    j["beta"] = s.beta;
    j["matches"] = json::array();
    for (const auto& m : s.matches) j["matches"].push_back(match_json(m));
  }
  if (s.rarity) {
    j["rarity"] = {{"rare", s.rarity->rare},
                   {"eligible", s.rarity->eligible},
                   {"ratio", s.rarity->ratio},
                   {"rank_threshold", s.rarity->rank_threshold},
                   {"saturation", s.rarity->saturation}};
  }
  if (s.years) j["years"] = {{"years", s.years->years}, {"cutoff_year", s.years->cutoff_year}};
  return j;
}

SubDimensionSignal signal_from(const json& j, Element e) {
  SubDimensionSignal s;
  const auto key = j.at("dimension").get<std::string>();
  auto idx = dimension_index(e, key);
  if (!idx) throw Error(ErrorCode::SchemaError, "unknown dimension '" + key + "'");
  s.dimension = {e, *idx};
  s.method = method_from(j.at("method").get<std::string>());
  s.signal = j.at("signal").get<double>();
  if (s.method == SignalMethod::Keyword) {
    s.positive_weight = j.at("positive_weight").get<double>();
    s.negative_weight = j.at("negative_weight").get<double>();
    s.k_pos = j.at("k_pos").get<double>();
    s.k_neg = j.at("k_neg").get<double>();
    s.beta = j.at("beta").get<double>();
    for (const auto& m : j.at("matches")) s.matches.push_back(match_from(m));
  }
  if (j.contains("rarity")) {
    const auto& r = j.at("rarity");
    s.rarity = RarityEvidence{r.at("rare").get<std::size_t>(), r.at("eligible").get<std::size_t>(),
                              r.at("ratio").get<double>(), r.at("rank_threshold").get<int>(),
                              r.at("saturation").get<double>()};
  }
  if (j.contains("years")) {
    s.years = YearEvidence{j.at("years").at("years").get<std::vector<int>>(),
                           j.at("years").at("cutoff_year").get<int>()};
  }
  return s;
}

json profile_json(const StaticProfile& p) {
  json elements = json::array();
  for (const auto& score : p.elements) {
    json signals = json::array();
    for (const auto& s : score.signals) signals.push_back(signal_json(s));
    elements.push_back({{"element", to_int(score.element)},
                        {"name", element_info(score.element).name},
                        {"resilience", score.resilience},
                        {"vulnerability", score.vulnerability},
                        {"signals", signals}});
  }
  return {{"brief_id", p.brief_id},
          {"ruleset_version", p.ruleset_version},
          {"freq_table_id", p.freq_table_id},
          {"knowledge_cutoff", p.knowledge_cutoff.iso()},
          {"elements", elements}};
}

StaticProfile profile_from(const json& j) {
  StaticProfile p;
  p.brief_id = j.at("brief_id").get<std::string>();
  p.ruleset_version = j.at("ruleset_version").get<int>();
  p.freq_table_id = j.at("freq_table_id").get<std::string>();
  p.knowledge_cutoff = Date::parse(j.at("knowledge_cutoff").get<std::string>());
  const auto& elements = j.at("elements");
  if (elements.size() != kElementCount) throw Error(ErrorCode::SchemaError, "profile needs 8 elements");
  for (std::size_t i = 0; i < kElementCount; ++i) {
    const auto& ej = elements.at(i);
    auto e = element_from_int(ej.at("element").get<int>());
    if (!e || index_of(*e) != i) throw Error(ErrorCode::SchemaError, "elements out of catalog order");
    auto& score = p.elements[i];
    score.element = *e;
    score.resilience = ej.at("resilience").get<double>();
    score.vulnerability = ej.at("vulnerability").get<double>();
    const auto& signals = ej.at("signals");
    if (signals.size() != kDimensionsPerElement) throw Error(ErrorCode::SchemaError, "need 3 signals");
    for (std::size_t d = 0; d < kDimensionsPerElement; ++d) score.signals[d] = signal_from(signals.at(d), *e);
  }
  return p;
}

json rubric_json(const RubricResult& r) {
  return {{"coverage", r.coverage},
          {"simulated_compliance", r.simulated_compliance},
          {"exploit", r.exploit},
          {"covered", r.covered},
          {"gaps", r.gaps},
          {"infeasible", r.infeasible},
          {"demanded_categories", r.demanded_categories},
          {"simulated_categories", r.simulated_categories},
          {"fabricated_years", r.fabricated_years}};
}

RubricResult rubric_from(const json& j) {
  RubricResult r;
  r.coverage = j.at("coverage").get<double>();
  r.simulated_compliance = j.at("simulated_compliance").get<double>();
  r.exploit = j.at("exploit").get<double>();
  r.covered = j.at("covered").get<std::vector<std::string>>();
  r.gaps = j.at("gaps").get<std::vector<std::string>>();
  r.infeasible = j.at("infeasible").get<std::vector<std::string>>();
  r.demanded_categories = j.at("demanded_categories").get<std::vector<int>>();
  r.simulated_categories = j.at("simulated_categories").get<std::vector<int>>();
  r.fabricated_years = j.at("fabricated_years").get<std::vector<int>>();
  return r;
}

json exploit_json(const ExploitResult& x) {
  json attempts = json::array();
  for (const auto& a : x.attempts) {
    json transcript = json::array();
    for (const auto& round : a.transcript) {
      transcript.push_back({{"prompt", round.prompt}, {"response", round.response}});
    }
    json aj = {{"strategy",
                {{"kind", to_string(a.strategy.kind)},
                 {"rounds", a.strategy.rounds},
                 {"description", a.strategy.description()}}},
               {"template_version", a.template_version},
               {"transcript", transcript},
               {"final_response", a.final_response},
               {"best_round", a.best_round},
               {"rubric", rubric_json(a.rubric)},
               {"exploit", a.exploit}};
    if (a.error) aj["error"] = *a.error;
    attempts.push_back(std::move(aj));
  }
  return {{"attempts", attempts},
          {"exploit_max", x.exploit_max},
          {"exploit_mean", x.exploit_mean},
          {"backend", x.backend},
          {"template_version", x.template_version}};
}

ExploitResult exploit_from(const json& j) {
  ExploitResult x;
  x.exploit_max = j.at("exploit_max").get<double>();
  x.exploit_mean = j.at("exploit_mean").get<double>();
  x.backend = j.at("backend");
  x.template_version = j.at("template_version").get<std::string>();
  for (const auto& aj : j.at("attempts")) {
    Attempt a;
    a.strategy.kind = parse_strategy_kind(aj.at("strategy").at("kind").get<std::string>());
    a.strategy.rounds = aj.at("strategy").at("rounds").get<int>();
    a.template_version = aj.at("template_version").get<std::string>();
    for (const auto& r : aj.at("transcript")) {
      a.transcript.push_back({r.at("prompt").get<std::string>(), r.at("response").get<std::string>()});
    }
    a.final_response = aj.at("final_response").get<std::string>();
    a.best_round = aj.at("best_round").get<int>();
    a.rubric = rubric_from(aj.at("rubric"));
    a.exploit = aj.at("exploit").get<double>();
    if (aj.contains("error")) a.error = aj.at("error").get<std::string>();
    x.attempts.push_back(std::move(a));
  }
  return x;
}

json config_json(const ConfigEcho& c) {
  json weights = json::object();
  for (Element e : kAllElements) weights[std::to_string(to_int(e))] = c.weights[e];
  json synergies = json::array();
  for (const auto& s : c.synergies) {
    synergies.push_back({{"a", to_int(s.a)}, {"b", to_int(s.b)}, {"gamma", s.gamma}});
  }
  return {{"weights", {{"kind", to_string(c.weights.kind)}, {"values", weights}}},
          {"synergies", synergies},
          {"thresholds",
           {{"green_below", c.thresholds.green_below},
            {"red_at_or_above", c.thresholds.red_at_or_above},
            {"tolerance", c.thresholds.tolerance},
            {"version", c.thresholds.version}}},
          {"knowledge_cutoff", c.knowledge_cutoff.iso()},
          {"ruleset_version", c.ruleset_version},
          {"freq_table_id", c.freq_table_id},
          {"template_version", c.template_version},
          {"alpha", c.alpha},
          {"floor_exploit", c.floor_exploit},
          {"rank_threshold", c.rank_threshold}};
}

Element element_at(const json& j) {
  auto e = element_from_int(j.get<int>());
  if (!e) throw Error(ErrorCode::SchemaError, "element must be 1..8");
  return *e;
}

ConfigEcho config_from(const json& j) {
  ConfigEcho c;
  const auto& w = j.at("weights");
  c.weights.kind = w.at("kind").get<std::string>() == "uniform" ? WeightKind::Uniform : WeightKind::Configured;
  for (Element e : kAllElements) c.weights.weights[index_of(e)] = w.at("values").at(std::to_string(to_int(e))).get<double>();
  for (const auto& s : j.at("synergies")) {
    c.synergies.push_back({element_at(s.at("a")), element_at(s.at("b")), s.at("gamma").get<double>()});
  }
  const auto& t = j.at("thresholds");
  c.thresholds = {t.at("green_below").get<double>(), t.at("red_at_or_above").get<double>(),
                  t.at("tolerance").get<double>(), t.at("version").get<std::string>()};
  c.knowledge_cutoff = Date::parse(j.at("knowledge_cutoff").get<std::string>());
  c.ruleset_version = j.at("ruleset_version").get<int>();
  c.freq_table_id = j.at("freq_table_id").get<std::string>();
  c.template_version = j.at("template_version").get<std::string>();
  c.alpha = j.at("alpha").get<double>();
  c.floor_exploit = j.at("floor_exploit").get<double>();
  c.rank_threshold = j.at("rank_threshold").get<int>();
  return c;
}

json composite_json(const CompositeScore& s) {
  json j = {{"v_static", s.v_static},
            {"v_static_adjusted", s.v_static_adjusted},
            {"fused", s.fused},
            {"classification", to_string(s.classification)},
            {"borderline", s.borderline},
            {"floor_applied", s.floor_applied}};
  if (s.v_dynamic) j["v_dynamic"] = *s.v_dynamic;
  return j;
}

CompositeScore composite_from(const json& j) {
  CompositeScore s;
  s.v_static = j.at("v_static").get<double>();
  s.v_static_adjusted = j.at("v_static_adjusted").get<double>();
  if (j.contains("v_dynamic")) s.v_dynamic = j.at("v_dynamic").get<double>();
  s.fused = j.at("fused").get<double>();
  s.classification = parse_traffic_light(j.at("classification").get<std::string>());
  s.borderline = j.at("borderline").get<bool>();
  s.floor_applied = j.at("floor_applied").get<bool>();
  return s;
}

}  // namespace

std::string canonical_json(const json& value) {
  std::string out;
  dump(value, out);
  out.push_back('\n');
  return out;
}

json to_json(const Report& r) {
  json j = {{"schema_version", r.schema_version},
            {"brief_id", r.brief_id},
            {"brief_title", r.brief_title},
            {"word_count", r.word_count},
            {"generated_at", r.generated_at},
            {"config", config_json(r.config)},
            {"static_profile", profile_json(r.static_profile)},
            {"composite", composite_json(r.composite)},
            {"notes", r.notes},
            {"caveats", r.caveats}};
  if (r.exploit_result) j["exploit_result"] = exploit_json(*r.exploit_result);
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw Error(ErrorCode::SchemaError, "unsupported report schema_version");
    }
    r.brief_id = j.at("brief_id").get<std::string>();
    r.brief_title = j.at("brief_title").get<std::string>();
    r.word_count = j.at("word_count").get<std::size_t>();
    r.generated_at = j.at("generated_at").get<std::string>();
    r.config = config_from(j.at("config"));
    r.static_profile = profile_from(j.at("static_profile"));
    if (j.contains("exploit_result")) r.exploit_result = exploit_from(j.at("exploit_result"));
    r.composite = composite_from(j.at("composite"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.caveats = j.at("caveats").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("report: ") + e.what());
  }
}

std::string emit_json(const Report& report) { return canonical_json(to_json(report)); }

Report parse_report(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("report is not valid JSON: ") + e.what());
  }
  return report_from_json(doc);
}

}  // namespace briefaudit
