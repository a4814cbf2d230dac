#include "briefaudit/rules.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "briefaudit/corpus.hpp"
#include "briefaudit/error.hpp"

namespace briefaudit {

using nlohmann::json;

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Phrase: return "phrase";
    case RuleKind::Keyword: return "keyword";
    case RuleKind::Pattern: return "pattern";
  }
  return "keyword";
}

std::string_view to_string(Polarity polarity) {
  return polarity == Polarity::ResiliencePositive ? "resilience_positive" : "vulnerability_positive";
}

std::string DimensionRef::key() const {
  return std::to_string(to_int(element)) + "." +
         std::string(element_info(element).dimensions[index].key);
}

CompiledRule compile_rule(Rule rule) {
  if (rule.id.empty()) throw Error(ErrorCode::SchemaError, "rule id must be non-empty");
  if (!(rule.weight > 0.0)) {
    throw Error(ErrorCode::SchemaError, "rule '" + rule.id + "' weight must be > 0");
  }
  if (rule.dimension.index >= kDimensionsPerElement) {
    throw Error(ErrorCode::SchemaError, "rule '" + rule.id + "' has an invalid dimension");
  }
  switch (rule.kind) {
    case RuleKind::Keyword: {
      if (text::tokenize(rule.pattern).size() != 1 ||
          text::trim(rule.pattern).size() != rule.pattern.size()) {
        throw Error(ErrorCode::SchemaError, "keyword rule '" + rule.id + "' must be a single token");
      }
      Pattern matcher = Pattern::literal(rule.pattern);
      return {std::move(rule), std::move(matcher)};
    }
    case RuleKind::Phrase: {
      Pattern matcher = Pattern::literal(rule.pattern);
      return {std::move(rule), std::move(matcher)};
    }
    case RuleKind::Pattern: {
      Pattern matcher = Pattern::compile(rule.pattern);
      return {std::move(rule), std::move(matcher)};
    }
  }
  throw Error(ErrorCode::SchemaError, "unknown rule kind");
}

namespace {

DimensionRef parse_dimension_key(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    throw Error(ErrorCode::SchemaError, "saturation key '" + key + "' must be '<element>.<dimension>'");
  }
  int e = 0;
  try {
    e = std::stoi(key.substr(0, dot));
  } catch (const std::exception&) {
    throw Error(ErrorCode::SchemaError, "saturation key '" + key + "' has no element number");
  }
  auto element = element_from_int(e);
  if (!element) throw Error(ErrorCode::SchemaError, "saturation key '" + key + "': unknown element");
  auto idx = dimension_index(*element, key.substr(dot + 1));
  if (!idx) throw Error(ErrorCode::SchemaError, "saturation key '" + key + "': unknown dimension");
  return {*element, *idx};
}

std::map<std::string, double> validated_saturation(const std::map<std::string, double>& raw) {
  std::map<std::string, double> out;
  for (const auto& [key, value] : raw) {
    const auto ref = parse_dimension_key(key);
    if (!(value > 0.0)) throw Error(ErrorCode::SchemaError, "saturation for '" + key + "' must be > 0");
    out[ref.key()] = value;
  }
  return out;
}

}  // namespace

RuleSet::RuleSet(int version, std::vector<Rule> rules, double beta,
                 std::map<std::string, double> saturation,
                 std::map<std::string, double> neg_saturation)
    : version_(version),
      beta_(beta),
      saturation_(validated_saturation(saturation)),
      neg_saturation_(validated_saturation(neg_saturation)) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorCode::SchemaError, "beta must be in [0,1]");
  rules_.reserve(rules.size());
  for (auto& rule : rules) {
    const auto& info = element_info(rule.dimension.element);
    if (rule.dimension.index < kDimensionsPerElement &&
        info.dimensions[rule.dimension.index].method != SignalMethod::Keyword) {
      throw Error(ErrorCode::SchemaError, "rule '" + rule.id + "' targets computed dimension " +
                                              rule.dimension.key());
    }
    if (!by_id_.emplace(rule.id, rules_.size()).second) {
      throw Error(ErrorCode::SchemaError, "duplicate rule id '" + rule.id + "'");
    }
    rules_.push_back(compile_rule(std::move(rule)));
  }
}

RuleSet RuleSet::from_json(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("rule file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "rule file must be an object");
    const int version = doc.at("version").get<int>();
    const double beta = doc.value("beta", kDefaultBeta);
    auto saturation = doc.value("saturation", std::map<std::string, double>{});
    auto neg_saturation = doc.value("neg_saturation", std::map<std::string, double>{});

    std::vector<Rule> rules;
    for (const auto& item : doc.at("rules")) {
      Rule r;
      r.id = item.at("id").get<std::string>();
      auto element = element_from_int(item.at("element").get<int>());
      if (!element) throw Error(ErrorCode::SchemaError, "rule '" + r.id + "': element must be 1..8");
      const auto dim = item.at("dimension").get<std::string>();
      auto idx = dimension_index(*element, dim);
      if (!idx) {
        throw Error(ErrorCode::SchemaError,
                    "rule '" + r.id + "': element " + std::to_string(to_int(*element)) +
                        " has no dimension '" + dim + "'");
      }
      r.dimension = {*element, *idx};
      const auto kind = item.at("kind").get<std::string>();
      if (kind == "phrase") {
        r.kind = RuleKind::Phrase;
      } else if (kind == "keyword") {
        r.kind = RuleKind::Keyword;
      } else if (kind == "pattern") {
        r.kind = RuleKind::Pattern;
      } else {
        throw Error(ErrorCode::SchemaError, "rule '" + r.id + "': unknown kind '" + kind + "'");
      }
      r.pattern = item.at("pattern").get<std::string>();
      r.weight = item.value("weight", 1.0);
      const auto polarity = item.value("polarity", std::string("resilience_positive"));
      if (polarity == "resilience_positive") {
        r.polarity = Polarity::ResiliencePositive;
      } else if (polarity == "vulnerability_positive") {
        r.polarity = Polarity::VulnerabilityPositive;
      } else {
        throw Error(ErrorCode::SchemaError, "rule '" + r.id + "': unknown polarity '" + polarity + "'");
      }
      rules.push_back(std::move(r));
    }
    return RuleSet(version, std::move(rules), beta, std::move(saturation), std::move(neg_saturation));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("rule file: ") + e.what());
  }
}

RuleSet RuleSet::load(const std::filesystem::path& path) { return from_json(read_file(path)); }

double RuleSet::positive_saturation(const DimensionRef& d) const {
  auto it = saturation_.find(d.key());
  return it == saturation_.end() ? kDefaultPositiveSaturation : it->second;
}

double RuleSet::negative_saturation(const DimensionRef& d) const {
  auto it = neg_saturation_.find(d.key());
  return it == neg_saturation_.end() ? kDefaultNegativeSaturation : it->second;
}

const Rule* RuleSet::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &rules_[it->second].rule;
}

std::size_t RuleSet::count_for(Element e) const {
  return static_cast<std::size_t>(std::count_if(
      rules_.begin(), rules_.end(), [e](const CompiledRule& r) { return r.rule.dimension.element == e; }));
}

std::vector<MatchRecord> match_rules(std::string_view body, std::span<const CompiledRule> rules) {
  std::vector<MatchRecord> records;
  if (rules.empty()) return records;
  const std::string lowered = text::ascii_lower(body);
  const auto word = text::word_mask(body);
  for (const auto& rule : rules) {
    for (const auto& span : rule.matcher.find_all(lowered, word)) {
      records.push_back({rule.rule.id, span, std::string(body.substr(span.begin, span.size()))});
    }
  }
  std::sort(records.begin(), records.end(), [](const MatchRecord& a, const MatchRecord& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    return a.span.end < b.span.end;
  });
  return records;
}

std::vector<MatchRecord> match_rules(std::string_view body, const RuleSet& ruleset) {
  return match_rules(body, ruleset.rules());
}

std::vector<DateMention> extract_years(std::string_view text) {
  std::vector<DateMention> out;
  const auto word = text::word_mask(text);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] < '0' || text[i] > '9') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    const bool left_ok = i == 0 || !word[i - 1];
    const bool right_ok = j == text.size() || !word[j];
    if (j - i == 4 && left_ok && right_ok) {
      const int year = std::stoi(std::string(text.substr(i, 4)));
      if (year >= kMinYear && year <= kMaxYear) out.push_back({year, {i, j}});
    }
    i = j;
  }
  return out;
}

}  // namespace briefaudit
