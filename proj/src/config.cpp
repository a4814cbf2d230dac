#include "briefaudit/config.hpp"

#include <set>

#include "briefaudit/error.hpp"
#include "briefaudit/text.hpp"

namespace briefaudit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw Error(ErrorCode::SchemaError, std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw Error(ErrorCode::SchemaError, "unknown key '" + key + "' in " + std::string(where));
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Element element_key(const json& j) {
  int v = j.is_string() ? std::stoi(j.get<std::string>()) : j.get<int>();
  auto e = element_from_int(v);
  if (!e) throw Error(ErrorCode::UnknownElement, "element " + std::to_string(v));
  return *e;
}

BackendConfig parse_backend(const json& j) {
  check_keys(j, "dynamic.backend",
             {"kind", "coverage", "categories", "seed", "endpoint", "model", "auth_env", "max_concurrent"});
  BackendConfig b;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "mock") {
    b.kind = BackendKind::Mock;
    b.mock.coverage = j.value("coverage", 1.0);
    for (const auto& c : j.value("categories", json::array())) b.mock.categories.insert(element_key(c));
    b.mock.seed = j.value("seed", std::uint64_t{0});
  } else if (kind == "http") {
    b.kind = BackendKind::Http;
    b.http.endpoint = j.at("endpoint").get<std::string>();
    b.http.model = j.at("model").get<std::string>();
    b.http.auth_env = j.value("auth_env", b.http.auth_env);
    b.http.max_concurrent = j.value("max_concurrent", b.http.max_concurrent);
  } else {
    throw Error(ErrorCode::SchemaError, "backend kind must be mock or http, got '" + kind + "'");
  }
  return b;
}

AttackStrategy parse_strategy(const json& j, int rounds) {
  auto kind = parse_strategy_kind(j.get<std::string>());
  if (kind == StrategyKind::Iterative) return AttackStrategy::iterative(rounds);
  return {kind, 1};
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  if (name == "md") return OutputFormat::Md;
  throw Error(ErrorCode::InvalidArgument, "output format must be json, svg or md, got '" + std::string(name) + "'");
}

Config default_config() {
  Config c;
  c.rules_path = fs::path(BRIEFAUDIT_DATA_DIR) / "default_rules.json";
  c.freq_table_path = fs::path(BRIEFAUDIT_DATA_DIR) / "en_freq_50k.tsv";
  return c;
}

Config parse_config(const json& doc, const fs::path& base_dir) {
  try {
    check_keys(doc, "config",
               {"knowledge_cutoff", "rules_path", "freq_table_path", "rank_threshold", "weights", "synergies",
                "thresholds", "alpha", "floor_exploit", "dynamic", "verb_list", "output", "radar_mode",
                "context"});
    Config c = default_config();
    c.base_dir = base_dir;
    if (doc.contains("knowledge_cutoff")) c.knowledge_cutoff = Date::parse(doc["knowledge_cutoff"].get<std::string>());
    if (doc.contains("rules_path")) c.rules_path = resolve(base_dir, doc["rules_path"].get<std::string>());
    if (doc.contains("freq_table_path")) {
      c.freq_table_path = resolve(base_dir, doc["freq_table_path"].get<std::string>());
    }
    c.rank_threshold = doc.value("rank_threshold", c.rank_threshold);

    if (doc.contains("weights")) {
      std::map<int, double> raw;
      for (const auto& [key, value] : doc["weights"].items()) {
        int id = 0;
        try {
          std::size_t used = 0;
          id = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw Error(ErrorCode::UnknownElement, "weight key '" + key + "'");
        }
        raw[id] = value.get<double>();
      }
      c.scoring.weights = normalize_weights(raw);
    }
    for (const auto& s : doc.value("synergies", json::array())) {
      check_keys(s, "synergies[]", {"a", "b", "gamma"});
      c.scoring.synergies.push_back(
          {element_key(s.at("a")), element_key(s.at("b")), s.value("gamma", kDefaultSynergyGamma)});
    }
    if (doc.contains("thresholds")) {
      const auto& t = doc["thresholds"];
      check_keys(t, "thresholds", {"green_below", "red_at_or_above", "tolerance", "version"});
      auto& th = c.scoring.thresholds;
      th.green_below = t.value("green_below", th.green_below);
      th.red_at_or_above = t.value("red_at_or_above", th.red_at_or_above);
      th.tolerance = t.value("tolerance", th.tolerance);
      th.version = t.value("version", th.version);
    }
    c.scoring.alpha = doc.value("alpha", c.scoring.alpha);
    c.scoring.floor_exploit = doc.value("floor_exploit", c.scoring.floor_exploit);

    if (doc.contains("dynamic")) {
      const auto& d = doc["dynamic"];
      check_keys(d, "dynamic",
                 {"enabled", "backend", "strategies", "rounds", "max_rounds", "concurrency_limit", "timeout_s",
                  "prompt_budget", "overlap_threshold"});
      auto& dyn = c.dynamic;
      dyn.enabled = d.value("enabled", dyn.enabled);
      if (d.contains("backend") && !d["backend"].is_null()) dyn.backend = parse_backend(d["backend"]);
      const int rounds = d.value("rounds", kDefaultRounds);
      if (d.contains("strategies")) {
        dyn.strategies.clear();
        for (const auto& s : d["strategies"]) dyn.strategies.push_back(parse_strategy(s, rounds));
      }
      dyn.max_rounds = d.value("max_rounds", dyn.max_rounds);
      dyn.concurrency_limit = d.value("concurrency_limit", dyn.concurrency_limit);
      dyn.timeout_s = d.value("timeout_s", dyn.timeout_s);
      dyn.prompt_budget = d.value("prompt_budget", dyn.prompt_budget);
      dyn.overlap_threshold = d.value("overlap_threshold", dyn.overlap_threshold);
    }
    if (doc.contains("verb_list")) c.verb_list = doc["verb_list"].get<std::vector<std::string>>();
    if (doc.contains("output")) {
      const auto& o = doc["output"];
      check_keys(o, "output", {"formats", "out_dir"});
      if (o.contains("formats")) {
        c.output.formats.clear();
        for (const auto& f : o["formats"]) c.output.formats.insert(parse_output_format(f.get<std::string>()));
      }
      if (o.contains("out_dir")) c.output.out_dir = resolve(base_dir, o["out_dir"].get<std::string>());
    }
    if (doc.contains("radar_mode")) {
      const auto mode = doc["radar_mode"].get<std::string>();
      if (mode == "vulnerability") c.radar_mode = RadarMode::Vulnerability;
      else if (mode == "resilience") c.radar_mode = RadarMode::Resilience;
      else throw Error(ErrorCode::SchemaError, "radar_mode must be vulnerability or resilience");
    }
    if (doc.contains("context")) c.context = doc["context"];
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("config: ") + e.what());
  }
}

Config load_config(const fs::path& path) {
  const auto source = read_file(path);
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, "config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc, path.parent_path());
}

void Config::validate() const {
  if (!fs::exists(rules_path)) throw Error(ErrorCode::MissingFile, "rules file " + rules_path.string());
  if (!fs::exists(freq_table_path)) {
    throw Error(ErrorCode::MissingFrequencyTable, "frequency table " + freq_table_path.string());
  }
  if (rank_threshold < 1) throw Error(ErrorCode::InvalidArgument, "rank_threshold must be >= 1");
  scoring.validate();
  if (verb_list.empty()) throw Error(ErrorCode::InvalidArgument, "verb_list must not be empty");
  if (output.formats.empty()) throw Error(ErrorCode::InvalidArgument, "no output formats");
  const auto& d = dynamic;
  if (d.max_rounds < 2) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 2");
  if (d.strategies.empty()) throw Error(ErrorCode::InvalidArgument, "no attack strategies");
  for (const auto& s : d.strategies) s.validate(d.max_rounds);
  if (d.concurrency_limit < 1) throw Error(ErrorCode::InvalidArgument, "concurrency_limit must be >= 1");
  if (!(d.timeout_s > 0)) throw Error(ErrorCode::InvalidArgument, "timeout_s must be > 0");
  if (d.prompt_budget == 0) throw Error(ErrorCode::InvalidArgument, "prompt_budget must be > 0");
  if (!(d.overlap_threshold > 0 && d.overlap_threshold <= 1)) {
    throw Error(ErrorCode::InvalidArgument, "overlap_threshold must be in (0, 1]");
  }
  if (d.backend && d.backend->kind == BackendKind::Mock) {
    const auto& m = d.backend->mock;
    if (!(m.coverage >= 0 && m.coverage <= 1)) throw Error(ErrorCode::InvalidArgument, "mock coverage must be in [0,1]");
  }
}

}  // namespace briefaudit
