#include "briefaudit/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <semaphore>
#include <thread>

#include "briefaudit/error.hpp"

namespace briefaudit {

namespace fs = std::filesystem;

namespace {

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_outputs(const Report& report, const Config& config) {
  const auto& dir = config.output.out_dir;
  fs::create_directories(dir);
  for (auto format : config.output.formats) {
    switch (format) {
      case OutputFormat::Json:
        write_atomic(dir / (report.brief_id + ".json"), emit_json(report));
        break;
      case OutputFormat::Svg:
        write_atomic(dir / (report.brief_id + ".svg"), emit_radar_svg(report.static_profile, config.radar_mode));
        break;
      case OutputFormat::Md:
        write_atomic(dir / (report.brief_id + ".md"), emit_markdown(report));
        break;
    }
  }
}

std::string summary_line(const Report& r) {
  return r.brief_id + " " + two_decimals(r.composite.fused) + " " + std::string(to_string(r.composite.classification));
}

std::unique_ptr<GeneratorBackend> require_backend(const Config& config, AppIO& io) {
  if (!config.dynamic.backend) throw Error(ErrorCode::InvalidArgument, "no backend configured (dynamic.backend)");
  return io.backend_factory(*config.dynamic.backend, config.dynamic);
}

template <typename Fn>
int guarded(AppIO& io, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    io.err << "briefaudit: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

std::unique_ptr<GeneratorBackend> make_backend(const BackendConfig& backend, const DynamicSettings& dynamic) {
  if (backend.kind == BackendKind::Mock) return std::make_unique<MockBackend>(backend.mock);
  auto http = backend.http;
  http.timeout_s = dynamic.timeout_s;
  return std::make_unique<HttpBackend>(http);
}

Pipeline Pipeline::load(Config config) {
  config.validate();
  Pipeline p;
  p.ruleset = std::make_shared<const RuleSet>(RuleSet::load(config.rules_path));
  p.frequency = std::make_shared<const FrequencyTable>(FrequencyTable::load(config.freq_table_path));
  p.config = std::move(config);
  return p;
}

StaticConfig Pipeline::static_config() const {
  return {ruleset, frequency, config.rank_threshold, kTopicalSaturation};
}

DynamicConfig Pipeline::dynamic_config() const {
  DynamicConfig d;
  d.strategies = config.dynamic.strategies;
  d.max_rounds = config.dynamic.max_rounds;
  d.concurrency_limit = config.dynamic.concurrency_limit;
  d.prompt_budget = config.dynamic.prompt_budget;
  d.verbs = config.verb_list;
  d.rubric = {ruleset.get(), frequency.get(), config.dynamic.overlap_threshold};
  return d;
}

Config apply_flags(Config config, const RunFlags& flags) {
  auto& dyn = config.dynamic;
  if (flags.strategy) {
    const int rounds = flags.rounds.value_or(kDefaultRounds);
    dyn.strategies = {*flags.strategy == StrategyKind::Iterative ? AttackStrategy::iterative(rounds)
                                                                 : AttackStrategy{*flags.strategy, 1}};
  } else if (flags.rounds) {
    for (auto& s : dyn.strategies) {
      if (s.kind == StrategyKind::Iterative) s.rounds = *flags.rounds;
    }
  }
  if (flags.seed && dyn.backend) dyn.backend->mock.seed = *flags.seed;
  if (dyn.backend && dyn.backend->mock.verbs.empty()) dyn.backend->mock.verbs = config.verb_list;
  if (flags.out_dir) config.output.out_dir = *flags.out_dir;
  if (!flags.formats.empty()) config.output.formats = {flags.formats.begin(), flags.formats.end()};
  return config;
}

CourseContext single_brief_context(const Config& config, const RunFlags& flags) {
  nlohmann::json ctx = config.context.value_or(nlohmann::json::object());
  if (!ctx.contains("knowledge_cutoff")) ctx["knowledge_cutoff"] = config.knowledge_cutoff.iso();
  auto context = parse_context(ctx, config.base_dir);
  if (flags.cutoff) context.knowledge_cutoff = *flags.cutoff;
  return context;
}

Report build_report(const AssessmentBrief& brief, const Pipeline& pipeline, StaticProfile profile,
                    std::optional<ExploitResult> exploit, std::string generated_at) {
  const auto& cfg = pipeline.config;
  Report r;
  r.brief_id = brief.id;
  r.brief_title = brief.title;
  r.word_count = brief.word_count;
  r.generated_at = std::move(generated_at);
  r.config.weights = cfg.scoring.weights;
  r.config.synergies = cfg.scoring.synergies;
  r.config.thresholds = cfg.scoring.thresholds;
  r.config.knowledge_cutoff = brief.context.knowledge_cutoff;
  r.config.ruleset_version = pipeline.ruleset->version();
  r.config.freq_table_id = pipeline.frequency->id();
  r.config.template_version = std::string(kTemplateVersion);
  r.config.alpha = cfg.scoring.alpha;
  r.config.floor_exploit = cfg.scoring.floor_exploit;
  r.config.rank_threshold = cfg.rank_threshold;
  r.composite = score(profile, exploit ? std::optional(exploit->exploit_max) : std::nullopt, cfg.scoring);
  r.notes = collect_notes(brief, profile, exploit);
  r.caveats = standard_caveats(exploit.has_value());
  r.static_profile = std::move(profile);
  r.exploit_result = std::move(exploit);
  return r;
}

Report analyze_brief(const AssessmentBrief& brief, const Pipeline& pipeline, const GeneratorBackend* backend,
                     std::string generated_at) {
  auto profile = run_static(brief, pipeline.static_config());
  std::optional<ExploitResult> exploit;
  if (backend) exploit = run_dynamic(brief, profile, pipeline.dynamic_config(), *backend);
  return build_report(brief, pipeline, std::move(profile), std::move(exploit), std::move(generated_at));
}

int exit_code(std::optional<TrafficLight> worst, std::optional<TrafficLight> fail_threshold) {
  if (!worst || !fail_threshold) return 0;
  return static_cast<int>(*worst) >= static_cast<int>(*fail_threshold) ? 1 : 0;
}

void write_atomic(const fs::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string current_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto day = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{now - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()), static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

int cmd_analyze(const fs::path& brief_path, const Config& base, const RunFlags& flags, AppIO& io) {
  return guarded(io, [&] {
    const auto pipeline = Pipeline::load(apply_flags(base, flags));
    const auto& config = pipeline.config;
    const auto brief = load_brief_file(brief_path, single_brief_context(config, flags));

    std::unique_ptr<GeneratorBackend> backend;
    if (!flags.no_dynamic && config.dynamic.enabled) backend = require_backend(config, io);

    auto report = analyze_brief(brief, pipeline, backend.get(), flags.timestamp.value_or(current_timestamp()));
    write_outputs(report, config);
    io.out << summary_line(report) << "\n";
    return exit_code(report.composite.classification, flags.fail_threshold);
  });
}

int cmd_redteam(const fs::path& brief_path, const Config& base, const RunFlags& flags, AppIO& io) {
  return guarded(io, [&] {
    const auto pipeline = Pipeline::load(apply_flags(base, flags));
    const auto& config = pipeline.config;
    const auto brief = load_brief_file(brief_path, single_brief_context(config, flags));
    auto backend = require_backend(config, io);

    auto report = analyze_brief(brief, pipeline, backend.get(), flags.timestamp.value_or(current_timestamp()));
    const auto& x = *report.exploit_result;
    for (const auto& attempt : x.attempts) {
      io.out << "== " << to_string(attempt.strategy.kind) << " ==\n";
      for (std::size_t i = 0; i < attempt.transcript.size(); ++i) {
        io.out << "-- round " << (i + 1) << " prompt --\n" << attempt.transcript[i].prompt << "\n";
        io.out << "-- round " << (i + 1) << " response --\n" << attempt.transcript[i].response << "\n";
      }
      if (attempt.error) io.out << "error: " << *attempt.error << "\n";
      io.out << "exploit " << two_decimals(attempt.exploit) << "\n";
    }
    write_outputs(report, config);
    io.out << report.brief_id << " exploit_max " << two_decimals(x.exploit_max) << "\n";
    return 0;
  });
}

int cmd_audit(const fs::path& manifest_path, const Config& base, const RunFlags& flags, AppIO& io) {
  return guarded(io, [&] {
    const auto pipeline = Pipeline::load(apply_flags(base, flags));
    const auto& config = pipeline.config;
    const auto manifest = load_manifest_file(manifest_path);

    std::unique_ptr<GeneratorBackend> backend;
    if (!flags.no_dynamic && config.dynamic.enabled) backend = require_backend(config, io);

    struct Loaded {
      std::optional<AssessmentBrief> brief;
      std::optional<StaticProfile> profile;
      std::string error;
    };
    // Static analyses run concurrently; the red-team pass runs brief by brief
    // so the backend's own concurrency limit stays the only fan-out.
    const auto workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    std::counting_semaphore<16> slots(static_cast<std::ptrdiff_t>(workers));
    std::vector<std::future<Loaded>> futures;
    for (const auto& entry : manifest.briefs) {
      futures.push_back(std::async(std::launch::async, [&, entry] {
        slots.acquire();
        Loaded l;
        try {
          auto ctx = entry.context;
          if (flags.cutoff) ctx.knowledge_cutoff = *flags.cutoff;
          l.brief = load_brief_file(entry.path, std::move(ctx), entry.format, entry.id,
                                    entry.title.empty() ? std::nullopt : std::optional(entry.title));
          l.profile = run_static(*l.brief, pipeline.static_config());
        } catch (const std::exception& e) {
          l.error = e.what();
        }
        slots.release();
        return l;
      }));
    }

    const auto timestamp = flags.timestamp.value_or(current_timestamp());
    std::vector<Report> reports;
    std::vector<PortfolioFailure> failures;
    for (std::size_t i = 0; i < futures.size(); ++i) {
      auto l = futures[i].get();
      const auto& id = manifest.briefs[i].id;
      if (!l.profile) {
        failures.push_back({id, l.error});
        io.err << "briefaudit: " << id << ": " << l.error << "\n";
        continue;
      }
      try {
        std::optional<ExploitResult> exploit;
        if (backend) exploit = run_dynamic(*l.brief, *l.profile, pipeline.dynamic_config(), *backend);
        reports.push_back(build_report(*l.brief, pipeline, std::move(*l.profile), std::move(exploit), timestamp));
        write_outputs(reports.back(), config);
        io.out << summary_line(reports.back()) << "\n";
      } catch (const std::exception& e) {
        failures.push_back({id, e.what()});
        io.err << "briefaudit: " << id << ": " << e.what() << "\n";
      }
    }

    fs::create_directories(config.output.out_dir);
    write_atomic(config.output.out_dir / "portfolio.csv", rank_portfolio(reports, failures));
    if (reports.empty()) {
      io.err << "briefaudit: every brief failed\n";
      return 2;
    }
    std::optional<TrafficLight> worst;
    for (const auto& r : reports) {
      if (!worst || static_cast<int>(r.composite.classification) > static_cast<int>(*worst)) {
        worst = r.composite.classification;
      }
    }
    return exit_code(worst, flags.fail_threshold);
  });
}

}  // namespace briefaudit
