#include <iostream>

#include <CLI11.hpp>

#include "briefaudit/app.hpp"
#include "briefaudit/error.hpp"

using namespace briefaudit;

namespace {

struct CommonOptions {
  std::string config_path;
  bool no_dynamic = false;
  std::string fail_threshold;
  std::string out_dir;
  std::vector<std::string> formats;
  std::string cutoff;
  std::string timestamp;
  std::string strategy;
  int rounds = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool dynamic_flags) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--fail-threshold", o.fail_threshold, "exit 1 when the class reaches this level")
      ->check(CLI::IsMember({"amber", "red"}));
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--format", o.formats, "output format (repeatable)")
      ->check(CLI::IsMember({"json", "svg", "md"}))
      ->take_all()
      ->allow_extra_args(false);
  cmd->add_option("--cutoff", o.cutoff, "knowledge cutoff, YYYY-MM-DD");
  cmd->add_option("--timestamp", o.timestamp, "pin generated_at (reproducible output)");
  if (dynamic_flags) {
    cmd->add_flag("--no-dynamic", o.no_dynamic, "static analysis only; no backend is created");
  }
  cmd->add_option("--strategy", o.strategy, "attack strategy")
      ->check(CLI::IsMember({"single_shot", "iterative", "context_injection"}));
  cmd->add_option("--rounds", o.rounds, "rounds for the iterative strategy")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "mock backend seed");
}

RunFlags to_flags(const CLI::App* cmd, const CommonOptions& o) {
  RunFlags f;
  f.no_dynamic = o.no_dynamic;
  if (!o.fail_threshold.empty()) f.fail_threshold = parse_traffic_light(o.fail_threshold);
  if (!o.out_dir.empty()) f.out_dir = o.out_dir;
  for (const auto& fmt : o.formats) f.formats.push_back(parse_output_format(fmt));
  if (!o.cutoff.empty()) f.cutoff = Date::parse(o.cutoff);
  if (!o.timestamp.empty()) f.timestamp = o.timestamp;
  if (!o.strategy.empty()) f.strategy = parse_strategy_kind(o.strategy);
  if (cmd->count("--rounds")) f.rounds = o.rounds;
  if (cmd->count("--seed")) f.seed = o.seed;
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit assessment briefs for vulnerability to generative AI."};
  app.require_subcommand(1);

  CommonOptions analyze_opts, audit_opts, redteam_opts;
  std::string brief_path, manifest_path, redteam_path;

  auto* analyze = app.add_subcommand("analyze", "analyze one brief");
  analyze->add_option("brief", brief_path, "brief file (.txt or .md)")->required();
  add_common(analyze, analyze_opts, true);

  auto* audit = app.add_subcommand("audit", "analyze every brief in a manifest and rank them");
  audit->add_option("manifest", manifest_path, "corpus manifest (JSON)")->required();
  add_common(audit, audit_opts, true);

  auto* redteam = app.add_subcommand("redteam", "run only the red-team pass and print transcripts");
  redteam->add_option("brief", redteam_path, "brief file (.txt or .md)")->required();
  add_common(redteam, redteam_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  AppIO io{std::cout, std::cerr};
  auto run = [&](CLI::App* cmd, const CommonOptions& opts, auto&& fn, const std::string& path) -> int {
    RunFlags flags;
    Config config;
    try {
      flags = to_flags(cmd, opts);
      config = opts.config_path.empty() ? default_config() : load_config(opts.config_path);
    } catch (const std::exception& e) {
      std::cerr << "briefaudit: " << e.what() << "\n";
      return 2;
    }
    return fn(path, config, flags, io);
  };

  if (*analyze) return run(analyze, analyze_opts, cmd_analyze, brief_path);
  if (*audit) return run(audit, audit_opts, cmd_audit, manifest_path);
  return run(redteam, redteam_opts, cmd_redteam, redteam_path);
}
