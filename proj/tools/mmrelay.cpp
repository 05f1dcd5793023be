// Command-line front end: single runs, Monte Carlo batches, brute-force
// optimality audits, and SVG path maps.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mmrelay/config.hpp"
#include "mmrelay/harness.hpp"
#include "mmrelay/serialize.hpp"
#include "mmrelay/svg.hpp"

namespace {

using namespace mmrelay;

// Flags shared by the simulation subcommands. Each flag overrides the
// config file, which overrides the built-in defaults.
struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  int runs = 0;
  double epsilon = 0.0;
  int m = 0;
  int n = 0;
  int jobs = 0;
  std::string json_path;
  std::string csv_path;
  std::string svg_path;
  std::string trace_path;
  std::string strategy = "pf";
  CLI::App* cmd = nullptr;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  opt.cmd = cmd;
  cmd->add_option("--config", opt.config_path, "configuration file (key = value lines)");
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--runs", opt.runs, "number of runs");
  cmd->add_option("--epsilon", opt.epsilon, "mutation probability in [0, 1)");
  cmd->add_option("--m", opt.m, "number of source-destination pairs");
  cmd->add_option("--n", opt.n, "number of relays");
  cmd->add_option("--jobs", opt.jobs, "parallel workers for batch execution");
  cmd->add_option("--json", opt.json_path, "write JSON output to this path");
  cmd->add_option("--csv", opt.csv_path, "write CSV output to this path");
  cmd->add_option("--svg", opt.svg_path, "write an SVG path map to this path");
  cmd->add_option("--trace", opt.trace_path, "write a JSON-lines dynamics trace to this path");
  cmd->add_option("--strategy", opt.strategy, "path set for SVG output: pf or md")
      ->check(CLI::IsMember({"pf", "md"}));
}

SimConfig resolve_config(const CommonOptions& opt) {
  SimConfig cfg;
  if (!opt.config_path.empty()) cfg = parse_config_file(opt.config_path, cfg);
  const auto given = [&](const char* name) { return opt.cmd->count(name) > 0; };
  if (given("--seed")) cfg.master_seed = opt.seed;
  if (given("--runs")) cfg.runs = opt.runs;
  if (given("--epsilon")) cfg.epsilon = opt.epsilon;
  if (given("--m")) cfg.m = opt.m;
  if (given("--n")) cfg.n = opt.n;
  if (given("--jobs")) cfg.jobs = opt.jobs;
  if (given("--json")) cfg.json_path = opt.json_path;
  if (given("--csv")) cfg.csv_path = opt.csv_path;
  if (given("--svg")) cfg.svg_path = opt.svg_path;
  if (given("--trace")) cfg.trace_path = opt.trace_path;
  validate(cfg);
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void write_trace(const std::string& path, const RunArtifacts& artifacts) {
  std::ostringstream lines;
  for (const TraceRecord& t : artifacts.pf.trace) {
    Json j = trace_to_json(t);
    j["strategy"] = "pf";
    lines << j.dump() << '\n';
  }
  for (const TraceRecord& t : artifacts.md.trace) {
    Json j = trace_to_json(t);
    j["strategy"] = "md";
    lines << j.dump() << '\n';
  }
  write_file(path, lines.str());
}

int cmd_simulate(const CommonOptions& opt) {
  const SimConfig cfg = resolve_config(opt);
  RunArtifacts artifacts;
  const RunRecord rec =
      run_single(cfg.master_seed, cfg, &artifacts, !cfg.trace_path.empty());

  std::cout << "seed " << rec.seed << ", " << cfg.m << " pairs, " << cfg.n << " relays\n\n";
  std::cout << std::left << std::setw(10) << "pair" << std::right << std::setw(16)
            << "direct [s]" << std::setw(16) << "prop-fair [s]" << std::setw(16)
            << "min-delay [s]" << '\n';
  for (int i = 0; i < cfg.m; ++i) {
    std::ostringstream label;
    label << "(s" << i << ",d" << i << ")";
    std::cout << std::left << std::setw(10) << label.str() << std::right << std::fixed
              << std::setprecision(4) << std::setw(16) << rec.direct_delays[i] << std::setw(16)
              << rec.pf_delays[i] << std::setw(16) << rec.md_delays[i] << '\n';
  }
  std::cout << std::left << std::setw(10) << "sum" << std::right << std::setw(16)
            << rec.direct_sum << std::setw(16) << rec.pf_sum << std::setw(16) << rec.md_sum
            << '\n';
  std::cout << std::left << std::setw(10) << "variance" << std::right << std::setw(16)
            << rec.direct_variance << std::setw(16) << rec.pf_variance << std::setw(16)
            << rec.md_variance << '\n';
  std::cout.unsetf(std::ios::fixed);
  std::cout << "\nprop-fair: " << (rec.pf_converged ? "converged" : "did not converge")
            << " after " << rec.pf_rounds << " rounds; min-delay: "
            << (rec.md_converged ? "converged" : "did not converge") << " after "
            << rec.md_rounds << " rounds\n";

  if (!cfg.json_path.empty()) {
    write_file(cfg.json_path, simulate_output_to_json(artifacts.instance, rec).dump(2) + "\n");
  }
  if (!cfg.svg_path.empty()) {
    std::ostringstream svg;
    render_svg(artifacts.instance, opt.strategy == "md" ? rec.md_paths : rec.pf_paths, svg);
    write_file(cfg.svg_path, svg.str());
  }
  if (!cfg.trace_path.empty()) write_trace(cfg.trace_path, artifacts);
  return 0;
}

int cmd_batch(const CommonOptions& opt) {
  const SimConfig cfg = resolve_config(opt);
  const BatchResult result = run_batch(cfg);
  const BatchStats& s = result.stats;

  std::cout << s.runs << " runs, master seed " << cfg.master_seed << "\n";
  std::cout << "mean sum of delays [s]: prop-fair " << format_double(s.mean_pf_sum)
            << ", min-delay " << format_double(s.mean_md_sum) << ", direct "
            << format_double(s.mean_direct_sum) << "\n";
  std::cout << "mean per-pair delay variance [s^2]: prop-fair "
            << format_double(s.mean_pf_variance) << ", min-delay "
            << format_double(s.mean_md_variance) << "\n";
  std::cout << "convergence rate: prop-fair " << format_double(s.pf_convergence_rate)
            << ", min-delay " << format_double(s.md_convergence_rate) << "\n";

  if (!cfg.csv_path.empty()) {
    std::ostringstream csv;
    write_csv(result.records, csv);
    write_file(cfg.csv_path, csv.str());
  }
  if (!cfg.json_path.empty()) {
    const Json summary{{"config", config_to_json(cfg)}, {"stats", stats_to_json(s)}};
    write_file(cfg.json_path, summary.dump(2) + "\n");
  }
  return 0;
}

int cmd_oracle(const CommonOptions& opt) {
  SimConfig cfg = resolve_config(opt);
  if (opt.cmd->count("--runs") == 0) cfg.runs = 1;

  int attained = 0;
  bool all_local = true;
  bool all_converged = true;
  for (int i = 0; i < cfg.runs; ++i) {
    const std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
    const Instance inst = make_instance(cfg, seed);
    const OptimumResult opt_result = enumerate_optimum(inst);
    const DynamicsResult dyn = run_dynamics(inst, Strategy::proportional_fair, 0.0,
                                            derive_seed(seed, 1), cfg.max_rounds);
    const bool local_ok = !find_improving_deviation(dyn.state, inst).has_value();
    const bool global =
        std::abs(dyn.state.potential - opt_result.potential) <=
        1e-9 * std::max(1.0, std::abs(opt_result.potential));
    attained += global ? 1 : 0;
    all_local = all_local && local_ok;
    all_converged = all_converged && dyn.converged;
    std::cout << "seed " << seed << ": potential " << format_double(dyn.state.potential)
              << ", optimum " << format_double(opt_result.potential) << " ("
              << opt_result.configurations << " configurations), "
              << (dyn.converged ? "converged" : "no convergence") << ", "
              << (local_ok ? "locally optimal" : "IMPROVABLE") << ", "
              << (global ? "globally optimal" : "local maximum") << "\n";
  }
  std::cout << "summary: " << attained << "/" << cfg.runs << " runs attained the global optimum; "
            << (all_local ? "all" : "NOT all") << " final states locally optimal; "
            << (all_converged ? "all" : "NOT all") << " runs converged\n";
  return 0;
}

int cmd_render(const std::string& json_path, const std::string& svg_path,
               const std::string& strategy) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open run output: " + json_path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid run output JSON: ") + e.what());
  }
  Instance inst;
  std::vector<Path> paths;
  try {
    inst = instance_from_json(doc.at("instance"));
    paths = paths_from_json(doc.at("record").at(strategy).at("paths"));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("run output JSON is missing fields: ") + e.what());
  }
  std::ostringstream svg;
  render_svg(inst, paths, svg);
  write_file(svg_path, svg.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"millimeter-wave multihop relay formation simulator"};
  app.require_subcommand(1);

  CommonOptions simulate_opt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "one seeded run: direct vs proportional-fair vs minimum-delay");
  add_common_options(simulate, simulate_opt);

  CommonOptions batch_opt;
  CLI::App* batch = app.add_subcommand("batch", "Monte Carlo batch with aggregate statistics");
  add_common_options(batch, batch_opt);

  CommonOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustive optimum and local-optimality audit for small instances");
  add_common_options(oracle, oracle_opt);

  std::string render_json, render_svg_path, render_strategy = "pf";
  CLI::App* render = app.add_subcommand("render", "SVG path map from simulate JSON output");
  render->add_option("--json", render_json, "simulate JSON output to read")->required();
  render->add_option("--svg", render_svg_path, "SVG file to write")->required();
  render->add_option("--strategy", render_strategy, "path set to draw: pf or md")
      ->check(CLI::IsMember({"pf", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) return cmd_simulate(simulate_opt);
    if (*batch) return cmd_batch(batch_opt);
    if (*oracle) return cmd_oracle(oracle_opt);
    if (*render) return cmd_render(render_json, render_svg_path, render_strategy);
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
