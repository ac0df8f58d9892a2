#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wft/common.hpp"
#include "wft/io.hpp"
#include "wft/orchestrate.hpp"
#include "wft/variation.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  wft::RunConfig overrides;
  bool has_nu = false, has_tmax = false, has_seed = false, has_initial = false,
       has_out = false, has_b = false, has_kappa = false, has_r = false,
       has_steps = false, has_aw = false, has_az = false, has_mesh = false;
};

int load_config(const CliOptions& opt, wft::RunConfig* cfg) {
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "cannot open config: " << opt.config_path << '\n';
      return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const wft::ParseResult parsed = wft::parse_config(text.str());
    if (!parsed.ok()) {
      for (const wft::ParseIssue& issue : parsed.issues) {
        std::cerr << opt.config_path << ':' << issue.line << ": " << issue.field
                  << ": " << issue.message << '\n';
      }
      return 2;
    }
    *cfg = *parsed.config;
  }
  if (opt.has_nu) cfg->nu = opt.overrides.nu;
  if (opt.has_tmax) cfg->t_max = opt.overrides.t_max;
  if (opt.has_seed) cfg->seed = opt.overrides.seed;
  if (opt.has_initial) cfg->initial = opt.overrides.initial;
  if (opt.has_out) cfg->out_dir = opt.overrides.out_dir;
  if (opt.has_b) cfg->b = opt.overrides.b;
  if (opt.has_kappa) cfg->kappa = opt.overrides.kappa;
  if (opt.has_r) cfg->r = opt.overrides.r;
  if (opt.has_steps) cfg->steps = opt.overrides.steps;
  if (opt.has_aw) cfg->amplitude_w = opt.overrides.amplitude_w;
  if (opt.has_az) cfg->amplitude_z = opt.overrides.amplitude_z;
  if (opt.has_mesh) cfg->mesh_count = opt.overrides.mesh_count;
  return 0;
}

void add_common_flags(CLI::App* app, CliOptions* opt) {
  app->add_option("--config", opt->config_path, "flat key=value config file");
  app->add_option("--nu", opt->overrides.nu, "lattice parameter")
      ->check(CLI::PositiveNumber)
      ->each([opt](const std::string&) { opt->has_nu = true; });
  app->add_option("--t-max", opt->overrides.t_max, "end time")
      ->each([opt](const std::string&) { opt->has_tmax = true; });
  app->add_option("--seed", opt->overrides.seed, "random-steps seed")
      ->each([opt](const std::string&) { opt->has_seed = true; });
  app->add_option("--initial", opt->overrides.initial,
                  "two-shock | pure-cd | random-steps | path.csv")
      ->each([opt](const std::string&) { opt->has_initial = true; });
  app->add_option("--out-dir", opt->overrides.out_dir, "artifact directory")
      ->each([opt](const std::string&) { opt->has_out = true; });
  app->add_option("--b", opt->overrides.b, "lambda1 z-coupling")
      ->each([opt](const std::string&) { opt->has_b = true; });
  app->add_option("--kappa", opt->overrides.kappa, "cubic jump coefficient")
      ->each([opt](const std::string&) { opt->has_kappa = true; });
  app->add_option("--r", opt->overrides.r, "admissible ball radius")
      ->each([opt](const std::string&) { opt->has_r = true; });
  app->add_option("--steps", opt->overrides.steps, "random-steps piece count")
      ->each([opt](const std::string&) { opt->has_steps = true; });
  app->add_option("--amplitude-w", opt->overrides.amplitude_w)
      ->each([opt](const std::string&) { opt->has_aw = true; });
  app->add_option("--amplitude-z", opt->overrides.amplitude_z)
      ->each([opt](const std::string&) { opt->has_az = true; });
  app->add_option("--mesh-count", opt->overrides.mesh_count,
                  "characteristic launch points")
      ->each([opt](const std::string&) { opt->has_mesh = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-driven wave-front tracking in Riemann invariants"};
  app.require_subcommand(1);

  CliOptions run_opt, sweep_opt;
  std::vector<std::int64_t> nu_list{10, 20, 40, 80};
  std::string verify_dir;
  std::string variation_input;
  std::string variation_s = "1/2";

  CLI::App* cmd_run = app.add_subcommand("run", "one full run with checks");
  add_common_flags(cmd_run, &run_opt);

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "same data across a nu list, L1 table");
  add_common_flags(cmd_sweep, &sweep_opt);
  cmd_sweep->add_option("--nu-list", nu_list, "nu values (increasing)");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "re-check saved artifacts");
  cmd_verify->add_option("--dir", verify_dir, "run output directory")->required();

  CLI::App* cmd_variation =
      app.add_subcommand("variation", "TV^s of a CSV sequence");
  cmd_variation->add_option("--input", variation_input, "one value per line")
      ->required();
  cmd_variation->add_option("--s", variation_s, "exponent, e.g. 1/3 or 0.5");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      wft::RunConfig cfg;
      if (int rc = load_config(run_opt, &cfg)) return rc;
      return wft::orchestrate(cfg);
    }
    if (cmd_sweep->parsed()) {
      wft::RunConfig cfg;
      if (int rc = load_config(sweep_opt, &cfg)) return rc;
      return wft::sweep(cfg, nu_list);
    }
    if (cmd_verify->parsed()) {
      return wft::verify_artifacts(verify_dir);
    }
    if (cmd_variation->parsed()) {
      const std::vector<double> seq = wft::load_sequence_csv(variation_input);
      const wft::VariationExponent e = wft::parse_exponent(variation_s);
      const double tvs = wft::tvs_exact(seq, e);
      std::cout << "n = " << seq.size() << '\n';
      std::cout << "TV^s = " << wft::double_to_string(tvs) << '\n';
      std::cout << "seminorm = " << wft::double_to_string(wft::bvs_seminorm(seq, e))
                << '\n';
      double sup = 0.0;
      for (double v : seq) sup = std::max(sup, std::fabs(v));
      std::cout << "norm = "
                << wft::double_to_string(sup + wft::bvs_seminorm(seq, e)) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
