#include "wft/orchestrate.hpp"

#include <filesystem>
#include <future>
#include <iostream>

#include "wft/common.hpp"
#include "wft/io.hpp"
#include "wft/verify.hpp"

namespace wft {

namespace fs = std::filesystem;

namespace {

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what) {}
};

struct RunOutput {
  Trajectory traj;
  DiscretizedInitial disc;
  ValidationReport validation;
  LagrangianField field;
  CheckReport report;
};

RunOutput execute(const RunConfig& cfg) {
  RunOutput out;
  const ModelSpec model = ModelSpec::synthetic(cfg.b, cfg.kappa, cfg.r);

  try {
    out.validation = validate_model(model);
    if (!out.validation.passed) {
      std::string bad;
      for (const ValidationEntry& e : out.validation.entries) {
        if (!e.pass) bad += e.check + " (" + e.detail + "); ";
      }
      throw StageError("validate_model", bad);
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("validate_model", e.what());
  }

  SampledData samples;
  try {
    samples = generate_initial(cfg);
  } catch (const std::exception& e) {
    throw StageError("initial_data", e.what());
  }

  try {
    const auto s_list = cfg.effective_s_list();
    out.disc = discretize_initial(samples, cfg.nu, s_list);
  } catch (const std::exception& e) {
    throw StageError("discretize", e.what());
  }

  try {
    out.traj = run(model, out.disc.fn, RunOptions{cfg.t_max});
  } catch (const std::exception& e) {
    throw StageError("run", e.what());
  }

  try {
    const std::vector<double> mesh = default_mesh(
        out.traj, static_cast<std::size_t>(cfg.mesh_count), &out.field.warnings);
    auto warnings = std::move(out.field.warnings);
    out.field = lagrangian(out.traj, mesh);
    out.field.warnings = std::move(warnings);
  } catch (const std::exception& e) {
    throw StageError("characteristics", e.what());
  }

  try {
    const auto s_list = cfg.effective_s_list();
    const auto times = cfg.effective_snapshot_times();
    out.report = full_report(out.traj, out.field, s_list, times);
  } catch (const std::exception& e) {
    throw StageError("verify", e.what());
  }
  return out;
}

void write_artifacts(const RunConfig& cfg, const RunOutput& out,
                     const ConvergenceReport* convergence = nullptr) {
  fs::create_directories(cfg.out_dir);
  const std::string hash = config_hash(cfg);
  const auto path = [&](const char* name) {
    return (fs::path(cfg.out_dir) / name).string();
  };
  write_events_jsonl(path("events.jsonl"), out.traj, hash);
  write_snapshots_csv(path("snapshots.csv"), out.traj,
                      cfg.effective_snapshot_times(), hash);
  write_chars_csv(path("chars.csv"), out.field, hash);
  write_report_json(path("report.json"), cfg, out.traj, out.report, out.disc.report,
                    out.validation, out.field, convergence);
}

}  // namespace

int orchestrate(const RunConfig& cfg) {
  RunOutput out;
  try {
    out = execute(cfg);
  } catch (const std::exception& e) {
    std::cerr << "run aborted: " << e.what() << '\n';
    return 2;
  }
  try {
    write_artifacts(cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "artifact write failed: " << e.what() << '\n';
    return 2;
  }
  if (!out.report.all_pass()) {
    for (const CheckResult& c : out.report.checks) {
      if (!c.pass && c.gating) {
        std::cerr << "check failed: " << c.name << " at " << c.worst_location
                  << '\n';
      }
    }
    return 1;
  }
  return 0;
}

int sweep(const RunConfig& cfg, std::span<const std::int64_t> nu_list) {
  if (nu_list.size() < 2) {
    std::cerr << "sweep needs at least two nu values\n";
    return 2;
  }
  SampledData samples;
  try {
    samples = generate_initial(cfg);
  } catch (const std::exception& e) {
    std::cerr << "sweep aborted: " << e.what() << '\n';
    return 2;
  }

  // independent runs fan out across threads
  std::vector<std::future<int>> statuses;
  for (std::int64_t nu : nu_list) {
    RunConfig sub = cfg;
    sub.nu = nu;
    sub.out_dir = (fs::path(cfg.out_dir) / ("nu_" + std::to_string(nu))).string();
    statuses.push_back(
        std::async(std::launch::async, [sub]() { return orchestrate(sub); }));
  }
  int worst = 0;
  for (auto& f : statuses) worst = std::max(worst, f.get());

  try {
    const ModelSpec model = ModelSpec::synthetic(cfg.b, cfg.kappa, cfg.r);
    const auto times = cfg.effective_snapshot_times();
    const ConvergenceReport rep =
        convergence_study(model, samples, nu_list, times, cfg.t_max);
    fs::create_directories(cfg.out_dir);
    write_convergence_csv((fs::path(cfg.out_dir) / "convergence.csv").string(), rep,
                          config_hash(cfg));
    if (!rep.distances_decreasing) {
      std::cerr << "convergence probe: " << rep.note << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "convergence study failed: " << e.what() << '\n';
    return std::max(worst, 2);
  }
  return worst;
}

int verify_artifacts(const std::string& dir) {
  Trajectory traj;
  try {
    traj = load_events_jsonl((fs::path(dir) / "events.jsonl").string());
  } catch (const std::exception& e) {
    std::cerr << "cannot load artifacts: " << e.what() << '\n';
    return 2;
  }
  try {
    const std::vector<VariationExponent> s_list{VariationExponent::from_p(3.0),
                                                VariationExponent::from_p(2.0),
                                                VariationExponent::from_p(1.0)};
    const std::vector<double> times{0.5 * traj.t_max, traj.t_max};
    const std::vector<double> mesh = default_mesh(traj, 256);
    const LagrangianField field = lagrangian(traj, mesh);
    const CheckReport report = full_report(traj, field, s_list, times);
    for (const CheckResult& c : report.checks) {
      std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name;
      if (!c.pass) std::cout << "  " << c.worst_location;
      std::cout << '\n';
    }
    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wft
