#pragma once

#include <span>
#include <string>

#include "wft/config.hpp"

namespace wft {

/// discretize -> run -> characteristics -> verify -> write artifacts
/// (events.jsonl, snapshots.csv, chars.csv, report.json) into cfg.out_dir.
/// Returns 0 when every gated check passes, 1 when a check fails, 2 on a
/// stage error (partial artifacts are flushed with a stage-tagged message).
int orchestrate(const RunConfig& cfg);

/// Runs the same initial data at each nu (in parallel), writes per-nu
/// artifacts into out_dir/nu_<k>/ and a convergence.csv table. Returns the
/// worst per-run status; the convergence trend itself never gates.
int sweep(const RunConfig& cfg, std::span<const std::int64_t> nu_list);

/// Reloads events.jsonl from a run directory and re-runs every check on
/// the saved trajectory. Returns 0 iff all gated checks pass.
int verify_artifacts(const std::string& dir);

}  // namespace wft
