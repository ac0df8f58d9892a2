#pragma once

#include <string>
#include <vector>

#include "wft/characteristics.hpp"
#include "wft/config.hpp"
#include "wft/engine.hpp"
#include "wft/verify.hpp"

namespace wft {

/// Shortest round-trip decimal form of a double.
std::string double_to_string(double v);

/// x,w,z rows (header optional). Row 0 is the left background state, each
/// later row a jump at x.
SampledData load_samples_csv(const std::string& path);
void write_samples_csv(const std::string& path, const SampledData& samples);

/// One value per line (or per comma-separated field) for the variation
/// subcommand.
std::vector<double> load_sequence_csv(const std::string& path);

/// Builds the initial samples named by the config: a preset, the seeded
/// random-steps generator, or a CSV path.
SampledData generate_initial(const RunConfig& cfg);

/// events.jsonl: a header line with the config hash and the discretized
/// data, one line per initial front, then one line per interaction with
/// its outgoing fronts inline. The file reconstructs the trajectory
/// exactly.
void write_events_jsonl(const std::string& path, const Trajectory& traj,
                        const std::string& cfg_hash);
Trajectory load_events_jsonl(const std::string& path);

void write_snapshots_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<double>& times,
                         const std::string& cfg_hash);

void write_chars_csv(const std::string& path, const LagrangianField& field,
                     const std::string& cfg_hash);

void write_report_json(const std::string& path, const RunConfig& cfg,
                       const Trajectory& traj, const CheckReport& report,
                       const DiscretizeReport& disc,
                       const ValidationReport& model_validation,
                       const LagrangianField& field,
                       const ConvergenceReport* convergence = nullptr);

void write_convergence_csv(const std::string& path, const ConvergenceReport& rep,
                           const std::string& cfg_hash);

}  // namespace wft
