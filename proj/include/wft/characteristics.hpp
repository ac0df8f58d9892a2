#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wft/engine.hpp"

namespace wft {

/// One meeting of a forward 2-characteristic with a 1-front (transversal
/// crossing) or with an interaction point (absorption / ride transition).
struct CharCrossing {
  double time = 0.0;
  double x = 0.0;
  std::int64_t front_id = -1;  // the 1-front involved
  double dz = 0.0;             // z jump on the path (>= 0 for convex models)
  double dlambda2 = 0.0;       // lambda2 jump, feeds the telescoping sum
  double cube = 0.0;           // |sigma|^3 contribution (shocks only)
  double z_after = 0.0;        // authoritative z right after the crossing
  bool at_interaction = false;
};

/// Forward generalized 2-characteristic through a finished trajectory:
/// piecewise linear, slope lambda2(w) of the occupied region, never
/// crossing a contact (parallel), absorbed onto the outgoing contact when
/// it reaches an interaction point.
struct CharPath {
  double x0 = 0.0;
  double z_initial = 0.0;
  double z_final = 0.0;
  double t_end = 0.0;
  std::vector<std::pair<double, double>> vertices;  // (t, x), t increasing
  std::vector<CharCrossing> crossings;
  std::optional<std::int64_t> absorbed_into_cd;

  double position(double t) const;        // polyline interpolation
  double z_at(double t) const;            // right-side z at time t
  double lambda2_jump_sum(double t) const;
  double cube_sum(double t) const;
};

/// Traces one path from (0, x0). Launching exactly on a front starts on
/// its right side.
CharPath trace_2char(const Trajectory& traj, double x0);

/// Traces many paths in one sweep over the event log.
std::vector<CharPath> trace_2chars(const Trajectory& traj,
                                   std::span<const double> x0s);

/// (t, z) samples along the path: start, one entry per crossing, end.
/// z is non-decreasing and the total rise is the sum of the crossing dz.
std::vector<std::pair<double, double>> z_along(const CharPath& path);

/// Sum of |sigma|^3 over crossed 1-shocks, interaction points included.
double cubic_budget(const CharPath& path);

/// The Lagrangian picture on a mesh of launch points: per-point paths,
/// eta(t,x) = z(t, gamma2(t,x)) - z0(x), and v(t,x) = exp(sum of lambda2
/// jumps), the spatial derivative of the straightening map.
struct LagrangianField {
  std::vector<double> mesh;
  std::vector<CharPath> paths;
  double lambda2_sup = 0.0;  // M = sup |lambda2(w)| over the run
  std::vector<std::string> warnings;

  double gamma2(std::size_t i, double t) const { return paths[i].position(t); }
  double eta(std::size_t i, double t) const;
  double v(std::size_t i, double t) const;
};

/// count launch points, uniform over the data support widened by one
/// support width, nudged off initial breakpoints.
std::vector<double> default_mesh(const Trajectory& traj, std::size_t count,
                                 std::vector<std::string>* warnings = nullptr);

LagrangianField lagrangian(const Trajectory& traj, std::span<const double> mesh);

/// sup |lambda2(w)| over every state appearing in the run.
double lambda2_sup_over_run(const Trajectory& traj);

}  // namespace wft
