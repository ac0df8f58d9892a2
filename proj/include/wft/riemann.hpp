#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wft/model.hpp"
#include "wft/variation.hpp"

namespace wft {

/// Engine-side state: w kept as the exact lattice index k (w = k/nu), z as
/// a double. Keeping k integral makes the grid invariance machine-exact.
struct LatticeState {
  std::int64_t w_idx = 0;
  double z = 0.0;

  bool operator==(const LatticeState&) const = default;
};

double lattice_w(std::int64_t w_idx, std::int64_t nu);

/// Converts a real-coordinate state; throws ContractViolation if w is not
/// a lattice point of nu^-1 Z (up to one ulp of w*nu).
LatticeState to_lattice(const State& u, std::int64_t nu);
State to_state(const LatticeState& u, std::int64_t nu);

enum class FrontKind { Shock1, Rare1, Contact2 };

const char* to_string(FrontKind k);

/// A moving discontinuity. Position is affine in time from the birth
/// anchor: x(t) = birth_x + speed * (t - birth_time).
struct Front {
  std::int64_t id = -1;
  FrontKind kind = FrontKind::Contact2;
  double birth_time = 0.0;
  double birth_x = 0.0;
  double speed = 0.0;
  LatticeState left;
  LatticeState right;
  double death_time = std::numeric_limits<double>::infinity();

  /// Signed w-strength in exact lattice units: sigma * nu.
  std::int64_t w_strength() const { return right.w_idx - left.w_idx; }
  /// Signed z-strength (0 for rarefaction fronts by construction).
  double z_strength() const { return right.z - left.z; }

  double position(double t) const { return birth_x + speed * (t - birth_time); }
  bool alive_at(double t) const { return birth_time <= t && t < death_time; }
};

/// Ordered outgoing fronts from one Riemann problem: at most one 1-wave
/// group (a single shock or a fan of unit rarefaction fronts) followed by
/// at most one contact discontinuity; speeds strictly increase;
/// zero-strength waves are never emitted.
struct WaveFan {
  std::vector<Front> fronts;

  bool empty() const { return fronts.empty(); }
};

/// Approximate Riemann solver in Riemann coordinates.
///
/// The intermediate state is (w_right, z_m) with z_m = z_left on the
/// rarefaction side and z_m = z_left + g(sigma) on the shock side. A
/// rarefaction is split into unit-strength fronts, the i-th moving at
/// lambda1 evaluated at its right w and the left z. The solver does not
/// assign ids/positions/times; see place_fan.
WaveFan solve_riemann(const ModelSpec& m, const LatticeState& left,
                      const LatticeState& right, std::int64_t nu);
WaveFan solve_riemann(const ModelSpec& m, const State& left, const State& right,
                      std::int64_t nu);

/// Stamps birth anchor and consecutive ids onto a freshly solved fan.
void place_fan(WaveFan& fan, double t, double x, std::int64_t& next_id);

/// Piecewise-constant initial data on the lattice: values[i] on
/// (breakpoints[i-1], breakpoints[i]], extended by the outer values.
struct LatticeFunction {
  std::int64_t nu = 1;
  std::vector<double> breakpoints;   // strictly increasing
  std::vector<std::int64_t> w_idx;   // breakpoints.size() + 1 entries
  std::vector<double> z;             // breakpoints.size() + 1 entries

  std::int64_t n_breakpoints() const {
    return static_cast<std::int64_t>(breakpoints.size());
  }
  /// Oscillation of w in exact lattice units (max - min of w_idx).
  std::int64_t osc_w_idx() const;
  double osc_w() const;
  double sup_abs_w() const;
  double sup_abs_z() const;
  std::size_t piece_at(double x) const;  // index of the piece containing x+
  StepFunction w_step() const;
  StepFunction z_step() const;
};

/// Point samples (x strictly increasing) of piecewise-constant data:
/// row 0 is the left background state; each later row is a jump at x to
/// the new value, left-continuous.
struct SampledData {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> z;
};

struct DiscretizeReport {
  double l1_distance_w = 0.0;    // over the sample support
  double linf_error_w = 0.0;     // pointwise quantization error, < 1/nu
  double osc_w_before = 0.0;
  double osc_w_after = 0.0;
  double sup_abs_w_before = 0.0;
  double sup_abs_w_after = 0.0;
  double sup_abs_z = 0.0;
  std::vector<double> s_values;
  std::vector<double> tvs_w_before;  // per s
  std::vector<double> tvs_w_after;   // per s
};

struct DiscretizedInitial {
  LatticeFunction fn;
  DiscretizeReport report;
};

/// Quantizes w onto the 1/nu lattice by floor steps measured from the data
/// minimum (monotone, so the value order is kept and the oscillation never
/// increases), keeps z at the sampled values, and collapses pieces that
/// became equal. Rejects non-finite samples.
DiscretizedInitial discretize_initial(const SampledData& samples, std::int64_t nu,
                                      std::span<const VariationExponent> s_list = {});

/// One wave fan per breakpoint, placed at the breakpoints with
/// birth_time = 0 and globally increasing ids.
std::vector<WaveFan> initial_wavefans(const LatticeFunction& f, const ModelSpec& m);

}  // namespace wft
