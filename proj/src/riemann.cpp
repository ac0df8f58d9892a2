#include "wft/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wft/common.hpp"

namespace wft {

double lattice_w(std::int64_t w_idx, std::int64_t nu) {
  return static_cast<double>(w_idx) / static_cast<double>(nu);
}

LatticeState to_lattice(const State& u, std::int64_t nu) {
  const double scaled = u.w * static_cast<double>(nu);
  const double rounded = std::round(scaled);
  if (std::fabs(scaled - rounded) > 4.0 * std::fabs(scaled) *
                                        std::numeric_limits<double>::epsilon() &&
      std::fabs(scaled - rounded) > 1e-12) {
    std::ostringstream os;
    os << "to_lattice: w = " << u.w << " is not on the 1/" << nu << " lattice";
    throw ContractViolation(os.str());
  }
  return {static_cast<std::int64_t>(rounded), u.z};
}

State to_state(const LatticeState& u, std::int64_t nu) {
  return {lattice_w(u.w_idx, nu), u.z};
}

const char* to_string(FrontKind k) {
  switch (k) {
    case FrontKind::Shock1: return "S1";
    case FrontKind::Rare1: return "R1";
    case FrontKind::Contact2: return "CD";
  }
  return "?";
}

namespace {

void require_in_ball(const ModelSpec& m, const LatticeState& u, std::int64_t nu,
                     const char* what) {
  const State s = to_state(u, nu);
  if (!in_ball(m, s)) {
    std::ostringstream os;
    os << what << ": state (w=" << s.w << ", z=" << s.z
       << ") left the admissible ball of radius " << m.r;
    throw AdmissibilityError(os.str());
  }
}

}  // namespace

WaveFan solve_riemann(const ModelSpec& m, const LatticeState& left,
                      const LatticeState& right, std::int64_t nu) {
  WaveFan fan;
  if (left == right) return fan;

  require_in_ball(m, left, nu, "solve_riemann");
  require_in_ball(m, right, nu, "solve_riemann");

  const std::int64_t dw = right.w_idx - left.w_idx;
  LatticeState mid{right.w_idx, left.z};

  if (dw > 0) {
    // Rarefaction side: z constant, one unit front per lattice step.
    for (std::int64_t i = 1; i <= dw; ++i) {
      Front f;
      f.kind = FrontKind::Rare1;
      f.left = {left.w_idx + (i - 1), left.z};
      f.right = {left.w_idx + i, left.z};
      f.speed = lambda1(m, to_state(f.right, nu));
      fan.fronts.push_back(f);
    }
  } else if (dw < 0) {
    const double sigma = lattice_w(dw, nu);
    mid.z = left.z + shock_z_jump(m, sigma);
    require_in_ball(m, mid, nu, "solve_riemann (intermediate)");
    Front f;
    f.kind = FrontKind::Shock1;
    f.left = left;
    f.right = mid;
    f.speed = shock_speed(m, to_state(left, nu), to_state(mid, nu));
    fan.fronts.push_back(f);
  }

  if (mid.z != right.z) {
    Front f;
    f.kind = FrontKind::Contact2;
    f.left = mid;
    f.right = right;
    f.speed = lambda2(m, lattice_w(right.w_idx, nu));
    fan.fronts.push_back(f);
  }
  return fan;
}

WaveFan solve_riemann(const ModelSpec& m, const State& left, const State& right,
                      std::int64_t nu) {
  return solve_riemann(m, to_lattice(left, nu), to_lattice(right, nu), nu);
}

void place_fan(WaveFan& fan, double t, double x, std::int64_t& next_id) {
  for (Front& f : fan.fronts) {
    f.id = next_id++;
    f.birth_time = t;
    f.birth_x = x;
  }
}

std::int64_t LatticeFunction::osc_w_idx() const {
  if (w_idx.empty()) return 0;
  auto [lo, hi] = std::minmax_element(w_idx.begin(), w_idx.end());
  return *hi - *lo;
}

double LatticeFunction::osc_w() const { return lattice_w(osc_w_idx(), nu); }

double LatticeFunction::sup_abs_w() const {
  double sup = 0.0;
  for (std::int64_t k : w_idx) sup = std::max(sup, std::fabs(lattice_w(k, nu)));
  return sup;
}

double LatticeFunction::sup_abs_z() const {
  double sup = 0.0;
  for (double v : z) sup = std::max(sup, std::fabs(v));
  return sup;
}

std::size_t LatticeFunction::piece_at(double x) const {
  // value on (breakpoints[i-1], breakpoints[i]]; x strictly right of the
  // last breakpoint falls in the final piece
  std::size_t i = 0;
  while (i < breakpoints.size() && x > breakpoints[i]) ++i;
  return i;
}

StepFunction LatticeFunction::w_step() const {
  StepFunction f;
  f.breakpoints = breakpoints;
  f.values.reserve(w_idx.size());
  for (std::int64_t k : w_idx) f.values.push_back(lattice_w(k, nu));
  return f;
}

StepFunction LatticeFunction::z_step() const { return {breakpoints, z}; }

DiscretizedInitial discretize_initial(const SampledData& samples, std::int64_t nu,
                                      std::span<const VariationExponent> s_list) {
  if (nu < 1) throw ContractViolation("discretize_initial: nu must be >= 1");
  const std::size_t n = samples.x.size();
  if (samples.w.size() != n || samples.z.size() != n) {
    throw ContractViolation("discretize_initial: column lengths differ");
  }
  if (n == 0) throw ContractViolation("discretize_initial: no samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(samples.x[i]) || !std::isfinite(samples.w[i]) ||
        !std::isfinite(samples.z[i])) {
      throw ContractViolation("discretize_initial: non-finite sample at row " +
                              std::to_string(i));
    }
    if (i > 0 && !(samples.x[i] > samples.x[i - 1])) {
      throw ContractViolation(
          "discretize_initial: x must be strictly increasing at row " +
          std::to_string(i));
    }
  }

  DiscretizedInitial out;
  LatticeFunction& fn = out.fn;
  DiscretizeReport& rep = out.report;
  fn.nu = nu;

  // Floor quantization anchored at the data minimum: values stay on the
  // lattice and keep their order, and the oscillation becomes
  // floor(nu*osc)/nu, never more than the original.
  const double w_min = *std::min_element(samples.w.begin(), samples.w.end());
  const std::int64_t anchor = static_cast<std::int64_t>(
      std::floor(w_min * static_cast<double>(nu)));
  std::vector<std::int64_t> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = anchor + static_cast<std::int64_t>(std::floor(
                        (samples.w[i] - w_min) * static_cast<double>(nu)));
  }

  // Collapse pieces whose quantized pair repeats. Sample i's value holds on
  // (x[i], x[i+1]]; sample 0 is the left background.
  fn.w_idx.push_back(q[0]);
  fn.z.push_back(samples.z[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (q[i] != fn.w_idx.back() || samples.z[i] != fn.z.back()) {
      fn.breakpoints.push_back(samples.x[i]);
      fn.w_idx.push_back(q[i]);
      fn.z.push_back(samples.z[i]);
    }
  }

  // Quantization error, measured against the sampled step function on its
  // support. The pointwise error is below 1/nu by construction; the L1
  // error additionally scales with the support length.
  double l1 = 0.0, linf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double err = std::fabs(samples.w[i] - lattice_w(q[i], nu));
    linf = std::max(linf, err);
    if (i + 1 < n) l1 += err * (samples.x[i + 1] - samples.x[i]);
  }
  rep.l1_distance_w = l1;
  rep.linf_error_w = linf;

  auto osc = [](std::span<const double> v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  auto supabs = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
  };
  rep.osc_w_before = osc(samples.w);
  rep.osc_w_after = fn.osc_w();
  rep.sup_abs_w_before = supabs(samples.w);
  rep.sup_abs_w_after = fn.sup_abs_w();
  rep.sup_abs_z = supabs(samples.z);

  const StepFunction w_after = fn.w_step();
  for (const VariationExponent& e : s_list) {
    rep.s_values.push_back(e.s);
    rep.tvs_w_before.push_back(tvs_exact(samples.w, e));
    rep.tvs_w_after.push_back(tvs_total(w_after, e));
  }
  return out;
}

std::vector<WaveFan> initial_wavefans(const LatticeFunction& f, const ModelSpec& m) {
  std::vector<WaveFan> fans;
  std::int64_t next_id = 0;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    const LatticeState left{f.w_idx[i], f.z[i]};
    const LatticeState right{f.w_idx[i + 1], f.z[i + 1]};
    WaveFan fan = solve_riemann(m, left, right, f.nu);
    place_fan(fan, 0.0, f.breakpoints[i], next_id);
    fans.push_back(std::move(fan));
  }
  return fans;
}

}  // namespace wft
