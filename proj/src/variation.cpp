#include "wft/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wft/common.hpp"

namespace wft {

VariationExponent VariationExponent::from_s(double s) {
  if (!(s > 0.0) || !(s <= 1.0)) {
    throw ContractViolation("variation exponent requires 0 < s <= 1");
  }
  return {s, 1.0 / s};
}

VariationExponent VariationExponent::from_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ContractViolation("variation exponent requires p >= 1");
  }
  return {1.0 / p, p};
}

double increment_power(double delta, double p) {
  const double a = std::fabs(delta);
  if (a == 0.0) return 0.0;
  if (p == 1.0) return a;
  return std::exp(p * std::log(a));
}

namespace {

template <class T>
std::vector<T> reduce_impl(std::span<const T> values) {
  std::vector<T> collapsed;
  collapsed.reserve(values.size());
  for (const T& v : values) {
    if (collapsed.empty() || collapsed.back() != v) collapsed.push_back(v);
  }
  if (collapsed.size() <= 2) return collapsed;

  std::vector<T> out;
  out.reserve(collapsed.size());
  out.push_back(collapsed.front());
  for (std::size_t i = 1; i + 1 < collapsed.size(); ++i) {
    const bool up_before = collapsed[i - 1] < collapsed[i];
    const bool up_after = collapsed[i] < collapsed[i + 1];
    if (up_before != up_after) out.push_back(collapsed[i]);  // strict extremum
  }
  out.push_back(collapsed.back());
  return out;
}

// Best chain sum ending at each index; a chain may start anywhere.
// powers(i, j) must return the increment power between indices j < i.
template <class Powers>
double chain_dp(std::size_t n, Powers&& powers) {
  if (n <= 1) return 0.0;
  std::vector<double> best(n, 0.0);
  double answer = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double f = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double cand = best[j] + powers(i, j);
      if (cand > f) f = cand;
    }
    best[i] = f;
    if (f > answer) answer = f;
  }
  return answer;
}

}  // namespace

std::vector<double> reduce_to_extrema(std::span<const double> values) {
  return reduce_impl(values);
}

std::vector<std::int64_t> reduce_to_extrema(std::span<const std::int64_t> values) {
  return reduce_impl(values);
}

double tvs_exact(std::span<const double> values, const VariationExponent& e) {
  const std::vector<double> u = reduce_to_extrema(values);
  return chain_dp(u.size(), [&](std::size_t i, std::size_t j) {
    return increment_power(u[i] - u[j], e.p);
  });
}

std::vector<double> lattice_power_table(std::int64_t max_abs_diff, std::int64_t nu,
                                        double p) {
  if (nu < 1) throw ContractViolation("lattice_power_table: nu must be >= 1");
  std::vector<double> table(static_cast<std::size_t>(max_abs_diff) + 1);
  for (std::int64_t m = 0; m <= max_abs_diff; ++m) {
    table[static_cast<std::size_t>(m)] =
        increment_power(static_cast<double>(m) / static_cast<double>(nu), p);
  }
  return table;
}

double tvs_lattice(std::span<const std::int64_t> values,
                   std::span<const double> table) {
  const std::vector<std::int64_t> u = reduce_to_extrema(values);
  return chain_dp(u.size(), [&](std::size_t i, std::size_t j) {
    const std::int64_t d = u[i] > u[j] ? u[i] - u[j] : u[j] - u[i];
    return table[static_cast<std::size_t>(d)];
  });
}

std::vector<double> values_on_interval(const StepFunction& f, double a, double b) {
  if (f.values.size() != f.breakpoints.size() + 1) {
    throw ContractViolation("StepFunction: values must be breakpoints+1 long");
  }
  std::vector<double> out;
  if (!(a < b)) return out;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double lo = (i == 0) ? -std::numeric_limits<double>::infinity()
                               : f.breakpoints[i - 1];
    const double hi = (i == f.breakpoints.size())
                          ? std::numeric_limits<double>::infinity()
                          : f.breakpoints[i];
    if (std::max(lo, a) < std::min(hi, b)) out.push_back(f.values[i]);
  }
  return out;
}

double tvs_on_interval(const StepFunction& f, double a, double b,
                       const VariationExponent& e) {
  const std::vector<double> u = values_on_interval(f, a, b);
  return tvs_exact(u, e);
}

double tvs_total(const StepFunction& f, const VariationExponent& e) {
  return tvs_exact(f.values, e);
}

namespace {

double root_power(double tvs, double s) {
  if (tvs == 0.0) return 0.0;
  if (s == 1.0) return tvs;
  return std::exp(s * std::log(tvs));
}

}  // namespace

double bvs_seminorm(const StepFunction& f, const VariationExponent& e) {
  return root_power(tvs_total(f, e), e.s);
}

double bvs_seminorm(std::span<const double> values, const VariationExponent& e) {
  return root_power(tvs_exact(values, e), e.s);
}

double bvs_norm(const StepFunction& f, const VariationExponent& e) {
  double sup = 0.0;
  for (double v : f.values) sup = std::max(sup, std::fabs(v));
  return sup + bvs_seminorm(f, e);
}

}  // namespace wft
