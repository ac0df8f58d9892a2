#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wft {

/// Fractional variation exponent: s in (0, 1] with p = 1/s.
///
/// Construct from whichever side is exact. For s = 1/3 use from_p(3) so
/// that p is the exact integer and only s carries rounding.
struct VariationExponent {
  double s;
  double p;

  static VariationExponent from_s(double s);
  static VariationExponent from_p(double p);
};

/// |delta|^p evaluated as exp(p*log|delta|), with |delta| = 0 mapped to 0
/// and p = 1 mapped to |delta| directly. Every TV^s computation in this
/// library, including test oracles, must go through this one function so
/// that equal chains produce bit-equal sums.
double increment_power(double delta, double p);

/// Keeps the first point, the last point, and strict interior extrema;
/// adjacent equal values are collapsed first. The result has the same
/// TV^s as the input for every s in (0, 1].
std::vector<double> reduce_to_extrema(std::span<const double> values);
std::vector<std::int64_t> reduce_to_extrema(std::span<const std::int64_t> values);

/// TV^s of a finite sequence: sup over subdivisions of the sum of
/// |increment|^p. Exact dynamic program on the extrema-reduced sequence,
/// O(m^2) in the number m of retained extrema. Sequences of length <= 1
/// have TV^s = 0.
double tvs_exact(std::span<const double> values, const VariationExponent& e);

/// Power table for lattice-valued sequences: entry m is
/// increment_power(m/nu, p) for m = 0..max_abs_diff.
std::vector<double> lattice_power_table(std::int64_t max_abs_diff, std::int64_t nu,
                                        double p);

/// TV^s of a sequence of lattice indices (values k/nu), using a
/// precomputed power table. Identical chain arithmetic to tvs_exact, so
/// two sequences that differ by deleting points compare exactly.
double tvs_lattice(std::span<const std::int64_t> values,
                   std::span<const double> table);

/// Piecewise-constant function on the line: values[i] on
/// (breakpoints[i-1], breakpoints[i]], values.front() left of everything,
/// values.back() right of everything.
struct StepFunction {
  std::vector<double> breakpoints;  // strictly increasing
  std::vector<double> values;       // breakpoints.size() + 1 entries
};

/// Values the function takes on the open interval (a, b), in spatial order.
std::vector<double> values_on_interval(const StepFunction& f, double a, double b);

double tvs_on_interval(const StepFunction& f, double a, double b,
                       const VariationExponent& e);
double tvs_total(const StepFunction& f, const VariationExponent& e);

/// (TV^s f)^s
double bvs_seminorm(const StepFunction& f, const VariationExponent& e);
double bvs_seminorm(std::span<const double> values, const VariationExponent& e);

/// sup-norm + seminorm
double bvs_norm(const StepFunction& f, const VariationExponent& e);

}  // namespace wft
