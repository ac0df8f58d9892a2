#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wft {

/// A point in Riemann-invariant coordinates. w belongs to the genuinely
/// nonlinear family, z to the linearly degenerate one.
struct State {
  double w = 0.0;
  double z = 0.0;
};

/// The system, given directly in Riemann coordinates: both eigenvalue
/// fields, the cubic coupling constant kappa of the shock z-jump law
/// g(sigma) = kappa*|sigma|^3, and the admissible max-norm ball radius r.
///
/// Structural requirements (checked by validate_model): d(lambda1)/dw > 0,
/// sup lambda1 < 0 < inf lambda2 on the ball, lambda2 independent of z.
struct ModelSpec {
  std::function<double(double w, double z)> lambda1_fn;
  std::function<double(double w)> lambda2_fn;
  double b = 0.0;      // z-sensitivity of lambda1 in the synthetic model
  double kappa = 1.0;  // cubic shock-coupling coefficient, >= 0 for convex case
  double r = 0.25;     // admissible ball radius (max-norm)

  /// lambda1 = -1 + w + b z, lambda2 = 1 + w.
  static ModelSpec synthetic(double b = 0.0, double kappa = 1.0, double r = 0.25);
};

bool in_ball(const ModelSpec& m, const State& u);

/// Eigenvalue of the 1 (GNL) family. Throws DomainViolation outside the ball.
double lambda1(const ModelSpec& m, const State& u);

/// Eigenvalue of the 2 (LD) family; depends on w only.
double lambda2(const ModelSpec& m, double w);

/// z-jump across a 1-shock of strength sigma <= 0: g(sigma) = kappa|sigma|^3.
/// The right state of a shock from (w,z) is (w + sigma, z + g(sigma)).
double shock_z_jump(const ModelSpec& m, double sigma);

/// Speed of the 1-shock joining left to right: the mean of lambda1 at the
/// endpoints. Throws AdmissibilityError if the Lax inequalities
/// lambda1(right) < speed < lambda1(left) fail (degenerate sigma = 0 allowed).
double shock_speed(const ModelSpec& m, const State& left, const State& right);

struct ValidationEntry {
  std::string check;
  bool pass = true;
  std::string detail;  // counterexample location when failing
};

struct ValidationReport {
  bool passed = true;
  std::vector<ValidationEntry> entries;
};

/// Samples the admissible ball on a grid of the given spacing and checks
/// every structural hypothesis; failures become report entries, never throws.
ValidationReport validate_model(const ModelSpec& m, double grid_resolution = 1e-2);

}  // namespace wft
