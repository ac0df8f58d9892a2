#include <cmath>
#include <doctest.h>

#include "wft/characteristics.hpp"
#include "wft/common.hpp"

using namespace wft;

namespace {

const ModelSpec kModel = ModelSpec::synthetic();

LatticeFunction pure_shock_chain(std::vector<std::int64_t> w_idx,
                                 std::vector<double> xs, std::int64_t nu) {
  // z follows the Lax curve exactly at every breakpoint, so no contacts
  // are emitted: shocks for descending w, bare rarefactions for ascending
  LatticeFunction f;
  f.nu = nu;
  f.breakpoints = std::move(xs);
  f.w_idx = std::move(w_idx);
  f.z.push_back(0.0);
  for (std::size_t i = 0; i + 1 < f.w_idx.size(); ++i) {
    const double sigma = lattice_w(f.w_idx[i + 1] - f.w_idx[i], nu);
    f.z.push_back(f.z.back() + (sigma < 0.0 ? shock_z_jump(kModel, sigma) : 0.0));
  }
  return f;
}

}  // namespace

TEST_CASE("no fronts: a straight line at lambda2") {
  LatticeFunction f{10, {}, {1}, {0.02}};
  const Trajectory traj = run(kModel, f, RunOptions{2.0});
  const CharPath p = trace_2char(traj, 0.3);
  CHECK(p.crossings.empty());
  const double slope = lambda2(kModel, 0.1);
  CHECK(p.position(1.5) == doctest::Approx(0.3 + 1.5 * slope));
  CHECK(p.z_final == 0.02);
  CHECK(cubic_budget(p) == 0.0);
}

TEST_CASE("crossing a rarefaction front leaves z unchanged") {
  LatticeFunction f{10, {1.0}, {0, 1}, {0.03, 0.03}};
  const Trajectory traj = run(kModel, f, RunOptions{2.0});
  const CharPath p = trace_2char(traj, 0.0);
  REQUIRE(p.crossings.size() == 1);
  CHECK(p.crossings[0].dz == 0.0);
  CHECK(p.crossings[0].cube == 0.0);
  CHECK(p.z_final == 0.03);
  // lambda2 jump recorded for the telescoping sum
  CHECK(p.crossings[0].dlambda2 == doctest::Approx(0.1));
}

TEST_CASE("crossing a shock adds the exact cubic jump") {
  const LatticeFunction f = pure_shock_chain({0, -2}, {1.0}, 10);
  const Trajectory traj = run(kModel, f, RunOptions{2.0});
  const CharPath p = trace_2char(traj, 0.0);
  REQUIRE(p.crossings.size() == 1);
  CHECK(p.crossings[0].dz == shock_z_jump(kModel, -0.2));
  CHECK(p.crossings[0].cube == doctest::Approx(0.008));
  CHECK(p.z_final == p.z_initial + p.crossings[0].dz);
}

TEST_CASE("z_along sums the crossing jumps exactly") {
  const LatticeFunction f = pure_shock_chain({0, -1, -3}, {1.0, 2.0}, 20);
  const Trajectory traj = run(kModel, f, RunOptions{0.8});
  const CharPath p = trace_2char(traj, 0.5);
  REQUIRE(p.crossings.size() == 2);
  CHECK(p.crossings[0].dz == shock_z_jump(kModel, -0.05));
  CHECK(p.crossings[1].dz == shock_z_jump(kModel, -0.1));

  const auto zs = z_along(p);
  REQUIRE(zs.size() == 4);
  double fold = zs.front().second;
  for (const CharCrossing& c : p.crossings) fold += c.dz;
  CHECK(zs.back().second == fold);
  for (std::size_t i = 1; i < zs.size(); ++i) {
    CHECK(zs[i].second >= zs[i - 1].second);
  }
}

TEST_CASE("absorption at an interaction point, then ride crossings") {
  // three pure shocks; the first two collide at t = 2, x = -1.5
  const LatticeFunction f = pure_shock_chain({1, 0, -1, -2}, {0.4, 0.6, 0.9}, 10);
  const Trajectory traj = run(kModel, f, RunOptions{4.0});
  REQUIRE(!traj.events.empty());
  const InteractionRecord& first = traj.events[0];
  CHECK(first.tag == InteractionCase::S1_S1);
  CHECK(first.time == doctest::Approx(2.0));
  CHECK(first.position == doctest::Approx(-1.5));

  // launch so the path reaches the interaction point exactly: the region
  // left of the first shock has w = 0.1, slope lambda2 = 1.1
  const double slope = lambda2(kModel, 0.1);
  const double x0 = first.position - slope * first.time;
  const CharPath p = trace_2char(traj, x0);

  REQUIRE(p.absorbed_into_cd.has_value());
  CHECK(traj.fronts[static_cast<std::size_t>(*p.absorbed_into_cd)].kind ==
        FrontKind::Contact2);
  REQUIRE(p.crossings.size() >= 2);
  const CharCrossing& cap = p.crossings[0];
  CHECK(cap.at_interaction);
  CHECK(cap.time == doctest::Approx(2.0));
  CHECK(cap.dz == doctest::Approx(2.0 * shock_z_jump(kModel, -0.1)));
  CHECK(cap.cube == doctest::Approx(2.0 * 0.001));

  // the ridden contact later meets the third shock: rise continues only there
  const CharCrossing& ride = p.crossings[1];
  CHECK(ride.at_interaction);
  CHECK(ride.dz == shock_z_jump(kModel, -0.1));
  for (const CharCrossing& c : p.crossings) CHECK(c.dz >= 0.0);
  CHECK(p.z_final >= p.z_initial);
}

TEST_CASE("lagrangian: identity at t = 0 and pure-contact data") {
  LatticeFunction cd{10, {0.0, 1.0}, {0, 0, 0}, {0.02, -0.01, 0.03}};
  const Trajectory traj = run(kModel, cd, RunOptions{2.0});
  const std::vector<double> mesh = default_mesh(traj, 32);
  const LagrangianField field = lagrangian(traj, mesh);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    CHECK(field.eta(i, 0.0) == 0.0);
    CHECK(field.v(i, 0.0) == 1.0);
    // no 1-waves anywhere: nothing ever crossed
    CHECK(field.eta(i, 2.0) == 0.0);
    CHECK(field.v(i, 2.0) == 1.0);
    CHECK(field.paths[i].crossings.empty());
  }
}

TEST_CASE("lagrangian: telescoping exponent within the uniform bounds") {
  const LatticeFunction f = pure_shock_chain({2, 1, 0, -1}, {0.2, 0.5, 0.8}, 10);
  const Trajectory traj = run(kModel, f, RunOptions{3.0});
  const std::vector<double> mesh = default_mesh(traj, 64);
  const LagrangianField field = lagrangian(traj, mesh);
  const double two_m = 2.0 * field.lambda2_sup;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double s = field.paths[i].lambda2_jump_sum(traj.t_max);
    CHECK(std::fabs(s) <= two_m + 1e-10);
    CHECK(field.v(i, traj.t_max) == doctest::Approx(std::exp(s)));
    CHECK(field.v(i, traj.t_max) >= std::exp(-two_m) - 1e-10);
    CHECK(field.v(i, traj.t_max) <= std::exp(two_m) + 1e-10);
  }
}

TEST_CASE("lagrangian: mesh order is preserved") {
  const LatticeFunction f = pure_shock_chain({1, 0, -1, 0, -1}, // mixed data
                                             {0.1, 0.35, 0.6, 0.85}, 10);
  const Trajectory traj = run(kModel, f, RunOptions{2.5});
  const std::vector<double> mesh = default_mesh(traj, 96);
  const LagrangianField field = lagrangian(traj, mesh);
  for (double t : {0.0, 0.5, 1.0, 1.7, 2.5}) {
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
      CHECK(field.gamma2(i, t) <= field.gamma2(i + 1, t) + 1e-10);
    }
  }
}

TEST_CASE("finite-difference slope through a rarefaction fan") {
  LatticeFunction f{40, {0.5}, {-4, 4}, {0.0, 0.0}};
  const Trajectory traj = run(kModel, f, RunOptions{1.5});
  const double h = 1e-3;
  const CharPath a = trace_2char(traj, -0.3);
  const CharPath b = trace_2char(traj, -0.3 + h);
  const double t = 1.4;
  const double fd = (b.position(t) - a.position(t)) / h;

  // the discrete map stretches the gap by (lambda2+ - s)/(lambda2- - s)
  // at each crossing; exp(sum of jumps) matches to first order in the data
  double product = 1.0;
  double prev_l2 = lambda2(kModel, -0.1);
  for (const CharCrossing& c : a.crossings) {
    const double next_l2 = prev_l2 + c.dlambda2;
    const double s = traj.fronts[static_cast<std::size_t>(c.front_id)].speed;
    product *= (next_l2 - s) / (prev_l2 - s);
    prev_l2 = next_l2;
  }
  CHECK(fd == doctest::Approx(product).epsilon(1e-6));
  const double v = std::exp(a.lambda2_jump_sum(t));
  CHECK(fd == doctest::Approx(v).epsilon(2.0 * traj.initial.osc_w()));
}

TEST_CASE("default_mesh avoids breakpoints") {
  LatticeFunction f{10, {0.0, 0.5}, {1, 0, 1}, {0.0, 0.0, 0.0}};
  const Trajectory traj = run(kModel, f, RunOptions{1.0});
  const std::vector<double> mesh = default_mesh(traj, 128);
  for (double x : mesh) {
    CHECK(!std::binary_search(f.breakpoints.begin(), f.breakpoints.end(), x));
  }
}
