#include <cmath>
#include <doctest.h>
#include <random>

#include "support/oracles.hpp"
#include "wft/common.hpp"
#include "wft/engine.hpp"

using namespace wft;

namespace {

const ModelSpec kModel = ModelSpec::synthetic();

Front make_front(std::int64_t id, double x, double speed,
                 FrontKind kind = FrontKind::Shock1) {
  Front f;
  f.id = id;
  f.kind = kind;
  f.birth_x = x;
  f.birth_time = 0.0;
  f.speed = speed;
  return f;
}

LatticeFunction two_pure_shocks() {
  // z sits exactly on the shock curve, so the fans are single shocks
  LatticeFunction f;
  f.nu = 10;
  f.breakpoints = {0.4, 0.6};
  f.w_idx = {1, 0, -1};
  const double z0 = 0.0;
  const double z1 = z0 + shock_z_jump(kModel, -0.1);
  const double z2 = z1 + shock_z_jump(kModel, -0.1);
  f.z = {z0, z1, z2};
  return f;
}

LatticeFunction random_lattice(std::mt19937_64& rng, std::int64_t nu, int pieces,
                               std::int64_t w_amp_idx, double z_amp) {
  LatticeFunction f;
  f.nu = nu;
  auto draw_w = [&]() {
    return static_cast<std::int64_t>(rng() % (2 * w_amp_idx + 1)) - w_amp_idx;
  };
  f.w_idx.push_back(draw_w());
  f.z.push_back(z_amp * (2.0 * test::uniform01(rng) - 1.0));
  double x = 0.0;
  for (int i = 1; i < pieces; ++i) {
    x += 0.02 + test::uniform01(rng) / static_cast<double>(pieces);
    std::int64_t k = draw_w();
    double z = z_amp * (2.0 * test::uniform01(rng) - 1.0);
    if (k == f.w_idx.back() && z == f.z.back()) k = (k > -w_amp_idx) ? k - 1 : k + 1;
    f.breakpoints.push_back(x);
    f.w_idx.push_back(k);
    f.z.push_back(z);
  }
  return f;
}

}  // namespace

TEST_CASE("next_collision kinematics") {
  std::vector<Front> fronts{make_front(0, 0.0, 1.0), make_front(1, 1.0, -1.0)};
  const auto c = next_collision(fronts, 0.0);
  REQUIRE(c.has_value());
  CHECK(c->time == doctest::Approx(0.5));
  CHECK(c->position == doctest::Approx(0.5));
  CHECK(c->left_id == 0);
  CHECK(c->right_id == 1);

  std::vector<Front> parallel{make_front(0, 0.0, 0.5), make_front(1, 1.0, 0.5)};
  CHECK_FALSE(next_collision(parallel, 0.0).has_value());

  // three fronts meeting simultaneously: leftmost adjacent pair first
  std::vector<Front> triple{make_front(0, 0.0, 1.0), make_front(1, 1.0, 0.0),
                            make_front(2, 2.0, -1.0)};
  const auto t = next_collision(triple, 0.0);
  REQUIRE(t.has_value());
  CHECK(t->time == doctest::Approx(1.0));
  CHECK(t->left_id == 0);
  CHECK(t->right_id == 1);
}

TEST_CASE("classify_interaction rejects impossible pairs") {
  CHECK(classify_interaction(FrontKind::Contact2, FrontKind::Rare1) ==
        InteractionCase::CD_R1);
  CHECK(classify_interaction(FrontKind::Contact2, FrontKind::Shock1) ==
        InteractionCase::CD_S1);
  CHECK(classify_interaction(FrontKind::Rare1, FrontKind::Shock1) ==
        InteractionCase::R1_S1);
  CHECK(classify_interaction(FrontKind::Shock1, FrontKind::Rare1) ==
        InteractionCase::S1_R1);
  CHECK(classify_interaction(FrontKind::Shock1, FrontKind::Shock1) ==
        InteractionCase::S1_S1);
  CHECK_THROWS_AS(classify_interaction(FrontKind::Shock1, FrontKind::Contact2),
                  InvariantViolation);
  CHECK_THROWS_AS(classify_interaction(FrontKind::Rare1, FrontKind::Rare1),
                  InvariantViolation);
}

TEST_CASE("resolve_interaction: shock merger") {
  // U- = (0,0) --sigma=-0.2--> U0 --sigma=-0.3--> U+; needs the wide ball
  const ModelSpec kModel = ModelSpec::synthetic(0.0, 1.0, 0.6);
  const std::int64_t nu = 10;
  Front left = make_front(0, 0.0, 0.0, FrontKind::Shock1);
  left.left = {0, 0.0};
  left.right = {-2, shock_z_jump(kModel, -0.2)};
  left.speed = shock_speed(kModel, to_state(left.left, nu), to_state(left.right, nu));
  Front right = make_front(1, 1.0, 0.0, FrontKind::Shock1);
  right.left = left.right;
  right.right = {-5, left.right.z + shock_z_jump(kModel, -0.3)};
  right.speed =
      shock_speed(kModel, to_state(right.left, nu), to_state(right.right, nu));

  CHECK(right.right.z == doctest::Approx(0.035));
  const WaveFan fan = resolve_interaction(kModel, nu, left, right);
  REQUIRE(fan.fronts.size() == 2);
  CHECK(fan.fronts[0].kind == FrontKind::Shock1);
  CHECK(fan.fronts[0].w_strength() == -5);
  CHECK(fan.fronts[0].right.z == doctest::Approx(0.125));
  CHECK(fan.fronts[1].kind == FrontKind::Contact2);
  CHECK(fan.fronts[1].z_strength() == doctest::Approx(-0.09));
}

TEST_CASE("resolve_interaction: full rarefaction cancellation") {
  const std::int64_t nu = 10;
  Front rare = make_front(0, 0.0, 0.0, FrontKind::Rare1);
  rare.left = {0, 0.0};
  rare.right = {1, 0.0};
  rare.speed = lambda1(kModel, to_state(rare.right, nu));
  Front shock = make_front(1, 1.0, 0.0, FrontKind::Shock1);
  shock.left = rare.right;
  shock.right = {0, shock_z_jump(kModel, -0.1)};
  shock.speed =
      shock_speed(kModel, to_state(shock.left, nu), to_state(shock.right, nu));

  const WaveFan fan = resolve_interaction(kModel, nu, rare, shock);
  REQUIRE(fan.fronts.size() == 1);
  CHECK(fan.fronts[0].kind == FrontKind::Contact2);
  CHECK(fan.fronts[0].z_strength() == doctest::Approx(0.001));
}

TEST_CASE("resolve_interaction: contact passes the shock through") {
  const std::int64_t nu = 10;
  Front cd = make_front(0, 0.0, 0.0, FrontKind::Contact2);
  cd.left = {0, 0.04};
  cd.right = {0, 0.0};
  cd.speed = lambda2(kModel, 0.0);
  Front shock = make_front(1, 1.0, 0.0, FrontKind::Shock1);
  shock.left = cd.right;
  shock.right = {-2, shock_z_jump(kModel, -0.2)};
  shock.speed =
      shock_speed(kModel, to_state(shock.left, nu), to_state(shock.right, nu));

  const WaveFan fan = resolve_interaction(kModel, nu, cd, shock);
  REQUIRE(fan.fronts.size() == 2);
  CHECK(fan.fronts[0].kind == FrontKind::Shock1);
  CHECK(fan.fronts[0].w_strength() == -2);  // claim: strength unchanged
  CHECK(fan.fronts[0].right.z == doctest::Approx(0.048));
  CHECK(fan.fronts[1].kind == FrontKind::Contact2);
  CHECK(fan.fronts[1].z_strength() == doctest::Approx(-0.04));
}

TEST_CASE("run: single Riemann datum drifts freely") {
  LatticeFunction f{10, {0.0}, {0, -1}, {0.0, 0.05}};
  const Trajectory traj = run(kModel, f, RunOptions{5.0});
  CHECK(traj.events.empty());
  CHECK(traj.fronts.size() == 2);
  const SnapshotProfile prof = snapshot(traj, 4.0);
  CHECK(prof.positions.size() == 2);
}

TEST_CASE("run: two approaching shocks merge exactly once") {
  const Trajectory traj = run(kModel, two_pure_shocks(), RunOptions{3.0});
  REQUIRE(traj.events.size() == 1);
  CHECK(traj.events[0].tag == InteractionCase::S1_S1);
  CHECK(traj.events[0].time == doctest::Approx(2.0));
  CHECK(traj.events[0].position == doctest::Approx(-1.5));
  CHECK(traj.count_11 == 1);
  CHECK(traj.count_12 == 0);
  // merged strength
  const InteractionRecord& e = traj.events[0];
  REQUIRE(e.outgoing.size() == 2);
  CHECK(traj.fronts[static_cast<std::size_t>(e.outgoing[0])].w_strength() == -2);
}

TEST_CASE("run: event times strictly increase and states stay on lattice") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 20; ++it) {
    const LatticeFunction f = random_lattice(rng, 10, 8, 1, 0.04);
    const Trajectory traj = run(kModel, f, RunOptions{2.0});
    double prev = 0.0;
    for (const InteractionRecord& e : traj.events) {
      CHECK(e.time > prev);
      prev = e.time;
      CHECK(e.u_zero.w_idx ==
            traj.fronts[static_cast<std::size_t>(e.incoming_left)].right.w_idx);
    }
    CHECK(static_cast<double>(traj.count_11) <=
          static_cast<double>(traj.bound_n1()));
    CHECK(static_cast<double>(traj.count_12) <=
          static_cast<double>(traj.bound_n2()));
  }
}

TEST_CASE("run agrees with a naive next_collision loop") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 10; ++it) {
    const LatticeFunction f = random_lattice(rng, 10, 6, 1, 0.03);
    const double t_max = 1.5;
    const Trajectory traj = run(kModel, f, RunOptions{t_max});

    // naive reference: sorted vector of live fronts, scan, resolve
    std::vector<Front> live;
    std::int64_t next_id = 0;
    for (WaveFan& fan : initial_wavefans(f, kModel)) {
      for (Front& fr : fan.fronts) {
        next_id = std::max(next_id, fr.id + 1);
        live.push_back(fr);
      }
    }
    std::vector<std::pair<double, InteractionCase>> naive_events;
    double t_now = 0.0;
    while (true) {
      const auto c = next_collision(live, t_now);
      if (!c || c->time > t_max) break;
      std::size_t li = 0, ri = 0;
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (live[i].id == c->left_id) li = i;
        if (live[i].id == c->right_id) ri = i;
      }
      WaveFan fan = resolve_interaction(kModel, f.nu, live[li], live[ri]);
      place_fan(fan, c->time, c->position, next_id);
      const InteractionCase tag =
          classify_interaction(live[li].kind, live[ri].kind);
      naive_events.emplace_back(c->time, tag);
      std::vector<Front> next_live;
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (i == ri) {
          for (const Front& nf : fan.fronts) next_live.push_back(nf);
        } else if (i != li) {
          next_live.push_back(live[i]);
        }
      }
      live = std::move(next_live);
      t_now = c->time;
    }

    REQUIRE(traj.events.size() == naive_events.size());
    for (std::size_t k = 0; k < naive_events.size(); ++k) {
      CHECK(traj.events[k].time == doctest::Approx(naive_events[k].first));
      CHECK(traj.events[k].tag == naive_events[k].second);
    }
  }
}

TEST_CASE("snapshot: t = 0 reproduces the initial data") {
  std::mt19937_64 rng(23);
  const LatticeFunction f = random_lattice(rng, 10, 6, 1, 0.03);
  const Trajectory traj = run(kModel, f, RunOptions{1.0});
  const SnapshotProfile prof = snapshot(traj, 0.0);
  // evaluate both step functions strictly between breakpoints
  auto value_of_profile = [&](double x) {
    LatticeState v = prof.leftmost;
    for (std::size_t i = 0; i < prof.positions.size(); ++i) {
      if (prof.positions[i] < x) v = prof.values[i];
    }
    return v;
  };
  for (std::size_t i = 0; i <= f.breakpoints.size(); ++i) {
    const double lo = (i == 0) ? f.breakpoints.front() - 1.0 : f.breakpoints[i - 1];
    const double hi =
        (i == f.breakpoints.size()) ? f.breakpoints.back() + 1.0 : f.breakpoints[i];
    const double mid = 0.5 * (lo + hi);
    CHECK(value_of_profile(mid).w_idx == f.w_idx[i]);
    CHECK(value_of_profile(mid).z == f.z[i]);
  }
}

TEST_CASE("snapshot: out of range and event-time queries") {
  const Trajectory traj = run(kModel, two_pure_shocks(), RunOptions{3.0});
  CHECK_THROWS_AS(snapshot(traj, -0.1), ContractViolation);
  CHECK_THROWS_AS(snapshot(traj, 3.5), ContractViolation);
  // exactly at the event time: evaluated one ulp later, post-interaction
  const double te = traj.events[0].time;
  const SnapshotProfile prof = snapshot(traj, te);
  CHECK(prof.time > te);
  std::int64_t shocks = 0;
  for (std::size_t i = 0; i < prof.values.size(); ++i) {
    const Front& fr = traj.fronts[static_cast<std::size_t>(prof.front_ids[i])];
    if (fr.kind == FrontKind::Shock1) ++shocks;
  }
  CHECK(shocks == 1);
}

TEST_CASE("replayer reproduces the live chain") {
  std::mt19937_64 rng(24);
  const LatticeFunction f = random_lattice(rng, 10, 8, 1, 0.03);
  const Trajectory traj = run(kModel, f, RunOptions{2.0});
  Replayer rp(traj);
  CHECK(rp.n_live_1fronts() == traj.n1_initial);
  while (!rp.done()) {
    const InteractionRecord& e = rp.peek();
    CHECK(rp.alive(e.incoming_left));
    CHECK(rp.alive(e.incoming_right));
    CHECK(rp.next_of(e.incoming_left) == e.incoming_right);
    rp.step();
    for (std::int64_t id : e.outgoing) CHECK(rp.alive(id));
  }
}
