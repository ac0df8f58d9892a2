#include "wft/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wft/common.hpp"

namespace wft {

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass || !c.gating; });
}

const CheckResult* CheckReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string at_event(const Trajectory& traj, std::size_t k) {
  std::ostringstream os;
  const InteractionRecord& e = traj.events[k];
  os << "event " << k << " (" << to_string(e.tag) << ") at t=" << e.time
     << ", x=" << e.position;
  return os.str();
}

std::vector<std::int64_t> w_sequence_of_chain(const Trajectory& traj,
                                              const Replayer& rp) {
  std::vector<std::int64_t> seq;
  if (rp.head() < 0) {
    seq.push_back(traj.initial.w_idx.front());
    return seq;
  }
  seq.push_back(traj.fronts[static_cast<std::size_t>(rp.head())].left.w_idx);
  for (std::int64_t id = rp.head(); id >= 0; id = rp.next_of(id)) {
    seq.push_back(traj.fronts[static_cast<std::size_t>(id)].right.w_idx);
  }
  return seq;
}

}  // namespace

CheckResult check_tvs_monotone(const Trajectory& traj,
                               std::span<const VariationExponent> s_list) {
  CheckResult res;
  res.name = "tvs_monotone";
  res.tolerance = 0.0;
  res.bound = 0.0;
  res.measured = 0.0;  // worst observed increase

  const std::int64_t max_diff = std::max<std::int64_t>(traj.initial.osc_w_idx(), 1);
  for (const VariationExponent& e : s_list) {
    const std::vector<double> table = lattice_power_table(max_diff, traj.nu, e.p);

    Replayer rp(traj);
    double tvs_now = tvs_lattice(w_sequence_of_chain(traj, rp), table);

    // The profile just after t = 0 must carry exactly the TV^s of the
    // data: rarefaction fans only insert monotone interior values.
    const double tvs_data = tvs_lattice(traj.initial.w_idx, table);
    if (tvs_now != tvs_data) {
      res.pass = false;
      res.measured = std::max(res.measured, tvs_now - tvs_data);
      res.worst_location = "initial fans changed TV^s at s=" + std::to_string(e.s);
    }

    while (!rp.done()) {
      const std::size_t k = rp.next_event();
      const InteractionRecord& ev = rp.step();
      if (ev.tag == InteractionCase::CD_R1 || ev.tag == InteractionCase::CD_S1) {
        continue;  // w profile is unchanged as a function
      }
      // 1-1 event: the middle value disappears. A strictly monotone middle
      // never changes TV^s; otherwise recompute.
      const std::int64_t wm = ev.u_minus.w_idx, w0 = ev.u_zero.w_idx,
                         wp = ev.u_plus.w_idx;
      const bool monotone = (wm < w0 && w0 < wp) || (wm > w0 && w0 > wp);
      if (monotone) continue;
      const double tvs_after = tvs_lattice(w_sequence_of_chain(traj, rp), table);
      if (tvs_after > tvs_now) {
        res.pass = false;
        if (tvs_after - tvs_now > res.measured) {
          res.measured = tvs_after - tvs_now;
          res.worst_location = at_event(traj, k) + ", s=" + std::to_string(e.s);
        }
      }
      tvs_now = tvs_after;
    }
  }
  if (res.pass) res.note = "exact comparison on the integer lattice";
  return res;
}

std::vector<CheckResult> check_z_linf(const Trajectory& traj) {
  CheckResult bound_res;
  bound_res.name = "z_linf_bound";
  bound_res.tolerance = 1e-10;

  CheckResult loc_res;
  loc_res.name = "z_growth_localization";
  loc_res.tolerance = 1e-10;

  // Region z values live in a multiset; events swap the middle values.
  std::multiset<double> zs;
  Replayer rp(traj);
  if (rp.head() < 0) {
    zs.insert(traj.initial.z.front());
  } else {
    zs.insert(traj.fronts[static_cast<std::size_t>(rp.head())].left.z);
    for (std::int64_t id = rp.head(); id >= 0; id = rp.next_of(id)) {
      zs.insert(traj.fronts[static_cast<std::size_t>(id)].right.z);
    }
  }
  auto sup_abs = [&]() {
    if (zs.empty()) return 0.0;
    return std::max(std::fabs(*zs.begin()), std::fabs(*zs.rbegin()));
  };
  auto erase_exact = [&](double v) {
    auto it = zs.find(v);
    if (it == zs.end()) {
      throw InvariantViolation("check_z_linf: region value missing from profile");
    }
    zs.erase(it);
  };

  const double sup_z0 = sup_abs();
  double sup_all = sup_z0;
  while (!rp.done()) {
    const std::size_t k = rp.next_event();
    const double before = sup_abs();
    const InteractionRecord& ev = rp.step();
    // the consumed fronts carried the middle and right region values; the
    // outgoing fan re-contributes everything on its right flanks
    erase_exact(ev.u_zero.z);
    erase_exact(ev.u_plus.z);
    for (std::int64_t id : ev.outgoing) {
      zs.insert(traj.fronts[static_cast<std::size_t>(id)].right.z);
    }
    const double after = sup_abs();
    sup_all = std::max(sup_all, after);
    const bool may_grow =
        ev.tag == InteractionCase::CD_S1 || ev.tag == InteractionCase::S1_S1;
    if (!may_grow && after > before + loc_res.tolerance) {
      loc_res.pass = false;
      loc_res.measured = std::max(loc_res.measured, after - before);
      loc_res.worst_location = at_event(traj, k);
    }
  }

  const double tv13 = tvs_total(traj.initial.w_step(), VariationExponent::from_p(3.0));
  const double nu3 = static_cast<double>(traj.nu) * static_cast<double>(traj.nu) *
                     static_cast<double>(traj.nu);
  bound_res.measured = sup_all;
  bound_res.bound = traj.initial.sup_abs_z() +
                    traj.model.kappa *
                        (tv13 + 8.0 / nu3 * static_cast<double>(traj.events.size()));
  bound_res.pass = bound_res.measured <= bound_res.bound + bound_res.tolerance;
  if (!bound_res.pass) bound_res.worst_location = "sup over all event times";
  return {bound_res, loc_res};
}

CheckResult check_counts(const Trajectory& traj) {
  CheckResult res;
  res.name = "counts";
  res.tolerance = 0.0;

  std::int64_t n11 = 0, n12 = 0;
  Replayer rp(traj);
  std::int64_t n1 = rp.n_live_1fronts();
  if (n1 != traj.n1_initial) {
    res.pass = false;
    res.worst_location = "initial 1-front count mismatch";
  }
  while (!rp.done()) {
    const std::size_t k = rp.next_event();
    const std::int64_t before = rp.n_live_1fronts();
    const InteractionRecord& ev = rp.step();
    const std::int64_t after = rp.n_live_1fronts();
    if (ev.tag == InteractionCase::CD_R1 || ev.tag == InteractionCase::CD_S1) {
      ++n12;
      if (after != before) {
        res.pass = false;
        res.worst_location = at_event(traj, k) + ": N1 changed at a CD event";
      }
    } else {
      ++n11;
      if (after >= before) {
        res.pass = false;
        res.worst_location = at_event(traj, k) + ": N1 did not decrease";
      }
    }
  }
  if (n11 != traj.count_11 || n12 != traj.count_12) {
    res.pass = false;
    res.worst_location = "recorded counters disagree with the event log";
  }
  const auto b1 = static_cast<double>(traj.bound_n1());
  const auto b2 = static_cast<double>(traj.bound_n2());
  res.measured = static_cast<double>(n11);
  res.bound = b1;
  if (static_cast<double>(n11) > b1) {
    res.pass = false;
    res.worst_location = "N'_1 exceeds its bound";
  }
  if (static_cast<double>(n12) > b2) {
    res.pass = false;
    res.measured = static_cast<double>(n12);
    res.bound = b2;
    res.worst_location = "N'_2 exceeds its bound";
  }
  std::ostringstream os;
  os << "N'_1=" << n11 << " (bound " << b1 << "), N'_2=" << n12 << " (bound " << b2
     << "), events=" << traj.events.size();
  res.note = os.str();
  return res;
}

CheckResult check_lax_and_grid(const Trajectory& traj,
                               std::span<const double> snapshot_times) {
  CheckResult res;
  res.name = "lax_and_grid";
  res.tolerance = 1e-12;
  const ModelSpec& m = traj.model;
  for (const Front& f : traj.fronts) {
    switch (f.kind) {
      case FrontKind::Shock1: {
        const double ll = lambda1(m, to_state(f.left, traj.nu));
        const double lr = lambda1(m, to_state(f.right, traj.nu));
        if (!(lr < f.speed && f.speed < ll)) {
          res.pass = false;
          res.worst_location = "front " + std::to_string(f.id) + ": Lax violated";
        }
        if (f.speed != 0.5 * (ll + lr)) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": shock speed off the RH formula";
        }
        if (f.w_strength() >= 0) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": shock with sigma >= 0";
        }
        break;
      }
      case FrontKind::Rare1:
        if (f.w_strength() != 1 || f.z_strength() != 0.0) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": malformed rarefaction";
        }
        if (f.speed != lambda1(m, {lattice_w(f.right.w_idx, traj.nu), f.left.z})) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": rarefaction speed mismatch";
        }
        break;
      case FrontKind::Contact2: {
        if (f.w_strength() != 0) {
          res.pass = false;
          res.worst_location = "front " + std::to_string(f.id) + ": contact jumps w";
        }
        const double d = std::fabs(lambda2(m, lattice_w(f.left.w_idx, traj.nu)) -
                                   lambda2(m, lattice_w(f.right.w_idx, traj.nu)));
        res.measured = std::max(res.measured, d);
        if (d > res.tolerance) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": lambda2 differs across contact";
        }
        if (f.speed != lambda2(m, lattice_w(f.right.w_idx, traj.nu))) {
          res.pass = false;
          res.worst_location =
              "front " + std::to_string(f.id) + ": contact speed is not lambda2";
        }
        break;
      }
    }
  }
  for (double t : snapshot_times) {
    if (!(t >= 0.0) || t > traj.t_max) continue;
    const SnapshotProfile prof = snapshot(traj, t);
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
      const double w = lattice_w(prof.values[i].w_idx, traj.nu);
      if (w != to_state(prof.values[i], traj.nu).w) {
        res.pass = false;
        res.worst_location = "snapshot t=" + std::to_string(t) + ": off-lattice w";
      }
    }
  }
  return res;
}

CheckResult check_interaction_algebra(const Trajectory& traj) {
  CheckResult res;
  res.name = "interaction_algebra";
  res.tolerance = 0.0;
  for (std::size_t k = 0; k < traj.events.size(); ++k) {
    const InteractionRecord& ev = traj.events[k];
    auto fail = [&](const std::string& why) {
      res.pass = false;
      res.worst_location = at_event(traj, k) + ": " + why;
    };

    // fan shape: optional 1-wave group then optional contact, speeds rising
    bool seen_cd = false;
    double prev_speed = -std::numeric_limits<double>::infinity();
    std::int64_t out_w_strength = 0;
    std::int64_t out_1waves = 0;
    bool out_has_rare = false;
    for (std::int64_t id : ev.outgoing) {
      const Front& f = traj.fronts[static_cast<std::size_t>(id)];
      if (f.kind == FrontKind::Contact2) {
        if (seen_cd) fail("two contacts in one fan");
        seen_cd = true;
      } else {
        if (seen_cd) fail("1-wave right of a contact");
        out_w_strength += f.w_strength();
        ++out_1waves;
        out_has_rare = out_has_rare || f.kind == FrontKind::Rare1;
      }
      if (!(f.speed > prev_speed)) fail("fan speeds not strictly increasing");
      prev_speed = f.speed;
    }

    const Front& lf = traj.fronts[static_cast<std::size_t>(ev.incoming_left)];
    const Front& rf = traj.fronts[static_cast<std::size_t>(ev.incoming_right)];
    const std::int64_t in_w_strength = lf.w_strength() + rf.w_strength();

    switch (ev.tag) {
      case InteractionCase::S1_S1:
      case InteractionCase::R1_S1:
      case InteractionCase::S1_R1:
        if (out_w_strength != in_w_strength) fail("1-1 strength not conserved");
        if (out_has_rare) fail("1-1 interaction emitted a rarefaction");
        if (out_1waves > 1) fail("1-1 interaction emitted several 1-waves");
        break;
      case InteractionCase::CD_R1:
      case InteractionCase::CD_S1: {
        if (out_1waves != 1) fail("CD event must pass exactly one 1-wave");
        if (out_w_strength != rf.w_strength()) fail("1-wave strength changed");
        if (!seen_cd) fail("CD event lost its contact");
        const Front& out1 = traj.fronts[static_cast<std::size_t>(ev.outgoing[0])];
        if (out1.kind != rf.kind) fail("1-wave kind changed across a contact");
        break;
      }
    }
  }
  return res;
}

CheckResult check_supw_monotone(const Trajectory& traj) {
  CheckResult res;
  res.name = "supw_monotone";
  res.tolerance = 0.0;
  std::multiset<std::int64_t> ws;
  Replayer rp(traj);
  if (rp.head() < 0) {
    ws.insert(traj.initial.w_idx.front());
  } else {
    ws.insert(traj.fronts[static_cast<std::size_t>(rp.head())].left.w_idx);
    for (std::int64_t id = rp.head(); id >= 0; id = rp.next_of(id)) {
      ws.insert(traj.fronts[static_cast<std::size_t>(id)].right.w_idx);
    }
  }
  auto sup = [&]() -> std::int64_t {
    if (ws.empty()) return 0;
    const std::int64_t lo = *ws.begin(), hi = *ws.rbegin();
    return std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
  };
  while (!rp.done()) {
    const std::size_t k = rp.next_event();
    const std::int64_t before = sup();
    const InteractionRecord& ev = rp.step();
    auto it = ws.find(ev.u_zero.w_idx);
    if (it == ws.end()) throw InvariantViolation("check_supw: missing w value");
    ws.erase(it);
    it = ws.find(ev.u_plus.w_idx);
    if (it == ws.end()) throw InvariantViolation("check_supw: missing w value");
    ws.erase(it);
    for (std::int64_t id : ev.outgoing) {
      ws.insert(traj.fronts[static_cast<std::size_t>(id)].right.w_idx);
    }
    if (sup() > before) {
      res.pass = false;
      res.worst_location = at_event(traj, k);
      res.measured = static_cast<double>(sup() - before);
    }
  }
  return res;
}

std::vector<CheckResult> check_characteristics(const Trajectory& traj,
                                               const LagrangianField& field) {
  std::vector<CheckResult> out;
  const double tol = 1e-10;

  auto named = [&](const char* name) {
    CheckResult r;
    r.name = name;
    r.tolerance = tol;
    return r;
  };
  CheckResult zmono = named("char_z_monotone");
  CheckResult absorb = named("char_absorption_once");
  CheckResult vbounds = named("char_v_bounds");
  CheckResult order = named("char_mesh_order");
  CheckResult eta = named("char_eta");
  CheckResult budget = named("char_cubic_budget");
  absorb.tolerance = 0.0;

  const double tv13 = tvs_total(traj.initial.w_step(), VariationExponent::from_p(3.0));
  const double nu3 = static_cast<double>(traj.nu) * static_cast<double>(traj.nu) *
                     static_cast<double>(traj.nu);
  const double two_m = 2.0 * field.lambda2_sup;
  vbounds.bound = two_m;

  for (std::size_t i = 0; i < field.paths.size(); ++i) {
    const CharPath& p = field.paths[i];
    auto where = [&](const char* what) {
      return "path x0=" + std::to_string(p.x0) + ": " + std::string(what);
    };

    double z_prev = p.z_initial;
    double jumps = 0.0;
    for (const CharCrossing& c : p.crossings) {
      if (c.dz < -tol) {
        zmono.pass = false;
        zmono.measured = std::min(zmono.measured, c.dz);
        zmono.worst_location = where("z decreased at a crossing");
      }
      if (c.z_after < z_prev - tol) {
        zmono.pass = false;
        zmono.worst_location = where("z_after decreased");
      }
      z_prev = c.z_after;
      jumps += c.dlambda2;
      if (std::fabs(jumps) > two_m + tol) {
        vbounds.pass = false;
        vbounds.measured = std::max(vbounds.measured, std::fabs(jumps));
        vbounds.worst_location = where("lambda2 jump sum out of range");
      }
    }

    const int absorptions = p.absorbed_into_cd ? 1 : 0;
    // structurally at most one; recorded for the report
    absorb.measured = std::max(absorb.measured, static_cast<double>(absorptions));

    if (p.z_at(0.0) != p.z_initial) {
      eta.pass = false;
      eta.worst_location = where("eta(0) != 0");
    }

    const double b = cubic_budget(p);
    const double cap = tv13 + 8.0 / nu3 * absorptions;
    if (b > cap + tol) {
      budget.pass = false;
      budget.measured = std::max(budget.measured, b);
      budget.bound = cap;
      budget.worst_location = where("cubic budget exceeded");
    }
  }

  // mesh order of gamma2(t, .) at sampled times
  std::vector<double> times{0.0, traj.t_max};
  const std::size_t steps = 64;
  for (std::size_t k = 1; k < steps; ++k) {
    times.push_back(traj.t_max * static_cast<double>(k) / steps);
  }
  for (const InteractionRecord& ev : traj.events) times.push_back(ev.time);
  std::sort(times.begin(), times.end());
  for (double t : times) {
    for (std::size_t i = 0; i + 1 < field.paths.size(); ++i) {
      const double a = field.paths[i].position(t);
      const double b = field.paths[i + 1].position(t);
      if (b < a - tol) {
        order.pass = false;
        order.measured = std::max(order.measured, a - b);
        order.worst_location =
            "paths " + std::to_string(i) + "," + std::to_string(i + 1) +
            " inverted at t=" + std::to_string(t);
      }
    }
  }

  out.push_back(zmono);
  out.push_back(absorb);
  out.push_back(vbounds);
  out.push_back(order);
  out.push_back(eta);
  out.push_back(budget);
  return out;
}

CheckReport full_report(const Trajectory& traj, const LagrangianField& field,
                        std::span<const VariationExponent> s_list,
                        std::span<const double> snapshot_times) {
  CheckReport report;
  report.add(check_tvs_monotone(traj, s_list));
  for (CheckResult& r : check_z_linf(traj)) report.add(std::move(r));
  report.add(check_counts(traj));
  report.add(check_lax_and_grid(traj, snapshot_times));
  report.add(check_interaction_algebra(traj));
  report.add(check_supw_monotone(traj));
  for (CheckResult& r : check_characteristics(traj, field)) report.add(std::move(r));
  return report;
}

namespace {

// integral over [lo, hi] of |step_a - step_b| given merged breakpoints
double l1_between(const std::vector<double>& xs_a,
                  const std::vector<double>& vals_a,
                  const std::vector<double>& xs_b,
                  const std::vector<double>& vals_b, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double x : xs_a) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  for (double x : xs_b) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  auto value_at = [](const std::vector<double>& xs, const std::vector<double>& vals,
                     double x) {
    std::size_t i = 0;
    while (i < xs.size() && x > xs[i]) ++i;
    return vals[i];
  };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    acc += std::fabs(value_at(xs_a, vals_a, mid) - value_at(xs_b, vals_b, mid)) *
           (cuts[i + 1] - cuts[i]);
  }
  return acc;
}

void profile_to_steps(const SnapshotProfile& p, std::int64_t nu, bool want_w,
                      std::vector<double>& xs, std::vector<double>& vals) {
  xs = p.positions;
  vals.clear();
  vals.push_back(want_w ? lattice_w(p.leftmost.w_idx, nu) : p.leftmost.z);
  for (const LatticeState& v : p.values) {
    vals.push_back(want_w ? lattice_w(v.w_idx, nu) : v.z);
  }
}

}  // namespace

double l1_distance_w(const SnapshotProfile& a, std::int64_t nu_a,
                     const SnapshotProfile& b, std::int64_t nu_b, double lo,
                     double hi) {
  std::vector<double> xa, va, xb, vb;
  profile_to_steps(a, nu_a, true, xa, va);
  profile_to_steps(b, nu_b, true, xb, vb);
  return l1_between(xa, va, xb, vb, lo, hi);
}

double l1_distance_z(const SnapshotProfile& a, const SnapshotProfile& b, double lo,
                     double hi) {
  std::vector<double> xa, va, xb, vb;
  profile_to_steps(a, 1, false, xa, va);
  profile_to_steps(b, 1, false, xb, vb);
  return l1_between(xa, va, xb, vb, lo, hi);
}

ConvergenceReport convergence_study(const ModelSpec& m, const SampledData& samples,
                                    std::span<const std::int64_t> nu_list,
                                    std::span<const double> times, double t_max) {
  ConvergenceReport rep;
  if (nu_list.size() < 2) {
    rep.note = "need at least two nu values";
    return rep;
  }
  std::vector<Trajectory> runs;
  for (std::int64_t nu : nu_list) {
    DiscretizedInitial d = discretize_initial(samples, nu);
    runs.push_back(run(m, d.fn, RunOptions{t_max}));
  }
  const double lo0 = samples.x.front(), hi0 = samples.x.back();
  const double span = std::max(hi0 - lo0, 1.0);
  const double lo = lo0 - span - 2.0 * t_max;
  const double hi = hi0 + span + 2.0 * t_max;

  // distances per time for trend detection across consecutive pairs
  for (double t : times) {
    double prev_w = -1.0;
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      const SnapshotProfile pa = snapshot(runs[i], std::min(t, runs[i].t_max));
      const SnapshotProfile pb = snapshot(runs[i + 1], std::min(t, runs[i + 1].t_max));
      ConvergenceRow row;
      row.nu_coarse = nu_list[i];
      row.nu_fine = nu_list[i + 1];
      row.time = t;
      row.l1_w = l1_distance_w(pa, runs[i].nu, pb, runs[i + 1].nu, lo, hi);
      row.l1_z = l1_distance_z(pa, pb, lo, hi);
      if (prev_w >= 0.0 && row.l1_w > prev_w) rep.distances_decreasing = false;
      prev_w = row.l1_w;
      rep.rows.push_back(row);
    }
  }
  rep.note = rep.distances_decreasing ? "distances decreasing"
                                      : "non-decreasing trend flagged (not gating)";
  return rep;
}

}  // namespace wft
