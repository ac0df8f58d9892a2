#include "wft/engine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "wft/common.hpp"

namespace wft {

const char* to_string(InteractionCase c) {
  switch (c) {
    case InteractionCase::CD_R1: return "CD_R1";
    case InteractionCase::CD_S1: return "CD_S1";
    case InteractionCase::R1_S1: return "R1_S1";
    case InteractionCase::S1_R1: return "S1_R1";
    case InteractionCase::S1_S1: return "S1_S1";
  }
  return "?";
}

std::int64_t Trajectory::bound_n1() const {
  // nu * N_nu * Osc(w) + N_nu with nu * Osc(w) = osc_w_idx, all integers.
  const std::int64_t n = initial.n_breakpoints();
  return n * initial.osc_w_idx() + n;
}

std::int64_t Trajectory::bound_n2() const {
  // (2 N_nu + N_nu Osc(w)) (nu N_nu Osc(w) + N_nu), rounded up.
  const double n = static_cast<double>(initial.n_breakpoints());
  const double osc = initial.osc_w();
  const double lines2 = 2.0 * n + n * osc;
  return static_cast<std::int64_t>(std::ceil(lines2 * static_cast<double>(bound_n1())));
}

namespace {

constexpr double kTieRelTol = 1e-12;

bool times_tie(double a, double b) {
  return std::fabs(a - b) <= kTieRelTol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

// Meeting time of two fronts moving from their birth anchors, or nothing
// if the left one does not approach the right one.
std::optional<double> meet_time(const Front& l, const Front& r) {
  const double ds = l.speed - r.speed;
  if (!(ds > 0.0)) return std::nullopt;
  const double t = (r.birth_x - l.birth_x + l.speed * l.birth_time -
                    r.speed * r.birth_time) /
                   ds;
  return t;
}

struct Candidate {
  double time;
  double position;
  std::int64_t left_id;
  std::int64_t right_id;
};

struct CandidateLater {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.position != b.position) return a.position > b.position;
    return a.left_id > b.left_id;
  }
};

}  // namespace

std::optional<Collision> next_collision(std::span<const Front> fronts, double t_now) {
  std::optional<Collision> best;
  for (std::size_t i = 0; i + 1 < fronts.size(); ++i) {
    const Front& l = fronts[i];
    const Front& r = fronts[i + 1];
    auto t = meet_time(l, r);
    if (!t) continue;
    const double tc = std::max(*t, t_now);
    const Collision c{tc, l.position(tc), l.id, r.id};
    if (!best) {
      best = c;
      continue;
    }
    if (times_tie(c.time, best->time)) {
      if (c.position < best->position ||
          (c.position == best->position && c.left_id < best->left_id)) {
        best = c;
      }
    } else if (c.time < best->time) {
      best = c;
    }
  }
  return best;
}

InteractionCase classify_interaction(FrontKind left, FrontKind right) {
  if (right == FrontKind::Contact2) {
    throw InvariantViolation(
        "interaction ending in a contact discontinuity cannot happen: contacts "
        "move right at lambda2 > 0 and are never caught");
  }
  switch (left) {
    case FrontKind::Contact2:
      return right == FrontKind::Rare1 ? InteractionCase::CD_R1
                                       : InteractionCase::CD_S1;
    case FrontKind::Rare1:
      if (right == FrontKind::Rare1) {
        throw InvariantViolation(
            "two rarefaction fronts cannot collide: the right one is faster");
      }
      return InteractionCase::R1_S1;
    case FrontKind::Shock1:
      return right == FrontKind::Rare1 ? InteractionCase::S1_R1
                                       : InteractionCase::S1_S1;
  }
  throw InvariantViolation("unknown front kind");
}

WaveFan resolve_interaction(const ModelSpec& m, std::int64_t nu, const Front& left,
                            const Front& right) {
  classify_interaction(left.kind, right.kind);
  if (left.right.w_idx != right.left.w_idx || left.right.z != right.left.z) {
    throw InvariantViolation("interacting fronts do not share the middle state");
  }
  return solve_riemann(m, left.left, right.right, nu);
}

Trajectory run(const ModelSpec& m, const LatticeFunction& initial,
               const RunOptions& opts) {
  if (!(opts.t_max > 0.0)) throw ContractViolation("run: t_max must be positive");
  Trajectory traj;
  traj.model = m;
  traj.nu = initial.nu;
  traj.initial = initial;
  traj.t_max = opts.t_max;

  std::vector<std::int64_t> next_link, prev_link;
  auto link = [&](std::int64_t a, std::int64_t b) {
    if (a >= 0) next_link[static_cast<std::size_t>(a)] = b;
    if (b >= 0) prev_link[static_cast<std::size_t>(b)] = a;
  };

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLater> queue;
  auto propose = [&](std::int64_t li, std::int64_t ri, double t_now) {
    if (li < 0 || ri < 0) return;
    const Front& l = traj.fronts[static_cast<std::size_t>(li)];
    const Front& r = traj.fronts[static_cast<std::size_t>(ri)];
    auto t = meet_time(l, r);
    if (!t) return;
    const double tc = std::max(*t, t_now);
    if (tc > opts.t_max) return;
    queue.push({tc, l.position(tc), li, ri});
  };

  // Initial Riemann problems, left to right.
  for (WaveFan& fan : initial_wavefans(initial, m)) {
    for (Front& f : fan.fronts) {
      const std::int64_t id = f.id;
      traj.fronts.push_back(f);
      traj.initial_front_ids.push_back(id);
      next_link.push_back(-1);
      prev_link.push_back(-1);
      if (f.kind != FrontKind::Contact2) ++traj.n1_initial;
    }
  }
  for (std::size_t i = 0; i + 1 < traj.initial_front_ids.size(); ++i) {
    link(traj.initial_front_ids[i], traj.initial_front_ids[i + 1]);
  }
  for (std::size_t i = 0; i + 1 < traj.initial_front_ids.size(); ++i) {
    propose(traj.initial_front_ids[i], traj.initial_front_ids[i + 1], 0.0);
  }

  // Provable safety cap on the event count: N'_1 is at most the initial
  // number of 1-fronts, and each of the at most N_nu + N'_1 contact lines
  // crosses each of the at most bound_n1 1-wave lines once.
  const double n1cap = static_cast<double>(traj.bound_n1());
  const double safety_cap =
      n1cap + (static_cast<double>(initial.n_breakpoints()) + n1cap) * n1cap + 16.0;

  std::int64_t next_id = static_cast<std::int64_t>(traj.fronts.size());
  double last_event_time = 0.0;
  bool any_event = false;

  while (!queue.empty()) {
    // Pop the earliest candidate; gather everything tying with it and keep
    // the (position, id) minimum, so simultaneous collisions resolve in
    // position order.
    Candidate best = queue.top();
    queue.pop();
    auto valid = [&](const Candidate& c) {
      const auto l = static_cast<std::size_t>(c.left_id);
      return traj.fronts[l].death_time ==
                 std::numeric_limits<double>::infinity() &&
             traj.fronts[static_cast<std::size_t>(c.right_id)].death_time ==
                 std::numeric_limits<double>::infinity() &&
             next_link[l] == c.right_id;
    };
    while (!valid(best)) {
      if (queue.empty()) return traj;
      best = queue.top();
      queue.pop();
    }
    std::vector<Candidate> deferred;
    while (!queue.empty() && times_tie(queue.top().time, best.time)) {
      Candidate c = queue.top();
      queue.pop();
      if (!valid(c)) continue;
      if (c.position < best.position ||
          (c.position == best.position && c.left_id < best.left_id)) {
        deferred.push_back(best);
        best = c;
      } else {
        deferred.push_back(c);
      }
    }
    for (const Candidate& c : deferred) queue.push(c);

    if (best.time > opts.t_max) break;

    // Recorded event times are strictly increasing; physically simultaneous
    // collisions get successive ulp nudges, matching an arbitrarily small
    // speed perturbation.
    double event_time = best.time;
    if (any_event && event_time <= last_event_time) {
      event_time = std::nextafter(last_event_time,
                                  std::numeric_limits<double>::infinity());
    }
    if (event_time > opts.t_max) break;

    Front& lf = traj.fronts[static_cast<std::size_t>(best.left_id)];
    Front& rf = traj.fronts[static_cast<std::size_t>(best.right_id)];

    InteractionRecord rec;
    rec.time = event_time;
    rec.position = best.position;
    rec.incoming_left = best.left_id;
    rec.incoming_right = best.right_id;
    rec.incoming_left_kind = lf.kind;
    rec.incoming_right_kind = rf.kind;
    rec.tag = classify_interaction(lf.kind, rf.kind);
    rec.u_minus = lf.left;
    rec.u_zero = lf.right;
    rec.u_plus = rf.right;

    WaveFan fan = resolve_interaction(m, traj.nu, lf, rf);
    place_fan(fan, event_time, best.position, next_id);

    rec.u_mid = rec.u_minus;
    for (const Front& f : fan.fronts) {
      if (f.kind != FrontKind::Contact2) rec.u_mid = f.right;
    }
    if (!fan.fronts.empty() && fan.fronts.back().kind == FrontKind::Contact2) {
      rec.u_mid = fan.fronts.back().left;
    }

    lf.death_time = event_time;
    rf.death_time = event_time;

    const std::int64_t before = prev_link[static_cast<std::size_t>(best.left_id)];
    const std::int64_t after = next_link[static_cast<std::size_t>(best.right_id)];

    std::int64_t prev = before;
    for (Front& f : fan.fronts) {
      rec.outgoing.push_back(f.id);
      traj.fronts.push_back(f);
      next_link.push_back(-1);
      prev_link.push_back(-1);
      link(prev, f.id);
      prev = f.id;
    }
    link(prev, after);

    if (rec.tag == InteractionCase::CD_R1 || rec.tag == InteractionCase::CD_S1) {
      ++traj.count_12;
    } else {
      ++traj.count_11;
    }
    traj.events.push_back(std::move(rec));
    last_event_time = event_time;
    any_event = true;

    if (static_cast<double>(traj.events.size()) > safety_cap) {
      throw InvariantViolation("run: event count exceeded the counting bounds");
    }

    if (!fan.fronts.empty()) {
      propose(before, fan.fronts.front().id, event_time);
      propose(fan.fronts.back().id, after, event_time);
    } else {
      propose(before, after, event_time);
    }
  }

  return traj;
}

std::vector<std::int64_t> SnapshotProfile::w_sequence() const {
  std::vector<std::int64_t> out;
  out.reserve(values.size() + 1);
  out.push_back(leftmost.w_idx);
  for (const LatticeState& v : values) out.push_back(v.w_idx);
  return out;
}

std::vector<double> SnapshotProfile::z_sequence() const {
  std::vector<double> out;
  out.reserve(values.size() + 1);
  out.push_back(leftmost.z);
  for (const LatticeState& v : values) out.push_back(v.z);
  return out;
}

SnapshotProfile snapshot(const Trajectory& traj, double t) {
  if (!(t >= 0.0) || !(t <= traj.t_max)) {
    throw ContractViolation("snapshot: t outside [0, t_max]");
  }
  auto is_event_time = [&](double tt) {
    return std::any_of(traj.events.begin(), traj.events.end(),
                       [&](const InteractionRecord& e) { return e.time == tt; });
  };
  while (t > 0.0 && is_event_time(t)) {
    t = std::nextafter(t, std::numeric_limits<double>::infinity());
  }

  SnapshotProfile prof;
  prof.time = t;
  struct Entry {
    double x;
    std::int64_t id;
  };
  std::vector<Entry> live;
  for (const Front& f : traj.fronts) {
    if (f.alive_at(t)) live.push_back({f.position(t), f.id});
  }
  std::sort(live.begin(), live.end(), [](const Entry& a, const Entry& b) {
    return a.x != b.x ? a.x < b.x : a.id < b.id;
  });

  if (live.empty()) {
    prof.leftmost = {traj.initial.w_idx.front(), traj.initial.z.front()};
    return prof;
  }
  prof.leftmost = traj.fronts[static_cast<std::size_t>(live.front().id)].left;
  for (const Entry& e : live) {
    const Front& f = traj.fronts[static_cast<std::size_t>(e.id)];
    prof.positions.push_back(e.x);
    prof.values.push_back(f.right);
    prof.front_ids.push_back(e.id);
  }
  return prof;
}

Replayer::Replayer(const Trajectory& traj) : traj_(&traj) {
  next_.assign(traj.fronts.size(), -1);
  prev_.assign(traj.fronts.size(), -1);
  alive_.assign(traj.fronts.size(), 0);
  std::int64_t prev = -1;
  for (std::int64_t id : traj.initial_front_ids) {
    alive_[static_cast<std::size_t>(id)] = 1;
    if (traj.fronts[static_cast<std::size_t>(id)].kind != FrontKind::Contact2) {
      ++live_1fronts_;
    }
    if (prev < 0) {
      head_ = id;
    } else {
      next_[static_cast<std::size_t>(prev)] = id;
    }
    prev_[static_cast<std::size_t>(id)] = prev;
    prev = id;
  }
}

bool Replayer::done() const { return cursor_ >= traj_->events.size(); }

const InteractionRecord& Replayer::peek() const {
  if (done()) throw InvariantViolation("Replayer: no more events");
  return traj_->events[cursor_];
}

const InteractionRecord& Replayer::step() {
  const InteractionRecord& e = peek();
  const auto li = static_cast<std::size_t>(e.incoming_left);
  const auto ri = static_cast<std::size_t>(e.incoming_right);
  if (!alive_[li] || !alive_[ri] || next_[li] != e.incoming_right) {
    throw InvariantViolation("Replayer: event does not match the live chain");
  }
  auto count1 = [&](std::int64_t id, std::int64_t d) {
    if (traj_->fronts[static_cast<std::size_t>(id)].kind != FrontKind::Contact2) {
      live_1fronts_ += d;
    }
  };
  count1(e.incoming_left, -1);
  count1(e.incoming_right, -1);
  alive_[li] = 0;
  alive_[ri] = 0;

  const std::int64_t before = prev_[li];
  const std::int64_t after = next_[ri];
  std::int64_t prev = before;
  for (std::int64_t id : e.outgoing) {
    alive_[static_cast<std::size_t>(id)] = 1;
    count1(id, +1);
    prev_[static_cast<std::size_t>(id)] = prev;
    if (prev < 0) {
      head_ = id;
    } else {
      next_[static_cast<std::size_t>(prev)] = id;
    }
    prev = id;
  }
  if (after >= 0) prev_[static_cast<std::size_t>(after)] = prev;
  if (prev < 0) {
    head_ = after;
  } else {
    next_[static_cast<std::size_t>(prev)] = after;
  }
  if (before < 0 && !e.outgoing.empty()) {
    head_ = e.outgoing.front();
  } else if (before < 0 && e.outgoing.empty()) {
    head_ = after;
  }

  ++cursor_;
  return e;
}

std::int64_t Replayer::first_right_of(double x, double t) const {
  for (std::int64_t id = head_; id >= 0; id = next_[static_cast<std::size_t>(id)]) {
    if (traj_->fronts[static_cast<std::size_t>(id)].position(t) > x) return id;
  }
  return -1;
}

}  // namespace wft
