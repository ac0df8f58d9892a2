#include "wft/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "wft/common.hpp"

namespace wft {

namespace {

double capture_tolerance(double x) { return 1e-12 * (1.0 + std::fabs(x)); }

double cube_of_strength(std::int64_t w_strength, std::int64_t nu) {
  const double a = std::fabs(lattice_w(w_strength, nu));
  return a * a * a;
}

}  // namespace

double CharPath::position(double t) const {
  if (vertices.empty()) return x0;
  if (t <= vertices.front().first) return vertices.front().second;
  if (t >= vertices.back().first) {
    // extrapolate along the final segment's slope, which ended at t_end
    if (vertices.size() >= 2) {
      const auto& a = vertices[vertices.size() - 2];
      const auto& b = vertices.back();
      if (b.first > a.first && t > b.first) {
        return b.second + (b.second - a.second) / (b.first - a.first) * (t - b.first);
      }
    }
    return vertices.back().second;
  }
  auto it = std::upper_bound(
      vertices.begin(), vertices.end(), t,
      [](double tt, const std::pair<double, double>& v) { return tt < v.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.first == lo.first) return hi.second;
  const double frac = (t - lo.first) / (hi.first - lo.first);
  return lo.second + frac * (hi.second - lo.second);
}

double CharPath::z_at(double t) const {
  double z = z_initial;
  for (const CharCrossing& c : crossings) {
    if (c.time <= t) z = c.z_after;
  }
  return z;
}

double CharPath::lambda2_jump_sum(double t) const {
  double s = 0.0;
  for (const CharCrossing& c : crossings) {
    if (c.time <= t) s += c.dlambda2;
  }
  return s;
}

double CharPath::cube_sum(double t) const {
  double s = 0.0;
  for (const CharCrossing& c : crossings) {
    if (c.time <= t) s += c.cube;
  }
  return s;
}

namespace {

struct PathState {
  double x0 = 0.0;
  double pos = 0.0;
  double cur_t = 0.0;
  LatticeState region;
  double slope = 0.0;
  std::int64_t rn = -1;      // right-neighbor front id when free
  std::int64_t riding = -1;  // contact front id once absorbed
  std::uint64_t stamp = 0;
  CharPath out;
};

struct CrossEvent {
  double time;
  std::size_t path;
  std::uint64_t stamp;
};

struct CrossLater {
  bool operator()(const CrossEvent& a, const CrossEvent& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.path > b.path;
  }
};

class Tracer {
 public:
  Tracer(const Trajectory& traj, std::span<const double> x0s)
      : traj_(traj), rp_(traj), nu_(traj.nu) {
    paths_.resize(x0s.size());
    for (std::size_t i = 0; i < x0s.size(); ++i) launch(i, x0s[i]);
    for (std::size_t i = 0; i < paths_.size(); ++i) schedule(i);
  }

  std::vector<CharPath> trace() {
    while (!rp_.done()) {
      const InteractionRecord& e = rp_.peek();
      drain_crossings(e.time, /*inclusive=*/false);
      handle_event(e);
      rp_.step();
    }
    drain_crossings(traj_.t_max, /*inclusive=*/true);
    for (std::size_t i = 0; i < paths_.size(); ++i) finish(i);
    std::vector<CharPath> out;
    out.reserve(paths_.size());
    for (PathState& p : paths_) out.push_back(std::move(p.out));
    return out;
  }

 private:
  const Front& front(std::int64_t id) const {
    return traj_.fronts[static_cast<std::size_t>(id)];
  }

  void launch(std::size_t i, double x0) {
    PathState& p = paths_[i];
    p.x0 = x0;
    p.pos = x0;
    p.cur_t = 0.0;
    p.out.x0 = x0;
    p.out.vertices.emplace_back(0.0, x0);

    // Occupied region at t = 0+, right-side convention at fronts.
    const LatticeFunction& f = traj_.initial;
    std::size_t piece = 0;
    while (piece < f.breakpoints.size() && x0 >= f.breakpoints[piece]) ++piece;
    p.region = {f.w_idx[piece], f.z[piece]};

    std::int64_t rn = -1;
    for (std::int64_t id = rp_.head(); id >= 0; id = rp_.next_of(id)) {
      if (front(id).birth_x > x0) {
        rn = id;
        break;
      }
    }
    p.rn = rn;
    if (rn >= 0 && front(rn).left != p.region) {
      throw InvariantViolation("trace: launch region does not match the chain");
    }
    p.slope = lambda2(traj_.model, lattice_w(p.region.w_idx, nu_));
    p.out.z_initial = p.region.z;
    watch(i, rn);
  }

  void watch(std::size_t i, std::int64_t id) {
    if (id >= 0) watchers_[id].push_back(i);
  }
  void unwatch(std::size_t i, std::int64_t id) {
    if (id < 0) return;
    auto it = watchers_.find(id);
    if (it == watchers_.end()) return;
    auto& v = it->second;
    v.erase(std::remove(v.begin(), v.end(), i), v.end());
  }

  void schedule(std::size_t i) {
    PathState& p = paths_[i];
    ++p.stamp;
    if (p.riding >= 0 || p.rn < 0) return;
    const Front& f = front(p.rn);
    const double rel = p.slope - f.speed;
    if (!(rel > 0.0)) return;  // parallel contact (exact) or receding
    double t = p.cur_t + (f.position(p.cur_t) - p.pos) / rel;
    if (t < p.cur_t) t = p.cur_t;
    if (t > traj_.t_max) return;
    heap_.push({t, i, p.stamp});
  }

  // Crossings exactly at an event time are deferred: if the neighbor is in
  // the event they are absorptions, otherwise they process on a later call.
  void drain_crossings(double until, bool inclusive) {
    while (!heap_.empty() && (heap_.top().time < until ||
                              (inclusive && heap_.top().time == until))) {
      const CrossEvent c = heap_.top();
      heap_.pop();
      PathState& p = paths_[c.path];
      if (c.stamp != p.stamp || p.rn < 0 || p.riding >= 0) continue;
      cross(c.path, c.time);
    }
  }

  void cross(std::size_t i, double t) {
    PathState& p = paths_[i];
    const Front& f = front(p.rn);
    const double x = f.position(t);

    CharCrossing rec;
    rec.time = t;
    rec.x = x;
    rec.front_id = p.rn;
    if (f.kind == FrontKind::Shock1) {
      rec.dz = shock_z_jump(traj_.model, lattice_w(f.w_strength(), nu_));
      rec.cube = cube_of_strength(f.w_strength(), nu_);
    }
    rec.dlambda2 = lambda2(traj_.model, lattice_w(f.right.w_idx, nu_)) -
                   lambda2(traj_.model, lattice_w(f.left.w_idx, nu_));
    rec.z_after = f.right.z;
    p.out.crossings.push_back(rec);
    p.out.vertices.emplace_back(t, x);

    p.pos = x;
    p.cur_t = t;
    unwatch(i, p.rn);
    p.region = f.right;
    p.slope = lambda2(traj_.model, lattice_w(p.region.w_idx, nu_));
    p.rn = rp_.next_of(p.rn);
    watch(i, p.rn);
    schedule(i);
  }

  void handle_event(const InteractionRecord& e) {
    std::vector<std::size_t> affected;
    for (std::int64_t id : {e.incoming_left, e.incoming_right}) {
      auto it = watchers_.find(id);
      if (it != watchers_.end()) {
        affected.insert(affected.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    std::int64_t out_cd = -1;
    for (std::int64_t id : e.outgoing) {
      if (front(id).kind == FrontKind::Contact2) out_cd = id;
    }
    const std::int64_t after = rp_.next_of(e.incoming_right);

    for (std::size_t i : affected) {
      PathState& p = paths_[i];
      if (p.riding == e.incoming_left) {
        ride_transition(i, e, out_cd, after);
        continue;
      }
      if (p.riding >= 0) continue;
      if (p.rn != e.incoming_left && p.rn != e.incoming_right) continue;

      p.pos += p.slope * (e.time - p.cur_t);
      p.cur_t = e.time;
      if (p.pos >= e.position - capture_tolerance(e.position)) {
        absorb(i, e, out_cd, after);
      } else {
        // strictly left of the collision: face the new fan
        unwatch(i, p.rn);
        p.rn = e.outgoing.empty() ? after : e.outgoing.front();
        watch(i, p.rn);
        schedule(i);
      }
    }
  }

  void absorb(std::size_t i, const InteractionRecord& e, std::int64_t out_cd,
              std::int64_t after) {
    PathState& p = paths_[i];
    CharCrossing rec;
    rec.time = e.time;
    rec.x = e.position;
    rec.at_interaction = true;
    rec.front_id =
        front(e.incoming_right).kind == FrontKind::Contact2 ? e.incoming_left
                                                            : e.incoming_right;
    rec.dz = e.u_plus.z - p.region.z;
    rec.dlambda2 = lambda2(traj_.model, lattice_w(e.u_plus.w_idx, nu_)) -
                   lambda2(traj_.model, lattice_w(p.region.w_idx, nu_));
    // A path squeezed between the colliding pair occupies the middle state
    // and only the right front's strength enters its budget.
    const bool from_middle = p.region == e.u_zero && !(e.u_zero == e.u_minus);
    for (std::int64_t id : {e.incoming_left, e.incoming_right}) {
      if (from_middle && id == e.incoming_left) continue;
      if (front(id).kind == FrontKind::Shock1) {
        rec.cube += cube_of_strength(front(id).w_strength(), nu_);
      }
    }
    rec.z_after = e.u_plus.z;
    p.out.crossings.push_back(rec);
    p.out.vertices.emplace_back(e.time, e.position);
    p.pos = e.position;

    unwatch(i, p.rn);
    p.rn = -1;
    if (out_cd >= 0) {
      if (!p.out.absorbed_into_cd) p.out.absorbed_into_cd = out_cd;
      p.riding = out_cd;
      watch(i, out_cd);
    } else {
      // fully cancelled fan with exact z match: continue as a free path
      p.region = e.u_plus;
      p.slope = lambda2(traj_.model, lattice_w(p.region.w_idx, nu_));
      p.rn = after;
      watch(i, p.rn);
      schedule(i);
    }
    ++p.stamp;
  }

  void ride_transition(std::size_t i, const InteractionRecord& e,
                       std::int64_t out_cd, std::int64_t after) {
    PathState& p = paths_[i];
    const Front& old_cd = front(p.riding);
    const Front& partner = front(e.incoming_right);

    CharCrossing rec;
    rec.time = e.time;
    rec.x = e.position;
    rec.at_interaction = true;
    rec.front_id = e.incoming_right;
    if (partner.kind == FrontKind::Shock1) {
      rec.dz = shock_z_jump(traj_.model, lattice_w(partner.w_strength(), nu_));
      rec.cube = cube_of_strength(partner.w_strength(), nu_);
    }
    rec.dlambda2 = lambda2(traj_.model, lattice_w(e.u_plus.w_idx, nu_)) -
                   lambda2(traj_.model, lattice_w(old_cd.right.w_idx, nu_));
    rec.z_after = e.u_plus.z;
    p.out.crossings.push_back(rec);
    p.out.vertices.emplace_back(e.time, e.position);
    p.pos = e.position;
    p.cur_t = e.time;

    unwatch(i, p.riding);
    if (out_cd >= 0) {
      p.riding = out_cd;
      watch(i, out_cd);
    } else {
      p.riding = -1;
      p.region = e.u_plus;
      p.slope = lambda2(traj_.model, lattice_w(p.region.w_idx, nu_));
      p.rn = after;
      watch(i, p.rn);
      schedule(i);
    }
    ++p.stamp;
  }

  void finish(std::size_t i) {
    PathState& p = paths_[i];
    const double t_end = traj_.t_max;
    double x_end;
    if (p.riding >= 0) {
      x_end = front(p.riding).position(t_end);
    } else {
      x_end = p.pos + p.slope * (t_end - p.cur_t);
    }
    p.out.vertices.emplace_back(t_end, x_end);
    p.out.t_end = t_end;
    p.out.z_final = p.out.crossings.empty() ? p.out.z_initial
                                            : p.out.crossings.back().z_after;
  }

  const Trajectory& traj_;
  Replayer rp_;
  std::int64_t nu_;
  std::vector<PathState> paths_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> watchers_;
  std::priority_queue<CrossEvent, std::vector<CrossEvent>, CrossLater> heap_;
};

}  // namespace

std::vector<CharPath> trace_2chars(const Trajectory& traj,
                                   std::span<const double> x0s) {
  return Tracer(traj, x0s).trace();
}

CharPath trace_2char(const Trajectory& traj, double x0) {
  const double xs[1] = {x0};
  return trace_2chars(traj, xs).front();
}

std::vector<std::pair<double, double>> z_along(const CharPath& path) {
  std::vector<std::pair<double, double>> out;
  out.reserve(path.crossings.size() + 2);
  out.emplace_back(0.0, path.z_initial);
  for (const CharCrossing& c : path.crossings) out.emplace_back(c.time, c.z_after);
  out.emplace_back(path.t_end, path.z_final);
  return out;
}

double cubic_budget(const CharPath& path) {
  double s = 0.0;
  for (const CharCrossing& c : path.crossings) s += c.cube;
  return s;
}

double LagrangianField::eta(std::size_t i, double t) const {
  return paths[i].z_at(t) - paths[i].z_initial;
}

double LagrangianField::v(std::size_t i, double t) const {
  return std::exp(paths[i].lambda2_jump_sum(t));
}

std::vector<double> default_mesh(const Trajectory& traj, std::size_t count,
                                 std::vector<std::string>* warnings) {
  const LatticeFunction& f = traj.initial;
  double lo, hi;
  if (f.breakpoints.empty()) {
    lo = -1.0;
    hi = 1.0;
  } else {
    lo = f.breakpoints.front();
    hi = f.breakpoints.back();
    const double width = std::max(hi - lo, 1.0);
    lo -= width;
    hi += width;
  }
  std::vector<double> mesh(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = lo + (hi - lo) * (static_cast<double>(i) + 0.5) /
                        static_cast<double>(count);
    while (std::binary_search(f.breakpoints.begin(), f.breakpoints.end(), x)) {
      x = std::nextafter(x, std::numeric_limits<double>::infinity());
      if (warnings) {
        warnings->push_back("mesh point on a breakpoint shifted by one ulp");
      }
    }
    mesh[i] = x;
  }
  return mesh;
}

double lambda2_sup_over_run(const Trajectory& traj) {
  double sup = 0.0;
  auto visit = [&](std::int64_t w_idx) {
    sup = std::max(sup, std::fabs(lambda2(traj.model, lattice_w(w_idx, traj.nu))));
  };
  for (std::int64_t k : traj.initial.w_idx) visit(k);
  for (const Front& f : traj.fronts) {
    visit(f.left.w_idx);
    visit(f.right.w_idx);
  }
  return sup;
}

LagrangianField lagrangian(const Trajectory& traj, std::span<const double> mesh) {
  LagrangianField field;
  field.mesh.assign(mesh.begin(), mesh.end());
  field.paths = trace_2chars(traj, mesh);
  field.lambda2_sup = lambda2_sup_over_run(traj);
  return field;
}

}  // namespace wft
