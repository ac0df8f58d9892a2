#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wft/riemann.hpp"

namespace wft {

enum class InteractionCase { CD_R1, CD_S1, R1_S1, S1_R1, S1_S1 };

const char* to_string(InteractionCase c);

/// One resolved binary collision. The four states are the outer left
/// state, the middle state before, the outer right state, and the middle
/// state after the interaction.
struct InteractionRecord {
  double time = 0.0;
  double position = 0.0;
  std::int64_t incoming_left = -1;
  std::int64_t incoming_right = -1;
  FrontKind incoming_left_kind = FrontKind::Contact2;
  FrontKind incoming_right_kind = FrontKind::Contact2;
  std::vector<std::int64_t> outgoing;  // fan order, left to right
  InteractionCase tag = InteractionCase::S1_S1;
  LatticeState u_minus, u_zero, u_plus, u_mid;
};

struct RunOptions {
  double t_max = 1.0;
};

/// Full run record. fronts[id] holds every front ever created, with its
/// birth anchor and death time; events are strictly increasing in time.
struct Trajectory {
  ModelSpec model;
  std::int64_t nu = 1;
  LatticeFunction initial;
  double t_max = 0.0;

  std::vector<Front> fronts;
  std::vector<std::int64_t> initial_front_ids;  // position order
  std::vector<InteractionRecord> events;

  std::int64_t n1_initial = 0;  // 1-fronts just after t = 0
  std::int64_t count_11 = 0;    // interactions between 1-waves (N'_1)
  std::int64_t count_12 = 0;    // interactions between a 2-wave and a 1-wave (N'_2)

  /// Closed-form counting bounds from nu, the breakpoint count, and the
  /// oscillation of the discretized data, in exact integer arithmetic.
  std::int64_t bound_n1() const;
  std::int64_t bound_n2() const;
};

struct Collision {
  double time = 0.0;
  double position = 0.0;
  std::int64_t left_id = -1;
  std::int64_t right_id = -1;
};

/// Earliest meeting among adjacent approaching pairs at or after t_now.
/// Ties (equal time within 1e-12 relative) break by smallest position,
/// then smallest left id. fronts must be sorted by position.
std::optional<Collision> next_collision(std::span<const Front> fronts, double t_now);

/// Classifies the incoming pair and solves the Riemann problem of the
/// outer states. Throws InvariantViolation for pairs the construction
/// excludes (anything ending in a contact, or two rarefaction fronts).
WaveFan resolve_interaction(const ModelSpec& m, std::int64_t nu, const Front& left,
                            const Front& right);
InteractionCase classify_interaction(FrontKind left, FrontKind right);

/// Advances event by event until t_max. Every intermediate state must stay
/// in the admissible ball (AdmissibilityError otherwise) and the total
/// event count must respect the counting bounds (InvariantViolation).
Trajectory run(const ModelSpec& m, const LatticeFunction& initial,
               const RunOptions& opts);

/// Piecewise-constant profile at a fixed time: leftmost state, then one
/// (position, right state) step per live front, sorted by position.
struct SnapshotProfile {
  double time = 0.0;
  LatticeState leftmost;
  std::vector<double> positions;
  std::vector<LatticeState> values;
  std::vector<std::int64_t> front_ids;

  std::vector<std::int64_t> w_sequence() const;
  std::vector<double> z_sequence() const;
};

/// Profile at time t, 0 <= t <= t_max. Querying an exact event time
/// evaluates one ulp after it.
SnapshotProfile snapshot(const Trajectory& traj, double t);

/// Replays a trajectory's events in order while maintaining the linked
/// order of live fronts. Shared by the verification and characteristics
/// passes.
class Replayer {
 public:
  explicit Replayer(const Trajectory& traj);

  std::size_t next_event() const { return cursor_; }
  bool done() const;
  const InteractionRecord& peek() const;
  const InteractionRecord& step();  // applies the next event's splice

  bool alive(std::int64_t id) const { return alive_[static_cast<std::size_t>(id)]; }
  std::int64_t head() const { return head_; }
  std::int64_t next_of(std::int64_t id) const {
    return next_[static_cast<std::size_t>(id)];
  }
  std::int64_t prev_of(std::int64_t id) const {
    return prev_[static_cast<std::size_t>(id)];
  }
  /// Leftmost live front strictly right of position x at time t.
  std::int64_t first_right_of(double x, double t) const;
  std::int64_t n_live_1fronts() const { return live_1fronts_; }

 private:
  const Trajectory* traj_;
  std::vector<std::int64_t> next_, prev_;
  std::vector<char> alive_;
  std::int64_t head_ = -1;
  std::size_t cursor_ = 0;
  std::int64_t live_1fronts_ = 0;
};

}  // namespace wft
