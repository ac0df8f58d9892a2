#include "wft/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "wft/common.hpp"

namespace wft {

using json = nlohmann::ordered_json;

std::string double_to_string(double v) {
  char buf[32];
  auto rc = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, rc.ptr);
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractViolation("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SampledData load_samples_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  SampledData data;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw ContractViolation(path + ":" + std::to_string(lineno) +
                              ": expected x,w,z");
    }
    if (lineno == 1 && fields[0] == "x") continue;  // header
    try {
      data.x.push_back(std::stod(fields[0]));
      data.w.push_back(std::stod(fields[1]));
      data.z.push_back(std::stod(fields[2]));
    } catch (const std::exception&) {
      throw ContractViolation(path + ":" + std::to_string(lineno) +
                              ": malformed number");
    }
  }
  return data;
}

void write_samples_csv(const std::string& path, const SampledData& samples) {
  std::ofstream out = open_out(path);
  out << "x,w,z\n";
  for (std::size_t i = 0; i < samples.x.size(); ++i) {
    out << double_to_string(samples.x[i]) << ',' << double_to_string(samples.w[i])
        << ',' << double_to_string(samples.z[i]) << '\n';
  }
}

std::vector<double> load_sequence_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (const std::string& f : split_fields(line)) {
      if (f.empty()) continue;
      try {
        values.push_back(std::stod(f));
      } catch (const std::exception&) {
        throw ContractViolation(path + ":" + std::to_string(lineno) +
                                ": malformed number '" + f + "'");
      }
    }
  }
  return values;
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SampledData random_steps(std::uint64_t seed, std::int64_t steps, double aw,
                         double az) {
  std::mt19937_64 rng(seed);
  SampledData data;
  const auto n = static_cast<std::size_t>(steps);
  std::vector<double> xs(n);
  for (double& x : xs) x = unit_uniform(rng);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    data.x.push_back(x);
    data.w.push_back(aw * (2.0 * unit_uniform(rng) - 1.0));
    data.z.push_back(az * (2.0 * unit_uniform(rng) - 1.0));
  }
  return data;
}

}  // namespace

SampledData generate_initial(const RunConfig& cfg) {
  if (cfg.initial == "two-shock") {
    return SampledData{{0.0, 0.4, 0.6}, {0.1, 0.0, -0.1}, {0.0, 0.0, 0.0}};
  }
  if (cfg.initial == "pure-cd") {
    return SampledData{{0.0, 0.3, 0.7}, {0.0, 0.0, 0.0}, {0.05, -0.03, 0.08}};
  }
  if (cfg.initial == "random-steps") {
    return random_steps(cfg.seed, cfg.steps, cfg.amplitude_w, cfg.amplitude_z);
  }
  return load_samples_csv(cfg.initial);
}

namespace {

json state_json(const LatticeState& u) {
  return json{{"k", u.w_idx}, {"z", u.z}};
}

LatticeState state_from(const json& j) {
  return {j.at("k").get<std::int64_t>(), j.at("z").get<double>()};
}

json front_json(const Front& f) {
  return json{{"id", f.id},
              {"kind", to_string(f.kind)},
              {"t", f.birth_time},
              {"x", f.birth_x},
              {"speed", f.speed},
              {"left", state_json(f.left)},
              {"right", state_json(f.right)}};
}

FrontKind kind_from(const std::string& s) {
  if (s == "S1") return FrontKind::Shock1;
  if (s == "R1") return FrontKind::Rare1;
  if (s == "CD") return FrontKind::Contact2;
  throw InvariantViolation("unknown front kind '" + s + "'");
}

InteractionCase case_from(const std::string& s) {
  if (s == "CD_R1") return InteractionCase::CD_R1;
  if (s == "CD_S1") return InteractionCase::CD_S1;
  if (s == "R1_S1") return InteractionCase::R1_S1;
  if (s == "S1_R1") return InteractionCase::S1_R1;
  if (s == "S1_S1") return InteractionCase::S1_S1;
  throw InvariantViolation("unknown interaction case '" + s + "'");
}

Front front_from(const json& j) {
  Front f;
  f.id = j.at("id").get<std::int64_t>();
  f.kind = kind_from(j.at("kind").get<std::string>());
  f.birth_time = j.at("t").get<double>();
  f.birth_x = j.at("x").get<double>();
  f.speed = j.at("speed").get<double>();
  f.left = state_from(j.at("left"));
  f.right = state_from(j.at("right"));
  return f;
}

}  // namespace

void write_events_jsonl(const std::string& path, const Trajectory& traj,
                        const std::string& cfg_hash) {
  std::ofstream out = open_out(path);
  json header{{"type", "header"},
              {"version", kVersion},
              {"config_hash", cfg_hash},
              {"nu", traj.nu},
              {"t_max", traj.t_max},
              {"model",
               {{"b", traj.model.b}, {"kappa", traj.model.kappa}, {"r", traj.model.r}}},
              {"initial",
               {{"breakpoints", traj.initial.breakpoints},
                {"w_idx", traj.initial.w_idx},
                {"z", traj.initial.z}}}};
  out << header.dump() << '\n';
  for (std::int64_t id : traj.initial_front_ids) {
    json line = front_json(traj.fronts[static_cast<std::size_t>(id)]);
    line["type"] = "front";
    out << line.dump() << '\n';
  }
  for (const InteractionRecord& e : traj.events) {
    json outgoing = json::array();
    for (std::int64_t id : e.outgoing) {
      outgoing.push_back(front_json(traj.fronts[static_cast<std::size_t>(id)]));
    }
    json line{{"type", "interaction"},
              {"time", e.time},
              {"x", e.position},
              {"case", to_string(e.tag)},
              {"in", {e.incoming_left, e.incoming_right}},
              {"out", outgoing},
              {"states",
               {{"um", state_json(e.u_minus)},
                {"u0", state_json(e.u_zero)},
                {"up", state_json(e.u_plus)},
                {"umid", state_json(e.u_mid)}}}};
    out << line.dump() << '\n';
  }
}

Trajectory load_events_jsonl(const std::string& path) {
  std::ifstream in = open_in(path);
  Trajectory traj;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      traj.nu = j.at("nu").get<std::int64_t>();
      traj.t_max = j.at("t_max").get<double>();
      const json& m = j.at("model");
      traj.model = ModelSpec::synthetic(m.at("b").get<double>(),
                                        m.at("kappa").get<double>(),
                                        m.at("r").get<double>());
      const json& ini = j.at("initial");
      traj.initial.nu = traj.nu;
      traj.initial.breakpoints = ini.at("breakpoints").get<std::vector<double>>();
      traj.initial.w_idx = ini.at("w_idx").get<std::vector<std::int64_t>>();
      traj.initial.z = ini.at("z").get<std::vector<double>>();
      have_header = true;
    } else if (type == "front") {
      if (!have_header) throw InvariantViolation(path + ": front before header");
      Front f = front_from(j);
      if (f.id != static_cast<std::int64_t>(traj.fronts.size())) {
        throw InvariantViolation(path + ": front ids out of order");
      }
      if (f.kind != FrontKind::Contact2) ++traj.n1_initial;
      traj.initial_front_ids.push_back(f.id);
      traj.fronts.push_back(f);
    } else if (type == "interaction") {
      if (!have_header) throw InvariantViolation(path + ": event before header");
      InteractionRecord e;
      e.time = j.at("time").get<double>();
      e.position = j.at("x").get<double>();
      e.tag = case_from(j.at("case").get<std::string>());
      e.incoming_left = j.at("in").at(0).get<std::int64_t>();
      e.incoming_right = j.at("in").at(1).get<std::int64_t>();
      const json& st = j.at("states");
      e.u_minus = state_from(st.at("um"));
      e.u_zero = state_from(st.at("u0"));
      e.u_plus = state_from(st.at("up"));
      e.u_mid = state_from(st.at("umid"));
      for (const json& fj : j.at("out")) {
        Front f = front_from(fj);
        if (f.id != static_cast<std::int64_t>(traj.fronts.size())) {
          throw InvariantViolation(path + ": front ids out of order");
        }
        e.outgoing.push_back(f.id);
        traj.fronts.push_back(f);
      }
      auto& lf = traj.fronts.at(static_cast<std::size_t>(e.incoming_left));
      auto& rf = traj.fronts.at(static_cast<std::size_t>(e.incoming_right));
      e.incoming_left_kind = lf.kind;
      e.incoming_right_kind = rf.kind;
      lf.death_time = e.time;
      rf.death_time = e.time;
      if (e.tag == InteractionCase::CD_R1 || e.tag == InteractionCase::CD_S1) {
        ++traj.count_12;
      } else {
        ++traj.count_11;
      }
      traj.events.push_back(std::move(e));
    } else {
      throw InvariantViolation(path + ": unknown line type '" + type + "'");
    }
  }
  if (!have_header) throw InvariantViolation(path + ": missing header line");
  return traj;
}

namespace {

std::pair<double, double> plot_window(const Trajectory& traj) {
  double lo = -1.0, hi = 1.0;
  if (!traj.initial.breakpoints.empty()) {
    lo = traj.initial.breakpoints.front();
    hi = traj.initial.breakpoints.back();
  }
  return {lo - 1.0 - 2.0 * traj.t_max, hi + 1.0 + 2.0 * traj.t_max};
}

}  // namespace

void write_snapshots_csv(const std::string& path, const Trajectory& traj,
                         const std::vector<double>& times,
                         const std::string& cfg_hash) {
  std::ofstream out = open_out(path);
  out << "# fronttrack " << kVersion << " config=" << cfg_hash << '\n';
  out << "t,x,w_int,w,z\n";
  const auto [lo, hi] = plot_window(traj);
  for (double t : times) {
    if (!(t >= 0.0) || t > traj.t_max) continue;
    const SnapshotProfile prof = snapshot(traj, t);
    auto row = [&](double x, const LatticeState& v) {
      out << double_to_string(prof.time) << ',' << double_to_string(x) << ','
          << v.w_idx << ',' << double_to_string(lattice_w(v.w_idx, traj.nu)) << ','
          << double_to_string(v.z) << '\n';
    };
    row(lo, prof.leftmost);
    for (std::size_t i = 0; i < prof.positions.size(); ++i) {
      row(prof.positions[i], prof.values[i]);
    }
    (void)hi;
  }
}

void write_chars_csv(const std::string& path, const LagrangianField& field,
                     const std::string& cfg_hash) {
  std::ofstream out = open_out(path);
  out << "# fronttrack " << kVersion << " config=" << cfg_hash << '\n';
  out << "x0,t,x,z,cum_budget\n";
  for (const CharPath& p : field.paths) {
    auto row = [&](double t, double x, double z, double budget) {
      out << double_to_string(p.x0) << ',' << double_to_string(t) << ','
          << double_to_string(x) << ',' << double_to_string(z) << ','
          << double_to_string(budget) << '\n';
    };
    row(0.0, p.x0, p.z_initial, 0.0);
    double budget = 0.0;
    for (const CharCrossing& c : p.crossings) {
      budget += c.cube;
      row(c.time, c.x, c.z_after, budget);
    }
    row(p.t_end, p.position(p.t_end), p.z_final, budget);
  }
}

namespace {

json check_json(const CheckResult& c) {
  json j{{"verdict", c.pass ? "pass" : "fail"},
         {"measured", c.measured},
         {"bound", c.bound},
         {"tolerance", c.tolerance},
         {"worst_location", c.worst_location}};
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.gating) j["gating"] = false;
  return j;
}

}  // namespace

void write_report_json(const std::string& path, const RunConfig& cfg,
                       const Trajectory& traj, const CheckReport& report,
                       const DiscretizeReport& disc,
                       const ValidationReport& model_validation,
                       const LagrangianField& field,
                       const ConvergenceReport* convergence) {
  json j;
  j["version"] = kVersion;
  j["config_hash"] = config_hash(cfg);
  {
    json c;
    std::istringstream is(canonical_config(cfg));
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) c[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = c;
  }
  {
    json v;
    v["passed"] = model_validation.passed;
    for (const ValidationEntry& e : model_validation.entries) {
      v["checks"][e.check] = e.pass ? "pass" : ("fail: " + e.detail);
    }
    j["model_validation"] = v;
  }
  {
    json d;
    d["l1_distance_w"] = disc.l1_distance_w;
    d["linf_error_w"] = disc.linf_error_w;
    d["osc_w_before"] = disc.osc_w_before;
    d["osc_w_after"] = disc.osc_w_after;
    d["sup_abs_w_before"] = disc.sup_abs_w_before;
    d["sup_abs_w_after"] = disc.sup_abs_w_after;
    d["sup_abs_z"] = disc.sup_abs_z;
    for (std::size_t i = 0; i < disc.s_values.size(); ++i) {
      json t;
      t["s"] = disc.s_values[i];
      t["before"] = disc.tvs_w_before[i];
      t["after"] = disc.tvs_w_after[i];
      d["tvs_w"].push_back(t);
    }
    j["discretize"] = d;
  }
  {
    json c;
    c["N_nu"] = traj.initial.n_breakpoints();
    c["osc_w"] = traj.initial.osc_w();
    c["n1_initial"] = traj.n1_initial;
    c["N1_prime"] = traj.count_11;
    c["N2_prime"] = traj.count_12;
    c["bound_N1_prime"] = traj.bound_n1();
    c["bound_N2_prime"] = traj.bound_n2();
    c["events"] = traj.events.size();
    c["fronts_total"] = traj.fronts.size();
    j["counters"] = c;
  }
  {
    json c;
    for (const CheckResult& r : report.checks) c[r.name] = check_json(r);
    j["checks"] = c;
  }
  {
    json c;
    c["mesh_count"] = field.mesh.size();
    c["lambda2_sup"] = field.lambda2_sup;
    c["warnings"] = field.warnings;
    j["characteristics"] = c;
  }
  if (convergence) {
    json c;
    c["distances_decreasing"] = convergence->distances_decreasing;
    c["note"] = convergence->note;
    for (const ConvergenceRow& r : convergence->rows) {
      c["rows"].push_back(json{{"nu_coarse", r.nu_coarse},
                               {"nu_fine", r.nu_fine},
                               {"time", r.time},
                               {"l1_w", r.l1_w},
                               {"l1_z", r.l1_z}});
    }
    j["convergence"] = c;
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& rep,
                           const std::string& cfg_hash) {
  std::ofstream out = open_out(path);
  out << "# fronttrack " << kVersion << " config=" << cfg_hash << '\n';
  out << "nu_coarse,nu_fine,t,l1_w,l1_z\n";
  for (const ConvergenceRow& r : rep.rows) {
    out << r.nu_coarse << ',' << r.nu_fine << ',' << double_to_string(r.time) << ','
        << double_to_string(r.l1_w) << ',' << double_to_string(r.l1_z) << '\n';
  }
}

}  // namespace wft
