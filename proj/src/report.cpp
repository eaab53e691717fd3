#include "bvforge/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "bvforge/poly_io.hpp"

namespace bvforge {

using json = nlohmann::ordered_json;

namespace {

constexpr Stage kStages[] = {Stage::El, Stage::Noether, Stage::KT, Stage::Master, Stage::Verify};

json text_list(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_text(p));
  return a;
}

int window(const ProblemSpec& spec) { return spec.finite_mode() ? 0 : spec.bounds.max_jet_order; }

json problem_json(const ProblemSpec& spec) {
  JetRingSpec ring = spec.ring.canonical();
  json p;
  p["name"] = spec.name;
  p["mode"] = spec.finite_mode() ? "finite" : "jet";
  p["base_dim"] = ring.base_dim;
  json fields = json::array();
  for (const auto& f : ring.fields) fields.push_back({{"name", f.name}, {"parity", f.intrinsic_parity}});
  p["fields"] = fields;
  p["parameters"] = ring.parameters;
  p["coordinates"] = ring.coordinates;
  try {
    p["lagrangian"] = to_text(problem_action(spec).lagrangian);
  } catch (const std::exception&) {
    p["lagrangian"] = spec.lagrangian;
  }
  return p;
}

json bounds_json(const Bounds& b) {
  return {{"max_jet_order", b.max_jet_order},       {"prolongation_order", b.prolongation_order},
          {"degree_bound", b.degree_bound},         {"max_kt_level", b.max_kt_level},
          {"max_master_order", b.max_master_order}};
}

void require(const Report& r, Stage s) {
  if (s == Stage::El) return;
  Stage prev = static_cast<Stage>(static_cast<int>(s) - 1);
  if (!r.has(prev)) throw StageError(s, "stage dependency unmet");
}

void el_stage(Report& r) {
  auto action = std::make_shared<LocalAction>(problem_action(r.problem));
  auto sys = euler_lagrange_system(*action);
  json j;
  j["components"] = text_list(sys.components);
  j["el_ideal"] = text_list(el_ideal(*action, r.problem.bounds.prolongation_order));
  r.action = action;
  r.stages["el"] = j;
}

void noether_stage(Report& r) {
  auto ids = noether_identities(*r.action, window(r.problem), r.problem.bounds.degree_bound);
  json a = json::array();
  for (const auto& n : ids) {
    json basis = json::array();
    for (const auto& v : n.basis) basis.push_back(display_name(v));
    a.push_back({{"representative", to_text(n.representative)},
                 {"basis", basis},
                 {"coefficients", text_list(n.coefficients)},
                 {"degree", n.degree}});
  }
  r.stages["noether"] = {{"count", ids.size()}, {"identities", a}};
}

void kt_stage(Report& r) {
  const Bounds& b = r.problem.bounds;
  auto kt = std::make_shared<KTData>(build_koszul_tate(*r.action, b.max_kt_level, window(r.problem), b.degree_bound));
  json gens = json::array();
  for (const auto& lvl : kt->levels)
    for (const auto& g : lvl)
      gens.push_back({{"name", g.name() + "*"},
                      {"level", g.level},
                      {"parity", g.intrinsic_parity},
                      {"weight", g.weight},
                      {"image", to_text(g.image)}});
  bool nilpotent = true;
  for (const auto& [v, img] : kt->images) nilpotent = nilpotent && apply_d_kt(*kt, img).is_zero();
  json j;
  j["jet_window"] = kt->jet_window;
  j["generator_count"] = kt->images.size();
  j["antighosts"] = gens;
  j["top_level"] = kt->top_level;
  j["terminated_at"] = kt->terminated_at;
  j["strongly_regular"] = kt->strongly_regular();
  j["d_kt_squared_zero"] = nilpotent;
  for (const auto& c : kt->certificates)
    r.certificates.push_back({{"stage", "kt"},
                              {"level", c.level},
                              {"degree_bound", c.degree_bound},
                              {"rounds", c.rounds},
                              {"pieces", c.pieces},
                              {"chain_dimension", c.chain_dimension},
                              {"vanishes", c.vanishes}});
  r.kt = kt;
  r.stages["kt"] = j;
  if (!kt->strongly_regular()) {
    r.status = RunStatus::Inconclusive;
    r.message = "kt: homology did not vanish up to level " + std::to_string(b.max_kt_level);
  }
}

void master_stage(Report& r) {
  if (!r.kt->strongly_regular()) throw StageError(Stage::Master, "stage dependency unmet");
  auto bv = std::make_shared<BVUniverse>(assemble_bv(*r.action, *r.kt));
  Poly s_kt = build_s_kt(*r.action, *bv);
  auto m = std::make_shared<MasterAction>(
      solve_master(*r.action, *bv, r.problem.bounds.max_master_order, r.problem.bounds.degree_bound));
  json ghosts = json::array();
  for (const auto& g : bv->ghosts) ghosts.push_back(display_name(g));
  json j;
  j["ghosts"] = ghosts;
  j["s_kt"] = to_text(s_kt);
  j["s_cm"] = to_text(m->action);
  j["pieces"] = text_list(m->pieces);
  j["order"] = m->order;
  j["terminated"] = m->terminated;
  j["residual"] = to_text(m->residual);
  r.certificates.push_back({{"stage", "master"}, {"order", m->order}, {"terminated", m->terminated}});
  r.bv = bv;
  r.master = m;
  r.stages["master"] = j;
  if (!m->terminated) {
    r.status = RunStatus::Inconclusive;
    r.message = "master: bracket nonzero at order " + std::to_string(m->order);
  }
}

void verify_stage(Report& r) {
  if (!r.master) throw StageError(Stage::Verify, "stage dependency unmet");
  auto c = verify_master(*r.master);
  r.stages["verify"] = {{"residual", to_text(c.residual)}, {"holds", c.holds}, {"witness", text_list(c.witness)}};
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::El: return "el";
    case Stage::Noether: return "noether";
    case Stage::KT: return "kt";
    case Stage::Master: return "master";
    case Stage::Verify: return "verify";
  }
  return "?";
}

std::optional<Stage> parse_stage(const std::string& name) {
  for (Stage s : kStages)
    if (name == stage_name(s)) return s;
  return std::nullopt;
}

Report empty_report(const ProblemSpec& spec) {
  Report r;
  r.problem = spec;
  r.stages = json::object();
  for (Stage s : kStages) r.stages[stage_name(s)] = nullptr;
  return r;
}

void run_stage(Report& r, Stage s) {
  require(r, s);
  auto start = std::chrono::steady_clock::now();
  try {
    switch (s) {
      case Stage::El: el_stage(r); break;
      case Stage::Noether: noether_stage(r); break;
      case Stage::KT: kt_stage(r); break;
      case Stage::Master: master_stage(r); break;
      case Stage::Verify: verify_stage(r); break;
    }
  } catch (const StageError&) {
    throw;
  } catch (const InconclusiveError& e) {
    r.status = RunStatus::Inconclusive;
    r.message = std::string(stage_name(s)) + ": " + e.what();
  } catch (const JetOverflowError& e) {
    r.status = RunStatus::Inconclusive;
    r.message = std::string(stage_name(s)) + ": " + e.what();
  } catch (const MasterError& e) {
    r.status = RunStatus::Inconclusive;
    r.message = std::string(stage_name(s)) + ": " + e.what();
  } catch (const std::exception& e) {
    throw StageError(s, e.what());
  }
  std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
  r.timings.emplace_back(stage_name(s), ms.count());
}

Report run(const ProblemSpec& spec, Stage last) {
  Report r = empty_report(spec);
  for (Stage s : kStages) {
    if (static_cast<int>(s) > static_cast<int>(last)) break;
    run_stage(r, s);
    if (r.status != RunStatus::Ok || !r.has(s)) break;
  }
  return r;
}

int exit_code(const Report& r) { return r.status == RunStatus::Ok ? 0 : 2; }

namespace {

std::string render_text(const Report& r, bool include_timings) {
  std::ostringstream o;
  const auto& st = r.stages;
  o << "problem " << (r.problem.name.empty() ? "(unnamed)" : r.problem.name) << " ("
    << (r.problem.finite_mode() ? "finite" : "jet, base_dim " + std::to_string(r.problem.ring.base_dim)) << ")\n";
  if (!st["el"].is_null()) {
    o << "euler-lagrange:\n";
    for (const auto& c : st["el"]["components"]) o << "  " << c.get<std::string>() << '\n';
    o << "el ideal:";
    for (const auto& c : st["el"]["el_ideal"]) o << ' ' << c.get<std::string>();
    o << '\n';
  }
  if (!st["noether"].is_null()) {
    o << "noether identities: " << st["noether"]["count"].get<std::size_t>() << '\n';
    for (const auto& n : st["noether"]["identities"]) o << "  " << n["representative"].get<std::string>() << '\n';
  }
  if (!st["kt"].is_null()) {
    const auto& k = st["kt"];
    o << "koszul-tate: " << k["antighosts"].size() << " antighost(s), top level " << k["top_level"].get<int>();
    if (k["strongly_regular"].get<bool>())
      o << ", homology vanishes at level " << k["terminated_at"].get<int>() << '\n';
    else
      o << ", not terminated\n";
    for (const auto& g : k["antighosts"])
      o << "  d(" << g["name"].get<std::string>() << ") = " << g["image"].get<std::string>() << '\n';
  }
  if (!st["master"].is_null()) {
    o << "S_KT = " << st["master"]["s_kt"].get<std::string>() << '\n';
    o << "S_cm = " << st["master"]["s_cm"].get<std::string>() << '\n';
  }
  if (!st["verify"].is_null())
    o << "{S_cm,S_cm} = " << st["verify"]["residual"].get<std::string>()
      << (st["verify"]["holds"].get<bool>() ? " (master equation holds)" : " (master equation fails)") << '\n';
  if (r.status == RunStatus::Inconclusive) o << "inconclusive: " << r.message << '\n';
  if (include_timings)
    for (const auto& [name, ms] : r.timings) o << "time " << name << ": " << std::fixed << std::setprecision(3) << ms << " ms\n";
  return o.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format, bool include_timings) {
  if (format == ReportFormat::Text) return render_text(r, include_timings);
  json j;
  j["problem"] = problem_json(r.problem);
  j["bounds"] = bounds_json(r.problem.bounds);
  j["stages"] = r.stages;
  j["certificates"] = r.certificates;
  j["status"] = r.status == RunStatus::Ok ? "ok" : "inconclusive";
  if (!r.message.empty()) j["message"] = r.message;
  if (include_timings) {
    json t = json::object();
    for (const auto& [name, ms] : r.timings) t[name] = std::round(ms * 1000.0) / 1000.0;
    j["timings"] = t;
  }
  return j.dump(2) + "\n";
}

}  // namespace bvforge
