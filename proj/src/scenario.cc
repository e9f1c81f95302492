#include "ipd/scenario.h"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "ipd/evo.h"
#include "ipd/folk.h"
#include "ipd/limit.h"

namespace ipd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ScenarioError(where + ": " + what); }

const json& req(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational num(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) return rational_from_double(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "expected a number");
}

double dnum(const json& j, const std::string& where) { return to_double(num(j, where)); }

long lnum(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

PointQ point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a point [x, y]");
  return {num(j[0], where + "[0]"), num(j[1], where + "[1]")};
}

std::vector<PointQ> points(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of points");
  std::vector<PointQ> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Move> moves(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a move string such as \"ccd\"");
  std::vector<Move> out;
  for (char c : j.get<std::string>()) {
    if (c == 'c' || c == 'C') out.push_back(Move::C);
    else if (c == 'd' || c == 'D') out.push_back(Move::D);
    else fail(where, std::string("bad move '") + c + "'");
  }
  return out;
}

OnLineRule rule(const json& spec, const char* key, const std::string& where) {
  if (!spec.contains(key)) return OnLineRule::cooperate();
  const json& j = spec.at(key);
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "c") return OnLineRule::cooperate();
    if (s == "d") return OnLineRule::defect();
    if (s == "diagonal_split") return OnLineRule::diagonal_split();
  }
  return OnLineRule::prob(num(j, where + "." + key));
}

Line line(const json& j, const std::string& where) {
  if (j.contains("through")) {
    auto p = points(j.at("through"), where + ".through");
    if (p.size() != 2) fail(where + ".through", "expected two points");
    if (p[0] == p[1]) fail(where + ".through", "points coincide");
    return Line::through(p[0], p[1]);
  }
  if (j.contains("horizontal")) return Line::horizontal(num(j.at("horizontal"), where + ".horizontal"));
  if (j.contains("slope"))
    return Line::through_slope(point(req(j, "point", where), where + ".point"), num(j.at("slope"), where + ".slope"));
  fail(where, "line needs 'through', 'horizontal' or 'point' and 'slope'");
}

std::shared_ptr<const SeparationPath> path_spec(const json& j, const GameParams& g, const std::string& where) {
  if (j.contains("vertices")) return std::make_shared<const SeparationPath>(g, points(j.at("vertices"), where + ".vertices"));
  if (j.contains("peak")) return std::make_shared<const SeparationPath>(path_from_peak(g, point(j.at("peak"), where + ".peak")));
  if (j.contains("ode_start")) {
    int steps = j.contains("steps") ? int(lnum(j.at("steps"), where + ".steps")) : 2000;
    return std::make_shared<const SeparationPath>(path_from_ode(g, to_double(point(j.at("ode_start"), where + ".ode_start")), steps));
  }
  fail(where, "path needs 'vertices', 'peak' or 'ode_start'");
}

Plan plan(const json& j, const GameParams& g, const std::string& where) {
  const std::string f = req(j, "family", where).get<std::string>();
  auto arg = [&](const char* k) { return num(req(j, k, where), where + "." + k); };
  if (f == "markov") {
    const json& p = req(j, "p", where);
    if (!p.is_array() || p.size() != 4) fail(where + ".p", "expected four probabilities");
    return MarkovPlan::make(num(p[0], where + ".p[0]"), num(p[1], where + ".p[1]"), num(p[2], where + ".p[2]"),
                            num(p[3], where + ".p[3]"));
  }
  if (f == "tft") return markov_tft();
  if (f == "repeat") return markov_repeat();
  if (f == "markov_allc") return markov_allc();
  if (f == "markov_alld") return markov_alld();
  if (f == "scripted") return ScriptedPlan{moves(req(j, "moves", where), where + ".moves")};
  if (f == "equalizer") return make_equalizer(g, arg("E"), rule(j, "on_line", where));
  if (f == "extortionate") return make_extortionate(g, arg("slope"), rule(j, "on_line", where));
  if (f == "good") return make_good_simple(g, arg("slope"), rule(j, "on_line", where));
  if (f == "allc") return make_allc(g);
  if (f == "alld") return make_alld(g);
  if (f == "smale_tft") return make_smale_tft(g);
  if (f == "simple") return make_simple(g, line(req(j, "line", where), where + ".line"), rule(j, "on_line", where));
  if (f == "constant") return make_constant(g, arg("p"));
  if (f == "generous_region") return make_generous_region(g, point(req(j, "V", where), where + ".V"));
  if (f == "convex_generous") return make_convex_generous(g, points(req(j, "vertices", where), where + ".vertices"));
  if (f == "region_polygon") return make_region_polygon(g, points(req(j, "vertices", where), where + ".vertices"));
  if (f == "path") return make_path_plan(g, path_spec(j, g, where), rule(j, "on_path", where));
  fail(where + ".family", "unknown family '" + f + "'");
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json pt(const Point& p) { return json::array({p.x, p.y}); }
json pt(const PointQ& p) { return pt(to_double(p)); }

void add(RunReport& r, std::string name, bool pass, double value, double limit, std::string detail = "") {
  r.checks.push_back({std::move(name), pass, value, limit, std::move(detail)});
}

std::string write(RunReport& r, const std::string& dir, const std::string& name, const std::string& text) {
  fs::path p = fs::path(dir) / name;
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
  r.artifacts.push_back(p.string());
  return p.string();
}

struct Context {
  const json& doc;
  GameParams g;
  std::map<std::string, json> strategy_specs;
  std::string out;
  RunOverrides o;

  Strategy strategy(const json& ref, const std::string& where) const {
    if (ref.is_string()) {
      auto it = strategy_specs.find(ref.get<std::string>());
      if (it == strategy_specs.end()) fail(where, "unknown strategy '" + ref.get<std::string>() + "'");
      return parse_strategy(it->second, g, "strategies." + it->first);
    }
    return parse_strategy(ref, g, where);
  }

  std::vector<std::uint64_t> seeds(const json& j, const std::string& where) const {
    std::vector<std::uint64_t> s;
    if (o.seed_range) {
      for (auto k = o.seed_range->first; k <= o.seed_range->second; ++k) s.push_back(k);
      return s;
    }
    if (j.contains("seeds")) {
      const json& r = j.at("seeds");
      if (!r.is_array() || r.size() != 2) fail(where + ".seeds", "expected [first, last]");
      auto a = r[0].get<std::uint64_t>(), b = r[1].get<std::uint64_t>();
      if (b < a) fail(where + ".seeds", "empty range");
      for (auto k = a; k <= b; ++k) s.push_back(k);
      return s;
    }
    s.push_back(j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 1);
    return s;
  }

  SimOptions sim(const json& j, const std::string& where) const {
    SimOptions so;
    so.rounds = j.contains("rounds") ? lnum(j.at("rounds"), where + ".rounds") : 10000;
    if (so.rounds < 1) fail(where + ".rounds", "must be at least 1");
    if (j.contains("weights")) so.weights = parse_weights(j.at("weights"));
    if (j.contains("mode")) {
      auto m = j.at("mode").get<std::string>();
      if (m == "rational") so.mode = Arithmetic::rational;
      else if (m == "float") so.mode = Arithmetic::floating;
      else fail(where + ".mode", "expected rational or float");
    }
    if (o.mode) so.mode = *o.mode;
    return so;
  }
};

json overlay(const Strategy& s, const GameParams& g, bool is_y) {
  json o = json::object();
  auto sp = std::get_if<SmalePlan>(&s.plan);
  if (!sp) return o;
  if (sp->is_simple()) {
    auto seg = clip_to_hull(sp->line(), g);
    json pts = json::array();
    for (auto& q : seg) pts.push_back(pt(is_y ? switch_point(q) : q));
    o["line"] = pts;
  } else if (auto p = std::get_if<SmalePlan::Path>(&sp->body())) {
    json pts = json::array();
    for (auto& q : p->path->vertices()) pts.push_back(pt(is_y ? switch_point(q) : q));
    o["path"] = pts;
  }
  o["plan"] = sp->describe();
  return o;
}

json plot_data(const Trajectory& t, const LimitSetEstimate& e, const Strategy& x, const Strategy& y,
               const std::optional<Point>& predicted) {
  const GameParams& g = t.game();
  json j;
  json hull = json::array();
  for (const auto& v : g.hull_vertices()) hull.push_back(pt(v));
  j["hull"] = hull;
  json tail = json::array();
  for (const auto& p : e.cloud) tail.push_back(pt(p));
  j["tail"] = tail;
  j["x"] = overlay(x, g, false);
  j["y"] = overlay(y, g, true);
  if (predicted) j["predicted"] = pt(*predicted);
  return j;
}

// Shared by match and folk jobs.
void trajectory_checks(RunReport& r, const Trajectory& t, const LimitSetEstimate& e, const std::string& tag) {
  auto step = check_step_law(t);
  add(r, "step_law" + tag, step.violations == 0, double(step.violations), 0, std::to_string(step.checked) + " rounds");
  auto conv = check_convexity_law(t);
  add(r, "convexity_law" + tag, conv.violations == 0, double(conv.violations), 0,
      t.mode() == Arithmetic::rational ? "exact" : "float");
  add(r, "limit_connected" + tag, e.connected, e.radius, e.radius, shape_name(e.shape));
}

RunReport run_match(Context& c) {
  RunReport r;
  const json& m = req(c.doc, "match", "match");
  Strategy x = c.strategy(req(m, "x", "match"), "match.x");
  Strategy y = c.strategy(req(m, "y", "match"), "match.y");
  SimOptions so = c.sim(m, "match");
  auto seeds = c.seeds(m, "match");
  const json expect = m.value("expect", json::object());
  std::optional<Point> predicted;
  auto xs = std::get_if<SmalePlan>(&x.plan);
  auto ys = std::get_if<SmalePlan>(&y.plan);
  if (xs && ys && xs->is_simple() && ys->is_simple()) {
    try {
      auto p = predicted_limit(*xs, *ys);
      if (p.kind == PredictedLimit::Kind::point) predicted = to_double(p.point);
    } catch (const std::domain_error&) {
    }
  }
  double tail = m.contains("tail") ? dnum(m.at("tail"), "match.tail") : 0.5;
  if (!(tail > 0 && tail <= 1)) fail("match.tail", "expected a fraction in (0, 1]");
  std::vector<Point> loop;
  if (expect.contains("loop"))
    for (const auto& q : points(expect.at("loop"), "match.expect.loop")) loop.push_back(to_double(q));
  json runs = json::array();
  for (size_t k = 0; k < seeds.size(); ++k) {
    so.seed = seeds[k];
    std::string tag = seeds.size() > 1 ? "[seed " + std::to_string(so.seed) + "]" : "";
    Trajectory t = simulate(x, y, c.g, so);
    auto e = estimate_limit_set(t, tail, loop.empty() ? 4000 : 20000);
    trajectory_checks(r, t, e, tag);
    Point last = t.average(t.rounds());
    if (expect.contains("limit")) {
      Point target = to_double(point(expect.at("limit"), "match.expect.limit"));
      double tol = expect.contains("tol") ? dnum(expect.at("tol"), "match.expect.tol") : 0.01;
      double d = dist(last, target);
      add(r, "limit" + tag, d <= tol, d, tol);
    }
    if (expect.value("predicted", false)) {
      if (!predicted) fail("match.expect.predicted", "no predicted point for this pair");
      double tol = expect.contains("tol") ? dnum(expect.at("tol"), "match.expect.tol") : 0.01;
      double d = dist(last, *predicted);
      add(r, "predicted_limit" + tag, d <= tol, d, tol);
    }
    if (expect.contains("exact")) {
      if (t.mode() != Arithmetic::rational) fail("match.expect.exact", "needs rational mode");
      PointQ target = point(expect.at("exact"), "match.expect.exact");
      PointQ s = t.exact_average(t.rounds());
      add(r, "exact_limit" + tag, s == target, dist(to_double(s), to_double(target)), 0,
          to_string(s.x) + "," + to_string(s.y));
    }
    if (!loop.empty()) {
      double tol = expect.contains("tol") ? dnum(expect.at("tol"), "match.expect.tol") : 0.05;
      double h = hausdorff_to_loop(e.cloud, loop);
      add(r, "loop_hausdorff" + tag, h <= tol, h, tol, shape_name(e.shape));
    }
    runs.push_back({{"seed", so.seed}, {"final", pt(last)}, {"shape", shape_name(e.shape)}, {"diameter", e.diameter}});
    if (k == 0) {
      if (m.value("trajectory", true)) write(r, c.out, "trajectory.csv", t.csv());
      write(r, c.out, "limit.json", e.json());
      json plot = plot_data(t, e, x, y, predicted);
      if (!loop.empty()) {
        json l = json::array();
        for (const auto& q : loop) l.push_back(pt(q));
        plot["loop"] = l;
      }
      write(r, c.out, "plot.json", plot.dump(1));
    }
  }
  r.data["runs"] = runs;
  if (predicted) r.data["predicted"] = pt(*predicted);
  return r;
}

json flags_json(const SmaleFlags& f) {
  return {{"simple", f.simple},
          {"weakly_agreeable", f.weakly_agreeable},
          {"weakly_firm", f.weakly_firm},
          {"protection_line", f.protection_line},
          {"generous", f.generous},
          {"convex_generous", f.convex_generous},
          {"good", f.good},
          {"convex_good", f.convex_good}};
}

json flags_json(const MarkovFlags& f) {
  return {{"agreeable", f.agreeable},
          {"firm", f.firm},
          {"generous", f.generous},
          {"protection_inequalities", f.protection_inequalities},
          {"good", f.good}};
}

RunReport run_classify(Context& c) {
  RunReport r;
  const json cl = c.doc.value("classify", json::object());
  std::vector<std::string> names;
  if (cl.contains("strategies")) {
    for (auto& n : cl.at("strategies")) names.push_back(n.get<std::string>());
  } else {
    for (auto& [n, _] : c.strategy_specs) names.push_back(n);
  }
  const json expect = cl.value("expect", json::object());
  json out = json::object();
  for (const auto& n : names) {
    Strategy s = c.strategy(json(n), "classify.strategies");
    json f;
    if (auto m = std::get_if<MarkovPlan>(&s.plan)) f = flags_json(classify_markov(*m, c.g));
    else if (auto sp = std::get_if<SmalePlan>(&s.plan)) f = flags_json(classify_smale(*sp));
    else fail("classify." + n, "scripted plans have no classification");
    out[n] = f;
    if (expect.contains(n)) {
      for (auto& [flag, want] : expect.at(n).items()) {
        if (!f.contains(flag)) fail("classify.expect." + n, "unknown flag '" + flag + "'");
        bool got = f.at(flag).get<bool>();
        add(r, n + "." + flag, got == want.get<bool>(), got, want.get<bool>());
      }
    }
  }
  r.data["flags"] = out;
  write(r, c.out, "flags.json", out.dump(1));
  return r;
}

RunReport run_folk(Context& c) {
  RunReport r;
  const json& f = req(c.doc, "folk", "folk");
  PointQ s = point(req(f, "s", "folk"), "folk.s");
  FolkPair pair = [&] {
    try {
      return folk_pair(c.g, s);
    } catch (const std::invalid_argument& e) {
      fail("folk.s", e.what());
    }
  }();
  SimOptions so = c.sim(f, "folk");
  so.seed = c.seeds(f, "folk").front();
  double tol = f.contains("tol") ? dnum(f.at("tol"), "folk.tol") : 0.01;
  Strategy x = make_strategy(pair.x), y = make_strategy(pair.y);
  Trajectory t = simulate(x, y, c.g, so);
  auto e = estimate_limit_set(t, 0.5);
  trajectory_checks(r, t, e, "");
  double d = dist(t.average(t.rounds()), to_double(s));
  add(r, "converges_to_s*", d <= tol, d, tol);
  if (f.contains("expect_case")) {
    int want = int(lnum(f.at("expect_case"), "folk.expect_case"));
    add(r, "folk_case", int(pair.which) == want, int(pair.which), want, folk_case_name(pair.which));
  }
  r.data["case"] = int(pair.which);
  r.data["x"] = pair.x.describe();
  r.data["y"] = pair.y.describe();
  write(r, c.out, "trajectory.csv", t.csv());
  write(r, c.out, "plot.json", plot_data(t, e, x, y, to_double(s)).dump(1));
  return r;
}

RunReport run_evo(Context& c) {
  RunReport r;
  const json& ev = req(c.doc, "evo", "evo");
  std::vector<SmalePlan> roster;
  const json& names = req(ev, "roster", "evo");
  for (size_t i = 0; i < names.size(); ++i) {
    Strategy s = c.strategy(names[i], "evo.roster[" + std::to_string(i) + "]");
    auto sp = std::get_if<SmalePlan>(&s.plan);
    if (!sp || !sp->is_simple()) fail("evo.roster[" + std::to_string(i) + "]", "roster members must be simple Smale plans");
    roster.push_back(*sp);
  }
  PayoffMatrix A;
  try {
    A = build_payoff_matrix(roster);
  } catch (const std::invalid_argument& e) {
    fail("evo.roster", e.what());
  }
  int i_star = ev.contains("i_star") ? int(lnum(ev.at("i_star"), "evo.i_star")) : -1;
  auto th = check_theorem_hypotheses(roster, i_star);
  if (i_star < 0) i_star = th.i_star;
  r.data["theorems"] = {{"i_star", th.i_star},
                        {"ess", th.ess_theorem},
                        {"equalizer", th.equalizer_theorem},
                        {"global", th.global_theorem},
                        {"notes", th.notes}};
  if (ev.contains("expect_theorems")) {
    for (auto& [k, want] : ev.at("expect_theorems").items()) {
      bool got = k == "ess" ? th.ess_theorem : k == "equalizer" ? th.equalizer_theorem : k == "global" ? th.global_theorem
                                                                                                    : (fail("evo.expect_theorems", "unknown theorem '" + k + "'"), false);
      add(r, "theorem." + k, got == want.get<bool>(), got, want.get<bool>());
    }
  }
  IntegrateOptions io;
  if (ev.contains("t_max")) io.t_max = dnum(ev.at("t_max"), "evo.t_max");
  if (ev.contains("step")) io.step = dnum(ev.at("step"), "evo.step");
  std::vector<std::size_t> all(A.size());
  for (size_t k = 0; k < all.size(); ++k) all[k] = k;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A.size(); ++j)
      if (weakly_dominates(i, j, all, A)) io.monitor.push_back({int(i), int(j)});

  std::vector<std::vector<double>> starts;
  const json st = ev.value("starts", json::array());
  if (st.is_object()) {
    int n = int(lnum(req(st, "random", "evo.starts"), "evo.starts.random"));
    std::mt19937_64 rng(st.value("seed", 7ULL));
    double floor_star = st.contains("min_star") ? dnum(st.at("min_star"), "evo.starts.min_star") : 0;
    std::exponential_distribution<double> ex(1.0);
    for (int k = 0; k < n; ++k) {
      std::vector<double> xi(A.size());
      double s = 0;
      for (auto& v : xi) s += v = ex(rng);
      for (auto& v : xi) v /= s;
      if (i_star >= 0 && xi[i_star] < floor_star) {
        double rest = 1 - xi[i_star];
        for (size_t q = 0; q < xi.size(); ++q)
          if (int(q) != i_star) xi[q] *= (1 - floor_star) / rest;
        xi[i_star] = floor_star;
      }
      starts.push_back(xi);
    }
  } else {
    for (size_t k = 0; k < st.size(); ++k) {
      std::vector<double> xi;
      for (auto& v : st[k]) xi.push_back(dnum(v, "evo.starts"));
      if (xi.size() != A.size()) fail("evo.starts[" + std::to_string(k) + "]", "wrong length");
      starts.push_back(xi);
    }
  }
  bool want_fix = ev.value("expect_fixation", false);
  long fixed = 0, mono = 0;
  double simplex = 0;
  for (size_t k = 0; k < starts.size(); ++k) {
    Orbit orb;
    try {
      orb = integrate(starts[k], A, io);
    } catch (const std::invalid_argument& e) {
      fail("evo.starts[" + std::to_string(k) + "]", e.what());
    }
    if (orb.fixated && orb.fixated_at == i_star) ++fixed;
    mono += orb.monotonicity_violations;
    simplex = std::max(simplex, orb.max_simplex_error);
    if (k == 0) write(r, c.out, "orbit.csv", orb.csv());
  }
  if (want_fix) add(r, "fixation_at_i*", fixed == long(starts.size()), double(fixed), double(starts.size()));
  add(r, "H_monotone", mono == 0, double(mono), 0);
  add(r, "simplex", simplex <= 1e-12, simplex, 1e-12);
  r.data["fixated"] = fixed;
  r.data["starts"] = starts.size();
  write(r, c.out, "matrix.json", A.json());
  return r;
}

RunReport run_validate_path(Context& c) {
  RunReport r;
  const json& v = req(c.doc, "path", "path");
  std::shared_ptr<const SeparationPath> p;
  try {
    p = path_spec(v, c.g, "path");
  } catch (const std::invalid_argument& e) {
    fail("path", e.what());
  } catch (const std::domain_error& e) {
    fail("path", e.what());
  }
  bool strict = v.value("strict", true);
  int samples = v.contains("samples") ? int(lnum(v.at("samples"), "path.samples")) : 200;
  auto rep = validate_path(c.g, *p, strict, samples);
  bool want = v.value("expect_valid", true);
  add(r, strict ? "strict_separation_path" : "separation_path", rep.ok == want, double(rep.violations.size()), 0,
      rep.violations.empty() ? "" : rep.violations.front().clause);
  json verts = json::array();
  for (const auto& q : p->vertices_d()) verts.push_back(pt(q));
  json viol = json::array();
  for (const auto& q : rep.violations) viol.push_back({{"clause", q.clause}, {"a", pt(q.a)}, {"b", pt(q.b)}});
  r.data["vertices"] = verts.size();
  write(r, c.out, "path.json", json{{"vertices", verts}, {"violations", viol}}.dump(1));
  return r;
}

RunReport run_sweep(Context& c) {
  RunReport r;
  const json& s = req(c.doc, "sweep", "sweep");
  Strategy x = c.strategy(req(s, "x", "sweep"), "sweep.x");
  Strategy y = c.strategy(req(s, "y", "sweep"), "sweep.y");
  SimOptions so = c.sim(s, "sweep");
  auto seeds = c.seeds(s, "sweep");
  const std::string crit = s.value("criterion", std::string("absorbed_cc"));
  long by = s.contains("by") ? lnum(s.at("by"), "sweep.by") : so.rounds / 2;
  std::optional<Point> target;
  double tol = s.contains("tol") ? dnum(s.at("tol"), "sweep.tol") : 0.01;
  if (crit == "limit") target = to_double(point(req(s, "limit", "sweep"), "sweep.limit"));
  else if (crit != "absorbed_cc") fail("sweep.criterion", "expected absorbed_cc or limit");
  if (crit == "absorbed_cc" && (by < 1 || by > so.rounds)) fail("sweep.by", "must lie in [1, rounds]");

  std::vector<char> ok(seeds.size(), 0);
  std::vector<std::string> errors(seeds.size());
  std::atomic<size_t> next{0};
  unsigned n = c.o.threads ? c.o.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, unsigned(seeds.size()));
  auto work = [&] {
    for (size_t k; (k = next++) < seeds.size();) {
      try {
        SimOptions local = so;
        local.seed = seeds[k];
        Trajectory t = simulate(x, y, c.g, local);
        if (target) {
          ok[k] = dist(t.average(t.rounds()), *target) <= tol;
        } else {
          bool all = true;
          for (long q = by; q <= t.rounds() && all; ++q) all = t.outcome(q) == Outcome::CC;
          ok[k] = all;
        }
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  long hits = 0;
  json failures = json::array();
  for (size_t k = 0; k < seeds.size(); ++k) {
    hits += ok[k];
    if (!ok[k]) failures.push_back(seeds[k]);
  }
  double frac = double(hits) / seeds.size();
  double want = s.contains("expect_fraction") ? dnum(s.at("expect_fraction"), "sweep.expect_fraction") : 1.0;
  add(r, crit + "_fraction", frac >= want, frac, want, std::to_string(hits) + "/" + std::to_string(seeds.size()));
  r.data["fraction"] = frac;
  r.data["failures"] = failures;
  write(r, c.out, "sweep.json", json{{"seeds", seeds.size()}, {"fraction", frac}, {"failures", failures}}.dump(1));
  return r;
}

}  // namespace

bool RunReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json RunReport::to_json() const {
  json j;
  j["job"] = job;
  j["inputs_digest"] = digest;
  j["pass"] = pass();
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"limit", c.limit}, {"detail", c.detail}});
  j["checks"] = cs;
  j["artifacts"] = artifacts;
  j["data"] = data;
  return j;
}

json parse_scenario(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    long line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ScenarioError("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

json load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ScenarioError("cannot open scenario " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

GameParams parse_game(const json& doc) {
  if (!doc.contains("game")) return GameParams::canonical();
  const json& g = doc.at("game");
  try {
    return GameParams::make(num(req(g, "T", "game"), "game.T"), num(req(g, "R", "game"), "game.R"),
                            num(req(g, "P", "game"), "game.P"), num(req(g, "S", "game"), "game.S"));
  } catch (const std::invalid_argument& e) {
    fail("game", e.what());
  }
}

WeightSequence parse_weights(const json& j) {
  std::string k = req(j, "kind", "weights").get<std::string>();
  if (k == "uniform") return WeightSequence::uniform();
  try {
    if (k == "power") return WeightSequence::power(dnum(req(j, "exponent", "weights"), "weights.exponent"));
    if (k == "geometric") return WeightSequence::geometric(dnum(req(j, "ratio", "weights"), "weights.ratio"));
  } catch (const std::invalid_argument& e) {
    fail("weights", e.what());
  }
  fail("weights.kind", "expected uniform, power or geometric");
}

Strategy parse_strategy(const json& spec, const GameParams& g, const std::string& where) {
  if (!spec.is_object()) fail(where, "expected an object");
  const json& p = spec.contains("plan") ? spec.at("plan") : spec;
  std::string pw = spec.contains("plan") ? where + ".plan" : where;
  Strategy s{InitialPlay::cooperate(), {}, markov_allc()};
  try {
    s.plan = plan(p, g, pw);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    fail(pw, e.what());
  }
  if (spec.contains("initial")) {
    const json& i = spec.at("initial");
    if (i.is_string() && i.get<std::string>() == "c") s.initial = InitialPlay::cooperate();
    else if (i.is_string() && i.get<std::string>() == "d") s.initial = InitialPlay::defect();
    else {
      try {
        s.initial = InitialPlay::prob(dnum(i, where + ".initial"));
      } catch (const std::invalid_argument& e) {
        fail(where + ".initial", e.what());
      }
    }
  }
  if (spec.contains("prefix")) s.prefix = moves(spec.at("prefix"), where + ".prefix");
  return s;
}

std::string inputs_digest(const json& doc, const RunOverrides& o) {
  std::string s = doc.dump();
  if (o.mode) s += *o.mode == Arithmetic::rational ? "|rational" : "|float";
  if (o.seed_range) s += "|" + std::to_string(o.seed_range->first) + ".." + std::to_string(o.seed_range->second);
  return fnv1a(s);
}

RunReport run_scenario(const json& doc, const std::string& out_dir, const RunOverrides& o) {
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  if (doc.value("schema", std::string()) != kScenarioSchema)
    throw ScenarioError(std::string("schema: expected \"") + kScenarioSchema + "\"");
  Context c{doc, parse_game(doc), {}, out_dir, o};
  if (doc.contains("strategies")) {
    for (auto& [k, v] : doc.at("strategies").items()) c.strategy_specs[k] = v;
  }
  fs::create_directories(out_dir);
  std::string job = req(doc, "job", "scenario").get<std::string>();
  RunReport r;
  if (job == "match") r = run_match(c);
  else if (job == "classify") r = run_classify(c);
  else if (job == "folk") r = run_folk(c);
  else if (job == "evo") r = run_evo(c);
  else if (job == "validate-path") r = run_validate_path(c);
  else if (job == "sweep") r = run_sweep(c);
  else fail("job", "unknown job '" + job + "'");
  r.job = job;
  r.digest = inputs_digest(doc, o);
  fs::path rp = fs::path(out_dir) / "report.json";
  r.artifacts.push_back(rp.string());
  std::ofstream f(rp);
  f << r.to_json().dump(1) << '\n';
  return r;
}

}  // namespace ipd
