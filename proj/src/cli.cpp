#include "sharpset/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "sharpset/matrices.hpp"
#include "sharpset/molp.hpp"

namespace sharpset {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string term(const Rat& c, const std::string& label) {
  return c == Rat(1) ? label : c.str() + "*" + label;
}

}  // namespace

std::string to_string(Solver s) {
  switch (s) {
    case Solver::Benson: return "benson";
    case Solver::Cutplane: return "cutplane";
    case Solver::Probabilistic: return "probabilistic";
    case Solver::Oracle: return "oracle";
  }
  return "?";
}

Solver parse_solver(const std::string& s) {
  if (s == "benson") return Solver::Benson;
  if (s == "cutplane") return Solver::Cutplane;
  if (s == "probabilistic") return Solver::Probabilistic;
  if (s == "oracle") return Solver::Oracle;
  throw ValidationError("unknown solver '" + s + "' (expected benson, cutplane, probabilistic or oracle)");
}

unsigned thread_budget(unsigned requested) {
  if (const char* env = std::getenv("SHARPSET_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("SHARPSET_THREADS must be a positive integer (got '") + env + "')");
  }
  return requested == 0 ? 1 : requested;
}

RunReport run(const RunConfig& config) {
  const auto t_total = Clock::now();
  config.model.validate();
  // Refuse before any work; the override path is checked again with evidence.
  if (config.solver == Solver::Cutplane && !config.override_dynamic) cutplane_gate(config.model, false, nullptr);

  RunReport rep;
  rep.config = config;

  auto t = Clock::now();
  const auto ps = patches(config.model);
  rep.timings_ms["discretize"] = ms_since(t);
  rep.patches = ps.size();

  t = Clock::now();
  const DiscreteModel model = [&] {
    switch (config.model.family) {
      case Family::Static: return build_static(ps, config.model);
      case Family::DynCond: return build_dyn_cond(ps, config.model);
      case Family::DynUncond: return build_dyn_uncond(ps, config.model);
      case Family::TwoLag: return build_ar2(ps, config.model);
    }
    return build_model(config.model);
  }();
  const bool z_free = model.P_E.has_value() && config.solver != Solver::Oracle;
  const Polyhedron poly = build_ddcp(model, z_free);
  rep.timings_ms["matrices"] = ms_since(t);
  rep.rows = model.rows();
  rep.cols = model.cols();
  rep.zdim = poly.nz;
  rep.labels = poly.labels;

  t = Clock::now();
  std::vector<IneqVector> raw;
  switch (config.solver) {
    case Solver::Benson:
      raw = solve_undominated(poly);
      break;
    case Solver::Cutplane: {
      const IntegralityReport ev = check_integrality(poly, config.K, config.sigma, config.seed);
      cutplane_gate(config.model, config.override_dynamic, &ev);
      raw = solve_cutplane(poly, ev);
      break;
    }
    case Solver::Probabilistic: {
      SamplerConfig sc;
      sc.K = config.K;
      sc.seed = config.seed;
      sc.distribution = config.distribution;
      sc.threads = thread_budget(config.threads);
      raw = probabilistic_frontier(poly, sc).raw;
      break;
    }
    case Solver::Oracle:
      raw = as_ineqs(lattice_undominated(poly), "oracle");
      break;
  }
  rep.timings_ms["solve"] = ms_since(t);
  for (const auto& v : raw) rep.raw.push_back(v.y);

  t = Clock::now();
  rep.reduced = config.reduce ? eliminate_redundant(raw, poly.labels) : canonicalize(raw, poly.labels);
  rep.timings_ms["reduce"] = ms_since(t);
  for (const auto& v : rep.reduced.vectors) rep.rendered.push_back(render_inequality(v.y, poly.labels));
  rep.timings_ms["total"] = ms_since(t_total);
  return rep;
}

std::string render_inequality(const Vec& y, const std::vector<std::string>& labels) {
  std::string lhs, rhs;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::string name = i < labels.size() ? labels[i] : "p[" + std::to_string(i) + "]";
    if (y[i] > Rat(0)) lhs += (lhs.empty() ? "" : "+") + term(y[i], name);
    if (y[i] < Rat(0)) rhs += (rhs.empty() ? "" : "+") + term(-y[i], name);
  }
  return (lhs.empty() ? "0" : lhs) + " ≤ " + (rhs.empty() ? "0" : rhs);
}

std::string render_marginal(const Vec& y, int D, int label_base, const std::vector<std::string>& labels) {
  const auto n = static_cast<std::size_t>(D);
  if (D > 16 || y.size() != n * n) return render_inequality(y, labels);
  // y(a, b) = s_a - s_b with s the indicator of S; s_b is read off column 0.
  for (int pin = 0; pin <= 1; ++pin) {
    std::vector<Rat> s(n);
    s[0] = Rat(pin);
    for (std::size_t b = 1; b < n; ++b) s[b] = s[0] - y[b];  // y(0, b) = s_0 - s_b
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (s[a] != Rat(0) && s[a] != Rat(1)) ok = false;
      for (std::size_t b = 0; b < n && ok; ++b) ok = y[a * n + b] == s[a] - s[b];
    }
    std::string set;
    std::size_t count = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (s[a] == Rat(1)) set += (count++ ? "," : "") + std::to_string(static_cast<int>(a) + label_base);
    if (!ok || count == 0 || count == n) continue;
    const std::string ev = count == 1 ? "=" + set : "∈{" + set + "}";
    return "P(Y1" + ev + ") ≤ P(Y2" + ev + ")";
  }
  return render_inequality(y, labels);
}

json to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("bad rational: ") + e.what());
  }
  throw ValidationError("bad rational: " + j.dump());
}

json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals");
  Vec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

std::vector<Vec> vecs_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& v : j) out.push_back(vec_from_json(v));
  return out;
}

json to_json(const ModelSpec& s) {
  json v = json::array();
  for (std::size_t d = 0; d < s.v.rows(); ++d) v.push_back(to_json(s.v.row(d)));
  json j = {{"family", to_string(s.family)}, {"D", s.D}, {"T", s.T}, {"restriction", to_string(s.restriction)},
            {"v", v}};
  if (s.family == Family::DynCond || s.family == Family::DynUncond) j["gamma"] = to_json(s.gamma);
  if (s.family == Family::TwoLag) {
    j["gamma1"] = to_json(s.gamma1);
    j["gamma2"] = to_json(s.gamma2);
    j["y_minus1"] = s.y_minus1 + s.label_base();
  }
  if (s.family == Family::DynCond || s.family == Family::TwoLag) j["y0"] = s.y0 + s.label_base();
  return j;
}

ModelSpec model_from_json(const json& j) {
  try {
    ModelSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.D = j.at("D").get<int>();
    s.T = j.at("T").get<int>();
    s.restriction = parse_restriction(j.value("restriction", std::string("stationary")));
    const auto rows = vecs_from_json(j.at("v"));
    s.v = Mat(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t d = 0; d < rows.size(); ++d) {
      if (rows[d].size() != s.v.cols()) throw ValidationError("v rows differ in length");
      for (std::size_t t = 0; t < rows[d].size(); ++t) s.v(d, t) = rows[d][t];
    }
    if (j.contains("gamma")) s.gamma = rat_from_json(j["gamma"]);
    if (j.contains("gamma1")) s.gamma1 = rat_from_json(j["gamma1"]);
    if (j.contains("gamma2")) s.gamma2 = rat_from_json(j["gamma2"]);
    if (j.contains("y0")) s.y0 = j["y0"].get<int>() - s.label_base();
    if (j.contains("y_minus1")) s.y_minus1 = j["y_minus1"].get<int>() - s.label_base();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad model: ") + e.what());
  }
}

json to_json(const RunConfig& c) {
  return {{"model", to_json(c.model)},
          {"solver", to_string(c.solver)},
          {"K", c.K},
          {"seed", c.seed},
          {"sigma", c.sigma},
          {"distribution", to_string(c.distribution)},
          {"threads", c.threads},
          {"override_dynamic", c.override_dynamic},
          {"reduce", c.reduce}};
}

RunConfig config_from_json(const json& j) {
  try {
    RunConfig c;
    c.model = model_from_json(j.at("model"));
    c.solver = parse_solver(j.value("solver", std::string("benson")));
    c.K = j.value("K", c.K);
    c.seed = j.value("seed", c.seed);
    c.sigma = j.value("sigma", c.sigma);
    c.distribution = parse_distribution(j.value("distribution", to_string(c.distribution)));
    c.threads = j.value("threads", c.threads);
    c.override_dynamic = j.value("override_dynamic", c.override_dynamic);
    c.reduce = j.value("reduce", c.reduce);
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config: ") + e.what());
  }
}

json to_json(const RunReport& r) {
  json timings = json::object();
  for (const auto& [k, v] : r.timings_ms) timings[k] = v;
  return {{"config", to_json(r.config)},
          {"patches", r.patches},
          {"dims", {{"rows", r.rows}, {"cols", r.cols}, {"zdim", r.zdim}}},
          {"labels", r.labels},
          {"raw", to_json(r.raw)},
          {"reduced", to_json(r.reduced.ys())},
          {"rendered", r.rendered},
          {"timings_ms", timings},
          {"seed", r.config.seed},
          {"version", kVersion}};
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.config = config_from_json(j.at("config"));
    r.patches = j.at("patches").get<std::size_t>();
    r.rows = j.at("dims").at("rows").get<std::size_t>();
    r.cols = j.at("dims").at("cols").get<std::size_t>();
    r.zdim = j.at("dims").at("zdim").get<std::size_t>();
    r.labels = j.value("labels", std::vector<std::string>{});
    r.raw = vecs_from_json(j.at("raw"));
    r.reduced = canonicalize(as_ineqs(vecs_from_json(j.at("reduced")), "report"), r.labels);
    r.rendered = j.at("rendered").get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("timings_ms").items()) r.timings_ms[k] = v.get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad report: ") + e.what());
  }
}

json to_json(const IntegralityReport& r) {
  json j = {{"evidence", r.evidence}, {"draws", r.draws}, {"seed", r.seed}, {"generator", r.generator}};
  if (r.counterexample) {
    j["counterexample"] = to_json(*r.counterexample);
    j["counter_value"] = to_json(r.counter_value);
  }
  return j;
}

std::string render_text(const RunReport& r) {
  std::ostringstream out;
  out << "model: " << to_string(r.config.model.family) << " D=" << r.config.model.D << " T=" << r.config.model.T
      << " " << to_string(r.config.model.restriction) << "\n";
  out << "solver: " << to_string(r.config.solver) << "\n";
  out << "patches: " << r.patches << "  A: " << r.rows << " x " << r.cols << "  z: " << r.zdim << "\n";
  out << "raw: " << r.raw.size() << "  reduced: " << r.reduced.vectors.size() << "\n";
  for (std::size_t i = 0; i < r.rendered.size(); ++i) out << "  " << r.rendered[i] << "\n";
  out << "time: " << static_cast<long>(r.timings_ms.at("total")) << " ms\n";
  return out.str();
}

}  // namespace sharpset
