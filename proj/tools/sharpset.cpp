#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include "sharpset/cases.hpp"
#include "sharpset/cli.hpp"
#include "sharpset/closedform.hpp"
#include "sharpset/matrices.hpp"
#include "sharpset/molp.hpp"

using namespace sharpset;

namespace {

struct ModelOpts {
  std::string family = "static";
  int D = 0, T = 0;
  std::string restriction = "stationary";
  std::string v;
  std::string gamma = "0", gamma1 = "0", gamma2 = "0";
  int y0 = -1, ym1 = -1;
  bool index = false;
};

void add_model_options(CLI::App* cmd, ModelOpts& m, bool with_family = true) {
  if (with_family) cmd->add_option("--family", m.family, "static | dyn-cond | dyn-uncond | ar2");
  cmd->add_option("--D", m.D, "number of alternatives (default: rows of --v)");
  cmd->add_option("--T", m.T, "number of periods (default: columns of --v)");
  cmd->add_option("--restriction", m.restriction, "stationary | exchangeable");
  cmd->add_option("--v", m.v, "index values, one row per alternative: \"0,0;0,1\"");
  cmd->add_option("--gamma", m.gamma, "lag coefficient");
  cmd->add_option("--gamma1", m.gamma1, "first lag coefficient (ar2)");
  cmd->add_option("--gamma2", m.gamma2, "second lag coefficient (ar2)");
  cmd->add_option("--y0", m.y0, "initial state, in the model's labels (0/1 for D = 2, 1..D otherwise)");
  cmd->add_option("--ym1", m.ym1, "state before the initial one (ar2)");
  cmd->add_flag("--index", m.index,
                "binary index form: --v is a_1,...,a_T and the gammas are index coefficients");
}

Rat rat(const std::string& s, const char* what) {
  try {
    return Rat::parse(s);
  } catch (const std::invalid_argument&) {
    throw ValidationError(std::string("bad rational for ") + what + ": '" + s + "'");
  }
}

ModelSpec build_spec(const ModelOpts& m) {
  const Family f = parse_family(m.family);
  if (m.v.empty()) throw ValidationError("--v is required");
  ModelSpec s;
  if (m.index) {
    Vec a;
    try {
      a = parse_vector(m.v);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("bad --v: ") + e.what());
    }
    const int y0 = m.y0 < 0 ? 0 : m.y0, ym1 = m.ym1 < 0 ? 0 : m.ym1;
    switch (f) {
      case Family::Static: s = binary_static(a); break;
      case Family::DynUncond: s = kpt_uncond(a, rat(m.gamma, "--gamma")); break;
      case Family::DynCond: s = kpt_cond(a, rat(m.gamma, "--gamma"), y0); break;
      case Family::TwoLag: s = two_lag(a, rat(m.gamma1, "--gamma1"), rat(m.gamma2, "--gamma2"), y0, ym1); break;
    }
    s.restriction = parse_restriction(m.restriction);
  } else {
    s.family = f;
    try {
      s.v = parse_matrix(m.v);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("bad --v: ") + e.what());
    }
    s.D = static_cast<int>(s.v.rows());
    s.T = static_cast<int>(s.v.cols());
    s.restriction = parse_restriction(m.restriction);
    s.gamma = rat(m.gamma, "--gamma");
    s.gamma1 = rat(m.gamma1, "--gamma1");
    s.gamma2 = rat(m.gamma2, "--gamma2");
    const int base = s.label_base();
    s.y0 = m.y0 < 0 ? 0 : m.y0 - base;
    s.y_minus1 = m.ym1 < 0 ? 0 : m.ym1 - base;
  }
  if (m.D && m.D != s.D) throw ValidationError("--D does not match --v");
  if (m.T && m.T != s.T) throw ValidationError("--T does not match --v");
  s.validate();
  return s;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw ValidationError("cannot write " + out);
  f << text << "\n";
}

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read " + path);
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("bad JSON: ") + e.what());
  }
}

std::vector<std::string> render_all(const IneqSet& s) {
  std::vector<std::string> out;
  for (const auto& v : s.vectors) out.push_back(render_inequality(v.y, s.labels));
  return out;
}

// Index differences of a binary model, alternative 1 against 0, per period.
Vec binary_index(const ModelSpec& s) {
  if (s.D != 2) throw ValidationError("this inequality family needs a binary model (D = 2)");
  Vec a;
  for (int t = 0; t < s.T; ++t) a.push_back(s.v(1, static_cast<std::size_t>(t)) - s.v(0, static_cast<std::size_t>(t)));
  return a;
}

Vec static_differences(const ModelSpec& s) {
  if (s.T != 2) throw ValidationError("this inequality family needs T = 2");
  Vec dv;
  for (std::size_t d = 0; d < s.v.rows(); ++d) dv.push_back(s.v(d, 1) - s.v(d, 0));
  return dv;
}

json closed_form(const std::string& name, ModelOpts m) {
  if (name == "cm" || name == "pp-static" || name == "exchangeable") m.family = "static";
  else if (name == "dynamic" || name == "pp2") m.family = "dyn-cond";
  else if (name == "kpt") m.family = "dyn-cond";
  else if (name == "ar2") m.family = "ar2";
  else throw ValidationError("unknown inequality family '" + name +
                             "' (expected cm, pp-static, exchangeable, dynamic, kpt, pp2 or ar2)");
  const ModelSpec spec = build_spec(m);
  json out = {{"family", name}, {"model", to_json(spec)}};
  if (name == "pp2") {
    const Pp2Family fam = pp2_family(spec);
    json sets = json::array();
    json rendered = json::array();
    for (AltSet A : fam.sets) {
      json members = json::array();
      std::string text;
      for (int d = 0; d < spec.D; ++d)
        if ((A >> d) & 1U) {
          members.push_back(d + spec.label_base());
          text += (text.empty() ? "" : ",") + std::to_string(d + spec.label_base());
        }
      sets.push_back(members);
      rendered.push_back("P(Y1∈{" + text + "},Y2∈{" + text + "}) ≥ P(Y1∈{" + text + "})^2");
    }
    out["sets"] = sets;
    out["rendered"] = rendered;
    return out;
  }
  IneqSet cand;
  if (name == "cm") {
    const Vec a = binary_index(spec);
    cand = cm_inequalities((a[0] - a[1]).sign());
  } else if (name == "pp-static") {
    cand = pp_static_inequalities(RankedAlternatives(static_differences(spec)));
  } else if (name == "exchangeable") {
    cand = exchangeable_family(RankedAlternatives(static_differences(spec)));
  } else if (name == "dynamic") {
    cand = dynamic_family(spec);
  } else if (name == "kpt") {
    const Vec a = binary_index(spec);
    if (spec.T != 2) throw ValidationError("kpt needs T = 2");
    cand = kpt_family(a[0], a[1], Rat(2) * spec.gamma, spec.y0);
  } else {
    cand = ar2_family(spec);
  }
  const IneqSet reduced = eliminate_redundant(cand.vectors, cand.labels);
  out["candidates"] = to_json(cand.ys());
  out["reduced"] = to_json(reduced.ys());
  out["rendered"] = render_all(reduced);
  return out;
}

json removal_json(const Removal& r) {
  json j = {{"y", to_json(r.y)}, {"reason", r.reason}};
  if (r.reason == "implied") {
    j["against"] = to_json(r.against);
    j["lambda"] = to_json(r.lambda);
  }
  return j;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Sharp moment inequalities for panel discrete choice models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string out, format = "json";
  unsigned threads = 1;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "write the result here instead of stdout");
    cmd->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--threads", threads, "worker threads (SHARPSET_THREADS overrides)");
  };

  // solve / oracle
  ModelOpts model;
  RunConfig cfg;
  std::string solver = "benson", dist = "exponential", config_path;
  bool no_reduce = false, marginal = false;
  auto* solve = app.add_subcommand("solve", "sharp inequalities for one local model");
  add_model_options(solve, model);
  solve->add_option("--solver", solver, "benson | cutplane | probabilistic | oracle");
  solve->add_option("--K", cfg.K, "sampler draws, or integrality draws for cutplane");
  solve->add_option("--seed", cfg.seed);
  solve->add_option("--sigma", cfg.sigma, "integrality objective scale");
  solve->add_option("--dist", dist, "exponential | half-normal");
  solve->add_flag("--override-dynamic", cfg.override_dynamic, "run cutplane on a dynamic model");
  solve->add_flag("--no-reduce", no_reduce, "report the raw vectors without redundancy elimination");
  solve->add_flag("--marginal", marginal, "text output: marginal form where it applies");
  solve->add_option("--config", config_path, "rerun from a saved report or config (JSON file)");
  add_output(solve);

  auto* oracle = app.add_subcommand("oracle", "brute-force {0,+-1} oracle for small models");
  add_model_options(oracle, model);
  add_output(oracle);

  // cases
  ModelOpts cm;
  std::string symmetry = "canonical";
  bool solve_all = false;
  auto* cases = app.add_subcommand("cases", "enumerate the local-model cases of a family");
  add_model_options(cases, cm);
  cases->add_option("--symmetry", symmetry, "none | canonical");
  cases->add_flag("--solve-all", solve_all, "solve every case");
  cases->add_option("--solver", solver, "solver for --solve-all");
  add_output(cases);

  // closed-form
  ModelOpts cf;
  std::string ineq_family;
  auto* closed = app.add_subcommand("closed-form", "analytic inequality families");
  closed->add_option("--family", ineq_family, "cm | pp-static | exchangeable | dynamic | kpt | pp2 | ar2")->required();
  add_model_options(closed, cf, false);
  add_output(closed);

  // reduce
  std::string in_path = "-";
  auto* red = app.add_subcommand("reduce", "redundancy elimination of a JSON list of vectors");
  red->add_option("--in", in_path, "JSON file ([[...]] or {vectors, labels}); - for stdin");
  add_output(red);

  // check-integrality
  ModelOpts im;
  std::size_t ik = 1000;
  double isigma = 100;
  std::uint64_t iseed = 0;
  auto* integ = app.add_subcommand("check-integrality", "random-objective integrality evidence");
  add_model_options(integ, im);
  integ->add_option("--K", ik);
  integ->add_option("--sigma", isigma);
  integ->add_option("--seed", iseed);
  add_output(integ);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*solve || *oracle) {
    if (!config_path.empty()) {
      const json j = read_json(config_path);
      cfg = config_from_json(j.contains("config") ? j["config"] : j);
    } else {
      cfg.model = build_spec(model);
      cfg.solver = *oracle ? Solver::Oracle : parse_solver(solver);
      cfg.distribution = parse_distribution(dist);
      cfg.threads = thread_budget(threads);
      cfg.reduce = !no_reduce;
    }
    const RunReport rep = run(cfg);
    if (format == "text") {
      std::string text = render_text(rep);
      if (marginal) {
        text.clear();
        for (const auto& v : rep.reduced.vectors)
          text += render_marginal(v.y, rep.config.model.D, rep.config.model.label_base(), rep.labels) + "\n";
      }
      emit(out, text);
    } else {
      emit(out, to_json(rep).dump(2));
    }
    return 0;
  }

  if (*cases) {
    if (cm.T == 0) cm.T = parse_family(cm.family) == Family::TwoLag ? 3 : 2;
    if (cm.D == 0) cm.D = 2;
    const int base = cm.D == 2 ? 0 : 1;
    const CaseFamily fam = case_family(parse_family(cm.family), cm.D, cm.T, cm.y0 < 0 ? 0 : cm.y0 - base,
                                       cm.ym1 < 0 ? 0 : cm.ym1 - base, parse_restriction(cm.restriction));
    const auto list = enumerate_cases(fam, parse_symmetry(symmetry));
    std::vector<json> entries(list.size());
    std::vector<std::string> errors(list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < list.size();) {
        const auto& c = list[i];
        json e = {{"ordering", c.text}, {"realizable", c.realizable}, {"model", to_json(c.spec)}};
        json rep = json::object();
        for (std::size_t p = 0; p < fam.params.size(); ++p) rep[fam.params[p]] = to_json(c.representative[p]);
        e["representative"] = rep;
        if (solve_all) {
          try {
            RunConfig rc;
            rc.model = c.spec;
            rc.solver = parse_solver(solver);
            const RunReport r = run(rc);
            e["patches"] = r.patches;
            e["reduced"] = to_json(r.reduced.ys());
            e["rendered"] = r.rendered;
          } catch (const std::exception& ex) {
            errors[i] = ex.what();
          }
        }
        entries[i] = std::move(e);
      }
    };
    const unsigned n = solve_all ? std::min<unsigned>(thread_budget(threads), static_cast<unsigned>(list.size()) + 1) : 1;
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (!e.empty()) throw ValidationError(e);
    json forms = json::array();
    for (const auto& f : fam.forms) forms.push_back(f.label);
    const json result = {{"family", to_string(fam.family)}, {"D", fam.D},       {"T", fam.T},
                         {"symmetry", symmetry},            {"params", fam.params}, {"forms", forms},
                         {"count", list.size()},            {"cases", entries},    {"version", kVersion}};
    if (format == "text") {
      std::string text;
      for (const auto& e : entries) {
        text += e["ordering"].get<std::string>() + "\n";
        if (e.contains("rendered"))
          for (const auto& r : e["rendered"]) text += "  " + r.get<std::string>() + "\n";
      }
      emit(out, text);
    } else {
      emit(out, result.dump(2));
    }
    return 0;
  }

  if (*closed) {
    const json r = closed_form(ineq_family, cf);
    if (format == "text") {
      std::string text;
      for (const auto& s : r["rendered"]) text += s.get<std::string>() + "\n";
      emit(out, text);
    } else {
      emit(out, r.dump(2));
    }
    return 0;
  }

  if (*red) {
    const json in = read_json(in_path);
    std::vector<Vec> ys;
    std::vector<std::string> labels;
    if (in.is_array()) {
      ys = vecs_from_json(in);
    } else {
      ys = vecs_from_json(in.at("vectors"));
      labels = in.value("labels", labels);
    }
    const IneqSet r = eliminate_redundant(as_ineqs(ys, "input"), labels);
    json removed = json::array();
    for (const auto& x : r.log) removed.push_back(removal_json(x));
    const json result = {{"reduced", to_json(r.ys())}, {"rendered", render_all(r)}, {"removed", removed}};
    if (format == "text") {
      std::string text;
      for (const auto& s : result["rendered"]) text += s.get<std::string>() + "\n";
      emit(out, text);
    } else {
      emit(out, result.dump(2));
    }
    return 0;
  }

  if (*integ) {
    const ModelSpec spec = build_spec(im);
    const DiscreteModel dm = build_model(spec);
    const Polyhedron poly = build_ddcp(dm, dm.P_E.has_value());
    const IntegralityReport r = check_integrality(poly, ik, isigma, iseed);
    json j = to_json(r);
    j["model"] = to_json(spec);
    j["sigma"] = isigma;
    emit(out, format == "text" ? std::string(r.evidence ? "integral" : "fractional") + " (" +
                                     std::to_string(r.draws) + " draws)"
                               : j.dump(2));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GateRefusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
