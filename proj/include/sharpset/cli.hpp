#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sharpset/cases.hpp"
#include "sharpset/cutplane.hpp"
#include "sharpset/discretize.hpp"
#include "sharpset/reduce.hpp"
#include "sharpset/sampler.hpp"

namespace sharpset {

inline constexpr const char* kVersion = "0.1.0";

enum class Solver { Benson, Cutplane, Probabilistic, Oracle };
std::string to_string(Solver s);
Solver parse_solver(const std::string& s);

struct RunConfig {
  ModelSpec model;
  Solver solver = Solver::Benson;
  std::size_t K = 1000;  // sampler draws, or integrality draws for cutplane
  std::uint64_t seed = 0;
  double sigma = 100;
  Distribution distribution = Distribution::Exponential;
  unsigned threads = 1;
  bool override_dynamic = false;  // allow cutplane on dynamic models
  bool reduce = true;             // false keeps the raw vectors, trivial ones included
};

struct RunReport {
  RunConfig config;
  std::size_t patches = 0;
  std::size_t rows = 0, cols = 0, zdim = 0;
  std::vector<std::string> labels;
  std::vector<Vec> raw;
  IneqSet reduced;
  std::vector<std::string> rendered;
  std::map<std::string, double> timings_ms;
};

// discretize -> matrices -> DDCP -> solver -> reduce -> render.
// Throws ValidationError for bad configurations and GateRefusal when the
// cutplane solver is not justified for the model.
RunReport run(const RunConfig& config);

// "p[1,0] ≤ p[0,1]": positive coefficients on the left, the rest on the right.
std::string render_inequality(const Vec& y, const std::vector<std::string>& labels);
// For two-period vectors of the form 1{d1 in S} - 1{d2 in S}:
// "P(Y1∈{..}) ≤ P(Y2∈{..})". Other vectors fall back to render_inequality.
std::string render_marginal(const Vec& y, int D, int label_base, const std::vector<std::string>& labels);

// Number of worker threads: SHARPSET_THREADS when set, else the request.
unsigned thread_budget(unsigned requested);

using nlohmann::json;

json to_json(const Rat& r);
Rat rat_from_json(const json& j);
json to_json(const Vec& v);
Vec vec_from_json(const json& j);
json to_json(const std::vector<Vec>& vs);
std::vector<Vec> vecs_from_json(const json& j);

// Alternatives (y0, y_minus1) are written in the model's label base.
json to_json(const ModelSpec& s);
ModelSpec model_from_json(const json& j);
json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);
json to_json(const RunReport& r);
RunReport report_from_json(const json& j);
json to_json(const IntegralityReport& r);

std::string render_text(const RunReport& r);

}  // namespace sharpset
