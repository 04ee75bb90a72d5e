#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpset/molp.hpp"

namespace sharpset {

// A solver was asked to run outside the range where it is justified.
struct GateRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegralityReport {
  bool evidence = true;
  std::size_t draws = 0;
  std::optional<Vec> counterexample;  // first objective with a fractional optimum
  Rat counter_value;
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
};

// Optimal values of max c'y over the y-projection for each objective, and
// whether all of them are integers.
IntegralityReport check_integrality_objectives(const Polyhedron& poly, const std::vector<Vec>& objectives);

// K objectives drawn as floor(N(0, sigma^2)) per coordinate.
IntegralityReport check_integrality(const Polyhedron& poly, std::size_t K = 1000, double sigma = 100,
                                    std::uint64_t seed = 0);

struct RankResult {
  Rat r;
  Vec witness;
};
RankResult max_rank(const Polyhedron& poly);

// y = u - v with u, v binary and u + v <= 1.
struct SplitPoint {
  Vec u, v;
  Vec y() const;
};

// All integral y in the DDCP with 1'y = r, found by repeated binary
// feasibility over the split polytope with one no-good cut per point.
// Throws GateRefusal when the evidence reports a fractional optimum.
std::vector<IneqVector> enumerate_max_rank_integral(const Polyhedron& poly, const IntegralityReport& evidence);

// Keeps the points that are extreme in the y-projection. With tied
// utilities the cone has a lineality part and non-extreme integral points
// would let the order-dependent reduction pick a different, equivalent basis.
std::vector<IneqVector> extreme_only(const Polyhedron& poly, const std::vector<IneqVector>& points);

// Enumeration followed by the vertex filter.
std::vector<IneqVector> solve_cutplane(const Polyhedron& poly, const IntegralityReport& evidence);

// Static models always; dynamic ones only with an override and evidence.
void cutplane_gate(const ModelSpec& spec, bool override_dynamic, const IntegralityReport* evidence);

}  // namespace sharpset
