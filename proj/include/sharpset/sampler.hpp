#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sharpset/molp.hpp"

namespace sharpset {

enum class Distribution { Exponential, HalfNormal };
std::string to_string(Distribution d);
Distribution parse_distribution(const std::string& s);

struct SamplerConfig {
  std::size_t K = 1000;
  Distribution distribution = Distribution::Exponential;
  std::uint64_t seed = 0;
  bool record_objectives = false;
  unsigned threads = 1;
  bool exact_lp = false;  // solve every draw with the exact simplex
  // Certification verdicts keyed by y; share one map across runs on the same
  // polyhedron to certify each point once.
  std::map<Vec, bool>* certification_cache = nullptr;
};

struct SamplerResult {
  std::vector<IneqVector> raw;  // distinct certified maximizers, sorted
  IneqSet reduced;
  std::vector<Vec> objectives;  // filled when record_objectives is set
  std::size_t rejected = 0;     // maximizers that failed certification
};

// Objective for draw k: positive reals truncated to multiples of 2^-53.
// Depends only on (seed, k, distribution), so runs with different K or
// thread counts share their common prefix.
Vec sample_objective(std::size_t n, std::uint64_t seed, std::size_t k, Distribution dist);

SamplerResult probabilistic_frontier(const Polyhedron& poly, const SamplerConfig& config);

}  // namespace sharpset
