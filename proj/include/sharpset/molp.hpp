#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sharpset/lp.hpp"
#include "sharpset/matrices.hpp"
#include "sharpset/reduce.hpp"

namespace sharpset {

// G x <= h over x = (y, z). The first core_rows rows are the dual rows
// A'y - R'z <= 0 (or P_E A'y <= 0 in the z-free form); the remaining 2*ny
// rows are the box -1 <= y <= 1.
struct Polyhedron {
  std::size_t ny = 0, nz = 0;
  Mat G;
  Vec h;
  std::size_t core_rows = 0;
  bool z_free = false;
  std::vector<std::string> labels;  // per y coordinate
  std::string provenance;

  // Core rows with duplicates removed and the box moved to variable bounds;
  // the starting point y = -1, z = 0 is feasible.
  LinearProgram lp(const Vec& objective = {}) const;
};

Polyhedron build_ddcp(const DiscreteModel& model, bool z_free = false);

// y in the projection onto the y block.
bool ddcp_contains(const Polyhedron& poly, const Vec& y);

struct BensonStats {
  std::size_t iterations = 0, cuts = 0, lps = 0, vertices = 0;
};

// Undominated extreme points of the y-projection, lexicographically sorted,
// zero vector included when it is one.
std::vector<IneqVector> solve_undominated(const Polyhedron& poly, BensonStats* stats = nullptr);

// Brute force over {0,+-1}^n: feasible points with no feasible dominating
// lattice point, reduced by eliminate_redundant. Throws ValidationError when
// n > dim_limit.
IneqSet oracle_undominated(const DiscreteModel& model, std::size_t dim_limit = 9);
std::vector<Vec> lattice_undominated(const Polyhedron& poly, std::size_t dim_limit = 9);

// y is an extreme point of the projection and no other point dominates it.
bool certify_undominated_extreme(const Polyhedron& poly, const Vec& y);

}  // namespace sharpset
