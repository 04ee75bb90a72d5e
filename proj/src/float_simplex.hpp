#pragma once

#include <cstddef>
#include <vector>

#include "sharpset/lp.hpp"

namespace sharpset::detail {

// Dense bounded-variable primal simplex in double precision for problems
// max c'x, A x <= b, whose starting point (each variable at its lower bound,
// or 0 when free) is feasible. Only used to propose candidates that are then
// certified exactly.
class FloatSimplex {
 public:
  explicit FloatSimplex(const LinearProgram& lp);

  // Warm re-optimization from the current basis. Returns false when the
  // iteration limit is hit or the problem looks unbounded.
  bool maximize(const std::vector<double>& c);
  const std::vector<double>& x() const { return x_; }
  // Largest violation of A x <= b at the current point.
  double max_violation() const;

 private:
  void pivot(std::size_t r, std::size_t k);
  double& cell(std::size_t i, std::size_t k) { return D_[i * K_ + k]; }

  std::size_t m_, n_, K_;
  std::vector<double> A_, b_;  // row-major copy for checks
  std::vector<double> lo_, hi_, x_, cost_, d_, D_;
  std::vector<std::size_t> basis_, nonbasic_;
};

}  // namespace sharpset::detail
