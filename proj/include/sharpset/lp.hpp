#pragma once

#include <optional>
#include <vector>

#include "sharpset/rational.hpp"

namespace sharpset {

enum class RowSense { Le, Eq };
enum class Direction { Max, Min };
enum class LPStatus { Optimal, Infeasible, Unbounded };

// max/min c'x  s.t.  A x (<= | =) b,  lower <= x <= upper.
// Bounds default to free; nullopt means infinite.
struct LinearProgram {
  Direction direction = Direction::Max;
  Vec objective;
  Mat A;
  Vec rhs;
  std::vector<RowSense> senses;
  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;

  LinearProgram() = default;
  LinearProgram(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return A.rows(); }
  std::size_t cols() const { return A.cols(); }
  // Appends a row; widens nothing, so the row must have cols() entries.
  void add_row(const Vec& coeffs, RowSense sense, const Rat& rhs_value);
  void set_bounds(std::size_t j, std::optional<Rat> lo, std::optional<Rat> hi);
  // Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Vec x;
  Rat value;
  // Infeasible: row multipliers lambda (>= 0 on Le rows) with
  // lambda'A + beta = 0 and lambda'b + sum_j bound(beta_j) < 0, where beta is
  // bound_certificate and bound(beta_j) = beta_j*u_j if beta_j > 0, beta_j*l_j
  // if beta_j < 0. Without finite bounds beta = 0. Unbounded: primal ray.
  Vec certificate;
  Vec bound_certificate;
  // Optimal: dual value per row (objective sensitivity to the rhs).
  Vec duals;
  long pivots = 0;
};

// Dantzig's largest-coefficient entering rule is used until a run of
// degenerate pivots, after which Bland's smallest-index rule takes over until
// the objective moves again. Bland forces Bland throughout.
enum class PivotRule { Bland, DantzigBland };

struct SimplexOptions {
  PivotRule rule = PivotRule::DantzigBland;
  int degenerate_switch = 30;
};

// Bounded-variable primal simplex on a dictionary whose columns are the
// nonbasic variables. Exposed so callers can re-optimize a fixed feasible
// region under new objectives without repeating phase one.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp, SimplexOptions opts = {});

  LPResult solve();
  // Replace the objective and re-optimize from the current basis.
  LPResult reoptimize(const Vec& objective, Direction dir);
  // Restrict to the current optimal face: every nonbasic variable with a
  // nonzero reduced cost is fixed at its present value.
  void fix_to_optimal_face();
  const Vec& values() const { return x_; }

 private:
  struct Var {
    std::optional<Rat> lo, hi;
  };

  bool run(long& pivots);
  void compute_reduced_costs();
  void pivot(std::size_t r, std::size_t k);
  void drop_artificial_columns();
  void drive_out_artificials();
  LPResult optimal_result(long pivots) const;
  LPResult infeasible_result(long pivots) const;
  Rat row_dual(std::size_t i) const;

  SimplexOptions opts_;
  std::size_t m_ = 0, n_ = 0;
  Direction dir_ = Direction::Max;
  Vec user_objective_;
  std::vector<Var> vars_;  // structurals, then slacks, then artificials
  Vec x_;
  Vec cost_;
  std::vector<std::size_t> basis_;     // row -> var
  std::vector<std::size_t> nonbasic_;  // column -> var
  std::vector<long> where_;            // var -> row (>=0) or -(col+1)
  std::vector<Rat> D_;                 // m_ x nonbasic_.size()
  Vec d_;                              // reduced costs per column
  std::size_t artificial_begin_ = 0;
  bool phase_one_done_ = false;
  bool infeasible_ = false;
  std::size_t unbounded_col_ = 0;
  int unbounded_dir_ = 0;
  LPResult phase_one_failure_;
  Rat& cell(std::size_t i, std::size_t k) { return D_[i * nonbasic_.size() + k]; }
  const Rat& cell(std::size_t i, std::size_t k) const { return D_[i * nonbasic_.size() + k]; }
};

LPResult solve_lp(const LinearProgram& lp, SimplexOptions opts = {});

struct StrictResult {
  bool strictly_feasible = false;
  Vec witness;
  Rat slack;
};

// Decides whether {x : A x < b} is nonempty by maximizing s subject to
// A x + s*1 <= b, s <= 1.
StrictResult strict_feasibility(const Mat& A, const Vec& b);

struct MilpResult {
  bool feasible = false;
  Vec point;
  long nodes = 0;
};

// Branch and bound over the listed binary columns. The LP objective is
// ignored; only feasibility matters.
MilpResult solve_milp_feasibility(const LinearProgram& lp, const std::vector<std::size_t>& binary_vars);

// Certificate identities for an infeasible result; used by tests and by
// callers that want to double-check.
bool verify_farkas(const LinearProgram& lp, const LPResult& res);

}  // namespace sharpset
