#include "sharpset/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace sharpset {

LinearProgram::LinearProgram(std::size_t rows, std::size_t cols)
    : objective(cols), A(rows, cols), rhs(rows), senses(rows, RowSense::Le), lower(cols), upper(cols) {}

void LinearProgram::add_row(const Vec& coeffs, RowSense sense, const Rat& rhs_value) {
  if (A.rows() == 0 && A.cols() == 0) A = Mat(0, coeffs.size());
  A.append_row(coeffs);
  rhs.push_back(rhs_value);
  senses.push_back(sense);
}

void LinearProgram::set_bounds(std::size_t j, std::optional<Rat> lo, std::optional<Rat> hi) {
  if (j >= cols()) throw std::invalid_argument("bound index out of range");
  lower[j] = std::move(lo);
  upper[j] = std::move(hi);
}

void LinearProgram::validate() const {
  if (A.rows() != rhs.size() || A.rows() != senses.size())
    throw std::invalid_argument("LinearProgram: row count, rhs length and senses length differ");
  if (objective.size() != A.cols() || lower.size() != A.cols() || upper.size() != A.cols())
    throw std::invalid_argument("LinearProgram: objective or bounds length differs from column count");
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (lower[j] && upper[j] && *upper[j] < *lower[j])
      throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
}

Simplex::Simplex(const LinearProgram& lp, SimplexOptions opts) : opts_(opts) {
  lp.validate();
  m_ = lp.rows();
  n_ = lp.cols();
  dir_ = lp.direction;
  user_objective_ = lp.objective;

  vars_.resize(n_ + m_);
  x_.assign(n_ + m_, Rat());
  for (std::size_t j = 0; j < n_; ++j) {
    vars_[j] = {lp.lower[j], lp.upper[j]};
    if (lp.lower[j]) x_[j] = *lp.lower[j];
    else if (lp.upper[j]) x_[j] = *lp.upper[j];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    vars_[n_ + i].lo = Rat(0);
    if (lp.senses[i] == RowSense::Eq) vars_[n_ + i].hi = Rat(0);
  }

  // Residual of every row at the starting nonbasic point.
  Vec resid(m_);
  std::vector<int> sigma(m_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    Rat r = lp.rhs[i];
    for (std::size_t j = 0; j < n_; ++j)
      if (!lp.A(i, j).is_zero() && !x_[j].is_zero()) r -= lp.A(i, j) * x_[j];
    resid[i] = r;
    const bool ok = r.sign() >= 0 && (lp.senses[i] == RowSense::Le || r.is_zero());
    if (!ok) sigma[i] = r.sign() > 0 ? 1 : -1;
  }

  artificial_begin_ = n_ + m_;
  nonbasic_.clear();
  for (std::size_t j = 0; j < n_; ++j) nonbasic_.push_back(j);
  std::vector<std::size_t> slack_col(m_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (sigma[i] != 0) {
      slack_col[i] = nonbasic_.size();
      nonbasic_.push_back(n_ + i);
      vars_.push_back({Rat(0), std::nullopt});
      x_.push_back(resid[i].abs());
    }
  }

  const std::size_t K = nonbasic_.size();
  basis_.assign(m_, 0);
  D_.assign(m_ * K, Rat());
  std::size_t next_art = artificial_begin_;
  for (std::size_t i = 0; i < m_; ++i) {
    if (sigma[i] == 0) {
      basis_[i] = n_ + i;
      x_[n_ + i] = resid[i];
      for (std::size_t j = 0; j < n_; ++j)
        if (!lp.A(i, j).is_zero()) cell(i, j) = -lp.A(i, j);
    } else {
      basis_[i] = next_art++;
      x_[n_ + i] = Rat(0);
      const Rat s(sigma[i]);
      for (std::size_t j = 0; j < n_; ++j)
        if (!lp.A(i, j).is_zero()) cell(i, j) = -(s * lp.A(i, j));
      cell(i, slack_col[i]) = -s;
    }
  }
  where_.assign(vars_.size(), 0);
  for (std::size_t i = 0; i < m_; ++i) where_[basis_[i]] = static_cast<long>(i);
  for (std::size_t k = 0; k < K; ++k) where_[nonbasic_[k]] = -static_cast<long>(k) - 1;
  cost_.assign(vars_.size(), Rat());
}

void Simplex::compute_reduced_costs() {
  const std::size_t K = nonbasic_.size();
  d_.assign(K, Rat());
  for (std::size_t k = 0; k < K; ++k) d_[k] = cost_[nonbasic_[k]];
  for (std::size_t i = 0; i < m_; ++i) {
    const Rat& c = cost_[basis_[i]];
    if (c.is_zero()) continue;
    for (std::size_t k = 0; k < K; ++k)
      if (!cell(i, k).is_zero()) d_[k].add_mul(c, cell(i, k));
  }
}

void Simplex::pivot(std::size_t r, std::size_t k) {
  const std::size_t K = nonbasic_.size();
  const Rat inv = Rat(1) / cell(r, k);
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < K; ++j) {
    if (j == k) continue;
    Rat& c = cell(r, j);
    if (c.is_zero()) continue;
    c *= inv;
    c = -c;
    nz.push_back(j);
  }
  cell(r, k) = inv;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    Rat& pivcol = cell(i, k);
    if (pivcol.is_zero()) continue;
    const Rat a = pivcol;
    for (std::size_t j : nz) cell(i, j).add_mul(a, cell(r, j));
    pivcol *= inv;
  }
  if (!d_[k].is_zero()) {
    const Rat a = d_[k];
    for (std::size_t j : nz) d_[j].add_mul(a, cell(r, j));
    d_[k] *= inv;
  }
  const std::size_t leaving = basis_[r];
  const std::size_t entering = nonbasic_[k];
  basis_[r] = entering;
  nonbasic_[k] = leaving;
  where_[entering] = static_cast<long>(r);
  where_[leaving] = -static_cast<long>(k) - 1;
}

// Returns false when the problem is unbounded in the current phase.
bool Simplex::run(long& pivots) {
  int degenerate_run = 0;
  for (;;) {
    const bool bland = opts_.rule == PivotRule::Bland || degenerate_run >= opts_.degenerate_switch;
    const std::size_t K = nonbasic_.size();
    std::size_t enter = K;
    int dir = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const Rat& dk = d_[k];
      if (dk.is_zero()) continue;
      const std::size_t v = nonbasic_[k];
      int s = 0;
      if (dk.sign() > 0 && (!vars_[v].hi || x_[v] < *vars_[v].hi)) s = 1;
      if (dk.sign() < 0 && (!vars_[v].lo || x_[v] > *vars_[v].lo)) s = -1;
      if (s == 0) continue;
      if (enter == K) {
        enter = k;
        dir = s;
        continue;
      }
      const std::size_t cur = nonbasic_[enter];
      bool better;
      if (bland) {
        better = v < cur;
      } else {
        const int c = Rat::cmp_abs(dk, d_[enter]);
        better = c > 0 || (c == 0 && v < cur);
      }
      if (better) {
        enter = k;
        dir = s;
      }
    }
    if (enter == K) return true;

    const std::size_t ev = nonbasic_[enter];
    std::optional<Rat> best;
    std::size_t best_row = m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rat& a = cell(i, enter);
      if (a.is_zero()) continue;
      const int rate_sign = a.sign() * dir;
      const std::size_t bv = basis_[i];
      std::optional<Rat> lim;
      if (rate_sign > 0 && vars_[bv].hi) lim = (*vars_[bv].hi - x_[bv]) / a.abs();
      if (rate_sign < 0 && vars_[bv].lo) lim = (x_[bv] - *vars_[bv].lo) / a.abs();
      if (!lim) continue;
      if (!best || *lim < *best || (*lim == *best && bv < basis_[best_row])) {
        best = std::move(lim);
        best_row = i;
      }
    }
    std::optional<Rat> flip;
    if (vars_[ev].lo && vars_[ev].hi) flip = *vars_[ev].hi - *vars_[ev].lo;
    if (!best && !flip) {
      unbounded_col_ = enter;
      unbounded_dir_ = dir;
      return false;
    }
    const bool do_flip = flip && (!best || *flip <= *best);
    const Rat theta = do_flip ? *flip : *best;
    if (!theta.is_zero()) {
      const Rat step = dir > 0 ? theta : -theta;
      x_[ev] += step;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rat& a = cell(i, enter);
        if (!a.is_zero()) x_[basis_[i]].add_mul(a, step);
      }
      degenerate_run = 0;
    } else {
      ++degenerate_run;
    }
    if (do_flip) {
      x_[ev] = dir > 0 ? *vars_[ev].hi : *vars_[ev].lo;
    } else {
      const std::size_t bv = basis_[best_row];
      const int rate_sign = cell(best_row, enter).sign() * dir;
      x_[bv] = rate_sign > 0 ? *vars_[bv].hi : *vars_[bv].lo;
      pivot(best_row, enter);
    }
    ++pivots;
  }
}

void Simplex::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < artificial_begin_) continue;
    std::size_t pick = nonbasic_.size();
    for (std::size_t k = 0; k < nonbasic_.size(); ++k) {
      if (nonbasic_[k] >= artificial_begin_ || cell(r, k).is_zero()) continue;
      if (pick == nonbasic_.size() || nonbasic_[k] < nonbasic_[pick]) pick = k;
    }
    if (pick != nonbasic_.size()) pivot(r, pick);
  }
}

void Simplex::drop_artificial_columns() {
  const std::size_t K = nonbasic_.size();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < K; ++k)
    if (nonbasic_[k] < artificial_begin_) keep.push_back(k);
  if (keep.size() == K) return;
  std::vector<Rat> nd(m_ * keep.size());
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t c = 0; c < keep.size(); ++c) nd[i * keep.size() + c] = std::move(D_[i * K + keep[c]]);
  std::vector<std::size_t> nb;
  for (std::size_t c = 0; c < keep.size(); ++c) nb.push_back(nonbasic_[keep[c]]);
  for (std::size_t k = 0; k < K; ++k)
    if (nonbasic_[k] >= artificial_begin_) where_[nonbasic_[k]] = 0;
  D_ = std::move(nd);
  nonbasic_ = std::move(nb);
  for (std::size_t c = 0; c < nonbasic_.size(); ++c) where_[nonbasic_[c]] = -static_cast<long>(c) - 1;
  Vec nd2;
  for (std::size_t c : keep) nd2.push_back(d_.size() > c ? d_[c] : Rat());
  d_ = std::move(nd2);
}

Rat Simplex::row_dual(std::size_t i) const {
  const long w = where_[n_ + i];
  if (w >= 0) return Rat();
  return -d_[static_cast<std::size_t>(-w - 1)];
}

LPResult Simplex::infeasible_result(long pivots) const {
  LPResult res;
  res.status = LPStatus::Infeasible;
  res.pivots = pivots;
  res.certificate.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) res.certificate[i] = row_dual(i);
  res.bound_certificate.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const long w = where_[j];
    if (w < 0) res.bound_certificate[j] = d_[static_cast<std::size_t>(-w - 1)];
  }
  return res;
}

LPResult Simplex::optimal_result(long pivots) const {
  LPResult res;
  res.status = LPStatus::Optimal;
  res.pivots = pivots;
  res.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
  res.value = dot(user_objective_, res.x);
  res.duals.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    res.duals[i] = row_dual(i);
    if (dir_ == Direction::Min) res.duals[i] = -res.duals[i];
  }
  return res;
}

LPResult Simplex::solve() { return reoptimize(user_objective_, dir_); }

LPResult Simplex::reoptimize(const Vec& objective, Direction dir) {
  if (objective.size() != n_) throw std::invalid_argument("objective length differs from column count");
  long pivots = 0;
  if (!phase_one_done_) {
    phase_one_done_ = true;
    if (vars_.size() > artificial_begin_) {
      cost_.assign(vars_.size(), Rat());
      for (std::size_t v = artificial_begin_; v < vars_.size(); ++v) cost_[v] = Rat(-1);
      compute_reduced_costs();
      run(pivots);
      Rat infeas;
      for (std::size_t v = artificial_begin_; v < vars_.size(); ++v) infeas += x_[v];
      if (infeas.sign() > 0) {
        infeasible_ = true;
        phase_one_failure_ = infeasible_result(pivots);
      } else {
        drive_out_artificials();
        for (std::size_t v = artificial_begin_; v < vars_.size(); ++v) vars_[v].hi = Rat(0);
        drop_artificial_columns();
      }
    }
  }
  if (infeasible_) return phase_one_failure_;

  user_objective_ = objective;
  dir_ = dir;
  cost_.assign(vars_.size(), Rat());
  for (std::size_t j = 0; j < n_; ++j) cost_[j] = dir == Direction::Max ? objective[j] : -objective[j];
  compute_reduced_costs();
  if (!run(pivots)) {
    LPResult res;
    res.status = LPStatus::Unbounded;
    res.pivots = pivots;
    res.certificate.assign(n_, Rat());
    const std::size_t ev = nonbasic_[unbounded_col_];
    if (ev < n_) res.certificate[ev] = Rat(unbounded_dir_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.certificate[basis_[i]] = cell(i, unbounded_col_) * Rat(unbounded_dir_);
    return res;
  }
  return optimal_result(pivots);
}

void Simplex::fix_to_optimal_face() {
  for (std::size_t k = 0; k < nonbasic_.size(); ++k) {
    if (d_[k].is_zero()) continue;
    const std::size_t v = nonbasic_[k];
    vars_[v].lo = x_[v];
    vars_[v].hi = x_[v];
  }
}

LPResult solve_lp(const LinearProgram& lp, SimplexOptions opts) {
  Simplex s(lp, opts);
  return s.solve();
}

StrictResult strict_feasibility(const Mat& A, const Vec& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("strict_feasibility: dimension mismatch");
  const std::size_t n = A.cols();
  LinearProgram lp(A.rows(), n + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = A(i, j);
    lp.A(i, n) = Rat(1);
    lp.rhs[i] = b[i];
  }
  lp.objective[n] = Rat(1);
  lp.upper[n] = Rat(1);
  LPResult r = solve_lp(lp);
  StrictResult out;
  if (r.status != LPStatus::Optimal) return out;
  out.slack = r.x[n];
  out.strictly_feasible = out.slack.sign() > 0;
  out.witness.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

namespace {

bool milp_node(LinearProgram& lp, const std::vector<std::size_t>& bin, MilpResult& out) {
  ++out.nodes;
  LPResult r = solve_lp(lp);
  if (r.status != LPStatus::Optimal) return false;
  std::size_t pick = lp.cols();
  Rat best_gap;
  const Rat half(1, 2);
  for (std::size_t j : bin) {
    const Rat frac = r.x[j] - r.x[j].floor();
    if (frac.is_zero()) continue;
    const Rat gap = (frac - half).abs();
    if (pick == lp.cols() || gap < best_gap) {
      pick = j;
      best_gap = gap;
    }
  }
  if (pick == lp.cols()) {
    out.feasible = true;
    out.point = r.x;
    return true;
  }
  const auto lo = lp.lower[pick], hi = lp.upper[pick];
  for (int branch : {1, 0}) {
    lp.lower[pick] = Rat(branch);
    lp.upper[pick] = Rat(branch);
    if (milp_node(lp, bin, out)) return true;
  }
  lp.lower[pick] = lo;
  lp.upper[pick] = hi;
  return false;
}

}  // namespace

MilpResult solve_milp_feasibility(const LinearProgram& lp, const std::vector<std::size_t>& binary_vars) {
  lp.validate();
  LinearProgram work = lp;
  work.objective.assign(lp.cols(), Rat());
  for (std::size_t j : binary_vars) {
    if (j >= lp.cols()) throw std::invalid_argument("binary variable index out of range");
    const Rat lo = lp.lower[j] ? std::max(*lp.lower[j], Rat(0)) : Rat(0);
    const Rat hi = lp.upper[j] ? std::min(*lp.upper[j], Rat(1)) : Rat(1);
    work.lower[j] = lo;
    work.upper[j] = hi;
  }
  MilpResult out;
  milp_node(work, binary_vars, out);
  return out;
}

bool verify_farkas(const LinearProgram& lp, const LPResult& res) {
  if (res.status != LPStatus::Infeasible) return false;
  const std::size_t m = lp.rows(), n = lp.cols();
  if (res.certificate.size() != m) return false;
  Vec beta = res.bound_certificate;
  beta.resize(n);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.senses[i] == RowSense::Le && res.certificate[i].sign() < 0) return false;
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = beta[j];
    for (std::size_t i = 0; i < m; ++i)
      if (!lp.A(i, j).is_zero() && !res.certificate[i].is_zero()) s.add_mul(res.certificate[i], lp.A(i, j));
    if (!s.is_zero()) return false;
  }
  Rat total = dot(res.certificate, lp.rhs);
  for (std::size_t j = 0; j < n; ++j) {
    if (beta[j].sign() > 0) {
      if (!lp.upper[j]) return false;
      total.add_mul(beta[j], *lp.upper[j]);
    } else if (beta[j].sign() < 0) {
      if (!lp.lower[j]) return false;
      total.add_mul(beta[j], *lp.lower[j]);
    }
  }
  return total.sign() < 0;
}

}  // namespace sharpset
