#include "float_simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sharpset::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;
constexpr double kPivTol = 1e-9;
}  // namespace

FloatSimplex::FloatSimplex(const LinearProgram& lp) : m_(lp.rows()), n_(lp.cols()), K_(lp.cols()) {
  lp.validate();
  for (RowSense s : lp.senses)
    if (s != RowSense::Le) throw std::invalid_argument("FloatSimplex: only <= rows are supported");
  A_.resize(m_ * n_);
  b_.resize(m_);
  lo_.assign(n_ + m_, -kInf);
  hi_.assign(n_ + m_, kInf);
  x_.assign(n_ + m_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (lp.lower[j]) lo_[j] = lp.lower[j]->to_double();
    if (lp.upper[j]) hi_[j] = lp.upper[j]->to_double();
    x_[j] = std::isfinite(lo_[j]) ? lo_[j] : (std::isfinite(hi_[j]) ? hi_[j] : 0.0);
  }
  D_.assign(m_ * K_, 0.0);
  basis_.resize(m_);
  nonbasic_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = j;
  for (std::size_t i = 0; i < m_; ++i) {
    double r = lp.rhs[i].to_double();
    b_[i] = r;
    for (std::size_t j = 0; j < n_; ++j) {
      const double a = lp.A(i, j).to_double();
      A_[i * n_ + j] = a;
      cell(i, j) = -a;
      r -= a * x_[j];
    }
    if (r < -kTol) throw std::invalid_argument("FloatSimplex: starting point is infeasible");
    basis_[i] = n_ + i;
    lo_[n_ + i] = 0.0;
    x_[n_ + i] = r;
  }
  cost_.assign(n_ + m_, 0.0);
}

void FloatSimplex::pivot(std::size_t r, std::size_t k) {
  const double inv = 1.0 / cell(r, k);
  double* row = &D_[r * K_];
  for (std::size_t j = 0; j < K_; ++j)
    if (j != k) row[j] = -row[j] * inv;
  row[k] = inv;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* other = &D_[i * K_];
    const double a = other[k];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < K_; ++j)
      if (j != k) other[j] += a * row[j];
    other[k] = a * inv;
  }
  const double a = d_[k];
  if (a != 0.0) {
    for (std::size_t j = 0; j < K_; ++j)
      if (j != k) d_[j] += a * row[j];
    d_[k] = a * inv;
  }
  std::swap(basis_[r], nonbasic_[k]);
}

bool FloatSimplex::maximize(const std::vector<double>& c) {
  std::fill(cost_.begin(), cost_.end(), 0.0);
  for (std::size_t j = 0; j < c.size() && j < n_; ++j) cost_[j] = c[j];
  d_.assign(K_, 0.0);
  for (std::size_t k = 0; k < K_; ++k) d_[k] = cost_[nonbasic_[k]];
  for (std::size_t i = 0; i < m_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    for (std::size_t k = 0; k < K_; ++k) d_[k] += cb * cell(i, k);
  }
  int degenerate = 0;
  const long limit = 200000;
  for (long it = 0; it < limit; ++it) {
    const bool bland = degenerate > 50;
    std::size_t enter = K_;
    int dir = 0;
    double best = 0;
    for (std::size_t k = 0; k < K_; ++k) {
      const std::size_t v = nonbasic_[k];
      int s = 0;
      if (d_[k] > kTol && x_[v] < hi_[v] - kTol) s = 1;
      if (d_[k] < -kTol && x_[v] > lo_[v] + kTol) s = -1;
      if (s == 0) continue;
      if (bland) {
        if (enter == K_ || v < nonbasic_[enter]) {
          enter = k;
          dir = s;
        }
      } else if (std::abs(d_[k]) > best) {
        best = std::abs(d_[k]);
        enter = k;
        dir = s;
      }
    }
    if (enter == K_) return true;

    const std::size_t ev = nonbasic_[enter];
    double theta = hi_[ev] - lo_[ev];
    std::size_t leave = m_;
    double leave_mag = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = cell(i, enter);
      if (std::abs(a) < kPivTol) continue;
      const double rate = a * dir;
      const std::size_t bv = basis_[i];
      double lim = kInf;
      if (rate > 0 && std::isfinite(hi_[bv])) lim = std::max(0.0, hi_[bv] - x_[bv]) / rate;
      if (rate < 0 && std::isfinite(lo_[bv])) lim = std::max(0.0, x_[bv] - lo_[bv]) / -rate;
      if (lim < theta - 1e-12 || (lim <= theta + 1e-12 && leave != m_ && std::abs(a) > leave_mag)) {
        theta = lim;
        leave = i;
        leave_mag = std::abs(a);
      }
    }
    if (!std::isfinite(theta)) return false;
    degenerate = theta > kTol ? 0 : degenerate + 1;
    const double step = dir * theta;
    x_[ev] += step;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = cell(i, enter);
      if (a != 0.0) x_[basis_[i]] += a * step;
    }
    if (leave == m_) {
      x_[ev] = dir > 0 ? hi_[ev] : lo_[ev];
    } else {
      const std::size_t bv = basis_[leave];
      x_[bv] = cell(leave, enter) * dir > 0 ? hi_[bv] : lo_[bv];
      pivot(leave, enter);
    }
  }
  return false;
}

double FloatSimplex::max_violation() const {
  double worst = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += A_[i * n_ + j] * x_[j];
    worst = std::max(worst, s - b_[i]);
  }
  for (std::size_t j = 0; j < n_; ++j) worst = std::max({worst, lo_[j] - x_[j], x_[j] - hi_[j]});
  return worst;
}

}  // namespace sharpset::detail
