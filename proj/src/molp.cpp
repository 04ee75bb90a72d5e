#include "sharpset/molp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace sharpset {

Polyhedron build_ddcp(const DiscreteModel& model, bool z_free) {
  Polyhedron p;
  p.ny = model.rows();
  for (std::size_t i = 0; i < p.ny; ++i) p.labels.push_back(model.row_name(i));
  p.provenance = to_string(model.spec.family) + "/" + to_string(model.spec.restriction);
  if (z_free) {
    if (!model.P_E) throw ValidationError("the z-free form needs an exchangeable model with region columns");
    p.z_free = true;
    p.nz = 0;
    p.G = Mat(0, p.ny);
    for (const auto& orbit : *model.P_E) {
      Vec row(p.ny);
      for (std::size_t c : orbit) row[model.col_row[c]] += Rat(1);
      p.G.append_row(row);
      p.h.push_back(Rat(0));
    }
  } else {
    p.nz = model.R.size();
    p.G = Mat(model.cols(), p.ny + p.nz);
    for (std::size_t j = 0; j < model.cols(); ++j) p.G(j, model.col_row[j]) = Rat(1);
    for (std::size_t i = 0; i < model.R.size(); ++i)
      for (std::size_t k = 0; k < model.R[i].cols.size(); ++k)
        p.G(model.R[i].cols[k], p.ny + i) = Rat(-model.R[i].vals[k]);
    p.h.assign(model.cols(), Rat(0));
  }
  p.core_rows = p.G.rows();
  for (std::size_t i = 0; i < p.ny; ++i)
    for (int s : {1, -1}) {
      Vec row(p.ny + p.nz);
      row[i] = Rat(s);
      p.G.append_row(row);
      p.h.push_back(Rat(1));
    }
  return p;
}

LinearProgram Polyhedron::lp(const Vec& objective) const {
  const std::size_t n = ny + nz;
  LinearProgram out;
  out.A = Mat(0, n);
  std::set<std::pair<Vec, Rat>> seen;
  for (std::size_t i = 0; i < core_rows; ++i) {
    Vec row = G.row(i);
    if (!seen.insert({row, h[i]}).second) continue;
    out.add_row(row, RowSense::Le, h[i]);
  }
  out.objective = objective;
  out.objective.resize(n);
  out.lower.assign(n, std::nullopt);
  out.upper.assign(n, std::nullopt);
  for (std::size_t i = 0; i < ny; ++i) out.set_bounds(i, Rat(-1), Rat(1));
  return out;
}

bool ddcp_contains(const Polyhedron& poly, const Vec& y) {
  if (y.size() != poly.ny) throw std::invalid_argument("ddcp_contains: dimension mismatch");
  for (const Rat& x : y)
    if (x < Rat(-1) || x > Rat(1)) return false;
  LinearProgram lp = poly.lp();
  for (std::size_t i = 0; i < poly.ny; ++i) lp.set_bounds(i, y[i], y[i]);
  return solve_lp(lp).status == LPStatus::Optimal;
}

namespace {

// Dynamic bitset over constraint indices.
struct Bits {
  std::vector<std::uint64_t> w;
  void set(std::size_t i) {
    if (w.size() <= i / 64) w.resize(i / 64 + 1, 0);
    w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w.resize(std::min(w.size(), o.w.size()));
    for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  bool contains(const Bits& sub) const {
    for (std::size_t i = 0; i < sub.w.size(); ++i) {
      const std::uint64_t mine = i < w.size() ? w[i] : 0;
      if ((sub.w[i] & ~mine) != 0) return false;
    }
    return true;
  }
};

struct Generator {
  Vec y;             // point, or direction for rays
  std::size_t ray;   // ray index i for -e_i, or npos for points
  Bits tight;
  bool verified = false;
  bool is_ray() const { return ray != static_cast<std::size_t>(-1); }
};

constexpr std::size_t kPoint = static_cast<std::size_t>(-1);

// Outer approximation {y : w_k'y <= beta_k} of the upper image
// Q - R^n_+, kept in double-description form on the homogenized cone.
// Constraint 0 is the far face lambda >= 0, satisfied with equality by rays.
class OuterApprox {
 public:
  OuterApprox(const Vec& ideal) : n_(ideal.size()) {
    Generator top{ideal, kPoint, {}, false};
    for (std::size_t i = 0; i < n_; ++i) top.tight.set(i + 1);
    gens_.push_back(top);
    for (std::size_t i = 0; i < n_; ++i) {
      Generator r{Vec(n_), i, {}, true};
      r.y[i] = Rat(-1);
      r.tight.set(0);
      for (std::size_t j = 0; j < n_; ++j)
        if (j != i) r.tight.set(j + 1);
      gens_.push_back(r);
    }
    ncons_ = n_ + 1;
  }

  std::optional<std::size_t> unverified() const {
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (!gens_[g].is_ray() && !gens_[g].verified) return g;
    return std::nullopt;
  }
  Generator& at(std::size_t g) { return gens_[g]; }

  void add_cut(const Vec& w, const Rat& beta) {
    const std::size_t c = ncons_++;
    std::vector<Rat> s(gens_.size());
    std::vector<std::size_t> plus, minus;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const Generator& G = gens_[g];
      s[g] = G.is_ray() ? -w[G.ray] : dot(w, G.y) - beta;
      if (s[g].sign() > 0) plus.push_back(g);
      if (s[g].sign() < 0) minus.push_back(g);
    }
    std::vector<Generator> fresh;
    for (std::size_t p : plus)
      for (std::size_t q : minus) {
        Bits common = gens_[p].tight & gens_[q].tight;
        if (common.count() + 1 < n_) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < gens_.size() && adjacent; ++r)
          if (r != p && r != q && gens_[r].tight.contains(common)) adjacent = false;
        if (!adjacent) continue;
        const Generator &P = gens_[p], &Q = gens_[q];
        Generator ng{P.y, kPoint, common, false};
        if (Q.is_ray()) {
          ng.y[Q.ray] -= s[p] / w[Q.ray];
        } else {
          const Rat denom = s[p] - s[q];
          for (std::size_t i = 0; i < n_; ++i) ng.y[i] = (s[p] * Q.y[i] - s[q] * P.y[i]) / denom;
        }
        ng.tight.set(c);
        fresh.push_back(std::move(ng));
      }
    std::vector<Generator> next;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (s[g].sign() > 0) continue;
      if (s[g].is_zero()) gens_[g].tight.set(c);
      next.push_back(std::move(gens_[g]));
    }
    for (auto& g : fresh) next.push_back(std::move(g));
    gens_ = std::move(next);
  }

  std::vector<Vec> points() const {
    std::vector<Vec> out;
    for (const auto& g : gens_)
      if (!g.is_ray()) out.push_back(g.y);
    return out;
  }
  std::size_t size() const { return gens_.size(); }

 private:
  std::size_t n_;
  std::size_t ncons_ = 0;
  std::vector<Generator> gens_;
};

}  // namespace

std::vector<IneqVector> solve_undominated(const Polyhedron& poly, BensonStats* stats) {
  const std::size_t n = poly.ny, nx = poly.ny + poly.nz;
  BensonStats local;
  BensonStats& st = stats ? *stats : local;

  Simplex weighted(poly.lp());
  Vec ideal(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(nx);
    e[i] = Rat(1);
    LPResult r = weighted.reoptimize(e, Direction::Max);
    ++st.lps;
    if (r.status != LPStatus::Optimal) throw std::logic_error("DDCP coordinate maximum not attained");
    ideal[i] = r.value;
  }
  OuterApprox outer(ideal);

  // Distance subproblem min { t : y + t*1 >= v, (y, z) in Q } solved through
  // its dual, whose feasible set does not depend on v:
  //   max v'w - h'u - 1'a - 1'b
  //   s.t. 1'w = 1, Gz'u = 0, Gy'u - w + a - b = 0, u, w, a, b >= 0.
  // Only the objective changes between vertices, so the basis is reused. The
  // optimal w is the normal of the supporting cut.
  LinearProgram base = poly.lp();
  const std::size_t core = base.rows();
  const std::size_t wcol = core, acol = core + n, bcol = core + 2 * n, nd = core + 3 * n;
  LinearProgram dual;
  dual.A = Mat(0, nd);
  {
    Vec row(nd);
    for (std::size_t i = 0; i < n; ++i) row[wcol + i] = Rat(1);
    dual.add_row(row, RowSense::Eq, Rat(1));
  }
  for (std::size_t j = 0; j < poly.nz; ++j) {
    Vec row(nd);
    for (std::size_t k = 0; k < core; ++k) row[k] = base.A(k, n + j);
    dual.add_row(row, RowSense::Eq, Rat(0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(nd);
    for (std::size_t k = 0; k < core; ++k) row[k] = base.A(k, i);
    row[wcol + i] = Rat(-1);
    row[acol + i] = Rat(1);
    row[bcol + i] = Rat(-1);
    dual.add_row(row, RowSense::Eq, Rat(0));
  }
  dual.lower.assign(nd, Rat(0));
  dual.upper.assign(nd, std::nullopt);
  Vec dual_obj(nd);
  for (std::size_t k = 0; k < core; ++k) dual_obj[k] = -base.rhs[k];
  for (std::size_t i = 0; i < n; ++i) dual_obj[acol + i] = dual_obj[bcol + i] = Rat(-1);
  dual.objective = dual_obj;
  Simplex distance(dual);

  while (auto g = outer.unverified()) {
    ++st.iterations;
    const Vec v = outer.at(*g).y;
    for (std::size_t i = 0; i < n; ++i) dual_obj[wcol + i] = v[i];
    LPResult r = distance.reoptimize(dual_obj, Direction::Max);
    ++st.lps;
    if (r.status != LPStatus::Optimal) throw std::logic_error("Benson subproblem not optimal");
    if (r.value.sign() <= 0) {
      outer.at(*g).verified = true;
      continue;
    }
    const Vec w(r.x.begin() + static_cast<std::ptrdiff_t>(wcol), r.x.begin() + static_cast<std::ptrdiff_t>(acol));
    // (u, a, b) certifies w'y <= h'u + 1'a + 1'b over Q; check it exactly.
    const Vec x(r.x);
    for (std::size_t row = 0; row < dual.rows(); ++row) {
      Rat lhs;
      for (std::size_t k = 0; k < nd; ++k)
        if (!x[k].is_zero() && !dual.A(row, k).is_zero()) lhs += dual.A(row, k) * x[k];
      if (lhs != dual.rhs[row]) throw std::logic_error("Benson cut certificate violates dual feasibility");
    }
    Rat beta;
    for (std::size_t k = 0; k < core; ++k) beta += base.rhs[k] * x[k];
    for (std::size_t i = 0; i < n; ++i) beta += x[acol + i] + x[bcol + i];
    if (beta != dot(w, v) - r.value) throw std::logic_error("Benson cut offset disagrees with the subproblem value");
    outer.add_cut(w, beta);
    ++st.cuts;
  }
  auto pts = outer.points();
  std::sort(pts.begin(), pts.end(), lex_less);
  st.vertices = pts.size();
  return as_ineqs(pts, "benson");
}

std::vector<Vec> lattice_undominated(const Polyhedron& poly, std::size_t dim_limit) {
  const std::size_t n = poly.ny;
  if (n > dim_limit)
    throw ValidationError("oracle refused: dimension " + std::to_string(n) + " exceeds limit " +
                          std::to_string(dim_limit));
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::vector<std::size_t> pow3(n);
  for (std::size_t i = 0, p = 1; i < n; ++i, p *= 3) pow3[n - 1 - i] = p;
  auto point = [&](std::size_t idx) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = Rat(static_cast<long>((idx / pow3[i]) % 3) - 1);
    return y;
  };
  // Q is closed downward, so a point is infeasible as soon as one of its
  // lower neighbours is. Lower neighbours have smaller indices.
  std::vector<char> feasible(total, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool possible = true;
    for (std::size_t i = 0; i < n && possible; ++i)
      if ((idx / pow3[i]) % 3 > 0 && !feasible[idx - pow3[i]]) possible = false;
    feasible[idx] = possible && ddcp_contains(poly, point(idx));
  }
  std::vector<Vec> out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!feasible[idx]) continue;
    bool top = true;
    for (std::size_t i = 0; i < n && top; ++i)
      if ((idx / pow3[i]) % 3 < 2 && feasible[idx + pow3[i]]) top = false;
    if (top) out.push_back(point(idx));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

IneqSet oracle_undominated(const DiscreteModel& model, std::size_t dim_limit) {
  if (model.rows() > dim_limit)
    throw ValidationError("oracle refused: dimension " + std::to_string(model.rows()) + " exceeds limit " +
                          std::to_string(dim_limit));
  Polyhedron poly = build_ddcp(model);
  return eliminate_redundant(as_ineqs(lattice_undominated(poly, dim_limit), "oracle"), poly.labels);
}

bool certify_undominated_extreme(const Polyhedron& poly, const Vec& y) {
  const std::size_t n = poly.ny, nz = poly.nz;
  if (y.size() != n) throw std::invalid_argument("certify_undominated_extreme: dimension mismatch");
  for (const Rat& x : y)
    if (x < Rat(-1) || x > Rat(1)) return false;
  LinearProgram member = poly.lp();
  for (std::size_t i = 0; i < n; ++i) member.set_bounds(i, y[i], y[i]);
  LPResult lift = solve_lp(member);
  if (lift.status != LPStatus::Optimal) return false;

  // Both properties are local. With a fixed lift (y, z*), a segment through y
  // in the projection, or a dominating point, gives a direction (d, e) that
  // keeps every constraint tight at (y, z*) satisfied, and conversely small
  // steps along such a direction stay feasible. The direction LPs are
  // homogeneous, so d = 0 is a feasible start.
  const LinearProgram base = poly.lp();
  std::vector<std::size_t> tight;
  for (std::size_t k = 0; k < base.rows(); ++k) {
    Rat lhs;
    for (std::size_t j = 0; j < n + nz; ++j)
      if (!base.A(k, j).is_zero()) lhs += base.A(k, j) * lift.x[j];
    if (lhs == base.rhs[k]) tight.push_back(k);
  }

  // Undominated: no d >= 0, d != 0 with G_T (d, e) <= 0.
  {
    LinearProgram up;
    up.A = Mat(0, n + nz);
    for (std::size_t k : tight) up.add_row(base.A.row(k), RowSense::Le, Rat(0));
    up.lower.assign(n + nz, std::nullopt);
    up.upper.assign(n + nz, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) up.set_bounds(i, Rat(0), y[i] == Rat(1) ? Rat(0) : Rat(1));
    up.objective = Vec(n + nz);
    for (std::size_t i = 0; i < n; ++i) up.objective[i] = Rat(1);
    LPResult r = solve_lp(up);
    if (r.status != LPStatus::Optimal || !r.value.is_zero()) return false;
  }

  // Extreme: no d != 0 with G_T (d, e+) <= 0 and G_T (-d, e-) <= 0.
  const std::size_t nv = n + 2 * nz;
  LinearProgram two;
  two.A = Mat(0, nv);
  for (std::size_t k : tight)
    for (int sgn : {1, -1}) {
      Vec row(nv);
      for (std::size_t i = 0; i < n; ++i) row[i] = Rat(sgn) * base.A(k, i);
      const std::size_t off = n + (sgn == 1 ? 0 : nz);
      for (std::size_t j = 0; j < nz; ++j) row[off + j] = base.A(k, n + j);
      two.add_row(row, RowSense::Le, Rat(0));
    }
  two.lower.assign(nv, std::nullopt);
  two.upper.assign(nv, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    const bool pinned = y[i] == Rat(1) || y[i] == Rat(-1);
    two.set_bounds(i, pinned ? Rat(0) : Rat(-1), pinned ? Rat(0) : Rat(1));
  }
  two.objective = Vec(nv);
  Simplex s(two);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(nv);
    e[i] = Rat(1);
    LPResult d = s.reoptimize(e, Direction::Max);
    if (d.status != LPStatus::Optimal || !d.value.is_zero()) return false;
  }
  return true;
}

}  // namespace sharpset
