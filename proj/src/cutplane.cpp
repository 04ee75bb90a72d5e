#include "sharpset/cutplane.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sharpset {

IntegralityReport check_integrality_objectives(const Polyhedron& poly, const std::vector<Vec>& objectives) {
  IntegralityReport rep;
  Simplex s(poly.lp());
  const std::size_t nx = poly.ny + poly.nz;
  for (const Vec& c : objectives) {
    if (c.size() != poly.ny) throw std::invalid_argument("objective length differs from the y dimension");
    Vec full = c;
    full.resize(nx);
    LPResult r = s.reoptimize(full, Direction::Max);
    ++rep.draws;
    if (r.status != LPStatus::Optimal) throw std::logic_error("integrality check: LP over a bounded set not optimal");
    if (!r.value.is_integer()) {
      rep.evidence = false;
      rep.counterexample = c;
      rep.counter_value = r.value;
      break;
    }
  }
  return rep;
}

IntegralityReport check_integrality(const Polyhedron& poly, std::size_t K, double sigma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<Vec> objectives;
  objectives.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    Vec c(poly.ny);
    for (auto& x : c) x = Rat(static_cast<long>(std::floor(normal(gen))));
    objectives.push_back(std::move(c));
  }
  IntegralityReport rep = check_integrality_objectives(poly, objectives);
  rep.seed = seed;
  return rep;
}

RankResult max_rank(const Polyhedron& poly) {
  Vec ones(poly.ny + poly.nz);
  for (std::size_t i = 0; i < poly.ny; ++i) ones[i] = Rat(1);
  LPResult r = solve_lp(poly.lp(ones));
  if (r.status != LPStatus::Optimal) throw std::logic_error("max_rank: LP not optimal");
  return {r.value, Vec(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(poly.ny))};
}

Vec SplitPoint::y() const {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

std::vector<IneqVector> enumerate_max_rank_integral(const Polyhedron& poly, const IntegralityReport& evidence) {
  if (!evidence.evidence)
    throw GateRefusal("cutting-plane enumeration refused: a random objective has a fractional optimum, so the DDCP is not known to be integral");
  const std::size_t n = poly.ny, nz = poly.nz;
  const RankResult rank = max_rank(poly);
  if (!rank.r.is_integer()) return {};

  // Columns: u (n), v (n), z (nz).
  const LinearProgram base = poly.lp();
  LinearProgram q;
  q.A = Mat(0, 2 * n + nz);
  for (std::size_t k = 0; k < base.rows(); ++k) {
    Vec row(2 * n + nz);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = base.A(k, i);
      row[n + i] = -base.A(k, i);
    }
    for (std::size_t j = 0; j < nz; ++j) row[2 * n + j] = base.A(k, n + j);
    q.add_row(row, RowSense::Le, base.rhs[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(2 * n + nz);
    row[i] = row[n + i] = Rat(1);
    q.add_row(row, RowSense::Le, Rat(1));
  }
  {
    Vec row(2 * n + nz);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = Rat(1);
      row[n + i] = Rat(-1);
    }
    q.add_row(row, RowSense::Eq, rank.r);
  }
  q.objective = zeros(2 * n + nz);
  q.lower.assign(2 * n + nz, std::nullopt);
  q.upper.assign(2 * n + nz, std::nullopt);
  std::vector<std::size_t> binaries;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    q.set_bounds(j, Rat(0), Rat(1));
    binaries.push_back(j);
  }

  // The feasibility search resumes after each no-good cut instead of restarting:
  // subtrees already shown empty stay empty once a row is added.
  std::vector<IneqVector> out;
  const Rat half(1, 2);
  auto record = [&](const Vec& x) {
    SplitPoint sp{Vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)),
                  Vec(x.begin() + static_cast<std::ptrdiff_t>(n), x.begin() + static_cast<std::ptrdiff_t>(2 * n))};
    out.emplace_back(sp.y(), "cutplane");
    // (1 - w~)'(1 - w) + w~'w <= 2n - 1 in linear form.
    Vec cut(2 * n + nz);
    long zeros_in = 0;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (x[j].is_zero()) {
        cut[j] = Rat(-1);
        ++zeros_in;
      } else {
        cut[j] = Rat(1);
      }
    }
    q.add_row(cut, RowSense::Le, Rat(static_cast<long>(2 * n) - 1 - zeros_in));
  };
  auto explore = [&](auto& self) -> void {
    for (;;) {
      LPResult r = solve_lp(q);
      if (r.status != LPStatus::Optimal) return;
      std::size_t pick = q.cols();
      Rat best_gap;
      for (std::size_t j : binaries) {
        const Rat frac = r.x[j] - r.x[j].floor();
        if (frac.is_zero()) continue;
        const Rat gap = (frac - half).abs();
        if (pick == q.cols() || gap < best_gap) {
          pick = j;
          best_gap = gap;
        }
      }
      if (pick == q.cols()) {
        record(r.x);
        continue;
      }
      const auto lo = q.lower[pick], hi = q.upper[pick];
      for (int branch : {1, 0}) {
        q.lower[pick] = Rat(branch);
        q.upper[pick] = Rat(branch);
        self(self);
      }
      q.lower[pick] = lo;
      q.upper[pick] = hi;
      return;
    }
  };
  explore(explore);
  std::sort(out.begin(), out.end(), [](const IneqVector& a, const IneqVector& b) { return lex_less(a.y, b.y); });
  return out;
}

std::vector<IneqVector> extreme_only(const Polyhedron& poly, const std::vector<IneqVector>& points) {
  std::vector<IneqVector> out;
  for (const auto& p : points)
    if (certify_undominated_extreme(poly, p.y)) out.push_back(p);
  return out;
}

std::vector<IneqVector> solve_cutplane(const Polyhedron& poly, const IntegralityReport& evidence) {
  return extreme_only(poly, enumerate_max_rank_integral(poly, evidence));
}

void cutplane_gate(const ModelSpec& spec, bool override_dynamic, const IntegralityReport* evidence) {
  if (spec.family == Family::Static) return;
  if (!override_dynamic)
    throw GateRefusal("the cutplane solver is restricted to static models; max-rank enumeration can miss inequalities of "
                      "lower rank in dynamic models (pass the override flag to run it anyway)");
  if (!evidence || !evidence->evidence)
    throw GateRefusal("the cutplane override for dynamic models requires integrality evidence");
}

}  // namespace sharpset
