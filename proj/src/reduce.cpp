#include "sharpset/reduce.hpp"

#include <algorithm>

#include "sharpset/lp.hpp"

namespace sharpset {

IneqVector::IneqVector(Vec v, std::string prov) : y(std::move(v)), rank(sum(y)), provenance(std::move(prov)) {}

std::vector<Vec> IneqSet::ys() const {
  std::vector<Vec> out;
  for (const auto& v : vectors) out.push_back(v.y);
  return out;
}

std::vector<IneqVector> as_ineqs(const std::vector<Vec>& ys, const std::string& provenance) {
  std::vector<IneqVector> out;
  for (const auto& y : ys) out.emplace_back(y, provenance);
  return out;
}

IneqSet canonicalize(std::vector<IneqVector> vectors, std::vector<std::string> labels) {
  std::stable_sort(vectors.begin(), vectors.end(),
                   [](const IneqVector& a, const IneqVector& b) { return lex_less(a.y, b.y); });
  IneqSet out;
  out.labels = std::move(labels);
  for (auto& v : vectors) {
    if (!out.vectors.empty() && out.vectors.back().y == v.y) {
      out.log.push_back({v.y, "duplicate", {}, {}});
      continue;
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

bool implied_by(const Vec& y, const std::vector<Vec>& others, Vec* lambda) {
  const std::size_t n = y.size(), M = others.size();
  LinearProgram lp;
  lp.A = Mat(0, M);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(M);
    for (std::size_t s = 0; s < M; ++s) row[s] = -others[s][i];
    lp.add_row(row, RowSense::Le, -y[i]);
  }
  lp.objective = zeros(M);
  lp.lower.assign(M, Rat(0));
  lp.upper.assign(M, std::nullopt);
  LPResult r = solve_lp(lp);
  if (r.status != LPStatus::Optimal) return false;
  if (lambda) *lambda = r.x;
  return true;
}

bool verify_removal(const Removal& r) {
  if (r.reason != "implied") return r.reason == "duplicate" || std::all_of(r.y.begin(), r.y.end(), [](const Rat& x) {
                                       return x.sign() <= 0;
                                     });
  if (r.lambda.size() != r.against.size()) return false;
  for (const Rat& l : r.lambda)
    if (l.sign() < 0) return false;
  for (std::size_t i = 0; i < r.y.size(); ++i) {
    Rat s;
    for (std::size_t k = 0; k < r.against.size(); ++k) s += r.lambda[k] * r.against[k][i];
    if (r.y[i] > s) return false;
  }
  return true;
}

IneqSet eliminate_redundant(std::vector<IneqVector> vectors, std::vector<std::string> labels) {
  IneqSet canon = canonicalize(std::move(vectors), std::move(labels));
  IneqSet out;
  out.labels = canon.labels;
  out.log = canon.log;
  std::vector<IneqVector> list;
  for (auto& v : canon.vectors) {
    if (std::all_of(v.y.begin(), v.y.end(), [](const Rat& x) { return x.sign() <= 0; }))
      out.log.push_back({v.y, "trivial", {}, {}});
    else
      list.push_back(std::move(v));
  }
  for (std::size_t k = 0; k < list.size();) {
    std::vector<Vec> others;
    for (std::size_t s = 0; s < list.size(); ++s)
      if (s != k) others.push_back(list[s].y);
    Vec lambda;
    if (implied_by(list[k].y, others, &lambda)) {
      out.log.push_back({list[k].y, "implied", others, lambda});
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  out.vectors = std::move(list);
  return out;
}

}  // namespace sharpset
