#include "sharpset/matrices.hpp"

#include <json.hpp>
#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace sharpset {

namespace {

std::vector<std::vector<int>> tuples(int base, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(len), 0);
  for (;;) {
    out.push_back(cur);
    int k = len - 1;
    while (k >= 0 && ++cur[k] == base) cur[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::size_t tuple_index(const std::vector<int>& t, int base) {
  std::size_t r = 0;
  for (int x : t) r = r * static_cast<std::size_t>(base) + static_cast<std::size_t>(x);
  return r;
}

std::size_t region_index(const Region& r, std::size_t F) {
  std::size_t idx = 0;
  for (std::size_t x : r) idx = idx * F + x;
  return idx;
}

// Sparse accumulator keyed by column, emitted in column order.
struct RowBuilder {
  std::map<std::size_t, int> acc;
  void add(std::size_t col, int v) {
    if ((acc[col] += v) == 0) acc.erase(col);
  }
  SparseRow finish() const {
    SparseRow r;
    for (auto [c, v] : acc) {
      r.cols.push_back(c);
      r.vals.push_back(v);
    }
    return r;
  }
};

// Drops zero and exactly repeated rows, keeping first-occurrence order.
std::vector<SparseRow> dedupe(std::vector<SparseRow> rows) {
  std::set<SparseRow> seen;
  std::vector<SparseRow> out;
  for (auto& r : rows) {
    if (r.cols.empty() || !seen.insert(r).second) continue;
    out.push_back(std::move(r));
  }
  return out;
}

// Equal marginals between period pairs (a, b): one row per (patch, pair).
// col_region(j) gives the region of column j.
template <class RegionOf>
std::vector<SparseRow> marginal_rows(std::size_t F, std::size_t ncols, RegionOf region_of,
                                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<SparseRow> out;
  for (auto [a, b] : pairs) {
    std::vector<RowBuilder> rows(F);
    for (std::size_t j = 0; j < ncols; ++j) {
      const Region& r = region_of(j);
      if (r[a] == r[b]) continue;
      rows[r[a]].add(j, 1);
      rows[r[b]].add(j, -1);
    }
    for (auto& rb : rows) out.push_back(rb.finish());
  }
  return dedupe(std::move(out));
}

// q_R - q_{tau R} for every region and adjacent transposition tau. With
// `blocks` > 1 the columns are (g, R) and the row sums over g.
std::vector<SparseRow> exchange_rows(const std::vector<Region>& regs, std::size_t F, int T, std::size_t blocks) {
  std::vector<SparseRow> out;
  const std::size_t nreg = regs.size();
  for (std::size_t i = 0; i < nreg; ++i)
    for (int k = 0; k + 1 < T; ++k) {
      Region s = regs[i];
      std::swap(s[k], s[k + 1]);
      const std::size_t j = region_index(s, F);
      RowBuilder rb;
      for (std::size_t g = 0; g < blocks; ++g) {
        rb.add(g * nreg + i, 1);
        rb.add(g * nreg + j, -1);
      }
      out.push_back(rb.finish());
    }
  return dedupe(std::move(out));
}

std::vector<std::pair<int, int>> first_period_pairs(int T) {
  std::vector<std::pair<int, int>> p;
  for (int t = 1; t < T; ++t) p.emplace_back(0, t);
  return p;
}

void check_nonempty(const std::vector<Patch>& patches) {
  if (patches.empty()) throw std::invalid_argument("empty patch list");
}

// Shared builder for families whose columns are plain regions.
// choice(r, t, prev) is the period-t choice in region r given the previous
// choice (or -1 in period 0).
template <class Choice>
DiscreteModel region_model(const std::vector<Patch>& patches, const ModelSpec& spec, Choice choice,
                           const std::vector<std::pair<int, int>>& pairs) {
  check_nonempty(patches);
  DiscreteModel m;
  m.spec = spec;
  m.patches = patches;
  const std::size_t F = patches.size();
  const int T = spec.T;
  m.row_labels = tuples(spec.D, T);
  const auto regs = regions(F, T);
  for (const Region& r : regs) {
    std::vector<int> outcome;
    int prev = -1;
    for (int t = 0; t < T; ++t) outcome.push_back(prev = choice(r, t, prev));
    m.col_labels.push_back(r);
    m.col_row.push_back(tuple_index(outcome, spec.D));
  }
  if (spec.restriction == Restriction::Stationary) {
    m.R = marginal_rows(F, regs.size(), [&](std::size_t j) -> const Region& { return regs[j]; }, pairs);
  } else {
    m.R = exchange_rows(regs, F, T, 1);
    m.P_E = build_P_exchangeable(F, T);
  }
  return m;
}

}  // namespace

Mat DiscreteModel::A_dense() const {
  Mat a(rows(), cols());
  for (std::size_t j = 0; j < cols(); ++j) a(col_row[j], j) = Rat(1);
  return a;
}

Mat DiscreteModel::R_dense() const {
  Mat r(R.size(), cols());
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t k = 0; k < R[i].cols.size(); ++k) r(i, R[i].cols[k]) = Rat(R[i].vals[k]);
  return r;
}

Mat DiscreteModel::P_E_dense() const {
  if (!P_E) return Mat(0, cols());
  Mat p(P_E->size(), cols());
  for (std::size_t i = 0; i < P_E->size(); ++i)
    for (std::size_t c : (*P_E)[i]) p(i, c) = Rat(1);
  return p;
}

std::string DiscreteModel::row_name(std::size_t i) const {
  std::string s = "p[";
  const int base = spec.label_base();
  for (std::size_t k = 0; k < row_labels[i].size(); ++k) {
    if (k) s += ",";
    s += std::to_string(row_labels[i][k] + base);
  }
  return s + "]";
}

DiscreteModel build_static(const std::vector<Patch>& patches, const ModelSpec& spec) {
  if (spec.family != Family::Static) throw ValidationError("build_static needs a static model");
  return region_model(
      patches, spec, [&](const Region& r, int t, int) { return patches[r[t]].payload[t]; },
      first_period_pairs(spec.T));
}

DiscreteModel build_dyn_cond(const std::vector<Patch>& patches, const ModelSpec& spec) {
  if (spec.family != Family::DynCond) throw ValidationError("build_dyn_cond needs a conditional dynamic model");
  const int D = spec.D;
  return region_model(
      patches, spec,
      [&](const Region& r, int t, int prev) {
        const auto& f = patches[r[t]].payload;
        return t == 0 ? f[0] : f[1 + (t - 1) * D + prev];
      },
      first_period_pairs(spec.T));
}

DiscreteModel build_ar2(const std::vector<Patch>& patches, const ModelSpec& spec) {
  if (spec.family != Family::TwoLag) throw ValidationError("build_ar2 needs a two-lag model");
  int first = 0;
  // B1: periods 1 and 3; B2: periods 2 and 3.
  return region_model(
      patches, spec,
      [&](const Region& r, int t, int prev) {
        const auto& f = patches[r[t]].payload;
        if (t == 0) return first = f[0];
        if (t == 1) return f[1 + prev];
        return f[3 + first + 2 * prev];
      },
      {{0, 2}, {1, 2}});
}

DiscreteModel build_dyn_uncond(const std::vector<Patch>& patches, const ModelSpec& spec) {
  if (spec.family != Family::DynUncond)
    throw ValidationError("build_dyn_uncond needs an unconditional dynamic model");
  check_nonempty(patches);
  DiscreteModel m;
  m.spec = spec;
  m.patches = patches;
  const std::size_t F = patches.size();
  const int D = spec.D, T = spec.T;
  m.row_labels = tuples(D, T + 1);
  const auto regs = regions(F, T);
  for (int g = 0; g < D; ++g)
    for (const Region& r : regs) {
      std::vector<int> outcome{g};
      for (int t = 0; t < T; ++t) outcome.push_back(patches[r[t]].payload[t * D + outcome.back()]);
      std::vector<std::size_t> label{static_cast<std::size_t>(g)};
      label.insert(label.end(), r.begin(), r.end());
      m.col_labels.push_back(label);
      m.col_row.push_back(tuple_index(outcome, D));
    }
  if (spec.restriction == Restriction::Stationary) {
    m.R = marginal_rows(
        F, m.cols(), [&](std::size_t j) -> const Region& { return regs[j % regs.size()]; }, first_period_pairs(T));
  } else {
    m.R = exchange_rows(regs, F, T, static_cast<std::size_t>(D));
  }
  return m;
}

DiscreteModel build_model(const ModelSpec& spec, PatchMethod method) {
  const auto ps = patches(spec, method);
  switch (spec.family) {
    case Family::Static: return build_static(ps, spec);
    case Family::DynCond: return build_dyn_cond(ps, spec);
    case Family::DynUncond: return build_dyn_uncond(ps, spec);
    case Family::TwoLag: return build_ar2(ps, spec);
  }
  throw ValidationError("unknown family");
}

std::vector<std::vector<std::size_t>> build_P_exchangeable(std::size_t patch_count, int T) {
  if (T < 2) throw std::invalid_argument("P_E needs T >= 2");
  std::map<Region, std::vector<std::size_t>> orbits;  // sorted multiset -> columns
  const auto regs = regions(patch_count, T);
  for (std::size_t j = 0; j < regs.size(); ++j) {
    Region key = regs[j];
    std::sort(key.begin(), key.end());
    orbits[key].push_back(j);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [k, cols] : orbits) out.push_back(std::move(cols));
  return out;
}

std::string to_sparse_json(const DiscreteModel& m) {
  nlohmann::json a = {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", nlohmann::json::array()}};
  for (std::size_t j = 0; j < m.cols(); ++j) a["entries"].push_back({m.col_row[j], j, "1"});
  nlohmann::json r = {{"rows", m.R.size()}, {"cols", m.cols()}, {"entries", nlohmann::json::array()}};
  for (std::size_t i = 0; i < m.R.size(); ++i)
    for (std::size_t k = 0; k < m.R[i].cols.size(); ++k)
      r["entries"].push_back({i, m.R[i].cols[k], std::to_string(m.R[i].vals[k])});
  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) labels.push_back(m.row_name(i));
  return nlohmann::json{{"A", a}, {"R", r}, {"row_labels", labels}}.dump();
}

}  // namespace sharpset
