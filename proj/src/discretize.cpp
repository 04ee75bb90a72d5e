#include "sharpset/discretize.hpp"

#include <algorithm>
#include <set>

#include "sharpset/lp.hpp"

namespace sharpset {

std::string to_string(Family f) {
  switch (f) {
    case Family::Static: return "static";
    case Family::DynCond: return "dyn-cond";
    case Family::DynUncond: return "dyn-uncond";
    case Family::TwoLag: return "ar2";
  }
  return "?";
}

std::string to_string(Restriction r) { return r == Restriction::Stationary ? "stationary" : "exchangeable"; }

Family parse_family(const std::string& s) {
  if (s == "static") return Family::Static;
  if (s == "dyn-cond" || s == "dynamic") return Family::DynCond;
  if (s == "dyn-uncond" || s == "kpt") return Family::DynUncond;
  if (s == "ar2" || s == "two-lag") return Family::TwoLag;
  throw ValidationError("unknown family '" + s + "' (expected static, dyn-cond, dyn-uncond or ar2)");
}

Restriction parse_restriction(const std::string& s) {
  if (s == "stationary") return Restriction::Stationary;
  if (s == "exchangeable") return Restriction::Exchangeable;
  throw ValidationError("unknown restriction '" + s + "' (expected stationary or exchangeable)");
}

void ModelSpec::validate() const {
  if (D < 2) throw ValidationError("D must be at least 2");
  if (T < 2) throw ValidationError("T must be at least 2");
  if (v.rows() != static_cast<std::size_t>(D) || v.cols() != static_cast<std::size_t>(T))
    throw ValidationError("v must be a D x T matrix (got " + std::to_string(v.rows()) + " x " +
                          std::to_string(v.cols()) + ")");
  if (family == Family::TwoLag) {
    if (D != 2 || T != 3) throw ValidationError("the two-lag family requires D = 2 and T = 3");
    if (restriction != Restriction::Stationary)
      throw ValidationError("the two-lag family supports the stationarity restriction only");
    if (y0 < 0 || y0 > 1 || y_minus1 < 0 || y_minus1 > 1)
      throw ValidationError("two-lag initial conditions must be binary");
  }
  if (family == Family::DynCond && (y0 < 0 || y0 >= D)) throw ValidationError("y0 out of range");
}

namespace {

Mat binary_rows(const Vec& v) {
  Mat m(2, v.size());
  for (std::size_t t = 0; t < v.size(); ++t) m(1, t) = v[t];
  return m;
}

}  // namespace

ModelSpec binary_static(const Vec& v) {
  ModelSpec s;
  s.family = Family::Static;
  s.D = 2;
  s.T = static_cast<int>(v.size());
  s.v = binary_rows(v);
  return s;
}

ModelSpec kpt_uncond(const Vec& v, const Rat& g) {
  ModelSpec s = binary_static(v);
  s.family = Family::DynUncond;
  s.gamma = g / Rat(2);
  return s;
}

ModelSpec kpt_cond(const Vec& v, const Rat& g, int y0) {
  ModelSpec s = kpt_uncond(v, g);
  s.family = Family::DynCond;
  s.y0 = y0;
  return s;
}

ModelSpec two_lag(const Vec& v, const Rat& g1, const Rat& g2, int y0, int y_minus1) {
  ModelSpec s = binary_static(v);
  s.family = Family::TwoLag;
  s.gamma1 = g1;
  s.gamma2 = g2;
  s.y0 = y0;
  s.y_minus1 = y_minus1;
  return s;
}

std::vector<Vec> slot_utilities(const ModelSpec& spec) {
  spec.validate();
  const int D = spec.D, T = spec.T;
  auto state_utility = [&](int t, int s) {
    Vec u(D);
    for (int d = 0; d < D; ++d) {
      u[d] = spec.v(d, t);
      if (d == s) u[d] += spec.gamma;
    }
    return u;
  };
  std::vector<Vec> slots;
  switch (spec.family) {
    case Family::Static:
      for (int t = 0; t < T; ++t) slots.push_back(spec.v.transpose().row(t));
      break;
    case Family::DynCond:
      slots.push_back(state_utility(0, spec.y0));
      for (int t = 1; t < T; ++t)
        for (int s = 0; s < D; ++s) slots.push_back(state_utility(t, s));
      break;
    case Family::DynUncond:
      for (int t = 0; t < T; ++t)
        for (int s = 0; s < D; ++s) slots.push_back(state_utility(t, s));
      break;
    case Family::TwoLag: {
      Vec b(3);
      for (int t = 0; t < 3; ++t) b[t] = spec.v(1, t) - spec.v(0, t);
      const Rat &g1 = spec.gamma1, &g2 = spec.gamma2;
      const Rat y0(spec.y0), ym1(spec.y_minus1);
      const Vec c = {b[0] + g1 * y0 + g2 * ym1, b[1] + g2 * y0, b[1] + g1 + g2 * y0, b[2],
                     b[2] + g2,                 b[2] + g1,      b[2] + g1 + g2};
      for (const Rat& ck : c) slots.push_back({Rat(0), ck});
      break;
    }
  }
  return slots;
}

void patch_system(const std::vector<Vec>& slots, const std::vector<int>& payload, Mat& M, Vec& b) {
  const std::size_t D = slots.empty() ? 0 : slots.front().size();
  M = Mat(0, D);
  b.clear();
  for (std::size_t k = 0; k < payload.size(); ++k) {
    const int d = payload[k];
    for (std::size_t e = 0; e < D; ++e) {
      if (static_cast<int>(e) == d) continue;
      Vec row(D);
      row[e] = Rat(1);
      row[d] = Rat(-1);
      M.append_row(row);
      b.push_back(slots[k][d] - slots[k][e]);
    }
  }
}

namespace {

void dfs(const std::vector<Vec>& slots, int D, std::vector<int>& prefix, std::vector<Patch>& out) {
  if (prefix.size() == slots.size()) {
    out.push_back({prefix});
    return;
  }
  for (int d = 0; d < D; ++d) {
    prefix.push_back(d);
    Mat M;
    Vec b;
    patch_system(slots, prefix, M, b);
    if (strict_feasibility(M, b).strictly_feasible) dfs(slots, D, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Patch> lp_patches(const std::vector<Vec>& slots, int D) {
  std::vector<Patch> out;
  std::vector<int> prefix;
  dfs(slots, D, prefix, out);
  return out;
}

// One-dimensional shock: alternative 1 wins slot k iff xi < theta_k with
// xi = zeta_0 - zeta_1. Every open interval between sorted thresholds is one
// patch.
std::vector<Patch> threshold_patches(const std::vector<Vec>& slots) {
  std::set<Rat> cuts;
  Vec theta;
  for (const Vec& u : slots) {
    theta.push_back(u[1] - u[0]);
    cuts.insert(theta.back());
  }
  Vec probes;
  std::vector<Rat> sorted(cuts.begin(), cuts.end());
  if (sorted.empty()) {
    probes.push_back(Rat(0));
  } else {
    probes.push_back(sorted.front() - Rat(1));
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) probes.push_back((sorted[i] + sorted[i + 1]) / Rat(2));
    probes.push_back(sorted.back() + Rat(1));
  }
  std::set<Patch> found;
  for (const Rat& xi : probes) {
    Patch p;
    for (const Rat& th : theta) p.payload.push_back(xi < th ? 1 : 0);
    found.insert(p);
  }
  return {found.begin(), found.end()};
}

std::vector<Patch> dispatch(const ModelSpec& spec, PatchMethod method) {
  const auto slots = slot_utilities(spec);
  if (method == PatchMethod::LinearProgram) return lp_patches(slots, spec.D);
  if (spec.D == 2) return threshold_patches(slots);
  if (spec.family == Family::Static && spec.T == 2) {
    // Remark 3: (d,d) always; (d,d') iff dv_d < dv_d'.
    std::vector<Patch> out;
    for (int d = 0; d < spec.D; ++d)
      for (int e = 0; e < spec.D; ++e) {
        const Rat dv_d = spec.v(d, 1) - spec.v(d, 0), dv_e = spec.v(e, 1) - spec.v(e, 0);
        if (d == e || dv_d < dv_e) out.push_back({{d, e}});
      }
    return out;
  }
  if (method == PatchMethod::ClosedForm)
    throw ValidationError("no closed-form patch rule for this family; use the LP route");
  return lp_patches(slots, spec.D);
}

void require(const ModelSpec& spec, Family f) {
  if (spec.family != f) throw ValidationError("patch routine called for the wrong family");
}

}  // namespace

std::vector<Patch> static_patches(const ModelSpec& spec, PatchMethod method) {
  require(spec, Family::Static);
  return dispatch(spec, method);
}

std::vector<Patch> dyn_cond_patches(const ModelSpec& spec, PatchMethod method) {
  require(spec, Family::DynCond);
  return dispatch(spec, method);
}

std::vector<Patch> dyn_uncond_patches(const ModelSpec& spec, PatchMethod method) {
  require(spec, Family::DynUncond);
  return dispatch(spec, method);
}

std::vector<Patch> ar2_patches(const ModelSpec& spec, PatchMethod method) {
  require(spec, Family::TwoLag);
  return dispatch(spec, method);
}

std::vector<Patch> patches(const ModelSpec& spec, PatchMethod method) { return dispatch(spec, method); }

bool patch_is_feasible(const ModelSpec& spec, const Patch& p) {
  Mat M;
  Vec b;
  patch_system(slot_utilities(spec), p.payload, M, b);
  return strict_feasibility(M, b).strictly_feasible;
}

std::vector<Region> regions(std::size_t patch_count, int T) {
  if (patch_count == 0) throw std::invalid_argument("regions: empty patch list");
  std::vector<Region> out;
  Region cur(static_cast<std::size_t>(T), 0);
  for (;;) {
    out.push_back(cur);
    int t = T - 1;
    while (t >= 0 && ++cur[t] == patch_count) cur[t--] = 0;
    if (t < 0) break;
  }
  return out;
}

}  // namespace sharpset
