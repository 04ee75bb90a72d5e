#include "sharpset/cases.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

#include "sharpset/lp.hpp"

namespace sharpset {

namespace {

ThresholdForm form(std::string label, std::initializer_list<int> coef) {
  ThresholdForm f;
  f.label = std::move(label);
  for (int c : coef) f.coef.push_back(Rat(c));
  return f;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

// Rows of the realizability LP over the params.
LinearProgram order_lp(const CaseFamily& fam, const WeakOrder& order) {
  const std::size_t n = fam.params.size();
  LinearProgram lp(0, n);
  auto diff = [&](std::size_t a, std::size_t b) {
    Vec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = fam.forms[a].coef[j] - fam.forms[b].coef[j];
    return row;
  };
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t i = 1; i < order[k].size(); ++i) lp.add_row(diff(order[k][i], order[k][0]), RowSense::Eq, Rat(0));
    if (k + 1 < order.size()) lp.add_row(diff(order[k][0], order[k + 1][0]), RowSense::Le, Rat(-1));
  }
  return lp;
}

Vec bounded_optimum(const CaseFamily& fam, const WeakOrder& order, const Vec& weights) {
  const std::size_t n = fam.params.size();
  LinearProgram lp = order_lp(fam, order);
  const Rat cap(static_cast<long>(fam.forms.size()));
  Vec c(n);
  for (const auto& block : order)
    for (std::size_t f : block) {
      lp.add_row(fam.forms[f].coef, RowSense::Le, cap);
      for (std::size_t j = 0; j < n; ++j) c[j] += weights[f] * fam.forms[f].coef[j];
    }
  // Keep every form within [-cap*(forms+1), cap] so that any weights give a
  // bounded problem.
  for (const auto& block : order)
    for (std::size_t f : block) {
      Vec neg(n);
      for (std::size_t j = 0; j < n; ++j) neg[j] = -fam.forms[f].coef[j];
      lp.add_row(neg, RowSense::Le, cap * Rat(static_cast<long>(fam.forms.size()) + 1));
    }
  lp.objective = c;
  LPResult r = solve_lp(lp);
  if (r.status != LPStatus::Optimal) return {};
  return r.x;
}

std::size_t position(const WeakOrder& order, std::size_t f) {
  for (std::size_t k = 0; k < order.size(); ++k)
    if (std::find(order[k].begin(), order[k].end(), f) != order[k].end()) return k;
  return order.size();
}

}  // namespace

Vec CaseFamily::evaluate(const Vec& p) const {
  if (p.size() != params.size()) throw ValidationError("wrong number of parameters");
  Vec out;
  for (const auto& f : forms) out.push_back(dot(f.coef, p));
  return out;
}

ModelSpec CaseFamily::spec_for(const Vec& p) const {
  if (p.size() != params.size()) throw ValidationError("wrong number of parameters");
  ModelSpec s;
  switch (family) {
    case Family::Static:
      s.family = Family::Static;
      s.D = D;
      s.T = 2;
      s.restriction = restriction;
      s.v = Mat(static_cast<std::size_t>(D), 2);
      for (std::size_t d = 0; d < p.size(); ++d) s.v(d, 1) = p[d];
      break;
    case Family::DynUncond:
      s = kpt_uncond({p[0], p[1]}, p[2]);
      break;
    case Family::DynCond:
      s = kpt_cond({p[0], p[1]}, p[2], y0);
      break;
    case Family::TwoLag:
      s = two_lag({p[0], p[1], p[2]}, p[3], p[4], y0, y_minus1);
      break;
  }
  return s;
}

CaseFamily case_family(Family f, int D, int T, int y0, int y_minus1, Restriction r) {
  CaseFamily fam;
  fam.family = f;
  fam.D = D;
  fam.T = T;
  fam.y0 = y0;
  fam.y_minus1 = y_minus1;
  fam.restriction = r;
  auto binary_state = [](int s) {
    if (s != 0 && s != 1) throw ValidationError("initial conditions must be 0 or 1");
  };
  switch (f) {
    case Family::Static: {
      if (T != 2) throw ValidationError("cases: static family needs T = 2");
      if (D < 2 || D > 8) throw ValidationError("cases: static family needs 2 <= D <= 8");
      const int base = D == 2 ? 0 : 1;
      for (int d = 0; d < D; ++d) {
        fam.params.push_back("dv" + std::to_string(d + base));
        ThresholdForm t;
        t.label = fam.params.back();
        t.coef = Vec(static_cast<std::size_t>(D));
        t.coef[static_cast<std::size_t>(d)] = Rat(1);
        fam.forms.push_back(std::move(t));
      }
      break;
    }
    case Family::DynUncond:
      if (D != 2 || T != 2) throw ValidationError("cases: the unconditional dynamic family is supported for D = 2, T = 2");
      fam.params = {"v1", "v2", "g"};
      fam.forms = {form("v1", {1, 0, 0}), form("v1+g", {1, 0, 1}), form("v2", {0, 1, 0}), form("v2+g", {0, 1, 1})};
      break;
    case Family::DynCond:
      if (D != 2 || T != 2) throw ValidationError("cases: the conditional dynamic family is supported for D = 2, T = 2");
      binary_state(y0);
      fam.params = {"v1", "v2", "g"};
      fam.forms = {y0 ? form("v1+g", {1, 0, 1}) : form("v1", {1, 0, 0}), form("v2", {0, 1, 0}), form("v2+g", {0, 1, 1})};
      break;
    case Family::TwoLag: {
      if (D != 2 || T != 3) throw ValidationError("cases: the two-lag family is supported for D = 2, T = 3");
      binary_state(y0);
      binary_state(y_minus1);
      fam.params = {"v1", "v2", "v3", "g1", "g2"};
      std::string c0 = "v1", c1 = "v2", c2 = "v2+g1";
      if (y0) c0 += "+g1";
      if (y_minus1) c0 += "+g2";
      if (y0) c1 += "+g2", c2 += "+g2";
      fam.forms = {form(c0, {1, 0, 0, y0, y_minus1}), form(c1, {0, 1, 0, 0, y0}), form(c2, {0, 1, 0, 1, y0}),
                   form("v3", {0, 0, 1, 0, 0}),       form("v3+g2", {0, 0, 1, 0, 1}), form("v3+g1", {0, 0, 1, 1, 0}),
                   form("v3+g1+g2", {0, 0, 1, 1, 1})};
      break;
    }
  }
  return fam;
}

std::string describe(const CaseFamily& fam, const WeakOrder& order) {
  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k) out += " < ";
    for (std::size_t i = 0; i < order[k].size(); ++i) {
      if (i) out += " = ";
      out += fam.forms[order[k][i]].label;
    }
  }
  return out;
}

WeakOrder parse_order(const CaseFamily& fam, const std::string& text) {
  WeakOrder order(1);
  std::vector<char> used(fam.forms.size(), 0);
  std::string tok;
  auto flush = [&]() {
    const std::string t = trim(tok);
    tok.clear();
    std::size_t f = 0;
    while (f < fam.forms.size() && fam.forms[f].label != t) ++f;
    if (f == fam.forms.size()) throw ValidationError("unknown threshold '" + t + "'");
    if (used[f]) throw ValidationError("threshold '" + t + "' appears twice");
    used[f] = 1;
    order.back().push_back(f);
  };
  for (char c : text) {
    if (c == '<' || c == '=') {
      flush();
      if (c == '<') order.emplace_back();
    } else {
      tok += c;
    }
  }
  flush();
  if (std::count(used.begin(), used.end(), 1) != static_cast<long>(fam.forms.size()))
    throw ValidationError("ordering must mention every threshold once");
  return order;
}

WeakOrder order_at(const CaseFamily& fam, const Vec& p) {
  const Vec val = fam.evaluate(p);
  std::vector<std::size_t> idx(val.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
  WeakOrder order;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || val[idx[i]] != val[idx[i - 1]]) order.emplace_back();
    order.back().push_back(idx[i]);
  }
  return order;
}

Realization realizable(const CaseFamily& fam, const WeakOrder& order) {
  Realization out;
  Vec ones(fam.forms.size(), Rat(1));
  out.witness = bounded_optimum(fam, order, ones);
  out.ok = !out.witness.empty();
  return out;
}

Vec redraw_representative(const CaseFamily& fam, const WeakOrder& order, std::uint64_t seed) {
  const Realization base = realizable(fam, order);
  if (!base.ok) throw ValidationError("ordering is not realizable");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> w(-5, 5);
  Vec weights(fam.forms.size());
  for (auto& x : weights) x = Rat(w(gen));
  const Vec other = bounded_optimum(fam, order, weights);
  Vec mid(base.witness.size());
  for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = (base.witness[j] + other[j]) / Rat(2);
  return mid;
}

Symmetry parse_symmetry(const std::string& s) {
  if (s == "none") return Symmetry::None;
  if (s == "canonical") return Symmetry::Canonical;
  throw ValidationError("unknown symmetry '" + s + "' (expected none or canonical)");
}

std::vector<CaseDescriptor> enumerate_cases(const CaseFamily& fam, Symmetry symmetry) {
  // Pairs (a, b) that must satisfy position(a) <= position(b).
  std::vector<std::pair<std::size_t, std::size_t>> le;
  if (symmetry == Symmetry::Canonical) {
    if (fam.family == Family::Static)
      for (std::size_t d = 0; d + 1 < fam.forms.size(); ++d) le.emplace_back(d + 1, d);
    if (fam.family == Family::DynUncond) le.emplace_back(0, 2);
  }
  const std::size_t n = fam.forms.size();
  std::vector<CaseDescriptor> out;
  WeakOrder order;
  // Insert forms one at a time; a partial ordering that is not realizable
  // or breaks the quotient cannot be extended.
  auto extend = [&](auto&& self, std::size_t f) -> void {
    if (f == n) {
      CaseDescriptor c;
      c.order = order;
      c.text = describe(fam, order);
      c.representative = realizable(fam, order).witness;
      c.spec = fam.spec_for(c.representative);
      out.push_back(std::move(c));
      return;
    }
    auto admissible = [&]() {
      for (auto [a, b] : le)
        if (a <= f && b <= f && position(order, a) > position(order, b)) return false;
      return realizable(fam, order).ok;
    };
    for (std::size_t k = 0; k <= order.size(); ++k) {
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(k), std::vector<std::size_t>{f});
      if (admissible()) self(self, f + 1);
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(k));
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      order[k].push_back(f);
      if (admissible()) self(self, f + 1);
      order[k].pop_back();
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end(), [](const CaseDescriptor& a, const CaseDescriptor& b) { return a.text < b.text; });
  return out;
}

}  // namespace sharpset
