#include "sharpset/closedform.hpp"

#include <algorithm>
#include <numeric>

namespace sharpset {

namespace {

constexpr const char* kProv = "closedform";

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool has(AltSet s, int d) { return (s >> d) & 1U; }

IneqSet make_set(std::vector<Vec> ys, int D, int T) {
  IneqSet out;
  out.labels = outcome_labels(D, T);
  for (auto& y : ys) out.vectors.emplace_back(std::move(y), kProv);
  return out;
}

Vec grid_difference(const Grid& a, const Grid& b) {
  Vec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = Rat(int(a[i]) - int(b[i]));
  return y;
}

void require_two_period_dyn(const ModelSpec& spec) {
  if (spec.family != Family::DynCond) throw ValidationError("closed form needs the conditional dynamic family");
  if (spec.T != 2) throw ValidationError("closed form needs T = 2");
  if (spec.D < 2 || spec.D > 20) throw ValidationError("closed form needs 2 <= D <= 20");
  spec.validate();
}

}  // namespace

std::vector<std::string> outcome_labels(int D, int T) {
  const int base = D == 2 ? 0 : 1;
  const std::size_t n = ipow(static_cast<std::size_t>(D), T);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> digits(static_cast<std::size_t>(T));
    std::size_t r = i;
    for (int t = T - 1; t >= 0; --t) {
      digits[static_cast<std::size_t>(t)] = static_cast<int>(r % static_cast<std::size_t>(D));
      r /= static_cast<std::size_t>(D);
    }
    std::string s = "p[";
    for (int t = 0; t < T; ++t) {
      if (t) s += ",";
      s += std::to_string(digits[static_cast<std::size_t>(t)] + base);
    }
    out.push_back(s + "]");
  }
  return out;
}

IneqSet cm_inequalities(int sign) {
  const Vec down = {Rat(0), Rat(-1), Rat(1), Rat(0)}, up = {Rat(0), Rat(1), Rat(-1), Rat(0)};
  std::vector<Vec> ys;
  if (sign <= 0) ys.push_back(down);
  if (sign >= 0) ys.push_back(up);
  return make_set(std::move(ys), 2, 2);
}

RankedAlternatives::RankedAlternatives(Vec differences) : dv(std::move(differences)) {
  if (dv.size() < 2) throw ValidationError("ranking needs at least two alternatives");
  order.resize(dv.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dv[a] > dv[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (dv[order[i]] == dv[order[i - 1]]) throw ValidationError("tied index differences: use the solver for tied rankings");
}

std::vector<int> RankedAlternatives::upper(int i) const {
  if (i < 1 || i > D()) throw ValidationError("rank out of range");
  return {order.begin(), order.begin() + i};
}

std::vector<int> RankedAlternatives::lower(int j) const {
  if (j < 1 || j > D()) throw ValidationError("rank out of range");
  return {order.begin() + (j - 1), order.end()};
}

Grid StaircaseSet::cells(const RankedAlternatives& r) const {
  const auto D = static_cast<std::size_t>(r.D());
  Grid g(D * D, 0);
  for (auto [k, kp] : products)
    for (int a : r.upper(k))
      for (int b : r.lower(kp)) g[static_cast<std::size_t>(a) * D + static_cast<std::size_t>(b)] = 1;
  return g;
}

Grid StaircaseSet::per_cells(const RankedAlternatives& r) const {
  const auto D = static_cast<std::size_t>(r.D());
  Grid g(D * D, 0);
  for (auto [k, kp] : products)
    for (int a : r.lower(kp))
      for (int b : r.upper(k)) g[static_cast<std::size_t>(a) * D + static_cast<std::size_t>(b)] = 1;
  return g;
}

std::vector<StaircaseSet> staircase_sets(int D) {
  if (D < 1) throw ValidationError("staircase_sets needs D >= 1");
  std::vector<StaircaseSet> out;
  std::vector<int> seq;
  // Depth-first over non-decreasing sequences; every prefix is itself a set.
  auto grow = [&](auto&& self, int lo) -> void {
    for (int i = lo; i <= D; ++i) {
      seq.push_back(i);
      StaircaseSet s;
      for (std::size_t d = 0; d < seq.size(); ++d) s.products.emplace_back(static_cast<int>(d) + 1, seq[d]);
      out.push_back(std::move(s));
      if (static_cast<int>(seq.size()) < D) self(self, i);
      seq.pop_back();
    }
  };
  grow(grow, 1);
  return out;
}

IneqSet pp_static_inequalities(const RankedAlternatives& ranked) {
  const int D = ranked.D();
  std::vector<Vec> ys;
  for (int i = 1; i < D; ++i) {
    StaircaseSet s;
    s.products.emplace_back(i, 1);  // U_i x [D]
    ys.push_back(grid_difference(s.cells(ranked), s.per_cells(ranked)));
  }
  return make_set(std::move(ys), D, 2);
}

IneqSet exchangeable_family(const RankedAlternatives& ranked) {
  std::vector<Vec> ys;
  for (const StaircaseSet& s : staircase_sets(ranked.D())) ys.push_back(grid_difference(s.cells(ranked), s.per_cells(ranked)));
  return make_set(std::move(ys), ranked.D(), 2);
}

AltSet DynLowerSets::B(int d, AltSet A) const {
  AltSet b = 0;
  for (AltSet l : L[static_cast<std::size_t>(d)])
    if ((l & ~A) == 0) b |= l;
  return b;
}

DynLowerSets dyn_lower_sets(const ModelSpec& spec) {
  require_two_period_dyn(spec);
  DynLowerSets out;
  const int D = out.D = spec.D;
  out.delta = Mat(static_cast<std::size_t>(D), static_cast<std::size_t>(D));
  for (int d = 0; d < D; ++d)
    for (int d1 = 0; d1 < D; ++d1) {
      Rat x = spec.v(static_cast<std::size_t>(d), 1) - spec.v(static_cast<std::size_t>(d), 0);
      if (d == d1) x += spec.gamma;
      if (d == spec.y0) x -= spec.gamma;
      out.delta(static_cast<std::size_t>(d), static_cast<std::size_t>(d1)) = x;
    }
  const AltSet full = (AltSet(1) << D) - 1;
  std::vector<char> seen(static_cast<std::size_t>(full) + 1, 0);
  out.L.resize(static_cast<std::size_t>(D));
  for (int d1 = 0; d1 < D; ++d1) {
    auto delta = [&](int d) -> const Rat& { return out.delta(static_cast<std::size_t>(d), static_cast<std::size_t>(d1)); };
    for (AltSet A = 1; A < full; ++A) {
      bool lower = true;
      for (int a = 0; a < D && lower; ++a) {
        if (!has(A, a)) continue;
        for (int b = 0; b < D && lower; ++b)
          if (!has(A, b) && delta(a) > delta(b)) lower = false;
      }
      if (!lower) continue;
      out.L[static_cast<std::size_t>(d1)].push_back(A);
      seen[A] = 1;
    }
  }
  for (AltSet A = 1; A < full; ++A)
    if (seen[A]) out.family.push_back(A);
  return out;
}

IneqSet dynamic_family(const ModelSpec& spec) {
  const DynLowerSets ls = dyn_lower_sets(spec);
  const auto D = static_cast<std::size_t>(ls.D);
  std::vector<Vec> ys;
  for (AltSet A : ls.family) {
    Vec y(D * D);
    for (std::size_t d1 = 0; d1 < D; ++d1) {
      const AltSet b = ls.B(static_cast<int>(d1), A);
      for (std::size_t d2 = 0; d2 < D; ++d2) {
        if (has(b, static_cast<int>(d2))) y[d1 * D + d2] += Rat(1);
        if (has(A, static_cast<int>(d1))) y[d1 * D + d2] -= Rat(1);
      }
    }
    ys.push_back(std::move(y));
  }
  return make_set(std::move(ys), ls.D, 2);
}

IneqSet kpt_family(const Rat& a1, const Rat& a2, const Rat& g, int y0) {
  if (y0 != 0 && y0 != 1) throw ValidationError("y0 must be 0 or 1");
  const Rat diff = a2 - a1, gy = g * Rat(y0), stay = diff + g * Rat(1 - y0);
  const Rat zero;
  auto v = [](int a, int b, int c, int d) { return Vec{Rat(a), Rat(b), Rat(c), Rat(d)}; };
  std::vector<Vec> ys;
  if (diff + std::min(zero, g) >= gy) ys.push_back(v(0, -1, 1, 0));  // P(Y2=0) <= P(Y1=0)
  if (diff + std::max(zero, g) <= gy) ys.push_back(v(0, 1, -1, 0));  // P(Y2=1) <= P(Y1=1)
  if (stay >= zero) ys.push_back(v(-1, -1, 1, 0));                    // P(Y1=1,Y2=0) <= P(Y1=0)
  if (diff >= gy) ys.push_back(v(0, -1, 0, 0));                       // P(Y1=0,Y2=0) <= P(Y1=0)
  if (stay <= zero) ys.push_back(v(0, 0, -1, 0));                     // P(Y1=1,Y2=1) <= P(Y1=1)
  if (diff <= gy) ys.push_back(v(0, 1, -1, -1));                      // P(Y1=0,Y2=1) <= P(Y1=1)
  return make_set(std::move(ys), 2, 2);
}

bool Pp2Family::holds(const Vec& p, AltSet A) const {
  const auto n = static_cast<std::size_t>(D);
  if (p.size() != n * n) throw ValidationError("probability vector has the wrong length");
  Rat total, first, both;
  for (std::size_t d1 = 0; d1 < n; ++d1)
    for (std::size_t d2 = 0; d2 < n; ++d2) {
      const Rat& x = p[d1 * n + d2];
      if (x.sign() < 0) throw ValidationError("probabilities must be nonnegative");
      total += x;
      if (has(A, static_cast<int>(d1))) {
        first += x;
        if (has(A, static_cast<int>(d2))) both += x;
      }
    }
  if (total != Rat(1)) throw ValidationError("probabilities must sum to 1");
  return both >= first * first;
}

bool Pp2Family::holds_all(const Vec& p) const {
  return std::all_of(sets.begin(), sets.end(), [&](AltSet A) { return holds(p, A); });
}

Pp2Family pp2_family(const ModelSpec& spec) {
  const DynLowerSets ls = dyn_lower_sets(spec);
  Pp2Family out;
  out.D = ls.D;
  const AltSet full = (AltSet(1) << ls.D) - 1;
  for (AltSet A = 1; A < full; ++A) {
    const AltSet comp = full & ~A;
    bool ok = true;
    for (int d = 0; d < ls.D && ok; ++d) {
      if (!has(A, d)) continue;
      const auto& L = ls.L[static_cast<std::size_t>(d)];
      ok = std::find(L.begin(), L.end(), comp) != L.end();
    }
    if (ok) out.sets.push_back(A);
  }
  return out;
}

Rat Ar2Deltas::first_second(int d1) const {
  return (v[1] + g1 * Rat(d1) + g2 * Rat(y0)) - (v[0] + g1 * Rat(y0) + g2 * Rat(y_minus1));
}

namespace {
Rat ar2_index(const Ar2Deltas& a, int t, int d1, int d2) {
  return a.v[static_cast<std::size_t>(t - 1)] + a.g1 * Rat(d1) + a.g2 * Rat(d2);
}
}  // namespace

Rat Ar2Deltas::first(int t, int d1, int d2) const {
  return ar2_index(*this, t, d1, d2) - (v[0] + g1 * Rat(y0) + g2 * Rat(y_minus1));
}

Rat Ar2Deltas::plus(int s, int t, int d1, int d2) const {
  const Rat zero;
  const Rat ref = s == 2 ? v[1] + std::max(g1, zero) + g2 * Rat(y0)
                         : v[static_cast<std::size_t>(s - 1)] + std::max(g1, zero) + std::max(g2, zero);
  return ar2_index(*this, t, d1, d2) - ref;
}

Rat Ar2Deltas::minus(int s, int t, int d1, int d2) const {
  const Rat zero;
  const Rat ref = s == 2 ? v[1] + std::min(g1, zero) + g2 * Rat(y0)
                         : v[static_cast<std::size_t>(s - 1)] + std::min(g1, zero) + std::min(g2, zero);
  return ar2_index(*this, t, d1, d2) - ref;
}

Ar2Deltas ar2_deltas(const ModelSpec& spec) {
  if (spec.family != Family::TwoLag) throw ValidationError("ar2 closed form needs the two-lag family");
  if (spec.T < 2 || spec.T > 16) throw ValidationError("ar2 closed form needs 2 <= T <= 16");
  if (spec.v.rows() != 2 || spec.v.cols() != static_cast<std::size_t>(spec.T)) throw ValidationError("v must be 2 x T");
  if ((spec.y0 != 0 && spec.y0 != 1) || (spec.y_minus1 != 0 && spec.y_minus1 != 1))
    throw ValidationError("initial conditions must be binary");
  Ar2Deltas a;
  for (int t = 0; t < spec.T; ++t) a.v.push_back(spec.v(1, static_cast<std::size_t>(t)) - spec.v(0, static_cast<std::size_t>(t)));
  a.g1 = spec.gamma1;
  a.g2 = spec.gamma2;
  a.y0 = spec.y0;
  a.y_minus1 = spec.y_minus1;
  return a;
}

IneqSet ar2_family(const ModelSpec& spec) {
  const Ar2Deltas a = ar2_deltas(spec);
  const int T = spec.T;
  const std::size_t n = ipow(2, T);
  // Choice in 1-based period t along outcome index i (period 1 is the most
  // significant bit).
  auto at = [&](std::size_t i, int t) { return static_cast<int>((i >> (T - t)) & 1U); };
  std::vector<Vec> ys;
  // Emits 1{lhs} - 1{Y_s = d}; lhs selects outcomes by their last choices.
  auto emit = [&](int s, int d, auto&& lhs) {
    Vec y(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (lhs(i)) {
        y[i] += Rat(1);
        any = true;
      }
      if (at(i, s) == d) y[i] -= Rat(1);
    }
    if (any) ys.push_back(std::move(y));
  };
  const Rat zero;
  emit(1, 0, [&](std::size_t i) { return at(i, 2) == 0 && a.first_second(at(i, 1)) >= zero; });
  emit(1, 1, [&](std::size_t i) { return at(i, 2) == 1 && a.first_second(at(i, 1)) <= zero; });
  for (int t = 3; t <= T; ++t) {
    auto last = [&, t](std::size_t i, int d, auto&& keep) { return at(i, t) == d && keep(at(i, t - 1), at(i, t - 2)); };
    emit(1, 0, [&](std::size_t i) { return last(i, 0, [&](int d1, int d2) { return a.first(t, d1, d2) >= zero; }); });
    emit(1, 1, [&](std::size_t i) { return last(i, 1, [&](int d1, int d2) { return a.first(t, d1, d2) <= zero; }); });
    for (int s = 2; s < t; ++s) {
      emit(s, 0, [&](std::size_t i) { return last(i, 0, [&](int d1, int d2) { return a.plus(s, t, d1, d2) >= zero; }); });
      emit(s, 1, [&](std::size_t i) { return last(i, 1, [&](int d1, int d2) { return a.minus(s, t, d1, d2) <= zero; }); });
    }
  }
  return make_set(std::move(ys), 2, T);
}

}  // namespace sharpset
