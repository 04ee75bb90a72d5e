#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sharpset/discretize.hpp"
#include "sharpset/reduce.hpp"

namespace sharpset {

// Analytic inequality families. Every generator returns vectors y over the
// outcome tuples of its model, in the same order and with the same labels as
// build_model, so that y'p <= 0 is the inequality.

// Outcome labels "p[..]" for D alternatives over T periods.
std::vector<std::string> outcome_labels(int D, int T);

// Binary two-period model; sign is the sign of the first-period index minus
// the second-period index.
IneqSet cm_inequalities(int sign);

// Alternatives ranked by decreasing index difference. Ties are refused: the
// families below fix an arbitrary order among tied alternatives, and the
// solver is the authority in that case.
struct RankedAlternatives {
  Vec dv;
  std::vector<int> order;  // order[i] = alternative with the (i+1)-th largest dv

  explicit RankedAlternatives(Vec differences);
  int D() const { return static_cast<int>(dv.size()); }
  std::vector<int> upper(int i) const;  // U_i, 1 <= i <= D
  std::vector<int> lower(int j) const;  // L_j, 1 <= j <= D
};

// Cells of a D x D grid, row-major over (first-period, second-period)
// alternative.
using Grid = std::vector<char>;

// A = union of U_k x L_k' over the listed rank pairs (k, k').
struct StaircaseSet {
  std::vector<std::pair<int, int>> products;

  Grid cells(const RankedAlternatives& r) const;
  // per(A) = union of L_k' x U_k.
  Grid per_cells(const RankedAlternatives& r) const;
};

// All members of the family, one per non-decreasing rank sequence
// i_1 <= ... <= i_m (1 <= m <= D), each as the union of U_d x L_{i_d}.
std::vector<StaircaseSet> staircase_sets(int D);

IneqSet pp_static_inequalities(const RankedAlternatives& ranked);
IneqSet exchangeable_family(const RankedAlternatives& ranked);

// Subsets of alternatives as bit masks over 0-based indices.
using AltSet = std::uint32_t;

struct DynLowerSets {
  int D = 0;
  Mat delta;                           // delta(d, d1)
  std::vector<std::vector<AltSet>> L;  // L[d1]: lower sets of delta(., d1)
  std::vector<AltSet> family;          // union over d1, increasing

  // Union of the members of L[d] contained in A (possibly empty).
  AltSet B(int d, AltSet A) const;
};

// Two-period conditional dynamic model (one lag, D >= 2). Ties allowed.
DynLowerSets dyn_lower_sets(const ModelSpec& spec);
IneqSet dynamic_family(const ModelSpec& spec);

// Binary dynamic model in index form with a_t = v_{1t} - v_{0t} and lag
// coefficient g: the six literature inequalities whose guards hold.
IneqSet kpt_family(const Rat& a1, const Rat& a2, const Rat& g, int y0);

// Nonlinear inequalities P(Y1 in A, Y2 in A) >= P(Y1 in A)^2 for the sets
// A whose complement is a lower set for every state in A.
struct Pp2Family {
  int D = 0;
  std::vector<AltSet> sets;
  // p over the D x D outcome pairs; must be a probability vector.
  bool holds(const Vec& p, AltSet A) const;
  bool holds_all(const Vec& p) const;
};
Pp2Family pp2_family(const ModelSpec& spec);

// Binary two-lag model; periods and states follow the displayed formulas:
// t, s are 1-based periods, d1 = d_{t-1}, d2 = d_{t-2}.
struct Ar2Deltas {
  Vec v;  // v_1..v_T
  Rat g1, g2;
  int y0 = 0, y_minus1 = 0;

  Rat first_second(int d1) const;
  Rat first(int t, int d1, int d2) const;
  Rat plus(int s, int t, int d1, int d2) const;
  Rat minus(int s, int t, int d1, int d2) const;
};
Ar2Deltas ar2_deltas(const ModelSpec& spec);
IneqSet ar2_family(const ModelSpec& spec);

}  // namespace sharpset
