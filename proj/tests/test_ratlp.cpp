#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <optional>
#include <random>

#include "sharpset/lp.hpp"

using namespace sharpset;

namespace {

LinearProgram one_var(const std::vector<std::pair<long, long>>& rows) {
  LinearProgram lp;
  lp.A = Mat(0, 1);
  for (auto [a, b] : rows) lp.add_row({Rat(a)}, RowSense::Le, Rat(b));
  lp.objective = {Rat(0)};
  lp.lower.resize(1);
  lp.upper.resize(1);
  return lp;
}

bool feasible_point(const LinearProgram& lp, const Vec& x) {
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    Rat s;
    for (std::size_t j = 0; j < lp.cols(); ++j) s += lp.A(i, j) * x[j];
    if (lp.senses[i] == RowSense::Le ? s > lp.rhs[i] : s != lp.rhs[i]) return false;
  }
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    if (lp.lower[j] && x[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
  }
  return true;
}

// Independent 2-D oracle: the optimum of a bounded feasible 2-variable LP is
// attained at the intersection of two tight constraint lines.
std::optional<Rat> brute_force_2d(const LinearProgram& lp) {
  std::vector<std::array<Rat, 3>> lines;
  for (std::size_t i = 0; i < lp.rows(); ++i) lines.push_back({lp.A(i, 0), lp.A(i, 1), lp.rhs[i]});
  for (std::size_t j = 0; j < 2; ++j) {
    if (lp.lower[j]) lines.push_back({Rat(j == 0), Rat(j == 1), *lp.lower[j]});
    if (lp.upper[j]) lines.push_back({Rat(j == 0), Rat(j == 1), *lp.upper[j]});
  }
  std::optional<Rat> best;
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const Rat det = lines[a][0] * lines[b][1] - lines[a][1] * lines[b][0];
      if (det.is_zero()) continue;
      Vec x{(lines[a][2] * lines[b][1] - lines[a][1] * lines[b][2]) / det,
            (lines[a][0] * lines[b][2] - lines[a][2] * lines[b][0]) / det};
      if (!feasible_point(lp, x)) continue;
      Rat v = dot(lp.objective, x);
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(Rat::parse("7").str() == "7");
  CHECK(Rat::parse("-6/4").str() == "-3/2");
  CHECK(Rat::parse(" 3/2 ") == Rat(3, 2));
  CHECK_THROWS_AS(Rat::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK(Rat(-7, 2).floor() == Rat(-4));
  Mat m = parse_matrix("0,1/2;3,4");
  CHECK(m.rows() == 2);
  CHECK(m(0, 1) == Rat(1, 2));
}

TEST_CASE("max x s.t. x <= 3, x >= 0") {
  LinearProgram lp = one_var({{1, 3}});
  lp.objective = {Rat(1)};
  lp.lower[0] = Rat(0);
  LPResult r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.x[0] == Rat(3));
  CHECK(r.value == Rat(3));
  CHECK(r.duals[0] == Rat(1));
}

TEST_CASE("Farkas certificate for x <= 0, -x <= -1") {
  LinearProgram lp = one_var({{1, 0}, {-1, -1}});
  LPResult r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::Infeasible);
  CHECK(verify_farkas(lp, r));
  CHECK(r.certificate[0] == r.certificate[1]);
  CHECK(r.certificate[0].sign() > 0);
  CHECK(r.bound_certificate[0].is_zero());
  CHECK(dot(r.certificate, lp.rhs) / r.certificate[0] == Rat(-1));
}

TEST_CASE("unbounded problem returns a ray") {
  LinearProgram lp = one_var({{-1, 0}});
  lp.objective = {Rat(1)};
  LPResult r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::Unbounded);
  CHECK(r.certificate[0].sign() > 0);
}

TEST_CASE("equality rows and minimization") {
  // min x + y  s.t. x + y = 2, x - y <= 1, x,y >= 0
  LinearProgram lp;
  lp.A = Mat(0, 2);
  lp.add_row({Rat(1), Rat(1)}, RowSense::Eq, Rat(2));
  lp.add_row({Rat(1), Rat(-1)}, RowSense::Le, Rat(1));
  lp.objective = {Rat(1), Rat(1)};
  lp.direction = Direction::Min;
  lp.lower = {Rat(0), Rat(0)};
  lp.upper = {std::nullopt, std::nullopt};
  LPResult r = solve_lp(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rat(2));
  CHECK(feasible_point(lp, r.x));
}

TEST_CASE("structural errors") {
  LinearProgram lp(2, 2);
  lp.rhs.pop_back();
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}

TEST_CASE("strict feasibility") {
  // KPT all-ones patch at v1=0, v2=1, gamma=2: zeta below every threshold.
  Mat A(4, 1);
  for (int i = 0; i < 4; ++i) A(i, 0) = Rat(1);
  StrictResult s = strict_feasibility(A, {Rat(0), Rat(2), Rat(1), Rat(3)});
  CHECK(s.strictly_feasible);
  CHECK(s.witness[0] < Rat(0));

  Mat B(2, 1);
  B(0, 0) = Rat(1);
  B(1, 0) = Rat(-1);
  CHECK_FALSE(strict_feasibility(B, {Rat(0), Rat(0)}).strictly_feasible);

  // Static D=2, T=2 with dv1 = 0 < dv2 = 1: candidate (2,1) is empty.
  // zeta_2 - zeta_1 < v_11 - v_21 = 0 and zeta_1 - zeta_2 < v_22 - v_12 = -1.
  Mat C(2, 2);
  C(0, 0) = Rat(-1);
  C(0, 1) = Rat(1);
  C(1, 0) = Rat(1);
  C(1, 1) = Rat(-1);
  CHECK_FALSE(strict_feasibility(C, {Rat(0), Rat(-1)}).strictly_feasible);
  CHECK(strict_feasibility(C, {Rat(0), Rat(1)}).strictly_feasible);

  // Empty system is strictly feasible.
  CHECK(strict_feasibility(Mat(0, 3), {}).strictly_feasible);
}

TEST_CASE("binary feasibility") {
  LinearProgram lp;
  lp.A = Mat(0, 2);
  lp.add_row({Rat(1), Rat(1)}, RowSense::Eq, Rat(1));
  lp.objective = {Rat(0), Rat(0)};
  lp.lower = {Rat(0), Rat(0)};
  lp.upper = {Rat(1), Rat(1)};
  MilpResult r = solve_milp_feasibility(lp, {0, 1});
  REQUIRE(r.feasible);
  CHECK(r.point[0] + r.point[1] == Rat(1));
  CHECK((r.point[0] == Rat(1) || r.point[0] == Rat(0)));

  lp.rhs[0] = Rat(1, 2);
  CHECK_FALSE(solve_milp_feasibility(lp, {0, 1}).feasible);
}

TEST_CASE("random 2-D programs agree with the vertex oracle and with pure Bland") {
  std::mt19937_64 gen(12345);
  std::uniform_int_distribution<int> coef(-5, 5), rhs(-3, 8);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearProgram lp;
    lp.A = Mat(0, 2);
    const int rows = 1 + trial % 5;
    for (int i = 0; i < rows; ++i)
      lp.add_row({Rat(coef(gen)), Rat(coef(gen))}, trial % 7 == 0 && i == 0 ? RowSense::Eq : RowSense::Le,
                 Rat(rhs(gen)));
    lp.objective = {Rat(coef(gen)), Rat(coef(gen))};
    lp.lower = {Rat(-4), std::optional<Rat>(Rat(-3))};
    lp.upper = {Rat(4), std::optional<Rat>(Rat(5))};
    LPResult r = solve_lp(lp);
    LPResult b = solve_lp(lp, {PivotRule::Bland, 0});
    REQUIRE(r.status == b.status);
    auto oracle = brute_force_2d(lp);
    if (r.status == LPStatus::Optimal) {
      ++optimal;
      REQUIRE(oracle);
      CHECK(r.value == *oracle);
      CHECK(b.value == *oracle);
      CHECK(feasible_point(lp, r.x));
      CHECK(dot(lp.objective, r.x) == r.value);
    } else {
      REQUIRE(r.status == LPStatus::Infeasible);
      CHECK_FALSE(oracle);
      CHECK(verify_farkas(lp, r));
    }
  }
  CHECK(optimal > 50);
}

TEST_CASE("solve_lp is deterministic") {
  LinearProgram lp;
  lp.A = Mat(0, 3);
  lp.add_row({Rat(1), Rat(1), Rat(1)}, RowSense::Le, Rat(1));
  lp.add_row({Rat(1), Rat(-1), Rat(0)}, RowSense::Le, Rat(0));
  lp.objective = {Rat(1), Rat(1), Rat(1)};
  lp.lower = {Rat(0), Rat(0), Rat(0)};
  lp.upper.assign(3, std::nullopt);
  LPResult a = solve_lp(lp), b = solve_lp(lp);
  CHECK(a.x == b.x);
  CHECK(a.value == Rat(1));
}

TEST_CASE("reoptimize keeps the feasible region") {
  LinearProgram lp;
  lp.A = Mat(0, 2);
  lp.add_row({Rat(1), Rat(1)}, RowSense::Le, Rat(1));
  lp.objective = {Rat(1), Rat(0)};
  lp.lower = {Rat(0), Rat(0)};
  lp.upper.assign(2, std::nullopt);
  Simplex s(lp);
  CHECK(s.solve().x == Vec{Rat(1), Rat(0)});
  CHECK(s.reoptimize({Rat(0), Rat(1)}, Direction::Max).x == Vec{Rat(0), Rat(1)});
  CHECK(s.reoptimize({Rat(1), Rat(1)}, Direction::Min).value == Rat(0));
}
