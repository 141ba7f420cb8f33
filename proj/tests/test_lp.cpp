#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "dcm/lp.hpp"
#include "dcm/rational.hpp"

using namespace dcm;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: convert the program to equality form with slack
// variables, enumerate every basis (square column subset), solve the linear
// system exactly, and keep the best feasible basic solution. All variables
// non-negative and the feasible region is kept bounded by construction, so
// a nonempty region always contains a vertex and the optimum is attained at
// one.
// ---------------------------------------------------------------------------

struct DenseLp {
  // maximize c.x subject to A x <= b, x >= 0 (b may be negative)
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;  // singular
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const Rational inv = m[col][col];
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational factor = m[r][col] / inv;
      for (int k = col; k < n; ++k) m[r][k] -= factor * m[col][k];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (int r = 0; r < n; ++r) x[r] = rhs[r] / m[r][r];
  return x;
}

struct OracleResult {
  bool feasible = false;
  Rational value;
};

OracleResult brute_force(const DenseLp& lp) {
  const int rows = static_cast<int>(lp.b.size());
  const int n = static_cast<int>(lp.c.size());
  const int total = n + rows;  // structural + one slack per row

  OracleResult best;
  std::vector<int> basis;
  const auto consider = [&]() {
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(rows));
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < rows; ++k) {
        const int col = basis[k];
        m[r][k] = col < n ? lp.a[r][col] : Rational(r == col - n ? 1 : 0);
      }
    const auto sol = solve_square(m, lp.b);
    if (!sol) return;
    for (const auto& v : *sol)
      if (v < 0) return;
    Rational value(0);
    for (int k = 0; k < rows; ++k)
      if (basis[k] < n) value += lp.c[basis[k]] * (*sol)[k];
    if (!best.feasible || value > best.value) {
      best.feasible = true;
      best.value = value;
    }
  };
  // enumerate all C(total, rows) bases
  std::vector<int> idx(rows);
  for (int i = 0; i < rows; ++i) idx[i] = i;
  for (;;) {
    basis = idx;
    consider();
    int pos = rows - 1;
    while (pos >= 0 && idx[pos] == total - rows + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int k = pos + 1; k < rows; ++k) idx[k] = idx[k - 1] + 1;
  }
  return best;
}

LpProblem to_problem(const DenseLp& lp) {
  LpProblem p;
  const int n = static_cast<int>(lp.c.size());
  for (int v = 0; v < n; ++v) p.add_variable("x" + std::to_string(v));
  for (size_t r = 0; r < lp.b.size(); ++r) {
    LinearForm row;
    for (int v = 0; v < n; ++v)
      if (lp.a[r][v] != 0) row[v] = lp.a[r][v];
    p.add_constraint(std::move(row), Relation::LessEq, lp.b[r]);
  }
  LinearForm obj;
  for (int v = 0; v < n; ++v)
    if (lp.c[v] != 0) obj[v] = lp.c[v];
  p.set_objective(Sense::Maximize, std::move(obj));
  return p;
}

DenseLp random_lp(std::mt19937_64& rng, int n_vars, int n_rows) {
  const auto coin = [&rng](long lo, long hi) {
    return static_cast<long>(rng() % static_cast<unsigned long long>(hi - lo + 1)) + lo;
  };
  DenseLp lp;
  lp.c.resize(n_vars);
  for (auto& v : lp.c) v = rat(coin(-5, 5));
  lp.a.assign(n_rows, std::vector<Rational>(n_vars));
  lp.b.resize(n_rows);
  for (int r = 0; r + 1 < n_rows; ++r) {
    for (auto& v : lp.a[r]) v = rat(coin(-4, 4), coin(1, 3));
    lp.b[r] = rat(coin(-6, 10), coin(1, 2));
  }
  // last row bounds the region: sum x <= B, keeping every instance bounded
  for (auto& v : lp.a[n_rows - 1]) v = rat(1);
  lp.b[n_rows - 1] = rat(coin(1, 12));
  return lp;
}

}  // namespace

TEST_CASE("simplex matches brute-force basis enumeration on random programs") {
  std::mt19937_64 rng(20240817);
  int checked = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n_vars = 2 + static_cast<int>(rng() % 3);   // 2..4
    const int n_rows = 2 + static_cast<int>(rng() % 7);   // 2..8
    const DenseLp lp = random_lp(rng, n_vars, n_rows);
    const OracleResult expected = brute_force(lp);
    const LpOutcome got = solve(to_problem(lp));
    CAPTURE(trial);
    if (!expected.feasible) {
      CHECK(got.status == LpOutcome::Status::Infeasible);
      ++infeasible_seen;
    } else {
      REQUIRE(got.status == LpOutcome::Status::Optimal);
      CHECK(got.value == expected.value);
    }
    ++checked;
  }
  CHECK(checked == 120);
  CHECK(infeasible_seen > 0);  // the corpus exercises both statuses
}

TEST_CASE("simplex handles equalities, minimization, and free variables") {
  SUBCASE("equality-constrained minimum") {
    LpProblem p;
    p.add_variable("x");
    p.add_variable("y");
    p.add_constraint({{0, rat(1)}, {1, rat(1)}}, Relation::Equal, rat(4));
    p.add_constraint({{0, rat(1)}}, Relation::LessEq, rat(3));
    p.set_objective(Sense::Minimize, {{0, rat(2)}, {1, rat(1)}});
    const auto out = solve(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.value == rat(4));  // x = 0, y = 4
    CHECK(out.point[0] == rat(0));
    CHECK(out.point[1] == rat(4));
  }
  SUBCASE("free variable goes negative") {
    LpProblem p;
    p.add_variable("x", /*free=*/true);
    p.add_constraint({{0, rat(1)}}, Relation::GreaterEq, rat(-7, 2));
    p.set_objective(Sense::Minimize, {{0, rat(1)}});
    const auto out = solve(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.value == rat(-7, 2));
  }
  SUBCASE("unbounded program") {
    LpProblem p;
    p.add_variable("x");
    p.set_objective(Sense::Maximize, {{0, rat(1)}});
    const auto out = solve(p);
    CHECK(out.status == LpOutcome::Status::Unbounded);
  }
  SUBCASE("infeasible program") {
    LpProblem p;
    p.add_variable("x");
    p.add_constraint({{0, rat(1)}}, Relation::GreaterEq, rat(2));
    p.add_constraint({{0, rat(1)}}, Relation::LessEq, rat(1));
    p.set_objective(Sense::Maximize, {{0, rat(1)}});
    CHECK(solve(p).status == LpOutcome::Status::Infeasible);
    CHECK_FALSE(feasible(p));
  }
  SUBCASE("degenerate program does not cycle") {
    // classic Beale-style degeneracy; Bland's rule must terminate
    LpProblem p;
    for (int v = 0; v < 4; ++v) p.add_variable("x" + std::to_string(v));
    p.add_constraint({{0, rat(1, 4)}, {1, rat(-8)}, {2, rat(-1)}, {3, rat(9)}},
                     Relation::LessEq, rat(0));
    p.add_constraint({{0, rat(1, 2)}, {1, rat(-12)}, {2, rat(-1, 2)}, {3, rat(3)}},
                     Relation::LessEq, rat(0));
    p.add_constraint({{2, rat(1)}}, Relation::LessEq, rat(1));
    p.set_objective(Sense::Maximize,
                    {{0, rat(3, 4)}, {1, rat(-20)}, {2, rat(1, 2)}, {3, rat(-6)}});
    const auto out = solve(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.value == rat(5, 4));
  }
}

TEST_CASE("exact arithmetic survives adversarial denominators") {
  LpProblem p;
  p.add_variable("x");
  p.add_variable("y");
  p.add_constraint({{0, rat(1, 3)}, {1, rat(1, 7)}}, Relation::LessEq, rat(1));
  p.add_constraint({{0, rat(1, 11)}, {1, rat(1, 13)}}, Relation::LessEq, rat(1, 2));
  p.set_objective(Sense::Maximize, {{0, rat(1)}, {1, rat(1)}});
  const auto out = solve(p);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  // vertex of the two constraint lines
  const Rational x = out.point[0], y = out.point[1];
  CHECK(rat(1, 3) * x + rat(1, 7) * y <= rat(1));
  CHECK(rat(1, 11) * x + rat(1, 13) * y <= rat(1, 2));
  CHECK(out.value == x + y);
  CHECK(out.value == rat(13, 2));  // vertex (0, 13/2): genuinely fractional
}
