#include "dcm/lp.hpp"

#include <cassert>

#include "dcm/errors.hpp"

namespace dcm {

int LpProblem::add_variable(const std::string& name, bool free) {
  free_.push_back(free);
  names_.push_back(name.empty() ? "x" + std::to_string(free_.size() - 1) : name);
  return static_cast<int>(free_.size()) - 1;
}

void LpProblem::add_constraint(LinearForm form, Relation rel, Rational rhs) {
  for (const auto& [v, coef] : form) {
    (void)coef;
    if (v < 0 || v >= num_vars())
      throw ContractError("constraint references undeclared variable");
  }
  constraints_.push_back({std::move(form), rel, std::move(rhs)});
}

void LpProblem::set_objective(Sense sense, LinearForm form) {
  for (const auto& [v, coef] : form) {
    (void)coef;
    if (v < 0 || v >= num_vars())
      throw ContractError("objective references undeclared variable");
  }
  sense_ = sense;
  objective_ = std::move(form);
}

namespace {

// Dense two-phase tableau simplex. Columns: split structural variables,
// then slacks/surpluses, then artificials; rhs kept separately.
struct Tableau {
  std::vector<std::vector<Rational>> rows;  // m x ncols
  std::vector<Rational> rhs;                // m
  std::vector<int> basis;                   // m, column index basic in each row
  int ncols = 0;

  void pivot(int r, int c) {
    const Rational piv = rows[r][c];
    for (auto& v : rows[r]) v /= piv;
    rhs[r] /= piv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const Rational factor = rows[i][c];
      if (factor == 0) continue;
      for (int j = 0; j < ncols; ++j)
        if (rows[r][j] != 0) rows[i][j] -= factor * rows[r][j];
      rhs[i] -= factor * rhs[r];
    }
    basis[r] = c;
  }
};

enum class RunStatus { Optimal, Unbounded };

// Maximizes c.x with Bland's rule; `allowed` masks columns that may enter.
RunStatus run_simplex(Tableau& tab, const std::vector<Rational>& cost,
                      const std::vector<bool>& allowed) {
  const int m = static_cast<int>(tab.rows.size());
  for (;;) {
    // Bland: entering column is the lowest-index one with positive reduced cost.
    int enter = -1;
    for (int j = 0; j < tab.ncols && enter < 0; ++j) {
      if (!allowed[j]) continue;
      Rational rc = cost[j];
      for (int i = 0; i < m; ++i) {
        const Rational& cb = cost[tab.basis[i]];
        if (cb != 0 && tab.rows[i][j] != 0) rc -= cb * tab.rows[i][j];
      }
      if (rc > 0) enter = j;
    }
    if (enter < 0) return RunStatus::Optimal;

    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (tab.rows[i][enter] <= 0) continue;
      Rational ratio = tab.rhs[i] / tab.rows[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && tab.basis[i] < tab.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return RunStatus::Unbounded;
    tab.pivot(leave, enter);
  }
}

struct Prepared {
  Tableau tab;
  std::vector<int> pos_col, neg_col;  // structural columns per declared var
  int nstruct = 0;
  int first_artificial = 0;           // columns >= this are artificial
  bool has_artificial = false;
};

Prepared build_tableau(const LpProblem& p) {
  Prepared prep;
  const int n = p.num_vars();
  prep.pos_col.assign(n, -1);
  prep.neg_col.assign(n, -1);
  int ncols = 0;
  for (int v = 0; v < n; ++v) prep.pos_col[v] = ncols++;
  for (int v = 0; v < n; ++v)
    if (p.is_free(v)) prep.neg_col[v] = ncols++;
  prep.nstruct = ncols;

  // Normalize rows to nonnegative rhs, then count slack/artificial columns.
  struct Row {
    std::vector<Rational> a;
    Relation rel;
    Rational b;
  };
  std::vector<Row> rows;
  rows.reserve(p.constraints().size());
  for (const auto& c : p.constraints()) {
    Row row{std::vector<Rational>(ncols, Rational(0)), c.relation, c.rhs};
    for (const auto& [v, coef] : c.form) {
      row.a[prep.pos_col[v]] += coef;
      if (prep.neg_col[v] >= 0) row.a[prep.neg_col[v]] -= coef;
    }
    if (row.b < 0) {
      for (auto& v : row.a) v = -v;
      row.b = -row.b;
      if (row.rel == Relation::LessEq)
        row.rel = Relation::GreaterEq;
      else if (row.rel == Relation::GreaterEq)
        row.rel = Relation::LessEq;
    }
    rows.push_back(std::move(row));
  }

  int n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++n_slack;
    if (r.rel != Relation::LessEq) ++n_art;
  }
  const int total = ncols + n_slack + n_art;
  prep.first_artificial = ncols + n_slack;
  prep.has_artificial = n_art > 0;

  Tableau& tab = prep.tab;
  tab.ncols = total;
  int slack_at = ncols;
  int art_at = prep.first_artificial;
  for (const auto& r : rows) {
    std::vector<Rational> row(total, Rational(0));
    for (int j = 0; j < ncols; ++j) row[j] = r.a[j];
    int basic = -1;
    if (r.rel == Relation::LessEq) {
      row[slack_at] = 1;
      basic = slack_at++;
    } else if (r.rel == Relation::GreaterEq) {
      row[slack_at] = -1;
      ++slack_at;
    }
    if (r.rel != Relation::LessEq) {
      row[art_at] = 1;
      basic = art_at++;
    }
    tab.rows.push_back(std::move(row));
    tab.rhs.push_back(r.b);
    tab.basis.push_back(basic);
  }
  return prep;
}

// Runs phase 1; returns false when the problem is infeasible. On success all
// artificial columns are nonbasic (redundant rows are dropped).
bool phase_one(Prepared& prep) {
  if (!prep.has_artificial) return true;
  Tableau& tab = prep.tab;
  std::vector<Rational> cost(tab.ncols, Rational(0));
  for (int j = prep.first_artificial; j < tab.ncols; ++j) cost[j] = -1;
  std::vector<bool> allowed(tab.ncols, true);
  const RunStatus st = run_simplex(tab, cost, allowed);
  assert(st == RunStatus::Optimal);  // phase-1 objective is bounded above by 0
  (void)st;

  Rational art_mass(0);
  for (size_t i = 0; i < tab.rows.size(); ++i)
    if (tab.basis[i] >= prep.first_artificial) art_mass += tab.rhs[i];
  if (art_mass != 0) return false;

  // Drive residual (zero-valued) artificials out of the basis.
  for (size_t i = 0; i < tab.rows.size();) {
    if (tab.basis[i] < prep.first_artificial) {
      ++i;
      continue;
    }
    int enter = -1;
    for (int j = 0; j < prep.first_artificial && enter < 0; ++j)
      if (tab.rows[i][j] != 0) enter = j;
    if (enter >= 0) {
      tab.pivot(static_cast<int>(i), enter);
      ++i;
    } else {
      // Redundant row: all structural and slack coefficients are zero.
      tab.rows.erase(tab.rows.begin() + i);
      tab.rhs.erase(tab.rhs.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
    }
  }
  return true;
}

}  // namespace

LpOutcome solve(const LpProblem& p) {
  Prepared prep = build_tableau(p);
  if (!phase_one(prep))
    return {LpOutcome::Status::Infeasible, Rational(0), {}};

  Tableau& tab = prep.tab;
  const Rational sign = p.sense() == Sense::Maximize ? Rational(1) : Rational(-1);
  std::vector<Rational> cost(tab.ncols, Rational(0));
  for (const auto& [v, coef] : p.objective()) {
    cost[prep.pos_col[v]] += sign * coef;
    if (prep.neg_col[v] >= 0) cost[prep.neg_col[v]] -= sign * coef;
  }
  std::vector<bool> allowed(tab.ncols, true);
  for (int j = prep.first_artificial; j < tab.ncols; ++j) allowed[j] = false;

  if (run_simplex(tab, cost, allowed) == RunStatus::Unbounded)
    return {LpOutcome::Status::Unbounded, Rational(0), {}};

  std::vector<Rational> col_value(tab.ncols, Rational(0));
  for (size_t i = 0; i < tab.rows.size(); ++i) col_value[tab.basis[i]] = tab.rhs[i];
  LpOutcome out{LpOutcome::Status::Optimal, Rational(0),
                std::vector<Rational>(p.num_vars(), Rational(0))};
  for (int v = 0; v < p.num_vars(); ++v) {
    out.point[v] = col_value[prep.pos_col[v]];
    if (prep.neg_col[v] >= 0) out.point[v] -= col_value[prep.neg_col[v]];
  }
  for (const auto& [v, coef] : p.objective()) out.value += coef * out.point[v];

#ifndef NDEBUG
  // Exactness audit: the returned point must satisfy every constraint.
  for (const auto& c : p.constraints()) {
    Rational lhs(0);
    for (const auto& [v, coef] : c.form) lhs += coef * out.point[v];
    switch (c.relation) {
      case Relation::LessEq: assert(lhs <= c.rhs); break;
      case Relation::GreaterEq: assert(lhs >= c.rhs); break;
      case Relation::Equal: assert(lhs == c.rhs); break;
    }
  }
  for (int v = 0; v < p.num_vars(); ++v)
    assert(p.is_free(v) || out.point[v] >= 0);
#endif
  return out;
}

bool feasible(const LpProblem& p) {
  Prepared prep = build_tableau(p);
  return phase_one(prep);
}

}  // namespace dcm
