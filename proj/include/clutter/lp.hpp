#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "clutter/rational.hpp"

namespace clutter {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

// A linear program in row form. Variables are >= 0 unless marked free.
struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> lhs;
  std::vector<Relation> rel;
  std::vector<Rational> rhs;
  std::vector<char> free_var;  // empty means none

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(lhs.size()); }

  void check() const {
    if (lhs.size() != rel.size() || lhs.size() != rhs.size())
      throw std::invalid_argument("LinearProgram: row count mismatch");
    for (const auto& row : lhs)
      if (static_cast<int>(row.size()) != num_vars())
        throw std::invalid_argument("LinearProgram: row width mismatch");
    if (!free_var.empty() && static_cast<int>(free_var.size()) != num_vars())
      throw std::invalid_argument("LinearProgram: free_var size mismatch");
  }

  bool is_free(int j) const { return !free_var.empty() && free_var[j]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

// Exact primal and dual certificates. When status is optimal:
//   * primal is feasible and objective . primal == value;
//   * dual has one multiplier per row with rhs . dual == value, and
//       minimize:  sum_i dual_i lhs_i <= objective (== on free columns),
//                  dual_i >= 0 on >= rows, <= 0 on <= rows, free on == rows;
//       maximize:  sum_i dual_i lhs_i >= objective (== on free columns),
//                  dual_i >= 0 on <= rows, <= 0 on >= rows, free on == rows.
// verify_certificates re-checks all of this from scratch; solve() runs it
// before returning, so an optimal result is always a proved one.
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
};

inline bool verify_certificates(const LinearProgram& lp, const LpResult& res) {
  if (res.status != LpStatus::optimal) return true;
  const int n = lp.num_vars(), m = lp.num_rows();
  if (static_cast<int>(res.primal.size()) != n || static_cast<int>(res.dual.size()) != m)
    return false;
  for (int j = 0; j < n; ++j)
    if (!lp.is_free(j) && res.primal[j] < 0) return false;
  Rational obj = 0;
  for (int j = 0; j < n; ++j) obj += lp.objective[j] * res.primal[j];
  if (obj != res.value) return false;
  for (int i = 0; i < m; ++i) {
    Rational act = 0;
    for (int j = 0; j < n; ++j) act += lp.lhs[i][j] * res.primal[j];
    if (lp.rel[i] == Relation::less_equal && act > lp.rhs[i]) return false;
    if (lp.rel[i] == Relation::greater_equal && act < lp.rhs[i]) return false;
    if (lp.rel[i] == Relation::equal && act != lp.rhs[i]) return false;
  }
  const bool maxing = lp.sense == Sense::maximize;
  for (int i = 0; i < m; ++i) {
    const Rational& y = res.dual[i];
    if (lp.rel[i] == Relation::less_equal && (maxing ? y < 0 : y > 0)) return false;
    if (lp.rel[i] == Relation::greater_equal && (maxing ? y > 0 : y < 0)) return false;
  }
  for (int j = 0; j < n; ++j) {
    Rational combo = 0;
    for (int i = 0; i < m; ++i) combo += res.dual[i] * lp.lhs[i][j];
    if (lp.is_free(j)) {
      if (combo != lp.objective[j]) return false;
    } else if (maxing ? combo < lp.objective[j] : combo > lp.objective[j]) {
      return false;
    }
  }
  Rational dual_obj = 0;
  for (int i = 0; i < m; ++i) dual_obj += res.dual[i] * lp.rhs[i];
  return dual_obj == res.value;
}

namespace detail {

// Unique solution of a square exact system, or nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int pr = -1;
    for (int i = k; i < n && pr < 0; ++i)
      if (a[i][k] != 0) pr = i;
    if (pr < 0) return std::nullopt;
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    Rational piv = a[k][k];
    for (int j = k; j < n; ++j) a[k][j] /= piv;
    b[k] /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  return b;
}

inline int matrix_rank(std::vector<std::vector<Rational>> a) {
  if (a.empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pr = -1;
    for (int i = rank; i < rows && pr < 0; ++i)
      if (a[i][c] != 0) pr = i;
    if (pr < 0) continue;
    std::swap(a[rank], a[pr]);
    Rational piv = a[rank][c];
    for (int j = c; j < cols; ++j) a[rank][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Two-phase primal simplex over exact rationals with Bland's pivot rule
// (lowest eligible entering index; ties in the ratio test broken by lowest
// basic index). Deterministic: identical inputs produce identical pivot
// sequences, so primal/dual vectors are reproducible run to run.
inline LpResult solve(const LinearProgram& lp) {
  lp.check();
  const int n = lp.num_vars(), m = lp.num_rows();
  const bool maxing = lp.sense == Sense::maximize;

  // Standardize: minimize, equalities, all variables >= 0, rhs >= 0.
  // Free variables split into positive and negative parts.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = ncols++;
    if (lp.is_free(j)) neg_col[j] = ncols++;
  }
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (lp.rel[i] != Relation::equal) slack_col[i] = ncols++;
  const int nreal = ncols;

  std::vector<Rational> cost(nreal, Rational(0));
  for (int j = 0; j < n; ++j) {
    Rational cj = maxing ? -lp.objective[j] : lp.objective[j];
    cost[pos_col[j]] = cj;
    if (neg_col[j] >= 0) cost[neg_col[j]] = -cj;
  }

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(nreal, Rational(0)));
  std::vector<Rational> b(m);
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][pos_col[j]] = lp.lhs[i][j];
      if (neg_col[j] >= 0) a[i][neg_col[j]] = -lp.lhs[i][j];
    }
    if (slack_col[i] >= 0)
      a[i][slack_col[i]] = lp.rel[i] == Relation::less_equal ? Rational(1) : Rational(-1);
    b[i] = lp.rhs[i];
    if (b[i] < 0) {
      row_sign[i] = -1;
      for (auto& x : a[i]) x = -x;
      b[i] = -b[i];
    }
  }
  // Keep a pristine copy for the dual solve at the end.
  const std::vector<std::vector<Rational>> a0 = a;
  const std::vector<Rational> cost0 = cost;

  // Tableau with one artificial per row; artificial columns are dropped as
  // they leave the basis, and redundant rows are dropped after phase 1.
  const int total = nreal + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, Rational(0)));
  std::vector<int> basis(m);
  std::vector<char> live(total, 1);
  std::vector<int> orig_row(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nreal; ++j) t[i][j] = a[i][j];
    t[i][nreal + i] = 1;
    t[i][total] = b[i];
    basis[i] = nreal + i;
    orig_row[i] = i;
  }

  int rows = m;
  auto pivot = [&](std::vector<Rational>& z, int pr, int pc) {
    Rational piv = t[pr][pc];
    for (int j = 0; j <= total; ++j)
      if (t[pr][j] != 0) t[pr][j] /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == pr || t[i][pc] == 0) continue;
      Rational f = t[i][pc];
      for (int j = 0; j <= total; ++j)
        if (t[pr][j] != 0) t[i][j] -= f * t[pr][j];
    }
    if (z[pc] != 0) {
      Rational f = z[pc];
      for (int j = 0; j <= total; ++j)
        if (t[pr][j] != 0) z[j] -= f * t[pr][j];
    }
    if (basis[pr] >= nreal) live[basis[pr]] = 0;  // artificial never re-enters
    basis[pr] = pc;
  };

  // Returns false when the phase detected an unbounded direction.
  auto run_phase = [&](std::vector<Rational>& z, bool allow_artificial) {
    long long safety = 0;
    for (;;) {
      if (++safety > 2000000) throw std::logic_error("simplex: iteration cap hit");
      int enter = -1;
      int limit = allow_artificial ? total : nreal;
      for (int j = 0; j < limit; ++j)
        if (live[j] && z[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][total] / t[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(z, leave, enter);
    }
  };

  // Phase 1: minimize the artificial sum, priced out against the identity
  // basis: z1[j] = sum of artificial costs minus column sums.
  std::vector<Rational> z1(total + 1, Rational(0));
  for (int j = nreal; j < total; ++j) z1[j] = 1;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j <= total; ++j)
      if (t[i][j] != 0) z1[j] -= t[i][j];
  if (!run_phase(z1, false)) throw std::logic_error("simplex: phase 1 unbounded");
  if (-z1[total] > 0) return LpResult{LpStatus::infeasible, Rational(0), {}, {}};

  // Drive leftover artificials out of the basis; an all-zero row is
  // redundant and removed (its dual multiplier will be zero).
  for (int i = rows - 1; i >= 0; --i) {
    if (basis[i] < nreal) continue;
    int pc = -1;
    for (int j = 0; j < nreal && pc < 0; ++j)
      if (live[j] && t[i][j] != 0) pc = j;
    if (pc >= 0) {
      pivot(z1, i, pc);
    } else {
      live[basis[i]] = 0;
      t.erase(t.begin() + i);
      basis.erase(basis.begin() + i);
      orig_row.erase(orig_row.begin() + i);
      --rows;
    }
  }
  for (int j = nreal; j < total; ++j) live[j] = 0;

  // Phase 2 with the true costs priced out against the current basis.
  std::vector<Rational> z2(total + 1, Rational(0));
  for (int j = 0; j < nreal; ++j) z2[j] = cost0[j];
  for (int i = 0; i < rows; ++i) {
    if (cost0[basis[i]] == 0) continue;
    Rational f = cost0[basis[i]];
    for (int j = 0; j <= total; ++j)
      if (t[i][j] != 0) z2[j] -= f * t[i][j];
  }
  if (!run_phase(z2, false)) return LpResult{LpStatus::unbounded, Rational(0), {}, {}};

  // Read the primal solution back through the variable mapping.
  std::vector<Rational> xstd(nreal, Rational(0));
  for (int i = 0; i < rows; ++i)
    if (basis[i] < nreal) xstd[basis[i]] = t[i][total];
  LpResult res;
  res.status = LpStatus::optimal;
  res.primal.assign(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    res.primal[j] = xstd[pos_col[j]];
    if (neg_col[j] >= 0) res.primal[j] -= xstd[neg_col[j]];
  }
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += lp.objective[j] * res.primal[j];

  // Dual: solve B^T u = c_B against the pristine standardized columns of
  // the surviving rows, then undo row negation and the sense flip.
  {
    const int k = rows;
    std::vector<std::vector<Rational>> bt(k, std::vector<Rational>(k));
    std::vector<Rational> cb(k);
    for (int i = 0; i < k; ++i) {
      cb[i] = cost0[basis[i]];
      for (int r = 0; r < k; ++r) bt[i][r] = a0[orig_row[r]][basis[i]];
    }
    auto u = detail::solve_square(std::move(bt), std::move(cb));
    if (!u) throw std::logic_error("simplex: singular basis");
    res.dual.assign(m, Rational(0));
    for (int r = 0; r < k; ++r) {
      Rational y = (*u)[r] * row_sign[orig_row[r]];
      res.dual[orig_row[r]] = maxing ? -y : y;
    }
  }
  if (!verify_certificates(lp, res)) throw std::logic_error("simplex: certificate check failed");
  return res;
}

// Extremum of one coordinate over the feasible region of `lp` intersected
// with extra equality constraints (each a (row, rhs) pair). The objective
// and sense of `lp` itself are ignored.
inline LpResult maximize_coordinate(
    const LinearProgram& lp,
    const std::vector<std::pair<std::vector<Rational>, Rational>>& fixed_value_constraints,
    int coordinate, Sense sense) {
  if (coordinate < 0 || coordinate >= lp.num_vars())
    throw std::out_of_range("maximize_coordinate: bad coordinate");
  LinearProgram face = lp;
  face.sense = sense;
  face.objective.assign(lp.num_vars(), Rational(0));
  face.objective[coordinate] = 1;
  for (const auto& [row, value] : fixed_value_constraints) {
    if (static_cast<int>(row.size()) != lp.num_vars())
      throw std::invalid_argument("maximize_coordinate: constraint width mismatch");
    face.lhs.push_back(row);
    face.rel.push_back(Relation::equal);
    face.rhs.push_back(value);
  }
  return solve(face);
}

// Dimension of the affine hull: rank of the difference vectors against the
// first point.
inline int affine_rank(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) throw std::invalid_argument("affine_rank: empty point list");
  const int d = static_cast<int>(points[0].size());
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != d)
      throw std::invalid_argument("affine_rank: ragged points");
    std::vector<Rational> row(d);
    for (int j = 0; j < d; ++j) row[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(row));
  }
  return detail::matrix_rank(std::move(diffs));
}

// Convex combination weights expressing target, or nullopt. Weights are the
// solver's deterministic choice when more than one expression exists.
inline std::optional<std::vector<Rational>> in_convex_hull(
    const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& target) {
  if (points.empty()) return std::nullopt;
  const int d = static_cast<int>(target.size());
  const int k = static_cast<int>(points.size());
  LinearProgram lp;
  lp.sense = Sense::minimize;
  lp.objective.assign(k, Rational(0));
  for (int c = 0; c < d; ++c) {
    std::vector<Rational> row(k);
    for (int p = 0; p < k; ++p) row[p] = points[p].at(c);
    lp.lhs.push_back(std::move(row));
    lp.rel.push_back(Relation::equal);
    lp.rhs.push_back(target[c]);
  }
  lp.lhs.push_back(std::vector<Rational>(k, Rational(1)));
  lp.rel.push_back(Relation::equal);
  lp.rhs.push_back(Rational(1));
  LpResult res = solve(lp);
  if (res.status != LpStatus::optimal) return std::nullopt;
  return res.primal;
}

// Is target in the interior of conv(points), taken in the ambient space?
// Requires the hull to be full-dimensional, then asks, for every signed
// coordinate direction, for the largest step that stays inside the hull;
// the step length is an LP value, so no epsilon tolerance is involved.
inline bool interior_point_test(const std::vector<std::vector<Rational>>& points,
                                const std::vector<Rational>& target) {
  if (points.empty()) return false;
  const int d = static_cast<int>(target.size());
  if (affine_rank(points) != d) return false;
  const int k = static_cast<int>(points.size());
  for (int i = 0; i < d; ++i) {
    for (int dir : {1, -1}) {
      LinearProgram lp;  // variables: weights alpha, step eps
      lp.sense = Sense::maximize;
      lp.objective.assign(k + 1, Rational(0));
      lp.objective[k] = 1;
      for (int c = 0; c < d; ++c) {
        std::vector<Rational> row(k + 1, Rational(0));
        for (int p = 0; p < k; ++p) row[p] = points[p].at(c);
        if (c == i) row[k] = -dir;
        lp.lhs.push_back(std::move(row));
        lp.rel.push_back(Relation::equal);
        lp.rhs.push_back(target[c]);
      }
      std::vector<Rational> ones(k + 1, Rational(1));
      ones[k] = 0;
      lp.lhs.push_back(std::move(ones));
      lp.rel.push_back(Relation::equal);
      lp.rhs.push_back(Rational(1));
      LpResult res = solve(lp);
      if (res.status == LpStatus::infeasible) return false;
      if (res.status == LpStatus::optimal && res.value <= 0) return false;
    }
  }
  return true;
}

}  // namespace clutter
