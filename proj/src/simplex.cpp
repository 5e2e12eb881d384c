#include "irvlab/simplex.hpp"

#include <algorithm>

#include "irvlab/errors.hpp"

namespace irvlab {

namespace {

class Tableau {
 public:
  // Columns: structural [0, n), surplus [n, n+m), artificial [n+m, n+2m),
  // then the right-hand side.
  explicit Tableau(const LinearProgram& lp) : n_(lp.n_vars), m_(lp.rows.size()) {
    width_ = n_ + 2 * m_ + 1;
    rows_.assign(m_, std::vector<Rational>(width_));
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& row = lp.rows[r];
      const bool flip = row.rhs < 0;
      auto& t = rows_[r];
      for (const auto& [j, a] : row.terms) {
        if (j >= n_) throw DomainError("LP term refers to a missing variable");
        t[j] += flip ? Rational(-a) : a;
      }
      t[n_ + r] = flip ? 1 : -1;
      t[n_ + m_ + r] = 1;
      t[width_ - 1] = flip ? Rational(-row.rhs) : row.rhs;
      basis_[r] = n_ + m_ + r;
    }
  }

  bool phase_one() {
    cost_.assign(width_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < n_ + m_; ++j) cost_[j] -= rows_[r][j];
      cost_[width_ - 1] -= rows_[r][width_ - 1];
    }
    optimize(n_ + 2 * m_);
    if (cost_[width_ - 1] != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Returns false when unbounded.
  bool phase_two(const std::vector<Rational>& objective) {
    cost_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = objective[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t b = basis_[r];
      if (b >= n_ || cost_[b] == 0) continue;
      const Rational cb = cost_[b];
      for (std::size_t j = 0; j < width_; ++j) {
        if (rows_[r][j] != 0) cost_[j] -= cb * rows_[r][j];
      }
    }
    return optimize(n_ + m_);
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < n_) x[basis_[r]] = rows_[r][width_ - 1];
    }
    return x;
  }

  std::int64_t pivots() const { return pivots_; }

 private:
  bool optimize(std::size_t columns) {
    while (true) {
      std::size_t enter = columns;
      for (std::size_t j = 0; j < columns; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == columns) return true;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& a = rows_[r][enter];
        if (a <= 0) continue;
        Rational ratio = rows_[r][width_ - 1] / a;
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          best = std::move(ratio);
          leave = r;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& pr = rows_[r];
    const Rational inv = 1 / pr[c];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < width_; ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nonzero.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (std::size_t j : nonzero) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(cost_);
    basis_[r] = c;
  }

  // After a feasible phase one, artificial variables still in the basis sit
  // at zero. Pivot each out on any nonzero real column, or drop its row as
  // redundant.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < n_ + m_) {
        ++r;
        continue;
      }
      std::size_t c = n_ + m_;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (rows_[r][j] != 0) {
          c = j;
          break;
        }
      }
      if (c < n_ + m_) {
        pivot(r, c);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::int64_t pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.objective.size() != lp.n_vars) throw DomainError("objective length does not match variable count");
  Tableau tableau(lp);
  LpSolution out;
  if (!tableau.phase_one()) {
    out.status = LpStatus::Infeasible;
    out.pivots = tableau.pivots();
    return out;
  }
  out.status = tableau.phase_two(lp.objective) ? LpStatus::Optimal : LpStatus::Unbounded;
  out.pivots = tableau.pivots();
  if (out.status == LpStatus::Optimal) {
    out.x = tableau.solution();
    out.objective = 0;
    for (std::size_t j = 0; j < lp.n_vars; ++j) out.objective += lp.objective[j] * out.x[j];
  }
  return out;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.n_vars) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (const auto& [j, a] : row.terms) lhs += a * x[j];
    if (lhs < row.rhs) return false;
  }
  return true;
}

}  // namespace irvlab
