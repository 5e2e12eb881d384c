#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "irvlab/rational.hpp"

namespace irvlab {

// minimize objective . x  subject to  rows (sum of terms >= rhs)  and  x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
  };

  std::size_t n_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational objective;
  std::int64_t pivots = 0;
};

// Two-phase primal simplex on a dense tableau over exact rationals with
// Bland's rule, so it terminates without cycling.
LpSolution solve_lp(const LinearProgram& lp);

// True iff x >= 0 and every row holds exactly.
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace irvlab
