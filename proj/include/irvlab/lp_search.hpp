#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irvlab/profile.hpp"
#include "irvlab/rational.hpp"
#include "irvlab/simplex.hpp"

namespace irvlab {

// rows[h - 1][i - 1] is the candidate eliminated in round i at ballot length
// h. Candidates are labelled by full-ballot elimination order, and the
// winner at h is h + 1.
struct EliminationMatrix {
  std::vector<std::vector<Candidate>> rows;

  Candidate at(int h, int i) const {
    return rows.at(static_cast<std::size_t>(h) - 1).at(static_cast<std::size_t>(i) - 1);
  }
  bool operator==(const EliminationMatrix&) const = default;
};

// Lazily yields every matrix compatible with winners 2, 3, ..., k at
// h = 1..k-1: row h eliminates 1..h, then a permutation of h+2..k, leaving
// h+1. Matrices come in lexicographic order, row 1 most significant.
class EliminationMatrixStream {
 public:
  explicit EliminationMatrixStream(int k);

  std::optional<EliminationMatrix> next();
  int k() const { return k_; }

 private:
  int k_;
  bool done_ = false;
  // tails_[h - 1] is the permuted part of row h.
  std::vector<std::vector<Candidate>> tails_;
};

inline constexpr int kMinSearchK = 4;
inline constexpr int kMaxSearchK = 10;

// Throws BudgetError unless 4 <= k <= 10.
EliminationMatrixStream enumerate_elimination_matrices(int k);

// Number of matrices the stream yields: the product of (k-h-1)! over h.
std::int64_t count_elimination_matrices(int k);

struct GapConstraint {
  int h = 0;
  int round = 0;
  Candidate eliminated = 0;
  Candidate survivor = 0;
};

// One variable per full ranking (in lexicographic order). Each gap
// constraint reads: votes(survivor) - votes(eliminated) >= C at (h, round).
struct LpInstance {
  int k = 0;
  std::int64_t gap = 1;
  std::vector<Ballot> rankings;
  std::vector<GapConstraint> constraints;
  LinearProgram lp;
};

LpInstance build_lp(const EliminationMatrix& e, int k, std::int64_t gap);

struct SearchOptions {
  std::int64_t gap_max = 64;
  // Try every matrix even for k >= 8, where only the first is tried by default.
  bool all_orders = false;
  // Each (matrix, gap) pair is one attempt. Negative means unlimited.
  std::int64_t max_attempts = -1;
  // Wall-clock limit; zero or negative means unlimited.
  double max_seconds = 0;
};

struct SearchResult {
  std::optional<Profile> profile;
  std::int64_t eliminations_tried = 0;
  std::int64_t gap_used = 0;
  std::int64_t matrix_index = -1;
  std::optional<EliminationMatrix> matrix;
  Rational lp_objective;
  bool verified = false;
};

// For gap = 1, 2, 4, ... up to gap_max and each matrix in order: solve the
// LP, round counts up, and keep the first profile whose truncated IRV runs
// follow the matrix exactly with no ties for last.
SearchResult search(int k, const SearchOptions& options = {});

}  // namespace irvlab
