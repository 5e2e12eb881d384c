#include "irvlab/lp_search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <string>

#include "irvlab/errors.hpp"
#include "irvlab/irv.hpp"

namespace irvlab {

namespace {

void check_k(int k) {
  if (k < kMinSearchK || k > kMaxSearchK) {
    throw BudgetError("LP search supports " + std::to_string(kMinSearchK) + " <= k <= " + std::to_string(kMaxSearchK) +
                      ", got k = " + std::to_string(k));
  }
}

EliminationMatrix assemble(int k, const std::vector<std::vector<Candidate>>& tails) {
  EliminationMatrix e;
  for (int h = 1; h < k; ++h) {
    std::vector<Candidate> row;
    for (Candidate c = 1; c <= h; ++c) row.push_back(c);
    const auto& tail = tails[static_cast<std::size_t>(h) - 1];
    row.insert(row.end(), tail.begin(), tail.end());
    e.rows.push_back(std::move(row));
  }
  return e;
}

std::vector<Ballot> all_rankings(int k) {
  Ballot r(static_cast<std::size_t>(k));
  std::iota(r.begin(), r.end(), 1);
  std::vector<Ballot> out;
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

bool follows(const Profile& p, const EliminationMatrix& e) {
  for (int h = 1; h < p.k(); ++h) {
    auto trace = run_irv_truncated(p, h);
    if (trace.any_elim_tie || trace.elimination_order != e.rows[static_cast<std::size_t>(h) - 1]) return false;
  }
  return at_least(classify_ties(p).value, TieClassValue::EliminationTieFree);
}

}  // namespace

EliminationMatrixStream::EliminationMatrixStream(int k) : k_(k) {
  check_k(k);
  for (int h = 1; h < k; ++h) {
    std::vector<Candidate> tail;
    for (Candidate c = h + 2; c <= k; ++c) tail.push_back(c);
    tails_.push_back(std::move(tail));
  }
}

std::optional<EliminationMatrix> EliminationMatrixStream::next() {
  if (done_) return std::nullopt;
  auto out = assemble(k_, tails_);
  // Odometer: advance the last row that still has a next permutation and
  // reset the rows after it.
  done_ = true;
  for (std::size_t r = tails_.size(); r-- > 0;) {
    if (std::next_permutation(tails_[r].begin(), tails_[r].end())) {
      done_ = false;
      break;
    }
  }
  return out;
}

EliminationMatrixStream enumerate_elimination_matrices(int k) { return EliminationMatrixStream(k); }

std::int64_t count_elimination_matrices(int k) {
  check_k(k);
  std::int64_t total = 1;
  for (int h = 1; h < k; ++h) {
    for (int f = 2; f <= k - h - 1; ++f) total *= f;
  }
  return total;
}

LpInstance build_lp(const EliminationMatrix& e, int k, std::int64_t gap) {
  check_k(k);
  if (gap < 1) throw DomainError("gap must be at least 1");
  if (e.rows.size() != static_cast<std::size_t>(k) - 1) throw DomainError("matrix has the wrong number of rows");
  LpInstance inst;
  inst.k = k;
  inst.gap = gap;
  inst.rankings = all_rankings(k);
  const std::size_t n = inst.rankings.size();
  inst.lp.n_vars = n;
  inst.lp.objective.assign(n, Rational(1));

  const auto kk = static_cast<std::size_t>(k);
  std::vector<std::size_t> cursor(n);
  std::vector<std::vector<std::size_t>> assigned(kk + 1);
  for (int h = 1; h < k; ++h) {
    const auto& row = e.rows[static_cast<std::size_t>(h) - 1];
    if (row.size() != kk - 1) throw DomainError("matrix row has the wrong length");
    std::vector<char> eliminated(kk + 1, 0);
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int i = 1; i < k; ++i) {
      // Group rankings by the candidate they count for in this round.
      for (auto& a : assigned) a.clear();
      for (std::size_t v = 0; v < n; ++v) {
        const auto& ranking = inst.rankings[v];
        auto& pos = cursor[v];
        while (pos < static_cast<std::size_t>(h) && eliminated[static_cast<std::size_t>(ranking[pos])]) ++pos;
        if (pos < static_cast<std::size_t>(h)) assigned[static_cast<std::size_t>(ranking[pos])].push_back(v);
      }
      const Candidate out = row[static_cast<std::size_t>(i) - 1];
      if (out < 1 || out > k || eliminated[static_cast<std::size_t>(out)]) {
        throw FeasibilityError("matrix row " + std::to_string(h) + " eliminates an invalid candidate");
      }
      for (Candidate j = 1; j <= k; ++j) {
        if (j == out || eliminated[static_cast<std::size_t>(j)]) continue;
        const auto& win = assigned[static_cast<std::size_t>(j)];
        if (win.empty()) {
          throw FeasibilityError("no ranking counts for candidate " + std::to_string(j) + " at h=" + std::to_string(h) +
                                 ", round " + std::to_string(i));
        }
        LinearProgram::Row lp_row;
        for (std::size_t v : win) lp_row.terms.emplace_back(v, Rational(1));
        for (std::size_t v : assigned[static_cast<std::size_t>(out)]) lp_row.terms.emplace_back(v, Rational(-1));
        std::sort(lp_row.terms.begin(), lp_row.terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        lp_row.rhs = Rational(gap);
        inst.lp.rows.push_back(std::move(lp_row));
        inst.constraints.push_back({h, i, out, j});
      }
      eliminated[static_cast<std::size_t>(out)] = 1;
    }
  }
  return inst;
}

SearchResult search(int k, const SearchOptions& options) {
  check_k(k);
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (options.max_seconds <= 0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
    return spent.count() >= options.max_seconds;
  };

  SearchResult result;
  const bool every = options.all_orders || k < 8;
  std::vector<EliminationMatrix> matrices;
  // LP optima scale linearly with the gap, so each matrix is solved once at
  // gap 1 and the solution is scaled. Basic solutions are sparse.
  struct Solved {
    bool optimal = false;
    std::vector<std::pair<std::size_t, Rational>> x;
    Rational objective;
  };
  std::vector<std::optional<Solved>> solved;
  const auto rankings = all_rankings(k);
  auto stream = enumerate_elimination_matrices(k);

  for (std::int64_t gap = 1; gap <= options.gap_max; gap *= 2) {
    for (std::size_t m = 0;; ++m) {
      if (!every && m > 0) break;
      if (m == matrices.size()) {
        auto next = stream.next();
        if (!next) break;
        matrices.push_back(std::move(*next));
        solved.emplace_back();
      }
      if (options.max_attempts >= 0 && result.eliminations_tried >= options.max_attempts) return result;
      if (out_of_time()) return result;
      ++result.eliminations_tried;

      if (!solved[m]) {
        const auto sol = solve_lp(build_lp(matrices[m], k, 1).lp);
        Solved entry;
        entry.optimal = sol.status == LpStatus::Optimal;
        for (std::size_t v = 0; v < sol.x.size(); ++v) {
          if (sol.x[v] != 0) entry.x.emplace_back(v, sol.x[v]);
        }
        entry.objective = sol.objective;
        solved[m] = std::move(entry);
      }
      const auto& sol = *solved[m];
      if (!sol.optimal) continue;

      std::vector<BallotType> types;
      for (const auto& [v, value] : sol.x) {
        const Rational scaled = value * gap;
        mpz_class count;
        mpz_cdiv_q(count.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        if (count > 0) types.push_back({rankings[v], count.get_si()});
      }
      Profile candidate = normalize(Profile(k, std::move(types)));
      if (!follows(candidate, matrices[m])) continue;

      result.profile = std::move(candidate);
      result.gap_used = gap;
      result.matrix_index = static_cast<std::int64_t>(m);
      result.matrix = matrices[m];
      result.lp_objective = sol.objective * gap;
      result.verified = true;
      return result;
    }
  }
  return result;
}

}  // namespace irvlab
