#pragma once

// Exact minimum-reward transformation paths.
//
// The state graph has one vertex per (row strategy, count profile) pair and
// an edge between every ordered pair of vertices, weighted by edge_cost. The
// graph stays implicit: per-profile incentive terms are tabulated once and
// each edge weight is the sum of two table entries.

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "eqt/errors.hpp"
#include "eqt/game.hpp"

namespace eqt {

inline constexpr std::uint64_t kDefaultStateBudget = 5'000'000;

// binom(n+k-1, n-1), saturating at uint64 max.
inline std::uint64_t count_profiles(std::size_t n, std::int64_t k) {
  if (n == 0 || k < 0) return 0;
  // binom(a, b) with a = n+k-1, b = min(n-1, k)
  unsigned __int128 a = static_cast<unsigned __int128>(n) + k - 1;
  unsigned __int128 b = std::min<unsigned __int128>(n - 1, static_cast<unsigned __int128>(k));
  unsigned __int128 r = 1;
  for (unsigned __int128 i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t count_states(std::size_t m, std::size_t n, std::int64_t k) {
  std::uint64_t p = count_profiles(n, k);
  if (p != 0 && m > std::numeric_limits<std::uint64_t>::max() / p) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return m * p;
}

namespace detail {
inline void enumerate_rec(std::vector<std::int64_t>& cur, std::size_t pos, std::int64_t left,
                          std::vector<CountProfile>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = left;
    out.emplace_back(cur);
    return;
  }
  for (std::int64_t c = left; c >= 0; --c) {
    cur[pos] = c;
    enumerate_rec(cur, pos + 1, left - c, out);
  }
}
}  // namespace detail

// All count profiles over n strategies summing to k, ordered from (k,0,..,0)
// down to (0,..,0,k), i.e. descending lexicographic order.
inline std::vector<CountProfile> enumerate_count_profiles(
    std::size_t n, std::int64_t k, std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) {
  if (n < 1 || k < 1) throw InvalidInput("enumerate_count_profiles: need n >= 1 and k >= 1");
  std::uint64_t total = count_profiles(n, k);
  if (total > limit || total == std::numeric_limits<std::uint64_t>::max()) {
    throw BudgetExceeded("enumerate_count_profiles: " + std::to_string(total) + " profiles exceed limit");
  }
  std::vector<CountProfile> out;
  out.reserve(total);
  std::vector<std::int64_t> cur(n, 0);
  detail::enumerate_rec(cur, 0, k, out);
  return out;
}

// Tabulated incentive terms over the whole state space. State index is
// row * profiles().size() + profile index, which is also the tie-breaking order.
class StateSpace {
 public:
  StateSpace(const PayoffMatrices& game, std::int64_t k, std::uint64_t budget = kDefaultStateBudget)
      : m_(game.m()), k_(k) {
    std::uint64_t states = count_states(game.m(), game.n(), k);
    if (states > budget) {
      throw BudgetExceeded("state space has " + std::to_string(states) + " states, budget is " +
                           std::to_string(budget));
    }
    profiles_ = enumerate_count_profiles(game.n(), k);
    for (std::size_t p = 0; p < profiles_.size(); ++p) index_.emplace(profiles_[p], p);

    std::size_t np = profiles_.size();
    row_part_.resize(np * m_);
    col_part_.resize(m_ * np);
    std::vector<Payoff> pay(m_);
    for (std::size_t p = 0; p < np; ++p) {
      Payoff best = Payoff::neg_inf();
      for (std::size_t i = 0; i < m_; ++i) {
        pay[i] = row_payoff(game, profiles_[p], i);
        best = std::max(best, pay[i]);
      }
      for (std::size_t i = 0; i < m_; ++i) row_part_[p * m_ + i] = incentive_gap(best, pay[i]);
    }
    for (std::size_t r = 0; r < m_; ++r) {
      Payoff best(best_column_entry(game, r) * Rational(k));
      for (std::size_t p = 0; p < np; ++p) {
        col_part_[r * np + p] = incentive_gap(best, column_payoff(game, r, profiles_[p]));
      }
    }
  }

  std::size_t size() const { return m_ * profiles_.size(); }
  std::size_t rows() const { return m_; }
  std::int64_t k() const { return k_; }
  const std::vector<CountProfile>& profiles() const { return profiles_; }

  std::size_t profile_index(const CountProfile& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw InvalidInput("profile " + x.str() + " is not in the state space");
    return it->second;
  }
  std::size_t index(const State& s) const {
    if (s.row >= m_) throw InvalidInput("state " + s.str() + " row out of range");
    return s.row * profiles_.size() + profile_index(s.cols);
  }
  State state(std::size_t idx) const {
    return State{idx / profiles_.size(), profiles_[idx % profiles_.size()]};
  }

  // T_x(r): reward for the row player to play r against profile x.
  const Cost& row_term(std::size_t profile, std::size_t r) const { return row_part_[profile * m_ + r]; }
  // T_r(x): reward for the column players to play x against row r.
  const Cost& column_term(std::size_t r, std::size_t profile) const {
    return col_part_[r * profiles_.size() + profile];
  }

  Cost edge(std::size_t from, std::size_t to) const {
    std::size_t np = profiles_.size();
    return row_term(from % np, to / np) + column_term(from / np, to % np);
  }

 private:
  std::size_t m_;
  std::int64_t k_;
  std::vector<CountProfile> profiles_;
  std::map<CountProfile, std::size_t> index_;
  std::vector<Cost> row_part_;
  std::vector<Cost> col_part_;
};

struct StateGraphSpec {
  Instance instance;
  std::uint64_t state_budget = kDefaultStateBudget;
};

struct ExactSolution {
  bool feasible = false;  // false: target unreachable at finite cost
  TransformationPath path;
  Cost opt_cost = Cost::inf();
  std::size_t states_explored = 0;
  std::int64_t runtime_ms = 0;
};

// Minimum-cost transformation path. Among optimal paths the one with fewest
// edges is returned, and among those the lexicographically smallest state
// sequence (in StateSpace index order).
//
// Runs Dijkstra backwards from the target with (cost, edges) labels, then
// walks forward from the initial state picking the smallest successor that
// stays on an optimal path.
inline ExactSolution solve_exact(const StateGraphSpec& graph) {
  auto start = std::chrono::steady_clock::now();
  const Instance& inst = graph.instance;
  validate_instance(inst);
  StateSpace space(inst.game, inst.k, graph.state_budget);

  const std::size_t V = space.size();
  const std::size_t src = space.index(inst.initial);
  const std::size_t dst = space.index(inst.target);
  constexpr std::size_t kNoHops = std::numeric_limits<std::size_t>::max();

  std::vector<Cost> dist(V, Cost::inf());
  std::vector<std::size_t> hops(V, kNoHops);
  std::vector<char> settled(V, 0);
  dist[dst] = Cost::zero();
  hops[dst] = 0;

  auto less = [&](std::size_t a, std::size_t b) {
    if (auto c = dist[a] <=> dist[b]; c != 0) return c < 0;
    return hops[a] < hops[b];
  };

  ExactSolution sol;
  // Dense selection: on a complete graph this is the O(V^2) optimum.
  while (true) {
    std::size_t u = V;
    for (std::size_t v = 0; v < V; ++v) {
      if (settled[v] || dist[v].is_inf()) continue;
      if (u == V || less(v, u)) u = v;
    }
    if (u == V) break;
    settled[u] = 1;
    ++sol.states_explored;
    if (u == src) break;
    for (std::size_t v = 0; v < V; ++v) {
      if (settled[v]) continue;
      Cost w = space.edge(v, u);
      if (w.is_inf()) continue;
      Cost cand = w + dist[u];
      std::size_t h = hops[u] + 1;
      auto c = cand <=> dist[v];
      if (c < 0 || (c == 0 && h < hops[v])) {
        dist[v] = std::move(cand);
        hops[v] = h;
      }
    }
  }

  if (!dist[src].is_inf()) {
    std::vector<State> states{space.state(src)};
    std::size_t u = src;
    while (u != dst) {
      std::size_t next = V;
      for (std::size_t v = 0; v < V; ++v) {
        if (!settled[v] || hops[v] + 1 != hops[u]) continue;
        Cost w = space.edge(u, v);
        if (w.is_inf()) continue;
        if (w + dist[v] == dist[u]) {
          next = v;
          break;
        }
      }
      if (next == V) throw InternalError("solve_exact: optimal path reconstruction failed");
      u = next;
      states.push_back(space.state(u));
    }
    sol.feasible = true;
    sol.path = make_transformation_path(inst, std::move(states));
    sol.opt_cost = dist[src];
    if (sol.path.total != sol.opt_cost) throw InternalError("solve_exact: path cost mismatch");
  }
  sol.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return sol;
}

}  // namespace eqt
