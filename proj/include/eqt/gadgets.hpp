#pragma once

// Instance generators: the EXACT COVER and exact-k knapsack hardness
// gadgets with their witness paths, and seeded random instances.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eqt/errors.hpp"
#include "eqt/exact_solver.hpp"
#include "eqt/game.hpp"
#include "eqt/single_peaked.hpp"

namespace eqt {

// ---------------------------------------------------------------------------
// EXACT COVER: s, and w three-element subsets of {1..3s}.

struct ExactCoverInput {
  std::int64_t s = 1;
  std::vector<std::vector<std::int64_t>> subsets;  // 1-based elements

  std::size_t w() const { return subsets.size(); }
};

inline void validate_exact_cover(const ExactCoverInput& in) {
  if (in.s < 1) throw InvalidInput("s: must be at least 1");
  if (static_cast<std::int64_t>(in.w()) < in.s) {
    throw InvalidInput("subsets: need at least s=" + std::to_string(in.s) + " subsets, got " +
                       std::to_string(in.w()));
  }
  for (std::size_t q = 0; q < in.w(); ++q) {
    const auto& x = in.subsets[q];
    std::string where = "subsets[" + std::to_string(q) + "]";
    if (x.size() != 3) throw InvalidInput(where + ": must have exactly 3 elements");
    if (std::set<std::int64_t>(x.begin(), x.end()).size() != 3) {
      throw InvalidInput(where + ": elements must be distinct");
    }
    for (auto e : x) {
      if (e < 1 || e > 3 * in.s) {
        throw InvalidInput(where + ": element " + std::to_string(e) + " outside [1," + std::to_string(3 * in.s) +
                           "]");
      }
    }
  }
}

// k = s column players, m = 3s+2 rows, n = w+2 columns. Row 0 and column 0
// hold the initial equilibrium, the last row and column the target; rows
// 1..3s are the ground elements and columns 1..w the subsets.
inline Instance gen_exact_cover(const ExactCoverInput& in) {
  validate_exact_cover(in);
  const std::int64_t s = in.s;
  const std::size_t m = static_cast<std::size_t>(3 * s + 2);
  const std::size_t n = in.w() + 2;
  Instance inst;
  inst.game.row = Matrix<Payoff>(m, n, Payoff(0));
  inst.game.col = Matrix<Payoff>(m, n, Payoff(1));
  auto& R = inst.game.row;
  auto& C = inst.game.col;

  for (std::size_t i = 0; i < m; ++i) C(i, n - 1) = 0;
  for (std::size_t q = 0; q < n; ++q) C(m - 1, q) = 0;
  C(m - 1, n - 1) = 1;

  R(0, n - 1) = -1;
  R(m - 1, 0) = -s;
  for (std::size_t q = 1; q + 1 < n; ++q) {
    R(m - 1, q) = Rational(1, s);
    for (auto e : in.subsets[q - 1]) R(static_cast<std::size_t>(e), q) = 1;
  }
  R(m - 1, n - 1) = 1;

  inst.k = s;
  std::vector<std::int64_t> first(n, 0), last(n, 0);
  first[0] = s;
  last[n - 1] = s;
  inst.initial = State{0, CountProfile(first)};
  inst.target = State{m - 1, CountProfile(last)};
  validate_instance(inst);
  return inst;
}

// Zero-cost path through the chosen subsets (0-based subset indices, one per
// column player).
inline std::vector<State> exact_cover_witness(const Instance& gadget, std::span<const std::size_t> chosen) {
  const std::size_t n = gadget.game.n();
  std::vector<std::int64_t> mid(n, 0);
  for (std::size_t q : chosen) {
    if (q + 2 >= n) throw InvalidInput("exact_cover_witness: subset index out of range");
    ++mid[q + 1];
  }
  CountProfile x(mid);
  if (!x.valid_for(n, gadget.k)) throw InvalidInput("exact_cover_witness: need exactly s subsets");
  return {gadget.initial, State{gadget.initial.row, x}, State{gadget.target.row, x}, gadget.target};
}

// ---------------------------------------------------------------------------
// Exact-k knapsack: choose a multiset of exactly k items with total value
// >= V and total weight <= W.

struct KnapsackInput {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> values;
  std::int64_t W = 0;
  std::int64_t V = 0;
  std::int64_t k = 1;
  std::optional<Rational> epsilon;

  std::size_t items() const { return weights.size(); }
};

inline std::int64_t min_weight(const KnapsackInput& in) {
  return *std::min_element(in.weights.begin(), in.weights.end());
}

inline void validate_knapsack(const KnapsackInput& in) {
  if (in.weights.empty()) throw InvalidInput("weights: at least one item is required");
  if (in.values.size() != in.weights.size()) throw InvalidInput("values: length differs from weights");
  if (in.k < 1) throw InvalidInput("k: must be at least 1");
  if (in.V < 1) throw InvalidInput("V: must be positive");
  for (std::size_t i = 0; i < in.items(); ++i) {
    std::string at = "[" + std::to_string(i) + "]";
    if (in.weights[i] < 1) throw InvalidInput("weights" + at + ": must be positive");
    if (in.weights[i] > in.W) throw InvalidInput("weights" + at + ": exceeds W");
    if (in.values[i] < 0) throw InvalidInput("values" + at + ": must be nonnegative");
    if (in.values[i] > in.V) throw InvalidInput("values" + at + ": exceeds V");
  }
  if (in.epsilon) {
    Rational limit(min_weight(in), in.k * in.V);
    if (in.epsilon->sign() <= 0 || !(*in.epsilon < limit)) {
      throw InvalidInput("epsilon: must lie in (0, " + limit.str() + ")");
    }
  }
}

inline Rational knapsack_epsilon(const KnapsackInput& in) {
  if (in.epsilon) return *in.epsilon;
  return Rational(min_weight(in), 2 * in.k * in.V * static_cast<std::int64_t>(in.items() + 1));
}

struct KnapsackGadget {
  Instance instance;
  Rational threshold;  // 4 eps k V
  Rational epsilon;
};

// 2 rows, m+3 columns (0: start, 1..m: items, m+1: pivot, m+2: target),
// k+1 column players.
inline KnapsackGadget gen_knapsack(const KnapsackInput& in) {
  validate_knapsack(in);
  const std::size_t m = in.items();
  const std::size_t n = m + 3;
  const Rational eps = knapsack_epsilon(in);
  const Rational V(in.V);
  const Rational k(in.k);

  Instance inst;
  inst.game.row = Matrix<Payoff>(2, n, Payoff(0));
  inst.game.col = Matrix<Payoff>(2, n, Payoff(0));
  auto& R = inst.game.row;
  auto& C = inst.game.col;
  C(0, 0) = eps * V;
  for (std::size_t i = 0; i < m; ++i) C(0, i + 1) = eps * Rational(in.values[i]);
  C(0, m + 1) = -(k * eps * V);
  C(0, m + 2) = Payoff::neg_inf();
  C(1, m + 2) = 1;

  R(0, m + 2) = Payoff::neg_inf();
  R(1, 0) = Payoff::neg_inf();
  for (std::size_t i = 0; i < m; ++i) R(1, i + 1) = -in.weights[i];
  R(1, m + 1) = in.W;
  R(1, m + 2) = 2 * in.W;

  inst.k = in.k + 1;
  std::vector<std::int64_t> first(n, 0), last(n, 0);
  first[0] = inst.k;
  last[n - 1] = inst.k;
  inst.initial = State{0, CountProfile(first)};
  inst.target = State{1, CountProfile(last)};
  validate_instance(inst);
  return {std::move(inst), Rational(4) * eps * k * V, eps};
}

// Path through the chosen items (0-based, repetition allowed) plus one
// player on the pivot column.
inline std::vector<State> knapsack_witness(const Instance& gadget, std::span<const std::size_t> items) {
  const std::size_t n = gadget.game.n();
  std::vector<std::int64_t> mid(n, 0);
  for (std::size_t i : items) {
    if (i + 3 >= n) throw InvalidInput("knapsack_witness: item index out of range");
    ++mid[i + 1];
  }
  ++mid[n - 2];
  CountProfile x(mid);
  if (!x.valid_for(n, gadget.k)) throw InvalidInput("knapsack_witness: need exactly k items");
  return {gadget.initial, State{0, x}, State{1, x}, gadget.target};
}

// Shifts values and weights so that every feasible item set of the result
// has exactly k items: v' = v + m(V+1), w' = w + (W+1), V' = V + km(V+1),
// W' = W + k(W+1).
inline KnapsackInput reweight_exact_k(const KnapsackInput& in) {
  const std::int64_t m = static_cast<std::int64_t>(in.items());
  KnapsackInput out = in;
  for (auto& v : out.values) v += m * (in.V + 1);
  for (auto& w : out.weights) w += in.W + 1;
  out.V = in.V + in.k * m * (in.V + 1);
  out.W = in.W + in.k * (in.W + 1);
  out.epsilon.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Random instances

inline constexpr int kMaxGenerationAttempts = 10'000;

// All pure equilibria, in StateSpace order.
inline std::vector<State> pure_equilibria(const PayoffMatrices& g, std::int64_t k) {
  std::vector<State> out;
  for (const CountProfile& x : enumerate_count_profiles(g.n(), k, kDefaultStateBudget)) {
    for (std::size_t r = 0; r < g.m(); ++r) {
      State s{r, x};
      if (is_equilibrium(g, k, s)) out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const State& a, const State& b) {
    return a.row != b.row ? a.row < b.row : a.cols > b.cols;
  });
  return out;
}

namespace detail {
// Distinct endpoints when possible; a single equilibrium serves as both.
inline std::pair<State, State> pick_endpoints(const std::vector<State>& eq, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, eq.size() - 1);
  std::size_t a = pick(rng);
  if (eq.size() == 1) return {eq[a], eq[a]};
  std::uniform_int_distribution<std::size_t> other(0, eq.size() - 2);
  std::size_t b = other(rng);
  if (b >= a) ++b;
  return {eq[a], eq[b]};
}
}  // namespace detail

inline Instance gen_random(std::size_t m, std::size_t n, std::int64_t k, std::uint64_t seed,
                           std::int64_t payoff_range) {
  if (m < 1 || n < 1 || k < 1) throw InvalidInput("gen_random: need m, n, k >= 1");
  if (payoff_range < 0) throw InvalidInput("gen_random: payoff range must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-payoff_range, payoff_range);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Instance inst;
    inst.k = k;
    inst.game.row = Matrix<Payoff>(m, n);
    inst.game.col = Matrix<Payoff>(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t q = 0; q < n; ++q) inst.game.row(i, q) = entry(rng);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t q = 0; q < n; ++q) inst.game.col(i, q) = entry(rng);
    }
    std::vector<State> eq = pure_equilibria(inst.game, k);
    if (eq.empty()) continue;
    std::tie(inst.initial, inst.target) = detail::pick_endpoints(eq, rng);
    validate_instance(inst);
    return inst;
  }
  throw GenerationFailure("gen_random: no pure equilibrium after " + std::to_string(kMaxGenerationAttempts) +
                          " attempts");
}

inline LineInstance gen_random_single_peaked(std::size_t n, std::int64_t k, std::uint64_t seed,
                                             std::int64_t coord_range) {
  if (n < 2) throw InvalidInput("gen_random_single_peaked: need n >= 2");
  if (k < 1) throw InvalidInput("gen_random_single_peaked: need k >= 1");
  if (coord_range < 0 || static_cast<std::uint64_t>(2 * coord_range + 1) < n) {
    throw InvalidInput("gen_random_single_peaked: coordinate range too small for n distinct locations");
  }
  static const Rational kSlopes[] = {Rational(1, 2), Rational(1), Rational(2)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-coord_range, coord_range);
  std::uniform_int_distribution<int> slope(0, 2);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::set<std::int64_t> pts;
    while (pts.size() < n) pts.insert(coord(rng));
    LineInstance li;
    for (auto p : pts) li.locations.emplace_back(p);
    li.k = k;
    li.slope = kSlopes[slope(rng)];
    Instance inst = materialize_matrices(li);
    std::vector<State> eq = pure_equilibria(inst.game, k);
    if (eq.empty()) continue;
    std::tie(li.initial, li.target) = detail::pick_endpoints(eq, rng);
    return li;
  }
  throw GenerationFailure("gen_random_single_peaked: no pure equilibrium after " +
                          std::to_string(kMaxGenerationAttempts) + " attempts");
}

}  // namespace eqt
