#pragma once

// Line-location games: row and column strategies are the same points on a
// line. The row player earns minus the total distance to the column players;
// each column player earns g(distance to the row player) with g(d) = -slope*d.
// Here the per-edge weight has a closed form, so the alternating-path
// pipeline becomes exact.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "eqt/approx_solver.hpp"
#include "eqt/errors.hpp"
#include "eqt/game.hpp"

namespace eqt {

struct LineInstance {
  std::vector<Rational> locations;  // strictly increasing
  std::int64_t k = 1;
  Rational slope = 1;  // g(d) = -slope * d
  State initial;
  State target;

  std::size_t n() const { return locations.size(); }
};

inline void validate_line_instance(const LineInstance& li) {
  if (li.locations.empty()) throw InvalidInput("locations: at least one location is required");
  for (std::size_t t = 1; t < li.locations.size(); ++t) {
    if (!(li.locations[t - 1] < li.locations[t])) {
      throw InvalidInput("locations[" + std::to_string(t) + "]: locations must be strictly increasing");
    }
  }
  if (li.k < 1) throw InvalidInput("k: must be at least 1");
  if (li.slope.sign() <= 0) throw InvalidInput("g.slope: must be positive");
}

inline Instance materialize_matrices(const LineInstance& li) {
  validate_line_instance(li);
  const std::size_t n = li.n();
  Instance inst;
  inst.game.row = Matrix<Payoff>(n, n);
  inst.game.col = Matrix<Payoff>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational d = (li.locations[i] - li.locations[j]).abs();
      inst.game.row(i, j) = Payoff(-d);
      inst.game.col(i, j) = Payoff(-(li.slope * d));
    }
  }
  inst.k = li.k;
  inst.initial = li.initial;
  inst.target = li.target;
  return inst;
}

struct LineWeight {
  Cost w;
  CountProfile profile;
};

// Cheapest length-2 alternating path r_i -> profile -> r_j.
//
// With r_i left of r_j, h = floor((k+1)/2) players pinned at or near r_i keep
// the row player's median within reach, and the remaining k-h sit at one
// point c between the median point c_h and r_j minimizing
// slope*(c - r_i) + c_h - 2c. Both placements of the h-th player (at r_i or
// at c_h) are scored with the true cost.
inline LineWeight weight_single_peaked(const LineInstance& li, const Instance& materialized, std::size_t i,
                                       std::size_t j) {
  const std::size_t n = li.n();
  if (i >= n || j >= n) throw InvalidInput("weight_single_peaked: location index out of range");
  if (i == j) throw InvalidInput("weight_single_peaked: locations must differ");

  // Work left to right; a mirrored instance handles r_i > r_j.
  const bool mirrored = li.locations[i] > li.locations[j];
  std::vector<Rational> loc(n);
  for (std::size_t t = 0; t < n; ++t) loc[t] = mirrored ? -li.locations[n - 1 - t] : li.locations[t];
  const std::size_t a = mirrored ? n - 1 - i : i;
  const std::size_t b = mirrored ? n - 1 - j : j;
  const std::int64_t k = li.k;
  const std::int64_t h = (k + 1) / 2;

  auto unmirror = [&](std::vector<std::int64_t> counts) {
    if (mirrored) std::reverse(counts.begin(), counts.end());
    return CountProfile(std::move(counts));
  };
  std::optional<LineWeight> best;
  auto consider = [&](std::vector<std::int64_t> counts) {
    CountProfile x = unmirror(std::move(counts));
    Cost c = column_incentive_cost(materialized.game, i, x) + row_incentive_cost(materialized.game, x, j);
    if (!best || c < best->w) best = LineWeight{std::move(c), std::move(x)};
  };

  for (std::size_t t = a; t <= b; ++t) {
    std::size_t u = t;
    Rational best_val;
    for (std::size_t v = t; v <= b; ++v) {
      Rational val = li.slope * (loc[v] - loc[a]) + loc[t] - Rational(2) * loc[v];
      if (v == t || val < best_val) {
        best_val = std::move(val);
        u = v;
      }
    }
    std::vector<std::int64_t> with_median(n, 0);
    with_median[a] += h - 1;
    with_median[t] += 1;
    with_median[u] += k - h;
    consider(std::move(with_median));

    std::vector<std::int64_t> pinned(n, 0);
    pinned[a] += h;
    pinned[u] += k - h;
    consider(std::move(pinned));
  }

  const Rational& lo = std::min(li.locations[i], li.locations[j]);
  const Rational& hi = std::max(li.locations[i], li.locations[j]);
  for (std::size_t q = 0; q < n; ++q) {
    if (best->profile[q] > 0 && (li.locations[q] < lo || li.locations[q] > hi)) {
      throw InternalError("weight_single_peaked: profile leaves the interval between the two rows");
    }
  }
  return *best;
}

inline LineWeight weight_single_peaked(const LineInstance& li, std::size_t i, std::size_t j) {
  return weight_single_peaked(li, materialize_matrices(li), i, j);
}

struct SinglePeakedSolution {
  Instance instance;  // materialized
  TransformationPath path;
  Cost cost;
  AlternatingPath alternating;
  Matrix<Cost> weights;
  std::int64_t runtime_ms = 0;
};

inline SinglePeakedSolution solve_single_peaked(const LineInstance& li) {
  auto start = std::chrono::steady_clock::now();
  SinglePeakedSolution sol;
  sol.instance = materialize_matrices(li);
  validate_instance(sol.instance);
  MetaGraph meta = build_meta_graph(li.n(), [&](std::size_t i, std::size_t j) {
    LineWeight w = weight_single_peaked(li, sol.instance, i, j);
    return std::make_pair(std::move(w.w), std::move(w.profile));
  });
  PipelineResult res = run_alternating_pipeline(sol.instance, meta);
  sol.cost = res.path.total;
  sol.path = std::move(res.path);
  sol.alternating = std::move(res.alternating);
  sol.weights = std::move(meta.weight);
  sol.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return sol;
}

}  // namespace eqt
