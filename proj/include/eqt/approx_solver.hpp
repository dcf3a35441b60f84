#pragma once

// Additive approximation via alternating paths.
//
// An alternating path interleaves row strategies and column count profiles;
// its edges carry one-sided incentive costs (T_r(x) for row -> profile,
// T_x(r) for profile -> row). Any alternating path between the endpoint
// halves of the two equilibria converts into a transformation path of exactly
// twice its cost, and the optimum is exactly twice the cheapest alternating
// path.
//
// The pipeline: for every ordered row pair (i, j) pick a cheap intermediate
// profile with m LP relaxations plus rounding, route over the resulting
// complete digraph on row strategies, patch in the endpoint profiles, and
// double the result into a transformation path.

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eqt/errors.hpp"
#include "eqt/game.hpp"
#include "eqt/lp_simplex.hpp"

namespace eqt {

struct MatrixNorms {
  Rational norm_R;
  Rational norm_C;
};

// Entrywise 1-norms, summing absolute values of the finite entries.
inline MatrixNorms matrix_norms(const PayoffMatrices& g) {
  MatrixNorms out;
  for (std::size_t i = 0; i < g.m(); ++i) {
    for (std::size_t q = 0; q < g.n(); ++q) {
      if (g.row(i, q).is_finite()) out.norm_R += g.row(i, q).value().abs();
      if (g.col(i, q).is_finite()) out.norm_C += g.col(i, q).value().abs();
    }
  }
  return out;
}

// Per-edge rounding slack 2|R| + |C|.
inline Rational edge_gap_bound(const PayoffMatrices& g) {
  MatrixNorms nm = matrix_norms(g);
  return Rational(2) * nm.norm_R + nm.norm_C;
}

// Guaranteed additive error of solve_approx: 2m(2|R| + |C|). Contains no k.
inline Rational additive_bound(const PayoffMatrices& g) {
  return Rational(2) * Rational(static_cast<std::int64_t>(g.m())) * edge_gap_bound(g);
}

inline void require_finite(const PayoffMatrices& g, const char* who) {
  if (!g.all_finite()) {
    throw UnsupportedInstance(std::string(who) +
                              ": -inf payoffs cannot be expressed in the LP relaxation; use the exact solver");
  }
}

struct WeightLpResult {
  Rational w_star;
  std::vector<Rational> x;  // fractional profile, sums to k
  std::size_t z = 0;        // row assumed to be the best response to x
};

// LP relaxation of the cheapest length-2 alternating path r_i -> x -> r_j.
// One LP per candidate best response z; the smallest optimum wins (ties to
// the smallest z).
inline WeightLpResult weight_lp(const Instance& inst, std::size_t i, std::size_t j) {
  const PayoffMatrices& g = inst.game;
  require_finite(g, "weight_lp");
  if (i >= g.m() || j >= g.m()) throw InvalidInput("weight_lp: row out of range");
  if (i == j) throw InvalidInput("weight_lp: rows must differ");
  const std::size_t m = g.m();
  const std::size_t n = g.n();
  const Rational base = best_column_entry(g, i) * Rational(inst.k);

  std::optional<WeightLpResult> best;
  for (std::size_t z = 0; z < m; ++z) {
    LinearProgram lp;
    lp.objective.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
      lp.objective[q] = g.row(z, q).value() - g.row(j, q).value() - g.col(i, q).value();
    }
    for (std::size_t zp = 0; zp < m; ++zp) {
      if (zp == z) continue;
      LinearConstraint c;
      c.relation = Relation::kGreaterEqual;
      c.coefficients.resize(n);
      for (std::size_t q = 0; q < n; ++q) c.coefficients[q] = g.row(z, q).value() - g.row(zp, q).value();
      lp.constraints.push_back(std::move(c));
    }
    lp.constraints.push_back(
        LinearConstraint{std::vector<Rational>(n, Rational(1)), Relation::kEqual, Rational(inst.k)});

    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::kUnbounded) {
      throw InternalError("weight_lp: bounded LP reported unbounded");
    }
    if (sol.status != LpStatus::kOptimal) continue;
    Rational value = base + sol.objective_value;
    if (!best || value < best->w_star) best = WeightLpResult{std::move(value), std::move(sol.x), z};
  }
  if (!best) throw InternalError("weight_lp: no feasible best-response row");
  return *best;
}

// Column whose largest row payoff is smallest (ties to the smallest index).
inline std::size_t rounding_sink(const PayoffMatrices& g) {
  std::size_t u = 0;
  std::optional<Payoff> best;
  for (std::size_t q = 0; q < g.n(); ++q) {
    Payoff col_max = Payoff::neg_inf();
    for (std::size_t p = 0; p < g.m(); ++p) col_max = std::max(col_max, g.row(p, q));
    if (!best || col_max < *best) {
      best = col_max;
      u = q;
    }
  }
  return u;
}

// Floors every coordinate and hands the whole deficit to rounding_sink.
// z_used is accepted for symmetry with the LP result; the rule ignores it.
inline CountProfile round_profile(const PayoffMatrices& g, std::span<const Rational> x,
                                  std::size_t /*z_used*/) {
  if (x.size() != g.n()) throw InvalidInput("round_profile: dimension mismatch");
  std::vector<std::int64_t> counts(x.size());
  Rational sum;
  std::int64_t floors = 0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (x[q].sign() < 0) throw InvalidInput("round_profile: negative coordinate");
    Rational f = x[q].floor();
    if (!f.is_small()) throw InvalidInput("round_profile: coordinate too large");
    counts[q] = f.to_int64();
    floors += counts[q];
    sum += x[q];
  }
  if (!sum.is_integer()) throw InvalidInput("round_profile: coordinates must sum to an integer k");
  if (!sum.is_small()) throw InvalidInput("round_profile: coordinate sum too large");
  std::int64_t k = sum.to_int64();
  counts[rounding_sink(g)] += k - floors;
  return CountProfile(std::move(counts));
}

struct EdgeWeightResult {
  Rational w_star;
  Cost w_rounded;
  CountProfile profile;
  std::size_t best_response_row = 0;
  std::vector<Rational> fractional;
};

inline EdgeWeightResult weight(const Instance& inst, std::size_t i, std::size_t j) {
  WeightLpResult lp = weight_lp(inst, i, j);
  EdgeWeightResult out;
  out.profile = round_profile(inst.game, lp.x, lp.z);
  out.w_rounded = column_incentive_cost(inst.game, i, out.profile) +
                  row_incentive_cost(inst.game, out.profile, j);
  out.w_star = std::move(lp.w_star);
  out.best_response_row = lp.z;
  out.fractional = std::move(lp.x);
  if (out.w_rounded < Cost(out.w_star)) {
    throw InternalError("weight: rounded cost below the LP lower bound");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alternating paths

struct RowVertex {
  std::size_t row = 0;
  friend bool operator==(const RowVertex&, const RowVertex&) = default;
};

using AltVertex = std::variant<RowVertex, CountProfile>;

inline bool is_row(const AltVertex& v) { return std::holds_alternative<RowVertex>(v); }

inline std::string to_string(const AltVertex& v) {
  if (is_row(v)) return "r" + std::to_string(std::get<RowVertex>(v).row + 1);
  return std::get<CountProfile>(v).str();
}

struct AlternatingPath {
  std::vector<AltVertex> vertices;
  std::vector<Cost> edge_costs;
  Cost total;

  std::size_t edges() const { return edge_costs.size(); }
};

inline AlternatingPath make_alternating_path(const Instance& inst, std::vector<AltVertex> vertices) {
  if (vertices.empty()) throw InvalidInput("alternating path: no vertices");
  AlternatingPath p;
  p.vertices = std::move(vertices);
  for (const auto& v : p.vertices) {
    if (is_row(v)) {
      if (std::get<RowVertex>(v).row >= inst.game.m()) throw InvalidInput("alternating path: row out of range");
    } else if (!std::get<CountProfile>(v).valid_for(inst.game.n(), inst.k)) {
      throw InvalidInput("alternating path: invalid profile " + std::get<CountProfile>(v).str());
    }
  }
  for (std::size_t t = 0; t + 1 < p.vertices.size(); ++t) {
    const AltVertex& a = p.vertices[t];
    const AltVertex& b = p.vertices[t + 1];
    if (is_row(a) == is_row(b)) throw InvalidInput("alternating path: vertex kinds must alternate");
    Cost c = is_row(a) ? column_incentive_cost(inst.game, std::get<RowVertex>(a).row, std::get<CountProfile>(b))
                       : row_incentive_cost(inst.game, std::get<CountProfile>(a), std::get<RowVertex>(b).row);
    p.total += c;
    p.edge_costs.push_back(std::move(c));
  }
  return p;
}

// Splits a transformation path (r1,x1) -> (r2,x2) -> ... into the two
// alternating paths r1 -> x2 -> r3 -> ... and x1 -> r2 -> x3 -> ...; their
// costs sum to the transformation path's cost.
inline std::pair<AlternatingPath, AlternatingPath> decompose_transformation_path(
    const Instance& inst, std::span<const State> states) {
  if (states.empty()) throw InvalidInput("decompose: empty path");
  std::vector<AltVertex> a;
  std::vector<AltVertex> b;
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (t % 2 == 0) {
      a.emplace_back(RowVertex{states[t].row});
      b.emplace_back(states[t].cols);
    } else {
      a.emplace_back(states[t].cols);
      b.emplace_back(RowVertex{states[t].row});
    }
  }
  return {make_alternating_path(inst, std::move(a)), make_alternating_path(inst, std::move(b))};
}

enum class Endpoint { kRow, kProfile };

inline const char* to_string(Endpoint e) { return e == Endpoint::kRow ? "row" : "profile"; }

// Doubles an alternating path into a transformation path, for all four
// endpoint shapes. The path is extended by the missing half of each
// equilibrium (x1 before r1, r1 before x1, and symmetrically at the end);
// every window of two consecutive vertices of the extension is one state.
// Interior edges are then paid twice and the two extension edges cost
// nothing because the endpoints are equilibria.
inline TransformationPath build_transformation_path(const Instance& inst, const AlternatingPath& path) {
  if (path.vertices.empty()) throw InvalidInput("build_transformation_path: empty alternating path");
  const AltVertex& first = path.vertices.front();
  const AltVertex& last = path.vertices.back();
  bool starts_ok = is_row(first) ? std::get<RowVertex>(first).row == inst.initial.row
                                 : std::get<CountProfile>(first) == inst.initial.cols;
  bool ends_ok = is_row(last) ? std::get<RowVertex>(last).row == inst.target.row
                              : std::get<CountProfile>(last) == inst.target.cols;
  if (!starts_ok) throw InvalidInput("build_transformation_path: path does not start at r(1) or C(1)");
  if (!ends_ok) throw InvalidInput("build_transformation_path: path does not end at r* or C*");
  for (const Cost& c : path.edge_costs) {
    if (c.is_inf()) throw InvalidInput("build_transformation_path: infinite edge");
  }

  std::vector<AltVertex> ext;
  ext.reserve(path.vertices.size() + 2);
  if (is_row(first)) {
    ext.emplace_back(inst.initial.cols);
  } else {
    ext.emplace_back(RowVertex{inst.initial.row});
  }
  ext.insert(ext.end(), path.vertices.begin(), path.vertices.end());
  if (is_row(last)) {
    ext.emplace_back(inst.target.cols);
  } else {
    ext.emplace_back(RowVertex{inst.target.row});
  }

  std::vector<State> states;
  states.reserve(ext.size() - 1);
  for (std::size_t t = 0; t + 1 < ext.size(); ++t) {
    const AltVertex& a = ext[t];
    const AltVertex& b = ext[t + 1];
    if (is_row(a) == is_row(b)) throw InvalidInput("build_transformation_path: vertex kinds must alternate");
    if (is_row(a)) {
      states.push_back(State{std::get<RowVertex>(a).row, std::get<CountProfile>(b)});
    } else {
      states.push_back(State{std::get<RowVertex>(b).row, std::get<CountProfile>(a)});
    }
  }

  TransformationPath out = make_transformation_path(inst, std::move(states));
  Cost doubled = path.total + path.total;
  if (out.total != doubled || out.edges() != path.edges() + 1) {
    throw InternalError("build_transformation_path: doubling identity violated (" + out.total.str() +
                        " vs 2*" + path.total.str() + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Routing over row strategies

// Complete digraph on row strategies; edge (i, j) stands for the length-2
// alternating path r_i -> profile(i, j) -> r_j of cost weight(i, j).
struct MetaGraph {
  Matrix<Cost> weight;
  Matrix<CountProfile> profile;

  std::size_t size() const { return weight.rows(); }
};

using WeightFunction = std::function<std::pair<Cost, CountProfile>(std::size_t, std::size_t)>;

inline MetaGraph build_meta_graph(std::size_t m, const WeightFunction& fn) {
  MetaGraph g{Matrix<Cost>(m, m), Matrix<CountProfile>(m, m)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      auto [w, x] = fn(i, j);
      g.weight(i, j) = std::move(w);
      g.profile(i, j) = std::move(x);
    }
  }
  return g;
}

// All-pairs shortest paths (Floyd-Warshall); labels compare by cost, then
// by number of meta-edges.
class RowRoutes {
 public:
  explicit RowRoutes(const Matrix<Cost>& w) : m_(w.rows()), cost_(m_, m_), hops_(m_, m_), next_(m_, m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (i == j) {
          cost_(i, j) = Cost::zero();
          hops_(i, j) = 0;
        } else {
          cost_(i, j) = w(i, j);
          hops_(i, j) = 1;
        }
        next_(i, j) = j;
      }
    }
    for (std::size_t v = 0; v < m_; ++v) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (cost_(i, v).is_inf()) continue;
        for (std::size_t j = 0; j < m_; ++j) {
          if (cost_(v, j).is_inf()) continue;
          Cost via = cost_(i, v) + cost_(v, j);
          std::size_t h = hops_(i, v) + hops_(v, j);
          auto c = via <=> cost_(i, j);
          if (c < 0 || (c == 0 && h < hops_(i, j))) {
            cost_(i, j) = std::move(via);
            hops_(i, j) = h;
            next_(i, j) = next_(i, v);
          }
        }
      }
    }
  }

  const Cost& cost(std::size_t i, std::size_t j) const { return cost_(i, j); }

  std::vector<std::size_t> rows(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out{i};
    while (i != j) {
      i = next_(i, j);
      out.push_back(i);
      if (out.size() > m_ + 1) throw InternalError("RowRoutes: cyclic next-hop table");
    }
    return out;
  }

 private:
  std::size_t m_;
  Matrix<Cost> cost_;
  Matrix<std::size_t> hops_;
  Matrix<std::size_t> next_;
};

struct RouteChoice {
  Cost total = Cost::inf();
  std::vector<std::size_t> rows;  // row strategies along the meta route
  bool with_initial_profile = false;
  bool with_target_profile = false;
};

// Picks the row route (and, for profile endpoints, the first/last row)
// minimizing the total alternating cost. Candidate rows are scanned in ascending order; the first minimum wins.
inline RouteChoice choose_route(const Instance& inst, const RowRoutes& routes, Endpoint s1, Endpoint s2) {
  const PayoffMatrices& g = inst.game;
  const std::size_t m = g.m();
  std::vector<std::size_t> starts;
  std::vector<std::size_t> ends;
  if (s1 == Endpoint::kRow) {
    starts = {inst.initial.row};
  } else {
    for (std::size_t p = 0; p < m; ++p) starts.push_back(p);
  }
  if (s2 == Endpoint::kRow) {
    ends = {inst.target.row};
  } else {
    for (std::size_t q = 0; q < m; ++q) ends.push_back(q);
  }
  RouteChoice best;
  std::size_t best_p = 0;
  std::size_t best_q = 0;
  bool found = false;
  for (std::size_t p : starts) {
    Cost head = s1 == Endpoint::kProfile ? row_incentive_cost(g, inst.initial.cols, p) : Cost::zero();
    for (std::size_t q : ends) {
      Cost tail = s2 == Endpoint::kProfile ? column_incentive_cost(g, q, inst.target.cols) : Cost::zero();
      Cost total = head + routes.cost(p, q) + tail;
      if (!found || total < best.total) {
        best.total = std::move(total);
        best_p = p;
        best_q = q;
        found = true;
      }
    }
  }
  best.with_initial_profile = s1 == Endpoint::kProfile;
  best.with_target_profile = s2 == Endpoint::kProfile;
  if (!best.total.is_inf()) best.rows = routes.rows(best_p, best_q);
  return best;
}

inline AlternatingPath expand_route(const Instance& inst, const MetaGraph& meta, const RouteChoice& choice) {
  if (choice.total.is_inf()) throw InvalidInput("expand_route: no finite route");
  std::vector<AltVertex> v;
  if (choice.with_initial_profile) v.emplace_back(inst.initial.cols);
  for (std::size_t t = 0; t < choice.rows.size(); ++t) {
    if (t > 0) v.emplace_back(meta.profile(choice.rows[t - 1], choice.rows[t]));
    v.emplace_back(RowVertex{choice.rows[t]});
  }
  if (choice.with_target_profile) v.emplace_back(inst.target.cols);
  AlternatingPath path = make_alternating_path(inst, std::move(v));
  if (path.total != choice.total) {
    throw InternalError("expand_route: expanded cost " + path.total.str() + " differs from route cost " +
                        choice.total.str());
  }
  return path;
}

inline AlternatingPath best_alternating_path(const Instance& inst, const MetaGraph& meta, Endpoint s1,
                                             Endpoint s2) {
  RowRoutes routes(meta.weight);
  return expand_route(inst, meta, choose_route(inst, routes, s1, s2));
}

struct LpMetaGraph {
  MetaGraph graph;
  Matrix<Rational> w_star;
};

inline LpMetaGraph build_lp_meta_graph(const Instance& inst) {
  require_finite(inst.game, "build_lp_meta_graph");
  const std::size_t m = inst.game.m();
  Matrix<Rational> w_star(m, m);
  MetaGraph graph = build_meta_graph(m, [&](std::size_t i, std::size_t j) {
    EdgeWeightResult r = weight(inst, i, j);
    w_star(i, j) = r.w_star;
    return std::make_pair(r.w_rounded, r.profile);
  });
  return {std::move(graph), std::move(w_star)};
}

inline AlternatingPath best_alternating_path(const Instance& inst, Endpoint s1, Endpoint s2) {
  return best_alternating_path(inst, build_lp_meta_graph(inst).graph, s1, s2);
}

struct PipelineResult {
  TransformationPath path;
  AlternatingPath alternating;
  Endpoint from = Endpoint::kRow;
  Endpoint to = Endpoint::kRow;
};

// Best of the four endpoint combinations, doubled into a transformation path.
inline PipelineResult run_alternating_pipeline(const Instance& inst, const MetaGraph& meta) {
  RowRoutes routes(meta.weight);
  std::optional<RouteChoice> best;
  Endpoint best_from = Endpoint::kRow;
  Endpoint best_to = Endpoint::kRow;
  for (Endpoint s1 : {Endpoint::kRow, Endpoint::kProfile}) {
    for (Endpoint s2 : {Endpoint::kRow, Endpoint::kProfile}) {
      RouteChoice c = choose_route(inst, routes, s1, s2);
      if (!best || c.total < best->total) {
        best = std::move(c);
        best_from = s1;
        best_to = s2;
      }
    }
  }
  if (best->total.is_inf()) throw InvalidInput("alternating pipeline: target unreachable at finite cost");
  PipelineResult out;
  out.alternating = expand_route(inst, meta, *best);
  out.path = build_transformation_path(inst, out.alternating);
  out.from = best_from;
  out.to = best_to;
  return out;
}

// Cost of the cheapest four-way route on arbitrary meta weights.
inline Cost min_route_cost(const Instance& inst, const Matrix<Cost>& weights) {
  RowRoutes routes(weights);
  Cost best = Cost::inf();
  for (Endpoint s1 : {Endpoint::kRow, Endpoint::kProfile}) {
    for (Endpoint s2 : {Endpoint::kRow, Endpoint::kProfile}) {
      best = std::min(best, choose_route(inst, routes, s1, s2).total);
    }
  }
  return best;
}

struct ApproxOptions {
  // Also route on the unrounded LP weights; twice that route cost is a lower
  // bound on the optimum.
  bool diagnostics = false;
};

struct ApproxSolution {
  TransformationPath path;
  Cost cost;
  AlternatingPath alternating;
  Endpoint from = Endpoint::kRow;
  Endpoint to = Endpoint::kRow;
  Matrix<Rational> w_star;
  Matrix<Cost> w_rounded;
  Rational bound;
  std::optional<Cost> lower_bound;
  std::int64_t runtime_ms = 0;
};

inline ApproxSolution solve_approx(const Instance& inst, const ApproxOptions& options = {}) {
  auto start = std::chrono::steady_clock::now();
  validate_instance(inst);
  require_finite(inst.game, "solve_approx");
  LpMetaGraph meta = build_lp_meta_graph(inst);
  PipelineResult res = run_alternating_pipeline(inst, meta.graph);

  ApproxSolution sol;
  sol.cost = res.path.total;
  sol.path = std::move(res.path);
  sol.alternating = std::move(res.alternating);
  sol.from = res.from;
  sol.to = res.to;
  sol.w_rounded = meta.graph.weight;
  sol.w_star = std::move(meta.w_star);
  sol.bound = additive_bound(inst.game);
  if (options.diagnostics) {
    const std::size_t m = inst.game.m();
    Matrix<Cost> star(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) star(i, j) = Cost(sol.w_star(i, j));
      }
    }
    Cost route = min_route_cost(inst, star);
    sol.lower_bound = route + route;
  }
  sol.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return sol;
}

}  // namespace eqt
