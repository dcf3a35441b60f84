// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All comparisons are exact rational (in)equalities; the
// only numeric limits are the runtime budgets below.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eqt/eqt.hpp"
#include "support/oracles.hpp"

namespace {

using namespace eqt;

constexpr double kCriterion1BudgetSeconds = 60.0;
constexpr double kCriterion7BudgetSeconds = 120.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Instances shared by criteria 1, 3 and 4.
std::vector<Instance> small_instances(std::uint64_t first_seed, std::size_t count) {
  std::vector<Instance> out;
  for (std::uint64_t s = first_seed; out.size() < count; ++s) {
    std::size_t m = 1 + s % 3;
    std::size_t n = 1 + (s / 3) % 3;
    std::int64_t k = 1 + static_cast<std::int64_t>((s / 9) % 3);
    out.push_back(gen_random(m, n, k, s, 4));
  }
  return out;
}

std::vector<ExactSolution> g_solutions_1;
std::vector<ExactSolution> g_solutions_3;
std::vector<Instance> g_instances_1;
std::vector<Instance> g_instances_3;

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  g_instances_1 = small_instances(1, 200);
  for (std::size_t t = 0; t < g_instances_1.size(); ++t) {
    const Instance& inst = g_instances_1[t];
    ExactSolution sol = solve_exact({inst});
    oracle::Cost ref = oracle::min_cost_bounded(inst, 2 * inst.game.m() - 1);
    if (!oracle::equals(ref, sol.opt_cost)) {
      o.fail("instance " + std::to_string(t) + ": solver " + sol.opt_cost.str() + " vs enumeration " +
             oracle::str(ref));
    }
    g_solutions_1.push_back(std::move(sol));
  }
  double secs = seconds_since(t0);
  if (secs >= kCriterion1BudgetSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  o.detail = "200 instances (m,n,k <= 3), exact equality, " + std::to_string(secs) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int shapes[2][2] = {{0, 0}, {0, 0}};
  for (int t = 0; t < 500; ++t) {
    std::size_t m = 1 + rng() % 3;
    std::size_t n = 1 + rng() % 3;
    std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 3);
    Instance inst = gen_random(m, n, k, 10'000 + static_cast<std::uint64_t>(t), 5);
    std::vector<CountProfile> profiles = enumerate_count_profiles(n, k);
    bool from_profile = t % 2 == 1;
    bool to_profile = (t / 2) % 2 == 1;
    std::size_t middle_rows = rng() % 4;

    std::vector<AltVertex> v;
    if (from_profile) {
      v.emplace_back(inst.initial.cols);
      v.emplace_back(RowVertex{rng() % m});
    } else {
      v.emplace_back(RowVertex{inst.initial.row});
    }
    for (std::size_t r = 0; r < middle_rows; ++r) {
      v.emplace_back(profiles[rng() % profiles.size()]);
      v.emplace_back(RowVertex{rng() % m});
    }
    if (to_profile) {
      v.emplace_back(inst.target.cols);
    } else {
      v.emplace_back(profiles[rng() % profiles.size()]);
      v.emplace_back(RowVertex{inst.target.row});
    }
    AlternatingPath p = make_alternating_path(inst, std::move(v));
    ++shapes[from_profile][to_profile];
    try {
      TransformationPath tp = build_transformation_path(inst, p);
      Cost recomputed = path_cost(inst, tp.states);
      if (recomputed != p.total + p.total) {
        o.fail("path " + std::to_string(t) + ": " + recomputed.str() + " != 2*" + p.total.str());
      }
      if (tp.edges() != p.edges() + 1) o.fail("path " + std::to_string(t) + ": wrong length");
    } catch (const std::exception& e) {
      o.fail("path " + std::to_string(t) + ": " + e.what());
    }
  }
  std::ostringstream d;
  d << "500 paths, shapes (row->row " << shapes[0][0] << ", row->profile " << shapes[0][1] << ", profile->row "
    << shapes[1][0] << ", profile->profile " << shapes[1][1] << ")";
  o.detail = d.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  g_instances_3 = small_instances(5000, 100);
  for (std::size_t t = 0; t < g_instances_3.size(); ++t) {
    const Instance& inst = g_instances_3[t];
    ExactSolution sol = solve_exact({inst});
    oracle::Cost alt = oracle::min_alternating_cost(inst);
    oracle::Cost doubled = alt ? oracle::Cost(*alt * 2) : alt;
    if (!oracle::equals(doubled, sol.opt_cost)) {
      o.fail("instance " + std::to_string(t) + ": OPT " + sol.opt_cost.str() + " vs 2*" + oracle::str(alt));
    }
    g_solutions_3.push_back(std::move(sol));
  }
  o.detail = "100 instances, OPT = 2 x brute-force alternating minimum";
  return o;
}

Outcome criterion4() {
  Outcome o;
  if (g_solutions_1.empty()) criterion1();
  if (g_solutions_3.empty()) criterion3();
  std::size_t checked = 0, longest = 0;
  auto check = [&](const std::vector<Instance>& insts, const std::vector<ExactSolution>& sols) {
    for (std::size_t t = 0; t < sols.size(); ++t) {
      std::size_t limit = 2 * insts[t].game.m() - 1;
      longest = std::max(longest, sols[t].path.edges());
      ++checked;
      if (sols[t].path.edges() > limit) {
        o.fail("instance " + std::to_string(t) + ": " + std::to_string(sols[t].path.edges()) + " edges > " +
               std::to_string(limit));
      }
    }
  };
  check(g_instances_1, g_solutions_1);
  check(g_instances_3, g_solutions_3);
  o.detail = std::to_string(checked) + " optimal paths, longest " + std::to_string(longest) + " edges";
  return o;
}

std::vector<Instance> finite_instances() {
  std::vector<Instance> out;
  for (std::uint64_t s = 1; out.size() < 100; ++s) {
    std::size_t m = 2 + s % 2;
    std::size_t n = 2 + (s / 2) % 2;
    std::int64_t k = 2 + static_cast<std::int64_t>((s / 4) % 4);
    out.push_back(gen_random(m, n, k, 90'000 + s, 5));
  }
  return out;
}

Outcome criterion5() {
  Outcome o;
  std::size_t edges = 0;
  Rational worst_ratio;
  for (const Instance& inst : finite_instances()) {
    Rational bound = edge_gap_bound(inst.game);
    for (std::size_t i = 0; i < inst.game.m(); ++i) {
      for (std::size_t j = 0; j < inst.game.m(); ++j) {
        if (i == j) continue;
        EdgeWeightResult w = weight(inst, i, j);
        Rational gap = w.w_rounded.value() - w.w_star;
        ++edges;
        if (gap.sign() < 0 || gap > bound) o.fail("gap " + gap.str() + " outside [0, " + bound.str() + "]");
        if (bound.sign() > 0) worst_ratio = std::max(worst_ratio, gap / bound);
      }
    }
  }
  o.detail = std::to_string(edges) + " edges, largest gap/bound " + worst_ratio.str();
  return o;
}

Instance scale_k(const Instance& inst, std::int64_t factor) {
  Instance out = inst;
  out.k *= factor;
  for (auto* s : {&out.initial, &out.target}) {
    std::vector<std::int64_t> c = s->cols.counts();
    for (auto& v : c) v *= factor;
    s->cols = CountProfile(std::move(c));
  }
  return out;
}

Outcome criterion6() {
  Outcome o;
  std::size_t same = 0, total = 0, within = 0;
  Rational worst;
  for (const Instance& inst : finite_instances()) {
    Rational bound = additive_bound(inst.game);
    Rational gap = solve_approx(inst).cost.value() - solve_exact({inst}).opt_cost.value();
    if (gap.sign() < 0 || gap > bound) o.fail("gap " + gap.str() + " outside [0, " + bound.str() + "]");

    Instance big = scale_k(inst, 4);
    Rational big_bound = additive_bound(big.game);
    Rational big_gap = solve_approx(big).cost.value() - solve_exact({big}).opt_cost.value();
    ++total;
    if (big_bound != bound) o.fail("bound changed under k x4");
    if (big_gap.sign() < 0 || big_gap > bound) {
      o.fail("k x4 gap " + big_gap.str() + " outside [0, " + bound.str() + "]");
    } else {
      ++within;
    }
    if (big_gap == gap) {
      ++same;
    } else {
      o.fail("k x4 changed the gap from " + gap.str() + " to " + big_gap.str());
    }
    if (bound.sign() > 0) worst = std::max(worst, std::max(gap, big_gap) / bound);
  }
  std::ostringstream d;
  d << total << " instances; gap <= bound at k and 4k on " << within << "; gap identical after k x4 on " << same
    << "; largest gap/bound " << worst.str();
  o.detail = d.str();
  return o;
}

// All collections of w distinct 3-subsets of {1..3s} for s <= 2, s <= w <= 4.
std::vector<ExactCoverInput> exact_cover_corpus() {
  std::vector<ExactCoverInput> out;
  for (std::int64_t s = 1; s <= 2; ++s) {
    std::vector<std::vector<std::int64_t>> triples;
    for (std::int64_t a = 1; a <= 3 * s; ++a)
      for (std::int64_t b = a + 1; b <= 3 * s; ++b)
        for (std::int64_t c = b + 1; c <= 3 * s; ++c) triples.push_back({a, b, c});
    for (std::size_t w = static_cast<std::size_t>(s); w <= 4; ++w) {
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == w) {
          ExactCoverInput in{s, {}};
          for (auto p : pick) in.subsets.push_back(triples[p]);
          out.push_back(std::move(in));
          return;
        }
        for (std::size_t p = from; p < triples.size(); ++p) {
          pick.push_back(p);
          rec(p + 1);
          pick.pop_back();
        }
      };
      rec(0);
    }
  }
  return out;
}

Outcome criterion7() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t yes = 0, total = 0, witnesses = 0;
  for (const ExactCoverInput& in : exact_cover_corpus()) {
    Instance g = gen_exact_cover(in);
    bool cover = oracle::exact_cover_exists(in);
    ExactSolution sol = solve_exact({g});
    bool zero = sol.opt_cost.is_zero();
    ++total;
    if (cover != zero) o.fail("instance " + std::to_string(total) + ": cover " + std::to_string(cover) + ", OPT " + sol.opt_cost.str());
    if (cover) {
      ++yes;
      // Witness through the first exact cover found.
      const std::size_t w = in.w();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t q = 0; q < w; ++q) {
          if (mask >> q & 1) chosen.push_back(q);
        }
        if (static_cast<std::int64_t>(chosen.size()) != in.s) continue;
        ExactCoverInput sub{in.s, {}};
        for (auto q : chosen) sub.subsets.push_back(in.subsets[q]);
        if (!oracle::exact_cover_exists(sub)) continue;
        std::vector<State> path = exact_cover_witness(g, chosen);
        PathReport r = validate_path(g, path);
        ++witnesses;
        if (!r.valid || !r.total.is_zero()) o.fail("witness path invalid or costly: " + r.total.str());
        break;
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= kCriterion7BudgetSeconds) o.fail("runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << total << " inputs (" << yes << " YES), " << witnesses << " witnesses at cost 0, " << secs << " s";
  o.detail = d.str();
  return o;
}

std::vector<KnapsackInput> knapsack_corpus() {
  std::vector<KnapsackInput> out;
  std::mt19937_64 rng(77);
  while (out.size() < 300) {
    KnapsackInput in;
    std::size_t items = 1 + rng() % 4;
    in.k = 1 + static_cast<std::int64_t>(rng() % 2);
    for (std::size_t i = 0; i < items; ++i) {
      in.weights.push_back(1 + static_cast<std::int64_t>(rng() % 4));
      in.values.push_back(static_cast<std::int64_t>(rng() % 5));
    }
    std::int64_t wmax = *std::max_element(in.weights.begin(), in.weights.end());
    std::int64_t vmax = *std::max_element(in.values.begin(), in.values.end());
    in.W = wmax + static_cast<std::int64_t>(rng() % 5);
    in.V = std::max<std::int64_t>(1, vmax + static_cast<std::int64_t>(rng() % 5));
    out.push_back(std::move(in));
  }
  return out;
}

Outcome criterion8() {
  Outcome o;
  std::size_t yes = 0, lemma_ok = 0;
  auto corpus = knapsack_corpus();
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const KnapsackInput& in = corpus[t];
    KnapsackGadget g = gen_knapsack(in);
    bool answer = oracle::exact_k_knapsack_exists(in);
    ExactSolution sol = solve_exact({g.instance});
    bool below = sol.opt_cost.is_finite() && sol.opt_cost.value() <= g.threshold;
    if (answer != below) {
      o.fail("input " + std::to_string(t) + ": knapsack " + std::to_string(answer) + ", OPT " + sol.opt_cost.str() +
             " vs threshold " + g.threshold.str());
    }
    if (answer) ++yes;

    // Reweighting: classical subsets of the shifted input are exactly the
    // size-k subsets of the original.
    KnapsackInput shifted = reweight_exact_k(in);
    std::vector<std::size_t> sizes;
    bool classical = oracle::subset_knapsack_exists(shifted, std::nullopt, &sizes);
    bool size_k = oracle::subset_knapsack_exists(in, static_cast<std::size_t>(in.k));
    bool sizes_ok = std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == static_cast<std::size_t>(in.k); });
    if (classical != size_k || !sizes_ok) {
      o.fail("input " + std::to_string(t) + ": reweighting maps " + std::to_string(size_k) + " to " +
             std::to_string(classical));
    } else {
      ++lemma_ok;
    }
  }
  std::ostringstream d;
  d << corpus.size() << " inputs (" << yes << " YES); reweighting correct on " << lemma_ok;
  o.detail = d.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    std::size_t n = 2 + s % 3;
    std::int64_t k = 1 + static_cast<std::int64_t>((s / 3) % 4);
    LineInstance li = gen_random_single_peaked(n, k, 300 + s, 6);
    try {
      SinglePeakedSolution sp = solve_single_peaked(li);
      ExactSolution ex = solve_exact({materialize_matrices(li)});
      if (sp.cost != ex.opt_cost) {
        o.fail("seed " + std::to_string(s) + ": " + sp.cost.str() + " vs exact " + ex.opt_cost.str());
      }
    } catch (const InternalError& e) {
      o.fail("seed " + std::to_string(s) + ": " + e.what());
    }
  }
  o.detail = "50 line instances (n,k <= 4), exact equality, confinement held";
  return o;
}

LinearProgram random_lp(std::mt19937_64& rng) {
  LinearProgram lp;
  std::size_t n = 1 + rng() % 3;
  std::size_t rows = 1 + rng() % 4;
  auto coef = [&] { return Rational(static_cast<std::int64_t>(rng() % 9) - 4); };
  for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(coef());
  for (std::size_t i = 0; i < rows; ++i) {
    LinearConstraint c;
    for (std::size_t j = 0; j < n; ++j) c.coefficients.push_back(coef());
    c.relation = static_cast<Relation>(rng() % 3);
    c.rhs = Rational(static_cast<std::int64_t>(rng() % 13) - 4);
    lp.constraints.push_back(std::move(c));
  }
  return lp;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(10);
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 200; ++t) {
    LinearProgram lp = random_lp(rng);
    LpSolution s = solve_lp(lp);
    oracle::LpAnswer ref = oracle::solve_lp_reference(lp);
    ++counts[static_cast<int>(s.status)];
    if (s.status != ref.status) {
      o.fail("lp " + std::to_string(t) + ": status " + to_string(s.status) + " vs " + to_string(ref.status));
      continue;
    }
    if (s.status == LpStatus::kOptimal) {
      if (s.objective_value.to_big() != ref.value) o.fail("lp " + std::to_string(t) + ": objective differs");
      if (!satisfies(lp, s.x)) o.fail("lp " + std::to_string(t) + ": certificate has nonzero residual");
    }
  }
  std::ostringstream d;
  d << "200 LPs (" << counts[0] << " optimal, " << counts[1] << " infeasible, " << counts[2] << " unbounded)";
  o.detail = d.str();
  return o;
}

}  // namespace

// With no arguments every criterion runs; otherwise only the listed ids.
int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact solver matches exhaustive path enumeration", criterion1},
      {2, "alternating-path doubling identity", criterion2},
      {3, "optimum is twice the cheapest alternating path", criterion3},
      {4, "optimal paths have at most 2m-1 edges", criterion4},
      {5, "per-edge rounding gap within 2|R|+|C|", criterion5},
      {6, "approximation within 2m(2|R|+|C|), independent of k", criterion6},
      {7, "exact-cover gadget: cover exists iff zero-cost path", criterion7},
      {8, "knapsack gadget: solution exists iff cost <= 4 eps k V; reweighting", criterion8},
      {9, "line solver matches exact solver", criterion9},
      {10, "simplex matches vertex enumeration", criterion10},
  };
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::stoi(argv[a]));
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " -- " << o.detail << "\n";
    for (const auto& f : o.failures) std::cout << "         " << f << "\n";
    std::cout.flush();
    if (!o.pass) ++failed;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
