// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "helpers.hpp"
#include "smr/smr.hpp"
#ifdef SMR_HAVE_CLI
#include "smr_cli/cli.hpp"
#endif

namespace smr {
namespace {

using testing::random_sm;
using testing::random_sr;
using testing::with_restrictions;

struct Outcome {
  bool pass = true;
  std::string failure;
  std::string note;
  double budget_s = 0;  // 0 means unbounded

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      failure = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.failure = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.pass && o.budget_s > 0 && secs > o.budget_s) {
    o.pass = false;
    o.failure = "over the " + std::to_string(o.budget_s) + " s budget";
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << name << " [" << timing << "] " << (o.pass ? o.note : o.failure)
            << std::endl;
  failures += !o.pass;
}

std::vector<Agent> sorted_matched(const Matching& m) { return matched_agents(m); }

// --- 1 ----------------------------------------------------------------------

void fig1_suite(Outcome& o) {
  o.budget_s = 1;
  auto [inst, r] = testing::fig1();
  auto feas = sm_restricted_feasible(inst, r);
  o.require(feas.status == FeasibilityStatus::infeasible, "restricted feasibility should be infeasible");
  auto mv = sm_min_restricted_violations(inst, r);
  o.require(mv.violations.total() == 2, "min violations should be 2");
  auto bp = minbp_exact(inst, r);
  o.require(bp && bp->bp.count() == 1, "min-bp should be 1");
  Matching m1 = testing::matching(inst, {{"u1", "w1"}, {"u2", "w4"}, {"u4", "w3"}});
  Matching m2 = testing::matching(inst, {{"u1", "w3"}, {"u2", "w1"}, {"u4", "w4"}});
  if (bp) o.require(bp->matching == m1 || bp->matching == m2, "min-bp witness should be M1 or M2");
  o.require(oracle_min_bp(inst, r).value == 1, "oracle min-bp should be 1");
  Matching deleted = gale_shapley(inst.without_edges(r.forbidden()), Proposer::left);
  o.require(deleted == testing::matching(inst, {{"u1", "w1"}, {"u4", "w4"}}),
            "stable matching after deleting P should be {u1w1, u4w4}");
  o.require(blocking_pairs(inst, deleted).blocking == r.forbidden(),
            "that matching should be blocked exactly by the forbidden edges");
  o.note = "infeasible, violations 2, bp 1 via M" + std::string(bp && bp->matching == m1 ? "1" : "2");
}

// --- 2 ----------------------------------------------------------------------

void sm_weighted(Outcome& o) {
  o.budget_s = 30;
  int count = 0;
  for (std::uint64_t seed = 0; count < 300; ++seed) {
    auto inst = random_sm(2 + seed % 6, 10000 + seed, 0.4 + 0.1 * (seed % 7)).instance;
    std::mt19937_64 rng(seed);
    WeightAssignment w;
    for (const Edge& e : inst.edges()) w.set(e, Rational(static_cast<int>(rng() % 5) - 2));
    auto res = min_weight_stable(inst, w);
    std::optional<Rational> best;
    for (const Matching& m : oracle_stable_matchings(inst)) {
      Rational t = w.total(m);
      if (!best || t < *best) best = t;
    }
    o.require(best.has_value(), "SM instance without a stable matching");
    o.require(is_stable(inst, res.matching), "returned matching not stable, seed " + std::to_string(seed));
    o.require(res.weight == w.total(res.matching) && res.weight == *best,
              "weight differs from enumeration minimum, seed " + std::to_string(seed));
    ++count;
  }
  o.note = std::to_string(count) + " instances, n<=7, weights in [-2,2]";
}

// --- 3 ----------------------------------------------------------------------

void rural_hospitals(Outcome& o) {
  o.budget_s = 60;
  std::size_t matchings = 0;
  for (int kind = 0; kind < 2; ++kind) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto inst = kind == 0 ? random_sm(2 + seed % 6, 20000 + seed, 0.5 + 0.1 * (seed % 5)).instance
                            : random_sr(3 + seed % 8, 30000 + seed, 0.4 + 0.1 * (seed % 5)).instance;
      auto algorithmic = kind == 0 ? enumerate_stable_sm(inst) : enumerate_stable_sr(inst);
      auto reference = oracle_stable_matchings(inst);
      const std::string tag = std::string(kind == 0 ? "SM" : "SR") + " seed " + std::to_string(seed);
      o.require(!algorithmic.truncated, "enumeration truncated, " + tag);
      std::set<std::vector<Agent>> a, b;
      for (const Matching& m : algorithmic.matchings) a.insert(m.mates());
      for (const Matching& m : reference) b.insert(m.mates());
      o.require(a == b, "enumerator and oracle disagree, " + tag);
      std::set<std::vector<Agent>> matched;
      for (const Matching& m : reference) matched.insert(sorted_matched(m));
      o.require(matched.size() <= 1, "matched-agent set varies, " + tag);
      matchings += reference.size();
    }
  }
  o.note = "200 SM (n<=7) + 200 SR (n<=10), " + std::to_string(matchings) + " stable matchings";
}

// --- 4 ----------------------------------------------------------------------

void bounded_solvers(Outcome& o) {
  int instances = 0, verdicts = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto base = random_sm(3 + seed % 5, 40000 + seed, 0.5 + 0.1 * (seed % 4));
    const std::string tag = "seed " + std::to_string(seed);
    auto forbidden_only = with_restrictions(base, static_cast<int>(seed % 3), 0, seed);
    const auto& inst = forbidden_only.instance;
    const std::size_t opt_p = oracle_min_bp(inst, forbidden_only.restrictions).value;
    for (int k = 0; k <= static_cast<int>(forbidden_only.restrictions.forbidden().size()); ++k) {
      auto m = minbp_bounded_forbidden(inst, forbidden_only.restrictions, k);
      o.require(m.has_value() == (opt_p <= static_cast<std::size_t>(k)), "bounded-P verdict, " + tag);
      if (m) {
        o.require(satisfies(*m, forbidden_only.restrictions) && blocking_pairs(inst, *m).count() <= std::size_t(k),
                  "bounded-P witness, " + tag);
      }
      ++verdicts;
    }
    auto mixed = with_restrictions(base, static_cast<int>(seed % 3), static_cast<int>(seed / 3 % 2), seed);
    const std::size_t opt = oracle_min_bp(inst, mixed.restrictions).value;
    for (int l = 0; l <= 2; ++l) {
      auto m = minbp_bounded_blocking(inst, mixed.restrictions, l);
      o.require(m.has_value() == (opt <= static_cast<std::size_t>(l)), "bounded-BP verdict, " + tag);
      if (m) {
        o.require(satisfies(*m, mixed.restrictions) && blocking_pairs(inst, *m).count() <= std::size_t(l),
                  "bounded-BP witness, " + tag);
      }
      ++verdicts;
    }
    ++instances;
  }
  o.note = std::to_string(instances) + " SM instances, " + std::to_string(verdicts) + " verdicts";
}

// --- 5 ----------------------------------------------------------------------

void degree_two(Outcome& o) {
  o.budget_s = 120;
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 400; ++seed) {
    GenSpec spec;
    spec.kind = seed % 2 ? InstanceKind::roommates : InstanceKind::marriage;
    spec.n = spec.kind == InstanceKind::marriage ? 2 + static_cast<int>(seed % 6) : 3 + static_cast<int>(seed % 12);
    spec.density = 0.5 + 0.1 * (seed % 5);
    spec.degree_cap = 2;
    spec.seed = 50000 + seed;
    auto [inst, r] = with_restrictions(gen_random(spec), static_cast<int>(seed % 3), static_cast<int>(seed / 3 % 3),
                                       seed);
    const std::string tag = "seed " + std::to_string(seed);
    auto bp = minbp_degree2(inst, r);
    o.require(satisfies(bp.matching, r), "degree-2 min-bp violates restrictions, " + tag);
    o.require(bp.bp.count() == oracle_min_bp(inst, r).value, "degree-2 min-bp differs from oracle, " + tag);
    auto mv = sr_degree2_min_violations(inst, r);
    auto ref = oracle_min_violations(inst, r);
    o.require(mv.has_value() == ref.has_value(), "degree-2 min-violations existence, " + tag);
    if (mv && ref) {
      o.require(is_stable(inst, mv->matching) && mv->violations.total() == ref->value,
                "degree-2 min-violations differs from oracle, " + tag);
    }
    ++instances;
  }
  o.note = std::to_string(instances) + " instances with lists of length <= 2, n<=14";
}

// --- 6 ----------------------------------------------------------------------

void flip_subset(Outcome& o) {
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    int p = static_cast<int>(seed % 4);
    int q = static_cast<int>(seed / 4 % (4 - p));
    auto [inst, r] = with_restrictions(random_sr(3 + seed % 8, 60000 + seed, 0.6), p, q, seed);
    const std::string tag = "seed " + std::to_string(seed);
    auto ref = oracle_min_violations(inst, r);
    std::optional<int> first;
    for (int k = 0; k <= static_cast<int>(r.size()) && !first; ++k) {
      if (auto m = sr_flip_subset(inst, r, k)) {
        o.require(is_stable(inst, *m) && violation_counts(*m, r).total() <= static_cast<std::size_t>(k),
                  "flip-subset witness, " + tag);
        first = k;
      }
    }
    o.require(first.has_value() == ref.has_value(), "flip-subset existence, " + tag);
    if (first && ref) o.require(static_cast<std::size_t>(*first) == ref->value, "smallest K differs, " + tag);
    ++instances;
  }
  o.note = std::to_string(instances) + " SR instances, |P|+|Q|<=3";
}

// --- 7 ----------------------------------------------------------------------

void approx_two(Outcome& o) {
  int instances = 0, lps = 0, fallbacks = 0;
  Rational worst = 0;
  for (std::uint64_t seed = 0; instances < 200; ++seed) {
    auto [inst, r] = with_restrictions(random_sr(3 + seed % 8, 70000 + seed, 0.6), 1 + seed % 4, 0, seed);
    const std::string tag = "seed " + std::to_string(seed);
    auto ref = oracle_min_violations(inst, r);
    if (!ref) continue;
    auto approx = sr_min_restricted_violations(inst, r, ViolationMode::approx2);
    o.require(approx.has_value(), "approx2 found nothing, " + tag);
    if (!approx) continue;
    o.require(is_stable(inst, approx->matching), "approx2 matching not stable, " + tag);
    o.require(approx->violations.total() <= 2 * ref->value, "approx2 above twice the optimum, " + tag);
    if (ref->value > 0) {
      Rational ratio(static_cast<long>(approx->violations.total()), static_cast<long>(ref->value));
      ratio.canonicalize();
      if (ratio > worst) worst = ratio;
    }
    const std::size_t stable_size = irving(inst)->size();
    auto weighted = sr_min_weight_2approx(inst, approx2_weights(inst, r, stable_size));
    fallbacks += weighted.exhaustive_fallback;
    o.require(weighted.lp.half_integral(), "approx2 LP optimum not half-integral, " + tag);
    std::mt19937_64 rng(seed);
    WeightAssignment w;
    for (const Edge& e : inst.edges()) w.set(e, Rational(static_cast<int>(rng() % 7)));
    auto lp = solve_stability_lp(inst, w);
    o.require(lp && lp->half_integral(), "random-weight LP optimum not half-integral, " + tag);
    lps += 2;
    ++instances;
  }
  o.note = std::to_string(instances) + " SR instances, worst ratio " + to_string(worst) + ", " + std::to_string(lps) +
           " half-integral LP optima, " + std::to_string(fallbacks) + " full-search roundings";
}

// --- 8 ----------------------------------------------------------------------

SourceProblem graph_source(SourceKind kind, const Graph& g) { return SourceProblem{kind, g, 0}; }

void reduction_equivalences(Outcome& o) {
  int vc = 0, ind = 0, sat = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = random_graph(2 + seed % 6, 0.3 + 0.1 * (seed % 6), 80000 + seed);
    auto mode = seed % 2 ? PadMode::forced : PadMode::forbidden;
    auto rep = verify_reduction(graph_source(SourceKind::vertex_cover, g), reduce_vc_sr(g, mode));
    o.require(rep.equivalence_check == CheckStatus::pass, "vc-sr equivalence, seed " + std::to_string(seed));
    vc += rep.equivalence_check == CheckStatus::pass;
    auto rep2 = verify_reduction(graph_source(SourceKind::independent_set, g), reduce_indset_maxforced(g));
    o.require(rep2.equivalence_check == CheckStatus::pass, "indset equivalence, seed " + std::to_string(seed));
    ind += rep2.equivalence_check == CheckStatus::pass;
  }
  for (const Graph& g : {Graph::complete(4), Graph::complete_bipartite(3, 3)}) {
    o.require(oracle_vertex_cover(g) == 3, "K4/K3,3 cover number should be 3");
    auto rep = verify_reduction(graph_source(SourceKind::vertex_cover, g), reduce_vc_sr_deg3(g));
    o.require(rep.equivalence_check == CheckStatus::pass, "deg3 equivalence on K4/K3,3");
  }
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    int vars = 2 + static_cast<int>(seed % 4);
    int clauses = 1 + static_cast<int>(seed % (vars * (vars - 1) / 2));
    CnfFormula f = random_monotone_2cnf(vars, clauses, 90000 + seed);
    auto rep = verify_reduction(SourceProblem{SourceKind::w2sat, f, 0}, reduce_w2sat_sr(f));
    o.require(rep.equivalence_check == CheckStatus::pass, "w2sat equivalence, seed " + std::to_string(seed));
    sat += rep.equivalence_check == CheckStatus::pass;
  }
  o.note = "vc-sr " + std::to_string(vc) + "/100, deg3 K4+K3,3, indset " + std::to_string(ind) + "/100, w2sat " +
           std::to_string(sat) + "/60";
}

// --- 9 ----------------------------------------------------------------------

Reduction swap_ranks(Reduction r, Agent agent, int pos) {
  std::vector<std::vector<Agent>> lists(r.instance.size());
  for (Agent a = 0; a < r.instance.size(); ++a) lists[a].assign(r.instance.prefs(a).begin(), r.instance.prefs(a).end());
  std::swap(lists[agent][pos], lists[agent][pos + 1]);
  auto roles = r.instance.roles();
  r.instance = r.instance.is_marriage()
                   ? Instance::marriage(r.instance.left_count(), r.instance.right_count(), lists)
                   : Instance::roommates(r.instance.size(), lists);
  r.instance.set_roles(roles);
  return r;
}

void forward_checks(Outcome& o) {
  VerifyOptions forward_only;
  forward_only.max_target_agents = 0;
  int exactmm = 0;
  for (std::uint64_t seed = 0; seed < 40 && exactmm < 24; ++seed) {
    int t = 1 + static_cast<int>(seed % 2);
    Graph g = random_biregular_23(t, seed);
    for (int k = 0; k <= 2 * t; ++k) {
      if (!oracle_exact_maximal_matching(g, k)) continue;
      auto rep = verify_reduction(SourceProblem{SourceKind::exact_maximal_matching, g, k}, reduce_exactmm_forced(g, k),
                                  forward_only);
      o.require(rep.forward_check == CheckStatus::pass, "exactmm forward, seed " + std::to_string(seed));
      exactmm += rep.forward_check == CheckStatus::pass;
    }
  }
  o.require(exactmm >= 20, "fewer than 20 exactmm sources");
  int e3 = 0;
  for (std::uint64_t seed = 0; seed < 40 && e3 < 6; ++seed) {
    CnfFormula f = random_e3sat22(seed % 2 ? 6 : 3, seed);
    if (!oracle_satisfying_assignment(f)) continue;
    auto rep = verify_reduction(SourceProblem{SourceKind::e3sat22, f, 0}, reduce_e3sat(f), forward_only);
    o.require(rep.forward_check == CheckStatus::pass, "e3sat forward, seed " + std::to_string(seed));
    e3 += rep.forward_check == CheckStatus::pass;
  }
  o.require(e3 >= 5, "fewer than 5 satisfiable formulas");

  int mutants = 0;
  {
    Graph g = Graph::complete_bipartite(3, 2);
    Reduction good = reduce_exactmm_forced(g, 2);
    auto rep = verify_reduction(SourceProblem{SourceKind::exact_maximal_matching, g, 2},
                                swap_ranks(good, *good.instance.find_role("U1.z1"), 0), forward_only);
    o.require(rep.forward_check == CheckStatus::fail, "exactmm mutant passed the forward check");
    ++mutants;
  }
  {
    CnfFormula f = random_e3sat22(3, 0);
    Reduction good = reduce_e3sat(f);
    auto rep = verify_reduction(SourceProblem{SourceKind::e3sat22, f, 0},
                                swap_ranks(good, *good.instance.find_role("x1.x1"), 0), forward_only);
    o.require(rep.forward_check == CheckStatus::fail, "e3sat mutant passed the forward check");
    ++mutants;
  }
  {
    Graph g = Graph::complete(3);
    Reduction good = reduce_vc_sr(g, PadMode::forbidden, ReductionOptions{true});
    auto rep = verify_reduction(graph_source(SourceKind::vertex_cover, g), swap_ranks(good, 2, 0));
    o.require(rep.forward_check == CheckStatus::fail, "vc-sr mutant passed the forward check");
    ++mutants;
  }
  o.note = "exactmm " + std::to_string(exactmm) + " sources, e3sat " + std::to_string(e3) + " formulas, " +
           std::to_string(mutants) + " mutants rejected";
}

// --- 10 ---------------------------------------------------------------------

void determinism(Outcome& o) {
#ifndef SMR_HAVE_CLI
  o.require(false, "built without the command-line tool");
#else
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("smr_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto file = [&](const std::string& name) { return (dir / name).string(); };
  const std::string fig1 = std::string(SMR_TEST_DATA) + "/fig1.txt";
  std::ofstream(file("graph.txt")) << "graph 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 1 3\n";
  std::ofstream(file("bench.json")) << R"({
    "generators": [{"kind": "sm", "n": 5, "density": 0.8, "p": 2, "count": 20},
                   {"kind": "sr", "n": 8, "density": "1/2", "p": 2, "count": 20}],
    "algorithms": [{"problem": "min-bp", "algo": "exact"}, {"problem": "min-violations", "algo": "exact"},
                   {"problem": "min-violations", "algo": "approx2"}],
    "repetitions": 2
  })";
  std::ofstream(file("empty.json")) << "";
  const std::vector<std::vector<std::string>> commands = {
      {"solve", "--problem", "min-bp", "--algo", "exact", fig1},
      {"solve", "--problem", "min-violations", "--algo", "rotation", fig1},
      {"solve", "--problem", "feasible", fig1},
      {"solve", "--problem", "min-weight", fig1},
      {"oracle", "--problem", "min-bp", fig1},
      {"oracle", "--problem", "stable", fig1},
      {"oracle", "--problem", "source:vertex-cover", file("graph.txt")},
      {"--seed", "7", "gen", "--kind", "sr", "--n", "6", "--density", "1/2", "--p", "2", "--out", file("gen.txt")},
      {"reduce", "--kind", "vc-sr", "--in", file("graph.txt"), "--out", file("target.txt"), "--verify"},
      {"check", fig1},
      {"--seed", "3", "--jobs", "2", "bench", file("bench.json")},
      {"bench", file("empty.json")},
  };
  std::vector<std::string> reports;
  int identical = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string dumps[2];
    for (int round = 0; round < 2; ++round) {
      const std::string report = file("report_" + std::to_string(c) + "_" + std::to_string(round) + ".json");
      auto args = commands[c];
      args.push_back("--json");
      args.push_back(report);
      std::ostringstream out, err;
      int code = cli::run(args, out, err);
      o.require(code == cli::kExitOk || code == cli::kExitNone, "command " + std::to_string(c) + " failed: " + err.str());
      std::ifstream in(report);
      dumps[round] = cli::without_timings(nlohmann::json::parse(in)).dump();
      reports.push_back(report);
    }
    o.require(dumps[0] == dumps[1], "command " + std::to_string(c) + " is not reproducible");
    identical += dumps[0] == dumps[1];
  }
  std::string cmd = "python3 " SMR_SOURCE_DIR "/tools/validate_json.py " SMR_SOURCE_DIR "/docs/result.schema.json";
  for (const auto& r : reports) cmd += " " + r;
  const bool valid = std::system(cmd.c_str()) == 0;
  o.require(valid, "schema validation failed");
  fs::remove_all(dir);
  o.note = std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands reproducible, " +
           std::to_string(reports.size()) + " reports " + (valid ? "schema-valid" : "INVALID");
#endif
}

}  // namespace
}  // namespace smr

int main() {
  using namespace smr;
  criterion(1, "Worked 4x4 example", fig1_suite);
  criterion(2, "SM weighted exactness", sm_weighted);
  criterion(3, "Rural Hospitals invariant", rural_hospitals);
  criterion(4, "Bounded-parameter solvers", bounded_solvers);
  criterion(5, "Degree-2 solvers", degree_two);
  criterion(6, "Flip-subset", flip_subset);
  criterion(7, "2-approximation and half-integrality", approx_two);
  criterion(8, "Reduction equivalences", reduction_equivalences);
  criterion(9, "Forward constructive checks", forward_checks);
  criterion(10, "Determinism and JSON schema", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
