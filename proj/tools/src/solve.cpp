#include "solve.hpp"

namespace smr::cli {

namespace {

std::string default_algo(const Instance& inst, const std::string& problem) {
  if (problem == "min-violations") return inst.is_marriage() ? "rotation" : "exact";
  if (problem == "min-weight") return inst.is_marriage() ? "rotation" : "approx2";
  return "exact";
}

[[noreturn]] void unsupported(const std::string& problem, const std::string& algo, const Instance& inst) {
  throw InvalidArgument("algorithm '" + algo + "' does not solve " + problem + " on " +
                        (inst.is_marriage() ? "marriage" : "roommates") + " instances");
}

void require_marriage(const std::string& problem, const std::string& algo, const Instance& inst) {
  if (!inst.is_marriage()) unsupported(problem, algo, inst);
}

// Smallest parameter in [0, limit] for which the decision routine succeeds.
template <typename Decide>
std::optional<Matching> smallest_parameter(int limit, Decide decide) {
  for (int k = 0; k <= limit; ++k) {
    if (auto m = decide(k)) return m;
  }
  return std::nullopt;
}

}  // namespace

SolveOutcome solve_instance(const Instance& inst, const RestrictionSet& r, const WeightAssignment& w,
                            const SolveRequest& request) {
  const std::string& problem = request.problem;
  const std::string algo = request.algo.empty() ? default_algo(inst, problem) : request.algo;
  r.check_against(inst);
  Stopwatch clock;
  std::optional<Matching> m;
  std::string optimality = "proved";
  std::string none_status = "none";

  if (problem == "feasible") {
    if (algo != "exact") unsupported(problem, algo, inst);
    FeasibilityResult f = inst.is_marriage() ? sm_restricted_feasible(inst, r) : sr_restricted_feasible(inst, r);
    if (f.feasible()) m = f.matching;
    none_status = f.status == FeasibilityStatus::structurally_infeasible ? "structurally-infeasible" : "infeasible";
  } else if (problem == "min-violations") {
    none_status = "no-stable-matching";
    if (algo == "rotation") {
      require_marriage(problem, algo, inst);
      m = sm_min_restricted_violations(inst, r).matching;
    } else if (algo == "exact" || algo == "approx2") {
      auto res = sr_min_restricted_violations(inst, r, algo == "exact" ? ViolationMode::exact : ViolationMode::approx2);
      if (res) m = res->matching;
      if (algo == "approx2") optimality = "approx2";
    } else if (algo == "deg2") {
      auto res = sr_degree2_min_violations(inst, r);
      if (res) m = res->matching;
    } else if (algo == "flip-subset") {
      m = smallest_parameter(static_cast<int>(r.size()), [&](int k) { return sr_flip_subset(inst, r, k); });
    } else {
      unsupported(problem, algo, inst);
    }
  } else if (problem == "min-bp") {
    if (!r.forced_is_matching()) {
      none_status = "structurally-infeasible";
    } else if (algo == "exact") {
      std::optional<std::size_t> cutoff;
      if (request.k) cutoff = static_cast<std::size_t>(std::max(*request.k, 0));
      if (auto res = minbp_exact(inst, r, cutoff)) m = res->matching;
    } else if (algo == "bounded-p" || algo == "bounded-bp") {
      auto decide = [&](int k) {
        return algo == "bounded-p" ? minbp_bounded_forbidden(inst, r, k) : minbp_bounded_blocking(inst, r, k);
      };
      if (algo == "bounded-p") require_marriage(problem, algo, inst);
      if (request.k) {
        m = decide(*request.k);
        optimality = "heuristic";
      } else {
        int limit = static_cast<int>(algo == "bounded-p" ? r.forbidden().size() : inst.edge_count());
        m = smallest_parameter(limit, decide);
      }
    } else if (algo == "deg2") {
      m = minbp_degree2(inst, r).matching;
    } else {
      unsupported(problem, algo, inst);
    }
  } else if (problem == "min-weight") {
    if (algo == "rotation") {
      require_marriage(problem, algo, inst);
      m = min_weight_stable(inst, w).matching;
    } else if (algo == "approx2") {
      none_status = "no-stable-matching";
      if (irving(inst)) m = sr_min_weight_2approx(inst, w).result.matching;
      optimality = "approx2";
    } else {
      unsupported(problem, algo, inst);
    }
  } else {
    throw InvalidArgument("unknown problem '" + problem + "'");
  }

  SolveOutcome out;
  out.record = base_record(instance_hash(inst, r), problem, algo, m ? "solved" : none_status);
  if (m) {
    fill_matching(out.record, inst, r, *m, w);
    out.record["optimality"] = optimality;
    if (problem == "feasible") {
      out.value = Rational(0);
    } else if (problem == "min-violations") {
      out.value = Rational(static_cast<long>(violation_counts(*m, r).total()));
    } else if (problem == "min-bp") {
      out.value = Rational(static_cast<long>(blocking_pairs(inst, *m, r).count()));
    } else {
      out.value = w.total(*m);
    }
    out.record["value"] = to_string(*out.value);
  } else {
    out.record["value"] = nullptr;
  }
  out.record["runtime_ms"] = clock.elapsed_ms();
  return out;
}

OracleOutcome oracle_value(const Instance& inst, const RestrictionSet& r, const std::string& problem,
                           const OracleGuard& guard) {
  OracleOutcome out;
  if (problem == "feasible" || problem == "min-violations") {
    auto best = oracle_min_violations(inst, r, guard);
    if (best && (problem == "min-violations" || best->value == 0)) out.value = Rational(static_cast<long>(best->value));
  } else if (problem == "min-bp") {
    if (r.forced_is_matching()) out.value = Rational(static_cast<long>(oracle_min_bp(inst, r, guard).value));
  } else {
    throw InvalidArgument("no oracle for problem '" + problem + "'");
  }
  return out;
}

}  // namespace smr::cli
