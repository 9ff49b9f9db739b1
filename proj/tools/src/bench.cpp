#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "commands.hpp"
#include "solve.hpp"

namespace smr::cli {

namespace {

struct BenchInstance {
  std::string generator;
  std::uint64_t seed = 0;
  ParsedInstance parsed;
};

struct BenchAlgo {
  SolveRequest request;
  std::string label;
};

struct BenchRun {
  std::size_t instance = 0;
  std::size_t algo = 0;
  int repetition = 0;
};

void reject_unknown_keys(const json& object, const std::set<std::string>& known, const std::string& where) {
  if (!object.is_object()) throw InvalidArgument(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!known.count(key)) throw InvalidArgument("unknown key '" + key + "' in " + where);
  }
}

double density_of(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_rational(value.get<std::string>()).get_d();
  throw InvalidArgument("density must be a number or a rational string");
}

std::vector<BenchInstance> generate_instances(const json& config, std::uint64_t default_seed) {
  std::vector<BenchInstance> out;
  if (!config.contains("generators")) return out;
  std::size_t g = 0;
  for (const json& gen : config["generators"]) {
    const std::string where = "generators[" + std::to_string(g++) + "]";
    reject_unknown_keys(gen, {"name", "kind", "n", "density", "p", "q", "degree_cap", "count", "seed"}, where);
    GenSpec spec;
    const std::string kind = gen.value("kind", std::string("sm"));
    if (kind != "sm" && kind != "sr") throw InvalidArgument(where + ": kind must be sm or sr");
    spec.kind = kind == "sm" ? InstanceKind::marriage : InstanceKind::roommates;
    spec.n = gen.value("n", 4);
    spec.density = gen.contains("density") ? density_of(gen["density"]) : 1.0;
    spec.p_count = gen.value("p", 0);
    spec.q_count = gen.value("q", 0);
    if (gen.contains("degree_cap") && !gen["degree_cap"].is_null()) spec.degree_cap = gen["degree_cap"].get<int>();
    const int count = gen.value("count", 1);
    const std::uint64_t base = gen.value("seed", default_seed);
    const std::string name = gen.value("name", kind + std::to_string(spec.n));
    for (int i = 0; i < count; ++i) {
      spec.seed = base + static_cast<std::uint64_t>(i);
      out.push_back({name, spec.seed, gen_random(spec)});
    }
  }
  return out;
}

std::vector<BenchAlgo> parse_algorithms(const json& config) {
  std::vector<BenchAlgo> out;
  if (!config.contains("algorithms")) return out;
  std::size_t a = 0;
  for (const json& entry : config["algorithms"]) {
    const std::string where = "algorithms[" + std::to_string(a++) + "]";
    reject_unknown_keys(entry, {"problem", "algo", "k"}, where);
    BenchAlgo algo;
    algo.request.problem = entry.value("problem", std::string("min-bp"));
    if (algo.request.problem == "min-weight") throw InvalidArgument(where + ": min-weight is not benchmarked");
    algo.request.algo = entry.value("algo", std::string());
    if (entry.contains("k") && !entry["k"].is_null()) algo.request.k = entry["k"].get<int>();
    algo.label = algo.request.problem + "/" + (algo.request.algo.empty() ? "default" : algo.request.algo);
    if (algo.request.k) algo.label += "/k=" + std::to_string(*algo.request.k);
    out.push_back(std::move(algo));
  }
  return out;
}

template <typename Body>
void parallel_for(std::size_t count, int jobs, Body body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Verdict {
  json agrees = nullptr;
  json ratio = nullptr;
};

Verdict judge(const SolveOutcome& res, const SolveRequest& request, const std::optional<Rational>& oracle) {
  Verdict v;
  const std::string optimality = res.record["optimality"].is_null() ? "" : res.record["optimality"].get<std::string>();
  if (request.k && (request.algo == "bounded-p" || request.algo == "bounded-bp" || request.algo == "exact")) {
    const bool should_find = oracle && *oracle <= *request.k;
    v.agrees = res.found() == should_find && (!res.found() || *res.value <= *request.k);
  } else if (optimality == "approx2" || (!res.found() && (request.algo == "approx2"))) {
    if (!res.found()) {
      v.agrees = !oracle.has_value();
    } else if (oracle) {
      v.agrees = *res.value <= 2 * *oracle;
      if (*oracle != 0) {
        Rational ratio = *res.value / *oracle;
        v.ratio = to_string(ratio);
      } else if (*res.value == 0) {
        v.ratio = "1";
      }
    } else {
      v.agrees = false;
    }
  } else {
    v.agrees = res.found() == oracle.has_value() && (!res.found() || *res.value == *oracle);
  }
  return v;
}

std::string format_fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

CommandResult run_bench(const std::string& config_text, const Globals& globals, std::ostream& out) {
  json config = json::object();
  if (config_text.find_first_not_of(" \t\r\n") != std::string::npos) {
    try {
      config = json::parse(config_text);
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("bench config: ") + e.what());
    }
  }
  reject_unknown_keys(config, {"generators", "algorithms", "repetitions", "oracle"}, "bench config");
  const int repetitions = config.value("repetitions", 1);
  if (repetitions < 0) throw InvalidArgument("repetitions must be non-negative");
  const bool use_oracle = config.value("oracle", true);
  const auto instances = generate_instances(config, globals.seed);
  const auto algos = parse_algorithms(config);

  std::vector<BenchRun> runs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t a = 0; a < algos.size(); ++a) {
      for (int rep = 0; rep < repetitions; ++rep) runs.push_back({i, a, rep});
    }
  }

  // Oracle values per (instance, problem), computed once.
  std::vector<std::pair<std::size_t, std::string>> oracle_keys;
  if (use_oracle) {
    std::set<std::pair<std::size_t, std::string>> seen;
    for (const BenchRun& run : runs) {
      auto key = std::make_pair(run.instance, algos[run.algo].request.problem);
      if (seen.insert(key).second) oracle_keys.push_back(key);
    }
  }
  struct OracleSlot {
    bool checked = false;
    std::optional<Rational> value;
  };
  std::vector<OracleSlot> oracle_slots(oracle_keys.size());
  OracleGuard guard;
  guard.max_agents = globals.limit;
  parallel_for(oracle_keys.size(), globals.jobs, [&](std::size_t k) {
    const BenchInstance& bi = instances[oracle_keys[k].first];
    try {
      oracle_slots[k].value = oracle_value(bi.parsed.instance, bi.parsed.restrictions, oracle_keys[k].second, guard).value;
      oracle_slots[k].checked = true;
    } catch (const SizeGuardExceeded&) {
    } catch (const StructuralInfeasibility&) {
      oracle_slots[k].checked = true;
    }
  });
  std::map<std::pair<std::size_t, std::string>, const OracleSlot*> oracle_of;
  for (std::size_t k = 0; k < oracle_keys.size(); ++k) oracle_of[oracle_keys[k]] = &oracle_slots[k];

  std::vector<json> records(runs.size());
  parallel_for(runs.size(), globals.jobs, [&](std::size_t index) {
    const BenchRun& run = runs[index];
    const BenchInstance& bi = instances[run.instance];
    const BenchAlgo& algo = algos[run.algo];
    json rec;
    Verdict verdict;
    try {
      SolveOutcome res = solve_instance(bi.parsed.instance, bi.parsed.restrictions, {}, algo.request);
      rec = res.record;
      auto it = oracle_of.find({run.instance, algo.request.problem});
      if (it != oracle_of.end() && it->second->checked) {
        rec["oracle_value"] = it->second->value ? json(to_string(*it->second->value)) : json(nullptr);
        verdict = judge(res, algo.request, it->second->value);
      }
    } catch (const std::exception& e) {
      rec = base_record(instance_hash(bi.parsed.instance, bi.parsed.restrictions), algo.request.problem,
                        algo.request.algo, "error");
      rec["error"] = e.what();
      rec["value"] = nullptr;
    }
    if (!rec.contains("oracle_value")) rec["oracle_value"] = nullptr;
    rec["agrees"] = verdict.agrees;
    rec["ratio"] = verdict.ratio;
    rec["index"] = index;
    rec["generator"] = bi.generator;
    rec["seed"] = bi.seed;
    rec["repetition"] = run.repetition;
    rec["label"] = algo.label;
    records[index] = std::move(rec);
  });

  json aggregate = json::array();
  bool any_error = false;
  for (std::size_t a = 0; a < algos.size(); ++a) {
    std::vector<double> times;
    std::size_t errors = 0, checked = 0, agreed = 0;
    std::optional<Rational> max_ratio;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].algo != a) continue;
      const json& rec = records[i];
      if (rec["status"] == "error") {
        ++errors;
        continue;
      }
      times.push_back(rec["runtime_ms"].get<double>());
      if (!rec["agrees"].is_null()) {
        ++checked;
        agreed += rec["agrees"].get<bool>();
      }
      if (!rec["ratio"].is_null()) {
        Rational ratio = parse_rational(rec["ratio"].get<std::string>());
        if (!max_ratio || ratio > *max_ratio) max_ratio = ratio;
      }
    }
    any_error = any_error || errors > 0;
    double median = 0;
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      median = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
    }
    aggregate.push_back({{"label", algos[a].label},
                         {"problem", algos[a].request.problem},
                         {"algorithm", algos[a].request.algo},
                         {"runs", times.size() + errors},
                         {"errors", errors},
                         {"median_runtime_ms", median},
                         {"checked", checked},
                         {"agreed", agreed},
                         {"agreement_rate", checked ? json(static_cast<double>(agreed) / checked) : json(nullptr)},
                         {"max_ratio", max_ratio ? json(to_string(*max_ratio)) : json(nullptr)}});
  }

  out << "runs " << records.size() << " over " << instances.size() << " instances\n";
  for (const json& row : aggregate) {
    std::string rate = row["agreement_rate"].is_null()
                           ? "-"
                           : format_fixed(100.0 * row["agreement_rate"].get<double>(), 1) + "%";
    out << row["label"].get<std::string>() << ": runs " << row["runs"] << ", errors " << row["errors"]
        << ", median " << format_fixed(row["median_runtime_ms"].get<double>(), 3) << " ms, oracle agreement " << rate
        << " of " << row["checked"];
    if (!row["max_ratio"].is_null()) out << ", max ratio " << row["max_ratio"].get<std::string>();
    out << '\n';
  }

  json doc = {{"records", records}, {"aggregate", aggregate}};
  return {any_error ? kExitError : kExitOk, doc};
}

}  // namespace smr::cli
