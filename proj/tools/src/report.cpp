#include "report.hpp"

#include <ostream>

namespace smr::cli {

json pairs_json(const Instance& inst, const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({inst.name(e.a), inst.name(e.b)});
  return out;
}

json base_record(std::string hash, std::string problem, std::string algorithm, std::string status) {
  return json{{"instance_hash", std::move(hash)},
              {"problem", std::move(problem)},
              {"algorithm", std::move(algorithm)},
              {"status", std::move(status)},
              {"matching", nullptr},
              {"blocking_pairs", nullptr},
              {"violations", nullptr},
              {"weight", nullptr},
              {"optimality", nullptr},
              {"runtime_ms", 0.0}};
}

void fill_matching(json& record, const Instance& inst, const RestrictionSet& r, const Matching& m,
                   const WeightAssignment& w) {
  ViolationReport v = violation_counts(m, r);
  record["matching"] = pairs_json(inst, m.pairs());
  record["blocking_pairs"] = pairs_json(inst, blocking_pairs(inst, m, r).blocking);
  record["violations"] = {{"forbidden_used", v.forbidden_used}, {"forced_missing", v.forced_missing}};
  record["weight"] = to_string(w.total(m));
}

namespace {

std::string pair_list(const json& pairs) {
  std::string s;
  for (const auto& p : pairs) {
    if (!s.empty()) s += ' ';
    s += p[0].get<std::string>() + "-" + p[1].get<std::string>();
  }
  return s.empty() ? "(none)" : s;
}

}  // namespace

void print_record(std::ostream& out, const json& record) {
  out << "instance    " << record["instance_hash"].get<std::string>() << '\n';
  out << "problem     " << record["problem"].get<std::string>() << " (" << record["algorithm"].get<std::string>()
      << ")\n";
  out << "status      " << record["status"].get<std::string>() << '\n';
  if (record.contains("value") && !record["value"].is_null()) {
    const json& v = record["value"];
    out << "value       " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  if (!record["matching"].is_null()) {
    out << "matching    " << pair_list(record["matching"]) << '\n';
    out << "blocking    " << record["blocking_pairs"].size() << ": " << pair_list(record["blocking_pairs"]) << '\n';
    const json& v = record["violations"];
    out << "violations  " << v["forbidden_used"].get<std::size_t>() + v["forced_missing"].get<std::size_t>()
        << " (forbidden used " << v["forbidden_used"] << ", forced missing " << v["forced_missing"] << ")\n";
    out << "weight      " << record["weight"].get<std::string>() << '\n';
  }
  if (!record["optimality"].is_null()) out << "optimality  " << record["optimality"].get<std::string>() << '\n';
}

}  // namespace smr::cli
