#include "smr_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "solve.hpp"

namespace smr::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

int exit_for(const json& record) {
  return record["status"] == "solved" ? kExitOk : kExitNone;
}

double parse_density(const std::string& text) {
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
    try {
      return std::stod(text);
    } catch (const std::exception&) {
      throw InvalidArgument("bad density '" + text + "'");
    }
  }
  return parse_rational(text).get_d();
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string file;
  std::string weights;
  SolveRequest request;
  int k = -1;
};

CommandResult cmd_solve(const SolveArgs& a, std::ostream& out) {
  ParsedInstance p = read_instance_file(a.file);
  WeightAssignment w;
  if (!a.weights.empty()) w = parse_weights(p.instance, read_file(a.weights));
  SolveRequest request = a.request;
  if (a.k >= 0) request.k = a.k;
  SolveOutcome res = solve_instance(p.instance, p.restrictions, w, request);
  print_record(out, res.record);
  return {exit_for(res.record), res.record};
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string file;
  std::string problem;
  int k = 0;
};

json stable_list(const Instance& inst, const std::vector<Matching>& all) {
  json list = json::array();
  for (const Matching& m : all) list.push_back(pairs_json(inst, m.pairs()));
  return list;
}

CommandResult oracle_on_instance(const OracleArgs& a, const Globals& g, std::ostream& out) {
  ParsedInstance p = read_instance_file(a.file);
  const Instance& inst = p.instance;
  const RestrictionSet& r = p.restrictions;
  OracleGuard guard;
  guard.max_agents = g.limit;
  Stopwatch clock;
  json rec = base_record(instance_hash(inst, r), a.problem, "oracle", "solved");
  std::optional<OracleValue> best;
  if (a.problem == "min-bp") {
    try {
      best = oracle_min_bp(inst, r, guard);
    } catch (const StructuralInfeasibility&) {
      rec["status"] = "structurally-infeasible";
    }
  } else if (a.problem == "min-violations") {
    best = oracle_min_violations(inst, r, guard);
    if (!best) rec["status"] = "no-stable-matching";
  } else if (a.problem == "max-forced") {
    best = oracle_max_forced(inst, r.forced(), guard);
    if (!best) rec["status"] = "no-stable-matching";
  } else if (a.problem == "psmi") {
    best = oracle_psmi(inst, guard);
    if (!best) rec["status"] = "no-perfect-matching";
  } else if (a.problem == "stable") {
    auto all = oracle_stable_matchings(inst, guard);
    rec["stable_matchings"] = stable_list(inst, all);
    if (all.empty()) {
      rec["status"] = "no-stable-matching";
    } else {
      best = OracleValue{all.front(), all.size()};
    }
  } else {
    throw InvalidArgument("unknown oracle problem '" + a.problem + "'");
  }
  rec["value"] = nullptr;
  if (best) {
    fill_matching(rec, inst, r, best->witness, {});
    rec["optimality"] = "proved";
    rec["value"] = best->value;
  }
  rec["runtime_ms"] = clock.elapsed_ms();
  print_record(out, rec);
  return {exit_for(rec), rec};
}

CommandResult oracle_on_source(const OracleArgs& a, std::ostream& out) {
  const std::string kind = a.problem.substr(std::string("source:").size());
  const std::string text = read_file(a.file);
  Stopwatch clock;
  json rec = base_record(text_hash(text), a.problem, "oracle", "solved");
  rec["value"] = nullptr;
  if (kind == "vertex-cover") {
    auto cover = oracle_vertex_cover_witness(parse_graph(text));
    for (int& v : cover) ++v;
    rec["value"] = cover.size();
    rec["cover"] = cover;
  } else if (kind == "independent-set") {
    rec["value"] = oracle_max_independent_set(parse_graph(text));
  } else if (kind == "exact-mm") {
    auto mm = oracle_exact_maximal_matching_witness(parse_graph(text), a.k);
    if (mm) {
      json edges = json::array();
      for (auto [x, y] : *mm) edges.push_back({x + 1, y + 1});
      rec["value"] = a.k;
      rec["source_matching"] = edges;
    } else {
      rec["status"] = "none";
    }
  } else if (kind == "w2sat") {
    auto best = oracle_min_true_assignment(parse_cnf(text));
    if (best) {
      rec["value"] = *best;
    } else {
      rec["status"] = "unsatisfiable";
    }
  } else if (kind == "e3sat") {
    auto sat = oracle_satisfying_assignment(parse_cnf(text));
    if (sat) {
      rec["value"] = 1;
      rec["assignment"] = *sat;
    } else {
      rec["status"] = "unsatisfiable";
    }
  } else {
    throw InvalidArgument("unknown source problem '" + kind + "'");
  }
  if (rec["status"] == "solved") rec["optimality"] = "proved";
  rec["runtime_ms"] = clock.elapsed_ms();
  print_record(out, rec);
  return {exit_for(rec), rec};
}

CommandResult cmd_oracle(const OracleArgs& a, const Globals& g, std::ostream& out) {
  if (a.problem.rfind("source:", 0) == 0) return oracle_on_source(a, out);
  return oracle_on_instance(a, g, out);
}

// --- reduce -----------------------------------------------------------------

struct ReduceArgs {
  std::string kind;
  std::string in;
  std::string out;
  int k = 0;
  int c = 0;
  std::string mode = "forbidden";
  bool truncate_rest = false;
  bool verify = false;
  int max_target = VerifyOptions{}.max_target_agents;
};

PadMode parse_pad_mode(const std::string& text) {
  if (text == "forbidden") return PadMode::forbidden;
  if (text == "forced") return PadMode::forced;
  throw InvalidArgument("--mode must be forbidden or forced");
}

CommandResult cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  const ReductionKind kind = parse_reduction_kind(a.kind);
  const std::string text = read_file(a.in);
  ReductionOptions opts{a.truncate_rest};
  SourceProblem src;
  Reduction red;
  switch (kind) {
    case ReductionKind::psmi:
    case ReductionKind::pad_forbidden:
    case ReductionKind::pad_forced: {
      ParsedInstance p = parse_instance(text);
      if (kind == ReductionKind::psmi) {
        red = reduce_psmi(p.instance, a.k, opts);
      } else {
        red = pad_with_garbage(p.instance, a.c, kind == ReductionKind::pad_forced ? PadMode::forced : PadMode::forbidden,
                               opts);
      }
      src = SourceProblem{SourceKind::psmi, p.instance, kind == ReductionKind::psmi ? a.k : a.c};
      break;
    }
    case ReductionKind::exactmm_forced: {
      Graph g = parse_graph(text);
      red = reduce_exactmm_forced(g, a.k);
      src = SourceProblem{SourceKind::exact_maximal_matching, g, a.k};
      break;
    }
    case ReductionKind::e3sat: {
      CnfFormula f = parse_cnf(text);
      red = reduce_e3sat(f);
      src = SourceProblem{SourceKind::e3sat22, f, 0};
      break;
    }
    case ReductionKind::vc_sr:
    case ReductionKind::vc_sr_deg3: {
      Graph g = parse_graph(text);
      red = kind == ReductionKind::vc_sr ? reduce_vc_sr(g, parse_pad_mode(a.mode), opts) : reduce_vc_sr_deg3(g);
      src = SourceProblem{SourceKind::vertex_cover, g, 0};
      break;
    }
    case ReductionKind::indset_maxforced: {
      Graph g = parse_graph(text);
      red = reduce_indset_maxforced(g, opts);
      src = SourceProblem{SourceKind::independent_set, g, 0};
      break;
    }
    case ReductionKind::w2sat_sr: {
      CnfFormula f = parse_cnf(text);
      red = reduce_w2sat_sr(f, opts);
      src = SourceProblem{SourceKind::w2sat, f, 0};
      break;
    }
  }
  Stopwatch clock;
  const std::string serialized = serialize_instance(red.instance, red.restrictions, {true});
  if (a.out.empty()) {
    out << serialized;
  } else {
    write_file(a.out, serialized);
  }
  json rec = base_record(instance_hash(red.instance, red.restrictions), "reduce", to_string(kind), "constructed");
  rec["target_agents"] = red.instance.size();
  rec["target_edges"] = red.instance.edge_count();
  rec["forbidden"] = red.restrictions.forbidden().size();
  rec["forced"] = red.restrictions.forced().size();
  int code = kExitOk;
  if (a.verify) {
    VerifyOptions vo;
    vo.max_target_agents = a.max_target;
    ReductionReport report = verify_reduction(src, red, vo);
    rec["forward_check"] = to_string(report.forward_check);
    rec["equivalence_check"] = to_string(report.equivalence_check);
    rec["details"] = report.details;
    std::ostream& log = a.out.empty() ? std::cerr : out;
    for (const auto& line : report.details) log << line << '\n';
    log << "forward " << to_string(report.forward_check) << ", equivalence " << to_string(report.equivalence_check)
        << '\n';
    if (report.forward_check == CheckStatus::fail || report.equivalence_check == CheckStatus::fail) code = kExitError;
  } else if (!a.out.empty()) {
    out << "wrote " << a.out << " (" << red.instance.size() << " agents, " << red.instance.edge_count() << " edges)\n";
  }
  rec["runtime_ms"] = clock.elapsed_ms();
  return {code, rec};
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
  std::string kind = "sm";
  std::string source;
  int n = 4;
  std::string density = "1";
  int p = 0;
  int q = 0;
  int degree_cap = -1;
  int clauses = 0;
  std::string out;
};

CommandResult cmd_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  Stopwatch clock;
  std::string text;
  json rec;
  if (a.source.empty()) {
    GenSpec spec;
    if (a.kind == "sm") {
      spec.kind = InstanceKind::marriage;
    } else if (a.kind == "sr") {
      spec.kind = InstanceKind::roommates;
    } else {
      throw InvalidArgument("--kind must be sm or sr");
    }
    spec.n = a.n;
    spec.density = parse_density(a.density);
    spec.p_count = a.p;
    spec.q_count = a.q;
    spec.seed = g.seed;
    if (a.degree_cap >= 0) spec.degree_cap = a.degree_cap;
    ParsedInstance p = gen_random(spec);
    text = serialize_instance(p.instance, p.restrictions);
    rec = base_record(instance_hash(p.instance, p.restrictions), "gen", "gen_random", "generated");
  } else {
    if (a.source == "graph") {
      text = serialize_graph(random_graph(a.n, parse_density(a.density), g.seed));
    } else if (a.source == "biregular23") {
      text = serialize_graph(random_biregular_23(a.n, g.seed));
    } else if (a.source == "monotone-2cnf") {
      text = serialize_cnf(random_monotone_2cnf(a.n, a.clauses, g.seed));
    } else if (a.source == "e3sat22") {
      text = serialize_cnf(random_e3sat22(a.n, g.seed));
    } else {
      throw InvalidArgument("unknown --source '" + a.source + "'");
    }
    rec = base_record(text_hash(text), "gen", "source:" + a.source, "generated");
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  rec["seed"] = g.seed;
  rec["runtime_ms"] = clock.elapsed_ms();
  return {kExitOk, rec};
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string format = "instance";
};

CommandResult cmd_check(const CheckArgs& a, std::ostream& out) {
  const std::string text = read_file(a.file);
  Stopwatch clock;
  json rec;
  if (a.format == "instance") {
    ParsedInstance p = parse_instance(text);
    const Instance& inst = p.instance;
    rec = base_record(instance_hash(inst, p.restrictions), "check", "parse", "valid");
    rec["kind"] = inst.is_marriage() ? "sm" : "sr";
    rec["agents"] = inst.size();
    rec["edges"] = inst.edge_count();
    rec["max_degree"] = inst.max_degree();
    rec["forbidden"] = p.restrictions.forbidden().size();
    rec["forced"] = p.restrictions.forced().size();
    rec["forced_is_matching"] = p.restrictions.forced_is_matching();
    out << a.file << ": " << rec["kind"].get<std::string>() << " instance, " << inst.size() << " agents, "
        << inst.edge_count() << " edges, |P|=" << p.restrictions.forbidden().size()
        << ", |Q|=" << p.restrictions.forced().size() << '\n';
  } else if (a.format == "graph") {
    Graph graph = parse_graph(text);
    rec = base_record(text_hash(text), "check", "parse-graph", "valid");
    rec["vertices"] = graph.n();
    rec["edges"] = graph.edges().size();
    out << a.file << ": graph, " << graph.n() << " vertices, " << graph.edges().size() << " edges\n";
  } else if (a.format == "cnf") {
    CnfFormula f = parse_cnf(text);
    rec = base_record(text_hash(text), "check", "parse-cnf", "valid");
    rec["variables"] = f.variables;
    rec["clauses"] = f.clauses.size();
    rec["monotone_2cnf"] = f.is_monotone_2cnf();
    rec["e3sat22"] = f.is_22_e3sat();
    out << a.file << ": cnf, " << f.variables << " variables, " << f.clauses.size() << " clauses\n";
  } else {
    throw InvalidArgument("--format must be instance, graph or cnf");
  }
  rec["runtime_ms"] = clock.elapsed_ms();
  return {kExitOk, rec};
}

}  // namespace

json without_timings(const json& report) {
  if (report.is_array()) {
    json out = json::array();
    for (const auto& item : report) out.push_back(without_timings(item));
    return out;
  }
  if (!report.is_object()) return report;
  json out = json::object();
  for (const auto& [key, value] : report.items()) {
    if (key.size() >= 10 && key.compare(key.size() - 10, 10, "runtime_ms") == 0) continue;
    out[key] = without_timings(value);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"smr: stable matchings with forced and forbidden edges", "smr"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--json", g.json_path, "Write the JSON report to this path");
  app.add_option("--seed", g.seed, "Seed for gen and bench");
  app.add_option("--limit", g.limit, "Largest instance (in agents) handed to exhaustive oracles")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Concurrent bench runs")->check(CLI::PositiveNumber);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("file", solve.file, "Instance file")->required();
  s->add_option("--problem", solve.request.problem, "feasible | min-violations | min-bp | min-weight")
      ->check(CLI::IsMember({"feasible", "min-violations", "min-bp", "min-weight"}));
  s->add_option("--algo", solve.request.algo,
                "exact | rotation | bounded-p | bounded-bp | deg2 | approx2 | flip-subset");
  s->add_option("--k", solve.k, "Decision bound for bounded solvers and exact min-bp");
  s->add_option("--weights", solve.weights, "Edge weights, lines '<a> <b> <rational>'");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exhaustive reference solvers");
  o->add_option("file", oracle.file, "Instance, graph or CNF file")->required();
  o->add_option("--problem", oracle.problem,
                "min-bp | min-violations | max-forced | psmi | stable | source:<vertex-cover | independent-set | "
                "exact-mm | w2sat | e3sat>")
      ->required();
  o->add_option("--K", oracle.k, "Matching size for source:exact-mm");

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Build a reduction target");
  r->add_option("--kind", reduce.kind, "Reduction name")->required();
  r->add_option("--in", reduce.in, "Source file")->required();
  r->add_option("--out", reduce.out, "Target instance file (stdout when omitted)");
  r->add_option("--K", reduce.k, "K for psmi and exactmm-forced");
  r->add_option("--C", reduce.c, "Padding count for pad-forbidden and pad-forced");
  r->add_option("--mode", reduce.mode, "forbidden | forced, for vc-sr");
  r->add_flag("--truncate-rest", reduce.truncate_rest, "Leave out the list completions");
  r->add_flag("--verify", reduce.verify, "Run the forward and equivalence checks");
  r->add_option("--max-target", reduce.max_target, "Largest target checked for equivalence");

  GenArgs gen;
  auto* gn = app.add_subcommand("gen", "Generate a random instance or source");
  gn->add_option("--kind", gen.kind, "sm | sr");
  gn->add_option("--source", gen.source, "graph | biregular23 | monotone-2cnf | e3sat22");
  gn->add_option("--n", gen.n, "Agents per side (sm), agents (sr), vertices, t, or variables");
  gn->add_option("--density", gen.density, "Edge probability in (0,1]");
  gn->add_option("--p", gen.p, "Forbidden edges");
  gn->add_option("--q", gen.q, "Forced edges");
  gn->add_option("--degree-cap", gen.degree_cap, "Maximum list length");
  gn->add_option("--clauses", gen.clauses, "Clauses for monotone-2cnf");
  gn->add_option("--out", gen.out, "Output file (stdout when omitted)");

  std::string bench_config;
  auto* b = app.add_subcommand("bench", "Run a benchmark configuration");
  b->add_option("config", bench_config, "JSON configuration file")->required();

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Validate an input file");
  c->add_option("file", check.file, "File to validate")->required();
  c->add_option("--format", check.format, "instance | graph | cnf");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    CommandResult res;
    if (s->parsed()) {
      res = cmd_solve(solve, out);
    } else if (o->parsed()) {
      res = cmd_oracle(oracle, g, out);
    } else if (r->parsed()) {
      res = cmd_reduce(reduce, out);
    } else if (gn->parsed()) {
      res = cmd_gen(gen, g, out);
    } else if (b->parsed()) {
      res = run_bench(read_file(bench_config), g, out);
    } else {
      res = cmd_check(check, out);
    }
    if (!g.json_path.empty()) write_file(g.json_path, res.doc.dump(2) + "\n");
    return res.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace smr::cli
