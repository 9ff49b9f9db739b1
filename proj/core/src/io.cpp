#include "smr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "smr/errors.hpp"

namespace smr {

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> parse_count(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

// Agent naming without an Instance (the instance is built after parsing).
struct Namer {
  InstanceKind kind;
  int left;
  int total;

  std::optional<Agent> find(std::string_view name) const {
    if (name.size() < 2 || name[1] == '0') return std::nullopt;
    auto n = parse_count(name.substr(1));
    if (!n || *n < 1) return std::nullopt;
    if (kind == InstanceKind::roommates) {
      if (name[0] == 'a' && *n <= total) return *n - 1;
      return std::nullopt;
    }
    if (name[0] == 'u' && *n <= left) return *n - 1;
    if (name[0] == 'w' && *n <= total - left) return left + *n - 1;
    return std::nullopt;
  }

  std::string name(Agent a) const {
    if (kind == InstanceKind::roommates) return "a" + std::to_string(a + 1);
    return a < left ? "u" + std::to_string(a + 1) : "w" + std::to_string(a - left + 1);
  }

  bool same_side(Agent a, Agent b) const {
    return kind == InstanceKind::marriage && ((a < left) == (b < left));
  }
};

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!split_ws(line).empty()) lines.emplace_back(number, line);
      pos = end + 1;
    }
  }
  if (lines.empty()) throw ParseError(1, "missing header");

  auto header = split_ws(lines[0].second);
  const int header_line = lines[0].first;
  Namer namer{};
  if (header[0] == "sm" && header.size() == 3) {
    auto l = parse_count(header[1]);
    auto r = parse_count(header[2]);
    if (!l || !r) throw ParseError(header_line, "bad sizes in header");
    namer = {InstanceKind::marriage, *l, *l + *r};
  } else if (header[0] == "sr" && header.size() == 2) {
    auto n = parse_count(header[1]);
    if (!n) throw ParseError(header_line, "bad size in header");
    namer = {InstanceKind::roommates, *n, *n};
  } else {
    throw ParseError(header_line, "expected 'sm <n_left> <n_right>' or 'sr <n>'");
  }

  const int n = namer.total;
  std::vector<std::vector<Agent>> prefs(n);
  std::vector<int> pref_line(n, 0);
  std::vector<std::pair<int, Edge>> forbidden;
  std::vector<std::pair<int, Edge>> forced;
  bool in_restrictions = false;
  int last_line = header_line;

  auto agent_of = [&](std::string_view token, int line) {
    auto a = namer.find(token);
    if (!a) throw ParseError(line, "unknown agent '" + std::string(token) + "'");
    return *a;
  };

  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [number, line] = lines[i];
    last_line = number;
    auto colon = line.find(':');
    auto tokens = split_ws(line);
    if (tokens[0] == "forbid" || tokens[0] == "force") {
      if (colon != std::string_view::npos) throw ParseError(number, "unexpected ':'");
      if (tokens.size() != 3) throw ParseError(number, "expected '" + std::string(tokens[0]) + " <a> <b>'");
      in_restrictions = true;
      Agent a = agent_of(tokens[1], number);
      Agent b = agent_of(tokens[2], number);
      if (a == b) throw ParseError(number, "restriction on a self pair");
      auto& target = tokens[0] == "forbid" ? forbidden : forced;
      target.emplace_back(number, Edge::of(a, b));
      continue;
    }
    if (colon == std::string_view::npos) throw ParseError(number, "malformed line");
    if (in_restrictions) throw ParseError(number, "preference line after restrictions");
    auto head = split_ws(line.substr(0, colon));
    if (head.size() != 1) throw ParseError(number, "malformed preference line");
    Agent a = agent_of(head[0], number);
    if (pref_line[a] != 0) {
      throw ParseError(number, "second preference line for " + namer.name(a));
    }
    pref_line[a] = number;
    for (auto token : split_ws(line.substr(colon + 1))) {
      Agent b = agent_of(token, number);
      if (b == a) throw ParseError(number, namer.name(a) + " lists itself");
      if (namer.same_side(a, b)) {
        throw ParseError(number, namer.name(a) + " lists " + namer.name(b) + " on the same side");
      }
      if (std::find(prefs[a].begin(), prefs[a].end(), b) != prefs[a].end()) {
        throw ParseError(number, "duplicate entry " + namer.name(b));
      }
      prefs[a].push_back(b);
    }
  }

  for (Agent a = 0; a < n; ++a) {
    if (pref_line[a] == 0) throw ParseError(last_line, "no preference line for " + namer.name(a));
  }
  for (Agent a = 0; a < n; ++a) {
    for (Agent b : prefs[a]) {
      if (std::find(prefs[b].begin(), prefs[b].end(), a) == prefs[b].end()) {
        throw ParseError(pref_line[a], namer.name(a) + " lists " + namer.name(b) +
                                           " but " + namer.name(b) + " does not list " +
                                           namer.name(a));
      }
    }
  }

  ParsedInstance out;
  out.instance = namer.kind == InstanceKind::marriage
                     ? Instance::marriage(namer.left, n - namer.left, std::move(prefs))
                     : Instance::roommates(n, std::move(prefs));

  std::set<Edge> seen;
  std::vector<Edge> p;
  std::vector<Edge> q;
  for (auto* group : {&forbidden, &forced}) {
    for (auto& [number, e] : *group) {
      if (!out.instance.has_edge(e)) {
        throw ParseError(number, "restriction on non-edge " + namer.name(e.a) + " " + namer.name(e.b));
      }
      if (!seen.insert(e).second) {
        bool clash = group == &forced && std::binary_search(p.begin(), p.end(), e);
        throw ParseError(number, clash ? "edge both forbidden and forced" : "duplicate restriction");
      }
      (group == &forbidden ? p : q).push_back(e);
      if (group == &forbidden) std::sort(p.begin(), p.end());
    }
  }
  out.restrictions = RestrictionSet(std::move(p), std::move(q));
  return out;
}

ParsedInstance parse_instance(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(std::string_view(buffer.str()));
}

ParsedInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return parse_instance(in);
}

std::string edge_name(const Instance& inst, const Edge& e) {
  return inst.name(e.a) + inst.name(e.b);
}

std::string matching_string(const Instance& inst, const Matching& m) {
  std::string out = "{";
  bool first = true;
  for (const Edge& e : m.pairs()) {
    if (!first) out += ",";
    out += edge_name(inst, e);
    first = false;
  }
  return out + "}";
}

Edge parse_edge(const Instance& inst, std::string_view a, std::string_view b) {
  auto x = inst.find(a);
  auto y = inst.find(b);
  if (!x || !y) throw InvalidArgument("unknown agent in pair " + std::string(a) + " " + std::string(b));
  Edge e = Edge::of(*x, *y);
  if (!inst.has_edge(e)) throw InvalidArgument("not an edge: " + std::string(a) + " " + std::string(b));
  return e;
}

std::string serialize_instance(const Instance& inst, const RestrictionSet& r,
                               const SerializeOptions& options) {
  std::ostringstream out;
  if (inst.is_marriage()) {
    out << "sm " << inst.left_count() << ' ' << inst.right_count() << '\n';
  } else {
    out << "sr " << inst.size() << '\n';
  }
  if (options.roles_as_comments && !inst.roles().empty()) {
    for (Agent a = 0; a < inst.size(); ++a) {
      out << "# " << inst.name(a) << " = " << inst.roles()[a] << '\n';
    }
  }
  for (Agent a = 0; a < inst.size(); ++a) {
    out << inst.name(a) << ':';
    for (Agent b : inst.prefs(a)) out << ' ' << inst.name(b);
    out << '\n';
  }
  for (const Edge& e : r.forbidden()) out << "forbid " << inst.name(e.a) << ' ' << inst.name(e.b) << '\n';
  for (const Edge& e : r.forced()) out << "force " << inst.name(e.a) << ' ' << inst.name(e.b) << '\n';
  return out.str();
}

std::string text_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string instance_hash(const Instance& inst, const RestrictionSet& r) {
  return text_hash(serialize_instance(inst, r));
}

WeightAssignment parse_weights(const Instance& inst, std::string_view text) {
  WeightAssignment w;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) throw ParseError(number, "expected '<a> <b> <rational>'");
    try {
      w.set(parse_edge(inst, tokens[0], tokens[1]), parse_rational(tokens[2]));
    } catch (const InvalidArgument& e) {
      throw ParseError(number, e.what());
    }
  }
  return w;
}

}  // namespace smr
