#include "smr/source.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "smr/errors.hpp"

namespace smr {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InvalidArgument("duplicate edge");
  }
  edges_ = std::move(edges);
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::adjacent(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges));
}

Graph Graph::complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  }
  return Graph(a + b, std::move(edges));
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

bool CnfFormula::is_monotone_2cnf() const {
  for (const auto& c : clauses) {
    if (c.size() != 2 || c[0] <= 0 || c[1] <= 0 || c[0] == c[1]) return false;
    if (c[0] > variables || c[1] > variables) return false;
  }
  return true;
}

bool CnfFormula::is_22_e3sat() const {
  std::vector<int> positive(variables + 1, 0);
  std::vector<int> negative(variables + 1, 0);
  for (const auto& c : clauses) {
    if (c.size() != 3) return false;
    for (int lit : c) {
      int v = std::abs(lit);
      if (lit == 0 || v > variables) return false;
      ++(lit > 0 ? positive : negative)[v];
    }
  }
  for (int v = 1; v <= variables; ++v) {
    if (positive[v] != 2 || negative[v] != 2) return false;
  }
  return true;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int lit : c) {
      bool value = assignment.at(std::abs(lit) - 1);
      if ((lit > 0) == value) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text, bool dimacs_comments) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (line.tokens.empty()) continue;
    if (dimacs_comments && line.tokens[0] == "c") continue;
    out.push_back(std::move(line));
  }
  return out;
}

int to_int(const std::string& s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = tokenize(text, false);
  if (lines.empty()) throw ParseError(1, "missing 'graph <n>' header");
  const Line& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0] != "graph") throw ParseError(head.number, "expected 'graph <n>'");
  int n = to_int(head.tokens[1], head.number);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 3 || l.tokens[0] != "e") throw ParseError(l.number, "expected 'e <i> <j>'");
    int a = to_int(l.tokens[1], l.number);
    int b = to_int(l.tokens[2], l.number);
    if (a < 1 || b < 1 || a > n || b > n) throw ParseError(l.number, "vertex out of range");
    edges.emplace_back(a - 1, b - 1);
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(lines.back().number, e.what());
  }
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.n() << '\n';
  for (auto [a, b] : g.edges()) out << "e " << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

CnfFormula parse_cnf(std::string_view text) {
  auto lines = tokenize(text, true);
  if (lines.empty()) throw ParseError(1, "missing 'cnf <n> <m>' header");
  const Line& head = lines[0];
  bool dimacs = head.tokens.size() == 4 && head.tokens[0] == "p" && head.tokens[1] == "cnf";
  if (!dimacs && (head.tokens.size() != 3 || head.tokens[0] != "cnf")) {
    throw ParseError(head.number, "expected 'cnf <n> <m>'");
  }
  CnfFormula f;
  f.variables = to_int(head.tokens[dimacs ? 2 : 1], head.number);
  int expected = to_int(head.tokens[dimacs ? 3 : 2], head.number);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    std::vector<int> clause;
    for (std::size_t t = 0; t < l.tokens.size(); ++t) {
      int lit = to_int(l.tokens[t], l.number);
      if (lit == 0) {
        if (t + 1 != l.tokens.size()) throw ParseError(l.number, "literal after terminating 0");
        break;
      }
      if (std::abs(lit) > f.variables) throw ParseError(l.number, "variable out of range");
      clause.push_back(lit);
    }
    if (clause.empty()) throw ParseError(l.number, "empty clause");
    f.clauses.push_back(std::move(clause));
  }
  if (static_cast<int>(f.clauses.size()) != expected) {
    throw ParseError(lines.back().number, "header announces " + std::to_string(expected) + " clauses, found " +
                                              std::to_string(f.clauses.size()));
  }
  return f;
}

std::string serialize_cnf(const CnfFormula& f) {
  std::ostringstream out;
  out << "cnf " << f.variables << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace smr
