#include "smr/reductions.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include "smr/errors.hpp"
#include "smr/evaluate.hpp"
#include "smr/minbp.hpp"
#include "smr/oracle.hpp"
#include "smr/sr_engine.hpp"

namespace smr {

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::psmi: return "psmi";
    case ReductionKind::pad_forbidden: return "pad-forbidden";
    case ReductionKind::pad_forced: return "pad-forced";
    case ReductionKind::exactmm_forced: return "exactmm-forced";
    case ReductionKind::e3sat: return "e3sat";
    case ReductionKind::vc_sr: return "vc-sr";
    case ReductionKind::indset_maxforced: return "indset-maxforced";
    case ReductionKind::w2sat_sr: return "w2sat-sr";
    case ReductionKind::vc_sr_deg3: return "vc-sr-deg3";
  }
  return "unknown";
}

ReductionKind parse_reduction_kind(const std::string& text) {
  for (auto kind : {ReductionKind::psmi, ReductionKind::pad_forbidden, ReductionKind::pad_forced,
                    ReductionKind::exactmm_forced, ReductionKind::e3sat, ReductionKind::vc_sr,
                    ReductionKind::indset_maxforced, ReductionKind::w2sat_sr, ReductionKind::vc_sr_deg3}) {
    if (to_string(kind) == text) return kind;
  }
  throw InvalidArgument("unknown reduction kind '" + text + "'");
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

namespace {

// Collects named agents and their lists, then numbers them (left side first
// for marriage targets).
class Builder {
 public:
  explicit Builder(bool marriage) : marriage_(marriage) {}

  int add(std::string role, Side side = Side::none) {
    roles_.push_back(std::move(role));
    sides_.push_back(side);
    lists_.emplace_back();
    return static_cast<int>(roles_.size()) - 1;
  }

  void list(int handle, std::vector<int> prefs) { lists_[handle] = std::move(prefs); }
  void append(int handle, const std::vector<int>& more) {
    lists_[handle].insert(lists_[handle].end(), more.begin(), more.end());
  }

  int size() const { return static_cast<int>(roles_.size()); }

  Instance build(std::vector<std::pair<int, int>> forbidden, std::vector<std::pair<int, int>> forced,
                 RestrictionSet& restrictions) const {
    const int n = size();
    std::vector<Agent> index(n);
    int left = 0;
    if (marriage_) {
      for (int h = 0; h < n; ++h) {
        if (sides_[h] == Side::left) index[h] = left++;
      }
      int right = left;
      for (int h = 0; h < n; ++h) {
        if (sides_[h] != Side::left) index[h] = right++;
      }
    } else {
      for (int h = 0; h < n; ++h) index[h] = h;
    }
    std::vector<std::vector<Agent>> prefs(n);
    std::vector<std::string> roles(n);
    for (int h = 0; h < n; ++h) {
      for (int x : lists_[h]) prefs[index[h]].push_back(index[x]);
      roles[index[h]] = roles_[h];
    }
    Instance inst = marriage_ ? Instance::marriage(left, n - left, std::move(prefs))
                              : Instance::roommates(n, std::move(prefs));
    inst.set_roles(std::move(roles));
    auto convert = [&](const std::vector<std::pair<int, int>>& pairs) {
      std::vector<Edge> out;
      for (auto [x, y] : pairs) out.push_back(Edge::of(index[x], index[y]));
      return out;
    };
    restrictions = RestrictionSet(convert(forbidden), convert(forced));
    restrictions.check_against(inst);
    return inst;
  }

 private:
  bool marriage_;
  std::vector<std::string> roles_;
  std::vector<Side> sides_;
  std::vector<std::vector<int>> lists_;
};

std::vector<int> range_of(const std::vector<int>& handles, const std::vector<int>& skip = {}) {
  std::vector<int> out;
  for (int h : handles) {
    if (std::find(skip.begin(), skip.end(), h) == skip.end()) out.push_back(h);
  }
  return out;
}

// Role lookup on a built target.
class Roles {
 public:
  explicit Roles(const Instance& inst) {
    for (Agent a = 0; a < static_cast<int>(inst.roles().size()); ++a) map_[inst.roles()[a]] = a;
  }
  Agent operator()(const std::string& role) const {
    auto it = map_.find(role);
    if (it == map_.end()) throw InvalidArgument("target has no agent with role '" + role + "'");
    return it->second;
  }

 private:
  std::unordered_map<std::string, Agent> map_;
};

std::string idx(const std::string& prefix, int i) { return prefix + std::to_string(i + 1); }

}  // namespace

Reduction pad_with_garbage(const Instance& src, int c, PadMode mode, const ReductionOptions& options) {
  if (!src.is_marriage()) throw InvalidArgument("padding needs a marriage instance");
  if (c < 0) throw InvalidArgument("negative padding size");
  Reduction out;
  out.kind = mode == PadMode::forbidden ? ReductionKind::pad_forbidden : ReductionKind::pad_forced;
  out.k = c;
  out.mode = mode;
  out.options = options;
  if (c == 0) {
    out.instance = src;
    return out;
  }
  Builder b(true);
  std::vector<int> men, women, ps, qs;
  for (Agent a = 0; a < src.left_count(); ++a) men.push_back(b.add(src.name(a), Side::left));
  for (Agent a = src.left_count(); a < src.size(); ++a) women.push_back(b.add(src.name(a), Side::right));
  for (int i = 0; i < c; ++i) ps.push_back(b.add(idx("p", i), Side::left));
  for (int i = 0; i < c; ++i) qs.push_back(b.add(idx("q", i), Side::right));
  auto handle = [&](Agent a) { return a < src.left_count() ? men[a] : women[a - src.left_count()]; };

  std::vector<std::pair<int, int>> forbidden, forced;
  for (Agent a = 0; a < src.size(); ++a) {
    const bool left = a < src.left_count();
    std::vector<int> list;
    for (Agent x : src.prefs(a)) list.push_back(handle(x));
    b.list(handle(a), list);
    b.append(handle(a), left ? qs : ps);
    if (!options.truncate_rest) {
      std::vector<int> rest;
      for (int h : left ? women : men) {
        if (std::find(list.begin(), list.end(), h) == list.end()) rest.push_back(h);
      }
      b.append(handle(a), rest);
    }
    if (mode == PadMode::forbidden) {
      for (int h : left ? qs : ps) forbidden.emplace_back(handle(a), h);
    }
  }
  for (int i = 0; i < c; ++i) {
    b.list(ps[i], women);
    b.append(ps[i], {qs[i]});
    b.list(qs[i], men);
    b.append(qs[i], {ps[i]});
    if (!options.truncate_rest) {
      b.append(ps[i], range_of(qs, {qs[i]}));
      b.append(qs[i], range_of(ps, {ps[i]}));
    }
    if (mode == PadMode::forced) forced.emplace_back(ps[i], qs[i]);
  }
  out.instance = b.build(forbidden, forced, out.restrictions);
  return out;
}

Reduction reduce_psmi(const Instance& src, int k, const ReductionOptions& options) {
  if (!src.is_marriage() || src.left_count() != src.right_count()) {
    throw InvalidArgument("perfect-matching source needs a marriage instance with equal sides");
  }
  if (k < 0) throw InvalidArgument("negative K");
  Reduction out = pad_with_garbage(src, k + 1, PadMode::forbidden, options);
  out.kind = ReductionKind::psmi;
  out.k = k;
  const std::size_t n = src.left_count();
  if (out.restrictions.forbidden().size() != 2 * n * (k + 1)) throw std::logic_error("forbidden edge count off");
  return out;
}

namespace {

struct BipartiteSides {
  std::vector<int> men;    // degree-2 vertices, ascending
  std::vector<int> women;  // degree-3 vertices, ascending
};

BipartiteSides split_23(const Graph& g) {
  BipartiteSides s;
  std::vector<int> side(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    int d = g.degree(v);
    if (d == 2) {
      s.men.push_back(v);
      side[v] = 0;
    } else if (d == 3) {
      s.women.push_back(v);
      side[v] = 1;
    } else {
      throw InvalidArgument("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(d) +
                            "; expected 2 or 3");
    }
  }
  for (auto [a, b] : g.edges()) {
    if (side[a] == side[b]) throw InvalidArgument("edge joins two vertices of the same degree class");
  }
  return s;
}

int position(const std::vector<int>& list, int x) {
  return static_cast<int>(std::find(list.begin(), list.end(), x) - list.begin());
}

}  // namespace

Reduction reduce_exactmm_forced(const Graph& src, int k) {
  BipartiteSides sides = split_23(src);
  const int nu = static_cast<int>(sides.men.size());
  const int nw = static_cast<int>(sides.women.size());
  if (k < 0 || k > std::min(nu, nw)) {
    throw InvalidArgument("K must lie in [0, min(|U0|, |W0|)] = [0, " + std::to_string(std::min(nu, nw)) + "]");
  }
  Builder b(true);
  std::map<int, int> ug, wg;  // source vertex -> gadget number
  for (int i = 0; i < nu; ++i) ug[sides.men[i]] = i;
  for (int i = 0; i < nw; ++i) wg[sides.women[i]] = i;

  std::vector<std::array<int, 3>> u(nu), v(nw);
  std::vector<std::array<int, 2>> z(nu);
  std::vector<std::array<int, 4>> w(nw);
  for (int i = 0; i < nu; ++i) {
    for (int t = 0; t < 3; ++t) u[i][t] = b.add("U" + std::to_string(i + 1) + ".u" + std::to_string(t + 1), Side::left);
    for (int t = 0; t < 2; ++t) z[i][t] = b.add("U" + std::to_string(i + 1) + ".z" + std::to_string(t + 1), Side::right);
  }
  for (int i = 0; i < nw; ++i) {
    for (int t = 0; t < 4; ++t) w[i][t] = b.add("W" + std::to_string(i + 1) + ".w" + std::to_string(t + 1), Side::right);
    for (int t = 0; t < 3; ++t) v[i][t] = b.add("W" + std::to_string(i + 1) + ".v" + std::to_string(t + 1), Side::left);
  }
  const int u0 = b.add("S.u0", Side::left);
  const int u0p = b.add("S.u0'", Side::left);
  const int u0pp = b.add("S.u0''", Side::left);
  const int w0 = b.add("S.w0", Side::right);
  const int w0p = b.add("S.w0'", Side::right);
  const int w0pp = b.add("S.w0''", Side::right);
  std::vector<int> xs, ys;
  for (int i = 0; i < nw - k; ++i) xs.push_back(b.add(idx("X", i), Side::left));
  for (int i = 0; i < nu - k; ++i) ys.push_back(b.add(idx("Y", i), Side::right));

  // Relevant edges: the i-th edge of u (by neighbour index) meets the j-th
  // edge of w at u_i and w_j.
  std::vector<std::array<int, 2>> relevant_u(nu);
  std::vector<std::array<int, 3>> relevant_w(nw);
  for (auto [a, c] : src.edges()) {
    int uu = ug.count(a) ? a : c;
    int ww = uu == a ? c : a;
    int i = position(src.neighbors(uu), ww);
    int j = position(src.neighbors(ww), uu);
    relevant_u[ug[uu]][i] = w[wg[ww]][j];
    relevant_w[wg[ww]][j] = u[ug[uu]][i];
  }
  std::vector<std::vector<int>> adjacency_u(nu), adjacency_w(nw);
  for (auto [a, c] : src.edges()) {
    int uu = ug.count(a) ? a : c;
    int ww = uu == a ? c : a;
    int gu = ug[uu], gw = wg[ww];
    if (relevant_u[gu][0] == w[gw][0]) continue;
    adjacency_u[gu].push_back(w[gw][0]);
    adjacency_w[gw].push_back(u[gu][0]);
  }
  std::vector<int> all_u1, all_u3, all_w1, all_w4;
  for (int i = 0; i < nu; ++i) {
    all_u1.push_back(u[i][0]);
    all_u3.push_back(u[i][2]);
  }
  for (int i = 0; i < nw; ++i) {
    all_w1.push_back(w[i][0]);
    all_w4.push_back(w[i][3]);
  }

  for (int i = 0; i < nu; ++i) {
    b.list(u[i][0], {z[i][0], relevant_u[i][0]});
    b.append(u[i][0], adjacency_u[i]);
    b.append(u[i][0], ys);
    b.list(u[i][1], {z[i][1], relevant_u[i][1]});
    b.list(u[i][2], {z[i][0], z[i][1], w0, w0p});
    b.list(z[i][0], {u[i][0], u[i][2]});
    b.list(z[i][1], {u[i][1], u[i][2]});
  }
  for (int i = 0; i < nw; ++i) {
    b.list(w[i][0], {v[i][0], relevant_w[i][0]});
    b.append(w[i][0], adjacency_w[i]);
    b.append(w[i][0], xs);
    b.list(w[i][1], {v[i][1], relevant_w[i][1]});
    b.list(w[i][2], {v[i][2], relevant_w[i][2]});
    b.list(w[i][3], {v[i][0], v[i][1], v[i][2], u0, u0pp});
    for (int t = 0; t < 3; ++t) b.list(v[i][t], {w[i][t], w[i][3]});
  }
  b.list(u0, all_w4);
  b.append(u0, ys);
  b.append(u0, {w0pp, w0p, w0});
  b.list(u0p, {w0p, w0});
  b.list(u0pp, all_w4);
  b.append(u0pp, {w0pp, w0});
  b.list(w0, all_u3);
  b.append(w0, xs);
  b.append(w0, {u0p, u0pp, u0});
  b.list(w0p, all_u3);
  b.append(w0p, {u0p, u0});
  b.list(w0pp, {u0pp, u0});
  for (int x : xs) {
    b.list(x, all_w1);
    b.append(x, {w0});
  }
  for (int y : ys) {
    b.list(y, all_u1);
    b.append(y, {u0});
  }

  Reduction out;
  out.kind = ReductionKind::exactmm_forced;
  out.k = k;
  out.instance = b.build({}, {{u0, w0}}, out.restrictions);
  const int expected = 5 * nu + 7 * nw + 6 + (nw - k) + (nu - k);
  if (out.instance.size() != expected) throw std::logic_error("gadget size arithmetic off");
  return out;
}

namespace {

// Lists of the 24-cycle variable gadget; "I" marks the interconnecting slot.
struct GadgetList {
  const char* owner;
  std::vector<const char*> prefs;
};

const std::vector<GadgetList>& variable_lists() {
  static const std::vector<GadgetList> lists = {
      {"x1", {"u1", "I", "u2"}}, {"x2", {"u3", "I", "u4"}}, {"x3", {"u6", "I", "u5"}}, {"x4", {"u8", "I", "u7"}},
      {"u1", {"x1", "v1", "~"}}, {"u2", {"x1", "v2", "~"}}, {"u3", {"v3", "x2", "~"}}, {"u4", {"x2", "v4", "~"}},
      {"u5", {"x3", "v5", "~"}}, {"u6", {"v6", "x3", "~"}}, {"u7", {"x4", "v7", "~"}}, {"u8", {"x4", "v8", "~"}},
      {"v1", {"u1", "y4", "~"}}, {"v2", {"u2", "y1", "~"}}, {"v3", {"y1", "u3", "~"}}, {"v4", {"u4", "y2", "~"}},
      {"v5", {"y2", "u5", "~"}}, {"v6", {"y3", "u6", "~"}}, {"v7", {"u7", "y3", "~"}}, {"v8", {"u8", "y4", "~"}},
      {"y1", {"v2", "v3", "~"}}, {"y2", {"v4", "v5", "~"}}, {"y3", {"v7", "v6", "~"}}, {"y4", {"v8", "v1", "~"}},
  };
  return lists;
}

const std::vector<GadgetList>& clause_lists() {
  static const std::vector<GadgetList> lists = {
      {"a1", {"b1", "I", "q1"}}, {"a2", {"b2", "I", "q1"}}, {"a3", {"b3", "I", "q3"}},
      {"b1", {"a1", "p1"}},      {"b2", {"a2", "p1"}},      {"b3", {"a3", "p3"}},
      {"p1", {"b1", "b2", "p2"}}, {"p2", {"p1", "p3"}},     {"p3", {"p2", "b3", "r1"}},
      {"q1", {"a1", "a2", "q2"}}, {"q2", {"q1", "q3"}},     {"q3", {"q2", "a3", "r2"}},
      {"r1", {"p3"}},            {"r2", {"q3"}},
  };
  return lists;
}

// Special matchings, as pairs of local names.
const std::vector<std::pair<const char*, const char*>> kTrueMatching = {
    {"x1", "u1"}, {"x2", "u3"}, {"x3", "u5"}, {"x4", "u7"}, {"u2", "v2"}, {"u4", "v4"},
    {"u6", "v6"}, {"u8", "v8"}, {"v3", "y1"}, {"v5", "y2"}, {"v7", "y3"}, {"v1", "y4"}};
const std::vector<std::pair<const char*, const char*>> kFalseMatching = {
    {"x1", "u2"}, {"x2", "u4"}, {"x3", "u6"}, {"x4", "u8"}, {"v2", "y1"}, {"v4", "y2"},
    {"v6", "y3"}, {"v8", "y4"}, {"u1", "v1"}, {"u3", "v3"}, {"u5", "v5"}, {"u7", "v7"}};
const std::vector<std::pair<const char*, const char*>> kClauseMatchings[3] = {
    {{"b3", "a3"}, {"p1", "b1"}, {"a1", "q1"}, {"b2", "a2"}, {"p2", "p3"}, {"q2", "q3"}},
    {{"b3", "a3"}, {"b1", "a1"}, {"p1", "b2"}, {"a2", "q1"}, {"p2", "p3"}, {"q2", "q3"}},
    {{"p3", "b3"}, {"a3", "q3"}, {"b1", "a1"}, {"b2", "a2"}, {"p1", "p2"}, {"q1", "q2"}},
};

bool variable_vertex_is_left(const std::string& local) { return local[0] == 'u' || local[0] == 'y'; }
bool clause_vertex_is_left(const std::string& local) {
  return local[0] == 'a' || local == "p1" || local == "p3" || local == "q2" || local == "r2";
}

struct E3Builder {
  Builder b{true};
  std::vector<std::pair<int, int>> forbidden;
  std::vector<std::map<std::string, int>> variables;
  std::vector<std::map<std::string, int>> clauses;

  void add_variable(int index) {
    std::map<std::string, int> h;
    std::string prefix = "x" + std::to_string(index + 1) + ".";
    for (const auto& l : variable_lists()) {
      std::string local = l.owner;
      h[local] = b.add(prefix + local, variable_vertex_is_left(local) ? Side::left : Side::right);
      if (local[0] != 'x') {
        h[local + "~"] = b.add(prefix + local + "~", variable_vertex_is_left(local) ? Side::right : Side::left);
      }
    }
    variables.push_back(std::move(h));
  }

  void add_clause(int index) {
    std::map<std::string, int> h;
    std::string prefix = "c" + std::to_string(index + 1) + ".";
    for (const auto& l : clause_lists()) {
      std::string local = l.owner;
      h[local] = b.add(prefix + local, clause_vertex_is_left(local) ? Side::left : Side::right);
    }
    clauses.push_back(std::move(h));
  }

  // link[var][x-slot] = clause a-vertex handle, or -1.
  void lists(const std::vector<std::array<int, 4>>& link, const std::vector<std::array<int, 3>>& clause_link) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      auto& h = variables[i];
      for (const auto& l : variable_lists()) {
        std::string owner = l.owner;
        std::vector<int> prefs;
        for (std::string p : l.prefs) {
          if (p == "I") {
            int slot = owner[1] - '1';
            if (link[i][slot] >= 0) prefs.push_back(link[i][slot]);
          } else if (p == "~") {
            prefs.push_back(h[owner + "~"]);
            b.list(h[owner + "~"], {h[owner]});
            forbidden.emplace_back(h[owner], h[owner + "~"]);
          } else {
            prefs.push_back(h[p]);
          }
        }
        b.list(h[owner], prefs);
      }
    }
    for (std::size_t j = 0; j < clauses.size(); ++j) {
      auto& h = clauses[j];
      for (const auto& l : clause_lists()) {
        std::string owner = l.owner;
        std::vector<int> prefs;
        for (std::string p : l.prefs) {
          if (p == "I") {
            int x = clause_link[j][owner[1] - '1'];
            prefs.push_back(x);
            forbidden.emplace_back(h[owner], x);
          } else {
            prefs.push_back(h[p]);
          }
        }
        b.list(h[owner], prefs);
      }
      forbidden.emplace_back(h["r1"], h["p3"]);
      forbidden.emplace_back(h["r2"], h["q3"]);
    }
  }
};

}  // namespace

Reduction reduce_e3sat(const CnfFormula& f) {
  if (!f.is_22_e3sat()) throw InvalidArgument("formula is not (2,2)-E3-SAT shaped");
  E3Builder e;
  const int n = f.variables;
  const int m = static_cast<int>(f.clauses.size());
  for (int i = 0; i < n; ++i) e.add_variable(i);
  for (int j = 0; j < m; ++j) e.add_clause(j);
  std::vector<std::array<int, 4>> link(n, {-1, -1, -1, -1});
  std::vector<std::array<int, 3>> clause_link(m);
  std::vector<int> positive(n, 0), negative(n, 0);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < 3; ++i) {
      int lit = f.clauses[j][i];
      int var = std::abs(lit) - 1;
      int slot = lit > 0 ? positive[var]++ : 2 + negative[var]++;
      std::string x = "x" + std::to_string(slot + 1);
      link[var][slot] = e.clauses[j]["a" + std::to_string(i + 1)];
      clause_link[j][i] = e.variables[var][x];
    }
  }
  e.lists(link, clause_link);
  Reduction out;
  out.kind = ReductionKind::e3sat;
  out.instance = e.b.build(e.forbidden, {}, out.restrictions);
  if (out.instance.size() != 44 * n + 14 * m || out.instance.max_degree() > 3) {
    throw std::logic_error("gadget size or degree audit failed");
  }
  return out;
}

Reduction e3sat_variable_gadget() {
  E3Builder e;
  e.add_variable(0);
  e.lists({{-1, -1, -1, -1}}, {});
  Reduction out;
  out.kind = ReductionKind::e3sat;
  out.instance = e.b.build(e.forbidden, {}, out.restrictions);
  return out;
}

namespace {

Reduction vc_gadgets(const Graph& g, const ReductionOptions& options) {
  const int n = g.n();
  std::vector<std::vector<Agent>> prefs(4 * n);
  std::vector<std::string> roles(4 * n);
  auto p = [](int i) { return 4 * i; };
  auto pb = [](int i) { return 4 * i + 1; };
  auto q = [](int i) { return 4 * i + 2; };
  auto qb = [](int i) { return 4 * i + 3; };
  for (int i = 0; i < n; ++i) {
    roles[p(i)] = idx("p", i);
    roles[pb(i)] = idx("pb", i);
    roles[q(i)] = idx("q", i);
    roles[qb(i)] = idx("qb", i);
    prefs[p(i)] = {pb(i)};
    for (int j : g.neighbors(i)) prefs[p(i)].push_back(p(j));
    prefs[p(i)].push_back(qb(i));
    prefs[pb(i)] = {q(i), p(i)};
    prefs[q(i)] = {qb(i), pb(i)};
    prefs[qb(i)] = {p(i), q(i)};
  }
  if (!options.truncate_rest) {
    for (auto& list : prefs) {
      std::vector<bool> listed(4 * n, false);
      for (Agent a : list) listed[a] = true;
      Agent self = static_cast<Agent>(&list - prefs.data());
      for (Agent a = 0; a < 4 * n; ++a) {
        if (!listed[a] && a != self) list.push_back(a);
      }
    }
  }
  Reduction out;
  out.options = options;
  out.instance = Instance::roommates(4 * n, std::move(prefs));
  out.instance.set_roles(std::move(roles));
  return out;
}

std::vector<Edge> gadget_edges(int n, int first, int second) {
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i) out.push_back(Edge::of(4 * i + first, 4 * i + second));
  return out;
}

}  // namespace

Reduction reduce_vc_sr(const Graph& g, PadMode mode, const ReductionOptions& options) {
  Reduction out = vc_gadgets(g, options);
  out.kind = ReductionKind::vc_sr;
  out.mode = mode;
  out.restrictions = mode == PadMode::forbidden ? RestrictionSet(gadget_edges(g.n(), 0, 1), {})
                                                : RestrictionSet({}, gadget_edges(g.n(), 0, 3));
  return out;
}

Reduction reduce_indset_maxforced(const Graph& g, const ReductionOptions& options) {
  Reduction out = vc_gadgets(g, options);
  out.kind = ReductionKind::indset_maxforced;
  out.mode = PadMode::forced;
  out.restrictions = RestrictionSet({}, gadget_edges(g.n(), 0, 3));
  return out;
}

namespace {

Graph clause_graph(const CnfFormula& f) {
  if (!f.is_monotone_2cnf()) {
    throw InvalidArgument("formula must have two distinct unnegated variables per clause");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& c : f.clauses) edges.emplace_back(std::min(c[0], c[1]) - 1, std::max(c[0], c[1]) - 1);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(f.variables, std::move(edges));
}

}  // namespace

Reduction reduce_w2sat_sr(const CnfFormula& f, const ReductionOptions& options) {
  Reduction out = vc_gadgets(clause_graph(f), options);
  out.kind = ReductionKind::w2sat_sr;
  out.restrictions = RestrictionSet(gadget_edges(f.variables, 0, 1), {});
  return out;
}

namespace {

struct Deg3Layout {
  int n = 0;
  int m = 0;
  Agent v(int i, int r) const { return 3 * i + r; }              // r in 0..2
  Agent e(int j, int s) const { return 3 * n + 4 * j + s; }      // s in 0..3
  Agent w(int i, int r) const { return 3 * n + 4 * m + 3 * i + r; }
};

}  // namespace

Reduction reduce_vc_sr_deg3(const Graph& g) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.degree(i) != 3) throw InvalidArgument("graph is not 3-regular");
  }
  Deg3Layout L{g.n(), static_cast<int>(g.edges().size())};
  const int total = 6 * L.n + 4 * L.m;
  std::vector<std::vector<Agent>> prefs(total);
  std::vector<std::string> roles(total);
  // incident[i][r] = index j of the r-th edge at vertex i, by edge index.
  std::vector<std::vector<int>> incident(L.n);
  for (int j = 0; j < L.m; ++j) {
    incident[g.edges()[j].first].push_back(j);
    incident[g.edges()[j].second].push_back(j);
  }
  auto e_of_v = [&](int i, int r) {
    int j = incident[i][r];
    int s = g.edges()[j].first == i ? 0 : 1;
    return L.e(j, s);
  };
  auto v_of_e = [&](int j, int s) {
    int i = s == 0 ? g.edges()[j].first : g.edges()[j].second;
    int r = position(incident[i], j);
    return L.v(i, r);
  };
  for (int i = 0; i < L.n; ++i) {
    for (int r = 0; r < 3; ++r) {
      roles[L.v(i, r)] = "v" + std::to_string(i + 1) + "." + std::to_string(r + 1);
      roles[L.w(i, r)] = "w" + std::to_string(i + 1) + "." + std::to_string(r + 1);
      prefs[L.v(i, r)] = {L.w(i, r), e_of_v(i, r), L.w(i, (r + 1) % 3)};
    }
    prefs[L.w(i, 0)] = {L.v(i, 2), L.v(i, 0)};
    prefs[L.w(i, 1)] = {L.v(i, 0), L.v(i, 1)};
    prefs[L.w(i, 2)] = {L.v(i, 1), L.v(i, 2)};
  }
  for (int j = 0; j < L.m; ++j) {
    for (int s = 0; s < 4; ++s) roles[L.e(j, s)] = "e" + std::to_string(j + 1) + "." + std::to_string(s + 1);
    prefs[L.e(j, 0)] = {L.e(j, 1), v_of_e(j, 0), L.e(j, 3)};
    prefs[L.e(j, 1)] = {L.e(j, 2), v_of_e(j, 1), L.e(j, 0)};
    prefs[L.e(j, 2)] = {L.e(j, 3), L.e(j, 1)};
    prefs[L.e(j, 3)] = {L.e(j, 0), L.e(j, 2)};
  }
  std::vector<Edge> f;
  for (int i = 0; i < L.n; ++i) f.push_back(Edge::of(L.v(i, 0), L.w(i, 0)));
  Reduction out;
  out.kind = ReductionKind::vc_sr_deg3;
  out.instance = Instance::roommates(total, std::move(prefs));
  out.instance.set_roles(std::move(roles));
  out.restrictions = RestrictionSet(std::move(f), {});
  if (out.instance.max_degree() > 3) throw std::logic_error("degree audit failed");
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct Checker {
  ReductionReport& report;

  void note(std::string line) { report.details.push_back(std::move(line)); }
  bool expect(bool ok, const std::string& what) {
    note(std::string(ok ? "ok: " : "FAILED: ") + what);
    return ok;
  }
};

Matching matching_from_roles(const Instance& inst, const Roles& roles,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
  Matching m(inst.size());
  for (const auto& [x, y] : pairs) {
    Edge e = Edge::of(roles(x), roles(y));
    if (!inst.has_edge(e)) throw InvalidArgument("witness pair " + x + " " + y + " is not an edge of the target");
    m.add(e);
  }
  return m;
}

const Graph& graph_of(const SourceProblem& src) {
  if (auto g = std::get_if<Graph>(&src.payload)) return *g;
  throw InvalidArgument("source payload is not a graph");
}
const CnfFormula& formula_of(const SourceProblem& src) {
  if (auto f = std::get_if<CnfFormula>(&src.payload)) return *f;
  throw InvalidArgument("source payload is not a formula");
}
const Instance& instance_of(const SourceProblem& src) {
  if (auto i = std::get_if<Instance>(&src.payload)) return *i;
  throw InvalidArgument("source payload is not a matching instance");
}

void require_kind(const SourceProblem& src, std::initializer_list<SourceKind> allowed, ReductionKind kind) {
  if (std::find(allowed.begin(), allowed.end(), src.kind) == allowed.end()) {
    throw InvalidArgument("source kind does not fit the " + to_string(kind) + " construction");
  }
}

Reduction rebuild(const SourceProblem& src, const Reduction& r) {
  switch (r.kind) {
    case ReductionKind::psmi: return reduce_psmi(instance_of(src), r.k, r.options);
    case ReductionKind::pad_forbidden: return pad_with_garbage(instance_of(src), r.k, PadMode::forbidden, r.options);
    case ReductionKind::pad_forced: return pad_with_garbage(instance_of(src), r.k, PadMode::forced, r.options);
    case ReductionKind::exactmm_forced: return reduce_exactmm_forced(graph_of(src), r.k);
    case ReductionKind::e3sat: return reduce_e3sat(formula_of(src));
    case ReductionKind::vc_sr: return reduce_vc_sr(graph_of(src), r.mode, r.options);
    case ReductionKind::indset_maxforced: return reduce_indset_maxforced(graph_of(src), r.options);
    case ReductionKind::w2sat_sr: return reduce_w2sat_sr(formula_of(src), r.options);
    case ReductionKind::vc_sr_deg3: return reduce_vc_sr_deg3(graph_of(src));
  }
  throw InvalidArgument("unknown reduction kind");
}

// Witness for the four-vertex gadgets: "in" selects {p pb, q qb}.
Matching gadget_matching(const Instance& inst, int n, const std::vector<bool>& in) {
  Matching m(inst.size());
  for (int i = 0; i < n; ++i) {
    if (in[i]) {
      m.add(Edge{4 * i, 4 * i + 1});
      m.add(Edge{4 * i + 2, 4 * i + 3});
    } else {
      m.add(Edge{4 * i, 4 * i + 3});
      m.add(Edge{4 * i + 1, 4 * i + 2});
    }
  }
  return m;
}

std::optional<std::size_t> min_violations_exact(const Instance& inst, const RestrictionSet& r) {
  auto res = sr_min_restricted_violations(inst, r, ViolationMode::exact);
  if (!res) return std::nullopt;
  return res->violations.total();
}

}  // namespace

ReductionReport verify_reduction(const SourceProblem& src, const Reduction& constructed,
                                 const VerifyOptions& options) {
  ReductionReport report;
  report.target = constructed;
  Checker c{report};
  const Instance& target = constructed.instance;
  const RestrictionSet& r = constructed.restrictions;
  const bool small = target.size() <= options.max_target_agents;

  switch (constructed.kind) {
    case ReductionKind::psmi:
    case ReductionKind::pad_forbidden:
    case ReductionKind::pad_forced:
      require_kind(src, {SourceKind::psmi}, constructed.kind);
      break;
    case ReductionKind::exactmm_forced:
      require_kind(src, {SourceKind::exact_maximal_matching}, constructed.kind);
      break;
    case ReductionKind::e3sat:
      require_kind(src, {SourceKind::e3sat22}, constructed.kind);
      break;
    case ReductionKind::vc_sr:
    case ReductionKind::vc_sr_deg3:
      require_kind(src, {SourceKind::vertex_cover}, constructed.kind);
      break;
    case ReductionKind::indset_maxforced:
      require_kind(src, {SourceKind::independent_set, SourceKind::vertex_cover}, constructed.kind);
      break;
    case ReductionKind::w2sat_sr:
      require_kind(src, {SourceKind::w2sat}, constructed.kind);
      break;
  }

  Reduction fresh = rebuild(src, constructed);
  bool audit = c.expect(fresh.instance == target && fresh.restrictions == r,
                        "target equals a fresh construction from the source");

  std::optional<bool> forward;  // nullopt: no source solution to build from
  auto run_forward = [&](auto&& body) {
    try {
      forward = body();
    } catch (const InvalidArgument& e) {
      forward = c.expect(false, std::string("witness assembly: ") + e.what());
    }
  };
  std::optional<bool> equivalent;

  switch (constructed.kind) {
    case ReductionKind::psmi:
    case ReductionKind::pad_forbidden:
    case ReductionKind::pad_forced: {
      const Instance& inst = instance_of(src);
      auto best = oracle_psmi(inst);
      const int pads = constructed.kind == ReductionKind::psmi ? constructed.k + 1 : constructed.k;
      if (!best) {
        c.note("source has no perfect matching");
      } else {
        c.note("source optimum over perfect matchings: " + std::to_string(best->value));
        run_forward([&] {
          Roles roles(target);
          std::vector<std::pair<std::string, std::string>> pairs;
          for (const Edge& e : best->witness.pairs()) pairs.emplace_back(inst.name(e.a), inst.name(e.b));
          for (int i = 0; i < pads; ++i) pairs.emplace_back(idx("p", i), idx("q", i));
          Matching m = matching_from_roles(target, roles, pairs);
          BlockingReport bp = blocking_pairs(target, m);
          std::vector<Edge> mapped;
          for (const Edge& e : blocking_pairs(inst, best->witness).blocking) {
            mapped.push_back(Edge::of(roles(inst.name(e.a)), roles(inst.name(e.b))));
          }
          std::sort(mapped.begin(), mapped.end());
          bool ok = c.expect(satisfies(m, r), "witness honours the restrictions");
          ok = c.expect(bp.blocking == mapped, "witness has the source's blocking set (" +
                                                   std::to_string(bp.count()) + " edges)") && ok;
          return ok;
        });
      }
      if (small) {
        auto opt = minbp_exact(target, r);
        std::size_t t = opt->bp.count();
        c.note("target minimum blocking count: " + std::to_string(t));
        if (constructed.kind == ReductionKind::psmi) {
          const std::size_t k = constructed.k;
          bool src_ok = best && best->value <= k;
          bool ok = (t <= k) == src_ok && (!src_ok || t == best->value);
          equivalent = c.expect(ok, "target optimum <= K exactly when the source optimum <= K");
        } else if (pads == 0) {
          equivalent = c.expect(target == inst && r.empty(), "zero padding leaves the source unchanged");
        } else {
          const std::size_t cap = pads;
          bool ok = best && best->value < cap ? t == best->value : t >= cap;
          equivalent = c.expect(ok, "target optimum is the source optimum when below C, otherwise at least C");
        }
      }
      break;
    }
    case ReductionKind::exactmm_forced: {
      const Graph& g = graph_of(src);
      BipartiteSides sides = split_23(g);
      const std::size_t claimed = sides.men.size() + sides.women.size();
      auto mm = oracle_exact_maximal_matching_witness(g, constructed.k);
      if (!mm) {
        c.note("source has no maximal matching of size " + std::to_string(constructed.k));
      } else {
        run_forward([&] {
          Roles roles(target);
          std::map<int, int> ug, wg;
          for (std::size_t i = 0; i < sides.men.size(); ++i) ug[sides.men[i]] = static_cast<int>(i);
          for (std::size_t i = 0; i < sides.women.size(); ++i) wg[sides.women[i]] = static_cast<int>(i);
          std::vector<int> u_slot(sides.men.size(), -1), w_slot(sides.women.size(), -1);
          std::vector<std::pair<std::string, std::string>> pairs;
          auto U = [](int g, const std::string& s) { return "U" + std::to_string(g + 1) + "." + s; };
          auto W = [](int g, const std::string& s) { return "W" + std::to_string(g + 1) + "." + s; };
          for (auto [a, b] : *mm) {
            int uu = ug.count(a) ? a : b;
            int ww = uu == a ? b : a;
            int i = position(g.neighbors(uu), ww);
            int j = position(g.neighbors(ww), uu);
            u_slot[ug[uu]] = i;
            w_slot[wg[ww]] = j;
            pairs.emplace_back(U(ug[uu], "u" + std::to_string(i + 1)), W(wg[ww], "w" + std::to_string(j + 1)));
          }
          int y = 0;
          for (std::size_t gi = 0; gi < sides.men.size(); ++gi) {
            int gu = static_cast<int>(gi);
            if (u_slot[gi] >= 0) {
              int i = u_slot[gi];
              pairs.emplace_back(U(gu, "u" + std::to_string(2 - i)), U(gu, "z" + std::to_string(2 - i)));
              pairs.emplace_back(U(gu, "u3"), U(gu, "z" + std::to_string(i + 1)));
            } else {
              pairs.emplace_back(U(gu, "u2"), U(gu, "z2"));
              pairs.emplace_back(U(gu, "u3"), U(gu, "z1"));
              pairs.emplace_back(U(gu, "u1"), idx("Y", y++));
            }
          }
          int x = 0;
          for (std::size_t gi = 0; gi < sides.women.size(); ++gi) {
            int gw = static_cast<int>(gi);
            if (w_slot[gi] >= 0) {
              int j = w_slot[gi];
              pairs.emplace_back(W(gw, "w4"), W(gw, "v" + std::to_string(j + 1)));
              for (int t = 0; t < 3; ++t) {
                if (t != j) pairs.emplace_back(W(gw, "w" + std::to_string(t + 1)), W(gw, "v" + std::to_string(t + 1)));
              }
            } else {
              pairs.emplace_back(W(gw, "w2"), W(gw, "v2"));
              pairs.emplace_back(W(gw, "w3"), W(gw, "v3"));
              pairs.emplace_back(W(gw, "w4"), W(gw, "v1"));
              pairs.emplace_back(W(gw, "w1"), idx("X", x++));
            }
          }
          pairs.emplace_back("S.u0", "S.w0");
          pairs.emplace_back("S.u0'", "S.w0'");
          pairs.emplace_back("S.u0''", "S.w0''");
          Matching m = matching_from_roles(target, roles, pairs);
          std::size_t bp = blocking_pairs(target, m).count();
          bool ok = c.expect(satisfies(m, r), "witness contains the forced edge");
          ok = c.expect(bp == claimed, "witness has exactly |U0|+|W0| = " + std::to_string(claimed) +
                                           " blocking edges (found " + std::to_string(bp) + ")") && ok;
          return ok;
        });
      }
      if (small) {
        bool source_yes = mm.has_value();
        auto res = minbp_exact(target, r, claimed);
        equivalent = c.expect(res.has_value() == source_yes,
                              "a matching with the forced edge and <= |U0|+|W0| blocking edges exists exactly when "
                              "the source has a maximal matching of size K");
      }
      break;
    }
    case ReductionKind::e3sat: {
      const CnfFormula& f = formula_of(src);
      auto assignment = oracle_satisfying_assignment(f);
      if (!assignment) {
        c.note("source formula is unsatisfiable");
      } else {
        run_forward([&] {
          Roles roles(target);
          std::vector<std::pair<std::string, std::string>> pairs;
          for (int v = 0; v < f.variables; ++v) {
            std::string prefix = "x" + std::to_string(v + 1) + ".";
            for (auto [a, b] : (*assignment)[v] ? kTrueMatching : kFalseMatching) {
              pairs.emplace_back(prefix + a, prefix + b);
            }
          }
          for (std::size_t j = 0; j < f.clauses.size(); ++j) {
            int chosen = 0;
            while (chosen < 3) {
              int lit = f.clauses[j][chosen];
              if ((lit > 0) == (*assignment)[std::abs(lit) - 1]) break;
              ++chosen;
            }
            std::string prefix = "c" + std::to_string(j + 1) + ".";
            for (auto [a, b] : kClauseMatchings[chosen]) pairs.emplace_back(prefix + a, prefix + b);
          }
          Matching m = matching_from_roles(target, roles, pairs);
          std::size_t bp = blocking_pairs(target, m).count();
          std::size_t claimed = f.variables + f.clauses.size();
          bool ok = c.expect(satisfies(m, r), "witness avoids forbidden edges");
          ok = c.expect(bp == claimed, "witness has exactly m + n = " + std::to_string(claimed) +
                                           " blocking edges (found " + std::to_string(bp) + ")") && ok;
          return ok;
        });
      }
      if (small) {
        auto opt = minbp_exact(target, r, f.variables + f.clauses.size());
        equivalent = c.expect(opt.has_value() == assignment.has_value(),
                              "blocking count m + n is attainable exactly when the formula is satisfiable");
      }
      break;
    }
    case ReductionKind::vc_sr:
    case ReductionKind::indset_maxforced:
    case ReductionKind::w2sat_sr: {
      const bool formula = constructed.kind == ReductionKind::w2sat_sr;
      const int n = formula ? formula_of(src).variables : graph_of(src).n();
      std::vector<bool> selected(n, false);
      std::size_t value = 0;
      if (formula) {
        auto a = oracle_satisfying_assignment(formula_of(src));
        for (int i = 0; i < n; ++i) selected[i] = (*a)[i];
        value = std::count(a->begin(), a->end(), true);
      } else {
        for (int v : oracle_vertex_cover_witness(graph_of(src))) selected[v] = true;
        value = std::count(selected.begin(), selected.end(), true);
      }
      c.note("source optimum: " + std::to_string(constructed.kind == ReductionKind::indset_maxforced ? n - value : value));
      run_forward([&] {
        Matching m = gadget_matching(target, n, selected);
        ViolationReport v = violation_counts(m, r);
        bool ok = c.expect(is_stable(target, m), "witness is stable");
        if (constructed.kind == ReductionKind::indset_maxforced) {
          std::size_t kept = r.forced().size() - v.forced_missing;
          ok = c.expect(kept == n - value, "witness keeps one forced edge per independent vertex") && ok;
        } else {
          ok = c.expect(v.total() == value, "witness violates exactly one restriction per chosen vertex") && ok;
        }
        return ok;
      });
      if (small) {
        auto best = min_violations_exact(target, r);
        if (constructed.kind == ReductionKind::indset_maxforced) {
          equivalent = c.expect(best && r.forced().size() - *best == n - value,
                                "maximum |Q ∩ M| over stable matchings equals the independence number");
        } else {
          equivalent = c.expect(best && *best == value, "minimum violations over stable matchings equals the source optimum");
        }
      }
      break;
    }
    case ReductionKind::vc_sr_deg3: {
      const Graph& g = graph_of(src);
      std::vector<int> cover = oracle_vertex_cover_witness(g);
      std::vector<bool> in(g.n(), false);
      for (int v : cover) in[v] = true;
      c.note("source optimum: " + std::to_string(cover.size()));
      run_forward([&] {
        Deg3Layout L{g.n(), static_cast<int>(g.edges().size())};
        Matching canonical(target.size());
        Matching m(target.size());
        for (int i = 0; i < L.n; ++i) {
          for (int rr = 0; rr < 3; ++rr) {
            canonical.add(Edge::of(L.v(i, rr), L.w(i, rr)));
            m.add(Edge::of(L.v(i, rr), L.w(i, in[i] ? rr : (rr + 1) % 3)));
          }
        }
        for (int j = 0; j < L.m; ++j) {
          canonical.add(Edge::of(L.e(j, 0), L.e(j, 1)));
          canonical.add(Edge::of(L.e(j, 2), L.e(j, 3)));
          if (in[g.edges()[j].first]) {
            m.add(Edge::of(L.e(j, 0), L.e(j, 3)));
            m.add(Edge::of(L.e(j, 1), L.e(j, 2)));
          } else {
            m.add(Edge::of(L.e(j, 0), L.e(j, 1)));
            m.add(Edge::of(L.e(j, 2), L.e(j, 3)));
          }
        }
        bool ok = c.expect(is_stable(target, canonical), "canonical matching is stable");
        ok = c.expect(is_stable(target, m), "cover witness is stable") && ok;
        ok = c.expect(violation_counts(m, r).total() == cover.size(), "cover witness uses |C| forbidden edges") && ok;
        return ok;
      });
      if (small) {
        auto best = min_violations_exact(target, r);
        equivalent = c.expect(best && *best == cover.size(), "minimum |M ∩ F| equals the vertex cover number");
      }
      break;
    }
  }

  if (forward) {
    report.forward_check = audit && *forward ? CheckStatus::pass : CheckStatus::fail;
  } else {
    report.forward_check = audit ? CheckStatus::skipped : CheckStatus::fail;
  }
  if (!small) c.note("equivalence skipped: target has " + std::to_string(target.size()) + " agents");
  if (equivalent) report.equivalence_check = *equivalent ? CheckStatus::pass : CheckStatus::fail;
  return report;
}

}  // namespace smr
