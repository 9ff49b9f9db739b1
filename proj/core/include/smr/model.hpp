#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smr/rational.hpp"

namespace smr {

enum class InstanceKind { marriage, roommates };
enum class Side { left, right, none };

// Agents are dense indices 0..size()-1. In a marriage instance the left side
// occupies 0..left_count()-1 and the right side follows.
using Agent = int;
inline constexpr Agent kUnmatched = -1;

struct AgentId {
  int index = 0;
  Side side = Side::none;
  auto operator<=>(const AgentId&) const = default;
};

// Unordered agent pair, stored with a < b. For marriage instances this is the
// (left, right) orientation because left agents are numbered first.
struct Edge {
  Agent a = 0;
  Agent b = 0;

  static Edge of(Agent x, Agent y) { return x < y ? Edge{x, y} : Edge{y, x}; }
  bool touches(Agent x) const { return a == x || b == x; }
  Agent other(Agent x) const { return x == a ? b : a; }
  bool shares_endpoint(const Edge& e) const { return touches(e.a) || touches(e.b); }
  auto operator<=>(const Edge&) const = default;
};

class Instance {
 public:
  Instance() = default;

  // Both factories validate mutual acceptability, self-listing, duplicates and
  // (for marriage) that lists cross sides. Violations throw InvalidArgument.
  static Instance marriage(int left, int right, std::vector<std::vector<Agent>> prefs);
  static Instance roommates(int n, std::vector<std::vector<Agent>> prefs);

  InstanceKind kind() const { return kind_; }
  bool is_marriage() const { return kind_ == InstanceKind::marriage; }
  int size() const { return static_cast<int>(prefs_.size()); }
  int left_count() const { return left_; }
  int right_count() const { return size() - left_; }
  std::size_t edge_count() const { return edges_.size(); }

  Side side(Agent a) const;
  AgentId id(Agent a) const;
  std::string name(Agent a) const;
  std::optional<Agent> find(std::string_view name) const;

  std::span<const Agent> prefs(Agent a) const { return prefs_[a]; }
  int degree(Agent a) const { return static_cast<int>(prefs_[a].size()); }
  int max_degree() const;

  // 0-based rank of b on a's list, or -1 when b is not acceptable to a.
  int rank(Agent a, Agent b) const { return rank_[static_cast<std::size_t>(a) * size() + b]; }
  bool acceptable(Agent a, Agent b) const { return a != b && rank(a, b) >= 0; }

  // True when a strictly prefers b to current (kUnmatched ranks below everything
  // acceptable). b must be acceptable to a.
  bool prefers(Agent a, Agent b, Agent current) const {
    return current == kUnmatched || rank(a, b) < rank(a, current);
  }

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(const Edge& e) const { return e.a != e.b && acceptable(e.a, e.b); }
  // Position of e in edges(), or -1.
  int edge_index(const Edge& e) const;

  // Copy with the given edges removed from both lists; agent numbering kept.
  Instance without_edges(std::span<const Edge> removed) const;
  // The same graph and lists viewed as a roommates instance.
  Instance as_roommates() const;

  // Optional human-readable roles (e.g. gadget vertex names) for debugging and
  // serialization comments. Empty when unset.
  const std::vector<std::string>& roles() const { return roles_; }
  void set_roles(std::vector<std::string> roles);
  std::optional<Agent> find_role(std::string_view role) const;

  friend bool operator==(const Instance& x, const Instance& y) {
    return x.kind_ == y.kind_ && x.left_ == y.left_ && x.prefs_ == y.prefs_;
  }

 private:
  static Instance build(InstanceKind kind, int left, std::vector<std::vector<Agent>> prefs);

  InstanceKind kind_ = InstanceKind::roommates;
  int left_ = 0;
  std::vector<std::vector<Agent>> prefs_;
  std::vector<int> rank_;
  std::vector<Edge> edges_;
  std::vector<std::string> roles_;
};

class Matching {
 public:
  Matching() = default;
  explicit Matching(int agents) : mate_(agents, kUnmatched) {}

  // Throws InvalidArgument if an agent occurs twice or is out of range.
  static Matching from_pairs(int agents, std::span<const Edge> pairs);

  int agents() const { return static_cast<int>(mate_.size()); }
  Agent partner(Agent a) const { return mate_[a]; }
  bool matched(Agent a) const { return mate_[a] != kUnmatched; }
  bool contains(const Edge& e) const { return mate_[e.a] == e.b; }
  std::size_t size() const;

  void add(const Edge& e);
  void remove(const Edge& e);

  std::vector<Edge> pairs() const;
  const std::vector<Agent>& mates() const { return mate_; }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Agent> mate_;
};

// Lexicographic order on the sorted pair lists; used for canonical witnesses.
bool lexicographically_less(const Matching& x, const Matching& y);

class RestrictionSet {
 public:
  RestrictionSet() = default;
  // Sorts and deduplicates. Throws InvalidArgument when P and Q intersect.
  RestrictionSet(std::vector<Edge> forbidden, std::vector<Edge> forced);

  const std::vector<Edge>& forbidden() const { return forbidden_; }
  const std::vector<Edge>& forced() const { return forced_; }
  bool is_forbidden(const Edge& e) const;
  bool is_forced(const Edge& e) const;
  bool is_restricted(const Edge& e) const { return is_forbidden(e) || is_forced(e); }
  bool empty() const { return forbidden_.empty() && forced_.empty(); }
  std::size_t size() const { return forbidden_.size() + forced_.size(); }

  // No two forced edges share an endpoint.
  bool forced_is_matching() const;
  // Throws InvalidArgument if some member is not an edge of inst.
  void check_against(const Instance& inst) const;

  friend bool operator==(const RestrictionSet&, const RestrictionSet&) = default;

 private:
  std::vector<Edge> forbidden_;
  std::vector<Edge> forced_;
};

struct BlockingReport {
  std::vector<Edge> blocking;  // sorted
  std::size_t forbidden_blockers = 0;
  std::size_t unrestricted_blockers = 0;
  std::size_t count() const { return blocking.size(); }
};

struct ViolationReport {
  std::size_t forbidden_used = 0;
  std::size_t forced_missing = 0;
  std::size_t total() const { return forbidden_used + forced_missing; }
  friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

class WeightAssignment {
 public:
  WeightAssignment() = default;
  void set(const Edge& e, Rational w) { weights_[e] = std::move(w); }
  Rational get(const Edge& e) const;
  Rational total(const Matching& m) const;
  bool all_nonnegative() const;
  const std::map<Edge, Rational>& entries() const { return weights_; }

 private:
  std::map<Edge, Rational> weights_;
};

struct SolverBudget {
  int k_target = 0;
  int l_subset = 0;
  int c_padding = 0;
  Rational epsilon = 0;
};

}  // namespace smr
