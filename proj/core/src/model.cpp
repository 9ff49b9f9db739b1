#include "smr/model.hpp"

#include <algorithm>
#include <charconv>

#include "smr/errors.hpp"

namespace smr {

Instance Instance::marriage(int left, int right, std::vector<std::vector<Agent>> prefs) {
  if (left < 0 || right < 0) throw InvalidArgument("negative side size");
  if (static_cast<int>(prefs.size()) != left + right) {
    throw InvalidArgument("expected " + std::to_string(left + right) + " preference lists");
  }
  return build(InstanceKind::marriage, left, std::move(prefs));
}

Instance Instance::roommates(int n, std::vector<std::vector<Agent>> prefs) {
  if (n < 0) throw InvalidArgument("negative instance size");
  if (static_cast<int>(prefs.size()) != n) {
    throw InvalidArgument("expected " + std::to_string(n) + " preference lists");
  }
  return build(InstanceKind::roommates, n, std::move(prefs));
}

Instance Instance::build(InstanceKind kind, int left, std::vector<std::vector<Agent>> prefs) {
  Instance inst;
  inst.kind_ = kind;
  inst.left_ = left;
  inst.prefs_ = std::move(prefs);
  const int n = inst.size();
  inst.rank_.assign(static_cast<std::size_t>(n) * n, -1);
  for (Agent a = 0; a < n; ++a) {
    const auto& list = inst.prefs_[a];
    for (int r = 0; r < static_cast<int>(list.size()); ++r) {
      Agent b = list[r];
      if (b < 0 || b >= n) throw InvalidArgument(inst.name(a) + " lists an unknown agent");
      if (b == a) throw InvalidArgument(inst.name(a) + " lists itself");
      if (kind == InstanceKind::marriage && inst.side(a) == inst.side(b)) {
        throw InvalidArgument(inst.name(a) + " lists " + inst.name(b) + " on the same side");
      }
      int& slot = inst.rank_[static_cast<std::size_t>(a) * n + b];
      if (slot >= 0) throw InvalidArgument(inst.name(a) + " lists " + inst.name(b) + " twice");
      slot = r;
    }
  }
  for (Agent a = 0; a < n; ++a) {
    for (Agent b : inst.prefs_[a]) {
      if (inst.rank(b, a) < 0) {
        throw InvalidArgument(inst.name(a) + " lists " + inst.name(b) + " but not vice versa");
      }
      if (a < b) inst.edges_.push_back(Edge{a, b});
    }
  }
  std::sort(inst.edges_.begin(), inst.edges_.end());
  return inst;
}

Side Instance::side(Agent a) const {
  if (kind_ == InstanceKind::roommates) return Side::none;
  return a < left_ ? Side::left : Side::right;
}

AgentId Instance::id(Agent a) const {
  if (kind_ == InstanceKind::roommates) return {a, Side::none};
  return a < left_ ? AgentId{a, Side::left} : AgentId{a - left_, Side::right};
}

std::string Instance::name(Agent a) const {
  if (kind_ == InstanceKind::roommates) return "a" + std::to_string(a + 1);
  return a < left_ ? "u" + std::to_string(a + 1) : "w" + std::to_string(a - left_ + 1);
}

std::optional<Agent> Instance::find(std::string_view name) const {
  if (name.size() < 2) return std::nullopt;
  char prefix = name.front();
  int number = 0;
  auto digits = name.substr(1);
  if (digits.front() == '0') return std::nullopt;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || number < 1) {
    return std::nullopt;
  }
  if (kind_ == InstanceKind::roommates) {
    if (prefix == 'a' && number <= size()) return number - 1;
    return std::nullopt;
  }
  if (prefix == 'u' && number <= left_) return number - 1;
  if (prefix == 'w' && number <= right_count()) return left_ + number - 1;
  return std::nullopt;
}

int Instance::max_degree() const {
  int d = 0;
  for (const auto& list : prefs_) d = std::max(d, static_cast<int>(list.size()));
  return d;
}

int Instance::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

Instance Instance::without_edges(std::span<const Edge> removed) const {
  std::vector<Edge> sorted(removed.begin(), removed.end());
  std::sort(sorted.begin(), sorted.end());
  auto gone = [&](Agent a, Agent b) {
    return std::binary_search(sorted.begin(), sorted.end(), Edge::of(a, b));
  };
  std::vector<std::vector<Agent>> prefs(prefs_.size());
  for (Agent a = 0; a < size(); ++a) {
    for (Agent b : prefs_[a]) {
      if (!gone(a, b)) prefs[a].push_back(b);
    }
  }
  Instance out = build(kind_, left_, std::move(prefs));
  out.roles_ = roles_;
  return out;
}

Instance Instance::as_roommates() const {
  Instance out = build(InstanceKind::roommates, size(), prefs_);
  out.roles_ = roles_;
  return out;
}

void Instance::set_roles(std::vector<std::string> roles) {
  if (!roles.empty() && static_cast<int>(roles.size()) != size()) {
    throw InvalidArgument("role list size mismatch");
  }
  roles_ = std::move(roles);
}

std::optional<Agent> Instance::find_role(std::string_view role) const {
  for (Agent a = 0; a < static_cast<int>(roles_.size()); ++a) {
    if (roles_[a] == role) return a;
  }
  return std::nullopt;
}

Matching Matching::from_pairs(int agents, std::span<const Edge> pairs) {
  Matching m(agents);
  for (const Edge& e : pairs) m.add(e);
  return m;
}

std::size_t Matching::size() const {
  std::size_t count = 0;
  for (Agent a = 0; a < agents(); ++a) {
    if (mate_[a] > a) ++count;
  }
  return count;
}

void Matching::add(const Edge& e) {
  if (e.a < 0 || e.b >= agents() || e.a == e.b) throw InvalidArgument("pair out of range");
  if (mate_[e.a] != kUnmatched || mate_[e.b] != kUnmatched) {
    throw InvalidArgument("agent matched twice");
  }
  mate_[e.a] = e.b;
  mate_[e.b] = e.a;
}

void Matching::remove(const Edge& e) {
  if (!contains(e)) throw InvalidArgument("pair not in matching");
  mate_[e.a] = kUnmatched;
  mate_[e.b] = kUnmatched;
}

std::vector<Edge> Matching::pairs() const {
  std::vector<Edge> out;
  for (Agent a = 0; a < agents(); ++a) {
    if (mate_[a] > a) out.push_back(Edge{a, mate_[a]});
  }
  return out;
}

bool lexicographically_less(const Matching& x, const Matching& y) {
  auto px = x.pairs();
  auto py = y.pairs();
  return std::lexicographical_compare(px.begin(), px.end(), py.begin(), py.end());
}

namespace {

void normalize(std::vector<Edge>& edges) {
  for (Edge& e : edges) e = Edge::of(e.a, e.b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool contains_sorted(const std::vector<Edge>& v, const Edge& e) {
  return std::binary_search(v.begin(), v.end(), e);
}

}  // namespace

RestrictionSet::RestrictionSet(std::vector<Edge> forbidden, std::vector<Edge> forced)
    : forbidden_(std::move(forbidden)), forced_(std::move(forced)) {
  normalize(forbidden_);
  normalize(forced_);
  for (const Edge& e : forced_) {
    if (contains_sorted(forbidden_, e)) throw InvalidArgument("edge both forbidden and forced");
  }
}

bool RestrictionSet::is_forbidden(const Edge& e) const { return contains_sorted(forbidden_, e); }
bool RestrictionSet::is_forced(const Edge& e) const { return contains_sorted(forced_, e); }

bool RestrictionSet::forced_is_matching() const {
  for (std::size_t i = 0; i < forced_.size(); ++i) {
    for (std::size_t j = i + 1; j < forced_.size(); ++j) {
      if (forced_[i].shares_endpoint(forced_[j])) return false;
    }
  }
  return true;
}

void RestrictionSet::check_against(const Instance& inst) const {
  for (const auto* set : {&forbidden_, &forced_}) {
    for (const Edge& e : *set) {
      if (e.b >= inst.size() || !inst.has_edge(e)) {
        throw InvalidArgument("restriction on a non-edge");
      }
    }
  }
}

Rational WeightAssignment::get(const Edge& e) const {
  auto it = weights_.find(e);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational WeightAssignment::total(const Matching& m) const {
  Rational sum = 0;
  for (const Edge& e : m.pairs()) sum += get(e);
  return sum;
}

bool WeightAssignment::all_nonnegative() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const auto& kv) { return sgn(kv.second) >= 0; });
}

}  // namespace smr
