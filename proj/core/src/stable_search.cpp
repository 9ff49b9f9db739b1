#include "stable_search.hpp"

namespace smr::detail {

namespace {

constexpr Agent kUndecided = -2;

class Runner {
 public:
  Runner(const StableSearch& spec, std::size_t limit)
      : spec_(spec), inst_(spec.inst), limit_(limit), mate_(inst_.size(), kUndecided) {}

  EnumerationResult run() {
    descend();
    return std::move(out_);
  }

 private:
  bool allowed(Agent a, Agent b) const { return spec_.allowed[inst_.edge_index(Edge::of(a, b))] != 0; }

  // Can undecided agent c still end up with a partner it ranks above `rival`?
  bool can_beat(Agent c, Agent rival) const {
    int threshold = inst_.rank(c, rival);
    if (spec_.forced[c] != kUnmatched) return inst_.rank(c, spec_.forced[c]) < threshold;
    auto list = inst_.prefs(c);
    for (int r = 0; r < threshold; ++r) {
      Agent b = list[r];
      if (mate_[b] == kUndecided && spec_.forced[b] == kUnmatched && allowed(c, b)) return true;
    }
    return false;
  }

  bool consistent() const {
    for (Agent x = 0; x < inst_.size(); ++x) {
      if (mate_[x] == kUndecided) continue;
      Agent current = mate_[x];
      for (Agent y : inst_.prefs(x)) {
        if (current != kUnmatched && inst_.rank(x, y) >= inst_.rank(x, current)) break;
        if (mate_[y] == kUndecided) {
          if (!can_beat(y, x)) return false;
        } else if (inst_.prefers(y, x, mate_[y])) {
          return false;
        }
      }
    }
    return true;
  }

  void descend() {
    if (stop_) return;
    Agent a = 0;
    while (a < inst_.size() && mate_[a] != kUndecided) ++a;
    if (a == inst_.size()) {
      if (out_.matchings.size() == limit_) {
        out_.truncated = true;
        stop_ = true;
        return;
      }
      Matching m(inst_.size());
      for (Agent x = 0; x < inst_.size(); ++x) {
        if (mate_[x] > x) m.add(Edge{x, mate_[x]});
      }
      out_.matchings.push_back(std::move(m));
      return;
    }
    auto try_pair = [&](Agent b) {
      mate_[a] = b;
      mate_[b] = a;
      if (consistent()) descend();
      mate_[a] = kUndecided;
      mate_[b] = kUndecided;
    };
    if (spec_.forced[a] != kUnmatched) {
      try_pair(spec_.forced[a]);
      return;
    }
    for (Agent b : inst_.prefs(a)) {
      if (stop_) return;
      if (mate_[b] == kUndecided && spec_.forced[b] == kUnmatched && allowed(a, b)) try_pair(b);
    }
    if (stop_) return;
    mate_[a] = kUnmatched;
    if (consistent()) descend();
    mate_[a] = kUndecided;
  }

  const StableSearch& spec_;
  const Instance& inst_;
  std::size_t limit_;
  std::vector<Agent> mate_;
  EnumerationResult out_;
  bool stop_ = false;
};

}  // namespace

StableSearch::StableSearch(const Instance& instance)
    : inst(instance), allowed(instance.edge_count(), 1), forced(instance.size(), kUnmatched) {}

EnumerationResult StableSearch::run(std::size_t limit) const { return Runner(*this, limit).run(); }

}  // namespace smr::detail
