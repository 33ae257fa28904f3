#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace spectral_t {

// Dinic's algorithm on integral capacities. Arcs are stored in insertion order,
// so augmenting paths, and therefore the resulting flow, are deterministic.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

  // Returns the arc index, usable with flow_on().
  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<std::ptrdiff_t>(id);
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<std::ptrdiff_t>(id + 1);
    original_.push_back(cap);
    original_.push_back(0);
    return id;
  }

  std::int64_t run(std::size_t source, std::size_t sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      for (std::size_t v = 0; v < head_.size(); ++v) it_[v] = head_[v];
      while (std::int64_t pushed = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  std::int64_t flow_on(std::size_t arc) const { return original_[arc] - arcs_[arc].cap; }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
    std::ptrdiff_t next;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto a = head_[v]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const auto& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[v] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t limit) {
    if (v == t) return limit;
    for (auto& a = it_[v]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      auto& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (std::int64_t got = dfs(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[static_cast<std::size_t>(a) ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::int64_t> original_;
  std::vector<std::ptrdiff_t> head_;
  std::vector<int> level_;
  std::vector<std::ptrdiff_t> it_;
};

}  // namespace spectral_t
