#pragma once

// Almost-regularity, the Ore-Ryser condition, and (d1, d2)-regular spanning
// subgraphs of bipartite graphs via degree-constrained max-flow.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral_t/maxflow.hpp"
#include "spectral_t/multigraph.hpp"
#include "spectral_t/words.hpp"

namespace spectral_t {

struct RegularityParams {
  double delta = 0.2;    // degree-shaving fraction, in [0, 1)
  double epsilon = 0.25; // almost-regularity tolerance, > 0

  void validate() const {
    if (!(delta >= 0.0 && delta < 1.0)) throw InputError("delta must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw InputError("epsilon must be > 0");
  }
};

// Every degree in [(1 - eps) d, (1 + eps) d].
inline bool is_almost_regular(const MultiGraph& g, double d, double epsilon) {
  for (auto deg : g.degrees()) {
    const double x = static_cast<double>(deg);
    if (x < (1.0 - epsilon) * d || x > (1.0 + epsilon) * d) return false;
  }
  return true;
}

// Side-1 degrees near d1 and side-2 degrees near d2.
inline bool is_almost_regular_bipartite(const MultiGraph& g, double d1, double d2,
                                        double epsilon) {
  if (!g.has_partition()) throw InputError("bipartite regularity check needs a partition");
  const auto deg = g.degrees();
  for (VertexId v = 0; v < deg.size(); ++v) {
    const double d = g.side(v) == Side::kFirst ? d1 : d2;
    const double x = static_cast<double>(deg[v]);
    if (x < (1.0 - epsilon) * d || x > (1.0 + epsilon) * d) return false;
  }
  return true;
}

inline bool is_biregular(const MultiGraph& g, std::uint64_t d1, std::uint64_t d2) {
  if (!g.has_partition()) return false;
  const auto deg = g.degrees();
  for (VertexId v = 0; v < deg.size(); ++v) {
    if (deg[v] != (g.side(v) == Side::kFirst ? d1 : d2)) return false;
  }
  return true;
}

inline bool is_regular(const MultiGraph& g, std::uint64_t d) {
  for (auto x : g.degrees()) {
    if (x != d) return false;
  }
  return true;
}

namespace detail {

inline void require_bipartite(const MultiGraph& g, const char* who) {
  if (!g.has_partition()) throw InputError(std::string(who) + ": graph carries no bipartition");
}

}  // namespace detail

// Direct subset check of
//   d1|A| <= e(A, B) + d2 (|V2| - |B|)  for all A in V1, B in V2,
// plus the balance d1|V1| = d2|V2|. Limited to 20 vertices.
inline bool ore_ryser_brute_force(const MultiGraph& g, std::uint64_t d1, std::uint64_t d2) {
  detail::require_bipartite(g, "ore_ryser_brute_force");
  const auto v1 = g.part(Side::kFirst);
  const auto v2 = g.part(Side::kSecond);
  if (v1.size() + v2.size() > 20) throw ResourceError("brute-force Ore-Ryser limited to 20 vertices");
  if (d1 * v1.size() != d2 * v2.size()) return false;

  std::vector<std::size_t> pos(g.vertex_count());
  for (std::size_t i = 0; i < v1.size(); ++i) pos[v1[i]] = i;
  for (std::size_t j = 0; j < v2.size(); ++j) pos[v2[j]] = j;
  // mult[i][j] between V1[i] and V2[j]
  std::vector<std::vector<std::uint64_t>> mult(v1.size(), std::vector<std::uint64_t>(v2.size(), 0));
  for (const auto& [e, m] : g.edges()) {
    auto a = e.first, b = e.second;
    if (g.side(a) != Side::kFirst) std::swap(a, b);
    mult[pos[a]][pos[b]] += m;
  }
  for (std::uint64_t amask = 0; amask < (1ULL << v1.size()); ++amask) {
    const auto asize = static_cast<std::uint64_t>(std::popcount(amask));
    for (std::uint64_t bmask = 0; bmask < (1ULL << v2.size()); ++bmask) {
      std::uint64_t eab = 0;
      for (std::size_t i = 0; i < v1.size(); ++i) {
        if (!(amask >> i & 1)) continue;
        for (std::size_t j = 0; j < v2.size(); ++j) {
          if (bmask >> j & 1) eab += mult[i][j];
        }
      }
      const auto bsize = static_cast<std::uint64_t>(std::popcount(bmask));
      if (d1 * asize > eab + d2 * (v2.size() - bsize)) return false;
    }
  }
  return true;
}

namespace detail {

struct FactorFlow {
  std::int64_t value = 0;
  std::int64_t demand = 0;
  std::vector<std::pair<MultiGraph::EdgeKey, std::int64_t>> used;  // edge -> copies used
};

// Network: source -> V1 (cap d1), V1 -> V2 (cap = multiplicity), V2 -> sink
// (cap d2). Edge arcs follow the graph's edge order.
inline FactorFlow run_factor_flow(const MultiGraph& g, std::uint64_t d1, std::uint64_t d2) {
  const std::size_t m = g.vertex_count();
  const std::size_t source = m, sink = m + 1;
  MaxFlow flow(m + 2);
  FactorFlow out;
  for (VertexId v = 0; v < m; ++v) {
    if (g.side(v) == Side::kFirst) {
      flow.add_arc(source, v, static_cast<std::int64_t>(d1));
      out.demand += static_cast<std::int64_t>(d1);
    } else {
      flow.add_arc(v, sink, static_cast<std::int64_t>(d2));
    }
  }
  std::vector<std::pair<MultiGraph::EdgeKey, std::size_t>> arcs;
  for (const auto& [e, mult] : g.edges()) {
    auto a = e.first, b = e.second;
    if (g.side(a) != Side::kFirst) std::swap(a, b);
    arcs.emplace_back(e, flow.add_arc(a, b, static_cast<std::int64_t>(mult)));
  }
  out.value = flow.run(source, sink);
  for (const auto& [e, arc] : arcs) {
    if (auto f = flow.flow_on(arc); f > 0) out.used.emplace_back(e, f);
  }
  return out;
}

}  // namespace detail

// Exact feasibility: brute force up to 16 vertices, max-flow above.
inline bool ore_ryser_feasible(const MultiGraph& g, std::uint64_t d1, std::uint64_t d2) {
  detail::require_bipartite(g, "ore_ryser_feasible");
  const auto n1 = g.part(Side::kFirst).size();
  const auto n2 = g.part(Side::kSecond).size();
  if (d1 * n1 != d2 * n2) return false;
  if (n1 + n2 <= 16) return ore_ryser_brute_force(g, d1, d2);
  const auto f = detail::run_factor_flow(g, d1, d2);
  return f.value == f.demand;
}

// Spanning subgraph with every V1-degree d1 and every V2-degree d2, or nullopt
// when none exists. Requires d1|V1| = d2|V2|.
inline std::optional<MultiGraph> extract_regular_subgraph(const MultiGraph& g, std::uint64_t d1,
                                                          std::uint64_t d2) {
  detail::require_bipartite(g, "extract_regular_subgraph");
  const auto n1 = g.part(Side::kFirst).size();
  const auto n2 = g.part(Side::kSecond).size();
  if (d1 * n1 != d2 * n2) {
    throw InputError("extract_regular_subgraph: d1*|V1| = " + std::to_string(d1 * n1) +
                     " != d2*|V2| = " + std::to_string(d2 * n2));
  }
  const auto f = detail::run_factor_flow(g, d1, d2);
  if (f.value != f.demand) return std::nullopt;
  MultiGraph out = MultiGraph::with_vertices(g.labels());
  for (const auto& [e, copies] : f.used) {
    out.add_edge(e.first, e.second, static_cast<std::uint64_t>(copies));
  }
  std::vector<Side> sides;
  sides.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) sides.push_back(g.side(v));
  out.set_partition(sides);
  return out;
}

// True when h is contained in g as an edge multiset (labels matched).
inline bool is_subgraph(const MultiGraph& h, const MultiGraph& g) {
  for (const auto& [e, m] : h.edges()) {
    const auto& a = h.label(e.first);
    const auto& b = h.label(e.second);
    if (!g.has_vertex(a) || !g.has_vertex(b)) return false;
    if (g.multiplicity(g.id_of(a), g.id_of(b)) < m) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Class layers of graphs on W_l

// Splits a graph on W_l (word labels) into 2n bipartite layers, layer i
// between S_i (first letter a_i) and W_l \ S_i, all on the full vertex set.
// An edge {v, w} of multiplicity m between classes i(v) != i(w) hands its
// copies alternately to the two layers; the first copy goes to layer i(v) when
// id(v) + id(w) is even and to layer i(w) otherwise (v < w). Same-class edges
// belong to no layer and are counted in `unassigned`.
struct ClassLayers {
  std::vector<MultiGraph> layers;
  std::uint64_t unassigned = 0;
};

inline ClassLayers red_class_layers(const MultiGraph& g, std::uint32_t n, std::uint32_t l) {
  const std::size_t m = g.vertex_count();
  std::vector<std::uint32_t> cls(m);
  for (VertexId v = 0; v < m; ++v) {
    const Word w = parse_label(g.label(v));
    if (w.size() != l || w.max_generator() > n || !w.is_freely_reduced()) {
      throw InputError("vertex '" + g.label(v) + "' is not a reduced word of length " +
                       std::to_string(l) + " over " + std::to_string(n) + " generators");
    }
    cls[v] = class_index(w, n);
  }
  ClassLayers out;
  out.layers.reserve(2 * n);
  for (std::uint32_t i = 1; i <= 2 * n; ++i) {
    MultiGraph layer = MultiGraph::with_vertices(g.labels());
    std::vector<Side> sides(m);
    for (VertexId v = 0; v < m; ++v) sides[v] = cls[v] == i ? Side::kFirst : Side::kSecond;
    layer.set_partition(sides);
    out.layers.push_back(std::move(layer));
  }
  for (const auto& [e, mult] : g.edges()) {
    const auto [v, w] = e;
    if (cls[v] == cls[w]) {
      out.unassigned += mult;
      continue;
    }
    std::uint32_t first = (v + w) % 2 == 0 ? cls[v] : cls[w];
    std::uint32_t second = first == cls[v] ? cls[w] : cls[v];
    for (std::uint64_t c = 0; c < mult; ++c) {
      out.layers[(c % 2 == 0 ? first : second) - 1].add_edge(v, w);
    }
  }
  return out;
}

// Union of (target_d1, target_d2)-regular factors of the 2n class layers of a
// graph on W_l, or nullopt when some layer has no such factor. With
// target_d1 = (2n-1) target_d2 every vertex of the union has degree
// 2 target_d1.
inline std::optional<MultiGraph> extract_red_regular_union(const MultiGraph& g, std::uint32_t n,
                                                           std::uint32_t l,
                                                           std::uint64_t target_d1,
                                                           std::uint64_t target_d2) {
  auto layers = red_class_layers(g, n, l);
  MultiGraph out = MultiGraph::with_vertices(g.labels());
  for (const auto& layer : layers.layers) {
    auto factor = extract_regular_subgraph(layer, target_d1, target_d2);
    if (!factor) return std::nullopt;
    for (const auto& [e, m] : factor->edges()) out.add_edge(e.first, e.second, m);
  }
  return out;
}

}  // namespace spectral_t
