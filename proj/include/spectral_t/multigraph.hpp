#pragma once

// Undirected multigraphs with edge multiplicities, loops and an optional
// bipartition tag.
//
// Degree convention: deg(v) = sum_w mu({v,w}). A loop {v,v} of multiplicity m
// adds m to deg(v), not 2m, so adjacency row sums equal degrees.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectral_t/error.hpp"

namespace spectral_t {

using VertexId = std::size_t;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class Side : std::uint8_t { kFirst = 0, kSecond = 1 };

struct DegreeProfile {
  std::vector<std::uint64_t> degrees;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
};

class MultiGraph {
 public:
  using EdgeKey = std::pair<VertexId, VertexId>;  // first <= second
  using EdgeMap = std::map<EdgeKey, std::uint64_t>;

  MultiGraph() = default;

  // Graph on labels[0..m) with no edges.
  static MultiGraph with_vertices(const std::vector<std::string>& labels) {
    MultiGraph g;
    for (const auto& l : labels) g.add_vertex(l);
    return g;
  }

  // Graph on vertices "0".."m-1".
  static MultiGraph numbered(std::size_t m) {
    MultiGraph g;
    for (std::size_t i = 0; i < m; ++i) g.add_vertex(std::to_string(i));
    return g;
  }

  // Returns the existing id when the label is already present.
  VertexId add_vertex(const std::string& label) {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    if (label.empty() || label.find_first_of(" \t\n") != std::string::npos) {
      throw InputError("vertex label must be non-empty and whitespace-free: '" + label + "'");
    }
    const VertexId id = labels_.size();
    labels_.push_back(label);
    index_.emplace(label, id);
    if (side_) side_->push_back(std::nullopt);
    return id;
  }

  void add_edge(VertexId u, VertexId v, std::uint64_t mult = 1) {
    if (u >= labels_.size() || v >= labels_.size()) {
      throw InputError("edge endpoint out of range");
    }
    if (mult == 0) return;
    if (u > v) std::swap(u, v);
    edges_[{u, v}] += mult;
  }

  void add_edge(const std::string& a, const std::string& b, std::uint64_t mult = 1) {
    add_edge(id_of(a), id_of(b), mult);
  }

  // Attach a bipartition. Every vertex must be tagged and every edge must cross.
  void set_partition(const std::vector<Side>& sides) {
    if (sides.size() != labels_.size()) throw InputError("partition size mismatch");
    std::vector<std::optional<Side>> tagged(sides.begin(), sides.end());
    for (const auto& [e, m] : edges_) {
      if (sides[e.first] == sides[e.second]) {
        throw InputError("edge {" + labels_[e.first] + ", " + labels_[e.second] +
                         "} does not cross the partition");
      }
    }
    side_ = std::move(tagged);
  }
  void clear_partition() { side_.reset(); }

  bool has_partition() const noexcept { return side_.has_value(); }
  Side side(VertexId v) const {
    if (!side_ || !(*side_)[v]) throw InputError("vertex has no partition side");
    return *(*side_)[v];
  }
  std::vector<VertexId> part(Side s) const {
    std::vector<VertexId> out;
    if (!side_) return out;
    for (VertexId v = 0; v < labels_.size(); ++v) {
      if ((*side_)[v] == s) out.push_back(v);
    }
    return out;
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  // Number of distinct vertex pairs carrying at least one edge.
  std::size_t distinct_edge_count() const noexcept { return edges_.size(); }
  // Sum of multiplicities.
  std::uint64_t edge_count() const noexcept {
    std::uint64_t s = 0;
    for (const auto& [e, m] : edges_) s += m;
    return s;
  }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_vertex(const std::string& label) const { return index_.contains(label); }
  VertexId id_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown vertex '" + label + "'");
    return it->second;
  }

  const EdgeMap& edges() const noexcept { return edges_; }

  std::uint64_t multiplicity(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    auto it = edges_.find({u, v});
    return it == edges_.end() ? 0 : it->second;
  }

  std::uint64_t loop_count() const {
    std::uint64_t s = 0;
    for (const auto& [e, m] : edges_) {
      if (e.first == e.second) s += m;
    }
    return s;
  }

  std::vector<std::uint64_t> degrees() const {
    std::vector<std::uint64_t> d(labels_.size(), 0);
    for (const auto& [e, m] : edges_) {
      d[e.first] += m;
      if (e.first != e.second) d[e.second] += m;
    }
    return d;
  }

  // Neighbour lists with multiplicities, loops included once.
  std::vector<std::vector<std::pair<VertexId, std::uint64_t>>> adjacency_lists() const {
    std::vector<std::vector<std::pair<VertexId, std::uint64_t>>> adj(labels_.size());
    for (const auto& [e, m] : edges_) {
      adj[e.first].emplace_back(e.second, m);
      if (e.first != e.second) adj[e.second].emplace_back(e.first, m);
    }
    return adj;
  }

  const std::optional<std::vector<std::optional<Side>>>& raw_partition() const noexcept {
    return side_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  EdgeMap edges_;
  std::optional<std::vector<std::optional<Side>>> side_;
};

inline DegreeProfile degree_profile(const MultiGraph& g) {
  DegreeProfile p;
  p.degrees = g.degrees();
  if (p.degrees.empty()) return p;
  auto [lo, hi] = std::minmax_element(p.degrees.begin(), p.degrees.end());
  p.min = *lo;
  p.max = *hi;
  double s = 0;
  for (auto d : p.degrees) s += static_cast<double>(d);
  p.mean = s / static_cast<double>(p.degrees.size());
  return p;
}

inline IntMatrix adjacency_matrix(const MultiGraph& g) {
  const auto m = static_cast<Eigen::Index>(g.vertex_count());
  IntMatrix a = IntMatrix::Zero(m, m);
  for (const auto& [e, mult] : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.first);
    const auto j = static_cast<Eigen::Index>(e.second);
    a(i, j) += static_cast<std::int64_t>(mult);
    if (i != j) a(j, i) += static_cast<std::int64_t>(mult);
  }
  return a;
}

// Edge-multiset sum over the union of vertex labels. Vertex order: g's
// vertices, then h's new ones. A partition survives when the two inputs are
// compatible with it (see below); conflicting tags on a shared vertex throw.
inline MultiGraph graph_union(const MultiGraph& g, const MultiGraph& h) {
  MultiGraph out;
  for (const auto& l : g.labels()) out.add_vertex(l);
  for (const auto& l : h.labels()) out.add_vertex(l);

  for (const auto& [e, m] : g.edges()) out.add_edge(e.first, e.second, m);
  for (const auto& [e, m] : h.edges()) {
    out.add_edge(out.id_of(h.label(e.first)), out.id_of(h.label(e.second)), m);
  }

  // Merge side tags by label.
  std::vector<std::optional<Side>> sides(out.vertex_count());
  auto absorb = [&](const MultiGraph& src) {
    if (!src.has_partition()) return;
    const auto& raw = *src.raw_partition();
    for (VertexId v = 0; v < src.vertex_count(); ++v) {
      if (!raw[v]) continue;
      auto& slot = sides[out.id_of(src.label(v))];
      if (slot && *slot != *raw[v]) {
        throw InputError("union: conflicting partition tags on vertex '" + src.label(v) + "'");
      }
      slot = raw[v];
    }
  };
  absorb(g);
  absorb(h);

  if (g.has_partition() || h.has_partition()) {
    bool complete = std::all_of(sides.begin(), sides.end(), [](auto s) { return s.has_value(); });
    bool crossing = complete;
    if (complete) {
      for (const auto& [e, m] : out.edges()) {
        if (*sides[e.first] == *sides[e.second]) {
          crossing = false;
          break;
        }
      }
    }
    if (crossing) {
      std::vector<Side> flat;
      flat.reserve(sides.size());
      for (auto s : sides) flat.push_back(*s);
      out.set_partition(flat);
    }
  }
  return out;
}

inline MultiGraph collapse_multi_edges(const MultiGraph& g) {
  MultiGraph out = MultiGraph::with_vertices(g.labels());
  for (const auto& [e, m] : g.edges()) out.add_edge(e.first, e.second, 1);
  if (g.has_partition()) {
    std::vector<Side> flat;
    for (VertexId v = 0; v < g.vertex_count(); ++v) flat.push_back(g.side(v));
    out.set_partition(flat);
  }
  return out;
}

// Union-find component count.
inline std::size_t component_count(const MultiGraph& g) {
  std::vector<VertexId> parent(g.vertex_count());
  for (VertexId v = 0; v < parent.size(); ++v) parent[v] = v;
  auto find = [&](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::size_t comps = parent.size();
  for (const auto& [e, m] : g.edges()) {
    auto a = find(e.first), b = find(e.second);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

// Same vertex labels and same edge multiset; vertex order may differ.
inline bool same_edge_multiset(const MultiGraph& a, const MultiGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  std::map<std::pair<std::string, std::string>, std::uint64_t> ea, eb;
  auto collect = [](const MultiGraph& g, auto& out) {
    for (const auto& [e, m] : g.edges()) {
      auto x = g.label(e.first), y = g.label(e.second);
      if (y < x) std::swap(x, y);
      out[{x, y}] += m;
    }
  };
  for (const auto& l : a.labels()) {
    if (!b.has_vertex(l)) return false;
  }
  collect(a, ea);
  collect(b, eb);
  return ea == eb;
}

// Dump format: "v <label>" per vertex in id order, then
// "e <label1> <label2> <mult>" per edge in (id1, id2) order.
inline void write_graph(std::ostream& os, const MultiGraph& g) {
  for (const auto& l : g.labels()) os << "v " << l << '\n';
  for (const auto& [e, m] : g.edges()) {
    os << "e " << g.label(e.first) << ' ' << g.label(e.second) << ' ' << m << '\n';
  }
}

inline std::string dump_graph(const MultiGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline MultiGraph parse_graph(std::istream& is) {
  MultiGraph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      std::string label;
      if (!(ls >> label)) throw InputError("line " + std::to_string(lineno) + ": missing label");
      g.add_vertex(label);
    } else if (kind == "e") {
      std::string a, b;
      std::uint64_t m = 0;
      if (!(ls >> a >> b >> m) || m == 0) {
        throw InputError("line " + std::to_string(lineno) + ": expected 'e <u> <v> <mult>'");
      }
      g.add_edge(a, b, m);
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
    }
  }
  return g;
}

}  // namespace spectral_t
