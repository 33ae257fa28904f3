#pragma once

// Link graphs Delta_k of finite presentations and their three-way split.
//
// Each length-k relator r = r_x r_y r_z contributes the edges
//   (r_x, r_z^-1), (r_y, r_x^-1), (r_z, r_y^-1)
// on a vertex set of short reduced words fixed by k mod 3:
//   k = 0: W_{k/3}
//   k = 1: W_{(k-1)/3} + W_{(k+2)/3}
//   k = 2: W_{(k-2)/3} + W_{(k+1)/3}
// Vertex sets are always the full word sets, isolated vertices included.

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_t/multigraph.hpp"
#include "spectral_t/words.hpp"

namespace spectral_t {

struct Presentation {
  std::uint32_t n = 0;
  std::vector<Word> relators;
  std::optional<std::uint32_t> k;

  // Throws InputError unless every relator is a cyclically reduced word over
  // n generators (and of length k when k is set).
  void validate() const {
    if (n < 1) throw InputError("presentation needs n >= 1");
    for (std::size_t i = 0; i < relators.size(); ++i) {
      const Word& r = relators[i];
      const std::string where = "relator " + std::to_string(i + 1) + " (" + to_string(r) + ")";
      if (r.max_generator() > n) throw InputError(where + " uses a generator above n");
      if (!r.is_freely_reduced()) throw InputError(where + " is not freely reduced");
      if (!is_cyclically_reduced(r)) throw InputError(where + " is not cyclically reduced");
      if (k && r.size() != *k) throw InputError(where + " has length != k");
    }
  }
};

// Presentation file: "n <int>", optional "k <int>", then one relator per line.
// '#' starts a comment.
inline Presentation parse_presentation(std::istream& is) {
  Presentation p;
  bool have_n = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto read_int = [&](const char* what) {
      long long v = 0;
      std::string rest;
      if (!(ls >> v) || (ls >> rest) || v < 1) {
        throw InputError("line " + std::to_string(lineno) + ": expected '" + what +
                         " <positive int>'");
      }
      return static_cast<std::uint32_t>(v);
    };
    if (!have_n) {
      if (head != "n") throw InputError("line " + std::to_string(lineno) + ": first record must be 'n <int>'");
      p.n = read_int("n");
      have_n = true;
      continue;
    }
    if (head == "k" && p.relators.empty() && !p.k) {
      p.k = read_int("k");
      continue;
    }
    try {
      p.relators.push_back(parse_word(line));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_n) throw InputError("presentation file has no 'n <int>' line");
  p.validate();
  return p;
}

inline Presentation parse_presentation_string(const std::string& text) {
  std::istringstream is(text);
  return parse_presentation(is);
}

inline void write_presentation(std::ostream& os, const Presentation& p) {
  os << "n " << p.n << '\n';
  if (p.k) os << "k " << *p.k << '\n';
  for (const auto& r : p.relators) os << to_string(r) << '\n';
}

inline std::string dump_presentation(const Presentation& p) {
  std::ostringstream os;
  write_presentation(os, p);
  return os.str();
}

// ---------------------------------------------------------------------------

// Word lengths (l_k, L_k): r_x, r_y have length l_k and r_z has length L_k.
struct DeltaShape {
  std::uint32_t k = 0;
  std::uint32_t residue = 0;  // k mod 3
  std::uint32_t l = 0;        // l_k
  std::uint32_t L = 0;        // L_k
  // Lengths of the vertex blocks in vertex order.
  std::vector<std::uint32_t> block_lengths;

  static DeltaShape of(std::uint32_t k) {
    if (k < 3) throw InputError("Delta_k requires k >= 3");
    DeltaShape s;
    s.k = k;
    s.residue = k % 3;
    switch (s.residue) {
      case 0:
        s.l = s.L = k / 3;
        s.block_lengths = {k / 3};
        break;
      case 1:
        s.l = (k - 1) / 3;
        s.L = (k + 2) / 3;
        s.block_lengths = {(k - 1) / 3, (k + 2) / 3};
        break;
      default:
        s.l = (k + 1) / 3;
        s.L = (k - 2) / 3;
        s.block_lengths = {(k - 2) / 3, (k + 1) / 3};
        break;
    }
    return s;
  }
};

namespace detail {

// Vertex indexing over concatenated W_l blocks via word_rank.
class WordBlocks {
 public:
  WordBlocks(std::uint32_t n, std::vector<std::uint32_t> lengths, std::uint64_t cap)
      : n_(n), lengths_(std::move(lengths)) {
    std::uint64_t total = 0;
    for (auto l : lengths_) {
      offsets_.push_back(total);
      total += reduced_word_count(n, l);
    }
    if (total > cap) {
      throw ResourceError("vertex set of " + std::to_string(total) +
                          " words exceeds enumeration cap " + std::to_string(cap));
    }
    total_ = total;
  }

  std::uint64_t size() const noexcept { return total_; }

  VertexId id(const Word& w) const {
    for (std::size_t b = 0; b < lengths_.size(); ++b) {
      if (w.size() == lengths_[b]) return static_cast<VertexId>(offsets_[b] + word_rank(w, n_));
    }
    throw InputError("word length not in vertex set: " + to_string(w));
  }

  // Empty graph with labels in block order.
  MultiGraph make_graph() const {
    MultiGraph g;
    for (auto l : lengths_) {
      const auto count = reduced_word_count(n_, l);
      for (std::uint64_t r = 0; r < count; ++r) g.add_vertex(to_label(word_unrank(r, n_, l)));
    }
    return g;
  }

  std::size_t block_of(VertexId v) const {
    for (std::size_t b = offsets_.size(); b-- > 0;) {
      if (v >= offsets_[b]) return b;
    }
    return 0;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> lengths_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t total_ = 0;
};

}  // namespace detail

inline std::size_t count_relators_of_length(const Presentation& p, std::size_t k) {
  std::size_t c = 0;
  for (const auto& r : p.relators) c += r.size() == k ? 1 : 0;
  return c;
}

// Relators of length != k are ignored.
inline MultiGraph build_delta_k(const Presentation& p, std::uint32_t k,
                                std::uint64_t cap = limits::kDefaultEnumerationCap) {
  const auto shape = DeltaShape::of(k);
  const detail::WordBlocks blocks(p.n, shape.block_lengths, cap);
  MultiGraph g = blocks.make_graph();
  for (const auto& r : p.relators) {
    if (r.size() != k) continue;
    const auto pc = split_relator(r, k);
    g.add_edge(blocks.id(pc.x), blocks.id(invert(pc.z)));
    g.add_edge(blocks.id(pc.y), blocks.id(invert(pc.x)));
    g.add_edge(blocks.id(pc.z), blocks.id(invert(pc.y)));
  }
  return g;
}

// Every relator must have length 3.
inline MultiGraph build_delta3(const Presentation& p) {
  for (const auto& r : p.relators) {
    if (r.size() != 3) {
      throw InputError("build_delta3: relator '" + to_string(r) + "' has length " +
                       std::to_string(r.size()));
    }
  }
  return build_delta_k(p, 3);
}

struct SigmaDecomposition {
  std::array<MultiGraph, 3> sigma;
  std::uint32_t residue = 0;
  std::uint32_t l_k = 0;
  std::uint32_t L_k = 0;
  std::size_t used_relators = 0;
  std::size_t ignored_relators = 0;
};

// Sigma_1 gets (r_x, r_z^-1), Sigma_2 gets (r_y, r_x^-1), Sigma_3 gets
// (r_z, r_y^-1). For k != 0 mod 3, Sigma_1 and Sigma_3 live on the full Delta_k
// vertex set with partition (W_{l_k} | W_{L_k}) and Sigma_2 lives on W_{l_k}.
inline SigmaDecomposition sigma_decomposition(const Presentation& p, std::uint32_t k,
                                              std::uint64_t cap = limits::kDefaultEnumerationCap) {
  const auto shape = DeltaShape::of(k);
  SigmaDecomposition out;
  out.residue = shape.residue;
  out.l_k = shape.l;
  out.L_k = shape.L;

  const detail::WordBlocks full(p.n, shape.block_lengths, cap);
  const detail::WordBlocks inner(p.n, {shape.l}, cap);

  out.sigma[0] = full.make_graph();
  out.sigma[2] = full.make_graph();
  out.sigma[1] = shape.residue == 0 ? full.make_graph() : inner.make_graph();

  if (shape.residue != 0) {
    std::vector<Side> sides(full.size());
    for (VertexId v = 0; v < sides.size(); ++v) {
      const auto len = shape.block_lengths[full.block_of(v)];
      sides[v] = len == shape.l ? Side::kFirst : Side::kSecond;
    }
    out.sigma[0].set_partition(sides);
    out.sigma[2].set_partition(sides);
  }
  const auto& s2_blocks = shape.residue == 0 ? full : inner;

  for (const auto& r : p.relators) {
    if (r.size() != k) {
      ++out.ignored_relators;
      continue;
    }
    ++out.used_relators;
    const auto pc = split_relator(r, k);
    out.sigma[0].add_edge(full.id(pc.x), full.id(invert(pc.z)));
    out.sigma[1].add_edge(s2_blocks.id(pc.y), s2_blocks.id(invert(pc.x)));
    out.sigma[2].add_edge(full.id(pc.z), full.id(invert(pc.y)));
  }
  return out;
}

struct DoubleEdgeAudit {
  std::uint64_t max_multiplicity = 0;
  std::uint64_t double_edge_count = 0;  // vertex pairs with multiplicity >= 2
  bool doubles_form_matching = true;
  std::uint64_t max_doubles_per_vertex = 0;
  std::uint64_t bound_m = 0;
  bool within_bound = true;  // max_doubles_per_vertex <= bound_m
};

inline DoubleEdgeAudit double_edge_audit(const MultiGraph& s, std::uint64_t bound_m = 3) {
  DoubleEdgeAudit a;
  a.bound_m = bound_m;
  std::vector<std::uint64_t> doubles(s.vertex_count(), 0);
  for (const auto& [e, m] : s.edges()) {
    a.max_multiplicity = std::max(a.max_multiplicity, m);
    if (m < 2) continue;
    ++a.double_edge_count;
    ++doubles[e.first];
    if (e.second != e.first) ++doubles[e.second];
  }
  for (auto d : doubles) {
    a.max_doubles_per_vertex = std::max(a.max_doubles_per_vertex, d);
  }
  // A loop double edge still occupies its vertex once; two doubles at one
  // vertex break the matching.
  a.doubles_form_matching = a.max_doubles_per_vertex <= 1;
  a.within_bound = a.max_doubles_per_vertex <= bound_m;
  return a;
}

}  // namespace spectral_t
