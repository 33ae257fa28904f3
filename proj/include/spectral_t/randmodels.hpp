#pragma once

// Seeded samplers for the random graph and random group models.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spectral_t/delta.hpp"
#include "spectral_t/multigraph.hpp"
#include "spectral_t/rng.hpp"
#include "spectral_t/words.hpp"

namespace spectral_t {

// ---------------------------------------------------------------------------
// Erdos-Renyi

// Simple graph on "0".."m-1"; each pair {i, j}, i < j, with probability p.
inline MultiGraph sample_gnp(std::size_t m, double p, Seed seed) {
  if (m < 1) throw InputError("sample_gnp requires m >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  Rng rng(seed);
  MultiGraph g = MultiGraph::numbered(m);
  for (VertexId i = 0; i < m; ++i) {
    for (VertexId j = i + 1; j < m; ++j) {
      if (rng.bernoulli(p)) g.add_edge(i, j);
    }
  }
  return g;
}

// Vertices "u0".."u{m1-1}" (side 1) and "v0".."v{m2-1}" (side 2).
inline MultiGraph sample_bipartite_gnp(std::size_t m1, std::size_t m2, double p, Seed seed) {
  if (m1 < 1 || m2 < 1) throw InputError("sample_bipartite_gnp requires m1, m2 >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  Rng rng(seed);
  MultiGraph g;
  std::vector<Side> sides;
  for (std::size_t i = 0; i < m1; ++i) {
    g.add_vertex("u" + std::to_string(i));
    sides.push_back(Side::kFirst);
  }
  for (std::size_t j = 0; j < m2; ++j) {
    g.add_vertex("v" + std::to_string(j));
    sides.push_back(Side::kSecond);
  }
  g.set_partition(sides);
  for (VertexId i = 0; i < m1; ++i) {
    for (VertexId j = 0; j < m2; ++j) {
      if (rng.bernoulli(p)) g.add_edge(i, m1 + j);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reduced random graphs

namespace detail {

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
}

inline MultiGraph word_block_graph(std::uint32_t n, const std::vector<std::uint32_t>& lengths,
                                   std::uint64_t cap) {
  return WordBlocks(n, lengths, cap).make_graph();
}

// Words of W_l sharing a first letter are contiguous in canonical order.
inline std::uint32_t class_of_rank(std::uint64_t rank, std::uint32_t n, std::uint32_t l) {
  return static_cast<std::uint32_t>(rank / detail::checked_pow(2ULL * n - 1, l - 1)) + 1;
}

}  // namespace detail

// Red(n, l, p) on W_l. For each unordered pair {v, w} of different classes
// (first letters), two independent Bernoulli(p) draws, one per direction;
// each success adds 1 to the multiplicity. Same-class pairs never connect.
inline MultiGraph sample_red(std::uint32_t n, std::uint32_t l, double p, Seed seed,
                             std::uint64_t cap = limits::kDefaultEnumerationCap) {
  if (n < 1 || l < 1) throw InputError("sample_red requires n >= 1, l >= 1");
  detail::check_probability(p);
  MultiGraph g = detail::word_block_graph(n, {l}, cap);
  Rng rng(seed);
  const std::size_t m = g.vertex_count();
  for (VertexId v = 0; v < m; ++v) {
    const auto cv = detail::class_of_rank(v, n, l);
    for (VertexId w = v + 1; w < m; ++w) {
      if (detail::class_of_rank(w, n, l) == cv) continue;
      const std::uint64_t mult = (rng.bernoulli(p) ? 1 : 0) + (rng.bernoulli(p) ? 1 : 0);
      g.add_edge(v, w, mult);
    }
  }
  return g;
}

// w in T'_i for i = class_index(v): w is the inverse of a word ending in
// a_i^-1, i.e. w starts with the same letter as v.
inline bool bred_forbidden(const Word& v, const Word& w) {
  return !v.empty() && !w.empty() && v.front() == w.front();
}

struct BredOptions {
  bool allow_short = false;  // permit l < 3
  std::uint64_t cap = limits::kDefaultEnumerationCap;
};

namespace detail {

inline void check_bred_args(std::uint32_t n, std::uint32_t l, const BredOptions& opt) {
  if (n < 1 || l < 1) throw InputError("BRed requires n >= 1, l >= 1");
  if (l < 3 && !opt.allow_short) {
    throw InputError("BRed is defined for l >= 3 (pass allow_short to override)");
  }
}

// V1 = W_l then V2 = W_{l+1}, partitioned.
inline MultiGraph bred_vertex_graph(std::uint32_t n, std::uint32_t l, std::uint64_t cap) {
  MultiGraph g = word_block_graph(n, {l, l + 1}, cap);
  const auto m1 = reduced_word_count(n, l);
  std::vector<Side> sides(g.vertex_count(), Side::kSecond);
  std::fill(sides.begin(), sides.begin() + static_cast<std::ptrdiff_t>(m1), Side::kFirst);
  g.set_partition(sides);
  return g;
}

}  // namespace detail

// BRed(n, l, p): V1 = W_l, V2 = W_{l+1}; each pair (v, w) outside the
// forbidden blocks S'_i x T'_i is an edge with probability p.
inline MultiGraph sample_bred(std::uint32_t n, std::uint32_t l, double p, Seed seed,
                              const BredOptions& opt = {}) {
  detail::check_bred_args(n, l, opt);
  detail::check_probability(p);
  MultiGraph g = detail::bred_vertex_graph(n, l, opt.cap);
  const auto m1 = reduced_word_count(n, l);
  const auto m2 = reduced_word_count(n, l + 1);
  Rng rng(seed);
  for (std::uint64_t v = 0; v < m1; ++v) {
    const auto cv = detail::class_of_rank(v, n, l);
    for (std::uint64_t w = 0; w < m2; ++w) {
      if (detail::class_of_rank(w, n, l + 1) == cv) continue;
      if (rng.bernoulli(p)) g.add_edge(v, m1 + w);
    }
  }
  return g;
}

struct CoupledGraphs {
  MultiGraph g;        // the reduced model sample
  MultiGraph g_prime;  // its Erdos-Renyi extension, containing collapse(g)
};

// G ~ Red(n, l, p) together with G' ~ G(|W_l|, 2p - p^2): each class S_i
// receives a fresh within-class graph with edge probability 2p - p^2, and
// G' = collapse(G u sum_i Sigma_i).
inline CoupledGraphs coupled_red_extension(std::uint32_t n, std::uint32_t l, double p, Seed seed,
                                           std::uint64_t cap = limits::kDefaultEnumerationCap) {
  CoupledGraphs out;
  out.g = sample_red(n, l, p, seed, cap);
  // Independent stream for the within-class fill.
  Rng rng(Seed{seed.seed ^ 0x5bd1e9955bd1e995ULL, seed.stream});
  const double q = 2.0 * p - p * p;
  MultiGraph fill = MultiGraph::with_vertices(out.g.labels());
  const std::size_t m = out.g.vertex_count();
  for (VertexId v = 0; v < m; ++v) {
    const auto cv = detail::class_of_rank(v, n, l);
    for (VertexId w = v + 1; w < m; ++w) {
      if (detail::class_of_rank(w, n, l) != cv) continue;
      if (rng.bernoulli(q)) fill.add_edge(v, w);
    }
  }
  out.g_prime = collapse_multi_edges(graph_union(out.g, fill));
  return out;
}

// G ~ BRed(n, l, p) together with G' ~ G(|W_l|, |W_{l+1}|, p): the forbidden
// blocks S'_i x T'_i are filled with fresh Bernoulli(p) edges.
inline CoupledGraphs coupled_bred_extension(std::uint32_t n, std::uint32_t l, double p, Seed seed,
                                            const BredOptions& opt = {}) {
  CoupledGraphs out;
  out.g = sample_bred(n, l, p, seed, opt);
  Rng rng(Seed{seed.seed ^ 0x5bd1e9955bd1e995ULL, seed.stream});
  const auto m1 = reduced_word_count(n, l);
  const auto m2 = reduced_word_count(n, l + 1);
  out.g_prime = out.g;
  for (std::uint64_t v = 0; v < m1; ++v) {
    const auto cv = detail::class_of_rank(v, n, l);
    for (std::uint64_t w = 0; w < m2; ++w) {
      if (detail::class_of_rank(w, n, l + 1) != cv) continue;
      if (rng.bernoulli(p)) out.g_prime.add_edge(v, m1 + w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random presentations

// floor((2n-1)^(kd)); the 1e-9 nudge keeps exact powers such as 3^(3 * 1/3)
// from rounding down.
inline std::uint64_t strict_relator_count(std::uint32_t n, std::uint32_t k, double d) {
  const double v = std::pow(2.0 * n - 1.0, static_cast<double>(k) * d);
  return static_cast<std::uint64_t>(std::floor(v + 1e-9));
}

namespace detail {

inline Presentation subset_presentation(std::uint32_t n, std::vector<Word> universe,
                                        std::uint64_t size, Rng& rng,
                                        std::optional<std::uint32_t> k) {
  if (size > universe.size()) {
    throw InputError("requested " + std::to_string(size) + " relators but only " +
                     std::to_string(universe.size()) + " cyclically reduced words exist");
  }
  auto picked = rng.sample_indices(universe.size(), size);
  std::sort(picked.begin(), picked.end());
  Presentation p;
  p.n = n;
  p.k = k;
  p.relators.reserve(picked.size());
  for (auto i : picked) p.relators.push_back(std::move(universe[i]));
  return p;
}

inline void check_group_args(std::uint32_t n, std::uint32_t k) {
  if (n < 2) throw InputError("random group models require n >= 2");
  if (k < 3) throw InputError("random group models require k >= 3");
}

}  // namespace detail

// Gamma(n, k, d): uniform subset of C(n, k) of size floor((2n-1)^(kd)).
// Relators are listed in canonical order.
inline Presentation sample_gamma_strict(std::uint32_t n, std::uint32_t k, double d, Seed seed,
                                        std::uint64_t cap = limits::kDefaultEnumerationCap) {
  detail::check_group_args(n, k);
  if (!(d > 0.0 && d < 1.0)) throw InputError("density d must lie in (0, 1)");
  Rng rng(seed);
  return detail::subset_presentation(n, enumerate_cyclically_reduced(n, k, cap),
                                     strict_relator_count(n, k, d), rng, k);
}

// Gamma_p(n, k, p): each word of C(n, k) independently with probability p.
inline Presentation sample_gamma_p(std::uint32_t n, std::uint32_t k, double p, Seed seed,
                                   std::uint64_t cap = limits::kDefaultEnumerationCap) {
  detail::check_group_args(n, k);
  detail::check_probability(p);
  Rng rng(seed);
  Presentation out;
  out.n = n;
  out.k = k;
  for (auto& w : enumerate_cyclically_reduced(n, k, cap)) {
    if (rng.bernoulli(p)) out.relators.push_back(std::move(w));
  }
  return out;
}

struct LaxParams {
  std::uint32_t k = 0;
  double d = 0.0;
  std::uint32_t f = 0;  // half-width of the length window
};

// Uniform subset of the union of C(n, l), l in [k - f, k + f], of size
// floor((2n-1)^(kd)).
inline Presentation sample_gamma_lax(std::uint32_t n, const LaxParams& params, Seed seed,
                                     std::uint64_t cap = limits::kDefaultEnumerationCap) {
  if (n < 2) throw InputError("random group models require n >= 2");
  if (params.f >= params.k) throw InputError("lax model requires f(k) < k");
  if (params.k - params.f < 3) throw InputError("lax model requires k - f(k) >= 3");
  if (!(params.d > 0.0 && params.d < 1.0)) throw InputError("density d must lie in (0, 1)");
  std::vector<Word> universe;
  std::uint64_t scanned = 0;
  for (std::uint32_t len = params.k - params.f; len <= params.k + params.f; ++len) {
    scanned += reduced_word_count(n, len);
    if (scanned > cap) throw ResourceError("lax-model universe exceeds enumeration cap");
    auto words = enumerate_cyclically_reduced(n, len, cap);
    std::move(words.begin(), words.end(), std::back_inserter(universe));
  }
  Rng rng(seed);
  std::optional<std::uint32_t> k;
  if (params.f == 0) k = params.k;
  return detail::subset_presentation(n, std::move(universe),
                                     strict_relator_count(n, params.k, params.d), rng, k);
}

}  // namespace spectral_t
