#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spectral_t/spectral_t.hpp"

namespace spectral_t::testing {

inline Word W(const std::string& text) { return parse_word(text); }

inline Presentation P(std::uint32_t n, const std::vector<std::string>& relators) {
  Presentation p;
  p.n = n;
  for (const auto& r : relators) p.relators.push_back(parse_word(r));
  return p;
}

inline MultiGraph complete_graph(std::size_t m) {
  auto g = MultiGraph::numbered(m);
  for (VertexId i = 0; i < m; ++i)
    for (VertexId j = i + 1; j < m; ++j) g.add_edge(i, j);
  return g;
}

inline MultiGraph cycle_graph(std::size_t m) {
  auto g = MultiGraph::numbered(m);
  for (VertexId i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  return g;
}

// Complete bipartite graph u0.. | v0.. with partition.
inline MultiGraph complete_bipartite(std::size_t m1, std::size_t m2) {
  MultiGraph g;
  std::vector<Side> sides;
  for (std::size_t i = 0; i < m1; ++i) { g.add_vertex("u" + std::to_string(i)); sides.push_back(Side::kFirst); }
  for (std::size_t j = 0; j < m2; ++j) { g.add_vertex("v" + std::to_string(j)); sides.push_back(Side::kSecond); }
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = 0; j < m2; ++j) g.add_edge(i, m1 + j);
  g.set_partition(sides);
  return g;
}

// Independent oracle: all code sequences in [1, 2n]^l, filtered.
inline std::vector<std::vector<std::uint32_t>> brute_force_codes(std::uint32_t n, std::uint32_t l,
                                                                  bool cyclic) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> c(l, 1);
  auto inverse = [n](std::uint32_t a, std::uint32_t b) { return a + n == b || b + n == a; };
  while (true) {
    bool ok = true;
    for (std::uint32_t i = 1; i < l; ++i) ok = ok && !inverse(c[i - 1], c[i]);
    if (cyclic && l >= 2) ok = ok && !inverse(c[0], c[l - 1]);
    if (ok) out.push_back(c);
    std::int64_t pos = static_cast<std::int64_t>(l) - 1;
    while (pos >= 0 && c[pos] == 2 * n) c[pos--] = 1;
    if (pos < 0) break;
    ++c[pos];
  }
  return out;
}

inline std::vector<std::uint32_t> codes_of(const Word& w, std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (auto l : w) out.push_back(l.code(n));
  return out;
}

}  // namespace spectral_t::testing

namespace spectral_t::testing {

// Cyclic Jacobi rotations; independent of the library eigensolver.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const Eigen::Index m = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26) break;
    for (Eigen::Index p = 0; p < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m; ++i) out.push_back(a(i, i));
  std::sort(out.begin(), out.end());
  return out;
}

// Normalized Laplacian built entrywise from the definition.
inline Matrix laplacian_by_definition(const MultiGraph& g) {
  const auto m = static_cast<Eigen::Index>(g.vertex_count());
  const auto deg = g.degrees();
  Matrix l = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double mu = static_cast<double>(g.multiplicity(static_cast<VertexId>(i), static_cast<VertexId>(j)));
      l(i, j) = (i == j ? 1.0 : 0.0) -
                mu / std::sqrt(static_cast<double>(deg[static_cast<std::size_t>(i)]) *
                               static_cast<double>(deg[static_cast<std::size_t>(j)]));
    }
  }
  return l;
}

}  // namespace spectral_t::testing
