#pragma once

// Normalized Laplacian spectra.
//
// L(G) = I - D^{-1/2} A D^{-1/2}, eigenvalues 0 <= lambda_0 <= ... <= 2.
// lambda_i relates to the (i+1)-th largest eigenvalue mu of D^{-1/2} A D^{-1/2}
// by lambda_i = 1 - mu_{i+1}.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_t/error.hpp"
#include "spectral_t/multigraph.hpp"

namespace spectral_t {

using Matrix = Eigen::MatrixXd;

inline constexpr double kSymmetryTolerance = 1e-9;
// Certification needs lambda_1 > 1/2 + kCertificationMargin.
inline constexpr double kCertificationMargin = 1e-9;

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double lambda1 = 0.0;
  bool degenerate = false;  // isolated vertex, empty graph, or disconnected
};

namespace detail {

inline void check_vertex_cap(std::size_t m) {
  const std::size_t cap = limits::max_vertices();
  if (m > cap) {
    throw ResourceError("eigensolve on " + std::to_string(m) + " vertices exceeds cap " +
                        std::to_string(cap) + " (set SPECTRAL_T_MAX_VERTICES to raise it)");
  }
}

inline std::string isolated_vertex_list(const MultiGraph& g,
                                        const std::vector<std::uint64_t>& deg) {
  std::string names;
  std::size_t shown = 0, total = 0;
  for (VertexId v = 0; v < deg.size(); ++v) {
    if (deg[v] != 0) continue;
    ++total;
    if (shown < 8) {
      names += (shown ? ", " : "") + g.label(v);
      ++shown;
    }
  }
  if (total > shown) names += ", ... (" + std::to_string(total) + " total)";
  return names;
}

}  // namespace detail

inline double max_asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

// D^{-1/2} A D^{-1/2}.
inline Matrix normalized_adjacency(const MultiGraph& g) {
  const auto deg = g.degrees();
  for (auto d : deg) {
    if (d == 0) {
      throw DegenerateError("normalized adjacency undefined; isolated vertices: " +
                            detail::isolated_vertex_list(g, deg));
    }
  }
  const auto m = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::VectorXd inv_sqrt(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(static_cast<double>(deg[static_cast<std::size_t>(i)]));
  }
  Matrix a = adjacency_matrix(g).cast<double>();
  return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

inline Matrix normalized_laplacian(const MultiGraph& g) {
  if (g.vertex_count() == 0) throw DegenerateError("normalized Laplacian of empty graph");
  Matrix lap = -normalized_adjacency(g);
  lap.diagonal().array() += 1.0;
  // Exact symmetry; the two triangles can differ by rounding in the product.
  return 0.5 * (lap + lap.transpose());
}

// Full ascending spectrum of a symmetric matrix.
inline std::vector<double> spectrum(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("spectrum: matrix is not square");
  if (m.rows() == 0) return {};
  const double asym = max_asymmetry(m);
  if (!(asym <= kSymmetryTolerance)) {
    throw InputError("spectrum: matrix not symmetric (max |M - M^T| = " + std::to_string(asym) +
                     ")");
  }
  detail::check_vertex_cap(static_cast<std::size_t>(m.rows()));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Eigenvalues sorted descending: mu_1 >= mu_2 >= ... >= mu_m.
inline std::vector<double> spectrum_descending(const Matrix& m) {
  auto s = spectrum(m);
  std::reverse(s.begin(), s.end());
  return s;
}

// Disconnected or isolated-vertex graphs get lambda_1 = 0 without a solve.
inline SpectralReport spectral_report(const MultiGraph& g) {
  SpectralReport r;
  const auto deg = g.degrees();
  const bool isolated = g.vertex_count() == 0 ||
                        std::any_of(deg.begin(), deg.end(), [](auto d) { return d == 0; });
  if (isolated) {
    r.degenerate = true;
    return r;
  }
  r.eigenvalues = spectrum(normalized_laplacian(g));
  if (component_count(g) >= 2) {
    r.degenerate = true;
    r.lambda1 = 0.0;
  } else {
    r.lambda1 = r.eigenvalues.size() >= 2 ? r.eigenvalues[1] : 0.0;
  }
  return r;
}

inline double lambda1(const MultiGraph& g) {
  if (g.vertex_count() < 2) throw DegenerateError("lambda1 needs at least 2 vertices");
  detail::check_vertex_cap(g.vertex_count());
  const auto deg = g.degrees();
  if (std::any_of(deg.begin(), deg.end(), [](auto d) { return d == 0; })) return 0.0;
  if (component_count(g) >= 2) return 0.0;
  return spectrum(normalized_laplacian(g))[1];
}

// 1 - lambda_i: the (i+1)-th largest eigenvalue of D^{-1/2} A D^{-1/2}.
inline double mu_from_lambda(const SpectralReport& report, std::size_t i) {
  if (i >= report.eigenvalues.size()) {
    throw InputError("mu_from_lambda: index " + std::to_string(i) + " out of range [0, " +
                     std::to_string(report.eigenvalues.size()) + ")");
  }
  return 1.0 - report.eigenvalues[i];
}

// Largest violation of Weyl's inequalities
//   mu_i(A) + mu_m(B) <= mu_i(A+B) <= mu_i(A) + mu_1(B)
// (positive means violated).
inline double weyl_violation(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("weyl_check: dimension mismatch");
  }
  const auto ma = spectrum_descending(a);
  const auto mb = spectrum_descending(b);
  const auto ms = spectrum_descending(a + b);
  double worst = -INFINITY;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    worst = std::max(worst, (ma[i] + mb.back()) - ms[i]);
    worst = std::max(worst, ms[i] - (ma[i] + mb.front()));
  }
  return worst;
}

inline bool weyl_check(const Matrix& a, const Matrix& b) {
  return weyl_violation(a, b) <= 1e-9;
}

// Upper bound on max |mu_i(A(G))|: the maximum degree, or for a partitioned
// graph sqrt(max deg on V1 * max deg on V2).
inline double adjacency_spectral_bound(const MultiGraph& g) {
  const auto deg = g.degrees();
  if (deg.empty()) return 0.0;
  if (!g.has_partition()) {
    return static_cast<double>(*std::max_element(deg.begin(), deg.end()));
  }
  std::uint64_t max1 = 0, max2 = 0;
  for (VertexId v = 0; v < deg.size(); ++v) {
    auto& slot = g.side(v) == Side::kFirst ? max1 : max2;
    slot = std::max(slot, deg[v]);
  }
  return std::sqrt(static_cast<double>(max1) * static_cast<double>(max2));
}

inline double spectral_radius(const Matrix& m) {
  const auto s = spectrum(m);
  if (s.empty()) return 0.0;
  return std::max(std::abs(s.front()), std::abs(s.back()));
}

}  // namespace spectral_t
