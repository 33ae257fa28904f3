#pragma once

// Property (T) certificates from lambda_1(Delta_k) > 1/2, plus the
// Sigma-decomposition pipeline that bounds lambda_1 of a union of regular
// spanning subgraphs.
//
// Certification is one-sided: a false verdict certifies nothing.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "spectral_t/delta.hpp"
#include "spectral_t/multigraph.hpp"
#include "spectral_t/regularity.hpp"
#include "spectral_t/spectra.hpp"

namespace spectral_t {

inline constexpr double kThreshold = 0.5;

enum class CertificateMethod { kDirectDeltaK, kUnionBoundPipeline };

inline const char* method_name(CertificateMethod m) {
  return m == CertificateMethod::kDirectDeltaK ? "direct-delta-k" : "union-bound-pipeline";
}

struct Certificate {
  CertificateMethod method = CertificateMethod::kDirectDeltaK;
  std::uint32_t k = 0;
  double lambda1 = 0.0;  // direct lambda_1(Delta_k)
  std::optional<double> pipeline_bound;
  double threshold = kThreshold;
  bool certified = false;
  std::size_t vertices = 0;
  std::uint64_t edges = 0;  // sum of multiplicities
  DoubleEdgeAudit audit;
  nlohmann::ordered_json seed_info = nullptr;
  std::vector<std::string> diagnostics;
};

inline bool passes_threshold(double value, double threshold = kThreshold) {
  return value > threshold + kCertificationMargin;
}

// Frozen key order.
inline nlohmann::ordered_json to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["method"] = method_name(c.method);
  j["k"] = c.k;
  j["lambda1"] = c.lambda1;
  j["pipeline_bound"] = c.pipeline_bound ? nlohmann::ordered_json(*c.pipeline_bound) : nullptr;
  j["threshold"] = c.threshold;
  j["certified"] = c.certified;
  j["vertices"] = c.vertices;
  j["edges"] = c.edges;
  j["audit"] = {{"max_multiplicity", c.audit.max_multiplicity},
                {"doubles_form_matching", c.audit.doubles_form_matching}};
  j["seed_info"] = c.seed_info;
  return j;
}

// ---------------------------------------------------------------------------
// Union-of-three-graphs bound

struct UnionBoundInput {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;

  void validate() const {
    for (double c : {c1, c2, c3}) {
      if (!(c >= 0.0 && c < 1.0)) throw HypothesisError("union bound needs 0 <= c_i < 1");
    }
  }
};

// 1 - (sqrt(2) c1 + c2 + c3) / (2 sqrt(2)).
inline double union_bound(const UnionBoundInput& in) {
  in.validate();
  return 1.0 - (std::sqrt(2.0) * in.c1 + in.c2 + in.c3) / (2.0 * std::sqrt(2.0));
}

// c = max(0, 1 - lambda_1).
inline double eigen_deficit(double lambda) { return std::max(0.0, 1.0 - lambda); }

struct UnionBoundCheck {
  double lhs = 0.0;  // lambda_1(G1 u G2 u G3)
  double rhs = 0.0;  // the bound
  std::array<double, 3> c{};
  bool holds = false;
};

namespace detail {

inline std::vector<std::string> sorted_labels(const MultiGraph& g, std::optional<Side> side) {
  std::vector<std::string> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!side || g.side(v) == *side) out.push_back(g.label(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Hypotheses: G2, G3 bipartite with V(G1) = V1(G2) = V1(G3) and
// V2(G2) = V2(G3); G1 2d1-regular; G2, G3 (d1, d2)-regular; lambda_1(G_i) > 0.
inline UnionBoundCheck union_bound_empirical_check(const MultiGraph& g1, const MultiGraph& g2,
                                                   const MultiGraph& g3, std::uint64_t d1,
                                                   std::uint64_t d2) {
  if (!g2.has_partition() || !g3.has_partition()) {
    throw HypothesisError("hypothesis i): G2 and G3 must be bipartite");
  }
  const auto v1 = detail::sorted_labels(g1, std::nullopt);
  if (detail::sorted_labels(g2, Side::kFirst) != v1 ||
      detail::sorted_labels(g3, Side::kFirst) != v1) {
    throw HypothesisError("hypothesis i): V(G1) must equal V1(G2) and V1(G3)");
  }
  if (detail::sorted_labels(g2, Side::kSecond) != detail::sorted_labels(g3, Side::kSecond)) {
    throw HypothesisError("hypothesis i): V2(G2) must equal V2(G3)");
  }
  if (!is_regular(g1, 2 * d1)) throw HypothesisError("hypothesis ii): G1 is not 2d1-regular");
  if (!is_biregular(g2, d1, d2) || !is_biregular(g3, d1, d2)) {
    throw HypothesisError("hypothesis ii): G2, G3 must be (d1, d2)-regular");
  }
  UnionBoundCheck out;
  const std::array<const MultiGraph*, 3> gs{&g1, &g2, &g3};
  for (std::size_t i = 0; i < 3; ++i) {
    const double lam = lambda1(*gs[i]);
    out.c[i] = eigen_deficit(lam);
    if (!(out.c[i] < 1.0)) {
      throw HypothesisError("hypothesis iii): lambda_1(G" + std::to_string(i + 1) +
                            ") = 0, so no c_i < 1 exists");
    }
  }
  out.rhs = union_bound({out.c[0], out.c[1], out.c[2]});
  out.lhs = lambda1(graph_union(graph_union(g1, g2), g3));
  out.holds = out.lhs >= out.rhs - 1e-6;
  return out;
}

// Same-vertex-set variant: d-regular G_i on one vertex set with
// lambda_1(G_i) >= 1 - c give lambda_1(union) >= 1 - c.
inline UnionBoundCheck same_vertex_union_check(const MultiGraph& g1, const MultiGraph& g2,
                                               const MultiGraph& g3, std::uint64_t d) {
  const auto v = detail::sorted_labels(g1, std::nullopt);
  if (detail::sorted_labels(g2, std::nullopt) != v || detail::sorted_labels(g3, std::nullopt) != v) {
    throw HypothesisError("graphs must share one vertex set");
  }
  for (const auto* g : {&g1, &g2, &g3}) {
    if (!is_regular(*g, d)) throw HypothesisError("graphs must all be d-regular");
  }
  UnionBoundCheck out;
  const std::array<const MultiGraph*, 3> gs{&g1, &g2, &g3};
  double c = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.c[i] = eigen_deficit(lambda1(*gs[i]));
    if (!(out.c[i] < 1.0)) {
      throw HypothesisError("lambda_1(G" + std::to_string(i + 1) + ") = 0, so no c < 1 exists");
    }
    c = std::max(c, out.c[i]);
  }
  out.rhs = 1.0 - c;
  out.lhs = lambda1(graph_union(graph_union(g1, g2), g3));
  out.holds = out.lhs >= out.rhs - 1e-6;
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

inline void describe_graph(const MultiGraph& g, std::vector<std::string>& diag) {
  const auto prof = degree_profile(g);
  diag.push_back("vertices=" + std::to_string(g.vertex_count()) +
                 " edge_contributions=" + std::to_string(g.edge_count()) +
                 " distinct_edges=" + std::to_string(g.distinct_edge_count()) +
                 " loops=" + std::to_string(g.loop_count()));
  diag.push_back("degree min=" + std::to_string(prof.min) + " max=" + std::to_string(prof.max) +
                 " mean=" + fmt(prof.mean) + " components=" + std::to_string(component_count(g)));
}

}  // namespace detail

// lambda_1(Delta_k) against 1/2 with margin.
inline Certificate zuk_certificate(const Presentation& p, std::uint32_t k) {
  p.validate();
  Certificate c;
  c.method = CertificateMethod::kDirectDeltaK;
  c.k = k;
  const MultiGraph delta = build_delta_k(p, k);
  c.vertices = delta.vertex_count();
  c.edges = delta.edge_count();
  c.audit = double_edge_audit(delta);
  c.lambda1 = lambda1(delta);
  c.certified = passes_threshold(c.lambda1);
  const auto used = count_relators_of_length(p, k);
  c.diagnostics.push_back("relators_used=" + std::to_string(used) +
                          " relators_ignored=" + std::to_string(p.relators.size() - used));
  for (const auto& r : p.relators) {
    if (r.size() != k) c.diagnostics.push_back("ignored relator (length " +
                                               std::to_string(r.size()) + "): " + to_string(r));
  }
  detail::describe_graph(delta, c.diagnostics);
  c.diagnostics.push_back("lambda1=" + detail::fmt(c.lambda1) +
                          (c.certified ? " > 1/2: Property (T) certified"
                                       : " <= 1/2 + margin: no certificate"));
  return c;
}

// Outcome of the decomposition pipeline on its own.
struct PipelineResult {
  std::optional<double> bound;  // set when all hypotheses hold
  std::uint64_t d1 = 0, d2 = 0;
  std::array<double, 3> pi_lambda1{};
  double union_lambda1 = 0.0;  // lambda_1(Pi_1 u Pi_2 u Pi_3)
  bool sound = true;           // bound <= union_lambda1 + 1e-6
  std::array<DoubleEdgeAudit, 3> audits;
  std::vector<std::string> notes;
};

namespace detail {

struct LayerDegrees {
  std::uint64_t min_s = UINT64_MAX;     // S_i side
  std::uint64_t min_comp = UINT64_MAX;  // complement side
};

inline LayerDegrees layer_min_degrees(const MultiGraph& g, std::uint32_t n, std::uint32_t l) {
  LayerDegrees out;
  for (const auto& layer : red_class_layers(g, n, l).layers) {
    const auto deg = layer.degrees();
    for (VertexId v = 0; v < deg.size(); ++v) {
      auto& slot = layer.side(v) == Side::kFirst ? out.min_s : out.min_comp;
      slot = std::min(slot, deg[v]);
    }
  }
  return out;
}

inline std::pair<std::uint64_t, std::uint64_t> side_min_degrees(const MultiGraph& g) {
  std::uint64_t a = UINT64_MAX, b = UINT64_MAX;
  const auto deg = g.degrees();
  for (VertexId v = 0; v < deg.size(); ++v) {
    auto& slot = g.side(v) == Side::kFirst ? a : b;
    slot = std::min(slot, deg[v]);
  }
  return {a, b};
}

// Largest multiple of `unit` in [unit, hi] for which `feasible` holds;
// feasibility is monotone in the degree. Returns 0 when none.
template <typename Feasible>
std::uint64_t largest_feasible_multiple(std::uint64_t hi, std::uint64_t unit, Feasible&& feasible) {
  std::uint64_t lo_m = 0, hi_m = hi / unit;  // lo_m: known feasible multiple (0 = none)
  while (lo_m < hi_m) {
    const std::uint64_t mid = lo_m + (hi_m - lo_m + 1) / 2;
    if (feasible(mid * unit)) {
      lo_m = mid;
    } else {
      hi_m = mid - 1;
    }
  }
  return lo_m * unit;
}

inline std::uint64_t shave(double degree, double delta) {
  return static_cast<std::uint64_t>(std::floor((1.0 - delta) * degree + 1e-9));
}

}  // namespace detail

// Decompose Delta_k into Sigma_1..3, collapse multi-edges, extract regular
// spanning subgraphs Pi_i at shaving delta (stepping the degree down when the
// shaved target has no factor), and bound lambda_1(Pi_1 u Pi_2 u Pi_3) from
// the lambda_1(Pi_i).
//   k = 0 mod 3: all Pi_i are 2t-regular on W_{k/3}; bound 1 - max c_i.
//   otherwise:   Pi_2 is 2d1-regular on W_{l_k}, Pi_1 and Pi_3 are
//                (d1, d2)-regular bipartite; bound 1 - (sqrt2 c1 + c2 + c3)/(2 sqrt2)
//                with c1 taken from Pi_2.
inline PipelineResult run_decomposition_pipeline(const Presentation& p, std::uint32_t k,
                                                 const RegularityParams& params,
                                                 std::uint64_t bound_m = 3) {
  params.validate();
  PipelineResult out;
  const auto dec = sigma_decomposition(p, k);
  std::array<MultiGraph, 3> collapsed;
  for (std::size_t i = 0; i < 3; ++i) {
    out.audits[i] = double_edge_audit(dec.sigma[i], bound_m);
    collapsed[i] = collapse_multi_edges(dec.sigma[i]);
    out.notes.push_back("sigma" + std::to_string(i + 1) + ": edges=" +
                        std::to_string(dec.sigma[i].edge_count()) +
                        " max_mult=" + std::to_string(out.audits[i].max_multiplicity) +
                        " doubles=" + std::to_string(out.audits[i].double_edge_count) +
                        " doubles_form_matching=" +
                        (out.audits[i].doubles_form_matching ? "true" : "false") +
                        " max_doubles_per_vertex=" +
                        std::to_string(out.audits[i].max_doubles_per_vertex) + " (M=" +
                        std::to_string(bound_m) + ")");
  }
  if (dec.used_relators == 0) {
    out.notes.push_back("pipeline: no relators of length k");
    return out;
  }
  const std::uint32_t n = p.n;
  const std::uint64_t branch = 2ULL * n - 1;
  std::array<std::optional<MultiGraph>, 3> pi;

  if (dec.residue == 0) {
    const std::uint32_t l = dec.l_k;
    const bool already = [&] {
      const auto d = degree_profile(collapsed[0]);
      return d.min > 0 && std::all_of(collapsed.begin(), collapsed.end(),
                                      [&](const MultiGraph& g) { return is_regular(g, d.min); });
    }();
    if (already) {
      for (std::size_t i = 0; i < 3; ++i) pi[i] = collapsed[i];
      out.d1 = degree_profile(collapsed[0]).min;
      out.notes.push_back("pipeline: collapsed Sigma_i already " + std::to_string(out.d1) +
                          "-regular; used as Pi_i");
    } else {
      // Layer factors (t, t/(2n-1)); the union is 2t-regular.
      std::uint64_t t_hi = UINT64_MAX;
      for (const auto& g : collapsed) {
        const auto ld = detail::layer_min_degrees(g, n, l);
        t_hi = std::min({t_hi, ld.min_s, ld.min_comp * branch});
      }
      const std::uint64_t target = detail::shave(static_cast<double>(t_hi), params.delta);
      const auto t = detail::largest_feasible_multiple(target, branch, [&](std::uint64_t tt) {
        for (const auto& g : collapsed) {
          if (!extract_red_regular_union(g, n, l, tt, tt / branch)) return false;
        }
        return true;
      });
      out.notes.push_back("pipeline: layer target t=" + std::to_string(target) +
                          " (unshaved " + std::to_string(t_hi) + "), achieved t=" +
                          std::to_string(t));
      if (t == 0) {
        out.notes.push_back("pipeline: regular-factor extraction failed");
        return out;
      }
      for (std::size_t i = 0; i < 3; ++i) {
        pi[i] = extract_red_regular_union(collapsed[i], n, l, t, t / branch);
      }
      out.d1 = 2 * t;
    }
    try {
      const auto chk = same_vertex_union_check(*pi[0], *pi[1], *pi[2], out.d1);
      for (std::size_t i = 0; i < 3; ++i) out.pi_lambda1[i] = lambda1(*pi[i]);
      out.bound = chk.rhs;
      out.union_lambda1 = chk.lhs;
      out.sound = chk.holds;
    } catch (const HypothesisError& e) {
      out.notes.push_back(std::string("pipeline: hypothesis failed: ") + e.what());
      return out;
    }
  } else {
    const std::uint32_t l = dec.l_k;
    const std::uint64_t n1 = reduced_word_count(n, dec.l_k);
    const std::uint64_t n2 = reduced_word_count(n, dec.L_k);
    const std::uint64_t g12 = std::gcd(n1, n2);
    const std::uint64_t unit = std::lcm(n2 / g12, branch);
    auto d2_of = [&](std::uint64_t d1) { return d1 * n1 / n2; };

    const bool already = [&] {
      const auto d = degree_profile(collapsed[1]);
      if (d.min == 0 || d.min % 2 != 0 || !is_regular(collapsed[1], d.min)) return false;
      const auto d1 = d.min / 2;
      if ((d1 * n1) % n2 != 0) return false;
      return is_biregular(collapsed[0], d1, d2_of(d1)) && is_biregular(collapsed[2], d1, d2_of(d1));
    }();

    std::uint64_t d1 = 0;
    if (already) {
      d1 = degree_profile(collapsed[1]).min / 2;
      pi = {collapsed[0], collapsed[1], collapsed[2]};
      out.notes.push_back("pipeline: collapsed Sigma_i already regular; used as Pi_i");
    } else {
      std::uint64_t hi = UINT64_MAX;
      for (std::size_t i : {0, 2}) {
        const auto [a, b] = detail::side_min_degrees(collapsed[i]);
        hi = std::min({hi, a, b * n2 / n1});
      }
      const auto ld = detail::layer_min_degrees(collapsed[1], n, l);
      hi = std::min({hi, ld.min_s, ld.min_comp * branch});
      const std::uint64_t target = detail::shave(static_cast<double>(hi), params.delta);
      d1 = detail::largest_feasible_multiple(target, unit, [&](std::uint64_t dd) {
        return extract_regular_subgraph(collapsed[0], dd, d2_of(dd)) &&
               extract_regular_subgraph(collapsed[2], dd, d2_of(dd)) &&
               extract_red_regular_union(collapsed[1], n, l, dd, dd / branch);
      });
      out.notes.push_back("pipeline: target d1=" + std::to_string(target) + " (unshaved " +
                          std::to_string(hi) + "), achieved d1=" + std::to_string(d1));
      if (d1 == 0) {
        out.notes.push_back("pipeline: regular-factor extraction failed");
        return out;
      }
      pi[0] = extract_regular_subgraph(collapsed[0], d1, d2_of(d1));
      pi[1] = extract_red_regular_union(collapsed[1], n, l, d1, d1 / branch);
      pi[2] = extract_regular_subgraph(collapsed[2], d1, d2_of(d1));
    }
    out.d1 = d1;
    out.d2 = d2_of(d1);
    try {
      // Pi_2 plays G1 (the 2d1-regular graph on W_{l_k}).
      const auto chk = union_bound_empirical_check(*pi[1], *pi[0], *pi[2], out.d1, out.d2);
      for (std::size_t i = 0; i < 3; ++i) out.pi_lambda1[i] = lambda1(*pi[i]);
      out.bound = chk.rhs;
      out.union_lambda1 = chk.lhs;
      out.sound = chk.holds;
    } catch (const HypothesisError& e) {
      out.notes.push_back(std::string("pipeline: hypothesis failed: ") + e.what());
      return out;
    }
  }
  out.notes.push_back("pipeline: lambda1(Pi)=(" + detail::fmt(out.pi_lambda1[0]) + ", " +
                      detail::fmt(out.pi_lambda1[1]) + ", " + detail::fmt(out.pi_lambda1[2]) +
                      ") bound=" + detail::fmt(*out.bound) +
                      " lambda1(union Pi)=" + detail::fmt(out.union_lambda1) +
                      (out.sound ? "" : " UNSOUND"));
  return out;
}

// Direct certificate plus the pipeline bound as a diagnostic. The verdict
// always comes from the direct lambda_1(Delta_k).
inline Certificate certify_via_decomposition(const Presentation& p, std::uint32_t k,
                                             const RegularityParams& params,
                                             std::uint64_t bound_m = 3) {
  Certificate c = zuk_certificate(p, k);
  c.method = CertificateMethod::kUnionBoundPipeline;
  const auto pipe = run_decomposition_pipeline(p, k, params, bound_m);
  c.pipeline_bound = pipe.bound;
  c.diagnostics.insert(c.diagnostics.end(), pipe.notes.begin(), pipe.notes.end());
  return c;
}

}  // namespace spectral_t
