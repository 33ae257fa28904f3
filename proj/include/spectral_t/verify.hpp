#pragma once

// Property suites behind `spectral_t verify <suite>`. Each property reports
// pass/fail and its worst-case margin (slack; negative means violated).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spectral_t/certify.hpp"
#include "spectral_t/delta.hpp"
#include "spectral_t/randmodels.hpp"
#include "spectral_t/regularity.hpp"
#include "spectral_t/spectra.hpp"

namespace spectral_t::verify {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::string detail;
};

using SuiteReport = std::vector<PropertyResult>;

inline bool all_passed(const SuiteReport& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& p) { return p.passed; });
}

inline void print_report(std::ostream& os, const std::string& suite, const SuiteReport& r) {
  os << "suite " << suite << "\n";
  for (const auto& p : r) {
    os << (p.passed ? "  PASS  " : "  FAIL  ") << p.name << "  margin=" << detail::fmt(p.margin);
    if (!p.detail.empty()) os << "  (" << p.detail << ")";
    os << "\n";
  }
  const auto failed = std::count_if(r.begin(), r.end(), [](const auto& p) { return !p.passed; });
  os << (failed == 0 ? "all " + std::to_string(r.size()) + " properties passed"
                     : std::to_string(failed) + " of " + std::to_string(r.size()) +
                           " properties FAILED")
     << "\n";
}

// Tracks the minimum slack over many checks of one property.
class MarginTracker {
 public:
  explicit MarginTracker(std::string name) : name_(std::move(name)) {}
  void observe(double slack) { worst_ = std::min(worst_, slack); ++count_; }
  void fail(std::string why) {
    ok_ = false;
    if (detail_.empty()) detail_ = std::move(why);
  }
  void note(std::string d) { detail_ = std::move(d); }
  PropertyResult result(double tolerance = 0.0) const {
    PropertyResult r;
    r.name = name_;
    r.margin = count_ ? worst_ : 0.0;
    r.passed = ok_ && (count_ == 0 || worst_ >= -tolerance);
    r.detail = detail_.empty() ? std::to_string(count_) + " checks" : detail_;
    return r;
  }

 private:
  std::string name_;
  double worst_ = INFINITY;
  std::size_t count_ = 0;
  bool ok_ = true;
  std::string detail_;
};

// ---------------------------------------------------------------------------
// Shared generators

inline Matrix random_symmetric(std::size_t m, Rng& rng) {
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) {
      a(i, j) = a(j, i) = 2.0 * rng.uniform() - 1.0;
    }
  }
  return a;
}

// d-regular circulant on m vertices from d/2 random distinct offsets < m/2.
inline MultiGraph random_circulant(std::size_t m, std::size_t d, Rng& rng) {
  if (d % 2 != 0 || d / 2 >= m / 2) throw InputError("circulant needs even d < m - 1");
  auto offsets = rng.sample_indices(m / 2 - 1, d / 2);
  MultiGraph g = MultiGraph::numbered(m);
  for (auto o : offsets) {
    const std::size_t off = static_cast<std::size_t>(o) + 1;
    for (VertexId v = 0; v < m; ++v) {
      g.add_edge(v, (v + off) % m);
    }
  }
  return g;
}

// Relabel the vertices of g by `names` (same order).
inline MultiGraph relabel(const MultiGraph& g, const std::vector<std::string>& names) {
  MultiGraph out = MultiGraph::with_vertices(names);
  for (const auto& [e, m] : g.edges()) out.add_edge(e.first, e.second, m);
  return out;
}

// A triple satisfying the union-bound hypotheses on V1 = u0..u{m1-1},
// V2 = v0..v{m2-1}: G2, G3 are (d1, d2)-factors of dense bipartite samples and
// G1 is the union of two d1-regular bipartite factors on random halvings of V1.
struct UnionTriple {
  MultiGraph g1, g2, g3;
  std::uint64_t d1 = 0, d2 = 0;
};

inline std::optional<UnionTriple> random_union_triple(std::uint64_t seed, std::uint64_t stream) {
  constexpr std::size_t m1 = 12, m2 = 24;
  constexpr std::uint64_t d1 = 4, d2 = 2;
  UnionTriple t;
  t.d1 = d1;
  t.d2 = d2;
  auto g2 = extract_regular_subgraph(sample_bipartite_gnp(m1, m2, 0.6, {seed, 4 * stream}), d1, d2);
  auto g3 = extract_regular_subgraph(sample_bipartite_gnp(m1, m2, 0.6, {seed, 4 * stream + 1}), d1, d2);
  if (!g2 || !g3) return std::nullopt;
  t.g2 = std::move(*g2);
  t.g3 = std::move(*g3);

  std::vector<std::string> v1;
  for (std::size_t i = 0; i < m1; ++i) v1.push_back("u" + std::to_string(i));
  t.g1 = MultiGraph::with_vertices(v1);
  for (std::uint64_t half = 0; half < 2; ++half) {
    Rng rng(Seed{seed, 4 * stream + 2 + half});
    auto perm = rng.sample_indices(m1, m1);
    auto h = sample_bipartite_gnp(m1 / 2, m1 / 2, 0.8, {seed ^ 0xabcdefULL, 4 * stream + 2 + half});
    auto f = extract_regular_subgraph(h, d1, d1);
    if (!f) return std::nullopt;
    // sample labels u0..u5 | v0..v5 map to V1 via the permutation
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m1; ++i) names.push_back(v1[perm[i]]);
    auto moved = relabel(*f, names);
    for (const auto& [e, m] : moved.edges()) {
      t.g1.add_edge(moved.label(e.first), moved.label(e.second), m);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Suites

inline SuiteReport spectra_suite(std::uint64_t seed) {
  SuiteReport out;
  Rng rng(Seed{seed, 0});

  // Laplacian range, trace, kernel dimension on random graphs with min degree >= 1.
  MarginTracker range("laplacian spectrum in [0, 2], lambda_0 ~ 0, trace = |V|");
  MarginTracker kernel("multiplicity of eigenvalue 0 equals component count");
  std::size_t tried = 0;
  for (std::uint64_t s = 0; tried < 60 && s < 1000; ++s) {
    const std::size_t m = 2 + rng.below(49);
    const double p = 0.02 + 0.3 * rng.uniform();
    auto g = sample_gnp(m, p, {seed, 1000 + s});
    const auto deg = g.degrees();
    if (std::any_of(deg.begin(), deg.end(), [](auto d) { return d == 0; })) continue;
    ++tried;
    const auto lap = normalized_laplacian(g);
    const auto ev = spectrum(lap);
    range.observe(ev.front() + 1e-9);
    range.observe(2.0 + 1e-9 - ev.back());
    range.observe(1e-9 - ev.front());
    range.observe(1e-9 - std::abs(lap.trace() - static_cast<double>(m)));
    const auto zeros = static_cast<std::size_t>(
        std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) < 1e-7; }));
    const auto comps = component_count(g);
    kernel.observe(zeros == comps ? 0.0 : -1.0);
    if (zeros != comps) kernel.fail("zeros=" + std::to_string(zeros) + " components=" + std::to_string(comps));
    const double l1 = lambda1(g);
    if ((l1 == 0.0) != (comps >= 2)) kernel.fail("lambda1 = 0 disagrees with connectivity");
  }
  out.push_back(range.result());
  out.push_back(kernel.result());

  MarginTracker weyl("Weyl inequalities on 1000 random symmetric pairs (m <= 8)");
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 1 + rng.below(8);
    const auto a = random_symmetric(m, rng);
    const auto b = random_symmetric(m, rng);
    weyl.observe(-weyl_violation(a, b));
  }
  out.push_back(weyl.result(1e-9));

  MarginTracker bip("bipartite spectra symmetric about 0");
  MarginTracker bound("adjacency_spectral_bound >= spectral radius of A");
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto g = sample_bipartite_gnp(3 + rng.below(10), 3 + rng.below(15), 0.5, {seed, 2000 + s});
    bound.observe(adjacency_spectral_bound(g) - spectral_radius(adjacency_matrix(g).cast<double>()));
    const auto deg = g.degrees();
    if (std::any_of(deg.begin(), deg.end(), [](auto d) { return d == 0; })) continue;
    const auto ev = spectrum(normalized_adjacency(g));
    for (std::size_t i = 0; i < ev.size(); ++i) {
      bip.observe(1e-9 - std::abs(ev[i] + ev[ev.size() - 1 - i]));
    }
  }
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto g = sample_gnp(2 + rng.below(20), 0.3, {seed, 3000 + s});
    bound.observe(adjacency_spectral_bound(g) - spectral_radius(adjacency_matrix(g).cast<double>()));
  }
  out.push_back(bip.result());
  out.push_back(bound.result(1e-9));

  MarginTracker complete("lambda_1(K_m) = m/(m-1), m = 3..10");
  for (std::size_t m = 3; m <= 10; ++m) {
    auto g = MultiGraph::numbered(m);
    for (VertexId i = 0; i < m; ++i)
      for (VertexId j = i + 1; j < m; ++j) g.add_edge(i, j);
    complete.observe(1e-9 - std::abs(lambda1(g) - static_cast<double>(m) / static_cast<double>(m - 1)));
  }
  out.push_back(complete.result());

  // |lambda_1(G) - lambda_1(G u G')| <= 5 (d/50)/d for d-regular G, deg(G') <= d/50.
  MarginTracker perturb("small-degree perturbation moves lambda_1 by <= 5 (d/50)/d");
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t m = 120, d = 50;
    Rng local(Seed{seed, 4000 + s});
    auto g = random_circulant(m, d, local);
    // G': a random perfect matching, max degree 1 = d/50
    auto perm = local.sample_indices(m, m);
    MultiGraph extra = MultiGraph::with_vertices(g.labels());
    for (std::size_t i = 0; i + 1 < m; i += 2) extra.add_edge(perm[i], perm[i + 1]);
    const double diff = std::abs(lambda1(g) - lambda1(graph_union(g, extra)));
    perturb.observe(5.0 * (static_cast<double>(d) / 50.0) / static_cast<double>(d) + 1e-6 - diff);
  }
  out.push_back(perturb.result());
  return out;
}

inline SuiteReport regularity_suite(std::uint64_t seed) {
  SuiteReport out;

  // All 2^9 bipartite graphs on 3 + 3 vertices.
  MarginTracker agree("flow extraction succeeds iff Ore-Ryser holds (all 512 graphs on 3+3)");
  MarginTracker exact("extracted factors are subgraphs with exact degrees");
  std::size_t feasible_count = 0;
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    MultiGraph g;
    std::vector<Side> sides;
    for (int i = 0; i < 3; ++i) { g.add_vertex("u" + std::to_string(i)); sides.push_back(Side::kFirst); }
    for (int j = 0; j < 3; ++j) { g.add_vertex("v" + std::to_string(j)); sides.push_back(Side::kSecond); }
    for (int b = 0; b < 9; ++b) {
      if (mask >> b & 1) g.add_edge(static_cast<VertexId>(b / 3), static_cast<VertexId>(3 + b % 3));
    }
    g.set_partition(sides);
    for (std::uint64_t d = 0; d <= 3; ++d) {
      const bool ore = ore_ryser_brute_force(g, d, d);
      const auto f = extract_regular_subgraph(g, d, d);
      agree.observe(ore == f.has_value() ? 0.0 : -1.0);
      if (f) {
        ++feasible_count;
        exact.observe(is_subgraph(*f, g) && is_biregular(*f, d, d) ? 0.0 : -1.0);
      }
    }
  }
  agree.note(std::to_string(512 * 4) + " (graph, d) pairs, " + std::to_string(feasible_count) + " feasible");
  out.push_back(agree.result());
  out.push_back(exact.result());

  MarginTracker mono("shaving monotonicity: success at (d1, d2) implies success below");
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto g = sample_bipartite_gnp(8, 16, 0.5, {seed, 100 + s});
    std::uint64_t last_ok = 0;
    bool seen_fail = false;
    for (std::uint64_t d2 = 1; d2 <= 5; ++d2) {
      const bool ok = extract_regular_subgraph(g, 2 * d2, d2).has_value();
      if (ok && seen_fail) mono.fail("success above a failure at seed " + std::to_string(s));
      if (!ok) seen_fail = true; else last_ok = d2;
    }
    mono.observe(0.0);
    (void)last_ok;
  }
  out.push_back(mono.result());

  MarginTracker flow_vs_brute("flow feasibility equals brute-force Ore-Ryser (random 4+8 graphs)");
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto g = sample_bipartite_gnp(4, 8, 0.6, {seed, 200 + s});
    for (std::uint64_t d2 = 0; d2 <= 2; ++d2) {
      const bool brute = ore_ryser_brute_force(g, 2 * d2, d2);
      const auto f = detail::run_factor_flow(g, 2 * d2, d2);
      flow_vs_brute.observe(brute == (f.value == f.demand) ? 0.0 : -1.0);
    }
  }
  out.push_back(flow_vs_brute.result());

  // Reduced random graphs at desk scale: n = 2, l = 5, (2n-1)^l p = 109.35.
  MarginTracker red("Red(2,5,0.45): layer-factor union at delta = 0.2 in >= 95% of 100 seeds");
  std::size_t ok = 0, regular = 0;
  constexpr std::uint32_t n = 2, l = 5;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto g = sample_red(n, l, 0.45, {seed, 300 + s});
    const auto ld = detail::layer_min_degrees(g, n, l);
    const std::uint64_t hi = std::min(ld.min_s, ld.min_comp * 3);
    const std::uint64_t t = detail::shave(static_cast<double>(hi), 0.2) / 3 * 3;
    auto u = extract_red_regular_union(g, n, l, t, t / 3);
    if (!u) continue;
    ++ok;
    if (is_regular(*u, 2 * t) && is_subgraph(*u, g)) ++regular;
  }
  red.observe(static_cast<double>(ok) / 100.0 - 0.95);
  if (regular != ok) red.fail("a successful union was not 2t-regular or not a subgraph");
  red.note(std::to_string(ok) + "/100 succeeded, " + std::to_string(regular) + " exactly regular");
  out.push_back(red.result());
  return out;
}

// Recount of a Sigma graph's double-edge statistics straight from relators.
inline DoubleEdgeAudit brute_force_audit(const Presentation& p, std::uint32_t k, std::size_t which) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> mult;
  for (const auto& r : p.relators) {
    if (r.size() != k) continue;
    const auto pc = split_relator(r, k);
    std::string a, b;
    if (which == 0) { a = to_label(pc.x); b = to_label(invert(pc.z)); }
    if (which == 1) { a = to_label(pc.y); b = to_label(invert(pc.x)); }
    if (which == 2) { a = to_label(pc.z); b = to_label(invert(pc.y)); }
    if (b < a) std::swap(a, b);
    ++mult[{a, b}];
  }
  DoubleEdgeAudit out;
  std::map<std::string, std::uint64_t> per_vertex;
  for (const auto& [e, m] : mult) {
    out.max_multiplicity = std::max(out.max_multiplicity, m);
    if (m >= 2) {
      ++out.double_edge_count;
      ++per_vertex[e.first];
      if (e.second != e.first) ++per_vertex[e.second];
    }
  }
  for (const auto& [v, c] : per_vertex) out.max_doubles_per_vertex = std::max(out.max_doubles_per_vertex, c);
  out.doubles_form_matching = out.max_doubles_per_vertex <= 1;
  return out;
}

inline bool audits_equal(const DoubleEdgeAudit& a, const DoubleEdgeAudit& b) {
  return a.max_multiplicity == b.max_multiplicity && a.double_edge_count == b.double_edge_count &&
         a.doubles_form_matching == b.doubles_form_matching &&
         a.max_doubles_per_vertex == b.max_doubles_per_vertex;
}

// Delta_3 over the alphabet of pieces: each inverse pair {w, w^-1} of
// W_{l_k} u W_{L_k} becomes one generator, and r = r_x r_y r_z becomes the
// three-letter relator (r_x)(r_y)(r_z). Vertices are relabelled back to words.
inline MultiGraph delta3_over_pieces(const Presentation& p, std::uint32_t k) {
  const auto shape = DeltaShape::of(k);
  std::map<std::string, Letter> letter_of;
  std::vector<std::string> word_of_code;  // code-1 -> label, filled below
  std::uint32_t gens = 0;
  std::vector<std::uint32_t> lengths = shape.block_lengths;
  for (auto len : lengths) {
    for (const auto& w : enumerate_reduced(p.n, len)) {
      const auto lab = to_label(w);
      if (letter_of.contains(lab)) continue;
      ++gens;
      letter_of[lab] = Letter{gens, 1};
      letter_of[to_label(invert(w))] = Letter{gens, -1};
    }
  }
  Presentation t;
  t.n = gens;
  for (const auto& r : p.relators) {
    if (r.size() != k) continue;
    const auto pc = split_relator(r, k);
    t.relators.push_back(Word::raw({letter_of.at(to_label(pc.x)), letter_of.at(to_label(pc.y)),
                                    letter_of.at(to_label(pc.z))}));
  }
  const auto d3 = build_delta3(t);
  std::map<std::string, std::string> back;
  for (const auto& [lab, letter] : letter_of) back[to_label(Word::raw({letter}))] = lab;
  std::vector<std::string> names;
  for (const auto& l : d3.labels()) names.push_back(back.at(l));
  return relabel(d3, names);
}

inline SuiteReport lemmas_suite(std::uint64_t seed) {
  SuiteReport out;

  MarginTracker identity("union_bound(0, c, c) = 1 - c/sqrt(2)");
  for (double c : {0.0, 0.1, 1.0 / 3.0}) {
    identity.observe(1e-12 - std::abs(union_bound({0.0, c, c}) - (1.0 - c / std::sqrt(2.0))));
  }
  out.push_back(identity.result());

  MarginTracker triples("union bound holds on 50 random hypothesis-satisfying triples");
  std::size_t found = 0;
  for (std::uint64_t s = 0; found < 50 && s < 500; ++s) {
    auto t = random_union_triple(seed, s);
    if (!t) continue;
    try {
      const auto chk = union_bound_empirical_check(t->g1, t->g2, t->g3, t->d1, t->d2);
      ++found;
      triples.observe(chk.lhs - chk.rhs + 1e-6);
    } catch (const HypothesisError&) {
      continue;
    }
  }
  if (found < 50) triples.fail("only " + std::to_string(found) + " valid triples generated");
  out.push_back(triples.result());

  MarginTracker decomp("Sigma_1 u Sigma_2 u Sigma_3 = Delta_k and 3r edge contributions (n=2, k=3..8)");
  MarginTracker iso("Delta_k(A_n | R) = Delta_3(pieces | T) (n=2, k=3..8)");
  for (std::uint32_t k = 3; k <= 8; ++k) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const double p = std::min(1.0, 40.0 / static_cast<double>(enumerate_cyclically_reduced(2, k).size()));
      auto pres = sample_gamma_p(2, k, p, {seed, 10 * k + s});
      const auto delta = build_delta_k(pres, k);
      const auto dec = sigma_decomposition(pres, k);
      const auto u = graph_union(graph_union(dec.sigma[0], dec.sigma[1]), dec.sigma[2]);
      const bool same = same_edge_multiset(u, delta) &&
                        delta.edge_count() == 3 * pres.relators.size();
      decomp.observe(same ? 0.0 : -1.0);
      iso.observe(same_edge_multiset(delta3_over_pieces(pres, k), delta) ? 0.0 : -1.0);
    }
  }
  out.push_back(decomp.result());
  out.push_back(iso.result());

  MarginTracker audit("double-edge audits match brute-force recount on Gamma_p(2,3,3^-1.8)");
  const double p_audit = std::pow(3.0, 3.0 * 0.4 - 3.0);
  std::size_t matching = 0, total = 0, over = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto pres = sample_gamma_p(2, 3, p_audit, {seed, 500 + s});
    const auto dec = sigma_decomposition(pres, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto a = double_edge_audit(dec.sigma[i]);
      audit.observe(audits_equal(a, brute_force_audit(pres, 3, i)) ? 0.0 : -1.0);
      over += a.max_multiplicity > 3 ? 1 : 0;
      ++total;
      matching += a.doubles_form_matching ? 1 : 0;
    }
  }
  audit.note(std::to_string(matching) + "/" + std::to_string(total) + " Sigma graphs have doubles forming a matching, " +
             std::to_string(over) + " with multiplicity above 3");
  out.push_back(audit.result());

  MarginTracker sound("pipeline bound <= lambda_1(union of Pi_i) + 1e-6 (n=2, k=6, p=0.45)");
  std::size_t emitted = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto pres = sample_gamma_p(2, 6, 0.45, {seed, 700 + s});
    const auto res = run_decomposition_pipeline(pres, 6, RegularityParams{});
    if (!res.bound) continue;
    ++emitted;
    sound.observe(res.union_lambda1 + 1e-6 - *res.bound);
  }
  sound.note(std::to_string(emitted) + "/10 runs emitted a bound");
  out.push_back(sound.result());
  return out;
}

inline SuiteReport models_suite(std::uint64_t seed) {
  SuiteReport out;

  MarginTracker red("Red(2,2,0.5) never joins same-class vertices (200 seeds)");
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto g = sample_red(2, 2, 0.5, {seed, s});
    std::uint64_t bad = 0;
    for (const auto& [e, m] : g.edges()) {
      if (class_index(parse_label(g.label(e.first)), 2) == class_index(parse_label(g.label(e.second)), 2)) bad += m;
      if (m > 2) bad += m;
    }
    red.observe(-static_cast<double>(bad));
  }
  out.push_back(red.result());

  MarginTracker bred("BRed(2,3,0.5) never joins v to T'_{i(v)} (200 seeds)");
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto g = sample_bred(2, 3, 0.5, {seed, 1000 + s});
    std::uint64_t bad = 0;
    for (const auto& [e, m] : g.edges()) {
      if (bred_forbidden(parse_label(g.label(e.first)), parse_label(g.label(e.second)))) bad += m;
    }
    bred.observe(-static_cast<double>(bad));
  }
  out.push_back(bred.result());

  // Per-pair frequencies within 4 binomial sigma.
  auto freq_check = [](MarginTracker& t, const std::vector<std::uint64_t>& hits, std::size_t trials, double p) {
    const double sigma = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
    for (auto h : hits) {
      const double dev = std::abs(static_cast<double>(h) - static_cast<double>(trials) * p);
      t.observe(sigma > 0 ? 4.0 - dev / sigma : (dev == 0 ? 0.0 : -1.0));
    }
  };

  MarginTracker gnp_freq("G(10, 0.3) per-pair frequency within 4 sigma (400 seeds)");
  {
    std::vector<std::uint64_t> hits(45, 0);
    for (std::uint64_t s = 0; s < 400; ++s) {
      auto g = sample_gnp(10, 0.3, {seed, 2000 + s});
      std::size_t idx = 0;
      for (VertexId i = 0; i < 10; ++i)
        for (VertexId j = i + 1; j < 10; ++j, ++idx) hits[idx] += g.multiplicity(i, j);
    }
    freq_check(gnp_freq, hits, 400, 0.3);
  }
  out.push_back(gnp_freq.result());

  MarginTracker gp_freq("Gamma_p(2,3,0.5) per-relator frequency within 4 sigma (400 seeds)");
  {
    const auto universe = enumerate_cyclically_reduced(2, 3);
    std::map<std::string, std::uint64_t> count;
    for (std::uint64_t s = 0; s < 400; ++s) {
      for (const auto& r : sample_gamma_p(2, 3, 0.5, {seed, 3000 + s}).relators) ++count[to_string(r)];
    }
    std::vector<std::uint64_t> hits;
    for (const auto& w : universe) hits.push_back(count[to_string(w)]);
    freq_check(gp_freq, hits, 400, 0.5);
  }
  out.push_back(gp_freq.result());

  MarginTracker coupling("coupled Red extension: pair frequency 2p - p^2 within 4 sigma, G in G' (500 seeds)");
  {
    constexpr double p = 0.3;
    const std::size_t m = reduced_word_count(2, 2);
    std::vector<std::uint64_t> hits(m * (m - 1) / 2, 0);
    for (std::uint64_t s = 0; s < 500; ++s) {
      auto c = coupled_red_extension(2, 2, p, {seed, 4000 + s});
      if (!is_subgraph(collapse_multi_edges(c.g), c.g_prime)) coupling.fail("containment violated");
      if (degree_profile(c.g_prime).max > m - 1 || c.g_prime.loop_count() != 0) coupling.fail("G' not simple");
      for (const auto& [e, mult] : c.g_prime.edges()) {
        if (mult != 1) coupling.fail("G' has a multi-edge");
      }
      std::size_t idx = 0;
      for (VertexId i = 0; i < m; ++i)
        for (VertexId j = i + 1; j < m; ++j, ++idx) hits[idx] += c.g_prime.multiplicity(i, j);
    }
    freq_check(coupling, hits, 500, 2 * p - p * p);
  }
  out.push_back(coupling.result());

  MarginTracker bcoupling("coupled BRed extension: G in G', fill count within 4 sigma");
  {
    constexpr double p = 0.3;
    std::uint64_t added = 0;
    const std::size_t trials = 100;
    for (std::uint64_t s = 0; s < trials; ++s) {
      auto c = coupled_bred_extension(2, 3, p, {seed, 5000 + s});
      if (!is_subgraph(c.g, c.g_prime)) bcoupling.fail("containment violated");
      added += c.g_prime.edge_count() - c.g.edge_count();
    }
    // sum_i |S'_i||T'_i| = 2n (2n-1)^(l-1) (2n-1)^l per sample
    const double block = 4.0 * 9.0 * 27.0;
    const double nn = block * static_cast<double>(trials);
    const double sigma = std::sqrt(nn * p * (1 - p));
    bcoupling.observe(4.0 - std::abs(static_cast<double>(added) - nn * p) / sigma);
  }
  out.push_back(bcoupling.result());

  MarginTracker conc("G(500, 500, 0.5): all degrees within 25% of the mean (20 seeds)");
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto g = sample_bipartite_gnp(500, 500, 0.5, {seed, 6000 + s});
    for (auto d : g.degrees()) conc.observe(0.25 - std::abs(static_cast<double>(d) - 250.0) / 250.0);
  }
  out.push_back(conc.result());

  MarginTracker strict("strict model size is floor((2n-1)^(kd)), relators distinct and cyclically reduced");
  for (double d : {0.1, 1.0 / 3.0, 0.5, 0.9}) {
    auto pres = sample_gamma_strict(2, 3, d, {seed, 7000});
    std::vector<std::string> texts;
    for (const auto& r : pres.relators) texts.push_back(to_string(r));
    std::sort(texts.begin(), texts.end());
    const bool distinct = std::adjacent_find(texts.begin(), texts.end()) == texts.end();
    const bool ok = pres.relators.size() == strict_relator_count(2, 3, d) && distinct;
    strict.observe(ok ? 0.0 : -1.0);
    pres.validate();
  }
  out.push_back(strict.result());
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectra", "lemmas", "regularity", "models"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "spectra") return spectra_suite(seed);
  if (name == "lemmas") return lemmas_suite(seed);
  if (name == "regularity") return regularity_suite(seed);
  if (name == "models") return models_suite(seed);
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace spectral_t::verify
