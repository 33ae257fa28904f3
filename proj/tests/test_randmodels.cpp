#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace spectral_t;
using namespace spectral_t::testing;

namespace {

double sigma(double trials, double p) { return std::sqrt(trials * p * (1 - p)); }

}  // namespace

TEST(Rng, DeterministicAndStreamSeparated) {
  Rng a(Seed{1, 0}), b(Seed{1, 0}), c(Seed{1, 1});
  int same = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    same += x == c.next() ? 1 : 0;
  }
  EXPECT_EQ(same, 0);
  Rng r(Seed{2, 0});
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7u);
  }
  auto idx = r.sample_indices(10, 10);
  std::sort(idx.begin(), idx.end());
  for (std::uint64_t i = 0; i < 10; ++i) EXPECT_EQ(idx[i], i);
}

TEST(Gnp, Extremes) {
  EXPECT_EQ(sample_gnp(10, 0.0, {1, 0}).edge_count(), 0u);
  const auto k = sample_gnp(10, 1.0, {1, 0});
  EXPECT_TRUE(same_edge_multiset(k, complete_graph(10)));
  EXPECT_EQ(k.loop_count(), 0u);
}

TEST(Gnp, EdgeCountWithinFourSigma) {
  double total = 0;
  for (std::uint64_t s = 0; s < 100; ++s) total += static_cast<double>(sample_gnp(100, 0.3, {s, 0}).edge_count());
  const double trials = 100.0 * 4950.0;
  EXPECT_LE(std::abs(total - 0.3 * trials), 4 * sigma(trials, 0.3));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto e = static_cast<double>(sample_gnp(100, 0.3, {s, 0}).edge_count());
    EXPECT_LE(std::abs(e - 1485.0), 4 * sigma(4950, 0.3)) << "seed " << s;
  }
}

TEST(BipartiteGnp, ExtremesAndCount) {
  const auto full = sample_bipartite_gnp(3, 4, 1.0, {0, 0});
  EXPECT_TRUE(same_edge_multiset(full, complete_bipartite(3, 4)));
  EXPECT_EQ(sample_bipartite_gnp(3, 4, 0.0, {0, 0}).edge_count(), 0u);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = sample_bipartite_gnp(50, 200, 0.2, {s, 0});
    for (const auto& [e, m] : g.edges()) EXPECT_NE(g.side(e.first), g.side(e.second));
    EXPECT_LE(std::abs(static_cast<double>(g.edge_count()) - 2000.0), 4 * sigma(10000, 0.2));
  }
}

TEST(Red, Extremes) {
  const auto g = sample_red(2, 2, 1.0, {0, 0});
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId w = v + 1; w < g.vertex_count(); ++w) {
      const bool same = class_index(parse_label(g.label(v)), 2) == class_index(parse_label(g.label(w)), 2);
      EXPECT_EQ(g.multiplicity(v, w), same ? 0u : 2u);
    }
  }
  const auto empty = sample_red(2, 2, 0.0, {0, 0});
  EXPECT_EQ(empty.vertex_count(), 12u);
  EXPECT_EQ(empty.edge_count(), 0u);
}

TEST(Red, NoSameClassEdges) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto g = sample_red(2, 2, 0.5, {s, 0});
    for (const auto& [e, m] : g.edges()) {
      EXPECT_NE(class_index(parse_label(g.label(e.first)), 2), class_index(parse_label(g.label(e.second)), 2));
      EXPECT_LE(m, 2u);
    }
  }
}

TEST(Red, MultiplicityLaw) {
  // each cross pair: multiplicity ~ Binomial(2, p)
  std::array<double, 3> counts{};
  double pairs = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const auto g = sample_red(2, 2, 0.3, {s, 3});
    for (VertexId v = 0; v < 12; ++v)
      for (VertexId w = v + 1; w < 12; ++w) {
        if (v / 3 == w / 3) continue;  // same first letter: contiguous blocks of 3
        ++counts[g.multiplicity(v, w)];
        ++pairs;
      }
  }
  const std::array<double, 3> prob{0.49, 0.42, 0.09};
  for (int i = 0; i < 3; ++i) EXPECT_LE(std::abs(counts[i] - pairs * prob[i]), 4 * sigma(pairs, prob[i]));
}

TEST(Bred, ForbiddenPairsAndFullDegrees) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto g = sample_bred(2, 3, 0.5, {s, 0});
    for (const auto& [e, m] : g.edges()) {
      EXPECT_FALSE(bred_forbidden(parse_label(g.label(e.first)), parse_label(g.label(e.second))));
      EXPECT_NE(g.side(e.first), g.side(e.second));
    }
  }
  // p = 1: deg(v) = |W_{l+1}| - (2n-1)^l on V1
  const auto full = sample_bred(2, 3, 1.0, {0, 0});
  const auto deg = full.degrees();
  for (VertexId v = 0; v < full.vertex_count(); ++v) {
    if (full.side(v) == Side::kFirst) EXPECT_EQ(deg[v], 108u - 27u);
  }
  EXPECT_EQ(sample_bred(2, 3, 0.0, {0, 0}).edge_count(), 0u);
  EXPECT_THROW(sample_bred(2, 2, 0.5, {0, 0}), InputError);
  EXPECT_NO_THROW(sample_bred(2, 2, 0.5, {0, 0}, BredOptions{true}));
}

TEST(Bred, ForbiddenRuleMatchesOracle) {
  // w in T'_i iff w^-1 ends in a_i^-1, for i the class of v
  for (const auto& v : enumerate_reduced(2, 3)) {
    for (const auto& w : enumerate_reduced(2, 4)) {
      const Word winv = invert(w);
      const bool oracle = winv.back() == v.front().inverse();
      EXPECT_EQ(bred_forbidden(v, w), oracle);
    }
  }
}

TEST(Coupled, RedExtremesAndContainment) {
  const auto zero = coupled_red_extension(2, 2, 0.0, {0, 0});
  EXPECT_EQ(zero.g.edge_count(), 0u);
  EXPECT_EQ(zero.g_prime.edge_count(), 0u);
  const auto one = coupled_red_extension(2, 2, 1.0, {0, 0});
  EXPECT_TRUE(same_edge_multiset(one.g_prime, verify::relabel(complete_graph(12), one.g_prime.labels())));
}

TEST(Coupled, RedPairFrequency) {
  constexpr double p = 0.3;
  std::vector<double> hits(66, 0);
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto c = coupled_red_extension(2, 2, p, {s, 0});
    EXPECT_TRUE(is_subgraph(collapse_multi_edges(c.g), c.g_prime));
    std::size_t i = 0;
    for (VertexId v = 0; v < 12; ++v)
      for (VertexId w = v + 1; w < 12; ++w, ++i) {
        ASSERT_LE(c.g_prime.multiplicity(v, w), 1u);
        hits[i] += static_cast<double>(c.g_prime.multiplicity(v, w));
      }
  }
  const double q = 2 * p - p * p;
  for (double h : hits) EXPECT_LE(std::abs(h - 500 * q), 4 * sigma(500, q));
}

TEST(Coupled, BredExtremesAndFill) {
  const auto zero = coupled_bred_extension(2, 3, 0.0, {0, 0});
  EXPECT_EQ(zero.g_prime.edge_count(), 0u);
  const auto one = coupled_bred_extension(2, 3, 1.0, {0, 0});
  EXPECT_EQ(one.g_prime.edge_count(), 36u * 108u);
  EXPECT_EQ(degree_profile(one.g_prime).max, 108u);
  double added = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto c = coupled_bred_extension(2, 3, 0.3, {s, 0});
    EXPECT_TRUE(is_subgraph(c.g, c.g_prime));
    added += static_cast<double>(c.g_prime.edge_count() - c.g.edge_count());
  }
  // sum_i |S'_i| |T'_i| = 4 * 9 * 27
  const double trials = 100.0 * 4 * 9 * 27;
  EXPECT_LE(std::abs(added - 0.3 * trials), 4 * sigma(trials, 0.3));
}

TEST(GammaStrict, SizesAndValidity) {
  const auto p = sample_gamma_strict(2, 3, 1.0 / 3.0, {0, 0});
  EXPECT_EQ(p.relators.size(), 3u);
  std::set<std::string> seen;
  for (const auto& r : p.relators) {
    EXPECT_TRUE(is_cyclically_reduced(r));
    seen.insert(to_string(r));
  }
  EXPECT_EQ(seen.size(), 3u);
  EXPECT_EQ(sample_gamma_strict(2, 3, 0.01, {0, 0}).relators.size(), 1u);
  EXPECT_EQ(sample_gamma_strict(2, 3, 0.9, {0, 0}).relators.size(), 19u);
  EXPECT_EQ(strict_relator_count(2, 3, 0.9), 19u);
  EXPECT_EQ(strict_relator_count(10, 3, 0.25), 9u);
  EXPECT_EQ(strict_relator_count(10, 3, 0.45), 53u);
  EXPECT_THROW(sample_gamma_strict(2, 3, 1.0, {0, 0}), InputError);
}

TEST(GammaStrict, UniformMarginals) {
  // each of the 28 words appears with probability 3/28
  std::map<std::string, double> hits;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    for (const auto& r : sample_gamma_strict(2, 3, 1.0 / 3.0, {s, 0}).relators) ++hits[to_string(r)];
  }
  EXPECT_EQ(hits.size(), 28u);
  for (const auto& [w, h] : hits) EXPECT_LE(std::abs(h - 2000 * 3.0 / 28.0), 4 * sigma(2000, 3.0 / 28.0)) << w;
}

TEST(GammaP, ExtremesAndCount) {
  EXPECT_EQ(sample_gamma_p(2, 3, 1.0, {0, 0}).relators, enumerate_cyclically_reduced(2, 3));
  EXPECT_TRUE(sample_gamma_p(2, 3, 0.0, {0, 0}).relators.empty());
  double total = 0;
  for (std::uint64_t s = 0; s < 400; ++s) total += static_cast<double>(sample_gamma_p(2, 3, 0.5, {s, 0}).relators.size());
  EXPECT_LE(std::abs(total / 400 - 14.0), 4 * sigma(28, 0.5) / std::sqrt(400.0));
}

TEST(GammaLax, WindowAndDegenerateCase) {
  const auto p = sample_gamma_lax(2, LaxParams{4, 0.333, 1}, {0, 0});
  EXPECT_EQ(p.relators.size(), 4u);
  for (std::uint64_t s = 0; s < 100; ++s) {
    for (const auto& r : sample_gamma_lax(2, LaxParams{4, 0.333, 1}, {s, 0}).relators) {
      EXPECT_GE(r.size(), 3u);
      EXPECT_LE(r.size(), 5u);
      EXPECT_TRUE(is_cyclically_reduced(r));
    }
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_EQ(dump_presentation(sample_gamma_lax(2, LaxParams{4, 0.4, 0}, {s, 0})),
              dump_presentation(sample_gamma_strict(2, 4, 0.4, {s, 0})));
  }
  EXPECT_THROW(sample_gamma_lax(2, LaxParams{4, 0.3, 2}, {0, 0}), InputError);
}

TEST(Samplers, Determinism) {
  EXPECT_EQ(dump_graph(sample_red(2, 3, 0.4, {9, 2})), dump_graph(sample_red(2, 3, 0.4, {9, 2})));
  EXPECT_EQ(dump_graph(sample_bred(2, 3, 0.4, {9, 2})), dump_graph(sample_bred(2, 3, 0.4, {9, 2})));
  EXPECT_EQ(dump_presentation(sample_gamma_p(2, 5, 0.4, {9, 2})),
            dump_presentation(sample_gamma_p(2, 5, 0.4, {9, 2})));
  EXPECT_NE(dump_graph(sample_gnp(30, 0.5, {9, 2})), dump_graph(sample_gnp(30, 0.5, {9, 3})));
}

TEST(Samplers, SuiteProperties) {
  for (const auto& p : verify::models_suite(1)) EXPECT_TRUE(p.passed) << p.name << " margin " << p.margin;
}
