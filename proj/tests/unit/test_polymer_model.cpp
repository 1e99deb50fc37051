#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "polymc/configuration.hpp"
#include "polymc/errors.hpp"
#include "polymc/hardcore.hpp"
#include "polymc/polymer_model.hpp"

namespace polymc {
namespace {

TEST(Compatible, SharedVertex) {
  const HostGraph g = path_graph(3);
  EXPECT_FALSE(compatible(uniform_polymer({0, 1}, 1), uniform_polymer({1}, 1), g));
}

TEST(Compatible, AdjacentSupports) {
  const HostGraph g = path_graph(3);
  EXPECT_FALSE(compatible(uniform_polymer({0}, 1), uniform_polymer({1}, 1), g));
}

TEST(Compatible, DistanceTwo) {
  const HostGraph g = path_graph(3);
  EXPECT_TRUE(compatible(uniform_polymer({0}, 1), uniform_polymer({2}, 1), g));
}

TEST(Compatible, Symmetric) {
  const HostGraph g = cycle_graph(6);
  std::vector<Polymer> ps;
  for (Vertex v = 0; v < 6; ++v) {
    ps.push_back(uniform_polymer({v}, 1));
    ps.push_back(uniform_polymer({v, static_cast<Vertex>((v + 1) % 6)}, 1));
  }
  for (auto& p : ps) std::sort(p.support.begin(), p.support.end());
  for (const auto& a : ps) {
    for (const auto& b : ps) EXPECT_EQ(compatible(a, b, g), compatible(b, a, g));
  }
}

TEST(ConfigWeight, EmptyIsOne) {
  const HostGraph g = path_graph(3);
  VertexHardcoreModel m(g, 0.3);
  EXPECT_DOUBLE_EQ(config_weight(Configuration(g), m), 1.0);
}

TEST(ConfigWeight, MonomerIsLambda) {
  const HostGraph g = path_graph(3);
  VertexHardcoreModel m(g, 0.3);
  const Configuration c = make_configuration(m, {uniform_polymer({1}, 1)});
  EXPECT_NEAR(config_weight(c, m), 0.3, 1e-15);
}

TEST(ConfigWeight, ProductOfWeights) {
  const HostGraph g = path_graph(3);
  Configuration c(g);
  ASSERT_TRUE(c.try_insert(uniform_polymer({0}, 1), std::log(0.1)));
  ASSERT_TRUE(c.try_insert(uniform_polymer({2}, 1), std::log(0.2)));
  EXPECT_NEAR(std::exp(c.log_weight()), 0.02, 1e-15);
}

TEST(Configuration, InsertRules) {
  const HostGraph g = path_graph(4);
  Configuration c(g);
  EXPECT_TRUE(c.try_insert(uniform_polymer({0}, 1), 0.0));
  EXPECT_FALSE(c.try_insert(uniform_polymer({0, 1}, 1), 0.0));
  EXPECT_FALSE(c.try_insert(uniform_polymer({1}, 1), 0.0));
  EXPECT_EQ(c.num_polymers(), 1u);
  EXPECT_TRUE(c.try_insert(uniform_polymer({2, 3}, 1), 0.0));
  EXPECT_EQ(c.covered_vertices(), 3u);
  ASSERT_NE(c.covering(3), nullptr);
  EXPECT_EQ(c.covering(3)->support, (std::vector<Vertex>{2, 3}));
  EXPECT_EQ(c.covering(1), nullptr);
}

TEST(Configuration, InsertThenRemoveRestoresState) {
  const HostGraph g = generate_random_regular_bipartite(5, 3, 2);
  std::mt19937_64 rng(8);
  Configuration c(g);
  std::vector<Polymer> inserted;
  for (int i = 0; i < 200; ++i) {
    const Vertex v = static_cast<Vertex>(rng() % g.size());
    Polymer p = uniform_polymer({v}, 1);
    const Configuration before = c;
    if (c.try_insert(p, -1.0)) {
      const auto removed = c.remove_covering(v);
      ASSERT_TRUE(removed);
      EXPECT_EQ(*removed, p);
      EXPECT_EQ(c, before);
      EXPECT_EQ(c.covered_vertices(), before.covered_vertices());
      for (Vertex u = 0; u < g.size(); ++u) {
        EXPECT_EQ(c.covering(u) == nullptr, before.covering(u) == nullptr);
        EXPECT_EQ(c.can_insert(uniform_polymer({u}, 1)), before.can_insert(uniform_polymer({u}, 1)));
      }
      c.try_insert(p, -1.0);
    }
  }
}

TEST(Configuration, MakeRejectsIncompatible) {
  const HostGraph g = path_graph(3);
  VertexHardcoreModel m(g, 0.3);
  EXPECT_THROW(make_configuration(m, {uniform_polymer({0}, 1), uniform_polymer({1}, 1)}),
               ValidationError);
  EXPECT_THROW(make_configuration(m, {uniform_polymer({0, 1}, 1)}), ValidationError);
}

TEST(Configuration, SpinRoundTrip) {
  const HostGraph g = path_graph(5);
  DecayModel m(g, 3, 4.0);
  Polymer a{{0, 1}, {1, 2}};
  Polymer b{{3, 4}, {2, 2}};
  const Configuration c = make_configuration(m, {a, b});
  const auto spins = configuration_to_spins(c, m);
  EXPECT_EQ(spins, (std::vector<Spin>{1, 2, 0, 2, 2}));
  EXPECT_EQ(spins_to_polymers(m, spins), c.sorted_polymers());
}

TEST(PolymerModel, AllowedShape) {
  const HostGraph g = path_graph(4);
  DecayModel m(g, 3, 4.0, 2);
  EXPECT_TRUE(m.is_allowed(Polymer{{1, 2}, {1, 2}}));
  EXPECT_FALSE(m.is_allowed(Polymer{{0, 2}, {1, 1}}));        // disconnected
  EXPECT_FALSE(m.is_allowed(Polymer{{0, 1, 2}, {1, 1, 1}}));  // over cap
  EXPECT_FALSE(m.is_allowed(Polymer{{1}, {0}}));              // ground spin
  EXPECT_FALSE(m.is_allowed(Polymer{{1}, {3}}));              // out of range
  EXPECT_FALSE(m.is_allowed(Polymer{{2, 1}, {1, 1}}));        // unsorted
}

TEST(PolymerModel, LabelingsSkipGround) {
  const HostGraph g = path_graph(2);
  DecayModel m(g, 3, 4.0);
  std::vector<std::vector<Spin>> seen;
  const std::vector<Vertex> support{0, 1};
  for_each_labeling(m, support, [&](std::span<const Spin> s) { seen.emplace_back(s.begin(), s.end()); });
  const std::vector<std::vector<Spin>> expected{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(seen, expected);
}

// Reference: every connected support up to k_max times every labeling, filtered by is_allowed.
std::vector<Polymer> naive_polymers(const PolymerModel& m, std::size_t k_max) {
  const HostGraph& g = m.host();
  std::vector<Polymer> out;
  for (std::uint32_t s = 1; s < (1U << g.size()); ++s) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) > k_max) continue;
    std::vector<Vertex> support;
    for (Vertex u = 0; u < g.size(); ++u) {
      if ((s >> u) & 1U) support.push_back(u);
    }
    std::vector<Spin> spins(support.size(), 0);
    const auto q = static_cast<std::uint32_t>(m.num_spins());
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < support.size(); ++j) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t j = 0; j < support.size(); ++j) {
        spins[j] = static_cast<Spin>(c % q);
        c /= q;
      }
      Polymer p{support, spins};
      if (m.is_allowed(p)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(EnumeratePolymers, MatchesNaiveFilter) {
  for (const HostGraph& g : {path_graph(5), cycle_graph(6), complete_graph(4), star_graph(4)}) {
    for (std::size_t cap : {1, 2, 3, 6}) {
      DecayModel m(g, 3, 5.0, cap);
      for (std::size_t k : {1, 2, 4}) {
        std::vector<Polymer> got;
        for (const auto& wp : enumerate_polymers(m, k)) {
          got.push_back(wp.polymer);
          EXPECT_DOUBLE_EQ(wp.log_weight, m.log_weight(wp.polymer));
        }
        EXPECT_EQ(got, naive_polymers(m, k));
      }
    }
  }
}

TEST(EnumeratePolymers, BudgetGuard) {
  const HostGraph g = complete_graph(10);
  DecayModel m(g, 3, 5.0);
  EXPECT_THROW(enumerate_polymers(m, 10, 1000), BudgetError);
}

TEST(DecayModel, RejectsBadParameters) {
  const HostGraph g = path_graph(2);
  EXPECT_THROW(DecayModel(g, 1, 1.0), ValidationError);
  EXPECT_THROW(DecayModel(g, 2, 0.0), ValidationError);
}

}  // namespace
}  // namespace polymc
