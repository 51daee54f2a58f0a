#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ddwl/construction.hpp"
#include "ddwl/isotest.hpp"

using namespace ddwl;

namespace {

Digraph random_digraph(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution arc(p);
  Digraph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u != v) g.set_arc(u, v, arc(rng));
    }
  }
  return g;
}

bool maps(const Digraph& a, const Digraph& b, const std::vector<std::uint32_t>& p) {
  for (std::uint32_t u = 0; u < a.size(); ++u) {
    for (std::uint32_t v = 0; v < a.size(); ++v) {
      if (a.has_arc(u, v) != b.has_arc(p[u], p[v])) return false;
    }
  }
  return true;
}

// Every permutation: (isomorphic?, |Aut(a)|).
std::pair<bool, std::uint64_t> brute(const Digraph& a, const Digraph& b) {
  std::vector<std::uint32_t> p(a.size());
  std::iota(p.begin(), p.end(), 0u);
  bool iso = false;
  std::uint64_t aut = 0;
  do {
    iso = iso || maps(a, b, p);
    aut += maps(a, a, p);
  } while (std::next_permutation(p.begin(), p.end()));
  return {iso, aut};
}

std::vector<std::uint32_t> shuffled(std::uint32_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(Isotest, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::uint32_t n = 5 + seed % 3;
    const Digraph a = random_digraph(n, 0.35, seed);
    const Digraph b = seed % 2 ? a.permuted(shuffled(n, seed + 100)) : random_digraph(n, 0.35, seed + 1000);
    const auto [iso, aut] = brute(a, b);
    const IsoCertificate cert = are_isomorphic(a, b);
    EXPECT_EQ(cert.status, iso ? IsoStatus::isomorphic : IsoStatus::non_isomorphic) << "seed " << seed;
    if (iso) EXPECT_TRUE(is_isomorphism(a, b, cert.mapping));
    const AutomorphismGroup g = automorphism_group(a);
    ASSERT_TRUE(g.determined);
    EXPECT_EQ(g.order, aut) << "seed " << seed;
  }
}

TEST(Isotest, ClassicalOrders) {
  EXPECT_EQ(automorphism_group(Digraph::complete(5)).order, 120u);
  EXPECT_EQ(automorphism_group(Digraph::complete(8)).order, 40320u);
  EXPECT_EQ(automorphism_group(Digraph::directed_cycle(9)).order, 9u);
  EXPECT_EQ(automorphism_group(Digraph::directed_cycle(12)).order, 12u);
}

TEST(Isotest, GammaSelfAndPermuted) {
  const Family fam = Family::of_order(3);
  const Digraph g = fam.build_cayley(Fe{1});
  const auto self = are_isomorphic(g, g);
  EXPECT_EQ(self.status, IsoStatus::isomorphic);
  const Digraph h = g.permuted(shuffled(27, 5));
  const auto cert = are_isomorphic(g, h);
  ASSERT_EQ(cert.status, IsoStatus::isomorphic);
  EXPECT_TRUE(is_isomorphism(g, h, cert.mapping));
  EXPECT_EQ(cert.to_json()["type"], "isomorphic");
}

TEST(Isotest, GammaAutomorphismOrder) {
  const Family fam = Family::of_order(3);
  for (Fe i : fam.generators_I()) {
    const auto aut = automorphism_group(fam.build_cayley(i));
    ASSERT_TRUE(aut.determined);
    EXPECT_EQ(aut.order, 216u);
    for (const auto& p : aut.generators) EXPECT_TRUE(is_isomorphism(fam.build_cayley(i), fam.build_cayley(i), p));
  }
}

TEST(Isotest, NonIsomorphicByInvariant) {
  const auto cert = are_isomorphic(Digraph::complete(6), Digraph::directed_cycle(6));
  EXPECT_EQ(cert.status, IsoStatus::non_isomorphic);
  EXPECT_FALSE(cert.invariant_diff.empty());
  EXPECT_FALSE(cert.to_json().contains("mapping"));
}

TEST(Isotest, ClassCount) {
  const Digraph g = random_digraph(9, 0.4, 3);
  const std::vector<Digraph> copies{g, g.permuted(shuffled(9, 1)), g.permuted(shuffled(9, 2))};
  const auto res = iso_class_count(copies);
  EXPECT_TRUE(res.exact);
  EXPECT_EQ(res.classes, 1u);

  const std::vector<Digraph> mixed{Digraph::complete(6), Digraph::directed_cycle(6), Digraph::complete(6)};
  const auto r2 = iso_class_count(mixed);
  EXPECT_EQ(r2.classes, 2u);
  EXPECT_EQ(r2.class_of[0], r2.class_of[2]);
  EXPECT_NE(r2.class_of[0], r2.class_of[1]);
}

TEST(Isotest, GammaClassesAtThree) {
  const Family fam = Family::of_order(3);
  std::vector<Digraph> graphs;
  for (Fe i : fam.generators_I()) graphs.push_back(fam.build_cayley(i));
  const auto res = iso_class_count(graphs);
  EXPECT_TRUE(res.exact);
  EXPECT_GE(res.classes, 1u);
}

TEST(Isotest, BudgetGivesUndetermined) {
  const auto aut = automorphism_group(Digraph::complete(9), SearchOptions{2});
  EXPECT_FALSE(aut.determined);
}

TEST(Isotest, ColoredSearchRespectsColors) {
  // Two 2-colorings of a 4-cycle's pairs: same shape, different palettes.
  std::vector<Color> a(16, 0), b(16, 0);
  for (std::uint32_t u = 0; u < 4; ++u) {
    a[u * 4 + (u + 1) % 4] = 1;
    b[u * 4 + (u + 1) % 4] = 2;
    a[u * 4 + u] = b[u * 4 + u] = 3;
  }
  SearchGraph ga(coloring_from_ids(4, a));
  SearchGraph gb(coloring_from_ids(4, b));
  SearchGraph ga2(coloring_from_ids(4, a));
  EXPECT_EQ(are_isomorphic(ga, gb).status, IsoStatus::non_isomorphic);
  EXPECT_EQ(are_isomorphic(ga, ga2).status, IsoStatus::isomorphic);
}
