#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "ddwl/coherent.hpp"
#include "ddwl/construction.hpp"

using namespace ddwl;

namespace {

Digraph random_digraph(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution arc(p);
  Digraph g(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) g.set_arc(u, v, arc(rng));
  }
  return g;
}

// Textbook 2-WL: recolor by (old color, sorted multiset of (c(u,w), c(w,v))),
// until the partition stops splitting. Returns a partition of pairs.
std::vector<int> naive_wl(const Digraph& g) {
  const std::uint32_t n = g.size();
  std::vector<int> c(n * n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) c[u * n + v] = (u == v ? 2 : 0) + (g.has_arc(u, v) ? 1 : 0);
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> names;
    std::vector<int> next(n * n);
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::pair<int, int>> sig;
        for (std::uint32_t w = 0; w < n; ++w) sig.emplace_back(c[u * n + w], c[w * n + v]);
        std::sort(sig.begin(), sig.end());
        auto key = std::make_pair(c[u * n + v], std::move(sig));
        auto it = names.emplace(std::move(key), static_cast<int>(names.size())).first;
        next[u * n + v] = it->second;
      }
    }
    c = std::move(next);
    if (names.size() == classes) return c;
    classes = names.size();
  }
}

bool same_partition(const std::vector<int>& a, const std::vector<Color>& b) {
  std::map<int, Color> fwd;
  std::map<Color, int> back;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (fwd.emplace(a[k], b[k]).first->second != b[k]) return false;
    if (back.emplace(b[k], a[k]).first->second != a[k]) return false;
  }
  return true;
}

}  // namespace

TEST(WlKernels, ParallelMatchesReference) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Digraph g = random_digraph(14 + seed, 0.3, seed);
    RefinementTrace a, b;
    const PairColoring pa = stabilize(initial_coloring(g), Kernel::parallel, &a);
    const PairColoring pb = stabilize(initial_coloring(g), Kernel::reference, &b);
    EXPECT_EQ(pa.color, pb.color);
    EXPECT_EQ(pa.rank, pb.rank);
    EXPECT_EQ(a, b);
  }
  const Digraph gamma = Family::of_order(3).build_cayley(Fe{1});
  RefinementTrace a, b;
  EXPECT_EQ(stabilize(initial_coloring(gamma), Kernel::parallel, &a).color,
            stabilize(initial_coloring(gamma), Kernel::reference, &b).color);
  EXPECT_EQ(a, b);
}

TEST(WlKernels, AgreesWithNaiveRefinement) {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const Digraph g = random_digraph(12, 0.25, seed);
    EXPECT_TRUE(same_partition(naive_wl(g), wl_close(g).coloring().color)) << "seed " << seed;
  }
  const Digraph cyc = Digraph::directed_cycle(9);
  EXPECT_TRUE(same_partition(naive_wl(cyc), wl_close(cyc).coloring().color));
}

TEST(Coherent, CompleteDigraphHasRankTwo) {
  const auto cc = wl_close(Digraph::complete(7), TensorCheck::full);
  EXPECT_EQ(cc.rank(), 2u);
  EXPECT_EQ(cc.fibers().size(), 1u);
}

TEST(Coherent, DirectedCycleIsCyclicScheme) {
  const auto cc = wl_close(Digraph::directed_cycle(8), TensorCheck::full);
  EXPECT_EQ(cc.rank(), 8u);
  for (Color s = 0; s < cc.rank(); ++s) EXPECT_EQ(cc.valency(s), 1u);
}

TEST(Coherent, GammaClosureIsCyclotomicRing) {
  const Family fam = Family::of_order(3);
  for (Fe i : fam.generators_I()) {
    const auto cc = wl_close(fam.build_cayley(i), TensorCheck::full);
    EXPECT_EQ(cc.rank(), 5u);
    EXPECT_EQ(as_sring_partition(cc, fam.group()), normalized(fam.basic_sets()));
    EXPECT_EQ(cc.color(0, 0), cc.color(5, 5));
  }
  const auto c0 = wl_close(fam.build_cayley(Fe{0}));
  EXPECT_LT(c0.rank(), 5u);
}

TEST(Coherent, ValenciesAndConverses) {
  const auto cc = wl_close(Family::of_order(3).build_cayley(Fe{1}));
  const std::uint32_t n = cc.n();
  for (Color s = 0; s < cc.rank(); ++s) {
    EXPECT_EQ(cc.converse(cc.converse(s)), s);
    EXPECT_EQ(cc.valency(s), cc.valency(cc.converse(s)));
  }
  std::vector<std::uint64_t> row(cc.rank(), 0);
  for (std::uint32_t v = 0; v < n; ++v) ++row[cc.color(0, v)];
  for (Color s = 0; s < cc.rank(); ++s) EXPECT_EQ(row[s], cc.valency(s));
}

TEST(Coherent, RelabelingInvariance) {
  const Digraph g = Family::of_order(3).build_cayley(Fe{2});
  const auto cc = wl_close(g);
  std::mt19937_64 rng(99);
  for (int r = 0; r < 10; ++r) {
    std::vector<std::uint32_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto other = wl_close(g.permuted(perm));
    EXPECT_EQ(other.tensor_json(), cc.tensor_json());
    for (std::uint32_t u = 0; u < g.size(); ++u) {
      for (std::uint32_t v = 0; v < g.size(); ++v) ASSERT_EQ(other.color(perm[u], perm[v]), cc.color(u, v));
    }
  }
}

TEST(Coherent, RejectsIncoherentColoring) {
  std::vector<Color> ids(16, 1);
  for (std::uint32_t v = 0; v < 4; ++v) ids[v * 4 + v] = 0;
  ids[0 * 4 + 1] = 2;
  EXPECT_THROW(CoherentConfiguration(coloring_from_ids(4, ids)), std::logic_error);
}

TEST(Coherent, OnePointExtensionOfComplete) {
  const auto cc = wl_close(Digraph::complete(6));
  const auto ext = one_point_extension(cc, 2);
  ASSERT_EQ(ext.fibers().size(), 2u);
  auto fibers = ext.fibers();
  std::sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  EXPECT_EQ(fibers[0], (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(fibers[1], (std::vector<std::uint32_t>{0, 1, 3, 4, 5}));
}

TEST(Coherent, WlEquivalence) {
  const Family fam = Family::of_order(3);
  const Digraph g1 = fam.build_cayley(Fe{1});
  const Digraph g2 = fam.build_cayley(Fe{2});
  EXPECT_TRUE(wl_equivalent(g1, g1).equivalent);
  EXPECT_TRUE(wl_equivalent(g1, g2).equivalent);
  EXPECT_FALSE(wl_equivalent(g1, Digraph::complete(27)).equivalent);
  EXPECT_EQ(wl_equivalent(g1, g2, Kernel::reference).equivalent, true);
  EXPECT_THROW(wl_equivalent(g1, Digraph::complete(5)), std::invalid_argument);
}

TEST(Coherent, AlgebraicMaps) {
  const auto cc = wl_close(Family::of_order(3).build_cayley(Fe{1}));
  std::vector<Color> id(cc.rank());
  std::iota(id.begin(), id.end(), 0u);
  EXPECT_TRUE(verify_algebraic_map(cc, cc, id));
  Color small = 0, big = 0;
  for (Color s = 0; s < cc.rank(); ++s) {
    if (cc.valency(s) < cc.valency(small)) small = s;
    if (cc.valency(s) > cc.valency(big)) big = s;
  }
  ASSERT_NE(cc.valency(small), cc.valency(big));
  std::swap(id[small], id[big]);
  EXPECT_FALSE(verify_algebraic_map(cc, cc, id));
  EXPECT_THROW(verify_algebraic_map(cc, cc, std::vector<Color>(cc.rank(), 0)), std::invalid_argument);
}
