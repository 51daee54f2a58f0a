#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ddwl/heisenberg.hpp"

using namespace ddwl;

namespace {

// 3x3 upper unitriangular matrices over Z_p, product by the matrix formula.
using Mat = std::array<std::array<int, 3>, 3>;

Mat matrix(const GroupElement& g) {
  return {{{1, static_cast<int>(g.x.index), static_cast<int>(g.z.index)},
           {0, 1, static_cast<int>(g.y.index)},
           {0, 0, 1}}};
}

Mat product(const Mat& a, const Mat& b, int p) {
  Mat c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s % p;
    }
  }
  return c;
}

}  // namespace

TEST(Heisenberg, MatchesMatrixProduct) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    Heisenberg g(Field::of_order(p));
    for (std::uint32_t a = 0; a < g.order(); ++a) {
      for (std::uint32_t b = 0; b < g.order(); b += 3) {
        const auto m = product(matrix(g.element(a)), matrix(g.element(b)), static_cast<int>(p));
        EXPECT_EQ(m, matrix(g.element(g.mul_index(a, b))));
      }
    }
  }
}

TEST(Heisenberg, Examples) {
  auto f = Field::of_order(3);
  Heisenberg g(f);
  const GroupElement x{Fe{1}, Fe{0}, Fe{0}};
  const GroupElement y{Fe{0}, Fe{1}, Fe{0}};
  EXPECT_EQ(g.mul(x, y), (GroupElement{Fe{1}, Fe{1}, Fe{1}}));
  EXPECT_EQ(g.inv(GroupElement{Fe{1}, Fe{1}, Fe{0}}), (GroupElement{Fe{2}, Fe{2}, Fe{1}}));
  EXPECT_EQ(g.inv(g.identity()), g.identity());
  EXPECT_EQ(g.inv(GroupElement{Fe{0}, Fe{0}, Fe{1}}), (GroupElement{Fe{0}, Fe{0}, Fe{2}}));
  EXPECT_TRUE(g.is_central(GroupElement{Fe{0}, Fe{0}, Fe{1}}));
  EXPECT_FALSE(g.is_central(x));
}

TEST(Heisenberg, CenterAndCosets) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    Heisenberg g(Field::of_order(q));
    EXPECT_EQ(g.center().size(), q);
    std::set<std::uint32_t> ids;
    for (std::uint32_t v = 0; v < g.order(); ++v) {
      ids.insert(g.coset_of_index(v));
      EXPECT_EQ(g.coset_of_index(v), g.coset_id(g.element(v)));
      for (std::uint32_t z : g.center_indices()) EXPECT_EQ(g.mul_index(v, z), g.mul_index(z, v));
    }
    EXPECT_EQ(ids.size(), std::size_t{q} * q);
  }
}

TEST(Heisenberg, GroupAxiomsSampled) {
  Heisenberg g(Field::of_order(9));
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
  for (int s = 0; s < 2000; ++s) {
    const auto a = pick(rng), b = pick(rng), c = pick(rng);
    EXPECT_EQ(g.mul_index(g.mul_index(a, b), c), g.mul_index(a, g.mul_index(b, c)));
    EXPECT_EQ(g.mul_index(a, g.inv_index(a)), 0u);
  }
}

TEST(Heisenberg, IndexRoundTrip) {
  Heisenberg g(Field::of_order(5));
  for (std::uint32_t v = 0; v < g.order(); ++v) {
    const auto e = g.element(v);
    EXPECT_EQ(g.index(e), v);
    EXPECT_EQ(v, e.x.index * 25 + e.y.index * 5 + e.z.index);
  }
}
