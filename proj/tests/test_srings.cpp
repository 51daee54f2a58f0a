#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ddwl/construction.hpp"
#include "ddwl/srings.hpp"

using namespace ddwl;

namespace {

// c[X][Y][Z] by counting all (x, y) in X x Y with xy equal to the first element of Z.
std::uint64_t brute_constant(const SRing& ring, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  const auto& g = ring.group();
  const std::uint32_t target = ring.cell(z).front();
  std::uint64_t c = 0;
  for (std::uint32_t a : ring.cell(x)) {
    for (std::uint32_t b : ring.cell(y)) c += g.mul_index(a, b) == target;
  }
  return c;
}

}  // namespace

TEST(SRing, CyclotomicLayout) {
  const Family fam = Family::of_order(5);
  const SRing ring = SRing::cyclotomic(fam);
  EXPECT_EQ(ring.rank(), 7u);
  EXPECT_EQ(ring.name(0), "{e}");
  EXPECT_EQ(ring.name(6), "Z#");
  EXPECT_EQ(ring.cell(0), (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(ring.inverse_cell(fam.cell_of_Y(Fe{1})), fam.cell_of_Y(Fe{4}));
  EXPECT_EQ(ring.inverse_cell(fam.cell_of_Y(Fe{0})), fam.cell_of_Y(Fe{0}));
}

TEST(SRing, RejectsBadPartitions) {
  const Family fam = Family::of_order(3);
  Partition cells = fam.basic_sets();
  std::swap(cells[0], cells[1]);
  EXPECT_THROW(SRing(fam.group(), cells, std::vector<std::string>(cells.size(), "x")), std::invalid_argument);
  Partition merged = fam.basic_sets();
  merged[1].insert(merged[1].end(), merged[2].begin(), merged[2].end());
  std::sort(merged[1].begin(), merged[1].end());
  merged.erase(merged.begin() + 2);
  EXPECT_THROW(SRing(fam.group(), merged, std::vector<std::string>(merged.size(), "x")), std::invalid_argument);
}

TEST(StructureConstants, AllModesMatchBruteForce) {
  for (std::uint32_t q : {3u, 5u}) {
    const Family fam = Family::of_order(q);
    const SRing ring = SRing::cyclotomic(fam);
    const auto full = structure_constants(ring, ConstantsMode::full);
    for (std::uint32_t x = 0; x < ring.rank(); ++x) {
      for (std::uint32_t y = 0; y < ring.rank(); ++y) {
        for (std::uint32_t z = 0; z < ring.rank(); ++z) ASSERT_EQ(full.at(x, y, z), brute_constant(ring, x, y, z));
      }
    }
    EXPECT_EQ(structure_constants(ring, ConstantsMode::representative), full);
    EXPECT_EQ(structure_constants(ring, ConstantsMode::sampled), full);
    if (q == 3) EXPECT_EQ(structure_constants(ring, ConstantsMode::full_convolution), full);
  }
}

TEST(StructureConstants, RejectsNonRing) {
  const Family fam = Family::of_order(3);
  // Y_0 with two central elements glued on is inverse-closed but not a basic set.
  const std::uint32_t z1 = 1, z2 = 2;
  auto merged = fam.basic_sets();
  merged[fam.cell_of_Y(Fe{0})].push_back(z1);
  merged[fam.cell_of_Y(Fe{0})].push_back(z2);
  std::sort(merged[fam.cell_of_Y(Fe{0})].begin(), merged[fam.cell_of_Y(Fe{0})].end());
  auto& zc2 = merged[fam.cell_of_center()];
  zc2.erase(std::remove_if(zc2.begin(), zc2.end(), [&](std::uint32_t v) { return v == z1 || v == z2; }), zc2.end());
  merged.erase(merged.begin() + fam.cell_of_center());
  const SRing bad(fam.group(), merged, std::vector<std::string>(merged.size(), "c"));
  EXPECT_THROW(structure_constants(bad, ConstantsMode::full), std::logic_error);
}

TEST(StructureConstants, ClosedFormExamples) {
  const Family f5 = Family::of_order(5);
  const auto t5 = structure_constants(SRing::cyclotomic(f5), ConstantsMode::full);
  EXPECT_EQ(t5.at(f5.cell_of_Y(Fe{1}), f5.cell_of_Y(Fe{1}), f5.cell_of_Y(Fe{1})), 4u);
  EXPECT_EQ(t5.at(f5.cell_of_Y(Fe{1}), f5.cell_of_Y(Fe{4}), f5.cell_of_center()), 0u);
  EXPECT_EQ(t5.at(f5.cell_of_Y(Fe{1}), f5.cell_of_Y(Fe{2}), f5.cell_of_center()), 6u);
  EXPECT_EQ(t5.at(f5.cell_of_Y(Fe{1}), f5.cell_of_Y(Fe{4}), f5.cell_of_Y(Fe{2})), 5u);
  for (std::uint32_t x = 0; x < t5.rank(); ++x) EXPECT_EQ(t5.at(0, x, x), 1u);

  const Family f3 = Family::of_order(3);
  const auto t3 = structure_constants(SRing::cyclotomic(f3), ConstantsMode::full_convolution);
  EXPECT_EQ(t3.at(f3.cell_of_Y(Fe{0}), f3.cell_of_Y(Fe{0}), f3.cell_of_Y(Fe{0})), 1u);
  EXPECT_TRUE(verify_consts(f3, t3).ok());
}

TEST(StructureConstants, UnitEntryFollowsInverseOf16Epsilon) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Family fam = Family::of_order(q);
    const Field& f = fam.field();
    const auto t = structure_constants(SRing::cyclotomic(fam), ConstantsMode::full);
    const auto delta = fitted_delta(fam, t);
    ASSERT_TRUE(delta);
    EXPECT_EQ(*delta, f.inv(f.mul(f.from_int(16), fam.epsilon())));
    const PsiGroup fitted(fam.field_ptr(), fam.epsilon(), *delta);
    EXPECT_TRUE(verify_consts(fam, fitted, t).ok()) << "q=" << q;
  }
}

TEST(StructureConstants, TriangleAndMass) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto t = structure_constants(SRing::cyclotomic(Family::of_order(q)), ConstantsMode::representative);
    EXPECT_TRUE(triangle_violations(t).empty());
    EXPECT_TRUE(mass_violations(t).empty());
  }
}

TEST(Transversal, DifferenceSetIdentity) {
  for (std::uint32_t q : {3u, 5u}) {
    const Family fam = Family::of_order(q);
    for (std::uint32_t i = 0; i < q; ++i) {
      const auto rep = verify_transversal(fam, Fe{i});
      EXPECT_TRUE(rep.ok());
      EXPECT_EQ(rep.left_at_e, std::uint64_t{q} * q);
      EXPECT_EQ(rep.left_on_center, (std::vector<std::uint64_t>{0}));
      EXPECT_EQ(rep.left_off_center, (std::vector<std::uint64_t>{q}));
    }
  }
}

TEST(AlgebraicAutomorphisms, SmallCases) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Family fam = Family::of_order(q);
    const auto t = structure_constants(SRing::cyclotomic(fam), ConstantsMode::representative);
    const auto maps = algebraic_automorphisms(t);
    EXPECT_GE(maps.size(), euler_phi(q + 1));
    EXPECT_TRUE(is_group(maps));
    for (const auto& m : maps) EXPECT_TRUE(preserves_constants(t, m));
    CellMap id(t.rank());
    std::iota(id.begin(), id.end(), 0u);
    EXPECT_EQ(tau_hat(fam, 1), id);
  }
  const Family f3 = Family::of_order(3);
  EXPECT_THROW(tau_hat(f3, 2), std::invalid_argument);
}

TEST(AlgebraicAutomorphisms, PowerMapsOfFittedGroupArePreserved) {
  const Family fam = Family::of_order(5);
  const Field& f = fam.field();
  const auto t = structure_constants(SRing::cyclotomic(fam), ConstantsMode::representative);
  const PsiGroup fitted(fam.field_ptr(), fam.epsilon(), f.inv(f.mul(f.from_int(16), fam.epsilon())));
  for (std::int64_t m : psi_automorphism_exponents(5)) EXPECT_TRUE(preserves_constants(t, tau_hat(fam, fitted, m)));
}

TEST(SRing, CayleyColoringIsCoherentInput) {
  const Family fam = Family::of_order(3);
  const SRing ring = SRing::cyclotomic(fam);
  const PairColoring c = ring.cayley_coloring();
  EXPECT_EQ(c.rank, 5u);
  for (std::uint32_t v = 0; v < 27; ++v) EXPECT_EQ(c.at(0, v), ring.cell_of(v));
}
