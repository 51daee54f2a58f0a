#include <gtest/gtest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "ddwl/gf.hpp"

using namespace ddwl;

namespace {

// F_9 = F_3[t]/(t^2+1) written out by hand: (a, b) is a + b t, index a + 3b.
struct F9 {
  static std::pair<int, int> mul(std::pair<int, int> x, std::pair<int, int> y) {
    const int a = x.first * y.first - x.second * y.second;
    const int b = x.first * y.second + x.second * y.first;
    return {((a % 3) + 3) % 3, ((b % 3) + 3) % 3};
  }
  static std::uint32_t index(std::pair<int, int> x) { return x.first + 3 * x.second; }
  static std::pair<int, int> of(std::uint32_t i) { return {static_cast<int>(i % 3), static_cast<int>(i / 3)}; }
};

}  // namespace

TEST(Field, PrimeFieldArithmetic) {
  auto f = Field::of_order(3);
  EXPECT_EQ(f->mul(Fe{2}, Fe{2}), Fe{1});
  EXPECT_EQ(f->inv(Fe{2}), Fe{2});
  auto f5 = Field::of_order(5);
  EXPECT_EQ(f5->inv(Fe{2}), Fe{3});
  EXPECT_TRUE(f5->is_square(Fe{4}));
  EXPECT_FALSE(f->is_square(Fe{2}));
  EXPECT_TRUE(f->is_square(Fe{0}));
}

TEST(Field, PrimeFieldModulusIsT) {
  auto f = Field::create(3, 1);
  EXPECT_EQ(f->spec().modulus, (std::vector<std::uint32_t>{0, 1}));
}

TEST(Field, F9UsesTSquaredPlusOne) {
  auto f = Field::create(3, 2);
  EXPECT_EQ(f->spec().modulus, (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(f->mul(Fe{3}, Fe{3}), Fe{2});
}

TEST(Field, F9TablesMatchHandWrittenArithmetic) {
  auto f = Field::of_order(9);
  for (std::uint32_t a = 0; a < 9; ++a) {
    for (std::uint32_t b = 0; b < 9; ++b) {
      EXPECT_EQ(f->mul(Fe{a}, Fe{b}).index, F9::index(F9::mul(F9::of(a), F9::of(b))));
    }
  }
}

TEST(Field, NonsquareIsSmallestByEnumeration) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 25u, 27u}) {
    auto f = Field::of_order(q);
    std::set<std::uint32_t> squares;
    for (std::uint32_t a = 0; a < q; ++a) squares.insert(f->mul_reference(Fe{a}, Fe{a}).index);
    std::uint32_t expected = 0;
    while (squares.count(expected)) ++expected;
    EXPECT_EQ(find_nonsquare(*f).index, expected) << "q=" << q;
    EXPECT_EQ(squares.size(), (q + 1) / 2);
  }
  EXPECT_EQ(find_nonsquare(*Field::of_order(3)), Fe{2});
  EXPECT_EQ(find_nonsquare(*Field::of_order(5)), Fe{2});
}

TEST(Field, RejectsBadOrders) {
  EXPECT_THROW(Field::create(2, 1), std::invalid_argument);
  EXPECT_THROW(Field::of_order(4), std::invalid_argument);
  EXPECT_THROW(Field::of_order(15), std::invalid_argument);
  EXPECT_THROW(Field::of_order(2187), std::invalid_argument);
  EXPECT_THROW(Field::of_order(3)->inv(Fe{0}), std::domain_error);
  EXPECT_THROW(Field::of_order(3)->at(3), std::out_of_range);
}

TEST(Field, AxiomsHoldExhaustively) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 27u}) {
    auto f = Field::of_order(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      const Fe x{a};
      EXPECT_EQ(f->add(x, f->zero()), x);
      EXPECT_EQ(f->sub(x, x), f->zero());
      if (a != 0) EXPECT_EQ(f->mul(x, f->inv(x)), f->one());
      EXPECT_EQ(f->pow(x, q), x);
      for (std::uint32_t b = 0; b < q; ++b) {
        const Fe y{b};
        ASSERT_EQ(f->mul(x, y), f->mul_reference(x, y));
        for (std::uint32_t c = 0; c < q; ++c) {
          const Fe z{c};
          ASSERT_EQ(f->mul(x, f->add(y, z)), f->add(f->mul(x, y), f->mul(x, z)));
        }
      }
    }
  }
}

TEST(Field, CoefficientRoundTrip) {
  auto f = Field::of_order(27);
  for (std::uint32_t a = 0; a < 27; ++a) {
    const auto c = f->coeffs(Fe{a});
    EXPECT_EQ(c[0] + 3 * c[1] + 9 * c[2], a);
    EXPECT_EQ(f->element(c), Fe{a});
  }
}

TEST(Field, IrreducibilityScan) {
  EXPECT_TRUE(is_irreducible(std::vector<std::uint32_t>{1, 0, 1}, 3));
  EXPECT_FALSE(is_irreducible(std::vector<std::uint32_t>{2, 0, 1}, 3));  // t^2 - 1
  EXPECT_TRUE(is_irreducible(std::vector<std::uint32_t>{2, 1, 1}, 3));
}

TEST(Field, PrimePowers) {
  EXPECT_EQ(prime_power(9), (std::pair<std::uint32_t, std::uint32_t>{3, 2}));
  EXPECT_EQ(prime_power(7), (std::pair<std::uint32_t, std::uint32_t>{7, 1}));
  EXPECT_FALSE(prime_power(15));
  EXPECT_FALSE(prime_power(1));
}

TEST(FieldElement, MixingFieldsThrows) {
  auto f3 = Field::of_order(3);
  auto f5 = Field::of_order(5);
  FieldElement a(f3, Fe{1});
  FieldElement b(f5, Fe{1});
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_EQ((a + a).value(), Fe{2});
}
