#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "capdigits/zp.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace capdigits;

TEST(Prime, AcceptsPrimesFromFive) {
  EXPECT_EQ(Prime(5).value(), 5);
  EXPECT_EQ(Prime(101).value(), 101);
  EXPECT_THROW(Prime(3), std::invalid_argument);
  EXPECT_THROW(Prime(9), std::invalid_argument);
  EXPECT_THROW(Prime(-7), std::invalid_argument);
}

TEST(Zp, InverseAndMod) {
  EXPECT_EQ(mod(-3, 11), 8);
  EXPECT_EQ(inverse_mod(9, 11), 5);
  EXPECT_EQ(inverse_mod(15, 17), 8);
  EXPECT_THROW(inverse_mod(0, 7), std::domain_error);
}

TEST(DigitSetPair, Validates) {
  const DigitSetPair pair(Prime(11), {5, 0, 4, 1, 3}, {3, 0, 1});
  EXPECT_EQ(pair.digits(), (DigitSet{0, 1, 3, 4, 5}));
  EXPECT_EQ(pair.fixed(), (DigitSet{0, 1, 3}));
  EXPECT_TRUE(pair.is_fixed(3));
  EXPECT_FALSE(pair.is_fixed(4));
  EXPECT_THROW(DigitSetPair(Prime(11), {0}, {0}), std::invalid_argument);
  EXPECT_THROW(DigitSetPair(Prime(11), {0, 1, 1}, {0}), std::invalid_argument);
  EXPECT_THROW(DigitSetPair(Prime(11), {0, 11}, {0}), std::invalid_argument);
  EXPECT_THROW(DigitSetPair(Prime(11), {0, 1}, {2}), std::invalid_argument);
}

TEST(LineEquation, Examples) {
  const auto e9 = make_line_equation(Prime(11), 9);
  EXPECT_EQ(e9.c, 1);
  EXPECT_EQ(describe(e9), "x + z = 2y");
  const auto e8 = make_line_equation(Prime(11), 8);
  EXPECT_EQ(e8.c, 2);
  EXPECT_EQ(describe(e8), "x + 2z = 3y");
  EXPECT_THROW(make_line_equation(Prime(5), 0), std::invalid_argument);
  EXPECT_THROW(make_line_equation(Prime(5), 4), std::invalid_argument);
}

TEST(LineEquation, MovesAreInvolutions) {
  for (int p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
    const Prime q(p);
    for (int b = 1; b <= p - 2; ++b) {
      const auto eq = make_line_equation(q, b);
      EXPECT_EQ(mod(eq.b + eq.c + 1, p), 0);
      const auto swapped = make_line_equation(q, swap_coefficient(eq));
      EXPECT_EQ(swap_coefficient(swapped), b);
      const auto mirrored = make_line_equation(q, mirror_coefficient(eq));
      EXPECT_EQ(mirror_coefficient(mirrored), b);
    }
  }
}

TEST(EquationClasses, ElevenHasTwoClasses) {
  const auto part = equation_classes(Prime(11));
  ASSERT_EQ(part.classes.size(), 2u);
  EXPECT_EQ(part.classes[0].members, (std::vector<int>{1, 5, 9}));
  EXPECT_EQ(part.classes[1].members, (std::vector<int>{2, 3, 4, 6, 7, 8}));
  EXPECT_EQ(part.representatives(), (std::vector<int>{1, 2}));
  EXPECT_EQ(part.class_index(9), 0u);
  EXPECT_EQ(part.class_index(8), 1u);
}

TEST(EquationClasses, PartitionAgreesWithClosureOracle) {
  for (int p = 5; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const auto part = equation_classes(Prime(p));
    const auto expected = oracle::equation_classes(p);
    ASSERT_EQ(part.classes.size(), expected.size()) << "p=" << p;
    std::set<int> all;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const std::set<int> got(part.classes[i].members.begin(), part.classes[i].members.end());
      EXPECT_EQ(got, expected[i]) << "p=" << p;
      EXPECT_EQ(part.classes[i].representative, *expected[i].begin());
      all.insert(got.begin(), got.end());
    }
    EXPECT_EQ(all.size(), static_cast<std::size_t>(p - 2));
  }
}

TEST(EquationClasses, CountForPrimesFiveModSix) {
  for (int p : {5, 11, 17, 23, 29, 41}) {
    EXPECT_EQ(equation_classes(Prime(p)).classes.size(), static_cast<std::size_t>((p + 1) / 6)) << p;
  }
}

TEST(EquationClasses, MatchPrintedLists) {
  const auto golden = load_golden("equation_classes.json");
  for (const auto& [key, printed] : golden.items()) {
    const int p = std::stoi(key);
    const auto part = equation_classes(Prime(p));
    std::set<std::set<int>> expected, got;
    for (const auto& cls : printed) {
      std::set<int> bs;
      for (const auto& k : cls) bs.insert(b_from_z_coefficient(p, k.get<int>()));
      expected.insert(bs);
    }
    for (const auto& cls : part.classes) got.insert(std::set<int>(cls.members.begin(), cls.members.end()));
    EXPECT_EQ(got, expected) << "p=" << p;
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_digit_set(std::vector{2, 5, 8}, Prime(11)), (DigitSet{0, 1, 2}));
  EXPECT_EQ(normalize_digit_set(std::vector{0, 1}, Prime(5)), (DigitSet{0, 1}));
  EXPECT_EQ(normalize_digit_set(std::vector{0, 1, 3}, Prime(5)), (DigitSet{0, 1, 2}));
  EXPECT_THROW(normalize_digit_set(std::vector{4}, Prime(5)), std::invalid_argument);
}

TEST(Normalize, AgreesWithOrbitOracleAndIsIdempotent) {
  std::mt19937 rng(7);
  for (int p : {5, 7, 11, 13, 17, 23}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> all(p);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      const int k = 2 + static_cast<int>(rng() % std::min(6, p - 2));
      std::vector<int> d(all.begin(), all.begin() + k);
      const auto nf = normalize_digit_set(d, Prime(p));
      std::sort(d.begin(), d.end());
      EXPECT_EQ(nf, oracle::normal_form(d, p));
      EXPECT_EQ(normalize_digit_set(nf, Prime(p)), nf);
      EXPECT_TRUE(is_normal_form(nf, Prime(p)));
      EXPECT_EQ(is_normal_form(d, Prime(p)), d == nf);
      for (const auto& img : oracle::affine_orbit(d, p)) {
        ASSERT_EQ(normalize_digit_set(img, Prime(p)), nf);
      }
    }
  }
}
