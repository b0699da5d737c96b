#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "spncheck/gf2lin.hpp"

using namespace spncheck::gf2;

namespace {

// Point set of a span by closure under XOR, independent of the RREF code.
std::set<unsigned> closure(const std::vector<unsigned>& gens) {
  std::set<unsigned> pts{0};
  for (bool grew = true; grew;) {
    grew = false;
    for (unsigned p : std::vector<unsigned>(pts.begin(), pts.end()))
      for (unsigned g : gens)
        if (pts.insert(p ^ g).second) grew = true;
  }
  return pts;
}

std::set<unsigned> point_set(const Subspace& s) {
  std::set<unsigned> out;
  for (Vec p : s.points()) out.insert(static_cast<unsigned>(p));
  return out;
}

// Gaussian binomial [d choose k]_2 from the product formula.
std::uint64_t gaussian_binomial(int d, int k) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (std::uint64_t{1} << (d - i)) - 1;
    den *= (std::uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

}  // namespace

TEST(Rref, EmptySpanIsZeroSubspace) {
  auto s = rref_basis({}, 4);
  EXPECT_EQ(s.dim(), 0);
  EXPECT_EQ(s.codim(), 4);
}

TEST(Rref, ReducedForm) {
  std::vector<Vec> v{0b0011, 0b0001};
  auto s = rref_basis(v, 4);
  ASSERT_EQ(s.dim(), 2);
  EXPECT_EQ(s.basis()[0], Vec{0b0010});
  EXPECT_EQ(s.basis()[1], Vec{0b0001});
}

TEST(Rref, DependentVectorDropped) {
  std::vector<Vec> v{0b101, 0b011, 0b110};
  EXPECT_EQ(rref_basis(v, 3).dim(), 2);
}

TEST(Rref, OutOfRangeVectorRejected) {
  std::vector<Vec> v{0b10000};
  EXPECT_THROW(rref_basis(v, 4), std::invalid_argument);
}

TEST(Rref, IdempotentAndShuffleInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 12);
    std::vector<Vec> v(rng() % 10);
    for (auto& x : v) x = static_cast<Vec>(rng()) & low_mask(d);
    const auto s = rref_basis(v, d);
    EXPECT_EQ(rref_basis(s.basis(), d), s);
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(rref_basis(v, d), s);
    for (std::size_t i = 1; i < s.basis().size(); ++i)
      EXPECT_GT(highest_bit(s.basis()[i - 1]), highest_bit(s.basis()[i]));
  }
}

TEST(Rref, WideVectors) {
  std::vector<Vec> v{unit(127) | unit(3), unit(127), unit(64)};
  auto s = rref_basis(v, 128);
  ASSERT_EQ(s.dim(), 3);
  EXPECT_EQ(s.basis()[0], unit(127));
  EXPECT_EQ(s.basis()[1], unit(64));
  EXPECT_EQ(s.basis()[2], unit(3));
}

TEST(Contains, Basics) {
  std::vector<Vec> one{0b01};
  auto s = rref_basis(one, 2);
  EXPECT_TRUE(contains(s, 0b01));
  EXPECT_FALSE(contains(s, 0b10));
  EXPECT_TRUE(contains(Subspace(3), 0));
  EXPECT_THROW(contains(s, 0b100), std::invalid_argument);
}

TEST(Contains, MatchesClosureExhaustively) {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 6; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<unsigned> gens(rng() % 5);
      for (auto& g : gens) g = static_cast<unsigned>(rng() & ((1u << d) - 1));
      const auto pts = closure(gens);
      const auto s = rref_basis(std::vector<Vec>(gens.begin(), gens.end()), d);
      for (unsigned v = 0; v < (1u << d); ++v) EXPECT_EQ(contains(s, v), pts.count(v) == 1);
      EXPECT_EQ(point_set(s), pts);
    }
}

TEST(Intersect, FullSpaceIsIdentity) {
  std::vector<Vec> v{0b0110, 0b1000};
  auto b = rref_basis(v, 4);
  EXPECT_EQ(intersect(Subspace::full(4), b), b);
}

TEST(Intersect, SmallExample) {
  std::vector<Vec> av{0b01, 0b10}, bv{0b10, 0b100};
  const auto r = intersect(rref_basis(av, 3), rref_basis(bv, 3));
  std::vector<Vec> expect{0b10};
  EXPECT_EQ(r, rref_basis(expect, 3));
}

TEST(Intersect, DimensionMismatch) {
  EXPECT_THROW(intersect(Subspace(3), Subspace(4)), std::invalid_argument);
}

TEST(Intersect, MatchesPointSetIntersection) {
  std::mt19937_64 rng(17);
  for (int d = 1; d <= 6; ++d)
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Vec> av(rng() % (d + 1)), bv(rng() % (d + 1));
      for (auto& x : av) x = static_cast<Vec>(rng()) & low_mask(d);
      for (auto& x : bv) x = static_cast<Vec>(rng()) & low_mask(d);
      const auto a = rref_basis(av, d), b = rref_basis(bv, d);
      std::vector<Vec> both;
      for (unsigned v = 0; v < (1u << d); ++v)
        if (contains(a, v) && contains(b, v)) both.push_back(v);
      const auto i = intersect(a, b);
      EXPECT_EQ(i, rref_basis(both, d));
      EXPECT_GE(i.dim(), a.dim() + b.dim() - d);
    }
}

TEST(Coordinates, RecoversCombination) {
  std::vector<Vec> basis{0b110, 0b011, 0b001};
  auto c = coordinates(basis, 0b101);
  ASSERT_TRUE(c);
  Vec acc = 0;
  for (int i = 0; i < 3; ++i)
    if (test_bit(*c, i)) acc ^= basis[static_cast<std::size_t>(i)];
  EXPECT_EQ(acc, Vec{0b101});
  std::vector<Vec> partial{0b110};
  EXPECT_FALSE(coordinates(partial, 0b001));
}

TEST(IsCoset, SpecExamples) {
  std::vector<Vec> single{0b101}, pair{0b101, 0b110}, three{0b001, 0b010, 0b100};
  EXPECT_TRUE(is_coset(single, 3));
  auto c = as_coset(pair, 3);
  ASSERT_TRUE(c);
  std::vector<Vec> dir{0b011};
  EXPECT_EQ(c->direction, rref_basis(dir, 3));
  EXPECT_FALSE(is_coset(three, 3));
  EXPECT_THROW(is_coset(std::vector<Vec>{}, 3), std::invalid_argument);
}

TEST(IsCoset, IndependentOfChosenPoint) {
  // Same set in different orders picks different translation points.
  std::vector<Vec> s{0b1001, 0b1111, 0b1010, 0b1100};
  const bool first = is_coset(s, 4);
  std::reverse(s.begin(), s.end());
  EXPECT_EQ(is_coset(s, 4), first);
  EXPECT_TRUE(first);
}

// Every nonempty subset of GF(2)^d, d <= 4, against all (subspace, offset) pairs.
TEST(IsCoset, BruteForceEquivalenceUpToDim4) {
  for (int d = 1; d <= 4; ++d) {
    std::set<std::vector<unsigned>> cosets;
    for_each_subspace(d, 0, d, [&](const Subspace& w) {
      for (unsigned t = 0; t < (1u << d); ++t) {
        std::vector<unsigned> pts;
        for (Vec p : w.points()) pts.push_back(static_cast<unsigned>(p) ^ t);
        std::sort(pts.begin(), pts.end());
        cosets.insert(pts);
      }
    });
    const unsigned n = 1u << d;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<unsigned> pts;
      for (unsigned p = 0; p < n; ++p)
        if ((mask >> p) & 1) pts.push_back(p);
      const bool expected = cosets.count(pts) == 1;
      std::vector<Vec> v(pts.begin(), pts.end());
      ASSERT_EQ(is_coset(v, d), expected) << "d=" << d << " mask=" << mask;
      if (expected) {
        EXPECT_EQ(std::popcount(mask) & (std::popcount(mask) - 1), 0);
      }
    }
  }
}

TEST(Enumerate, TwoDimensionalLines) {
  std::vector<Subspace> got;
  for_each_subspace(2, 1, 1, [&](const Subspace& s) { got.push_back(s); });
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0].basis(), std::vector<Vec>{0b01});
  EXPECT_EQ(got[1].basis(), std::vector<Vec>{0b10});
  EXPECT_EQ(got[2].basis(), std::vector<Vec>{0b11});
}

TEST(Enumerate, CountsMatchGaussianBinomials) {
  for (int d = 0; d <= 8; ++d)
    for (int k = 0; k <= d; ++k) {
      std::uint64_t n = 0;
      for_each_subspace(d, k, k, [&](const Subspace&) { ++n; });
      EXPECT_EQ(n, gaussian_binomial(d, k)) << "d=" << d << " k=" << k;
    }
  EXPECT_EQ(gaussian_binomial(4, 2), 35u);
}

TEST(Enumerate, AllSubspacesOfGF2To8) {
  std::uint64_t total = 0;
  for_each_subspace(8, 0, 8, [&](const Subspace&) { ++total; });
  std::uint64_t formula = 0;
  for (int k = 0; k <= 8; ++k) formula += gaussian_binomial(8, k);
  EXPECT_EQ(formula, 417199u);
  EXPECT_EQ(total, formula);
}

TEST(Enumerate, DistinctCanonicalAndOrdered) {
  // Cross-check d=4, k=2 against spans of all pairs of independent vectors.
  std::set<std::set<unsigned>> by_pairs;
  for (unsigned a = 1; a < 16; ++a)
    for (unsigned b = a + 1; b < 16; ++b) by_pairs.insert(closure({a, b}));
  std::vector<Subspace> got;
  for_each_subspace(4, 2, 2, [&](const Subspace& s) { got.push_back(s); });
  std::set<std::set<unsigned>> by_stream;
  for (const auto& s : got) {
    EXPECT_EQ(rref_basis(s.basis(), 4), s);
    by_stream.insert(point_set(s));
  }
  EXPECT_EQ(got.size(), 35u);
  EXPECT_EQ(by_stream, by_pairs);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
}

TEST(Enumerate, RejectsAboveCap) {
  EXPECT_THROW(enumerate_subspaces(9, 0, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_subspaces(4, 3, 2), std::invalid_argument);
}

TEST(Hex, RoundTripAndRange) {
  const Vec v = unit(127) | unit(64) | 0xABC;
  EXPECT_EQ(parse_hex(to_hex(v, 128), 128), v);
  EXPECT_EQ(to_hex(0x25, 10), "025");
  EXPECT_EQ(parse_hex("0x1f", 5), Vec{0x1f});
  EXPECT_THROW(parse_hex("20", 5), std::invalid_argument);
  EXPECT_THROW(parse_hex("zz", 8), std::invalid_argument);
}
