#include <gtest/gtest.h>

#include <random>

#include "spncheck/gf2field.hpp"

using namespace spncheck::gf;

namespace {

// Schoolbook: full carry-less product, then long division by the modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
  int dp = 31;
  while (!((poly >> dp) & 1)) --dp;
  for (int i = 63; i >= dp; --i)
    if ((prod >> i) & 1) prod ^= std::uint64_t{poly} << (i - dp);
  return static_cast<std::uint32_t>(prod);
}

std::uint32_t brute_inverse(const FieldSpec& f, std::uint32_t a) {
  for (std::uint32_t y = 1; y < f.size(); ++y)
    if (slow_mul(a, y, f.poly()) == 1) return y;
  return 0;
}

}  // namespace

TEST(Field, AesExamples) {
  const FieldSpec aes(8, 0x11B);
  EXPECT_EQ(mul(aes, 0x02, 0x80), 0x1Bu);
  EXPECT_EQ(mul(aes, 0x53, 0x00), 0x00u);
  EXPECT_EQ(brute_inverse(aes, 0x53), 0xCAu);
  EXPECT_EQ(mul(aes, 0x53, 0xCA), 0x01u);
  EXPECT_EQ(brute_inverse(aes, 0x02), 0x8Du);
  EXPECT_EQ(inv(aes, 0x02), 0x8Du);
  EXPECT_EQ(inv(aes, 0x00), 0x00u);
  EXPECT_EQ(inv(aes, 0x01), 0x01u);
}

TEST(Field, OperandRange) {
  const FieldSpec f(4);
  EXPECT_THROW(f.mul(16, 1), std::invalid_argument);
  EXPECT_THROW(f.inv(16), std::invalid_argument);
}

TEST(Field, Irreducibility) {
  EXPECT_FALSE(is_irreducible(0b10101));  // x^4 + x^2 + 1 = (x^2 + x + 1)^2
  EXPECT_TRUE(is_irreducible(0b10011));   // x^4 + x + 1
  EXPECT_THROW(FieldSpec(4, 0b10101), std::invalid_argument);
  EXPECT_THROW(FieldSpec(4, 0b1011), std::invalid_argument);  // wrong degree
  for (int m = 2; m <= 16; ++m) EXPECT_TRUE(is_irreducible(default_poly(m))) << m;
  EXPECT_EQ(default_poly(8), 0x11Bu);
  EXPECT_EQ(default_poly(5), 0x25u);
  EXPECT_EQ(default_poly(6), 0x43u);
  EXPECT_EQ(default_poly(4), 0x13u);
}

TEST(Field, InverseExhaustive) {
  for (int m = 2; m <= 10; ++m) {
    const FieldSpec f(m);
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      const auto b = f.inv(a);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, b), 1u);
      }
      EXPECT_EQ(f.inv(b), a);
    }
  }
}

TEST(Field, MulMatchesLongDivision) {
  std::mt19937_64 rng(3);
  for (int m = 2; m <= 8; ++m) {
    const FieldSpec f(m);
    for (int i = 0; i < 10000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() % f.size());
      const auto b = static_cast<std::uint32_t>(rng() % f.size());
      ASSERT_EQ(f.mul(a, b), slow_mul(a, b, f.poly()));
    }
  }
}

TEST(Field, RingLaws) {
  const FieldSpec f(6);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % 64), b = static_cast<std::uint32_t>(rng() % 64),
               c = static_cast<std::uint32_t>(rng() % 64);
    EXPECT_EQ(f.mul(a, b), f.mul(b, a));
    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    EXPECT_EQ(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
  }
}

TEST(InversionSbox, Gf4Table) {
  const auto s = inversion_sbox(FieldSpec(2, 0x7));
  EXPECT_EQ(s.table(), (std::vector<std::uint32_t>{0, 1, 3, 2}));
}

TEST(InversionSbox, AesEntryAndInvolution) {
  const auto s = inversion_sbox(FieldSpec(8, 0x11B));
  EXPECT_EQ(s[0x02], 0x8Du);
  for (int m = 2; m <= 8; ++m) {
    const auto t = inversion_sbox(FieldSpec(m));
    EXPECT_EQ(t[0], 0u);
    for (std::uint32_t a = 0; a < t.size(); ++a) EXPECT_EQ(t[t[a]], a);
  }
}
