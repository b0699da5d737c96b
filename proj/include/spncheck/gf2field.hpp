#pragma once

// Arithmetic in GF(2^m) for 2 <= m <= 16, with a caller-chosen reduction
// polynomial. Elements are integers below 2^m, bit j the coefficient of x^j.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spncheck/sbox.hpp"

namespace spncheck::gf {

using Element = std::uint32_t;

namespace detail {

inline int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

// Remainder of carry-less division a mod b.
inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace detail

/// True iff p has degree >= 1 and no factor of degree 1 .. deg(p)/2.
inline bool is_irreducible(std::uint64_t poly) {
  const int m = detail::degree(poly);
  if (m < 1) return false;
  for (int k = 1; 2 * k <= m; ++k)
    for (std::uint64_t q = std::uint64_t{1} << k; q < (std::uint64_t{2} << k); ++q)
      if (detail::poly_mod(poly, q) == 0) return false;
  return true;
}

/// Shipped reduction polynomial for each m (0x11B for m = 8 matches AES).
inline std::uint32_t default_poly(int m) {
  static constexpr std::uint32_t table[] = {
      0,     0,     0x7,    0xB,    0x13,   0x25,   0x43,   0x83,    0x11B,
      0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1002D};
  if (m < 2 || m > 16) throw std::invalid_argument("field degree must be in [2, 16]");
  return table[m];
}

class FieldSpec {
 public:
  FieldSpec(int m, std::uint32_t poly) : m_(m), poly_(poly) {
    if (m < 2 || m > 16) throw std::invalid_argument("field degree must be in [2, 16]");
    if (detail::degree(poly) != m)
      throw std::invalid_argument("reduction polynomial must have degree exactly m");
    if (!is_irreducible(poly))
      throw std::invalid_argument("reduction polynomial 0x" + hex(poly) + " is reducible");
  }

  explicit FieldSpec(int m) : FieldSpec(m, default_poly(m)) {}

  int m() const { return m_; }
  std::uint32_t poly() const { return poly_; }
  Element size() const { return Element{1} << m_; }

  Element mul(Element a, Element b) const {
    check(a);
    check(b);
    std::uint32_t acc = 0;
    for (; b != 0; b >>= 1) {
      if (b & 1) acc ^= a;
      a <<= 1;
      if (a & size()) a ^= poly_;
    }
    return acc;
  }

  Element pow(Element a, std::uint64_t e) const {
    Element result = 1;
    for (; e != 0; e >>= 1) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
    }
    return result;
  }

  /// a^(2^m - 2): the inverse of a nonzero a, and 0 for a = 0.
  Element inv(Element a) const {
    check(a);
    return pow(a, (std::uint64_t{1} << m_) - 2);
  }

 private:
  static std::string hex(std::uint32_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    do {
      s.insert(s.begin(), digits[v & 0xF]);
      v >>= 4;
    } while (v != 0);
    return s;
  }

  void check(Element a) const {
    if (a >= size())
      throw std::invalid_argument("field element " + std::to_string(a) +
                                  " out of range for GF(2^" + std::to_string(m_) + ")");
  }

  int m_;
  std::uint32_t poly_;
};

inline Element mul(const FieldSpec& f, Element a, Element b) { return f.mul(a, b); }
inline Element inv(const FieldSpec& f, Element a) { return f.inv(a); }

/// Lookup table of x ↦ x^(2^m - 2).
inline std::vector<std::uint32_t> inversion_table(const FieldSpec& f) {
  std::vector<std::uint32_t> t(f.size());
  for (Element a = 0; a < f.size(); ++a) t[a] = f.inv(a);
  return t;
}

/// The S-box x ↦ x^(2^m - 2); an involution fixing 0.
inline SBox inversion_sbox(const FieldSpec& f) { return SBox(f.m(), inversion_table(f)); }

}  // namespace spncheck::gf
