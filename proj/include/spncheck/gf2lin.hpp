#pragma once

// Vectors and subspaces over GF(2).
//
// Coordinate j of V = GF(2)^d is bit j (weight 2^j) of the integer encoding.
// Every module in the library uses this convention.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spncheck::gf2 {

__extension__ typedef unsigned __int128 Vec;

inline constexpr int kMaxDim = 128;
inline constexpr int kEnumerationCap = 8;

inline constexpr Vec unit(int j) { return Vec{1} << j; }

inline constexpr Vec low_mask(int d) {
  return d >= kMaxDim ? ~Vec{0} : (Vec{1} << d) - 1;
}

inline constexpr bool fits(Vec v, int d) { return (v & ~low_mask(d)) == 0; }

inline constexpr bool test_bit(Vec v, int j) { return ((v >> j) & 1) != 0; }

/// Index of the highest set bit, or -1 for the zero vector.
inline constexpr int highest_bit(Vec v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  const auto lo = static_cast<std::uint64_t>(v);
  return lo == 0 ? -1 : 63 - std::countl_zero(lo);
}

inline constexpr int popcount(Vec v) {
  return std::popcount(static_cast<std::uint64_t>(v)) +
         std::popcount(static_cast<std::uint64_t>(v >> 64));
}

inline void check_dim(int d) {
  if (d < 0 || d > kMaxDim)
    throw std::invalid_argument("ambient dimension " + std::to_string(d) +
                                " outside [0, 128]");
}

/// Lower-case hex, exactly ceil(d/4) digits (at least one).
inline std::string to_hex(Vec v, int d) {
  static constexpr char digits[] = "0123456789abcdef";
  const int n = std::max(1, (d + 3) / 4);
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(n - 1 - i)] =
        digits[static_cast<unsigned>((v >> (4 * i)) & 0xF)];
  return out;
}

/// Parses big-endian hex with an optional 0x prefix; the value must fit in d bits.
inline Vec parse_hex(std::string_view s, int d) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  if (s.empty()) throw std::invalid_argument("empty hex string");
  Vec v = 0;
  for (char c : s) {
    unsigned nib;
    if (c >= '0' && c <= '9') nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') nib = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') nib = static_cast<unsigned>(c - 'A' + 10);
    else throw std::invalid_argument("bad hex digit in '" + std::string(s) + "'");
    if (highest_bit(v) >= kMaxDim - 4)
      throw std::invalid_argument("hex value wider than 128 bits");
    v = (v << 4) | nib;
  }
  if (!fits(v, d))
    throw std::invalid_argument("hex value '" + std::string(s) +
                                "' exceeds " + std::to_string(d) + " bits");
  return v;
}

/// A subspace of GF(2)^d held as a reduced row-echelon basis: distinct pivots
/// (the highest bit of each row), each pivot bit clear in every other row,
/// rows sorted by descending pivot. The form is unique, so basis equality is
/// subspace equality.
class Subspace {
 public:
  explicit Subspace(int ambient_dim = 0) : ambient_dim_(ambient_dim) {
    check_dim(ambient_dim);
  }

  /// Span of arbitrary vectors, in canonical form.
  static Subspace span(std::span<const Vec> vectors, int ambient_dim) {
    Subspace s(ambient_dim);
    for (Vec v : vectors) s.insert(v);
    return s;
  }

  static Subspace full(int ambient_dim) {
    Subspace s(ambient_dim);
    for (int j = ambient_dim - 1; j >= 0; --j) s.basis_.push_back(unit(j));
    return s;
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return ambient_dim_ - dim(); }
  const std::vector<Vec>& basis() const { return basis_; }

  /// Clears every pivot bit of v; the result is zero iff v is in the span,
  /// and reduce(a ^ b) == reduce(a) ^ reduce(b).
  Vec reduce(Vec v) const {
    for (Vec row : basis_)
      if (test_bit(v, highest_bit(row))) v ^= row;
    return v;
  }

  bool contains(Vec v) const {
    check_member(v);
    return reduce(v) == 0;
  }

  /// Adds v to the spanning set; returns false if v was already in the span.
  bool insert(Vec v) {
    check_member(v);
    v = reduce(v);
    if (v == 0) return false;
    const int p = highest_bit(v);
    for (Vec& row : basis_)
      if (test_bit(row, p)) row ^= v;
    const auto pos = std::find_if(basis_.begin(), basis_.end(), [p](Vec row) {
      return highest_bit(row) < p;
    });
    basis_.insert(pos, v);
    return true;
  }

  /// All 2^dim points, in the order of the binary counter over the basis.
  std::vector<Vec> points() const {
    if (dim() > 24) throw std::length_error("subspace too large to enumerate");
    std::vector<Vec> out(std::size_t{1} << dim());
    for (std::size_t mask = 1; mask < out.size(); ++mask) {
      const int low = std::countr_zero(mask);
      out[mask] = out[mask & (mask - 1)] ^ basis_[static_cast<std::size_t>(low)];
    }
    return out;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

  // Builds directly from rows already known to be in canonical form.
  static Subspace from_rref(std::vector<Vec> rows, int ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = std::move(rows);
    return s;
  }

 private:
  void check_member(Vec v) const {
    if (!fits(v, ambient_dim_))
      throw std::invalid_argument("vector out of range for ambient dimension " +
                                  std::to_string(ambient_dim_));
  }

  int ambient_dim_;
  std::vector<Vec> basis_;
};

inline Subspace rref_basis(std::span<const Vec> vectors, int ambient_dim) {
  return Subspace::span(vectors, ambient_dim);
}

inline bool contains(const Subspace& s, Vec v) { return s.contains(v); }

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace ambient dimensions differ");
}

/// a ∩ b, as the kernel of x ↦ b.reduce(x) restricted to a.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  struct Row {
    Vec residue;
    Vec source;
  };
  std::vector<Row> echelon;
  std::vector<Vec> kernel;
  for (Vec x : a.basis()) {
    Row row{b.reduce(x), x};
    for (const Row& e : echelon)
      if (test_bit(row.residue, highest_bit(e.residue))) {
        row.residue ^= e.residue;
        row.source ^= e.source;
      }
    if (row.residue == 0) {
      kernel.push_back(row.source);
      continue;
    }
    const int p = highest_bit(row.residue);
    for (Row& e : echelon)
      if (test_bit(e.residue, p)) {
        e.residue ^= row.residue;
        e.source ^= row.source;
      }
    echelon.push_back(row);
  }
  return Subspace::span(kernel, a.ambient_dim());
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  Subspace s = a;
  for (Vec v : b.basis()) s.insert(v);
  return s;
}

/// Coefficients c (bit i selects basis[i]) with XOR of selected rows == v,
/// or nullopt when v is outside the span. basis must be independent.
inline std::optional<Vec> coordinates(std::span<const Vec> basis, Vec v) {
  if (basis.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("too many basis vectors");
  struct Row {
    Vec value;
    Vec combo;
  };
  std::vector<Row> echelon;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Row row{basis[i], unit(static_cast<int>(i))};
    for (const Row& e : echelon)
      if (test_bit(row.value, highest_bit(e.value))) {
        row.value ^= e.value;
        row.combo ^= e.combo;
      }
    if (row.value == 0) throw std::invalid_argument("basis is dependent");
    const int p = highest_bit(row.value);
    for (Row& e : echelon)
      if (test_bit(e.value, p)) {
        e.value ^= row.value;
        e.combo ^= row.combo;
      }
    echelon.push_back(row);
  }
  Vec combo = 0;
  for (const Row& e : echelon)
    if (test_bit(v, highest_bit(e.value))) {
      v ^= e.value;
      combo ^= e.combo;
    }
  if (v != 0) return std::nullopt;
  return combo;
}

struct Coset {
  Subspace direction;
  Vec offset;  // canonical representative: direction.reduce(any member)
};

/// Decides whether points = t ⊕ W for a subspace W. Translates by the first
/// point and tests XOR-closure of the translate: the translate always lies in
/// its own span, so it is closed iff its size equals 2^rank.
inline std::optional<Coset> as_coset(std::span<const Vec> points, int ambient_dim) {
  check_dim(ambient_dim);
  if (points.empty()) throw std::invalid_argument("is_coset of an empty set");
  std::vector<Vec> set(points.begin(), points.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  const Vec d0 = set.front();
  Subspace w(ambient_dim);
  for (Vec p : set) w.insert(p ^ d0);
  if (w.dim() >= 64 || set.size() != (std::size_t{1} << w.dim())) return std::nullopt;
  const Vec offset = w.reduce(d0);
  return Coset{std::move(w), offset};
}

inline bool is_coset(std::span<const Vec> points, int ambient_dim) {
  return as_coset(points, ambient_dim).has_value();
}

/// Streams every subspace of GF(2)^d with min_dim ≤ dim ≤ max_dim exactly
/// once: dimension ascending, then lexicographic on the RREF basis. RREF
/// matrices are generated directly from pivot choices and free entries.
class SubspaceStream {
 public:
  SubspaceStream(int ambient_dim, int min_dim, int max_dim)
      : d_(ambient_dim), next_dim_(min_dim), max_dim_(max_dim) {
    if (ambient_dim > kEnumerationCap)
      throw std::invalid_argument("enumerate_subspaces: ambient dimension " +
                                  std::to_string(ambient_dim) + " above cap 8");
    if (min_dim < 0 || min_dim > max_dim || max_dim > ambient_dim || ambient_dim < 0)
      throw std::invalid_argument("enumerate_subspaces: need 0 <= min <= max <= d");
  }

  std::optional<Subspace> next() {
    while (pos_ >= rows_.size()) {
      if (next_dim_ > max_dim_) return std::nullopt;
      fill(next_dim_++);
    }
    std::vector<Vec> basis(rows_[pos_].begin(), rows_[pos_].begin() + k_);
    ++pos_;
    return Subspace::from_rref(std::move(basis), d_);
  }

 private:
  using Rows = std::array<std::uint8_t, kEnumerationCap>;

  void fill(int k) {
    rows_.clear();
    pos_ = 0;
    k_ = k;
    for (unsigned pivots = 0; pivots < (1u << d_); ++pivots) {
      if (std::popcount(pivots) != k) continue;
      // Per row (descending pivot): the free columns below its pivot.
      std::array<int, kEnumerationCap> pivot{};
      std::array<std::vector<int>, kEnumerationCap> free_cols;
      int total_free = 0;
      int r = 0;
      for (int p = d_ - 1; p >= 0; --p) {
        if (!((pivots >> p) & 1u)) continue;
        pivot[static_cast<std::size_t>(r)] = p;
        for (int c = p - 1; c >= 0; --c)
          if (!((pivots >> c) & 1u)) free_cols[static_cast<std::size_t>(r)].push_back(c);
        total_free += static_cast<int>(free_cols[static_cast<std::size_t>(r)].size());
        ++r;
      }
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total_free); ++bits) {
        Rows rows{};
        int used = 0;
        for (int i = 0; i < k; ++i) {
          unsigned row = 1u << pivot[static_cast<std::size_t>(i)];
          for (int c : free_cols[static_cast<std::size_t>(i)])
            if ((bits >> used++) & 1u) row |= 1u << c;
          rows[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(row);
        }
        rows_.push_back(rows);
      }
    }
    std::sort(rows_.begin(), rows_.end(), [k](const Rows& a, const Rows& b) {
      return std::lexicographical_compare(a.begin(), a.begin() + k, b.begin(), b.begin() + k);
    });
  }

  int d_;
  int next_dim_;
  int max_dim_;
  int k_ = 0;
  std::vector<Rows> rows_;
  std::size_t pos_ = 0;
};

inline SubspaceStream enumerate_subspaces(int ambient_dim, int min_dim, int max_dim) {
  return SubspaceStream(ambient_dim, min_dim, max_dim);
}

template <typename Fn>
void for_each_subspace(int ambient_dim, int min_dim, int max_dim, Fn&& fn) {
  auto stream = enumerate_subspaces(ambient_dim, min_dim, max_dim);
  while (auto s = stream.next()) fn(*s);
}

}  // namespace spncheck::gf2
