#pragma once

// Permutations of {0, ..., n-1} stored as image tables.
//
// Maps compose left to right: (x)(p * q) = (x p) q, so p acts first.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spncheck {

using Point = std::uint32_t;

enum class Parity { even, odd };

inline Parity operator^(Parity a, Parity b) {
  return a == b ? Parity::even : Parity::odd;
}

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

class Permutation {
 public:
  Permutation() = default;

  /// Validates that images is a bijection of [0, images.size()).
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw std::invalid_argument("image table is not a permutation");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
    return unchecked(std::move(img));
  }

  /// Builds from disjoint cycles, e.g. {{0, 1, 2}} maps 0→1→2→0.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
    std::vector<bool> used(degree, false);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree || used[c[i]])
          throw std::invalid_argument("cycles are not disjoint or out of range");
        used[c[i]] = true;
        img[c[i]] = c[(i + 1) % c.size()];
      }
    return unchecked(std::move(img));
  }

  /// Skips validation; for tables that are bijective by construction.
  static Permutation unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return unchecked(std::move(inv));
  }

  /// Lengths of all cycles, fixed points included, in order of smallest point.
  std::vector<std::size_t> cycle_lengths() const {
    std::vector<std::size_t> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start]) continue;
      std::size_t len = 0;
      for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
        seen[x] = true;
        ++len;
      }
      out.push_back(len);
    }
    return out;
  }

  /// Even iff degree minus the number of cycles is even.
  Parity parity() const {
    const std::size_t cycles = cycle_lengths().size();
    return (images_.size() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  /// p * q applies p first.
  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
    std::vector<Point> img(p.degree());
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = q.images_[p.images_[x]];
    return unchecked(std::move(img));
  }

  /// In-place right multiplication: *this = *this * q.
  Permutation& operator*=(const Permutation& q) {
    if (degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
    for (Point& x : images_) x = q.images_[x];
    return *this;
  }

 private:
  std::vector<Point> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }
inline Parity parity(const Permutation& p) { return p.parity(); }

}  // namespace spncheck
