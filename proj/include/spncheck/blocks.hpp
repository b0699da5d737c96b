#pragma once

// Blocks of imprimitivity by union-find refinement.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spncheck/group.hpp"
#include "spncheck/parallel.hpp"

namespace spncheck {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Point{0});
  }

  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Merges two roots; returns the surviving root.
  Point unite_roots(Point a, Point b) {
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::size_t class_size(Point x) { return size_[find(x)]; }

  /// Classes as sorted point lists, ordered by smallest member.
  std::vector<std::vector<Point>> classes() {
    std::vector<std::vector<Point>> out;
    std::vector<std::size_t> slot(parent_.size(), SIZE_MAX);
    for (Point x = 0; x < parent_.size(); ++x) {
      const Point r = find(x);
      if (slot[r] == SIZE_MAX) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].push_back(x);
    }
    return out;
  }

 private:
  std::vector<Point> parent_;
  std::vector<std::size_t> size_;
};

namespace detail {

// Finest G-invariant partition in which alpha ~ beta. Every merge pushes its
// pair of roots; the pushed pairs generate the relation, so closing them under
// the generators closes the whole partition.
inline UnionFind block_partition(const GroupHandle& g, Point alpha, Point beta) {
  UnionFind uf(g.degree());
  std::vector<std::pair<Point, Point>> queue{{alpha, beta}};
  uf.unite_roots(alpha, beta);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [x, y] = queue[head];
    for (const auto& s : g.generators()) {
      const Point a = uf.find(s[x]);
      const Point b = uf.find(s[y]);
      if (a == b) continue;
      uf.unite_roots(a, b);
      queue.emplace_back(a, b);
    }
  }
  return uf;
}

}  // namespace detail

/// Smallest block containing alpha and beta, as a sorted point list.
inline std::vector<Point> minimal_block(const GroupHandle& g, Point alpha, Point beta) {
  if (alpha >= g.degree() || beta >= g.degree())
    throw std::invalid_argument("minimal_block: point out of range");
  if (alpha == beta) throw std::invalid_argument("minimal_block: alpha == beta");
  if (!is_transitive(g)) throw std::invalid_argument("minimal_block: group is intransitive");
  auto uf = detail::block_partition(g, alpha, beta);
  std::vector<Point> block;
  const Point root = uf.find(alpha);
  for (Point x = 0; x < g.degree(); ++x)
    if (uf.find(x) == root) block.push_back(x);
  return block;
}

enum class PrimitivityVerdict { primitive, imprimitive, skipped };

inline const char* to_string(PrimitivityVerdict v) {
  switch (v) {
    case PrimitivityVerdict::primitive: return "primitive";
    case PrimitivityVerdict::imprimitive: return "imprimitive";
    case PrimitivityVerdict::skipped: return "skipped";
  }
  return "?";
}

struct PrimitivityResult {
  PrimitivityVerdict verdict = PrimitivityVerdict::skipped;
  std::vector<std::vector<Point>> blocks;  // block system when imprimitive
  std::size_t runs = 0;                    // minimal-block computations performed
  std::string note;
};

inline std::size_t kPrimitivityDegreeCap = 4096;

/// Runs minimal_block(0, beta) for every beta != 0. When some block is proper,
/// reports the system with the smallest blocks (lowest beta on ties).
inline PrimitivityResult is_primitive(const GroupHandle& g, unsigned threads = 1) {
  PrimitivityResult out;
  const std::size_t n = g.degree();
  if (n > kPrimitivityDegreeCap) {
    out.note = "degree " + std::to_string(n) + " above primitivity cap " +
               std::to_string(kPrimitivityDegreeCap);
    return out;
  }
  if (!is_transitive(g)) throw std::invalid_argument("is_primitive: group is intransitive");
  if (n <= 2) {
    out.verdict = PrimitivityVerdict::primitive;
    return out;
  }
  std::vector<std::size_t> block_size(n, n);
  parallel_for(n - 1, threads, [&](std::size_t k) {
    const Point beta = static_cast<Point>(k + 1);
    block_size[beta] = detail::block_partition(g, 0, beta).class_size(0);
  });
  out.runs = n - 1;
  Point best = 0;
  for (Point beta = 1; beta < n; ++beta)
    if (block_size[beta] < n && (best == 0 || block_size[beta] < block_size[best])) best = beta;
  if (best == 0) {
    out.verdict = PrimitivityVerdict::primitive;
    return out;
  }
  out.verdict = PrimitivityVerdict::imprimitive;
  out.blocks = detail::block_partition(g, 0, best).classes();
  return out;
}

}  // namespace spncheck
