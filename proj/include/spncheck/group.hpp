#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "spncheck/permutation.hpp"

namespace spncheck {

/// Product-replacement walk on a tuple of group elements. The pool holds
/// max(10, #generators + 5) slots seeded cyclically with the generators and is
/// mixed by 50 burn-in steps; each draw is one further step.
class ProductReplacer {
 public:
  static constexpr int kBurnIn = 50;

  ProductReplacer(const std::vector<Permutation>& generators, std::uint64_t seed)
      : rng_(seed) {
    if (generators.empty()) throw std::invalid_argument("random element of an empty generating set");
    const std::size_t size = std::max<std::size_t>(10, generators.size() + 5);
    pool_.reserve(size);
    for (std::size_t i = 0; i < size; ++i) pool_.push_back(generators[i % generators.size()]);
    for (int i = 0; i < kBurnIn; ++i) step();
  }

  const Permutation& next() { return pool_[step()]; }

 private:
  std::size_t step() {
    std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
    const std::size_t i = pick(rng_);
    std::size_t j = pick(rng_);
    while (j == i) j = pick(rng_);
    if (rng_() & 1) pool_[i] *= pool_[j];
    else pool_[i] = pool_[j] * pool_[i];
    return i;
  }

  std::mt19937_64 rng_;
  std::vector<Permutation> pool_;
};

/// A permutation group given by generators, plus the seeded random-element
/// state. Copies share nothing; random_element needs exclusive access.
class GroupHandle {
 public:
  GroupHandle(std::size_t degree, std::vector<Permutation> generators, std::uint64_t seed = 0)
      : degree_(degree), generators_(std::move(generators)), seed_(seed) {
    for (const auto& g : generators_)
      if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
  }

  explicit GroupHandle(std::vector<Permutation> generators, std::uint64_t seed = 0)
      : degree_(generators.empty() ? 0 : generators.front().degree()),
        generators_(std::move(generators)),
        seed_(seed) {
    for (const auto& g : generators_)
      if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::uint64_t seed() const { return seed_; }

  Permutation random_element() {
    if (!replacer_) replacer_.emplace(generators_, seed_);
    return replacer_->next();
  }

  bool all_generators_even() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](const Permutation& g) { return g.parity() == Parity::even; });
  }

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::uint64_t seed_;
  std::optional<ProductReplacer> replacer_;
};

inline Permutation random_element(GroupHandle& g) { return g.random_element(); }

/// Breadth-first closure of point under the generators, in discovery order.
inline std::vector<Point> orbit(const GroupHandle& g, Point point) {
  if (point >= g.degree()) throw std::invalid_argument("orbit: point out of range");
  std::vector<bool> seen(g.degree(), false);
  std::vector<Point> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : g.generators()) {
      const Point q = s[out[i]];
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  return out;
}

inline bool is_transitive(const GroupHandle& g) {
  return g.degree() <= 1 || orbit(g, 0).size() == g.degree();
}

}  // namespace spncheck
