#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spncheck {

/// A bijective lookup table on m-bit values.
class SBox {
 public:
  SBox() = default;

  SBox(int m, std::vector<std::uint32_t> table) : m_(m), table_(std::move(table)) {
    if (m < 1 || m > 16) throw std::invalid_argument("S-box width must be in [1, 16]");
    if (table_.size() != (std::size_t{1} << m))
      throw std::invalid_argument("S-box table must have 2^m entries");
    std::vector<bool> seen(table_.size(), false);
    for (auto y : table_) {
      if (y >= table_.size() || seen[y])
        throw std::invalid_argument("S-box table is not a permutation");
      seen[y] = true;
    }
  }

  static SBox identity(int m) {
    std::vector<std::uint32_t> t(std::size_t{1} << m);
    for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = x;
    return SBox(m, std::move(t));
  }

  int m() const { return m_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }
  std::uint32_t operator[](std::uint32_t x) const { return table_[x]; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  friend bool operator==(const SBox&, const SBox&) = default;

 private:
  int m_ = 0;
  std::vector<std::uint32_t> table_;
};

}  // namespace spncheck
