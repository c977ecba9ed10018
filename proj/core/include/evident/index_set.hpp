#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "evident/errors.hpp"

namespace evident {

/// Set of 1-based ids up to 64, packed into a bitmask. Ordering is numeric on
/// the mask, which makes enumeration in ascending mask order visit every
/// subset before any of its supersets.
class IndexSet {
 public:
  static constexpr std::size_t kMaxId = 64;

  IndexSet() = default;

  static IndexSet from_bits(std::uint64_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }

  bool contains(std::size_t id) const { return (bits_ & bit(id)) != 0; }

  IndexSet with(std::size_t id) const { return from_bits(bits_ | bit(id)); }
  IndexSet without(std::size_t id) const { return from_bits(bits_ & ~bit(id)); }
  IndexSet unite(const IndexSet& other) const { return from_bits(bits_ | other.bits_); }

  bool subset_of(const IndexSet& other) const { return (bits_ & ~other.bits_) == 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  std::uint64_t bits() const { return bits_; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(rest)) + 1);
    }
    return out;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  static std::uint64_t bit(std::size_t id) {
    if (id < 1 || id > kMaxId) throw ValidationError("index out of range");
    return std::uint64_t{1} << (id - 1);
  }

  std::uint64_t bits_ = 0;
};

}  // namespace evident
