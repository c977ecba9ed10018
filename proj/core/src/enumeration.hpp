#pragma once

// Internal helpers shared by the exact-belief and extension-enumeration code
// paths. Not installed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "evident/theory.hpp"

namespace evident::detail {

// Rules carried by id i live in groups[i - 1]. Visits every mask over
// {1..groups.size()} in ascending numeric order (subsets before supersets).
// When some immediate subset of a mask is already inconsistent the mask is
// reported inconsistent with closure == nullptr and no solver work happens —
// closures only grow along the lattice, so inconsistency is monotone.
void visit_sigma_lattice(
    std::span<const Formula> facts, std::span<const std::vector<InferenceRule>> groups,
    const std::function<void(std::uint64_t mask, const Closure* closure, bool consistent)>&
        visit);

// Ids from mask whose group contributed at least one fired rule, ascending.
// fired_flat holds indices into the concatenation of the mask's groups in
// ascending id order (the rule vector visit_sigma_lattice builds).
std::vector<std::size_t> fired_ids(std::uint64_t mask,
                                   std::span<const std::vector<InferenceRule>> groups,
                                   const std::vector<std::size_t>& fired_flat);

// Groups masks whose closures denote the same theory. All inconsistent masks
// share one class (an inconsistent base entails everything). Representative
// data comes from the smallest mask in the class.
struct TheoryClass {
  Closure closure;  // representative (from min_mask)
  std::uint64_t min_mask = 0;
  bool consistent = true;
  std::vector<std::uint64_t> masks;  // ascending
};

class TheoryClasser {
 public:
  // Feed masks in ascending order; closure may be null only when
  // consistent == false (pruned mask).
  void add(std::uint64_t mask, const Closure* closure, bool consistent);

  const std::vector<TheoryClass>& classes() const { return classes_; }
  // Index into classes() for every mask fed so far, keyed by mask value.
  std::size_t class_of(std::uint64_t mask) const;

 private:
  std::vector<TheoryClass> classes_;
  std::vector<std::size_t> class_of_mask_;  // indexed by mask
  std::ptrdiff_t inconsistent_class_ = -1;
};

}  // namespace evident::detail
