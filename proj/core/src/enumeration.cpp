#include "enumeration.hpp"

#include <bit>

#include "evident/sat.hpp"

namespace evident::detail {

void visit_sigma_lattice(
    std::span<const Formula> facts, std::span<const std::vector<InferenceRule>> groups,
    const std::function<void(std::uint64_t mask, const Closure* closure, bool consistent)>&
        visit) {
  const std::size_t m = groups.size();
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<bool> consistent(count, false);
  std::vector<InferenceRule> rules;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    bool pruned = false;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      std::uint64_t sub = mask & ~(rest & -rest);
      if (!consistent[sub]) {
        pruned = true;
        break;
      }
    }
    if (pruned) {
      visit(mask, nullptr, false);
      continue;
    }
    rules.clear();
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto& group = groups[static_cast<std::size_t>(std::countr_zero(rest))];
      rules.insert(rules.end(), group.begin(), group.end());
    }
    Closure closure = rule_closure(facts, rules);
    bool ok = closure.theory.consistent();
    consistent[mask] = ok;
    visit(mask, &closure, ok);
  }
}

std::vector<std::size_t> fired_ids(std::uint64_t mask,
                                   std::span<const std::vector<InferenceRule>> groups,
                                   const std::vector<std::size_t>& fired_flat) {
  std::vector<std::size_t> out;
  std::size_t offset = 0;
  std::size_t cursor = 0;  // fired_flat is ascending
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    std::size_t idx = static_cast<std::size_t>(std::countr_zero(rest));
    std::size_t next = offset + groups[idx].size();
    bool hit = false;
    while (cursor < fired_flat.size() && fired_flat[cursor] < next) {
      hit = true;
      ++cursor;
    }
    if (hit) out.push_back(idx + 1);
    offset = next;
  }
  return out;
}

void TheoryClasser::add(std::uint64_t mask, const Closure* closure, bool consistent) {
  if (class_of_mask_.size() <= mask) class_of_mask_.resize(mask + 1, 0);
  if (!consistent) {
    if (inconsistent_class_ < 0) {
      // The numerically first inconsistent mask is never pruned (its immediate
      // subsets are smaller, hence consistent), so it carries a closure.
      inconsistent_class_ = static_cast<std::ptrdiff_t>(classes_.size());
      TheoryClass c;
      c.closure = *closure;
      c.min_mask = mask;
      c.consistent = false;
      classes_.push_back(std::move(c));
    }
    classes_[static_cast<std::size_t>(inconsistent_class_)].masks.push_back(mask);
    class_of_mask_[mask] = static_cast<std::size_t>(inconsistent_class_);
    return;
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    TheoryClass& c = classes_[i];
    if (!c.consistent) continue;
    if (theory_equal(c.closure.theory, closure->theory)) {
      c.masks.push_back(mask);
      class_of_mask_[mask] = i;
      return;
    }
  }
  TheoryClass c;
  c.closure = *closure;
  c.min_mask = mask;
  c.consistent = true;
  c.masks.push_back(mask);
  class_of_mask_[mask] = classes_.size();
  classes_.push_back(std::move(c));
}

std::size_t TheoryClasser::class_of(std::uint64_t mask) const { return class_of_mask_[mask]; }

}  // namespace evident::detail
