#include "evident/theory.hpp"

#include <algorithm>
#include <utility>

#include "evident/sat.hpp"

namespace evident {

TheoryBase::TheoryBase(std::vector<Formula> formulas) {
  formulas_.reserve(formulas.size());
  for (Formula& f : formulas) {
    if (!contains_structural(f)) formulas_.push_back(std::move(f));
  }
}

void TheoryBase::add(const Formula& f) {
  if (!contains_structural(f)) formulas_.push_back(f);
}

bool TheoryBase::contains_structural(const Formula& f) const {
  for (const Formula& g : formulas_) {
    if (g == f) return true;
  }
  return false;
}

bool TheoryBase::entails(const Formula& f) const { return evident::entails(formulas_, f); }

bool TheoryBase::consistent() const { return satisfiable(formulas_); }

bool theory_subset(const TheoryBase& inner, const TheoryBase& outer) {
  for (const Formula& f : inner.formulas()) {
    if (!outer.entails(f)) return false;
  }
  return true;
}

bool theory_equal(const TheoryBase& a, const TheoryBase& b) {
  return theory_subset(a, b) && theory_subset(b, a);
}

Closure rule_closure(std::span<const Formula> facts, std::span<const InferenceRule> rules) {
  Closure out;
  for (const Formula& f : facts) out.theory.add(f);
  std::vector<bool> fired(rules.size(), false);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (fired[i]) continue;
      const InferenceRule& r = rules[i];
      // Cheap structural membership first; entailment only when that misses.
      if (!out.theory.contains_structural(r.premise) && !out.theory.entails(r.premise)) continue;
      fired[i] = true;
      out.fired.push_back(i);
      if (!out.theory.contains_structural(r.consequent)) {
        out.theory.add(r.consequent);
        grew = true;
      }
    }
  }
  std::sort(out.fired.begin(), out.fired.end());
  return out;
}

}  // namespace evident
