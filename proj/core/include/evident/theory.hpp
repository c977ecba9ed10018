#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evident/formula.hpp"

namespace evident {

/// Finite axiom base standing for its deductive closure. Structural
/// duplicates are kept out of the base; semantic comparisons go through
/// entails / theory_equal.
class TheoryBase {
 public:
  TheoryBase() = default;
  explicit TheoryBase(std::vector<Formula> formulas);

  /// Adds f unless a structurally identical formula is already present.
  void add(const Formula& f);

  const std::vector<Formula>& formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }
  bool contains_structural(const Formula& f) const;

  bool entails(const Formula& f) const;
  bool consistent() const;

 private:
  std::vector<Formula> formulas_;
};

/// Closure of inner contained in closure of outer.
bool theory_subset(const TheoryBase& inner, const TheoryBase& outer);

/// The two bases generate the same deductively closed set.
bool theory_equal(const TheoryBase& a, const TheoryBase& b);

/// premise / consequent: once a closed set contains the premise it must
/// contain the consequent. With premise true this is just an axiom.
struct InferenceRule {
  Formula premise;
  Formula consequent;
};

/// Base for the least closed superset of some facts under a rule set,
/// together with the rules that fired while computing it.
struct Closure {
  TheoryBase theory;
  std::vector<std::size_t> fired;  // rule indices, ascending
};

/// Iterates to the least fixpoint: a rule fires when the current base entails
/// its premise, contributing its consequent to the base. Terminates after at
/// most rules.size() growth rounds.
Closure rule_closure(std::span<const Formula> facts, std::span<const InferenceRule> rules);

}  // namespace evident
