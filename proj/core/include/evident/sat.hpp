#pragma once

#include <initializer_list>
#include <span>

#include "evident/formula.hpp"

namespace evident {

/// Satisfiability of a conjunction of formulas, decided by CNF translation
/// plus DPLL with unit propagation. The empty set is satisfiable.
bool satisfiable(std::span<const Formula> formulas);
bool satisfiable(std::initializer_list<Formula> formulas);

/// premises |= conclusion (classically). An inconsistent premise set entails
/// everything.
bool entails(std::span<const Formula> premises, const Formula& conclusion);
bool entails(std::initializer_list<Formula> premises, const Formula& conclusion);

bool equivalent(const Formula& a, const Formula& b);

}  // namespace evident
