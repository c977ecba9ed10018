#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evident/formula.hpp"
#include "evident/index_set.hpp"
#include "evident/theory.hpp"

namespace evident {

/// prerequisite : justification / consequent — once the prerequisite is
/// known, conclude the consequent, as long as the justification stays
/// consistent with what is known.
struct DefaultRule {
  std::size_t id = 0;  // 1-based, dense
  Formula prerequisite;
  Formula justification;
  Formula consequent;
  std::string label;
};

struct DefaultTheory {
  std::vector<Formula> facts;
  std::vector<DefaultRule> defaults;

  std::size_t default_count() const { return defaults.size(); }

  /// The rule prerequisite/consequent a default induces when adopted.
  InferenceRule induced_rule(std::size_t id) const;

  /// Throws ValidationError unless ids run 1..m in order.
  void validate() const;
};

/// An enumerated extension: the theory, the smallest index set generating it,
/// and the ids whose rules actually fired (the consequents in the base).
struct Extension {
  TheoryBase theory;
  IndexSet generator;
  std::vector<std::size_t> fired;  // ascending
};

/// Base of Th^gamma(W): facts closed under the induced rules of gamma.
Closure default_closure(const DefaultTheory& theory, IndexSet gamma);

/// True when some gamma generates a theory equal to k and k refutes none of
/// gamma's justifications. Enumerates 2^m candidate sets.
bool delta_consistent(const DefaultTheory& theory, const TheoryBase& k);

/// The maximal delta-consistent theories, deduplicated up to theory_equal and
/// ordered by smallest generating index set. Never empty.
std::vector<Extension> m_extensions(const DefaultTheory& theory);

/// Classical extensions: fixpoints E = Th^gamma(W) with gamma exactly the
/// defaults whose justifications E leaves unrefuted. May be empty.
std::vector<Extension> reiter_extensions(const DefaultTheory& theory);

/// Every justification is semantically equivalent to its consequent.
bool is_normal(const DefaultTheory& theory);

/// Some maximal delta-consistent theory entails p.
bool credulously_entails(const DefaultTheory& theory, const Formula& p);

}  // namespace evident
