#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "evident/defaults.hpp"
#include "evident/sources.hpp"

namespace evident {

/// Reserved marker-atom prefix; the frontend rejects user atoms carrying it.
inline constexpr std::string_view kQAtomPrefix = "__q";

Atom q_atom(std::size_t index);

/// Per-default rule triple over the language extended with one marker atom
/// q_i per default: prerequisite/q_i, q_i/consequent, !justification/!q_i.
/// Adopting a default whose justification gets refuted then contradicts its
/// own marker, which is what disqualifies the index set.
struct DefaultEncoding {
  DefaultTheory theory;
  std::vector<std::vector<InferenceRule>> rule_groups;  // triple for id i at [i-1]
};

/// Throws ReservedAtom when the theory already mentions a marker atom.
DefaultEncoding encode_defaults(const DefaultTheory& theory);

/// Closure of the facts under the triples of sigma (extended language).
Closure encoded_closure(const DefaultEncoding& enc, IndexSet sigma);

/// Membership of a marker-free formula in the restriction of the encoded
/// closure to the user language. Throws ReservedAtom when d mentions a
/// marker atom.
bool restricted_entails(const DefaultEncoding& enc, IndexSet sigma, const Formula& d);

struct BExtensions {
  std::vector<Extension> extensions;
  /// "Maximal" can be read on index sets or on theories; theory-maximal is
  /// what gets returned, and this flag reports when the index-set reading
  /// would have produced a different theory set.
  bool sigma_theory_divergence = false;
};

/// Theory-maximal consistent knowledge of an evidence model. The prioritized
/// model resolves maximality level by level, earlier levels first. When the
/// facts themselves are inconsistent the single degenerate extension Th(W)
/// is returned.
BExtensions b_extensions(const EvidenceModel& model);

/// B-extensions of a default theory via the marker encoding; agrees with
/// m_extensions up to theory_equal. Returned bases are marker-free (facts
/// plus fired consequents).
BExtensions b_extensions(const DefaultTheory& theory);

/// Direct route sound for normal theories: theory-maximal consistent
/// closures of the induced rules, no markers involved.
BExtensions b_extensions_direct(const DefaultTheory& theory);

/// Certain facts plus default rules plus numeric sources, with the two rule
/// families indexed separately.
struct CombinedModel {
  std::vector<Formula> facts;
  std::vector<DefaultRule> default_sources;
  std::vector<Source> numeric_sources;

  void validate() const;
};

struct CombinedBelief {
  double lower = 0.0;
  double upper = 0.0;
  double average = 0.0;  // unweighted mean over extensions
};

/// Two-stage measure: enumerate the B-extensions of the default part, then
/// run exact belief over the numeric sources with each extension's base as
/// the fact set; aggregate min/max/mean.
CombinedBelief combined_belief(const CombinedModel& model, const Formula& d);

}  // namespace evident
