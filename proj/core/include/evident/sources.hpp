#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "evident/formula.hpp"
#include "evident/index_set.hpp"
#include "evident/theory.hpp"

namespace evident {

/// One independent evidence source: an event of probability alpha whose truth
/// guarantees the soundness of the attached inference rules. A material rule
/// "if a then c" with contraposition is the single rule true/(a -> c); the
/// non-contraposing reading is a/c.
struct Source {
  std::size_t id = 0;  // 1-based, dense across the model
  double alpha = 1.0;
  std::vector<InferenceRule> rules;  // non-empty
  std::string label;
};

/// Renormalize the independent product over all sources at once, zeroing
/// inconsistent index sets.
struct DsModel {};

/// Lexicographic levels of source ids; earlier levels dominate. Each level is
/// renormalized conditionally on the reliable set fixed by its predecessors.
struct PriorityModel {
  std::vector<IndexSet> levels;  // partition of {1..m}
};

using ProbabilityModel = std::variant<DsModel, PriorityModel>;

struct EvidenceModel {
  std::vector<Formula> facts;
  std::vector<Source> sources;
  ProbabilityModel probability = DsModel{};

  std::size_t source_count() const { return sources.size(); }

  /// Throws ValidationError on gaps: ids must be 1..m in order, alphas in
  /// [0,1], every rule list non-empty, priority levels a partition of {1..m}.
  void validate() const;
};

/// Base of K_sigma: the facts closed under the rules of the sources in sigma.
Closure knowledge_closure(const EvidenceModel& model, IndexSet sigma);
TheoryBase knowledge(const EvidenceModel& model, IndexSet sigma);

/// Independent product weight: prod_{i in sigma} alpha_i * prod_{i not in
/// sigma} (1 - alpha_i).
double prior_weight(const EvidenceModel& model, IndexSet sigma);

/// Total prior weight of the index sets with consistent knowledge.
double ds_normalizer(const EvidenceModel& model);

/// 0 when K_sigma is inconsistent, else prior_weight / ds_normalizer.
/// Throws ContradictorySources when the normalizer vanishes.
double ds_probability(const EvidenceModel& model, IndexSet sigma);

/// Level-by-level conditional renormalization; collapses to ds_probability
/// when there is a single level. Throws ContradictorySources when some
/// reachable level has no consistent continuation of positive weight (always
/// the case when the facts are inconsistent).
double prioritized_probability(const EvidenceModel& model, IndexSet sigma);

/// Dispatches on the model's probability variant.
double event_probability(const EvidenceModel& model, IndexSet sigma);

/// Exact belief: total probability of the index sets whose knowledge entails
/// d. Enumerates 2^m events; throws SizeLimit beyond the enumeration cap.
double belief_exact(const EvidenceModel& model, const Formula& d);

}  // namespace evident
