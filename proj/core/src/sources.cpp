#include "evident/sources.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "enumeration.hpp"
#include "evident/errors.hpp"
#include "evident/limits.hpp"
#include "evident/sat.hpp"

namespace evident {

namespace {

IndexSet full_set(std::size_t m) {
  return IndexSet::from_bits(m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
}

void require_valid_sigma(const EvidenceModel& model, IndexSet sigma) {
  if (!sigma.subset_of(full_set(model.source_count()))) {
    throw ValidationError("index set mentions ids outside the model");
  }
}

std::vector<std::vector<InferenceRule>> rule_groups(const EvidenceModel& model) {
  std::vector<std::vector<InferenceRule>> groups;
  groups.reserve(model.sources.size());
  for (const Source& s : model.sources) groups.push_back(s.rules);
  return groups;
}

}  // namespace

void EvidenceModel::validate() const {
  if (sources.size() > IndexSet::kMaxId) {
    throw ValidationError("models support at most 64 sources");
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Source& s = sources[i];
    if (s.id != i + 1) {
      throw ValidationError("source ids must run 1..m in order");
    }
    if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) {
      throw ValidationError("source " + std::to_string(s.id) + " has reliability outside [0,1]");
    }
    if (s.rules.empty()) {
      throw ValidationError("source " + std::to_string(s.id) + " carries no rules");
    }
  }
  if (const auto* pm = std::get_if<PriorityModel>(&probability)) {
    IndexSet seen;
    for (const IndexSet& level : pm->levels) {
      if (level.empty()) throw ValidationError("empty priority level");
      if (!level.unite(seen).subset_of(full_set(sources.size())) ||
          (level.bits() & seen.bits()) != 0) {
        throw ValidationError("priority levels must partition the source ids");
      }
      seen = seen.unite(level);
    }
    if (seen != full_set(sources.size())) {
      throw ValidationError("priority levels must partition the source ids");
    }
  }
}

Closure knowledge_closure(const EvidenceModel& model, IndexSet sigma) {
  require_valid_sigma(model, sigma);
  std::vector<InferenceRule> rules;
  for (std::size_t id : sigma.members()) {
    const auto& src = model.sources[id - 1].rules;
    rules.insert(rules.end(), src.begin(), src.end());
  }
  return rule_closure(model.facts, rules);
}

TheoryBase knowledge(const EvidenceModel& model, IndexSet sigma) {
  return knowledge_closure(model, sigma).theory;
}

double prior_weight(const EvidenceModel& model, IndexSet sigma) {
  require_valid_sigma(model, sigma);
  double w = 1.0;
  for (std::size_t i = 1; i <= model.source_count(); ++i) {
    double alpha = model.sources[i - 1].alpha;
    w *= sigma.contains(i) ? alpha : 1.0 - alpha;
  }
  return w;
}

double ds_normalizer(const EvidenceModel& model) {
  require_enumerable(model.source_count());
  auto groups = rule_groups(model);
  double k = 0.0;
  detail::visit_sigma_lattice(
      model.facts, groups, [&](std::uint64_t mask, const Closure*, bool consistent) {
        if (consistent) k += prior_weight(model, IndexSet::from_bits(mask));
      });
  return k;
}

double ds_probability(const EvidenceModel& model, IndexSet sigma) {
  require_valid_sigma(model, sigma);
  double k = ds_normalizer(model);
  if (k == 0.0) {
    throw ContradictorySources("no consistent source combination has positive weight");
  }
  if (!knowledge(model, sigma).consistent()) return 0.0;
  return prior_weight(model, sigma) / k;
}

namespace {

// Weight of choosing exactly tau from the given level.
double level_weight(const EvidenceModel& model, IndexSet level, IndexSet tau) {
  double w = 1.0;
  for (std::size_t i : level.members()) {
    double alpha = model.sources[i - 1].alpha;
    w *= tau.contains(i) ? alpha : 1.0 - alpha;
  }
  return w;
}

const std::vector<IndexSet>& priority_levels(const EvidenceModel& model) {
  return std::get<PriorityModel>(model.probability).levels;
}

// Enumerates subsets of a level as index sets.
std::vector<IndexSet> level_subsets(IndexSet level) {
  std::vector<std::size_t> ids = level.members();
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << ids.size());
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ids.size()); ++pick) {
    IndexSet tau;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (pick & (std::uint64_t{1} << j)) tau = tau.with(ids[j]);
    }
    out.push_back(tau);
  }
  return out;
}

}  // namespace

double prioritized_probability(const EvidenceModel& model, IndexSet sigma) {
  require_valid_sigma(model, sigma);
  require_enumerable(model.source_count());
  if (!std::holds_alternative<PriorityModel>(model.probability)) {
    throw ValidationError("model carries no priority levels");
  }
  double p = 1.0;
  IndexSet reliable;
  for (const IndexSet& level : priority_levels(model)) {
    IndexSet tau = IndexSet::from_bits(sigma.bits() & level.bits());
    double z = 0.0;
    double num = 0.0;
    for (const IndexSet& choice : level_subsets(level)) {
      double w = level_weight(model, level, choice);
      if (w == 0.0) continue;
      if (!knowledge(model, reliable.unite(choice)).consistent()) continue;
      z += w;
      if (choice == tau) num = w;
    }
    if (z == 0.0) {
      throw ContradictorySources("no consistent continuation at some priority level");
    }
    if (num == 0.0) return 0.0;
    p *= num / z;
    reliable = reliable.unite(tau);
  }
  return p;
}

double event_probability(const EvidenceModel& model, IndexSet sigma) {
  if (std::holds_alternative<DsModel>(model.probability)) return ds_probability(model, sigma);
  return prioritized_probability(model, sigma);
}

namespace {

// Walks the level tree of a prioritized model, calling the leaf function with
// every full index set of positive probability.
void walk_levels(const EvidenceModel& model, std::size_t level_idx, IndexSet reliable,
                 double prefix,
                 const std::function<void(IndexSet sigma, double p)>& leaf) {
  const auto& levels = priority_levels(model);
  if (level_idx == levels.size()) {
    leaf(reliable, prefix);
    return;
  }
  const IndexSet& level = levels[level_idx];
  auto choices = level_subsets(level);
  std::vector<double> weights(choices.size(), 0.0);
  double z = 0.0;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    double w = level_weight(model, level, choices[i]);
    if (w == 0.0) continue;
    if (!knowledge(model, reliable.unite(choices[i])).consistent()) continue;
    weights[i] = w;
    z += w;
  }
  if (z == 0.0) {
    throw ContradictorySources("no consistent continuation at some priority level");
  }
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (weights[i] == 0.0) continue;
    walk_levels(model, level_idx + 1, reliable.unite(choices[i]), prefix * (weights[i] / z),
                leaf);
  }
}

}  // namespace

double belief_exact(const EvidenceModel& model, const Formula& d) {
  model.validate();
  require_enumerable(model.source_count());
  if (std::holds_alternative<PriorityModel>(model.probability)) {
    double total = 0.0;
    walk_levels(model, 0, IndexSet{}, 1.0, [&](IndexSet sigma, double p) {
      if (knowledge(model, sigma).entails(d)) total += p;
    });
    return total;
  }
  auto groups = rule_groups(model);
  double k = 0.0;
  double num = 0.0;
  detail::visit_sigma_lattice(
      model.facts, groups, [&](std::uint64_t mask, const Closure* closure, bool consistent) {
        if (!consistent) return;
        double w = prior_weight(model, IndexSet::from_bits(mask));
        if (w == 0.0) return;
        k += w;
        if (closure->theory.entails(d)) num += w;
      });
  if (k == 0.0) {
    throw ContradictorySources("no consistent source combination has positive weight");
  }
  return num / k;
}

}  // namespace evident
