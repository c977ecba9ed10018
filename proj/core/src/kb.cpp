#include "evident/kb.hpp"

#include <algorithm>
#include <map>

namespace evident {

std::set<std::string> KnowledgeBase::atoms() const {
  std::set<std::string> out;
  for (const Formula& f : facts) collect_atoms(f, out);
  for (const RuleDecl& r : rules) {
    collect_atoms(r.antecedent, out);
    collect_atoms(r.consequent, out);
  }
  for (const DefaultDecl& d : defaults) {
    collect_atoms(d.prerequisite, out);
    collect_atoms(d.justification, out);
    collect_atoms(d.consequent, out);
  }
  return out;
}

namespace {

Source compile_rule(const RuleDecl& r, std::size_t id) {
  InferenceRule rule =
      r.form == RuleDecl::Form::Material
          ? InferenceRule{Formula::top(), Formula::implies(r.antecedent, r.consequent)}
          : InferenceRule{r.antecedent, r.consequent};
  return Source{id, r.weight, {std::move(rule)}, r.name};
}

}  // namespace

EvidenceModel KnowledgeBase::evidence_model(bool prioritized) const {
  EvidenceModel model;
  model.facts = facts;
  model.sources.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    model.sources.push_back(compile_rule(rules[i], i + 1));
  }
  if (prioritized) {
    std::map<int, IndexSet> by_level;  // ascending priority value, 0 dominant
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto [it, inserted] = by_level.try_emplace(rules[i].priority);
      it->second = it->second.with(i + 1);
    }
    PriorityModel pm;
    pm.levels.reserve(by_level.size());
    for (const auto& [level, ids] : by_level) pm.levels.push_back(ids);
    model.probability = std::move(pm);
  }
  model.validate();
  return model;
}

DefaultTheory KnowledgeBase::default_theory() const {
  DefaultTheory theory;
  theory.facts = facts;
  theory.defaults.reserve(defaults.size());
  for (std::size_t i = 0; i < defaults.size(); ++i) {
    const DefaultDecl& d = defaults[i];
    theory.defaults.push_back({i + 1, d.prerequisite, d.justification, d.consequent, d.name});
  }
  theory.validate();
  return theory;
}

CombinedModel KnowledgeBase::combined_model() const {
  CombinedModel model;
  model.facts = facts;
  model.default_sources = default_theory().defaults;
  model.numeric_sources = evidence_model().sources;
  model.validate();
  return model;
}

}  // namespace evident
