#include "evident/defaults.hpp"

#include <algorithm>
#include <cstdint>

#include "enumeration.hpp"
#include "evident/errors.hpp"
#include "evident/limits.hpp"
#include "evident/sat.hpp"

namespace evident {

InferenceRule DefaultTheory::induced_rule(std::size_t id) const {
  if (id < 1 || id > defaults.size()) throw ValidationError("default id out of range");
  const DefaultRule& d = defaults[id - 1];
  return {d.prerequisite, d.consequent};
}

void DefaultTheory::validate() const {
  if (defaults.size() > IndexSet::kMaxId) {
    throw ValidationError("theories support at most 64 defaults");
  }
  for (std::size_t i = 0; i < defaults.size(); ++i) {
    if (defaults[i].id != i + 1) throw ValidationError("default ids must run 1..m in order");
  }
}

namespace {

std::vector<std::vector<InferenceRule>> induced_groups(const DefaultTheory& theory) {
  std::vector<std::vector<InferenceRule>> groups;
  groups.reserve(theory.defaults.size());
  for (const DefaultRule& d : theory.defaults) {
    groups.push_back({InferenceRule{d.prerequisite, d.consequent}});
  }
  return groups;
}

detail::TheoryClasser classify(const DefaultTheory& theory,
                               const std::vector<std::vector<InferenceRule>>& groups) {
  detail::TheoryClasser classer;
  detail::visit_sigma_lattice(theory.facts, groups,
                              [&](std::uint64_t mask, const Closure* closure, bool consistent) {
                                classer.add(mask, closure, consistent);
                              });
  return classer;
}

// Bitmask of ids whose justification the class theory refutes. An
// inconsistent theory refutes every justification.
std::uint64_t refuted_mask(const DefaultTheory& theory, const detail::TheoryClass& cls) {
  std::uint64_t refuted = 0;
  for (const DefaultRule& d : theory.defaults) {
    bool hit = !cls.consistent ||
               cls.closure.theory.entails(Formula::negate(d.justification));
    if (hit) refuted |= std::uint64_t{1} << (d.id - 1);
  }
  return refuted;
}

bool has_unrefuted_generator(const detail::TheoryClass& cls, std::uint64_t refuted) {
  return std::any_of(cls.masks.begin(), cls.masks.end(),
                     [&](std::uint64_t mask) { return (mask & refuted) == 0; });
}

Extension make_extension(const detail::TheoryClass& cls,
                         const std::vector<std::vector<InferenceRule>>& groups) {
  Extension e;
  e.theory = cls.closure.theory;
  e.generator = IndexSet::from_bits(cls.min_mask);
  e.fired = detail::fired_ids(cls.min_mask, groups, cls.closure.fired);
  return e;
}

}  // namespace

Closure default_closure(const DefaultTheory& theory, IndexSet gamma) {
  theory.validate();
  std::vector<InferenceRule> rules;
  for (std::size_t id : gamma.members()) rules.push_back(theory.induced_rule(id));
  return rule_closure(theory.facts, rules);
}

bool delta_consistent(const DefaultTheory& theory, const TheoryBase& k) {
  theory.validate();
  require_enumerable(theory.default_count());
  auto groups = induced_groups(theory);
  auto classer = classify(theory, groups);
  for (const detail::TheoryClass& cls : classer.classes()) {
    if (!theory_equal(cls.closure.theory, k)) continue;
    return has_unrefuted_generator(cls, refuted_mask(theory, cls));
  }
  return false;  // k is not generated by any index set
}

std::vector<Extension> m_extensions(const DefaultTheory& theory) {
  theory.validate();
  require_enumerable(theory.default_count());
  auto groups = induced_groups(theory);
  auto classer = classify(theory, groups);
  const auto& classes = classer.classes();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (has_unrefuted_generator(classes[i], refuted_mask(theory, classes[i]))) {
      candidates.push_back(i);
    }
  }
  std::vector<Extension> out;
  for (std::size_t i : candidates) {
    bool dominated = false;
    for (std::size_t j : candidates) {
      if (i != j && theory_subset(classes[i].closure.theory, classes[j].closure.theory)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(make_extension(classes[i], groups));
  }
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    return a.generator.bits() < b.generator.bits();
  });
  return out;
}

std::vector<Extension> reiter_extensions(const DefaultTheory& theory) {
  theory.validate();
  require_enumerable(theory.default_count());
  auto groups = induced_groups(theory);
  auto classer = classify(theory, groups);
  const auto& classes = classer.classes();
  const std::uint64_t full =
      theory.default_count() == 0 ? 0 : (std::uint64_t{1} << theory.default_count()) - 1;
  std::vector<Extension> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::uint64_t gamma = full & ~refuted_mask(theory, classes[i]);
    if (classer.class_of(gamma) == i) out.push_back(make_extension(classes[i], groups));
  }
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    return a.generator.bits() < b.generator.bits();
  });
  return out;
}

bool is_normal(const DefaultTheory& theory) {
  return std::all_of(theory.defaults.begin(), theory.defaults.end(), [](const DefaultRule& d) {
    return equivalent(d.justification, d.consequent);
  });
}

bool credulously_entails(const DefaultTheory& theory, const Formula& p) {
  auto exts = m_extensions(theory);
  return std::any_of(exts.begin(), exts.end(),
                     [&](const Extension& e) { return e.theory.entails(p); });
}

}  // namespace evident
