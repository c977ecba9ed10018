#include "evident/bext.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "enumeration.hpp"
#include "evident/errors.hpp"
#include "evident/limits.hpp"
#include "evident/sat.hpp"

namespace evident {

Atom q_atom(std::size_t index) {
  return Atom(std::string(kQAtomPrefix) + std::to_string(index));
}

namespace {

void require_marker_free(const Formula& f, const char* what) {
  if (mentions_atom_prefix(f, kQAtomPrefix)) {
    throw ReservedAtom(std::string(what) + " mentions a reserved marker atom");
  }
}

}  // namespace

DefaultEncoding encode_defaults(const DefaultTheory& theory) {
  theory.validate();
  for (const Formula& f : theory.facts) require_marker_free(f, "fact");
  DefaultEncoding enc;
  enc.theory = theory;
  enc.rule_groups.reserve(theory.defaults.size());
  for (const DefaultRule& d : theory.defaults) {
    require_marker_free(d.prerequisite, "default prerequisite");
    require_marker_free(d.justification, "default justification");
    require_marker_free(d.consequent, "default consequent");
    Formula q = Formula::var(q_atom(d.id));
    enc.rule_groups.push_back({InferenceRule{d.prerequisite, q},
                               InferenceRule{q, d.consequent},
                               InferenceRule{Formula::negate(d.justification), Formula::negate(q)}});
  }
  return enc;
}

Closure encoded_closure(const DefaultEncoding& enc, IndexSet sigma) {
  std::vector<InferenceRule> rules;
  for (std::size_t id : sigma.members()) {
    if (id > enc.rule_groups.size()) throw ValidationError("default id out of range");
    const auto& triple = enc.rule_groups[id - 1];
    rules.insert(rules.end(), triple.begin(), triple.end());
  }
  return rule_closure(enc.theory.facts, rules);
}

bool restricted_entails(const DefaultEncoding& enc, IndexSet sigma, const Formula& d) {
  require_marker_free(d, "query");
  return encoded_closure(enc, sigma).theory.entails(d);
}

namespace {

struct TheoryCandidate {
  TheoryBase theory;
  std::uint64_t min_mask = 0;
  std::vector<std::size_t> fired;
};

// Deduplicates candidates up to theory_equal; feed masks ascending so the
// representative keeps the smallest generator.
void add_candidate(std::vector<TheoryCandidate>& cands, TheoryBase theory, std::uint64_t mask,
                   std::vector<std::size_t> fired) {
  for (const TheoryCandidate& c : cands) {
    if (theory_equal(c.theory, theory)) return;
  }
  cands.push_back({std::move(theory), mask, std::move(fired)});
}

// Keeps the candidates not strictly contained in another; candidates are
// pairwise non-equal, so containment is strict. Preserves min-mask order.
std::vector<TheoryCandidate> maximal_candidates(std::vector<TheoryCandidate> cands) {
  std::vector<TheoryCandidate> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (i != j && theory_subset(cands[i].theory, cands[j].theory)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(std::move(cands[i]));
  }
  return out;
}

bool theory_in(const TheoryBase& t, const std::vector<TheoryCandidate>& cands) {
  return std::any_of(cands.begin(), cands.end(),
                     [&](const TheoryCandidate& c) { return theory_equal(c.theory, t); });
}

// Same theory sets up to theory_equal.
bool same_theories(const std::vector<TheoryCandidate>& a,
                   const std::vector<TheoryCandidate>& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](const TheoryCandidate& c) { return theory_in(c.theory, b); }) &&
         std::all_of(b.begin(), b.end(),
                     [&](const TheoryCandidate& c) { return theory_in(c.theory, a); });
}

std::vector<Extension> to_extensions(std::vector<TheoryCandidate> cands) {
  std::sort(cands.begin(), cands.end(),
            [](const TheoryCandidate& a, const TheoryCandidate& b) {
              return a.min_mask < b.min_mask;
            });
  std::vector<Extension> out;
  out.reserve(cands.size());
  for (TheoryCandidate& c : cands) {
    out.push_back({std::move(c.theory), IndexSet::from_bits(c.min_mask), std::move(c.fired)});
  }
  return out;
}

Extension degenerate_extension(const std::vector<Formula>& facts) {
  Extension e;
  for (const Formula& f : facts) e.theory.add(f);
  return e;
}

// Shared tail: consistent (mask, theory, fired) triples in ascending mask
// order -> theory-maximal extensions plus the divergence flag against the
// index-set-maximal reading.
struct LatticeResult {
  std::vector<TheoryCandidate> all;          // deduped, all consistent theories
  std::vector<std::uint64_t> sigma_maximal;  // consistent masks w/o consistent strict superset
  std::vector<std::size_t> theory_of_mask;   // candidate index per consistent mask position
  std::vector<std::uint64_t> masks;          // consistent masks, ascending
};

BExtensions finish(const LatticeResult& lat) {
  BExtensions out;
  std::vector<TheoryCandidate> maximal = maximal_candidates(lat.all);
  // The index-set reading: theories of the sigma-maximal masks.
  std::vector<TheoryCandidate> sigma_view;
  for (std::uint64_t mask : lat.sigma_maximal) {
    auto pos = std::lower_bound(lat.masks.begin(), lat.masks.end(), mask) - lat.masks.begin();
    const TheoryCandidate& c = lat.all[lat.theory_of_mask[static_cast<std::size_t>(pos)]];
    add_candidate(sigma_view, c.theory, c.min_mask, c.fired);
  }
  out.sigma_theory_divergence = !same_theories(maximal, sigma_view);
  out.extensions = to_extensions(std::move(maximal));
  return out;
}

}  // namespace

BExtensions b_extensions(const EvidenceModel& model) {
  model.validate();
  require_enumerable(model.source_count());
  if (std::holds_alternative<PriorityModel>(model.probability)) {
    // Level-by-level greedy: within each level take the maximal consistent
    // additions given the choices made at earlier levels, branching on ties.
    const auto& levels = std::get<PriorityModel>(model.probability).levels;
    if (!satisfiable(model.facts)) {
      return {{degenerate_extension(model.facts)}, false};
    }
    bool divergence = false;
    auto advance = [&](const std::vector<IndexSet>& fronts, const IndexSet& level,
                       bool by_theory) {
      std::vector<IndexSet> next;
      for (const IndexSet& reliable : fronts) {
        std::vector<std::size_t> ids = level.members();
        std::vector<IndexSet> consistent_choices;
        std::vector<TheoryBase> theories;
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ids.size()); ++pick) {
          IndexSet tau = reliable;
          for (std::size_t j = 0; j < ids.size(); ++j) {
            if (pick & (std::uint64_t{1} << j)) tau = tau.with(ids[j]);
          }
          TheoryBase k = knowledge(model, tau);
          if (!k.consistent()) continue;
          consistent_choices.push_back(tau);
          theories.push_back(std::move(k));
        }
        for (std::size_t i = 0; i < consistent_choices.size(); ++i) {
          bool dominated = false;
          for (std::size_t j = 0; j < consistent_choices.size() && !dominated; ++j) {
            if (i == j) continue;
            dominated = by_theory ? (theory_subset(theories[i], theories[j]) &&
                                     !theory_subset(theories[j], theories[i]))
                                  : (consistent_choices[i] != consistent_choices[j] &&
                                     consistent_choices[i].subset_of(consistent_choices[j]));
          }
          if (!dominated) next.push_back(consistent_choices[i]);
        }
      }
      // Collapse duplicate index sets produced by different parents.
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      return next;
    };
    std::vector<IndexSet> fronts{IndexSet{}};
    std::vector<IndexSet> fronts_sigma{IndexSet{}};
    for (const IndexSet& level : levels) {
      fronts = advance(fronts, level, true);
      fronts_sigma = advance(fronts_sigma, level, false);
    }
    auto collect = [&](const std::vector<IndexSet>& masks) {
      std::vector<TheoryCandidate> cands;
      for (const IndexSet& sigma : masks) {
        Closure cl = knowledge_closure(model, sigma);
        std::vector<std::vector<InferenceRule>> groups;
        for (const Source& s : model.sources) groups.push_back(s.rules);
        add_candidate(cands, cl.theory, sigma.bits(),
                      detail::fired_ids(sigma.bits(), groups, cl.fired));
      }
      return cands;
    };
    std::vector<TheoryCandidate> maximal = maximal_candidates(collect(fronts));
    divergence = !same_theories(maximal, collect(fronts_sigma));
    BExtensions out;
    out.sigma_theory_divergence = divergence;
    out.extensions = to_extensions(std::move(maximal));
    return out;
  }
  std::vector<std::vector<InferenceRule>> groups;
  groups.reserve(model.sources.size());
  for (const Source& s : model.sources) groups.push_back(s.rules);
  LatticeResult lat;
  std::vector<bool> consistent(std::uint64_t{1} << model.source_count(), false);
  detail::visit_sigma_lattice(
      model.facts, groups, [&](std::uint64_t mask, const Closure* closure, bool ok) {
        consistent[mask] = ok;
        if (!ok) return;
        lat.masks.push_back(mask);
        std::size_t before = lat.all.size();
        add_candidate(lat.all, closure->theory, mask,
                      detail::fired_ids(mask, groups, closure->fired));
        std::size_t idx = before;  // index of the class this mask fell into
        if (lat.all.size() == before) {
          for (std::size_t i = 0; i < lat.all.size(); ++i) {
            if (theory_equal(lat.all[i].theory, closure->theory)) {
              idx = i;
              break;
            }
          }
        }
        lat.theory_of_mask.push_back(idx);
      });
  if (lat.masks.empty()) {
    return {{degenerate_extension(model.facts)}, false};
  }
  for (std::uint64_t mask : lat.masks) {
    bool maximal = true;
    for (std::size_t i = 0; i < model.source_count() && maximal; ++i) {
      std::uint64_t super = mask | (std::uint64_t{1} << i);
      if (super != mask && consistent[super]) maximal = false;
    }
    if (maximal) lat.sigma_maximal.push_back(mask);
  }
  return finish(lat);
}

BExtensions b_extensions(const DefaultTheory& theory) {
  theory.validate();
  require_enumerable(theory.default_count());
  DefaultEncoding enc = encode_defaults(theory);
  LatticeResult lat;
  std::vector<bool> consistent(std::uint64_t{1} << theory.default_count(), false);
  detail::visit_sigma_lattice(
      theory.facts, enc.rule_groups,
      [&](std::uint64_t mask, const Closure* closure, bool ok) {
        consistent[mask] = ok;
        if (!ok) return;
        // Restriction to the user language: facts plus the consequents whose
        // marker-to-consequent rule fired (second rule of each triple).
        TheoryBase restricted;
        for (const Formula& f : theory.facts) restricted.add(f);
        std::vector<std::size_t> fired;
        std::size_t offset = 0;
        std::size_t cursor = 0;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
          std::size_t id = static_cast<std::size_t>(std::countr_zero(rest)) + 1;
          std::size_t consequent_slot = offset + 1;
          while (cursor < closure->fired.size() && closure->fired[cursor] < consequent_slot) {
            ++cursor;
          }
          if (cursor < closure->fired.size() && closure->fired[cursor] == consequent_slot) {
            restricted.add(theory.defaults[id - 1].consequent);
            fired.push_back(id);
          }
          offset += 3;
        }
        lat.masks.push_back(mask);
        std::size_t before = lat.all.size();
        add_candidate(lat.all, restricted, mask, fired);
        std::size_t idx = before;
        if (lat.all.size() == before) {
          for (std::size_t i = 0; i < lat.all.size(); ++i) {
            if (theory_equal(lat.all[i].theory, restricted)) {
              idx = i;
              break;
            }
          }
        }
        lat.theory_of_mask.push_back(idx);
      });
  if (lat.masks.empty()) {
    return {{degenerate_extension(theory.facts)}, false};
  }
  for (std::uint64_t mask : lat.masks) {
    bool maximal = true;
    for (std::size_t i = 0; i < theory.default_count() && maximal; ++i) {
      std::uint64_t super = mask | (std::uint64_t{1} << i);
      if (super != mask && consistent[super]) maximal = false;
    }
    if (maximal) lat.sigma_maximal.push_back(mask);
  }
  return finish(lat);
}

BExtensions b_extensions_direct(const DefaultTheory& theory) {
  EvidenceModel as_sources;
  as_sources.facts = theory.facts;
  as_sources.sources.reserve(theory.defaults.size());
  for (const DefaultRule& d : theory.defaults) {
    as_sources.sources.push_back(
        {d.id, 1.0, {InferenceRule{d.prerequisite, d.consequent}}, d.label});
  }
  return b_extensions(as_sources);
}

void CombinedModel::validate() const {
  DefaultTheory dt{facts, default_sources};
  dt.validate();
  EvidenceModel em;
  em.facts = facts;
  em.sources = numeric_sources;
  em.validate();
  for (const Source& s : numeric_sources) {
    for (const InferenceRule& r : s.rules) {
      if (mentions_atom_prefix(r.premise, kQAtomPrefix) ||
          mentions_atom_prefix(r.consequent, kQAtomPrefix)) {
        throw ReservedAtom("numeric source mentions a reserved marker atom");
      }
    }
  }
}

CombinedBelief combined_belief(const CombinedModel& model, const Formula& d) {
  model.validate();
  DefaultTheory dt{model.facts, model.default_sources};
  BExtensions bexts = b_extensions(dt);
  CombinedBelief out;
  double sum = 0.0;
  bool first = true;
  for (const Extension& e : bexts.extensions) {
    EvidenceModel em;
    em.facts = e.theory.formulas();
    em.sources = model.numeric_sources;
    double bel = belief_exact(em, d);
    if (first) {
      out.lower = bel;
      out.upper = bel;
      first = false;
    } else {
      out.lower = std::min(out.lower, bel);
      out.upper = std::max(out.upper, bel);
    }
    sum += bel;
  }
  out.average = sum / static_cast<double>(bexts.extensions.size());
  return out;
}

}  // namespace evident
