#pragma once

#include <set>
#include <string>
#include <vector>

#include "evident/bext.hpp"
#include "evident/defaults.hpp"
#include "evident/formula.hpp"
#include "evident/sources.hpp"

namespace evident {

/// One `rule` statement. Material rules compile to true/(a -> c) and allow
/// contraposition; inference rules compile to a/c and do not.
struct RuleDecl {
  enum class Form { Material, Inference };

  std::string name;
  Formula antecedent;
  Formula consequent;
  double weight = 1.0;
  Form form = Form::Material;
  int priority = 0;  // 0 = dominant
};

/// One `default` statement: prerequisite : justification / consequent.
struct DefaultDecl {
  std::string name;
  Formula prerequisite;
  Formula justification;
  Formula consequent;
};

/// Parsed knowledge base. Declaration order defines the 1-based ids of rules
/// and defaults (two separate id spaces).
struct KnowledgeBase {
  std::vector<Formula> facts;
  std::vector<RuleDecl> rules;
  std::vector<DefaultDecl> defaults;

  bool has_defaults() const { return !defaults.empty(); }
  std::set<std::string> atoms() const;

  /// The numeric rules as an evidence model. With prioritized set, sources
  /// are grouped into levels by ascending priority value.
  EvidenceModel evidence_model(bool prioritized = false) const;

  DefaultTheory default_theory() const;

  CombinedModel combined_model() const;
};

}  // namespace evident
