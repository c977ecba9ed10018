#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evident {

bool valid_atom_name(std::string_view name);

/// A propositional symbol. Names match [A-Za-z_][A-Za-z0-9_]* and compare
/// by exact string equality.
class Atom {
 public:
  explicit Atom(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

/// Immutable propositional sentence. Nodes are shared, so copies are cheap;
/// operator== is structural equality (semantic equivalence lives in sat.hpp).
class Formula {
 public:
  enum class Kind : unsigned char { Top, Bottom, Var, Not, And, Or, Implies };

  Formula() : Formula(top()) {}

  static Formula top();
  static Formula bottom();
  static Formula var(Atom atom);
  static Formula var(std::string name);
  static Formula negate(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);

  Kind kind() const;
  const Atom& atom() const;  // Var nodes only
  Formula child() const;     // Not nodes only
  Formula lhs() const;       // binary nodes only
  Formula rhs() const;

  std::size_t hash() const;
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Identity of the underlying node, used for memoisation.
  const void* node_id() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Total assignment over a finite atom set.
class Valuation {
 public:
  Valuation() = default;

  void set(const Atom& atom, bool value) { values_[atom.name()] = value; }
  void set(std::string_view name, bool value) { values_[std::string(name)] = value; }

  bool contains(std::string_view name) const;
  /// Throws MissingAtom when the atom lies outside the domain.
  bool value(std::string_view name) const;

  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::string, bool, std::less<>> values_;
};

/// Truth-functional evaluation; Implies(a, c) reads as !a | c.
bool evaluate(const Formula& f, const Valuation& v);

void collect_atoms(const Formula& f, std::set<std::string>& out);
std::set<std::string> atom_names(const Formula& f);
std::set<std::string> atom_names(std::span<const Formula> formulas);

/// True when some atom of f starts with the given prefix.
bool mentions_atom_prefix(const Formula& f, std::string_view prefix);
bool mentions_atom_prefix(std::span<const Formula> formulas, std::string_view prefix);

/// Fully parenthesised rendering; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

}  // namespace evident

template <>
struct std::hash<evident::Formula> {
  std::size_t operator()(const evident::Formula& f) const noexcept { return f.hash(); }
};
