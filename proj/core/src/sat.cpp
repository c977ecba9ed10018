#include "evident/sat.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace evident {

namespace {

using Clause = std::vector<int>;

// Tseitin translation. Each subformula gets a definitional variable; atoms
// share one variable per name across the whole formula set.
class CnfBuilder {
 public:
  void assert_formula(const Formula& f) { clauses_.push_back({encode(f)}); }

  const std::vector<Clause>& clauses() const { return clauses_; }
  int var_count() const { return nvars_; }

 private:
  int new_var() { return ++nvars_; }

  int true_lit() {
    if (true_var_ == 0) {
      true_var_ = new_var();
      clauses_.push_back({true_var_});
    }
    return true_var_;
  }

  int atom_lit(const std::string& name) {
    auto it = atom_vars_.find(name);
    if (it != atom_vars_.end()) return it->second;
    int v = new_var();
    atom_vars_.emplace(name, v);
    return v;
  }

  int encode(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return true_lit();
      case Formula::Kind::Bottom:
        return -true_lit();
      case Formula::Kind::Var:
        return atom_lit(f.atom().name());
      case Formula::Kind::Not:
        return -encode(f.child());
      default:
        break;
    }
    auto memo = node_lits_.find(f.node_id());
    if (memo != node_lits_.end()) return memo->second;
    int a = encode(f.lhs());
    int b = encode(f.rhs());
    int v = new_var();
    switch (f.kind()) {
      case Formula::Kind::And:
        clauses_.push_back({-v, a});
        clauses_.push_back({-v, b});
        clauses_.push_back({v, -a, -b});
        break;
      case Formula::Kind::Or:
        clauses_.push_back({-v, a, b});
        clauses_.push_back({v, -a});
        clauses_.push_back({v, -b});
        break;
      default:  // Implies
        clauses_.push_back({-v, -a, b});
        clauses_.push_back({v, a});
        clauses_.push_back({v, -b});
        break;
    }
    node_lits_.emplace(f.node_id(), v);
    return v;
  }

  std::vector<Clause> clauses_;
  int nvars_ = 0;
  int true_var_ = 0;
  std::map<std::string, int, std::less<>> atom_vars_;
  std::unordered_map<const void*, int> node_lits_;
};

// assign[v]: 0 unknown, 1 true, -1 false.
bool unit_propagate(const std::vector<Clause>& clauses, std::vector<std::int8_t>& assign) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : clauses) {
      int unit = 0;
      int unassigned = 0;
      bool sat = false;
      for (int lit : c) {
        std::int8_t a = assign[static_cast<std::size_t>(std::abs(lit))];
        if (a == 0) {
          ++unassigned;
          unit = lit;
        } else if ((a > 0) == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        assign[static_cast<std::size_t>(std::abs(unit))] = unit > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  return true;
}

bool dpll(const std::vector<Clause>& clauses, std::vector<std::int8_t> assign) {
  if (!unit_propagate(clauses, assign)) return false;
  // Branch on a variable from some not-yet-satisfied clause; if none exists,
  // every clause is satisfied.
  int branch = 0;
  for (const Clause& c : clauses) {
    int candidate = 0;
    bool sat = false;
    for (int lit : c) {
      std::int8_t a = assign[static_cast<std::size_t>(std::abs(lit))];
      if (a == 0) {
        if (candidate == 0) candidate = std::abs(lit);
      } else if ((a > 0) == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) {
      branch = candidate;
      break;
    }
  }
  if (branch == 0) return true;
  std::vector<std::int8_t> left = assign;
  left[static_cast<std::size_t>(branch)] = 1;
  if (dpll(clauses, std::move(left))) return true;
  assign[static_cast<std::size_t>(branch)] = -1;
  return dpll(clauses, std::move(assign));
}

}  // namespace

bool satisfiable(std::span<const Formula> formulas) {
  CnfBuilder cnf;
  for (const Formula& f : formulas) cnf.assert_formula(f);
  std::vector<std::int8_t> assign(static_cast<std::size_t>(cnf.var_count()) + 1, 0);
  return dpll(cnf.clauses(), std::move(assign));
}

bool satisfiable(std::initializer_list<Formula> formulas) {
  return satisfiable(std::span<const Formula>(formulas.begin(), formulas.size()));
}

bool entails(std::span<const Formula> premises, const Formula& conclusion) {
  CnfBuilder cnf;
  for (const Formula& f : premises) cnf.assert_formula(f);
  cnf.assert_formula(Formula::negate(conclusion));
  std::vector<std::int8_t> assign(static_cast<std::size_t>(cnf.var_count()) + 1, 0);
  return !dpll(cnf.clauses(), std::move(assign));
}

bool entails(std::initializer_list<Formula> premises, const Formula& conclusion) {
  return entails(std::span<const Formula>(premises.begin(), premises.size()), conclusion);
}

bool equivalent(const Formula& a, const Formula& b) {
  return entails({a}, b) && entails({b}, a);
}

}  // namespace evident
