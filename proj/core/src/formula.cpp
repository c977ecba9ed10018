#include "evident/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <utility>

#include "evident/errors.hpp"

namespace evident {

bool valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!valid_atom_name(name_)) {
    throw ValidationError("invalid atom name '" + name_ + "'");
  }
}

struct Formula::Node {
  Kind kind;
  std::optional<Atom> atom;  // Var only
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t hash;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t kind_hash(Formula::Kind kind) {
  return (static_cast<std::size_t>(kind) + 2) * 0x9e3779b97f4a7c15ULL;
}

}  // namespace

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>(
      Node{Kind::Top, std::nullopt, nullptr, nullptr, kind_hash(Kind::Top)});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = std::make_shared<const Node>(
      Node{Kind::Bottom, std::nullopt, nullptr, nullptr, kind_hash(Kind::Bottom)});
  return Formula(node);
}

Formula Formula::var(Atom atom) {
  std::size_t h = combine(kind_hash(Kind::Var), std::hash<std::string>{}(atom.name()));
  return Formula(
      std::make_shared<const Node>(Node{Kind::Var, std::move(atom), nullptr, nullptr, h}));
}

Formula Formula::var(std::string name) { return var(Atom(std::move(name))); }

Formula Formula::negate(Formula f) {
  std::size_t h = combine(kind_hash(Kind::Not), f.hash());
  return Formula(
      std::make_shared<const Node>(Node{Kind::Not, std::nullopt, std::move(f.node_), nullptr, h}));
}

namespace {

std::size_t binary_hash(Formula::Kind kind, const Formula& lhs, const Formula& rhs) {
  return combine(combine(kind_hash(kind), lhs.hash()), rhs.hash());
}

}  // namespace

Formula Formula::conj(Formula lhs, Formula rhs) {
  std::size_t h = binary_hash(Kind::And, lhs, rhs);
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, std::nullopt, std::move(lhs.node_), std::move(rhs.node_), h}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  std::size_t h = binary_hash(Kind::Or, lhs, rhs);
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, std::nullopt, std::move(lhs.node_), std::move(rhs.node_), h}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  std::size_t h = binary_hash(Kind::Implies, lhs, rhs);
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, std::nullopt, std::move(lhs.node_), std::move(rhs.node_), h}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom& Formula::atom() const {
  if (node_->kind != Kind::Var) throw std::logic_error("atom() on non-Var formula");
  return *node_->atom;
}

Formula Formula::child() const {
  if (node_->kind != Kind::Not) throw std::logic_error("child() on non-Not formula");
  return Formula(node_->a);
}

Formula Formula::lhs() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or && node_->kind != Kind::Implies)
    throw std::logic_error("lhs() on non-binary formula");
  return Formula(node_->a);
}

Formula Formula::rhs() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or && node_->kind != Kind::Implies)
    throw std::logic_error("rhs() on non-binary formula");
  return Formula(node_->b);
}

std::size_t Formula::hash() const { return node_->hash; }

const void* Formula::node_id() const { return node_.get(); }

bool Formula::operator==(const Formula& other) const {
  if (node_.get() == other.node_.get()) return true;
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Var:
      return node_->atom->name() == other.node_->atom->name();
    case Kind::Not:
      return Formula(node_->a) == Formula(other.node_->a);
    default:
      return Formula(node_->a) == Formula(other.node_->a) &&
             Formula(node_->b) == Formula(other.node_->b);
  }
}

bool Valuation::contains(std::string_view name) const {
  return values_.find(name) != values_.end();
}

bool Valuation::value(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw MissingAtom("valuation has no value for atom '" + std::string(name) + "'");
  }
  return it->second;
}

bool evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Var:
      return v.value(f.atom().name());
    case Formula::Kind::Not:
      return !evaluate(f.child(), v);
    case Formula::Kind::And:
      return evaluate(f.lhs(), v) && evaluate(f.rhs(), v);
    case Formula::Kind::Or:
      return evaluate(f.lhs(), v) || evaluate(f.rhs(), v);
    case Formula::Kind::Implies:
      return !evaluate(f.lhs(), v) || evaluate(f.rhs(), v);
  }
  return false;  // unreachable
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Var:
      out.insert(f.atom().name());
      return;
    case Formula::Kind::Not:
      collect_atoms(f.child(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<std::string> atom_names(std::span<const Formula> formulas) {
  std::set<std::string> out;
  for (const Formula& f : formulas) collect_atoms(f, out);
  return out;
}

bool mentions_atom_prefix(const Formula& f, std::string_view prefix) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Var:
      return f.atom().name().starts_with(prefix);
    case Formula::Kind::Not:
      return mentions_atom_prefix(f.child(), prefix);
    default:
      return mentions_atom_prefix(f.lhs(), prefix) || mentions_atom_prefix(f.rhs(), prefix);
  }
}

bool mentions_atom_prefix(std::span<const Formula> formulas, std::string_view prefix) {
  return std::any_of(formulas.begin(), formulas.end(),
                     [&](const Formula& f) { return mentions_atom_prefix(f, prefix); });
}

namespace {

bool is_leaf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
    case Formula::Kind::Var:
      return true;
    default:
      return false;
  }
}

void print(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, std::string& out) {
  if (is_leaf(f)) {
    print(f, out);
  } else {
    out += '(';
    print(f, out);
    out += ')';
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += "true";
      return;
    case Formula::Kind::Bottom:
      out += "false";
      return;
    case Formula::Kind::Var:
      out += f.atom().name();
      return;
    case Formula::Kind::Not:
      out += '!';
      print_wrapped(f.child(), out);
      return;
    case Formula::Kind::And:
      print_wrapped(f.lhs(), out);
      out += " & ";
      print_wrapped(f.rhs(), out);
      return;
    case Formula::Kind::Or:
      print_wrapped(f.lhs(), out);
      out += " | ";
      print_wrapped(f.rhs(), out);
      return;
    case Formula::Kind::Implies:
      print_wrapped(f.lhs(), out);
      out += " -> ";
      print_wrapped(f.rhs(), out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace evident
