#include <algorithm>
#include <random>
#include <vector>

#include <doctest.h>

#include "evident/bext.hpp"
#include "evident/defaults.hpp"
#include "evident/errors.hpp"
#include "evident/formula.hpp"
#include "evident/sources.hpp"
#include "oracles.hpp"

using evident::CombinedModel;
using evident::DefaultRule;
using evident::DefaultTheory;
using evident::EvidenceModel;
using evident::Extension;
using evident::Formula;
using evident::IndexSet;
using evident::PriorityModel;
using evident::Source;
using evident::TheoryBase;

namespace {

Formula v(const std::string& name) { return Formula::var(name); }

DefaultTheory nixon_defaults() {
  DefaultTheory theory;
  theory.facts = {v("quaker"), v("republican")};
  theory.defaults.push_back({1, v("quaker"), v("pacifist"), v("pacifist"), ""});
  theory.defaults.push_back(
      {2, v("republican"), Formula::negate(v("pacifist")), Formula::negate(v("pacifist")), ""});
  return theory;
}

bool contains_theory(const std::vector<Extension>& extensions, const TheoryBase& theory) {
  return std::any_of(extensions.begin(), extensions.end(), [&](const Extension& e) {
    return evident::theory_equal(e.theory, theory);
  });
}

bool same_theory_sets(const std::vector<Extension>& a, const std::vector<Extension>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a) {
    if (!contains_theory(b, e.theory)) return false;
  }
  for (const auto& e : b) {
    if (!contains_theory(a, e.theory)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("bext");

TEST_CASE("marker atoms are fenced off from user input") {
  CHECK(evident::q_atom(3).name() == "__q3");

  DefaultTheory tainted;
  tainted.facts = {v("__q1")};
  tainted.defaults.push_back({1, v("a"), v("b"), v("b"), ""});
  CHECK_THROWS_AS((void)evident::encode_defaults(tainted), evident::ReservedAtom);

  const auto enc = evident::encode_defaults(nixon_defaults());
  CHECK(enc.rule_groups.size() == 2);
  CHECK(enc.rule_groups[0].size() == 3);
  CHECK_THROWS_AS((void)evident::restricted_entails(enc, IndexSet{}, v("__q1")),
                  evident::ReservedAtom);
}

TEST_CASE("the encoded closure hides markers from the restricted view") {
  const auto enc = evident::encode_defaults(nixon_defaults());

  CHECK(evident::restricted_entails(enc, IndexSet{}, v("quaker")));
  CHECK_FALSE(evident::restricted_entails(enc, IndexSet{}, v("pacifist")));
  CHECK(evident::restricted_entails(enc, IndexSet{}.with(1), v("pacifist")));

  // The raw encoded closure does mention the marker; the restriction is
  // exactly the marker-free consequences.
  const auto closure = evident::encoded_closure(enc, IndexSet{}.with(1));
  CHECK(closure.theory.entails(v("__q1")));

  // Adopting a default whose justification the facts refute contradicts its
  // own marker.
  DefaultTheory blocked;
  blocked.facts = {v("a"), Formula::negate(v("b"))};
  blocked.defaults.push_back({1, v("a"), v("b"), v("c"), ""});
  const auto blocked_enc = evident::encode_defaults(blocked);
  CHECK_FALSE(evident::encoded_closure(blocked_enc, IndexSet{}.with(1)).theory.consistent());
  // Without adopting it, everything stays calm.
  CHECK(evident::encoded_closure(blocked_enc, IndexSet{}).theory.consistent());
}

TEST_CASE("conflicting sources split into two maximal readings") {
  EvidenceModel model;
  model.facts = {v("quaker"), v("republican")};
  model.sources.push_back({1, 0.9, {{v("quaker"), v("pacifist")}}});
  model.sources.push_back({2, 0.8, {{v("republican"), Formula::negate(v("pacifist"))}}});

  const auto result = evident::b_extensions(model);
  CHECK_FALSE(result.sigma_theory_divergence);
  REQUIRE(result.extensions.size() == 2);
  CHECK(contains_theory(result.extensions,
                        TheoryBase({v("quaker"), v("republican"), v("pacifist")})));
  CHECK(contains_theory(
      result.extensions,
      TheoryBase({v("quaker"), v("republican"), Formula::negate(v("pacifist"))})));
}

TEST_CASE("without sources the facts are the single extension") {
  EvidenceModel model;
  model.facts = {v("a")};
  const auto result = evident::b_extensions(model);
  REQUIRE(result.extensions.size() == 1);
  CHECK(evident::theory_equal(result.extensions.front().theory, TheoryBase({v("a")})));
  CHECK(result.extensions.front().generator.empty());
}

TEST_CASE("compatible sources merge into one maximal reading") {
  EvidenceModel model;
  model.facts = {v("a")};
  model.sources.push_back({1, 0.9, {{v("a"), v("b")}}});
  model.sources.push_back({2, 0.8, {{v("a"), v("c")}}});
  const auto result = evident::b_extensions(model);
  REQUIRE(result.extensions.size() == 1);
  CHECK(evident::theory_equal(result.extensions.front().theory,
                              TheoryBase({v("a"), v("b"), v("c")})));
  CHECK(result.extensions.front().generator == IndexSet{}.with(1).with(2));
  CHECK(result.extensions.front().fired == std::vector<std::size_t>{1, 2});
}

TEST_CASE("index-set maximality and theory maximality can disagree") {
  // Alone, the first source is mute (its premise is never established), so
  // {1} is a maximal consistent index set carrying no information; adding
  // the second establishes the premise and explodes. Theory-maximality
  // keeps only the informative reading.
  EvidenceModel model;
  model.sources.push_back({1, 0.9, {{v("a"), Formula::conj(v("p"), Formula::negate(v("p")))}}});
  model.sources.push_back({2, 0.8, {{Formula::top(), v("a")}}});
  const auto result = evident::b_extensions(model);
  CHECK(result.sigma_theory_divergence);
  REQUIRE(result.extensions.size() == 1);
  CHECK(evident::theory_equal(result.extensions.front().theory, TheoryBase({v("a")})));
}

TEST_CASE("inconsistent facts degenerate to the trivial extension") {
  EvidenceModel model;
  model.facts = {v("a"), Formula::negate(v("a"))};
  model.sources.push_back({1, 0.9, {{Formula::top(), v("b")}}});
  const auto result = evident::b_extensions(model);
  REQUIRE(result.extensions.size() == 1);
  CHECK_FALSE(result.extensions.front().theory.consistent());
}

TEST_CASE("priority levels pick the dominant reading first") {
  EvidenceModel model;
  model.facts = {v("penguin"), v("bird")};
  model.sources.push_back(
      {1, 0.9, {{Formula::top(), Formula::implies(v("penguin"), Formula::negate(v("flies")))}}});
  model.sources.push_back({2, 0.8, {{Formula::top(), Formula::implies(v("bird"), v("flies"))}}});
  model.probability = PriorityModel{{IndexSet{}.with(1), IndexSet{}.with(2)}};

  const auto result = evident::b_extensions(model);
  REQUIRE(result.extensions.size() == 1);
  CHECK(result.extensions.front().theory.entails(Formula::negate(v("flies"))));
  CHECK(result.extensions.front().generator == IndexSet{}.with(1));

  // Flat renormalization keeps both readings instead.
  model.probability = evident::DsModel{};
  CHECK(evident::b_extensions(model).extensions.size() == 2);
}

TEST_CASE("default readings computed through markers match the direct semantics") {
  const auto theory = nixon_defaults();
  const auto via_markers = evident::b_extensions(theory);
  REQUIRE(via_markers.extensions.size() == 2);
  for (const auto& e : via_markers.extensions) {
    CHECK_FALSE(evident::mentions_atom_prefix(e.theory.formulas(), evident::kQAtomPrefix));
  }
  CHECK(same_theory_sets(via_markers.extensions, evident::m_extensions(theory)));
  CHECK(same_theory_sets(via_markers.extensions,
                         evident::b_extensions_direct(theory).extensions));
}

TEST_CASE("the orphan default leaves only the empty reading") {
  DefaultTheory orphan;
  orphan.defaults.push_back({1, Formula::top(), v("b"), Formula::negate(v("b")), ""});
  const auto result = evident::b_extensions(orphan);
  REQUIRE(result.extensions.size() == 1);
  CHECK(evident::theory_equal(result.extensions.front().theory, TheoryBase{}));
  CHECK(result.extensions.front().fired.empty());
}

TEST_CASE("marker extensions equal the maximal acceptable theories on random inputs") {
  std::mt19937_64 rng(951753);
  for (int iter = 0; iter < 80; ++iter) {
    CAPTURE(iter);
    const auto theory = gen::default_theory(rng, 4, 5, 2, false);
    const auto via_markers = evident::b_extensions(theory);
    const auto maximal = evident::m_extensions(theory);
    REQUIRE(same_theory_sets(via_markers.extensions, maximal));
    for (const auto& e : via_markers.extensions) {
      REQUIRE_FALSE(evident::mentions_atom_prefix(e.theory.formulas(), evident::kQAtomPrefix));
    }
  }
}

TEST_CASE("for normal theories the direct route is also sound") {
  std::mt19937_64 rng(357159);
  for (int iter = 0; iter < 40; ++iter) {
    CAPTURE(iter);
    const auto theory = gen::default_theory(rng, 4, 5, 2, true);
    const auto via_markers = evident::b_extensions(theory);
    const auto direct = evident::b_extensions_direct(theory);
    REQUIRE(same_theory_sets(via_markers.extensions, direct.extensions));
    REQUIRE(same_theory_sets(via_markers.extensions, evident::reiter_extensions(theory)));
  }
}

TEST_CASE("combined belief brackets the numeric belief across readings") {
  CombinedModel model;
  model.facts = {v("quaker"), v("republican")};
  model.default_sources.push_back({1, v("quaker"), v("pacifist"), v("pacifist"), ""});
  model.default_sources.push_back(
      {2, v("republican"), Formula::negate(v("pacifist")), Formula::negate(v("pacifist")), ""});
  model.numeric_sources.push_back(
      {1, 0.9, {{Formula::top(), Formula::implies(v("pacifist"), v("dove"))}}});

  const auto result = evident::combined_belief(model, v("dove"));
  CHECK(result.lower == doctest::Approx(0.0));
  CHECK(result.upper == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(result.average == doctest::Approx(0.45).epsilon(1e-12));

  // The pacifist itself is fully believed in one reading, absent in the other.
  const auto pac = evident::combined_belief(model, v("pacifist"));
  CHECK(pac.lower == doctest::Approx(0.0));
  CHECK(pac.upper == doctest::Approx(1.0));
  CHECK(pac.average == doctest::Approx(0.5));

  // Facts hold in every reading.
  const auto fact = evident::combined_belief(model, v("quaker"));
  CHECK(fact.lower == doctest::Approx(1.0));
  CHECK(fact.upper == doctest::Approx(1.0));
}

TEST_CASE("combined belief without defaults is plain exact belief") {
  CombinedModel model;
  model.facts = {v("a")};
  model.numeric_sources.push_back({1, 0.7, {{v("a"), v("b")}}});
  const auto result = evident::combined_belief(model, v("b"));
  CHECK(result.lower == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(result.upper == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(result.average == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("combined belief without numeric sources reduces to entailment") {
  CombinedModel model;
  model.facts = {v("quaker"), v("republican")};
  model.default_sources.push_back({1, v("quaker"), v("pacifist"), v("pacifist"), ""});
  model.default_sources.push_back(
      {2, v("republican"), Formula::negate(v("pacifist")), Formula::negate(v("pacifist")), ""});
  const auto result = evident::combined_belief(model, v("pacifist"));
  CHECK(result.lower == doctest::Approx(0.0));
  CHECK(result.upper == doctest::Approx(1.0));
  CHECK(result.average == doctest::Approx(0.5));
}

TEST_CASE("combined measures are ordered and monotone on random models") {
  std::mt19937_64 rng(246813);
  const auto pool = gen::atom_pool(4);
  for (int iter = 0; iter < 25; ++iter) {
    CAPTURE(iter);
    CombinedModel model;
    const auto defaults = gen::default_theory(rng, 3, 4, 1, false);
    model.facts = defaults.facts;
    model.default_sources = defaults.defaults;
    const auto numeric = gen::single_prop_model(rng, 3, 4);
    model.numeric_sources = numeric.sources;

    const Formula d = gen::formula(rng, pool, 2);
    evident::CombinedBelief result;
    try {
      result = evident::combined_belief(model, d);
    } catch (const evident::ContradictorySources&) {
      continue;  // a numeric source clashed with some reading head-on
    }
    REQUIRE(result.lower <= result.average + 1e-12);
    REQUIRE(result.average <= result.upper + 1e-12);

    const Formula weaker = Formula::disj(d, gen::formula(rng, pool, 2));
    evident::CombinedBelief more;
    try {
      more = evident::combined_belief(model, weaker);
    } catch (const evident::ContradictorySources&) {
      continue;
    }
    REQUIRE(result.lower <= more.lower + 1e-12);
    REQUIRE(result.upper <= more.upper + 1e-12);
    REQUIRE(result.average <= more.average + 1e-12);
  }
}

TEST_CASE("combined model validation polices both rule families") {
  CombinedModel model;
  model.default_sources.push_back({2, v("a"), v("b"), v("b"), ""});
  CHECK_THROWS_AS(model.validate(), evident::ValidationError);

  CombinedModel marked;
  marked.numeric_sources.push_back({1, 0.5, {{v("a"), v("__q7")}}});
  CHECK_THROWS_AS(marked.validate(), evident::ReservedAtom);
}

TEST_SUITE_END();
