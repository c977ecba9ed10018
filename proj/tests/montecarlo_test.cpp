#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "evident/errors.hpp"
#include "evident/formula.hpp"
#include "evident/montecarlo.hpp"
#include "evident/sources.hpp"
#include "oracles.hpp"

using evident::EvidenceModel;
using evident::Formula;
using evident::IndexSet;
using evident::McConfig;
using evident::SplitMix64;

namespace {

Formula v(const std::string& name) { return Formula::var(name); }

EvidenceModel nixon_model() {
  EvidenceModel model;
  model.facts = {v("quaker"), v("republican")};
  model.sources.push_back({1, 0.9, {{v("quaker"), v("pacifist")}}});
  model.sources.push_back({2, 0.8, {{v("republican"), Formula::negate(v("pacifist"))}}});
  return model;
}

}  // namespace

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("the raw generator is reproducible and roughly uniform") {
  SplitMix64 a{123}, b{123};
  for (int i = 0; i < 16; ++i) {
    CHECK(a.next() == b.next());
  }
  SplitMix64 c{7};
  double mean = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = c.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean += u;
  }
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("the confidence interval is clamped and brackets the proportion") {
  const auto [lo0, hi0] = evident::wilson_interval(0, 100);
  CHECK(lo0 == doctest::Approx(0.0));
  CHECK(hi0 > 0.0);
  const auto [lo1, hi1] = evident::wilson_interval(100, 100);
  CHECK(hi1 == doctest::Approx(1.0));
  CHECK(lo1 < 1.0);
  const auto [lo, hi] = evident::wilson_interval(642, 1000);
  CHECK(lo < 0.642);
  CHECK(0.642 < hi);
  CHECK(hi - lo < 0.07);
}

TEST_CASE("the monotone verdict cache answers by inclusion") {
  evident::MonotoneCache cache;
  CHECK_FALSE(cache.lookup(0b101).has_value());

  // A true verdict covers every subset, a false one every superset.
  cache.record(0b101, true);
  CHECK(cache.lookup(0b101) == true);
  CHECK(cache.lookup(0b001) == true);
  CHECK(cache.lookup(0b100) == true);
  CHECK(cache.lookup(0b000) == true);
  CHECK_FALSE(cache.lookup(0b111).has_value());
  CHECK_FALSE(cache.lookup(0b010).has_value());

  cache.record(0b010, false);
  CHECK(cache.lookup(0b010) == false);
  CHECK(cache.lookup(0b110) == false);
  CHECK(cache.lookup(0b011) == false);
  CHECK(cache.lookup(0b001) == true);  // unaffected

  // Recording a dominating set widens the covered region.
  cache.record(0b1101, true);
  CHECK(cache.lookup(0b1001) == true);
  CHECK(cache.lookup(0b101) == true);

  // Verdict membership mirrors brute force over a random monotone family:
  // "holds" iff the mask misses some designated pivot bit.
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    evident::MonotoneCache mono;
    const std::uint64_t pivots = rng() & 0x3f;
    auto truth = [pivots](std::uint64_t m) { return (m & pivots) != pivots; };
    std::vector<std::uint64_t> seen;
    for (int step = 0; step < 40; ++step) {
      const std::uint64_t mask = rng() & 0x3f;
      const auto got = mono.lookup(mask);
      if (got.has_value()) {
        CHECK(*got == truth(mask));  // never contradicts the ground truth
      } else {
        mono.record(mask, truth(mask));
      }
      seen.push_back(mask);
      // Everything recorded (or dominated by a record) stays retrievable.
      for (const std::uint64_t old : seen) {
        const auto verdict = mono.lookup(old);
        REQUIRE(verdict.has_value());
        CHECK(*verdict == truth(old));
      }
    }
  }
}

TEST_CASE("degenerate sampling cases") {
  EvidenceModel never;
  never.facts = {v("a")};
  never.sources.push_back({1, 0.0, {{v("a"), v("b")}}});
  SplitMix64 rng{1};
  CHECK(evident::sample_sigma(never, rng).empty());

  EvidenceModel always;
  always.facts = {v("a")};
  always.sources.push_back({1, 1.0, {{v("a"), v("b")}}});
  CHECK(evident::sample_sigma(always, rng) == IndexSet{}.with(1));
}

TEST_CASE("sampled index sets follow the renormalized distribution") {
  const auto model = nixon_model();
  evident::SigmaSampler sampler(model, 1000000);
  SplitMix64 rng{2024};
  const int n = 100000;
  int first_only = 0;
  for (int i = 0; i < n; ++i) {
    const auto sigma = sampler.sample(rng);
    // sigma = {1,2} is inconsistent and must never be returned.
    CHECK_FALSE((sigma.contains(1) && sigma.contains(2)));
    if (sigma.contains(1)) ++first_only;
  }
  CHECK(std::abs(first_only / double(n) - 9.0 / 14.0) < 0.01);

  // Acceptance ratio approximates the consistent prior mass (0.28 here).
  const double acceptance =
      double(sampler.accepted()) / double(sampler.accepted() + sampler.rejected());
  CHECK(std::abs(acceptance - evident::ds_normalizer(model)) < 0.01);
}

TEST_CASE("estimates are deterministic for a fixed seed") {
  const auto model = nixon_model();
  McConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 42;
  const auto a = evident::belief_monte_carlo(model, v("pacifist"), cfg);
  const auto b = evident::belief_monte_carlo(model, v("pacifist"), cfg);
  CHECK(a.estimate == b.estimate);
  CHECK(a.successes == b.successes);
  CHECK(a.rejected_samples == b.rejected_samples);
  CHECK(a.trials == cfg.trials);

  cfg.seed = 43;
  const auto c = evident::belief_monte_carlo(model, v("pacifist"), cfg);
  CHECK(c.successes != a.successes);  // astronomically unlikely to collide
}

TEST_CASE("certain queries need no statistics") {
  const auto model = nixon_model();
  McConfig cfg;
  cfg.trials = 500;
  cfg.seed = 7;
  CHECK(evident::belief_monte_carlo(model, Formula::top(), cfg).estimate == doctest::Approx(1.0));
  CHECK(evident::belief_monte_carlo(model, Formula::bottom(), cfg).estimate ==
        doctest::Approx(0.0));
  CHECK(evident::belief_monte_carlo(model, v("quaker"), cfg).estimate == doctest::Approx(1.0));
}

TEST_CASE("estimates concentrate around the exact belief") {
  std::mt19937_64 meta(86420);
  const auto pool = gen::atom_pool(4);
  int models_checked = 0;
  while (models_checked < 5) {
    const auto model = gen::rich_model(meta, 5, 4);
    const Formula d = gen::formula(meta, pool, 2);
    double exact = 0.0;
    try {
      exact = evident::belief_exact(model, d);
    } catch (const evident::ContradictorySources&) {
      continue;  // facts came out inconsistent; draw another model
    }
    ++models_checked;
    const std::uint64_t trials = 2000;
    // Six standard deviations of the trial mean: a panel of 50 seeds stays
    // inside with overwhelming probability.
    const double slack = 6.0 * std::sqrt(exact * (1.0 - exact) / double(trials)) + 1e-12;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      McConfig cfg;
      cfg.trials = trials;
      cfg.seed = seed * 1337;
      const auto est = evident::belief_monte_carlo(model, d, cfg);
      CAPTURE(models_checked);
      CAPTURE(seed);
      REQUIRE(std::abs(est.estimate - exact) <= slack);
      REQUIRE(est.ci_low <= est.estimate);
      REQUIRE(est.estimate <= est.ci_high);
    }
  }
}

TEST_CASE("interval coverage is near nominal on a pinned example") {
  const auto model = nixon_model();
  const double exact = 9.0 / 14.0;
  int covered = 0;
  const int panels = 40;
  for (int seed = 1; seed <= panels; ++seed) {
    McConfig cfg;
    cfg.trials = 4000;
    cfg.seed = static_cast<std::uint64_t>(seed) * 99991;
    const auto est = evident::belief_monte_carlo(model, v("pacifist"), cfg);
    if (est.ci_low <= exact && exact <= est.ci_high) {
      ++covered;
    }
  }
  // 95% nominal; 32/40 is a generous lower bound.
  CHECK(covered >= 32);
}

TEST_CASE("contradictory or near-contradictory models are reported") {
  EvidenceModel contradictory;
  contradictory.facts = {v("a"), Formula::negate(v("a"))};
  contradictory.sources.push_back({1, 0.5, {{Formula::top(), v("b")}}});
  McConfig cfg;
  cfg.trials = 10;
  CHECK_THROWS_AS((void)evident::belief_monte_carlo(contradictory, v("b"), cfg),
                  evident::ContradictorySources);

  EvidenceModel stuck;
  stuck.facts = {v("a")};
  stuck.sources.push_back({1, 1.0, {{v("a"), v("b")}}});
  stuck.sources.push_back({2, 1.0, {{v("a"), Formula::negate(v("b"))}}});
  cfg.max_rejections_per_trial = 200;
  CHECK_THROWS_AS((void)evident::belief_monte_carlo(stuck, v("b"), cfg),
                  evident::RejectionLimit);
}

TEST_CASE("the estimator only speaks the renormalized model") {
  auto model = nixon_model();
  model.probability = evident::PriorityModel{{IndexSet{}.with(1), IndexSet{}.with(2)}};
  McConfig cfg;
  cfg.trials = 10;
  CHECK_THROWS_AS((void)evident::belief_monte_carlo(model, v("pacifist"), cfg),
                  evident::ValidationError);
}

TEST_SUITE_END();
