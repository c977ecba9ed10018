// Micro benchmarks for the hot paths: parsing, satisfiability, exact belief
// over the source lattice, Monte-Carlo estimation, and extension search.
// Inputs are fixed so runs are comparable across revisions.

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "evident/bext.hpp"
#include "evident/defaults.hpp"
#include "evident/formula.hpp"
#include "evident/kb.hpp"
#include "evident/montecarlo.hpp"
#include "evident/parser.hpp"
#include "evident/sat.hpp"
#include "evident/sources.hpp"
#include "evident/theory.hpp"

namespace {

const char* kNixonKb = R"(fact quaker.
fact republican.
rule r1: if quaker then pacifist weight 0.9 nocontra.
rule r2: if republican then !pacifist weight 0.8 nocontra.
)";

// rule_count / 2 independent two-link chains s_i -> m_i -> t_i.
std::string chain_kb(int rule_count) {
  std::string text;
  for (int i = 1; i <= rule_count / 2; ++i) {
    const std::string n = std::to_string(i);
    text += "fact s" + n + ".\n";
    text += "rule up" + n + ": if s" + n + " then m" + n + " weight 0.998 nocontra.\n";
    text += "rule down" + n + ": if m" + n + " then t" + n + " weight 0.998 nocontra.\n";
  }
  return text;
}

// m sources, each asserting one fresh proposition, so the consistent part of
// the lattice is the whole lattice and exact belief visits all 2^m sets.
evident::EvidenceModel fanout_model(int sources) {
  evident::EvidenceModel model;
  for (int i = 1; i <= sources; ++i) {
    evident::Source src;
    src.id = static_cast<std::size_t>(i);
    src.alpha = 0.5 + 0.4 / i;
    src.rules.push_back({evident::Formula::top(), evident::Formula::var("p" + std::to_string(i))});
    model.sources.push_back(std::move(src));
  }
  return model;
}

const char* kDefaultsKb = R"(fact bird.
default d1: bird : flies / flies.
default d2: penguin : true / !flies.
default d3: bird : nests / nests.
default d4: flies : migrates / migrates.
default d5: nests : !migrates / !migrates.
)";

void BM_ParseKb(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::parse_kb(kNixonKb));
  }
}
BENCHMARK(BM_ParseKb);

void BM_Satisfiable(benchmark::State& state) {
  const auto kb = evident::parse_kb(kNixonKb);
  const auto model = kb.evidence_model();
  const auto base = evident::knowledge(model, evident::IndexSet{}.with(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(base.entails(evident::Formula::var("pacifist")));
  }
}
BENCHMARK(BM_Satisfiable);

void BM_RuleClosure(benchmark::State& state) {
  const auto model = evident::parse_kb(chain_kb(20)).evidence_model();
  evident::IndexSet all;
  for (std::size_t i = 1; i <= model.source_count(); ++i) all = all.with(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::knowledge_closure(model, all));
  }
}
BENCHMARK(BM_RuleClosure);

void BM_ExactBeliefNixon(benchmark::State& state) {
  const auto model = evident::parse_kb(kNixonKb).evidence_model();
  const auto query = evident::parse_formula("pacifist");
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::belief_exact(model, query));
  }
}
BENCHMARK(BM_ExactBeliefNixon);

void BM_ExactBeliefLattice(benchmark::State& state) {
  const auto model = fanout_model(static_cast<int>(state.range(0)));
  const auto query = evident::parse_formula("p1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::belief_exact(model, query));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactBeliefLattice)
    ->DenseRange(4, 12, 4)
    ->Complexity([](benchmark::IterationCount n) {
      return std::ldexp(1.0, static_cast<int>(n));  // lattice size 2^m
    });

void BM_MonteCarlo(benchmark::State& state) {
  const auto model =
      evident::parse_kb(chain_kb(static_cast<int>(state.range(0)))).evidence_model();
  const auto query = evident::parse_formula("t1");
  evident::McConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 1234;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::belief_monte_carlo(model, query, cfg));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(10)->Arg(20);

void BM_MExtensions(benchmark::State& state) {
  const auto theory = evident::parse_kb(kDefaultsKb).default_theory();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::m_extensions(theory));
  }
}
BENCHMARK(BM_MExtensions);

void BM_ReiterExtensions(benchmark::State& state) {
  const auto theory = evident::parse_kb(kDefaultsKb).default_theory();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::reiter_extensions(theory));
  }
}
BENCHMARK(BM_ReiterExtensions);

void BM_BExtensions(benchmark::State& state) {
  const auto model = evident::parse_kb(kNixonKb).evidence_model();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evident::b_extensions(model));
  }
}
BENCHMARK(BM_BExtensions);

}  // namespace

BENCHMARK_MAIN();
