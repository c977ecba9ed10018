#include "evident/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "evident/errors.hpp"
#include "evident/sat.hpp"

namespace evident {

std::optional<bool> MonotoneCache::lookup(std::uint64_t mask) const {
  for (std::uint64_t top : maximal_holding_) {
    if ((mask & ~top) == 0) return true;  // subset of a holding set
  }
  for (std::uint64_t bottom : minimal_failing_) {
    if ((mask & bottom) == bottom) return false;  // superset of a failing set
  }
  return std::nullopt;
}

void MonotoneCache::record(std::uint64_t mask, bool holds) {
  if (holds) {
    for (std::uint64_t top : maximal_holding_) {
      if ((mask & ~top) == 0) return;  // already implied
    }
    std::erase_if(maximal_holding_,
                  [mask](std::uint64_t top) { return (top & ~mask) == 0; });
    maximal_holding_.push_back(mask);
  } else {
    for (std::uint64_t bottom : minimal_failing_) {
      if ((mask & bottom) == bottom) return;  // already implied
    }
    std::erase_if(minimal_failing_,
                  [mask](std::uint64_t bottom) { return (bottom & mask) == mask; });
    minimal_failing_.push_back(mask);
  }
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The interval contains the sample proportion by construction; keep that
  // true under rounding (at p = 1 the upper bound is exactly 1 in real
  // arithmetic but can land one ulp short in floating point).
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

SigmaSampler::SigmaSampler(const EvidenceModel& model, std::uint64_t max_rejections_per_trial)
    : model_(model), max_rejections_(max_rejections_per_trial) {
  if (max_rejections_ < 1) throw ValidationError("rejection cap must be positive");
  if (!std::holds_alternative<DsModel>(model_.probability)) {
    throw ValidationError("sampling supports the renormalized model only");
  }
}

IndexSet SigmaSampler::sample(SplitMix64& rng) {
  std::uint64_t rejections = 0;
  for (;;) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < model_.source_count(); ++i) {
      if (rng.next_unit() < model_.sources[i].alpha) mask |= std::uint64_t{1} << i;
    }
    std::optional<bool> ok = consistent_.lookup(mask);
    if (!ok) {
      ok = knowledge(model_, IndexSet::from_bits(mask)).consistent();
      consistent_.record(mask, *ok);
    }
    if (*ok) {
      ++accepted_;
      return IndexSet::from_bits(mask);
    }
    ++rejected_;
    if (++rejections >= max_rejections_) {
      throw RejectionLimit("gave up after " + std::to_string(rejections) +
                           " consecutive rejected draws; sources are (near-)contradictory");
    }
  }
}

IndexSet sample_sigma(const EvidenceModel& model, SplitMix64& rng,
                      std::uint64_t max_rejections_per_trial) {
  SigmaSampler sampler(model, max_rejections_per_trial);
  return sampler.sample(rng);
}

McEstimate belief_monte_carlo(const EvidenceModel& model, const Formula& d, const McConfig& cfg) {
  model.validate();
  if (cfg.trials < 1) throw ValidationError("trial count must be positive");
  if (!satisfiable(model.facts)) {
    throw ContradictorySources("the certain facts are already inconsistent");
  }
  if (cfg.max_rejections_per_trial < 1) throw ValidationError("rejection cap must be positive");
  if (!std::holds_alternative<DsModel>(model.probability)) {
    throw ValidationError("sampling supports the renormalized model only");
  }
  // Verdicts shared across draws. Consistency is monotone in the index set
  // (true survives to subsets, false to supersets), and for the fixed query
  // so is non-entailment, so both sides fit a MonotoneCache. A fresh mask
  // computes its knowledge once and answers both questions together.
  MonotoneCache consistent;
  MonotoneCache refutes;  // holds = "does not entail the query"
  std::uint64_t successes = 0;
  std::uint64_t rejected = 0;
  // One sequential stream: trials are independent draws, and the run is
  // reproducible for a fixed seed.
  SplitMix64 rng{cfg.seed};
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    std::uint64_t rejections = 0;
    for (;;) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < model.source_count(); ++i) {
        if (rng.next_unit() < model.sources[i].alpha) mask |= std::uint64_t{1} << i;
      }
      std::optional<bool> ok = consistent.lookup(mask);
      std::optional<bool> non_entailing;
      if (!ok) {
        const TheoryBase k = knowledge(model, IndexSet::from_bits(mask));
        ok = k.consistent();
        consistent.record(mask, *ok);
        if (*ok) {
          non_entailing = !k.entails(d);
          refutes.record(mask, *non_entailing);
        }
      }
      if (*ok) {
        if (!non_entailing) non_entailing = refutes.lookup(mask);
        if (!non_entailing) {
          non_entailing = !knowledge(model, IndexSet::from_bits(mask)).entails(d);
          refutes.record(mask, *non_entailing);
        }
        if (!*non_entailing) ++successes;
        break;
      }
      ++rejected;
      if (++rejections >= cfg.max_rejections_per_trial) {
        throw RejectionLimit("gave up after " + std::to_string(rejections) +
                             " consecutive rejected draws; sources are (near-)contradictory");
      }
    }
  }
  McEstimate est;
  est.successes = successes;
  est.trials = cfg.trials;
  est.estimate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  auto [lo, hi] = wilson_interval(successes, cfg.trials);
  est.ci_low = lo;
  est.ci_high = hi;
  est.rejected_samples = rejected;
  return est;
}

}  // namespace evident
