#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evident/formula.hpp"
#include "evident/index_set.hpp"
#include "evident/sources.hpp"

namespace evident {

/// Small deterministic generator (splitmix64). Used instead of the standard
/// distributions so streams are identical across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct McConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t max_rejections_per_trial = 1000000;
};

struct McEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;   // 95% Wilson score interval
  double ci_high = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::uint64_t rejected_samples = 0;
};

/// 95% Wilson score interval for successes out of trials.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// Verdict cache for properties monotone in the index set: a verdict of
/// true propagates to every subset and a verdict of false to every superset.
/// Knowledge only grows as sources join, so consistency behaves this way,
/// and so does non-entailment of a fixed query. The cache keeps the frontier
/// of each side (maximal true sets, minimal false sets) and answers by
/// inclusion, resolving most repeat masks without touching the solver.
class MonotoneCache {
 public:
  /// Verdict for the mask if it follows from a recorded one, else nullopt.
  std::optional<bool> lookup(std::uint64_t mask) const;

  /// Records a freshly computed verdict, dropping entries it subsumes.
  void record(std::uint64_t mask, bool holds);

 private:
  std::vector<std::uint64_t> maximal_holding_;
  std::vector<std::uint64_t> minimal_failing_;
};

/// Draws index sets distributed as ds_probability: each source joins
/// independently with probability alpha, and draws with inconsistent
/// knowledge are rejected and retried. Consistency results are cached per
/// index set across draws.
class SigmaSampler {
 public:
  SigmaSampler(const EvidenceModel& model, std::uint64_t max_rejections_per_trial);

  /// Throws RejectionLimit after max_rejections_per_trial consecutive
  /// rejections (near-contradictory sources).
  IndexSet sample(SplitMix64& rng);

  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t rejected() const { return rejected_; }

 private:
  const EvidenceModel& model_;
  std::uint64_t max_rejections_;
  std::uint64_t accepted_ = 0;
  std::uint64_t rejected_ = 0;
  MonotoneCache consistent_;
};

/// Single draw with a fresh cache; convenience over SigmaSampler.
IndexSet sample_sigma(const EvidenceModel& model, SplitMix64& rng,
                      std::uint64_t max_rejections_per_trial = McConfig{}.max_rejections_per_trial);

/// Monte-Carlo belief: the success proportion over cfg.trials draws from one
/// sequential stream, where a trial succeeds when the sampled knowledge
/// entails d. Deterministic for a fixed cfg.seed. Renormalized model only.
McEstimate belief_monte_carlo(const EvidenceModel& model, const Formula& d, const McConfig& cfg);

}  // namespace evident
