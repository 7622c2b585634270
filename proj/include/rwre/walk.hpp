#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/rng.hpp"

namespace rwre {

struct HalfSpaceStop {
  Direction dir;
  Cmp cmp = Cmp::Ge;
  double a = 0.0;
};

struct LateralStop {
  Direction dir;
  double a = 0.0;
};

struct StopRule {
  std::uint64_t horizon = 1;  // max number of steps
  std::vector<HalfSpaceStop> half_space;
  std::optional<LateralStop> lateral;
};

enum class StopKind { Horizon, HalfSpace, Lateral };

struct StopReason {
  StopKind kind = StopKind::Horizon;
  std::size_t rule_index = 0;  // which half-space rule fired
};

struct WalkRecord {
  WalkPath path;
  StopReason stop;
  std::vector<std::optional<std::size_t>> half_space_hits;  // aligned with rule list
  std::optional<std::size_t> lateral_hit;

  bool censored() const { return stop.kind == StopKind::Horizon; }
};

// Memoized lazy environment; values are pure functions of (seed, site), so the
// cache only avoids recomputation.
class EnvCache {
 public:
  EnvCache(const DirichletLaw& dlaw, EnvSeed seed) : dlaw_(&dlaw), seed_(seed) {}

  const SiteDistribution& at(const Site& x);
  const JumpLaw& law() const { return dlaw_->law; }
  EnvSeed seed() const { return seed_; }

 private:
  const DirichletLaw* dlaw_;
  EnvSeed seed_;
  std::unordered_map<Site, SiteDistribution, SiteHash> memo_;
};

// Inverse-CDF step selection over the jump list in configuration order.
std::size_t pick_step(const SiteDistribution& dist, double u);

WalkRecord run_walk_cached(EnvCache& env, Rng& steps, const Site& start, const StopRule& rule);

// Markov chain in the lazily materialized environment, stopped at the first
// triggered rule; deterministic given (seed, trial).
WalkRecord run_walk(const DirichletLaw& dlaw, EnvSeed seed, std::uint64_t trial,
                    const Site& start, const StopRule& rule);

// Two walks reading one environment, with step streams keyed by walk id.
std::pair<WalkRecord, WalkRecord> run_two_walks(const DirichletLaw& dlaw, EnvSeed seed,
                                                std::uint64_t trial, const Site& start1,
                                                const Site& start2, const StopRule& rule1,
                                                const StopRule& rule2);

}  // namespace rwre
