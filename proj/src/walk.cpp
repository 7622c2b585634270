#include "rwre/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace rwre {

const SiteDistribution& EnvCache::at(const Site& x) {
  auto it = memo_.find(x);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(x, site_distribution(*dlaw_, seed_, x)).first->second;
}

std::size_t pick_step(const SiteDistribution& dist, double u) {
  return pick_index(dist.probs, u);
}

namespace {

// Index of the first rule satisfied at the newly appended site, if any.
// Half-space rules take list order; the lateral rule comes last.
std::optional<StopReason> triggered(const StopRule& rule, const Site& x) {
  for (std::size_t i = 0; i < rule.half_space.size(); ++i) {
    const HalfSpaceStop& hs = rule.half_space[i];
    if (cmp_holds(dot(x, hs.dir.ell), hs.cmp, hs.a)) return StopReason{StopKind::HalfSpace, i};
  }
  if (rule.lateral) {
    if (std::abs(dot(x, *rule.lateral->dir.ell_perp)) >= rule.lateral->a) {
      return StopReason{StopKind::Lateral, 0};
    }
  }
  return std::nullopt;
}

void record_hits(WalkRecord& rec, const StopRule& rule, const Site& x, std::size_t n) {
  for (std::size_t i = 0; i < rule.half_space.size(); ++i) {
    if (rec.half_space_hits[i]) continue;
    const HalfSpaceStop& hs = rule.half_space[i];
    if (cmp_holds(dot(x, hs.dir.ell), hs.cmp, hs.a)) rec.half_space_hits[i] = n;
  }
  if (rule.lateral && !rec.lateral_hit) {
    if (std::abs(dot(x, *rule.lateral->dir.ell_perp)) >= rule.lateral->a) rec.lateral_hit = n;
  }
}

}  // namespace

WalkRecord run_walk_cached(EnvCache& env, Rng& steps, const Site& start, const StopRule& rule) {
  if (rule.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (rule.lateral && !rule.lateral->dir.ell_perp) {
    throw std::invalid_argument("lateral stop requires a two-dimensional direction");
  }
  WalkRecord rec;
  rec.half_space_hits.assign(rule.half_space.size(), std::nullopt);
  rec.path.reserve(64);
  rec.path.push_back(start);

  Site cur = start;
  for (;;) {
    const std::size_t n = rec.path.size() - 1;
    record_hits(rec, rule, cur, n);
    if (auto fired = triggered(rule, cur)) {
      rec.stop = *fired;
      return rec;
    }
    if (n >= rule.horizon) {
      rec.stop = StopReason{StopKind::Horizon, 0};
      return rec;
    }
    const SiteDistribution& dist = env.at(cur);
    std::size_t k = pick_step(dist, steps.next_unit());
    cur = add(cur, env.law().jumps[k].y);
    rec.path.push_back(cur);
  }
}

WalkRecord run_walk(const DirichletLaw& dlaw, EnvSeed seed, std::uint64_t trial,
                    const Site& start, const StopRule& rule) {
  EnvCache env(dlaw, seed);
  Rng steps = stream({seed.master, stream_tag::kWalkStep, trial, 1});
  return run_walk_cached(env, steps, start, rule);
}

std::pair<WalkRecord, WalkRecord> run_two_walks(const DirichletLaw& dlaw, EnvSeed seed,
                                                std::uint64_t trial, const Site& start1,
                                                const Site& start2, const StopRule& rule1,
                                                const StopRule& rule2) {
  EnvCache env(dlaw, seed);
  Rng steps1 = stream({seed.master, stream_tag::kWalkStep, trial, 1});
  Rng steps2 = stream({seed.master, stream_tag::kWalkStep, trial, 2});
  WalkRecord rec1 = run_walk_cached(env, steps1, start1, rule1);
  WalkRecord rec2 = run_walk_cached(env, steps2, start2, rule2);
  return {std::move(rec1), std::move(rec2)};
}

}  // namespace rwre
