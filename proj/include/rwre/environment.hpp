#pragma once

#include <cstdint>
#include <vector>

#include "rwre/lattice.hpp"
#include "rwre/rng.hpp"

namespace rwre {

// Environment law: one Dirichlet draw per site, parameterized by the jump
// weights.
struct DirichletLaw {
  JumpLaw law;
};

struct EnvSeed {
  std::uint64_t master = 0;
};

// Transition probabilities aligned with the jump list order.
struct SiteDistribution {
  std::vector<double> probs;
};

SiteDistribution dirichlet_draw(const std::vector<Rational>& weights, Rng& rng);

// Deterministic function of (seed, site): repeated calls, in any order, from
// any thread, return bit-identical vectors. The environment is never
// materialized globally; each site derives its own stream.
SiteDistribution site_distribution(const DirichletLaw& dlaw, EnvSeed seed, const Site& x);

// Mean first step under the environment-averaged law, exact in rationals.
std::vector<Rational> annealed_drift_exact(const JumpLaw& law);
std::vector<double> annealed_drift(const JumpLaw& law);

}  // namespace rwre
