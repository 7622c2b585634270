#include "rwre/environment.hpp"

#include <stdexcept>

namespace rwre {

SiteDistribution dirichlet_draw(const std::vector<Rational>& weights, Rng& rng) {
  std::vector<double> shape;
  shape.reserve(weights.size());
  for (const Rational& w : weights) {
    if (!(w.sign() > 0)) throw std::invalid_argument("dirichlet weights must be positive");
    shape.push_back(w.to_double());
  }
  return SiteDistribution{draw_dirichlet(rng, shape)};
}

SiteDistribution site_distribution(const DirichletLaw& dlaw, EnvSeed seed, const Site& x) {
  if (x.size() != static_cast<std::size_t>(dlaw.law.d)) {
    throw std::invalid_argument("site dimension mismatch");
  }
  Rng rng = site_stream(seed.master, x);
  std::vector<double> shape;
  shape.reserve(dlaw.law.jumps.size());
  for (const Jump& j : dlaw.law.jumps) shape.push_back(j.alpha.to_double());
  return SiteDistribution{draw_dirichlet(rng, shape)};
}

std::vector<Rational> annealed_drift_exact(const JumpLaw& law) {
  const Rational total = law.alpha_total();
  std::vector<Rational> drift(static_cast<std::size_t>(law.d));
  for (const Jump& j : law.jumps) {
    const Rational p = j.alpha / total;
    for (std::size_t i = 0; i < drift.size(); ++i) {
      drift[i] += Rational(j.y[i]) * p;
    }
  }
  return drift;
}

std::vector<double> annealed_drift(const JumpLaw& law) {
  std::vector<double> out;
  for (const Rational& r : annealed_drift_exact(law)) out.push_back(r.to_double());
  return out;
}

}  // namespace rwre
