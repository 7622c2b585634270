#include "rwre/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rwre/parallel.hpp"

namespace rwre {

namespace {

std::uint64_t derived_key(std::initializer_list<std::uint64_t> keys) {
  return stream(keys).state;
}

struct GraphArrival {
  VertexId pred = 0;
  std::uint64_t steps = 0;
  bool censored = true;
  VertexId target = 0;
};

// Walks until the first positive hitting time of any target vertex.
template <typename IsTarget>
GraphArrival walk_until(GraphEnv& env, Rng& steps, VertexId start,
                        IsTarget&& is_target, std::uint64_t horizon) {
  VertexId cur = start;
  VertexId prev = start;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const std::vector<double>& probs = env.at(cur);
    EdgeSpan out = env.out(cur);
    std::size_t k = pick_index(probs, steps.next_unit());
    prev = cur;
    cur = out[k].head;
    if (is_target(cur)) return GraphArrival{prev, n, false, cur};
  }
  return GraphArrival{prev, horizon, true, cur};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

EstimateResult make_estimate(std::uint64_t successes, std::uint64_t n, std::uint64_t censored) {
  EstimateResult r;
  r.trials = n;
  r.censored = censored;
  if (n > 0) {
    r.estimate = static_cast<double>(successes) / static_cast<double>(n);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
  }
  return r;
}

LoopReversalResult verify_loop_reversal(const WeightedDigraph& g, VertexId x,
                                        std::uint64_t trials, std::uint64_t seed,
                                        std::uint64_t horizon, int workers,
                                        std::vector<LoopReversalTrial>* per_trial) {
  std::vector<Edge> in = g.in_edges(x);
  if (in.empty()) throw std::invalid_argument("target vertex has no in-edges");

  auto rows = parallel_map(trials, workers, [&](std::uint64_t t) {
    GraphEnv env(g, seed, t);
    Rng steps = stream({seed, stream_tag::kWalkStep, t, 1});
    GraphArrival a = walk_until(env, steps, x, [x](VertexId v) { return v == x; }, horizon);
    return LoopReversalTrial{a.pred, a.steps, a.censored};
  });

  LoopReversalResult res;
  res.trials = trials;
  std::map<VertexId, std::uint64_t> counts;
  for (const LoopReversalTrial& t : rows) {
    if (t.censored) {
      ++res.censored;
    } else {
      ++counts[t.pred];
      ++res.uncensored;
    }
  }
  Rational in_total;
  for (const Edge& e : in) in_total += e.weight;
  for (const Edge& e : in) {
    LoopReversalRow row;
    row.pred = e.tail;
    row.exact = e.weight / in_total;
    row.count = counts.count(e.tail) ? counts[e.tail] : 0;
    row.empirical = res.uncensored
                        ? static_cast<double>(row.count) / static_cast<double>(res.uncensored)
                        : 0.0;
    res.rows.push_back(row);
    counts.erase(e.tail);
  }
  if (!counts.empty()) throw std::logic_error("first return arrived over a missing edge");
  if (per_trial) *per_trial = std::move(rows);
  return res;
}

Site empirical_median(const std::vector<Site>& samples, const Direction& dir) {
  if (samples.empty()) throw std::invalid_argument("median of an empty sample");
  std::vector<Site> sorted = samples;
  std::sort(sorted.begin(), sorted.end(), [&](const Site& a, const Site& b) {
    return prec_compare(a, b, dir) == Ordering::Before;
  });
  return sorted[(sorted.size() - 1) / 2];
}

TwoWalkClass classify_two_walk(const WalkRecord& rec1, const WalkRecord& rec2,
                               const Direction& dir, double threshold_l, const Site& z_l,
                               const JumpLaw& law) {
  TwoWalkClass out;
  if (rec1.censored() || rec2.censored()) {
    out.censored = true;
    return out;
  }
  const double x_l = dot(z_l, dir.ell);
  const bool g1 = event_g(rec1.path, dir, 0.0, 2.0 * threshold_l);
  const bool g2 = event_g(rec2.path, dir, x_l, -threshold_l);
  out.g_both = g1 && g2;
  if (!out.g_both) return out;

  // Records end at their half-space exits, so the exit indices are the ends.
  const Site& exit1 = rec1.path.back();
  const std::size_t t_zero =
      first_hit(rec2.path, dir, Cmp::Le, 0.0).value();  // guaranteed on the way down
  const double d1 = dot(exit1, *dir.ell_perp) - dot(z_l, *dir.ell_perp);
  const double d2 = dot(rec2.path[t_zero], *dir.ell_perp);
  out.opposite = d1 * d2 < 0.0;

  std::unordered_set<Site, SiteHash> visited1(rec1.path.begin(), rec1.path.end());
  for (const Site& s : rec2.path) {
    if (visited1.count(s)) {
      out.intersect = true;
      break;
    }
  }

  if (out.intersect) {
    out.proximate = true;
    return out;
  }
  // Proximity within 2R, exact in squared integers, via a coarse spatial hash.
  const std::int64_t limit_sq = 4 * law.radius_sq;
  const std::int64_t cell = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                          std::ceil(2.0 * law.radius)));
  std::unordered_map<std::uint64_t, std::vector<const Site*>> grid;
  auto cell_key = [&](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy & 0xffffffff);
  };
  for (const Site& s : rec1.path) {
    grid[cell_key(floor_div(s[0], cell), floor_div(s[1], cell))].push_back(&s);
  }
  for (const Site& s : rec2.path) {
    const std::int64_t cx = floor_div(s[0], cell);
    const std::int64_t cy = floor_div(s[1], cell);
    for (std::int64_t dx = -1; dx <= 1 && !out.proximate; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && !out.proximate; ++dy) {
        auto it = grid.find(cell_key(cx + dx, cy + dy));
        if (it == grid.end()) continue;
        for (const Site* w : it->second) {
          const std::int64_t ex = (*w)[0] - s[0];
          const std::int64_t ey = (*w)[1] - s[1];
          if (ex * ex + ey * ey <= limit_sq) {
            out.proximate = true;
            break;
          }
        }
      }
    }
    if (out.proximate) break;
  }
  return out;
}

DecompositionReport decomposition_report(const DirichletLaw& dlaw, const Direction& dir,
                                         double threshold_l, std::uint64_t trials,
                                         std::uint64_t seed, std::uint64_t horizon, int workers,
                                         std::uint64_t pilot_target,
                                         std::vector<TwoWalkTrial>* per_trial) {
  if (dir.dim() != 2 || !dir.ell_perp) {
    throw std::invalid_argument("two-walk classification requires d = 2");
  }
  if (!(threshold_l > 0.0)) throw std::invalid_argument("threshold must be positive");

  const Site origin{0, 0};
  StopRule rule1{horizon, {HalfSpaceStop{dir, Cmp::Ge, 2.0 * threshold_l}}, std::nullopt};

  // Pilot batch: exits of walks that reach 2L with every sub-zero visit
  // erasable; the median of those exits places the second start point.
  const std::uint64_t pilot_batch = std::max<std::uint64_t>(pilot_target * 8, 64);
  auto pilot = parallel_map(pilot_batch, workers, [&](std::uint64_t t) -> std::optional<Site> {
    EnvSeed env{derived_key({seed, stream_tag::kPilot, t})};
    WalkRecord rec = run_walk(dlaw, env, t, origin, rule1);
    if (rec.censored()) return std::nullopt;
    if (!event_g(rec.path, dir, 0.0, 2.0 * threshold_l)) return std::nullopt;
    return rec.path.back();
  });
  std::vector<Site> samples;
  for (const auto& s : pilot) {
    if (s) samples.push_back(*s);
    if (samples.size() >= pilot_target) break;
  }
  if (samples.empty()) {
    throw std::runtime_error("pilot run produced no qualifying exits; raise the horizon");
  }

  DecompositionReport rep;
  rep.z_l = empirical_median(samples, dir);
  rep.pilot_used = samples.size();
  rep.trials = trials;

  StopRule rule2{horizon, {HalfSpaceStop{dir, Cmp::Le, -threshold_l}}, std::nullopt};
  auto rows = parallel_map(trials, workers, [&](std::uint64_t t) {
    EnvSeed env{derived_key({seed, stream_tag::kTrialEnv, t})};
    auto [rec1, rec2] = run_two_walks(dlaw, env, t, origin, rep.z_l, rule1, rule2);
    TwoWalkTrial row;
    row.cls = classify_two_walk(rec1, rec2, dir, threshold_l, rep.z_l, dlaw.law);
    row.stop1 = rec1.stop.kind;
    row.stop2 = rec2.stop.kind;
    row.hit1 = rec1.half_space_hits[0];
    row.hit2 = rec2.half_space_hits[0];
    return row;
  });

  for (const TwoWalkTrial& row : rows) {
    const TwoWalkClass& c = row.cls;
    if (c.censored) {
      ++rep.censored;
      continue;
    }
    ++rep.uncensored;
    rep.g_both += c.g_both;
    rep.opposite += c.opposite;
    rep.intersect += c.intersect;
    rep.proximate += c.proximate;
    if (c.g_both && !c.opposite && !c.intersect && !c.proximate) ++rep.violations;
  }
  if (per_trial) *per_trial = std::move(rows);
  return rep;
}

TransienceResult estimate_transience(const DirichletLaw& dlaw, const Direction& dir, double b,
                                     std::uint64_t horizon, std::uint64_t trials,
                                     std::uint64_t seed, int workers,
                                     std::vector<TransienceTrial>* per_trial) {
  if (!(b > 0.0)) throw std::invalid_argument("threshold must be positive");
  const Site origin(static_cast<std::size_t>(dlaw.law.d), 0);
  StopRule rule{horizon, {HalfSpaceStop{dir, Cmp::Ge, b}}, std::nullopt};

  auto rows = parallel_map(trials, workers, [&](std::uint64_t t) {
    EnvSeed env{derived_key({seed, stream_tag::kTrialEnv, t})};
    WalkRecord rec = run_walk(dlaw, env, t, origin, rule);
    TransienceTrial row;
    row.steps = rec.path.size() - 1;
    row.reached = !rec.censored();
    if (row.reached) {
      row.strict_ok = !first_hit(rec.path, dir, Cmp::Lt, 0.0).has_value();
      row.erasable_ok = event_b_horizon(rec.path, dir, b);
    }
    return row;
  });

  std::uint64_t reached = 0, strict = 0, erasable = 0, censored = 0;
  for (const TransienceTrial& r : rows) {
    reached += r.reached;
    strict += r.strict_ok;
    erasable += r.erasable_ok;
    censored += !r.reached;
  }
  TransienceResult res;
  res.reach = make_estimate(reached, trials, censored);
  res.strict = make_estimate(strict, trials, censored);
  res.erasable = make_estimate(erasable, trials, censored);
  if (per_trial) *per_trial = std::move(rows);
  return res;
}

ReturnInequalityReport return_inequality_report(const Cylinder& cyl, std::uint64_t trials,
                                                std::uint64_t seed, std::uint64_t horizon,
                                                int workers) {
  if (!cyl.audit.drift_along_u.is_zero()) {
    throw std::invalid_argument("return inequality requires drift-zero weights along the axis");
  }
  const WeightedDigraph& g = cyl.graph;
  const VertexId del = cyl.del;
  const VertexId m = cyl.m;

  const std::uint64_t seed_from_m = derived_key({seed, 0x8041});
  const std::uint64_t seed_detour = derived_key({seed, 0x8042});
  const std::uint64_t seed_check = derived_key({seed, 0x8043});

  struct Flag {
    bool ok = false;
    bool censored = false;
  };

  auto from_m = parallel_map(trials, workers, [&](std::uint64_t t) {
    GraphEnv env(g, seed_from_m, t);
    Rng steps = stream({seed_from_m, stream_tag::kWalkStep, t, 1});
    GraphArrival a =
        walk_until(env, steps, m, [del](VertexId v) { return v == del; }, horizon);
    return Flag{!a.censored && a.pred == m, a.censored};
  });

  auto detour = parallel_map(trials, workers, [&](std::uint64_t t) {
    GraphEnv env(g, seed_detour, t);
    Rng steps = stream({seed_detour, stream_tag::kWalkStep, t, 1});
    // First step by hand so the "not the special edge" condition is visible.
    const std::vector<double>& probs = env.at(del);
    EdgeSpan out = env.out(del);
    VertexId first = out[pick_index(probs, steps.next_unit())].head;
    if (first == m) return Flag{false, false};
    if (first == del) throw std::logic_error("self-loop at the boundary vertex");
    GraphArrival a = walk_until(
        env, steps, first, [del, m](VertexId v) { return v == del || v == m; }, horizon);
    return Flag{!a.censored && a.target == m, a.censored};
  });

  auto check = parallel_map(trials, workers, [&](std::uint64_t t) {
    GraphEnv env(g, seed_check, t);
    Rng steps = stream({seed_check, stream_tag::kWalkStep, t, 1});
    GraphArrival a =
        walk_until(env, steps, del, [del](VertexId v) { return v == del; }, horizon);
    return Flag{!a.censored && a.pred == m, a.censored};
  });

  auto tally = [](const std::vector<Flag>& flags) {
    std::uint64_t ok = 0, censored = 0;
    for (const Flag& f : flags) {
      ok += f.ok;
      censored += f.censored;
    }
    return make_estimate(ok, flags.size() - censored, censored);
  };

  ReturnInequalityReport rep;
  rep.first_return_special = tally(from_m);
  rep.detour_term = tally(detour);
  rep.from_del_check = tally(check);
  rep.rhs = 0.5 * rep.first_return_special.estimate + rep.detour_term.estimate;
  rep.slack = rep.rhs - rep.lhs;
  rep.combined_std_error = std::sqrt(0.25 * rep.first_return_special.std_error *
                                         rep.first_return_special.std_error +
                                     rep.detour_term.std_error * rep.detour_term.std_error);
  rep.holds_within_error = rep.rhs + 4.0 * rep.combined_std_error >= rep.lhs;
  return rep;
}

}  // namespace rwre
