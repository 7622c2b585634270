#include "rwre/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwre/environment.hpp"
#include "rwre/experiments.hpp"
#include "rwre/graph.hpp"
#include "rwre/parallel.hpp"
#include "rwre/rng.hpp"

namespace rwre {

namespace {

struct Ctx {
  const ExperimentConfig& cfg;
  std::uint64_t seed;
  std::uint64_t digest;
  const RunOptions& opts;

  std::string prefix() const {
    std::ostringstream os;
    os << "version=" << kVersion << " digest=" << std::hex << digest << std::dec
       << " seed=" << seed;
    return os.str();
  }
};

JumpLaw law_from(const ExperimentConfig& cfg) {
  return JumpLaw::make(cfg.dim, cfg.jumps);
}

Direction direction_from(const ExperimentConfig& cfg) {
  if (cfg.direction.empty()) {
    throw std::invalid_argument("experiment '" + cfg.experiment + "' needs a direction");
  }
  if (static_cast<int>(cfg.direction.size()) != cfg.dim) {
    throw std::invalid_argument("direction dimension mismatch");
  }
  return Direction::from(cfg.direction);
}

Cylinder cylinder_from(const ExperimentConfig& cfg) {
  if (cfg.u.empty()) {
    throw std::invalid_argument("experiment '" + cfg.experiment + "' needs the cylinder axis u");
  }
  JumpLaw law = law_from(cfg);
  CylinderSpec spec = cfg.u2 ? CylinderSpec::make(law, cfg.u, *cfg.u2, cfg.n_around, cfg.depth)
                             : CylinderSpec::make(law, cfg.u, cfg.n_around, cfg.depth);
  return build_cylinder(spec);
}

std::string site_str(const Site& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

const char* stop_str(StopKind k) {
  switch (k) {
    case StopKind::Horizon: return "horizon";
    case StopKind::HalfSpace: return "half_space";
    case StopKind::Lateral: return "lateral";
  }
  return "?";
}

std::string hit_str(const std::optional<std::size_t>& hit) {
  return hit ? std::to_string(*hit) : std::string("none");
}

RunOutput run_drift(const Ctx& ctx) {
  JumpLaw law = law_from(ctx.cfg);
  std::vector<Rational> drift = annealed_drift_exact(law);

  std::ostringstream os;
  os << ctx.prefix() << " experiment=drift drift=\"[";
  for (std::size_t i = 0; i < drift.size(); ++i) os << (i ? ", " : "") << drift[i].str();
  os << "]\"";

  // Empirical first step, one fresh environment per draw.
  DirichletLaw dlaw{law};
  const Site origin(static_cast<std::size_t>(law.d), 0);
  auto steps = parallel_map(ctx.cfg.trials, ctx.opts.workers, [&](std::uint64_t t) {
    EnvSeed env{stream({ctx.seed, stream_tag::kTrialEnv, t}).state};
    SiteDistribution dist = site_distribution(dlaw, env, origin);
    Rng pick = stream({ctx.seed, stream_tag::kWalkStep, t, 1});
    return law.jumps[pick_index(dist.probs, pick.next_unit())].y;
  });
  for (int i = 0; i < law.d; ++i) {
    double mean = 0.0;
    for (const Site& s : steps) mean += static_cast<double>(s[static_cast<std::size_t>(i)]);
    mean /= static_cast<double>(steps.size());
    double var = 0.0;
    for (const Site& s : steps) {
      double d = static_cast<double>(s[static_cast<std::size_t>(i)]) - mean;
      var += d * d;
    }
    var /= static_cast<double>(steps.size());
    os << " empirical_mean_" << i << "=" << fmt_double(mean) << " empirical_se_" << i << "="
       << fmt_double(std::sqrt(var / static_cast<double>(steps.size())));
  }
  RunOutput out;
  out.summary = os.str();
  return out;
}

RunOutput run_transience(const Ctx& ctx) {
  DirichletLaw dlaw{law_from(ctx.cfg)};
  Direction dir = direction_from(ctx.cfg);
  std::vector<TransienceTrial> rows;
  TransienceResult res =
      estimate_transience(dlaw, dir, ctx.cfg.threshold_b, ctx.cfg.horizon, ctx.cfg.trials,
                          ctx.seed, ctx.opts.workers, ctx.opts.per_trial ? &rows : nullptr);
  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=transience b=" << fmt_double(ctx.cfg.threshold_b)
     << " horizon=" << ctx.cfg.horizon << " trials=" << res.reach.trials
     << " estimate=" << fmt_double(res.reach.estimate)
     << " std_error=" << fmt_double(res.reach.std_error) << " censored=" << res.reach.censored
     << " strict=" << fmt_double(res.strict.estimate)
     << " erasable=" << fmt_double(res.erasable.estimate);
  out.summary = os.str();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::ostringstream ts;
    ts << ctx.prefix() << " trial=" << i
       << " stop_reason=" << (rows[i].reached ? "half_space" : "horizon")
       << " hit_index=" << (rows[i].reached ? std::to_string(rows[i].steps) : std::string("none"))
       << " steps=" << rows[i].steps << " reached=" << rows[i].reached
       << " strict=" << rows[i].strict_ok << " erasable=" << rows[i].erasable_ok;
    out.trial_lines.push_back(ts.str());
  }
  return out;
}

RunOutput run_loop_reversal(const Ctx& ctx) {
  Cylinder cyl = cylinder_from(ctx.cfg);
  std::vector<LoopReversalTrial> rows;
  LoopReversalResult res =
      verify_loop_reversal(cyl.graph, cyl.del, ctx.cfg.trials, ctx.seed, ctx.cfg.horizon,
                           ctx.opts.workers, ctx.opts.per_trial ? &rows : nullptr);
  double special_emp = 0.0;
  Rational special_exact;
  double max_dev = 0.0;
  for (const LoopReversalRow& r : res.rows) {
    max_dev = std::max(max_dev, std::abs(r.empirical - r.exact.to_double()));
    if (r.pred == cyl.m) {
      special_emp = r.empirical;
      special_exact = r.exact;
    }
  }
  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=loop-reversal trials=" << res.trials
     << " censored=" << res.censored << " special_exact=" << special_exact.str()
     << " special_empirical=" << fmt_double(special_emp)
     << " max_abs_dev=" << fmt_double(max_dev) << " predecessors=" << res.rows.size();
  out.summary = os.str();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::ostringstream ts;
    ts << ctx.prefix() << " trial=" << i << " steps=" << rows[i].steps
       << " pred=" << rows[i].pred << " via_special=" << (rows[i].pred == cyl.m)
       << " censored=" << rows[i].censored;
    out.trial_lines.push_back(ts.str());
  }
  if (ctx.opts.emit_dot) out.dot = to_dot(cyl.graph);
  return out;
}

RunOutput run_two_walk(const Ctx& ctx) {
  DirichletLaw dlaw{law_from(ctx.cfg)};
  Direction dir = direction_from(ctx.cfg);
  std::vector<TwoWalkTrial> rows;
  DecompositionReport rep = decomposition_report(
      dlaw, dir, ctx.cfg.threshold_l, ctx.cfg.trials, ctx.seed, ctx.cfg.horizon,
      ctx.opts.workers, ctx.cfg.pilot_trials, ctx.opts.per_trial ? &rows : nullptr);
  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=two-walk L=" << fmt_double(ctx.cfg.threshold_l)
     << " z_L=" << site_str(rep.z_l) << " pilot_used=" << rep.pilot_used
     << " trials=" << rep.trials << " censored=" << rep.censored
     << " uncensored=" << rep.uncensored << " g_both=" << rep.g_both << " O=" << rep.opposite
     << " I=" << rep.intersect << " P=" << rep.proximate << " violations=" << rep.violations;
  out.summary = os.str();
  if (rep.violations > 0) out.exit_code = 3;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TwoWalkClass& c = rows[i].cls;
    std::ostringstream ts;
    ts << ctx.prefix() << " trial=" << i << " stop1=" << stop_str(rows[i].stop1)
       << " hit1=" << hit_str(rows[i].hit1) << " stop2=" << stop_str(rows[i].stop2)
       << " hit2=" << hit_str(rows[i].hit2) << " censored=" << c.censored
       << " g_both=" << c.g_both << " O=" << c.opposite << " I=" << c.intersect
       << " P=" << c.proximate
       << " violation=" << (c.g_both && !c.opposite && !c.intersect && !c.proximate);
    out.trial_lines.push_back(ts.str());
  }
  return out;
}

RunOutput run_cylinder_audit(const Ctx& ctx) {
  Cylinder cyl = cylinder_from(ctx.cfg);
  const CylinderAudit& a = cyl.audit;

  Rational interior_max;
  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    if (cyl.graph.label(v).kind != VertexKind::Interior) continue;
    Rational d = abs(cyl.graph.divergence(v));
    if (interior_max < d) interior_max = d;
  }
  Rational div_del = cyl.graph.divergence(cyl.del);
  Rational div_m = cyl.graph.divergence(cyl.m);

  const bool drift_zero = a.drift_along_u.is_zero();
  const bool class_sums_equal =
      a.sum_2a == a.sum_2b && a.sum_2b == a.sum_2c && a.sum_2c == a.sum_2d;
  const Rational skew = a.sum_2c - a.sum_2a;  // a multiple of the drift along u
  const bool sign_match = skew.sign() == a.drift_along_u.sign();

  bool ok = interior_max.is_zero();
  ok = ok && a.sum_2b == a.sum_2c && a.sum_2a == a.sum_2d;  // shift invariance
  ok = ok && sign_match;
  if (drift_zero) ok = ok && class_sums_equal && div_del.is_zero() && div_m.is_zero();

  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=cylinder-audit vertices=" << cyl.graph.num_vertices()
     << " edges=" << cyl.graph.edges().size() << " divergence_max=" << interior_max.str()
     << " div_del=" << div_del.str() << " div_M=" << div_m.str()
     << " class_2a=" << a.sum_2a.str() << " class_2b=" << a.sum_2b.str()
     << " class_2c=" << a.sum_2c.str() << " class_2d=" << a.sum_2d.str()
     << " special_weight=" << a.special_weight.str()
     << " class_sums_equal=" << (class_sums_equal ? "true" : "false")
     << " drift_along_u=" << a.drift_along_u.str() << " skew_2c_minus_2a=" << skew.str()
     << " sign_match=" << (sign_match ? "true" : "false") << " audit=" << (ok ? "pass" : "fail");
  out.summary = os.str();
  out.exit_code = ok ? 0 : 3;
  if (ctx.opts.emit_dot) out.dot = to_dot(cyl.graph);
  return out;
}

RunOutput run_ineq804(const Ctx& ctx) {
  Cylinder cyl = cylinder_from(ctx.cfg);
  ReturnInequalityReport rep =
      return_inequality_report(cyl, ctx.cfg.trials, ctx.seed, ctx.cfg.horizon, ctx.opts.workers);
  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=ineq-804 trials=" << ctx.cfg.trials
     << " lhs=" << fmt_double(rep.lhs)
     << " first_return_special=" << fmt_double(rep.first_return_special.estimate)
     << " first_return_special_se=" << fmt_double(rep.first_return_special.std_error)
     << " detour_term=" << fmt_double(rep.detour_term.estimate)
     << " detour_term_se=" << fmt_double(rep.detour_term.std_error)
     << " rhs=" << fmt_double(rep.rhs) << " slack=" << fmt_double(rep.slack)
     << " combined_se=" << fmt_double(rep.combined_std_error)
     << " holds_within_error=" << (rep.holds_within_error ? "true" : "false")
     << " from_del_check=" << fmt_double(rep.from_del_check.estimate);
  out.summary = os.str();
  out.exit_code = rep.holds_within_error ? 0 : 3;
  if (ctx.opts.emit_dot) out.dot = to_dot(cyl.graph);
  return out;
}

RunOutput run_c3_check(const Ctx& ctx) {
  JumpLaw law = law_from(ctx.cfg);
  C3Result res = check_c3(law, ctx.cfg.box_radius);
  RunOutput out;
  std::ostringstream os;
  os << ctx.prefix() << " experiment=c3-check box_radius=" << ctx.cfg.box_radius
     << " result=" << (res == C3Result::Proven ? "proven" : "unknown");
  out.summary = os.str();
  out.exit_code = res == C3Result::Proven ? 0 : 3;
  return out;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& cfg, std::uint64_t effective_seed,
                         const RunOptions& opts) {
  Ctx ctx{cfg, effective_seed, config_digest(cfg, effective_seed), opts};
  if (cfg.experiment == "drift") return run_drift(ctx);
  if (cfg.experiment == "transience") return run_transience(ctx);
  if (cfg.experiment == "loop-reversal") return run_loop_reversal(ctx);
  if (cfg.experiment == "two-walk") return run_two_walk(ctx);
  if (cfg.experiment == "cylinder-audit") return run_cylinder_audit(ctx);
  if (cfg.experiment == "ineq-804") return run_ineq804(ctx);
  if (cfg.experiment == "c3-check") return run_c3_check(ctx);
  throw std::invalid_argument("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace rwre
