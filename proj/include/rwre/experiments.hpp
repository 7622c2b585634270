#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/erasure.hpp"
#include "rwre/graph.hpp"
#include "rwre/walk.hpp"

namespace rwre {

struct EstimateResult {
  double estimate = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;  // sqrt(p(1-p)/n)
  std::uint64_t censored = 0;
};

EstimateResult make_estimate(std::uint64_t successes, std::uint64_t n, std::uint64_t censored);

// ---- first-return distribution on a finite graph -------------------------

struct LoopReversalRow {
  VertexId pred = 0;
  std::uint64_t count = 0;
  double empirical = 0.0;
  Rational exact;  // in-weight of pred over total in-weight at the target
};

struct LoopReversalResult {
  std::vector<LoopReversalRow> rows;
  std::uint64_t trials = 0;
  std::uint64_t uncensored = 0;
  std::uint64_t censored = 0;
};

struct LoopReversalTrial {
  VertexId pred = 0;
  std::uint64_t steps = 0;
  bool censored = false;
};

// Empirical distribution of the vertex preceding the first positive hitting
// time of x, one fresh environment per trial, against the exact in-weight
// ratios. The walk starts at x.
LoopReversalResult verify_loop_reversal(const WeightedDigraph& g, VertexId x,
                                        std::uint64_t trials, std::uint64_t seed,
                                        std::uint64_t horizon, int workers,
                                        std::vector<LoopReversalTrial>* per_trial = nullptr);

// ---- lateral-order median -------------------------------------------------

// A sample value z with at most half the sample strictly below it and at most
// half strictly above it in the lateral order; ties break toward the smaller
// candidate.
Site empirical_median(const std::vector<Site>& samples, const Direction& dir);

// ---- two walks in one environment ------------------------------------------

struct TwoWalkClass {
  bool censored = false;
  bool g_both = false;
  bool opposite = false;   // exit displacements on opposite lateral sides
  bool intersect = false;  // shared vertex before the exits
  bool proximate = false;  // within 2R before the exits
};

// Walk 1 must carry a {x.ell >= 2L} stop, walk 2 a {x.ell <= -L} stop; both
// records are classified against the pilot point z_L (with x_L = z_L . ell).
TwoWalkClass classify_two_walk(const WalkRecord& rec1, const WalkRecord& rec2,
                               const Direction& dir, double threshold_l, const Site& z_l,
                               const JumpLaw& law);

struct TwoWalkTrial {
  TwoWalkClass cls;
  StopKind stop1 = StopKind::Horizon;
  StopKind stop2 = StopKind::Horizon;
  std::optional<std::size_t> hit1;  // index of the first walk's upper exit
  std::optional<std::size_t> hit2;  // index of the second walk's lower exit
};

struct DecompositionReport {
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::uint64_t uncensored = 0;
  std::uint64_t g_both = 0;
  std::uint64_t opposite = 0;
  std::uint64_t intersect = 0;
  std::uint64_t proximate = 0;
  std::uint64_t violations = 0;  // g_both with none of the three events
  Site z_l;
  std::uint64_t pilot_used = 0;
};

// Runs pilot walks to place z_L, then two-walk trials from 0 and z_L with a
// fresh environment per trial. Horizon-stopped trials are excluded from the
// event counts and reported as censored.
DecompositionReport decomposition_report(const DirichletLaw& dlaw, const Direction& dir,
                                         double threshold_l, std::uint64_t trials,
                                         std::uint64_t seed, std::uint64_t horizon, int workers,
                                         std::uint64_t pilot_target = 1000,
                                         std::vector<TwoWalkTrial>* per_trial = nullptr);

// ---- directional transience proxy -------------------------------------------

struct TransienceTrial {
  bool reached = false;    // hit {x.ell >= b} within the horizon
  bool strict_ok = false;  // reached with no {x.ell < 0} visit before the hit
  bool erasable_ok = false;  // reached with all such visits erasable
  std::uint64_t steps = 0;
};

struct TransienceResult {
  EstimateResult reach;     // headline estimate
  EstimateResult strict;    // diagnostic: hit order without erasures
  EstimateResult erasable;  // diagnostic: erasure event at threshold b
};

// Fraction of walks that reach the half-space {x.ell >= b} within the
// horizon; approaches the directional-transience probability as b and the
// horizon grow. The two side counts report how the walks got there.
TransienceResult estimate_transience(const DirichletLaw& dlaw, const Direction& dir, double b,
                                     std::uint64_t horizon, std::uint64_t trials,
                                     std::uint64_t seed, int workers,
                                     std::vector<TransienceTrial>* per_trial = nullptr);

// ---- first-return inequality on the cylinder --------------------------------

struct ReturnInequalityReport {
  double lhs = 0.5;
  EstimateResult first_return_special;  // from the upper boundary vertex
  EstimateResult detour_term;           // first step interior, upper before lower
  EstimateResult from_del_check;        // first return from the lower vertex
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double combined_std_error = 0.0;
  bool holds_within_error = false;
};

// Checks 1/2 <= (1/2) P(first return to the lower vertex from above arrives
// by the special edge) + P(first step interior and the upper vertex comes
// first), within four combined standard errors. Requires drift-zero weights
// along the cylinder axis.
ReturnInequalityReport return_inequality_report(const Cylinder& cyl, std::uint64_t trials,
                                                std::uint64_t seed, std::uint64_t horizon,
                                                int workers);

}  // namespace rwre
