#pragma once

#include <cstdint>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

// Half-open index interval [m, n) of original-path positions; valid when
// 0 <= m < n <= len - 1 and path[m] == path[n]. Erasing it removes positions
// m..n-1 and splices path[n] after path[m-1].
struct ErasureInterval {
  std::size_t m = 0;
  std::size_t n = 0;
};

// Canonical representation of a finite sequence of erasures: pairwise
// disjoint matched-endpoint intervals, sorted by start.
struct ErasureFamily {
  std::vector<ErasureInterval> intervals;
};

bool interval_valid(const WalkPath& path, ErasureInterval iv);
WalkPath erase_interval(const WalkPath& path, ErasureInterval iv);

bool family_valid(const WalkPath& path, const ErasureFamily& family);
WalkPath apply_family(const WalkPath& path, const ErasureFamily& family);

inline constexpr std::size_t kClosureMaxLen = 16;

// Survivor sets of every walk reachable by erasing loops in any order,
// as bit masks over original indices (bit i set = position i kept). Exhaustive
// closure; paths longer than kClosureMaxLen sites are rejected. Every reached
// state is checked to have matched-endpoint removed runs.
std::vector<std::uint32_t> reachable_survivor_masks(const WalkPath& path);

// The walks themselves (the input path included), deduplicated and sorted.
std::vector<WalkPath> reachable_erasures(const WalkPath& path);

// Whether the walk reaches the b side of the direction and every a-side visit
// before that hit can be removed by erasures completed by the hit. For a < b
// the b side is {x.ell >= b} and bad visits are {x.ell < a}; for a > b the
// sides mirror ({x.ell <= b} and {x.ell > a}). a == b is rejected.
//
// Decided by a reachability recurrence over prefix positions: position 0 is
// reachable; position j is reachable if position j-1 is reachable and not
// bad (survive it), or some reachable earlier position holds the same site
// (erase the whole span in one matched interval). The walk is in the event
// exactly when the first b-side position is reachable.
bool event_g(const WalkPath& path, const Direction& dir, double a, double b);

// Finite-horizon stand-in for "some loop-erasure never enters {x.ell < 0}":
// event_g with a = 0 and threshold b. A path that never reaches b reports
// false (censoring is the caller's to track).
bool event_b_horizon(const WalkPath& path, const Direction& dir, double b);

}  // namespace rwre
