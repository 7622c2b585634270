#pragma once

// Brute-force reference implementations kept independent of the library's
// decision procedures; tests certify the fast paths against these.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/erasure.hpp"
#include "rwre/lattice.hpp"

namespace oracle {

// Survivor masks of every family of pairwise disjoint matched-endpoint
// intervals, enumerated directly from the definition: walk the positions left
// to right and either keep one or open an interval ending at a matching later
// position.
inline std::vector<std::uint32_t> all_family_masks(const rwre::WalkPath& path) {
  const std::size_t len = path.size();
  std::vector<std::uint32_t> out;
  std::vector<std::pair<std::size_t, std::uint32_t>> stack{{0, (1u << len) - 1u}};
  while (!stack.empty()) {
    auto [pos, mask] = stack.back();
    stack.pop_back();
    if (pos >= len) {
      out.push_back(mask);
      continue;
    }
    stack.push_back({pos + 1, mask});  // keep this position
    for (std::size_t n = pos + 1; n <= len - 1; ++n) {
      if (path[pos] != path[n]) continue;  // interval [pos, n) needs matched ends
      std::uint32_t next = mask;
      for (std::size_t k = pos; k < n; ++k) next &= ~(1u << k);
      stack.push_back({n, next});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline rwre::WalkPath path_from_mask(const rwre::WalkPath& path, std::uint32_t mask) {
  rwre::WalkPath out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (mask & (1u << i)) out.push_back(path[i]);
  }
  return out;
}

// Event decision straight from the definition: truncate at the first b-side
// hit, enumerate every erasure of the prefix, and ask whether one of them
// reaches the b side before touching the a side.
inline bool event_g_by_enumeration(const rwre::WalkPath& path, const rwre::Direction& dir,
                                   double a, double b,
                                   bool use_closure /* else direct families */) {
  using namespace rwre;
  const bool upward = a < b;
  auto hit = first_hit(path, dir, upward ? Cmp::Ge : Cmp::Le, b);
  if (!hit) return false;
  WalkPath prefix(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(*hit) + 1);

  std::vector<std::uint32_t> masks =
      use_closure ? reachable_survivor_masks(prefix) : all_family_masks(prefix);
  for (std::uint32_t mask : masks) {
    WalkPath y = path_from_mask(prefix, mask);
    auto tb = first_hit(y, dir, upward ? Cmp::Ge : Cmp::Le, b);
    auto ta = first_hit(y, dir, upward ? Cmp::Lt : Cmp::Gt, a);
    if (tb && (!ta || *tb < *ta)) return true;
  }
  return false;
}

}  // namespace oracle
