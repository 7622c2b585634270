#include "rwre/erasure.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace rwre {

bool interval_valid(const WalkPath& path, ErasureInterval iv) {
  return iv.m < iv.n && iv.n + 1 <= path.size() && path[iv.m] == path[iv.n];
}

WalkPath erase_interval(const WalkPath& path, ErasureInterval iv) {
  if (!interval_valid(path, iv)) {
    throw std::invalid_argument("invalid erasure interval: endpoints must match inside the path");
  }
  WalkPath out;
  out.reserve(path.size() - (iv.n - iv.m));
  out.insert(out.end(), path.begin(), path.begin() + static_cast<std::ptrdiff_t>(iv.m));
  out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(iv.n), path.end());
  return out;
}

bool family_valid(const WalkPath& path, const ErasureFamily& family) {
  std::size_t prev_end = 0;
  bool first = true;
  for (const ErasureInterval& iv : family.intervals) {
    if (!interval_valid(path, iv)) return false;
    if (!first && iv.m < prev_end) return false;  // overlap or unsorted
    prev_end = iv.n;
    first = false;
  }
  return true;
}

WalkPath apply_family(const WalkPath& path, const ErasureFamily& family) {
  if (!family_valid(path, family)) throw std::invalid_argument("invalid erasure family");
  std::vector<bool> removed(path.size(), false);
  for (const ErasureInterval& iv : family.intervals) {
    for (std::size_t i = iv.m; i < iv.n; ++i) removed[i] = true;
  }
  WalkPath out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!removed[i]) out.push_back(path[i]);
  }
  return out;
}

namespace {

// Removed positions of a survivor mask must form matched-endpoint runs: for
// each maximal removed run i..j, path[i] == path[j+1]. Sequential erasures
// preserve this; it is the canonical form the closure is built on.
bool removed_runs_matched(const WalkPath& path, std::uint32_t mask) {
  const std::size_t len = path.size();
  std::size_t i = 0;
  while (i < len) {
    if (mask & (1u << i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < len && !(mask & (1u << (j + 1)))) ++j;
    if (j + 1 >= len) return false;  // the final position can never be removed
    if (path[i] != path[j + 1]) return false;
    i = j + 2;
  }
  return true;
}

std::vector<std::size_t> survivors(std::uint32_t mask, std::size_t len) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < len; ++i) {
    if (mask & (1u << i)) idx.push_back(i);
  }
  return idx;
}

}  // namespace

std::vector<std::uint32_t> reachable_survivor_masks(const WalkPath& path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  if (path.size() > kClosureMaxLen) {
    throw std::length_error("reachable_erasures is limited to short paths");
  }
  const std::size_t len = path.size();
  const std::uint32_t full = (1u << len) - 1u;

  std::unordered_set<std::uint32_t> seen{full};
  std::deque<std::uint32_t> queue{full};
  while (!queue.empty()) {
    std::uint32_t mask = queue.front();
    queue.pop_front();
    std::vector<std::size_t> idx = survivors(mask, len);
    // Erase [a, b) in current coordinates: survivors a..b-1 drop out. The
    // last current position is never a left endpoint of a removal.
    for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (path[idx[a]] != path[idx[b]]) continue;
        std::uint32_t next = mask;
        for (std::size_t k = a; k < b; ++k) next &= ~(1u << idx[k]);
        if (seen.insert(next).second) {
          if (!removed_runs_matched(path, next)) {
            throw std::logic_error("erasure closure produced an unmatched removed run");
          }
          queue.push_back(next);
        }
      }
    }
  }
  std::vector<std::uint32_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WalkPath> reachable_erasures(const WalkPath& path) {
  std::vector<WalkPath> out;
  for (std::uint32_t mask : reachable_survivor_masks(path)) {
    WalkPath p;
    for (std::size_t i : survivors(mask, path.size())) p.push_back(path[i]);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool event_g(const WalkPath& path, const Direction& dir, double a, double b) {
  if (path.empty()) throw std::invalid_argument("empty path");
  if (a == b) throw std::invalid_argument("event thresholds must differ");
  const bool upward = a < b;
  const Cmp hit_cmp = upward ? Cmp::Ge : Cmp::Le;
  auto hit = first_hit(path, dir, hit_cmp, b);
  if (!hit) return false;
  const std::size_t t = *hit;

  auto bad = [&](const Site& x) {
    double v = dot(x, dir.ell);
    return upward ? v < a : v > a;
  };

  std::unordered_set<Site, SiteHash> marked;
  marked.insert(path[0]);
  bool reach_prev = true;
  for (std::size_t j = 1; j <= t; ++j) {
    bool reach = (reach_prev && !bad(path[j - 1])) || marked.count(path[j]) > 0;
    if (reach) marked.insert(path[j]);
    reach_prev = reach;
  }
  return reach_prev;
}

bool event_b_horizon(const WalkPath& path, const Direction& dir, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("threshold must be positive");
  return event_g(path, dir, 0.0, b);
}

}  // namespace rwre
