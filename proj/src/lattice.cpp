#include "rwre/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace rwre {

namespace {

void require_dim(const Site& s, std::size_t d, const char* what) {
  if (s.size() != d) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Site add(const Site& a, const Site& b) {
  require_dim(b, a.size(), "add");
  Site r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Site sub(const Site& a, const Site& b) {
  require_dim(b, a.size(), "sub");
  Site r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::int64_t dot_int(const Site& a, const Site& b) {
  require_dim(b, a.size(), "dot_int");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const Site& x, const std::vector<double>& v) {
  require_dim(x, v.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(x[i]) * v[i];
  return s;
}

std::int64_t norm_sq(const Site& x) {
  std::int64_t s = 0;
  for (Coord c : x) s += c * c;
  return s;
}

double norm(const Site& x) { return std::sqrt(static_cast<double>(norm_sq(x))); }

std::size_t SiteHash::operator()(const Site& s) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (s.size() * 0xff51afd7ed558ccdull);
  for (Coord c : s) {
    std::uint64_t z = h ^ (static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

Direction Direction::from(std::vector<double> v) {
  double n2 = 0.0;
  for (double c : v) n2 += c * c;
  if (!(n2 > 0.0)) throw std::invalid_argument("direction must be nonzero");
  double n = std::sqrt(n2);
  for (double& c : v) c /= n;
  Direction d;
  d.ell = std::move(v);
  if (d.ell.size() == 2) d.ell_perp = std::vector<double>{-d.ell[1], d.ell[0]};
  return d;
}

Direction Direction::axis(int d, int index, int sign) {
  if (d < 1 || index < 0 || index >= d) throw std::invalid_argument("bad axis");
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[static_cast<std::size_t>(index)] = sign >= 0 ? 1.0 : -1.0;
  return from(std::move(v));
}

JumpLaw JumpLaw::make(int d, std::vector<Jump> jumps) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (jumps.empty()) throw std::invalid_argument("jump set must be nonempty");
  JumpLaw law;
  law.d = d;
  std::set<Site> seen;
  for (const Jump& j : jumps) {
    if (j.y.size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("jump dimension mismatch");
    }
    if (norm_sq(j.y) == 0) throw std::invalid_argument("zero jump is not allowed");
    if (!(j.alpha.sign() > 0)) throw std::invalid_argument("jump weights must be positive");
    if (!seen.insert(j.y).second) throw std::invalid_argument("duplicate jump");
    law.radius_sq = std::max(law.radius_sq, norm_sq(j.y));
  }
  law.jumps = std::move(jumps);
  law.radius = std::sqrt(static_cast<double>(law.radius_sq));
  return law;
}

Rational JumpLaw::alpha_total() const {
  Rational t;
  for (const Jump& j : jumps) t += j.alpha;
  return t;
}

bool JumpLaw::is_jump(const Site& step) const {
  for (const Jump& j : jumps) {
    if (j.y == step) return true;
  }
  return false;
}

Ordering prec_compare(const Site& x, const Site& y, const Direction& dir) {
  if (dir.dim() != 2 || !dir.ell_perp) {
    throw std::invalid_argument("prec_compare requires a two-dimensional direction");
  }
  require_dim(x, 2, "prec_compare");
  require_dim(y, 2, "prec_compare");
  if (x == y) return Ordering::Equal;
  double px = dot(x, *dir.ell_perp);
  double py = dot(y, *dir.ell_perp);
  if (px < py) return Ordering::Before;
  if (px > py) return Ordering::After;
  double lx = dot(x, dir.ell);
  double ly = dot(y, dir.ell);
  if (lx < ly) return Ordering::Before;
  if (lx > ly) return Ordering::After;
  // Distinct sites, both dot products numerically tied.
  return x < y ? Ordering::Before : Ordering::After;
}

bool cmp_holds(double value, Cmp cmp, double a) {
  switch (cmp) {
    case Cmp::Lt: return value < a;
    case Cmp::Le: return value <= a;
    case Cmp::Gt: return value > a;
    case Cmp::Ge: return value >= a;
  }
  return false;
}

std::optional<std::size_t> first_hit(const WalkPath& path, const Direction& dir, Cmp cmp,
                                     double a) {
  if (path.empty()) throw std::invalid_argument("first_hit on empty path");
  for (std::size_t n = 0; n < path.size(); ++n) {
    if (cmp_holds(dot(path[n], dir.ell), cmp, a)) return n;
  }
  return std::nullopt;
}

std::optional<std::size_t> lateral_first_exit(const WalkPath& path, const Direction& dir,
                                              double a) {
  if (dir.dim() != 2 || !dir.ell_perp) {
    throw std::invalid_argument("lateral_first_exit requires a two-dimensional direction");
  }
  if (path.empty()) throw std::invalid_argument("lateral_first_exit on empty path");
  for (std::size_t n = 0; n < path.size(); ++n) {
    if (std::abs(dot(path[n], *dir.ell_perp)) >= a) return n;
  }
  return std::nullopt;
}

C3Result check_c3(const JumpLaw& law, int box_radius) {
  if (static_cast<double>(box_radius) < law.radius) {
    throw std::invalid_argument("check_c3 box radius must be at least the jump radius");
  }
  const int d = law.d;
  const std::int64_t side = 2 * static_cast<std::int64_t>(box_radius) + 1;
  double cells = 1.0;
  for (int i = 0; i < d; ++i) cells *= static_cast<double>(side);
  if (cells > 2e7) throw std::invalid_argument("check_c3 box too large");

  auto in_box = [&](const Site& s) {
    for (Coord c : s) {
      if (c < -box_radius || c > box_radius) return false;
    }
    return true;
  };

  std::unordered_set<Site, SiteHash> reached;
  std::deque<Site> queue;
  Site origin(static_cast<std::size_t>(d), 0);
  reached.insert(origin);
  queue.push_back(origin);
  while (!queue.empty()) {
    Site cur = std::move(queue.front());
    queue.pop_front();
    for (const Jump& j : law.jumps) {
      Site nxt = add(cur, j.y);
      if (!in_box(nxt)) continue;
      if (reached.insert(nxt).second) queue.push_back(std::move(nxt));
    }
  }

  const int core = static_cast<int>(std::ceil(law.radius));
  Site probe(static_cast<std::size_t>(d), 0);
  // Every site of the box of radius ceil(R).
  std::vector<int> idx(static_cast<std::size_t>(d), -core);
  for (;;) {
    for (int i = 0; i < d; ++i) probe[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
    if (reached.find(probe) == reached.end()) return C3Result::Unknown;
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] > core) {
      idx[static_cast<std::size_t>(k)] = -core;
      ++k;
    }
    if (k == d) break;
  }
  // All unit vectors +-e_i.
  for (int i = 0; i < d; ++i) {
    for (int sgn : {-1, 1}) {
      Site e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = sgn;
      if (reached.find(e) == reached.end()) return C3Result::Unknown;
    }
  }
  return C3Result::Proven;
}

bool is_valid_path(const WalkPath& path, const JumpLaw& law) {
  for (std::size_t n = 1; n < path.size(); ++n) {
    if (!law.is_jump(sub(path[n], path[n - 1]))) return false;
  }
  return true;
}

}  // namespace rwre
