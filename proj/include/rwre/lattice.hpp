#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/rational.hpp"

namespace rwre {

using Coord = std::int64_t;
using Site = std::vector<Coord>;      // one coordinate per dimension
using WalkPath = std::vector<Site>;   // consecutive differences must be jumps

Site add(const Site& a, const Site& b);
Site sub(const Site& a, const Site& b);
std::int64_t dot_int(const Site& a, const Site& b);
double dot(const Site& x, const std::vector<double>& v);
std::int64_t norm_sq(const Site& x);
double norm(const Site& x);

struct SiteHash {
  std::size_t operator()(const Site& s) const;
};

// A unit direction; in two dimensions it carries the fixed perpendicular used
// by the lateral order and the lateral exit times.
struct Direction {
  std::vector<double> ell;
  std::optional<std::vector<double>> ell_perp;

  // Normalizes v; for d = 2 the perpendicular is v rotated a quarter turn
  // counterclockwise. Throws std::invalid_argument on a zero vector.
  static Direction from(std::vector<double> v);
  static Direction axis(int d, int index, int sign = 1);

  int dim() const { return static_cast<int>(ell.size()); }
};

struct Jump {
  Site y;
  Rational alpha;
};

// Jump set with positive weights. The radius is the largest Euclidean jump
// length; radius_sq keeps the squared value exact for distance comparisons.
struct JumpLaw {
  int d = 0;
  std::vector<Jump> jumps;
  double radius = 0.0;
  std::int64_t radius_sq = 0;

  static JumpLaw make(int d, std::vector<Jump> jumps);
  Rational alpha_total() const;
  bool is_jump(const Site& step) const;
};

enum class Ordering { Before, Equal, After };

// Strict total order on Z^2: lower perpendicular component first, ties broken
// by the component along the direction. Distinct sites whose dot products both
// round to equal doubles fall back to coordinate order so totality survives
// floating-point ties.
Ordering prec_compare(const Site& x, const Site& y, const Direction& dir);

enum class Cmp { Lt, Le, Gt, Ge };

bool cmp_holds(double value, Cmp cmp, double a);

// Smallest index n with (X_n . ell) <cmp> a, if any. A finite path reports
// "absent" where the infinite-time definition would report infinity.
std::optional<std::size_t> first_hit(const WalkPath& path, const Direction& dir, Cmp cmp, double a);

// Smallest index n with |X_n . ell_perp| >= a (either perpendicular counts).
std::optional<std::size_t> lateral_first_exit(const WalkPath& path, const Direction& dir, double a);

enum class C3Result { Proven, Unknown };

// Semidecision for lattice generation by the jump set: breadth-first
// reachability from the origin truncated to the box [-box_radius, box_radius]^d.
// Proven requires every site of the box of radius ceil(radius) plus all unit
// vectors +-e_i; that set generates Z^d as a semigroup.
C3Result check_c3(const JumpLaw& law, int box_radius);

bool is_valid_path(const WalkPath& path, const JumpLaw& law);

}  // namespace rwre
