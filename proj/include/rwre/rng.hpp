#pragma once

#include <cstdint>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

// 64-bit finalizer used to key independent streams.
std::uint64_t mix64(std::uint64_t x);

// Counter-based generator: the state is a value, never a shared register.
// Two streams whose keys differ in any input are independent for all
// practical stream lengths here.
struct Rng {
  std::uint64_t state = 0;

  std::uint64_t next_u64();
  double next_unit();  // [0, 1)
  double next_open();  // (0, 1]
};

namespace stream_tag {
inline constexpr std::uint64_t kSiteEnv = 0x51e5'11d0'aa01ull;
inline constexpr std::uint64_t kTrialEnv = 0x7312'a1e4'bb02ull;
inline constexpr std::uint64_t kWalkStep = 0x57e9'51e9'cc03ull;
inline constexpr std::uint64_t kGraphEnv = 0x62a9'8033'dd04ull;
inline constexpr std::uint64_t kPilot = 0x9047'11f2'ee05ull;
inline constexpr std::uint64_t kPathGen = 0xab3c'2271'ff06ull;
}  // namespace stream_tag

Rng stream(std::initializer_list<std::uint64_t> keys);
Rng site_stream(std::uint64_t master, const Site& x);

double draw_normal(Rng& rng);

// Gamma variate with the given shape (unit scale), valid for all shapes > 0;
// shapes below one go through the boosted draw at shape + 1.
double draw_gamma(Rng& rng, double shape);

// Point of the open simplex: independent gammas, normalized. Redraws in the
// astronomically unlikely event a component underflows to zero.
std::vector<double> draw_dirichlet(Rng& rng, const std::vector<double>& shape);

// Inverse-CDF selection from one uniform variate: smallest index whose
// cumulative probability exceeds u, clamped to the last index.
std::size_t pick_index(const std::vector<double>& probs, double u);

}  // namespace rwre
