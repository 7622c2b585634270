#include "rwre/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rwre {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::uint64_t Rng::next_u64() {
  state += kGolden;
  return mix64(state);
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

Rng stream(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = 0x243f6a8885a308d3ull;  // distinct from the zero key
  std::uint64_t i = 1;
  for (std::uint64_t k : keys) {
    s = mix64(s ^ (k + i * kGolden));
    ++i;
  }
  return Rng{mix64(s ^ i)};
}

Rng site_stream(std::uint64_t master, const Site& x) {
  std::uint64_t s = mix64(master ^ stream_tag::kSiteEnv);
  std::uint64_t i = 1;
  for (Coord c : x) {
    s = mix64(s ^ (static_cast<std::uint64_t>(c) + i * kGolden));
    ++i;
  }
  return Rng{mix64(s ^ i)};
}

double draw_normal(Rng& rng) {
  double u1 = rng.next_open();
  double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double draw_gamma(Rng& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (shape < 1.0) {
    double g = draw_gamma(rng, shape + 1.0);
    double u = rng.next_open();
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze/rejection.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x = draw_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = rng.next_open();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::size_t pick_index(const std::vector<double>& probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  return probs.size() - 1;
}

std::vector<double> draw_dirichlet(Rng& rng, const std::vector<double>& shape) {
  if (shape.empty()) throw std::invalid_argument("dirichlet needs at least one weight");
  std::vector<double> out(shape.size());
  for (;;) {
    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      out[i] = draw_gamma(rng, shape[i]);
      total += out[i];
    }
    for (double v : out) ok = ok && v > 0.0;
    if (ok && total > 0.0) {
      for (double& v : out) v /= total;
      return out;
    }
  }
}

}  // namespace rwre
