#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwre/lattice.hpp"

namespace rwre {

inline constexpr const char* kVersion = "0.1.0";

// Flat key-value experiment description; weights survive the file boundary as
// exact rational strings.
struct ExperimentConfig {
  std::string experiment;
  int dim = 2;
  std::vector<Jump> jumps;
  std::vector<double> direction;

  Site u;                       // cylinder axis
  std::optional<Site> u2;      // lateral basis; defaults to u rotated
  std::int64_t n_around = 4;   // N
  double depth = 10.0;         // L

  double threshold_b = 50.0;
  double threshold_l = 10.0;
  std::uint64_t horizon = 10000;
  std::uint64_t trials = 1000;
  std::uint64_t pilot_trials = 1000;
  int box_radius = 8;

  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

// Parses the flat key = value format ('#' starts a comment). Unknown keys,
// malformed values, and out-of-range numbers throw std::invalid_argument with
// a file:line anchor.
ExperimentConfig parse_config(const std::string& text, const std::string& filename);

// Canonical serialization of the effective config; the digest carried by
// every emitted record is the FNV-1a hash of this string.
std::string canonical_config(const ExperimentConfig& cfg, std::uint64_t effective_seed);
std::uint64_t config_digest(const ExperimentConfig& cfg, std::uint64_t effective_seed);

std::string fmt_double(double v);  // shortest round-trip decimal

}  // namespace rwre
