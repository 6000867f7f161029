#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>

#include "polymatrix/game.hpp"

namespace polymatrix {

/// Deterministic Gaussian stream. Each (seed, index) pair opens an
/// independent counter-style stream, so sample i is the same no matter how
/// work is split across workers. Normals come from an explicit Box-Muller
/// transform to keep the byte stream identical across platforms
/// (std::normal_distribution is implementation-defined).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t index);

  double uniform01();  // in (0, 1]
  double gaussian();   // standard normal

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

struct SamplerConfig {
  GameClass game_class = GameClass::General;
  std::vector<int> dims;
  double scale = 1.0;
  std::uint64_t seed = 0;
  int samples = 1;
  bool gaussian_costs = false;  // default b = 0: uniqueness depends on A only

  nlohmann::json to_json() const;
};

struct MonteCarloReport {
  SamplerConfig config;
  int unique_count = 0;
  double unique_fraction = 0.0;
  double min_sv_min = 0.0;
  double min_sv_median = 0.0;
  double min_sv_max = 0.0;
  std::map<int, int> rank_histogram;

  nlohmann::json to_json() const;
  std::string csv_row() const;  // class, dims, samples, fraction, min_sv_min
  static std::string csv_header();
};

/// Game with Gaussian(0, scale^2) entries in every free block; the mirror
/// blocks of the symmetric classes are derived, never sampled. Bit-identical
/// for identical (config.seed, index).
PolymatrixGame sample_game(const SamplerConfig& config, int index);

/// Classify every sample by numerical rank and aggregate. `workers` only
/// splits the index range; the report is identical for any worker count.
MonteCarloReport mc_unique_fraction(const SamplerConfig& config,
                                    int workers = 1);

}  // namespace polymatrix
