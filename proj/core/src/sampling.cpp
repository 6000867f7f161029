#include "polymatrix/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polymatrix/equilibrium.hpp"

namespace polymatrix {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string dims_label(const std::vector<int>& dims) {
  std::ostringstream out;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) out << '-';
    out << dims[i];
  }
  return out.str();
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t index) {
  // Decorrelate the (seed, index) pair before using it as a stream state.
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= index * 0xda942042e4dd58b5ULL;
  splitmix64(s);
  state_ = s;
}

std::uint64_t GaussianStream::next_u64() { return splitmix64(state_); }

double GaussianStream::uniform01() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(kTwoPi * u2);
  has_cached_ = true;
  return r * std::cos(kTwoPi * u2);
}

json SamplerConfig::to_json() const {
  json j;
  j["class"] = to_string(game_class);
  j["dims"] = dims;
  j["scale"] = scale;
  j["seed"] = seed;
  j["samples"] = samples;
  j["gaussian_costs"] = gaussian_costs;
  return j;
}

json MonteCarloReport::to_json() const {
  json j;
  j["config"] = config.to_json();
  j["unique_count"] = unique_count;
  j["unique_fraction"] = unique_fraction;
  j["min_singular_value"] = {
      {"min", min_sv_min}, {"median", min_sv_median}, {"max", min_sv_max}};
  json hist = json::object();
  for (const auto& [rank, count] : rank_histogram)
    hist[std::to_string(rank)] = count;
  j["rank_histogram"] = std::move(hist);
  return j;
}

std::string MonteCarloReport::csv_header() {
  return "class,dims,samples,fraction,min_sv_min";
}

std::string MonteCarloReport::csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << to_string(config.game_class) << ',' << dims_label(config.dims) << ','
      << config.samples << ',' << unique_fraction << ',' << min_sv_min;
  return out.str();
}

PolymatrixGame sample_game(const SamplerConfig& config, int index) {
  if (config.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (config.scale <= 0.0) throw std::invalid_argument("scale must be > 0");
  if (index < 0 || index >= config.samples)
    throw std::invalid_argument("sample index out of range");
  AgentPartition partition(config.dims);
  GaussianStream rng(config.seed, static_cast<std::uint64_t>(index));

  const bool symmetric = config.game_class != GameClass::General;
  std::vector<InteractionBlock> blocks;
  for (int i = 0; i < partition.agents(); ++i) {
    for (int j = symmetric ? i + 1 : 0; j < partition.agents(); ++j) {
      if (i == j) continue;
      Matrix payoff(partition.dim(i), partition.dim(j));
      for (Eigen::Index r = 0; r < payoff.rows(); ++r)
        for (Eigen::Index c = 0; c < payoff.cols(); ++c)
          payoff(r, c) = config.scale * rng.gaussian();
      blocks.push_back({i, j, std::move(payoff)});
    }
  }
  Vector costs = Vector::Zero(partition.total());
  if (config.gaussian_costs)
    for (Eigen::Index i = 0; i < costs.size(); ++i)
      costs(i) = config.scale * rng.gaussian();
  return PolymatrixGame(partition, config.game_class, std::move(blocks),
                        std::move(costs));
}

MonteCarloReport mc_unique_fraction(const SamplerConfig& config, int workers) {
  if (workers < 1) workers = 1;
  const int n = config.samples;
  std::vector<int> ranks(n);
  std::vector<double> smins(n);

  auto run_range = [&](int begin, int end) {
    for (int idx = begin; idx < end; ++idx) {
      UniquenessReport rep = uniqueness_preconditions(sample_game(config, idx));
      ranks[idx] = rep.rank;
      smins[idx] = rep.min_singular_value;
    }
  };

  if (workers == 1 || n < 2) {
    run_range(0, n);
  } else {
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int begin = w * chunk;
      int end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  MonteCarloReport report;
  report.config = config;
  const int K = AgentPartition(config.dims).total();
  for (int idx = 0; idx < n; ++idx) {
    if (ranks[idx] == K) ++report.unique_count;
    ++report.rank_histogram[ranks[idx]];
  }
  report.unique_fraction =
      static_cast<double>(report.unique_count) / static_cast<double>(n);
  std::vector<double> sorted = smins;
  std::sort(sorted.begin(), sorted.end());
  report.min_sv_min = sorted.front();
  report.min_sv_max = sorted.back();
  report.min_sv_median = n % 2 == 1
                             ? sorted[n / 2]
                             : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return report;
}

}  // namespace polymatrix
