#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mgarena/game.hpp"

namespace mgarena {

// bond == 0 denotes the half-chain cut.
struct EnsembleStat {
  std::string model;
  int L = 0;
  double p = 0;
  double n = 0;
  int bond = 0;
  double mean = 0;
  double stderr_ = 0;
  int count = 0;
  std::uint64_t seed = 0;

  bool operator==(const EnsembleStat&) const = default;
};

// Key order used for all exports: model, L, p, n, bond.
bool key_less(const EnsembleStat& a, const EnsembleStat& b);

// Streaming form of aggregate: per-trajectory time averages are stored by
// trajectory index and reduced in index order, so arrival order is irrelevant.
class Aggregator {
 public:
  explicit Aggregator(const GameConfig& cfg);
  void add(const TrajectoryResult& result);
  std::vector<EnsembleStat> finish() const;

 private:
  GameConfig cfg_;
  std::vector<std::vector<double>> averages_;  // [trajectory][key]
  std::vector<bool> seen_;
};

// Time average within each trajectory, then mean and standard error across trajectories.
std::vector<EnsembleStat> aggregate(const std::vector<TrajectoryResult>& results, const GameConfig& cfg);

struct Curve {
  int L = 0;
  std::vector<std::pair<double, double>> points;  // (p, value), p strictly increasing
};

// Symmetric interpolation residual of the rescaled curves x = (p - pc) L^(1/nu), y = value / L^sigma.
// Points with |p - pc| > window are ignored.
double collapse_score(const std::vector<Curve>& curves, double pc, double nu, double sigma,
                      double window = std::numeric_limits<double>::infinity());

struct NuScan {
  double best_nu = 0;
  double best_score = 0;
  std::vector<std::pair<double, double>> scores;  // (nu, score)
};

// Evaluates nu = lo + k (hi - lo) / (points - 1); the smallest score wins.
NuScan scan_nu(const std::vector<Curve>& curves, double pc, double sigma, double lo, double hi, int points,
               double window = std::numeric_limits<double>::infinity());

// Half-chain curves of one model and order, grouped by L, from a stat set.
std::vector<Curve> curves_from_stats(const std::vector<EnsembleStat>& stats, double n = -1);

}  // namespace mgarena
