#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mgarena/fgs.hpp"
#include "mgarena/matchgate.hpp"

namespace mgarena {

enum class Model { Braiding, Bellpair, RsfGate, CovarianceVn };

const char* model_name(Model model);
// Accepts braiding, bellpair, rsf-gate, covariance-vn; throws ConfigError otherwise.
Model parse_model(const std::string& name);

struct GameConfig {
  Model model = Model::Bellpair;
  int L = 16;
  double p = 0.5;
  int steps = 100;     // measured steps after burn-in; one step is L moves
  int burn_in = -1;    // negative selects default_burn_in
  int trajectories = 1;
  std::uint64_t seed = 0;
  std::vector<double> entropy_orders{0.0};
  bool record_profile = false;
  int measure_every = 1;
  int workers = 1;
  bool layout_only = false;      // rsf-gate: track the layout only (n = 0)
  double disentangler_order = 1;  // covariance-vn: entropy minimized by the disentangler
};

// 4L steps, or 2L^2 at p = 0.
int default_burn_in(const GameConfig& cfg);
int effective_burn_in(const GameConfig& cfg);
// Throws ConfigError on an invalid configuration.
void validate_config(const GameConfig& cfg);

struct Measurement {
  int t = 0;
  std::vector<double> half_chain;            // one entry per entropy order
  std::vector<std::vector<double>> profile;  // per order, bonds 1..L-1, if recorded
};

struct TrajectoryResult {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<Measurement> records;
  int final_gate_count = -1;  // rsf-gate only
};

// Seeds of the move schedule (bond, coin) and of the gate payloads of one trajectory.
std::uint64_t schedule_seed(std::uint64_t global_seed, int trajectory);
std::uint64_t payload_seed(std::uint64_t global_seed, int trajectory);

TrajectoryResult run_trajectory(const GameConfig& cfg, int index);
// Calls `sink` once per trajectory in index order; output is independent of cfg.workers.
void run_game(const GameConfig& cfg, const std::function<void(TrajectoryResult&&)>& sink);
std::vector<TrajectoryResult> run_game(const GameConfig& cfg);

struct VnOptions {
  int grid_points = 7;
  int starts = 3;
  int max_iterations = 200;
  double tolerance = 1e-8;
};

// Matchgate from_params(a, b, f1, f2, 0, 0) minimizing the order-n entropy across `bond`
// after it is applied. Returns the identity unless a candidate beats it by the tolerance.
Matchgate vn_disentangler(const CovarianceMatrix& cov, int bond, double n, const VnOptions& opts = {});

struct StrategySeries {
  std::string strategy;
  std::vector<double> s0_half;   // half-chain Renyi-0 entropy, t = 0..2L
  std::vector<double> s0_total;  // Renyi-0 entropy summed over all bonds
  std::vector<double> s1_half;   // half-chain von Neumann entropy
};

struct BenchmarkResult {
  int L = 0;
  std::uint64_t seed = 0;
  int initial_gates = 0;
  std::vector<StrategySeries> series;  // gate, renyi0, von-neumann
};

// Absorbs L^3 Haar matchgates at random bonds, then runs 2L steps of pure disentangling
// under each strategy with a shared bond schedule.
BenchmarkResult disentangler_benchmark(int L, std::uint64_t seed, const VnOptions& opts = {});

}  // namespace mgarena
