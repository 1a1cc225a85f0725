// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgarena/analysis.hpp"
#include "mgarena/bellpair.hpp"
#include "mgarena/braiding.hpp"
#include "mgarena/error.hpp"
#include "mgarena/fgs.hpp"
#include "mgarena/game.hpp"
#include "mgarena/matchgate.hpp"
#include "mgarena/rng.hpp"
#include "mgarena/rsf.hpp"
#include "mgarena/selftest.hpp"
#include "oracle.hpp"

using namespace mgarena;

namespace {

// Tolerances and budgets.
constexpr double kRewriteTol = 1e-9;
constexpr double kRewriteSeconds = 10;
constexpr double kFidelityTol = 1e-8;
constexpr double kExhaustiveSeconds = 120;
constexpr double kCriticalSigmas = 4;
constexpr double kQuarterTol = 0.02;
constexpr double kCriticalSeconds = 600;
constexpr double kVolumeFloor = 0.45;
constexpr double kAreaCeiling = 0.05;
constexpr double kVelocityRelTol = 0.10;
constexpr double kGrowthExponent = 0.5;
constexpr double kGrowthTol = 0.1;
constexpr double kMutualSigmas = 3;
constexpr double kEmptyWithinSweepsPerL = 3;
constexpr double kGateReachPerL = 1.5;
constexpr double kRenyi0ReachPerL = 2.5;
constexpr double kNuLow = 0.85;
constexpr double kNuHigh = 1.15;
constexpr double kCollapseWindow = 0.15;
constexpr double kPurityTol = 1e-7;
constexpr double kPfaffianRelTol = 1e-8;
constexpr double kOrderTol = 1e-9;
// Orders below 1 amplify 1 - lambda ~ 1e-15 to ~1e-7 against the rank cutoff of S0.
constexpr double kOrderTolSubUnit = 1e-6;
constexpr double kSymmetryTol = 1e-9;
constexpr double kSqrtBand = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note(Outcome& o, bool ok, const std::string& what) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += (ok ? "" : "FAILED ") + what;
}

// Mean of per-trajectory half-chain averages, with its standard error.
EnsembleStat half_chain_stat(const GameConfig& cfg, std::size_t order = 0) {
  Aggregator agg(cfg);
  run_game(cfg, [&](TrajectoryResult&& r) { agg.add(r); });
  for (const auto& s : agg.finish())
    if (s.bond == 0 && s.n == cfg.entropy_orders[order]) return s;
  throw Error(ErrorCode::EmptyInput, "missing half-chain statistic");
}

GameConfig make_config(Model model, int L, double p, int burn_in, int steps, int every, int trajectories,
                       std::uint64_t seed) {
  GameConfig cfg;
  cfg.model = model;
  cfg.L = L;
  cfg.p = p;
  cfg.burn_in = burn_in;
  cfg.steps = steps;
  cfg.measure_every = every;
  cfg.trajectories = trajectories;
  cfg.seed = seed;
  return cfg;
}

// Least-squares slope of y on x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// Ensemble mean of the half-chain series at each measurement time.
std::vector<double> mean_series(const GameConfig& cfg, std::vector<int>& times) {
  std::vector<double> sum;
  times.clear();
  run_game(cfg, [&](TrajectoryResult&& r) {
    if (sum.empty()) {
      sum.assign(r.records.size(), 0.0);
      for (const auto& m : r.records) times.push_back(m.t);
    }
    for (std::size_t k = 0; k < r.records.size(); ++k) sum[k] += r.records[k].half_chain[0];
  });
  for (double& s : sum) s /= cfg.trajectories;
  return sum;
}

Outcome rewrite_identities() {
  Timer timer;
  Rng rng(derive_seed(1, 1));
  double yb = 0, lr = 0;
  for (int i = 0; i < 1000; ++i) {
    const Matchgate u = haar_matchgate(rng), up = haar_matchgate(rng), upp = haar_matchgate(rng);
    const auto a = yang_baxter(u, up, upp, Direction::LeftToRight);
    yb = std::max(yb, phase_aligned_distance(Mat8c(embed_three(a[0], 2) * embed_three(a[1], 1) * embed_three(a[2], 2)),
                                             Mat8c(embed_three(u, 1) * embed_three(up, 2) * embed_three(upp, 1))));
    const auto b = yang_baxter(u, up, upp, Direction::RightToLeft);
    yb = std::max(yb, phase_aligned_distance(Mat8c(embed_three(b[0], 1) * embed_three(b[1], 2) * embed_three(b[2], 1)),
                                             Mat8c(embed_three(u, 2) * embed_three(up, 1) * embed_three(upp, 2))));
  }
  Vec8c zero = Vec8c::Zero();
  zero(0) = 1;
  for (int i = 0; i < 1000; ++i) {
    const Matchgate u = haar_matchgate(rng), up = haar_matchgate(rng);
    const auto a = left_right(u, up, Direction::LeftToRight);
    lr = std::max(lr, phase_aligned_distance(Vec8c(embed_three(a[0], 2) * (embed_three(a[1], 1) * zero)),
                                             Vec8c(embed_three(u, 1) * (embed_three(up, 2) * zero))));
    const auto b = left_right(u, up, Direction::RightToLeft);
    lr = std::max(lr, phase_aligned_distance(Vec8c(embed_three(b[0], 1) * (embed_three(b[1], 2) * zero)),
                                             Vec8c(embed_three(u, 2) * (embed_three(up, 1) * zero))));
  }
  Outcome o;
  note(o, yb <= kRewriteTol, "yang-baxter max deviation " + fmt("%.2e", yb) + " over 1000 triples, both directions");
  note(o, lr <= kRewriteTol, "left-right max deviation " + fmt("%.2e", lr) + " over 1000 pairs, both directions");
  const double s = timer.seconds();
  note(o, s < kRewriteSeconds, "runtime " + fmt("%.2f", s) + " s");
  return o;
}

oracle::State circuit_state(const RsfCircuit& c) {
  oracle::State s = oracle::zero_state(c.L);
  for (const auto& [bond, g] : time_ordered_gates(c)) oracle::apply(s, c.L, bond, g.u());
  return s;
}

Outcome rsf_correctness() {
  Rng rng(derive_seed(2, 1));
  double worst = 1;
  int over_cap = 0, bad_drop = 0, removals = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    const int L = 2 + seq % 7;
    RsfCircuit c;
    c.L = L;
    oracle::State dense = oracle::zero_state(L);
    for (int op = 0; op < 3 * L * L; ++op) {
      const int bond = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(L - 1)));
      if (rng.bernoulli(0.6)) {
        const Matchgate g = haar_matchgate(rng);
        absorb(c, g, bond);
        oracle::apply(dense, L, bond, g.u());
        if (c.gate_count() > max_gate_count(L)) ++over_cap;
      } else {
        const int before = c.gate_count();
        auto found = disentangle_gate(c, bond);
        if (!found) continue;
        ++removals;
        oracle::apply(dense, L, bond, found->first.u());
        c = std::move(found->second);
        if (c.gate_count() != before - 1) ++bad_drop;
      }
    }
    worst = std::min(worst, oracle::fidelity(circuit_state(c), dense));
  }
  Outcome o;
  note(o, 1 - worst <= kFidelityTol, "min fidelity " + fmt("%.12f", worst) + " over 1000 sequences, L = 2..8");
  note(o, over_cap == 0, std::to_string(over_cap) + " states above floor(L^2/4) gates");
  note(o, bad_drop == 0, std::to_string(removals) + " removals, " + std::to_string(bad_drop) + " not lowering the count by 1");
  return o;
}

Outcome bijection_and_equivalence() {
  Timer timer;
  Outcome o;
  for (const auto& r : run_selftest({SelftestLevel::Full, false}))
    if (r.name == "bijection" || r.name == "profile-equality" || r.name == "dynamics-equivalence")
      note(o, r.pass, r.name + ": " + r.detail);
  for (int L = 1; L <= 8; ++L) {
    const std::size_t count = enumerate_configs(L).size();
    if (BigInt(count) != telephone(L)) note(o, false, "T(" + std::to_string(L) + ") mismatch");
  }
  const double s = timer.seconds();
  note(o, s < kExhaustiveSeconds, "runtime " + fmt("%.1f", s) + " s");
  return o;
}

Outcome critical_point() {
  Timer timer;
  Outcome o;
  for (int L : {16, 64}) {
    GameConfig cfg = make_config(Model::Bellpair, L, 0.5, 2 * L * L, 4 * L, 1, 1000, 40 + L);
    cfg.record_profile = true;
    Aggregator agg(cfg);
    run_game(cfg, [&](TrajectoryResult&& r) { agg.add(r); });
    double worst = 0;
    for (const auto& s : agg.finish()) {
      const int m = s.bond == 0 ? L / 2 : s.bond;
      worst = std::max(worst, std::abs(s.mean - mean_critical_profile(L, m)) / s.stderr_);
    }
    note(o, worst <= kCriticalSigmas, "L=" + std::to_string(L) + " max |z| over bonds " + fmt("%.2f", worst));
  }
  const int L = 512;
  const EnsembleStat big = half_chain_stat(make_config(Model::Bellpair, L, 0.5, L * L, 2 * L, 8, 16, 4512));
  const double ratio = big.mean / L;
  note(o, std::abs(ratio - 0.25) <= kQuarterTol,
       "L=512 half-chain S/L " + fmt("%.4f", ratio) + " +- " + fmt("%.4f", big.stderr_ / L) + " (exact " +
           fmt("%.4f", mean_critical_profile(L, L / 2) / L) + ")");
  const double s = timer.seconds();
  note(o, s < kCriticalSeconds, "runtime " + fmt("%.0f", s) + " s");
  return o;
}

Outcome bellpair_transition() {
  Outcome o;
  const int L = 512;
  const EnsembleStat vol = half_chain_stat(make_config(Model::Bellpair, L, 0.3, 8 * L, 4 * L, 4, 8, 5301));
  note(o, vol.mean / L >= kVolumeFloor, "p=0.3 S/L " + fmt("%.4f", vol.mean / L));
  const EnsembleStat area = half_chain_stat(make_config(Model::Bellpair, L, 0.7, 8 * L, 4 * L, 4, 8, 5302));
  note(o, area.mean / L <= kAreaCeiling, "p=0.7 S/L " + fmt("%.4f", area.mean / L));
  // Growth from the product state, fitted before saturation (t_sat ~ L / (1 - 2p)).
  std::vector<int> times;
  const auto series = mean_series(make_config(Model::Bellpair, L, 0.3, 0, 1000, 10, 20, 5303), times);
  std::vector<double> x, y;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] >= 200 && times[k] <= 1000) {
      x.push_back(times[k]);
      y.push_back(series[k]);
    }
  const double v = slope(x, y);
  note(o, std::abs(v - 0.2) <= kVelocityRelTol * 0.2, "p=0.3 growth velocity " + fmt("%.4f", v) + " (expected 0.2)");
  return o;
}

int first_empty_sweep(int L, std::uint64_t seed, int max_sweeps) {
  Rng rng(seed);
  const auto bonds = static_cast<std::uint64_t>(L - 1);
  MajoranaPairing state = product_state(L);
  for (long long move = 0; move < 2LL * L * L * L; ++move)
    state = random_braid(state, 1 + static_cast<int>(rng.below(bonds)), rng);
  for (int t = 0; t <= max_sweeps; ++t) {
    const auto prof = entropy_profile(state);
    if (std::all_of(prof.begin(), prof.end(), [](double s) { return s == 0; })) return t;
    for (int move = 0; move < L; ++move) state = braid_disentangle(state, 1 + static_cast<int>(rng.below(bonds)));
  }
  return -1;
}

Outcome braiding_game() {
  Outcome o;
  {
    const int L = 256;
    const int last = L * L / 20;
    std::vector<int> times;
    const auto series = mean_series(make_config(Model::Braiding, L, 0.0, 0, last, 1, 50, 6001), times);
    std::vector<double> x, y;
    // Log-spaced sample of the window so each decade carries equal weight.
    double next = 10;
    for (std::size_t k = 0; k < times.size(); ++k)
      if (times[k] >= next && times[k] <= last) {
        x.push_back(std::log(times[k]));
        y.push_back(std::log(series[k]));
        next = times[k] * 1.1;
      }
    const double a = slope(x, y);
    note(o, std::abs(a - kGrowthExponent) <= kGrowthTol,
         "p=0 L=256 growth exponent " + fmt("%.3f", a) + " over t in [10, " + std::to_string(last) + "]");
  }
  {
    std::vector<EnsembleStat> stats;
    std::string line = "p=0.1 steady S:";
    for (int L : {64, 128, 256}) {
      stats.push_back(half_chain_stat(make_config(Model::Braiding, L, 0.1, 4 * L, 4 * L, 4, 200, 6100 + L)));
      line += " L=" + std::to_string(L) + " " + fmt("%.3f", stats.back().mean) + "+-" + fmt("%.3f", stats.back().stderr_);
    }
    bool mutual = true;
    for (std::size_t i = 0; i < stats.size(); ++i)
      for (std::size_t j = i + 1; j < stats.size(); ++j)
        mutual = mutual && std::abs(stats[i].mean - stats[j].mean) <=
                               kMutualSigmas * std::hypot(stats[i].stderr_, stats[j].stderr_);
    note(o, mutual, line);
  }
  {
    std::string line = "pure disentangling from the p=0 steady state, sweeps to empty:";
    bool ok = true;
    for (const auto& [L, runs] : std::vector<std::pair<int, int>>{{64, 8}, {128, 4}, {256, 2}}) {
      const int cap = static_cast<int>(kEmptyWithinSweepsPerL * L);
      int worst = 0;
      for (int r = 0; r < runs; ++r) {
        const int t = first_empty_sweep(L, derive_seed(6200 + L, r), cap);
        worst = t < 0 ? cap + 1 : std::max(worst, t);
      }
      ok = ok && worst <= cap;
      line += " L=" + std::to_string(L) + " max " + (worst > cap ? "> " + std::to_string(cap) : std::to_string(worst));
    }
    note(o, ok, line);
  }
  return o;
}

int first_zero(const std::vector<double>& s) {
  for (std::size_t t = 0; t < s.size(); ++t)
    if (s[t] == 0) return static_cast<int>(t);
  return -1;
}

Outcome disentangler_bench() {
  const int L = 64;
  const BenchmarkResult res = disentangler_benchmark(L, 7);
  Outcome o;
  const auto& gate = res.series[0];
  const auto& renyi0 = res.series[1];
  const auto& vn = res.series[2];
  const int tg = first_zero(gate.s0_total), tr = first_zero(renyi0.s0_total);
  const int horizon = static_cast<int>(gate.s0_total.size()) - 1;
  note(o, tg >= 0 && tg <= kGateReachPerL * L,
       "gate disentangler product state at t=" + (tg < 0 ? "never" : std::to_string(tg)) + " (initial gates " +
           std::to_string(res.initial_gates) + ")");
  note(o, tr >= 0 && tr <= kRenyi0ReachPerL * L,
       "Renyi-0 disentangler product state at t=" + (tr < 0 ? "not within t<=" + std::to_string(horizon) : std::to_string(tr)));
  bool flat_half = true, flat_total = true;
  for (std::size_t t = 0; t < vn.s0_half.size(); ++t) {
    flat_half = flat_half && vn.s0_half[t] == vn.s0_half[0];
    flat_total = flat_total && vn.s0_total[t] == vn.s0_total[0];
  }
  note(o, flat_half && flat_total,
       "von Neumann S0 half-chain " + fmt("%.0f", vn.s0_half[0]) + " and total " + fmt("%.0f", vn.s0_total[0]) +
           (flat_half && flat_total ? " unchanged" : " changed") + " for t<=" + std::to_string(horizon) +
           ", half-chain S1 " + fmt("%.3f", vn.s1_half[0]) + " -> " + fmt("%.3f", vn.s1_half.back()));
  return o;
}

// Probabilities 1/2 + x/L for a fixed x grid, plus a coarse grid, inside [0.35, 0.65].
std::vector<double> bellpair_grid(int L) {
  std::set<double> ps = {0.35, 0.40, 0.45, 0.55, 0.60, 0.65};
  for (int x : {-8, -6, -4, -3, -2, -1, 0, 1, 2, 3, 4, 6, 8}) {
    const double p = 0.5 + static_cast<double>(x) / L;
    if (p >= 0.35 && p <= 0.65) ps.insert(p);
  }
  return {ps.begin(), ps.end()};
}

Curve collapse_curve(Model model, int L, const std::vector<double>& ps, int trajectories, std::uint64_t seed,
                     const std::function<int(double)>& burn_in) {
  Curve c;
  c.L = L;
  for (double p : ps) {
    const EnsembleStat s = half_chain_stat(make_config(model, L, p, burn_in(p), 4 * L, 4, trajectories, seed));
    c.points.emplace_back(p, s.mean);
  }
  return c;
}

Outcome collapse_exponents() {
  Outcome o;
  {
    std::vector<Curve> curves;
    for (const auto& [L, runs] : std::vector<std::pair<int, int>>{{64, 40}, {128, 20}, {256, 12}, {512, 6}}) {
      // Relaxation is diffusive (~L^2 steps) near p = 1/2 and set by the growth time L / |1 - 2p| away from it.
      const auto burn = [L = L](double p) {
        const double d = std::abs(1 - 2 * p);
        return d == 0 ? L * L : std::min(L * L, static_cast<int>(std::ceil(4.0 * L / d)));
      };
      curves.push_back(collapse_curve(Model::Bellpair, L, bellpair_grid(L), runs, 8000 + L, burn));
    }
    const NuScan scan = scan_nu(curves, 0.5, 1, 0.5, 2.0, 151, kCollapseWindow);
    note(o, scan.best_nu >= kNuLow && scan.best_nu <= kNuHigh,
         "bellpair L in {64,128,256,512}, y = S/L: nu = " + fmt("%.3f", scan.best_nu));
  }
  {
    std::vector<Curve> curves;
    for (const auto& [L, runs] : std::vector<std::pair<int, int>>{{32, 40}, {64, 40}, {128, 20}}) {
      std::vector<double> ps;
      for (int x : {0, 1, 2, 3, 4, 6, 8, 12, 16})
        if (static_cast<double>(x) / L <= kCollapseWindow) ps.push_back(static_cast<double>(x) / L);
      const auto burn = [L = L](double p) {
        const double x = p * L;
        return x <= 2 ? 2 * L * L : static_cast<int>(2.0 * L * L / x);
      };
      curves.push_back(collapse_curve(Model::Braiding, L, ps, runs, 8100 + L, burn));
    }
    const NuScan scan = scan_nu(curves, 0.0, 1, 0.5, 2.0, 151, kCollapseWindow);
    note(o, scan.best_nu >= kNuLow && scan.best_nu <= kNuHigh,
         "braiding L in {32,64,128} against p_c = 0, y = S/L: nu = " + fmt("%.3f", scan.best_nu));
  }
  return o;
}

Outcome fgs_suite() {
  Rng rng(derive_seed(9, 1));
  int impure = 0, order_violations = 0, asymmetric = 0;
  for (int i = 0; i < 1000; ++i) {
    const int L = 2 + static_cast<int>(rng.below(11));
    CovarianceMatrix cov = vacuum_covariance(L);
    const int gates = static_cast<int>(rng.below(static_cast<std::uint64_t>(L * L * 2))) + 1;
    for (int g = 0; g < gates; ++g)
      apply_gate(cov, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(L - 1))), haar_matchgate(rng).r());
    const double defect = (cov.gamma * cov.gamma.transpose() - Eigen::MatrixXd::Identity(2 * L, 2 * L)).cwiseAbs().maxCoeff();
    if (!purity_check(cov) || defect > kPurityTol) ++impure;
    std::vector<std::vector<double>> profiles;
    const std::vector<double> orders{0.0, 0.5, 1.0, 2.0, 5.0};
    for (double n : orders) profiles.push_back(entanglement_profile(cov, n));
    for (std::size_t k = 1; k < profiles.size(); ++k) {
      const double tol = orders[k - 1] < 1 ? kOrderTolSubUnit : kOrderTol;
      for (std::size_t b = 0; b < profiles[k].size(); ++b)
        if (profiles[k][b] > profiles[k - 1][b] + tol) ++order_violations;
    }
    const auto right = entanglement_profile(cov, 1.0, Side::Right);
    for (std::size_t b = 0; b < right.size(); ++b)
      if (std::abs(right[b] - profiles[2][b]) > kSymmetryTol) ++asymmetric;
  }
  double pf = 0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::MatrixXd m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = rng.normal();
    m = (m - m.transpose()).eval();
    const double p = pfaffian(m);
    pf = std::max(pf, std::abs(p * p - m.determinant()) / std::abs(m.determinant()));
  }
  Outcome o;
  note(o, impure == 0, std::to_string(impure) + " of 1000 random pure states fail purity at " + fmt("%.0e", kPurityTol));
  note(o, pf <= kPfaffianRelTol, "Pf^2 = det max relative deviation " + fmt("%.2e", pf) + " over 1000 8x8 matrices");
  note(o, order_violations == 0, std::to_string(order_violations) + " entropy order violations (n = 0, 0.5, 1, 2, 5)");
  note(o, asymmetric == 0, std::to_string(asymmetric) + " left/right profile mismatches");
  return o;
}

Outcome sqrt_scaling() {
  Outcome o;
  std::vector<double> per_l, per_sqrt;
  std::string line = "rsf-gate p=1/2 half-chain S1:";
  for (const auto& [L, runs] : std::vector<std::pair<int, int>>{{32, 32}, {64, 12}, {128, 4}}) {
    GameConfig cfg = make_config(Model::RsfGate, L, 0.5, L * L / 2, L, L / 8, runs, 10000 + L);
    cfg.entropy_orders = {1};
    const EnsembleStat s = half_chain_stat(cfg);
    per_l.push_back(s.mean / L);
    per_sqrt.push_back(s.mean / std::sqrt(L));
    line += " L=" + std::to_string(L) + " " + fmt("%.3f", s.mean) + "+-" + fmt("%.3f", s.stderr_);
  }
  note(o, true, line);
  note(o, per_l[0] > per_l[1] && per_l[1] > per_l[2],
       "S1/L " + fmt("%.4f", per_l[0]) + ", " + fmt("%.4f", per_l[1]) + ", " + fmt("%.4f", per_l[2]) + " decreasing");
  const double band = *std::max_element(per_sqrt.begin(), per_sqrt.end()) / *std::min_element(per_sqrt.begin(), per_sqrt.end());
  note(o, band <= kSqrtBand, "S1/sqrt(L) " + fmt("%.3f", per_sqrt[0]) + ", " + fmt("%.3f", per_sqrt[1]) + ", " +
                                 fmt("%.3f", per_sqrt[2]) + " spread factor " + fmt("%.2f", band));
  note(o, true, "exponents beta and gamma of the volume-law and critical corrections are not fitted at this scale");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rewrite identities", rewrite_identities},
      {"rsf correctness against the dense oracle", rsf_correctness},
      {"bijection and equivalence", bijection_and_equivalence},
      {"critical point profile", critical_point},
      {"bellpair transition", bellpair_transition},
      {"braiding game", braiding_game},
      {"disentangler benchmark", disentangler_bench},
      {"collapse exponents", collapse_exponents},
      {"fermionic Gaussian state suite", fgs_suite},
      {"sqrt(L) scaling of the von Neumann entropy", sqrt_scaling},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Timer timer;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                timer.seconds());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
