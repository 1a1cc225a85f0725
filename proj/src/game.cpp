#include "mgarena/game.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

#include "mgarena/bellpair.hpp"
#include "mgarena/braiding.hpp"
#include "mgarena/error.hpp"
#include "mgarena/rng.hpp"
#include "mgarena/rsf.hpp"

namespace mgarena {

const char* model_name(Model model) {
  switch (model) {
    case Model::Braiding: return "braiding";
    case Model::Bellpair: return "bellpair";
    case Model::RsfGate: return "rsf-gate";
    case Model::CovarianceVn: return "covariance-vn";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  for (Model m : {Model::Braiding, Model::Bellpair, Model::RsfGate, Model::CovarianceVn})
    if (name == model_name(m)) return m;
  throw Error(ErrorCode::ConfigError, "unknown model '" + name + "'");
}

int default_burn_in(const GameConfig& cfg) { return cfg.p == 0 ? 2 * cfg.L * cfg.L : 4 * cfg.L; }

int effective_burn_in(const GameConfig& cfg) { return cfg.burn_in < 0 ? default_burn_in(cfg) : cfg.burn_in; }

void validate_config(const GameConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (cfg.L < 2) fail("L must be at least 2");
  if (!(cfg.p >= 0 && cfg.p <= 1)) fail("p must lie in [0,1]");
  if (cfg.steps < 0) fail("steps must be non-negative");
  if (cfg.trajectories < 1) fail("trajectories must be positive");
  if (cfg.measure_every < 1) fail("measure_every must be positive");
  if (cfg.workers < 1) fail("workers must be positive");
  if (cfg.entropy_orders.empty()) fail("at least one entropy order is required");
  for (double n : cfg.entropy_orders)
    if (!(n >= 0) || !std::isfinite(n)) fail("entropy orders must be finite and non-negative");
  if (cfg.layout_only && cfg.model != Model::RsfGate) fail("layout_only applies to rsf-gate only");
  if (cfg.layout_only)
    for (double n : cfg.entropy_orders)
      if (n != 0) fail("layout-only rsf-gate records the Renyi-0 entropy only");
  if (cfg.model == Model::CovarianceVn && !(cfg.disentangler_order > 0)) fail("disentangler order must be positive");
}

std::uint64_t schedule_seed(std::uint64_t global_seed, int trajectory) {
  return derive_seed(global_seed, static_cast<std::uint64_t>(trajectory));
}

std::uint64_t payload_seed(std::uint64_t global_seed, int trajectory) {
  return mix64(schedule_seed(global_seed, trajectory) ^ 0x5bd1e9955bd1e995ULL);
}

namespace {

std::vector<double> to_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

struct BraidingState {
  MajoranaPairing state;
  explicit BraidingState(const GameConfig& cfg) : state(product_state(cfg.L)) {}
  void entangle(int bond, Rng& rng) { state = random_braid(state, bond, rng); }
  void disentangle(int bond) { state = braid_disentangle(state, bond); }
  void measure(const GameConfig& cfg, Measurement& m) const {
    const double s = braid_entropy_at(state, cfg.L / 2);
    m.half_chain.assign(cfg.entropy_orders.size(), s);
    if (cfg.record_profile) m.profile.assign(cfg.entropy_orders.size(), entropy_profile(state));
  }
  int gate_count() const { return -1; }
};

struct BellState {
  BellConfig state;
  explicit BellState(const GameConfig& cfg) : state(cfg.L) {}
  void entangle(int bond, Rng&) { entangle_in_place(state, bond); }
  void disentangle(int bond) { disentangle_in_place(state, bond); }
  void measure(const GameConfig& cfg, Measurement& m) const {
    const double s = entropy_at(state, cfg.L / 2);
    m.half_chain.assign(cfg.entropy_orders.size(), s);
    if (cfg.record_profile) m.profile.assign(cfg.entropy_orders.size(), to_double(bell_profile(state)));
  }
  int gate_count() const { return -1; }
};

template <class G>
struct RsfState {
  Circuit<G> circuit;
  explicit RsfState(const GameConfig& cfg) { circuit.L = cfg.L; }
  void entangle(int bond, Rng& rng) {
    if constexpr (std::is_same_v<G, Matchgate>) {
      absorb(circuit, haar_matchgate(rng), bond);
    } else {
      absorb(circuit, LayoutGate{}, bond);
    }
  }
  void disentangle(int bond) {
    auto found = disentangle_gate(circuit, bond);
    if (found) circuit = std::move(found->second);
  }
  void measure(const GameConfig& cfg, Measurement& m) const {
    const int half = cfg.L / 2;
    std::vector<int> s0;
    std::optional<CovarianceMatrix> cov;
    for (double n : cfg.entropy_orders) {
      if (n == 0) {
        if (s0.empty()) s0 = renyi0_profile_from_layout(circuit.layout());
        m.half_chain.push_back(s0[half - 1]);
        if (cfg.record_profile) m.profile.push_back(to_double(s0));
      } else if constexpr (std::is_same_v<G, Matchgate>) {
        if (!cov) cov = evaluate_covariance(circuit);
        if (cfg.record_profile) {
          m.profile.push_back(entanglement_profile(*cov, n));
          m.half_chain.push_back(m.profile.back()[half - 1]);
        } else {
          m.half_chain.push_back(bond_entropy(*cov, half, n));
        }
      }
    }
  }
  int gate_count() const { return circuit.gate_count(); }
};

struct CovState {
  CovarianceMatrix cov;
  double order;
  CovState(const GameConfig& cfg) : cov(vacuum_covariance(cfg.L)), order(cfg.disentangler_order) {}
  void entangle(int bond, Rng& rng) { apply_gate(cov, bond, haar_matchgate(rng).r()); }
  void disentangle(int bond) { apply_gate(cov, bond, vn_disentangler(cov, bond, order).r()); }
  void measure(const GameConfig& cfg, Measurement& m) const {
    for (double n : cfg.entropy_orders) {
      if (cfg.record_profile) {
        m.profile.push_back(entanglement_profile(cov, n));
        m.half_chain.push_back(m.profile.back()[cfg.L / 2 - 1]);
      } else {
        m.half_chain.push_back(bond_entropy(cov, cfg.L / 2, n));
      }
    }
  }
  int gate_count() const { return -1; }
};

template <class State>
TrajectoryResult simulate(const GameConfig& cfg, int index) {
  TrajectoryResult out;
  out.index = index;
  out.seed = schedule_seed(cfg.seed, index);
  Rng schedule(out.seed);
  Rng payload(payload_seed(cfg.seed, index));
  State state(cfg);
  const int burn = effective_burn_in(cfg);
  const int total = burn + cfg.steps;
  const auto bonds = static_cast<std::uint64_t>(cfg.L - 1);
  for (int t = 0;; ++t) {
    if (t >= burn && (t - burn) % cfg.measure_every == 0) {
      Measurement m;
      m.t = t;
      state.measure(cfg, m);
      out.records.push_back(std::move(m));
    }
    if (t == total) break;
    for (int move = 0; move < cfg.L; ++move) {
      const int bond = 1 + static_cast<int>(schedule.below(bonds));
      if (schedule.bernoulli(cfg.p)) {
        state.disentangle(bond);
      } else {
        state.entangle(bond, payload);
      }
    }
  }
  out.final_gate_count = state.gate_count();
  return out;
}

}  // namespace

TrajectoryResult run_trajectory(const GameConfig& cfg, int index) {
  validate_config(cfg);
  switch (cfg.model) {
    case Model::Braiding: return simulate<BraidingState>(cfg, index);
    case Model::Bellpair: return simulate<BellState>(cfg, index);
    case Model::RsfGate:
      return cfg.layout_only ? simulate<RsfState<LayoutGate>>(cfg, index) : simulate<RsfState<Matchgate>>(cfg, index);
    case Model::CovarianceVn: return simulate<CovState>(cfg, index);
  }
  throw Error(ErrorCode::ConfigError, "unknown model");
}

void run_game(const GameConfig& cfg, const std::function<void(TrajectoryResult&&)>& sink) {
  validate_config(cfg);
  const int workers = std::min(cfg.workers, cfg.trajectories);
  if (workers == 1) {
    for (int i = 0; i < cfg.trajectories; ++i) sink(run_trajectory(cfg, i));
    return;
  }
  // Batches bound the memory held before emission; each slot is written by one thread.
  const int batch = 4 * workers;
  for (int first = 0; first < cfg.trajectories; first += batch) {
    const int count = std::min(batch, cfg.trajectories - first);
    std::vector<std::optional<TrajectoryResult>> slots(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto work = [&] {
      for (int k; (k = next.fetch_add(1)) < count;) {
        try {
          slots[k] = run_trajectory(cfg, first + k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (int k = 0; k < count; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      sink(std::move(*slots[k]));
    }
  }
}

std::vector<TrajectoryResult> run_game(const GameConfig& cfg) {
  std::vector<TrajectoryResult> out;
  run_game(cfg, [&](TrajectoryResult&& r) { out.push_back(std::move(r)); });
  return out;
}

namespace {

// Entropy across one bond after a trial gate, computed on the smaller side.
class BondObjective {
 public:
  BondObjective(const CovarianceMatrix& cov, int bond, double n) : n_(n) {
    const int L = cov.L;
    const Eigen::MatrixXd& g = cov.gamma;
    const int gate0 = 2 * (bond - 1);
    left_ = 2 * bond <= L;
    // Side Majoranas, with the two touched by the gate placed last.
    std::vector<int> side;
    if (left_) {
      for (int i = 0; i < gate0; ++i) side.push_back(i);
      sel_ = {0, 1};
    } else {
      for (int i = gate0 + 4; i < 2 * L; ++i) side.push_back(i);
      sel_ = {2, 3};
    }
    const int f = static_cast<int>(side.size());
    work_.resize(f + 2, f + 2);
    for (int a = 0; a < f; ++a)
      for (int b = 0; b < f; ++b) work_(a, b) = g(side[a], side[b]);
    cross_.resize(4, f);
    for (int r = 0; r < 4; ++r)
      for (int b = 0; b < f; ++b) cross_(r, b) = g(gate0 + r, side[b]);
    local_ = g.block(gate0, gate0, 4, 4);
  }

  double operator()(const Mat4r& r) {
    const int f = static_cast<int>(work_.rows()) - 2;
    Eigen::Matrix<double, 2, 4> rs;
    rs.row(0) = r.row(sel_[0]);
    rs.row(1) = r.row(sel_[1]);
    const Eigen::MatrixXd rows = rs * cross_;
    const Eigen::Matrix2d corner = rs * local_ * rs.transpose();
    work_.bottomLeftCorner(2, f) = rows;
    work_.topRightCorner(f, 2) = -rows.transpose();
    work_.bottomRightCorner(2, 2) = (corner - corner.transpose()) / 2;
    scratch_ = work_;
    skew_tridiagonalize(scratch_, sub_);
    // The Williamson values are the singular values of the bidiagonal B with
    // diagonal sub(0), sub(2), ... and superdiagonal sub(1), sub(3), ...; use B^T B.
    const Eigen::Index m = (sub_.size() + 1) / 2;
    diag_.resize(m);
    off_.resize(m - 1);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double above = i > 0 ? sub_(2 * i - 1) : 0.0;
      diag_(i) = sub_(2 * i) * sub_(2 * i) + above * above;
      if (i + 1 < m) off_(i) = sub_(2 * i) * sub_(2 * i + 1);
    }
    solver_.computeFromTridiagonal(diag_, off_, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver_.eigenvalues();
    spec_.resize(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) spec_[k] = std::sqrt(std::clamp(ev(k), 0.0, 1.0));
    return renyi_entropy(spec_, n_);
  }

 private:
  double n_;
  bool left_ = true;
  std::array<int, 2> sel_{};
  Eigen::MatrixXd work_, cross_, scratch_;
  Eigen::VectorXd diag_, off_, sub_;
  Mat4r local_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
  WilliamsonSpectrum spec_;
};

using Params = std::array<double, 4>;

Matchgate gate_of(const Params& x) { return from_params(x[0], x[1], x[2], x[3], 0, 0); }

struct Vertex {
  Params x;
  double f;
};

Vertex nelder_mead(const Params& start, double step, int max_iterations, double tol,
                   const std::function<double(const Params&)>& fn) {
  std::array<Vertex, 5> s;
  s[0] = {start, fn(start)};
  for (int d = 0; d < 4; ++d) {
    Params x = start;
    x[d] += step;
    s[d + 1] = {x, fn(x)};
  }
  auto order = [&] { std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; }); };
  auto along = [&](const Params& c, double t) {
    Params x;
    for (int d = 0; d < 4; ++d) x[d] = c[d] + t * (s[4].x[d] - c[d]);
    return Vertex{x, fn(x)};
  };
  order();
  for (int it = 0; it < max_iterations && s[4].f - s[0].f > tol; ++it) {
    Params c{};
    for (int v = 0; v < 4; ++v)
      for (int d = 0; d < 4; ++d) c[d] += s[v].x[d] / 4;
    const Vertex refl = along(c, -1);
    if (refl.f < s[0].f) {
      const Vertex exp = along(c, -2);
      s[4] = exp.f < refl.f ? exp : refl;
    } else if (refl.f < s[3].f) {
      s[4] = refl;
    } else {
      const Vertex con = refl.f < s[4].f ? along(c, -0.5) : along(c, 0.5);
      if (con.f < std::min(refl.f, s[4].f)) {
        s[4] = con;
      } else {
        for (int v = 1; v < 5; ++v) {
          Params x;
          for (int d = 0; d < 4; ++d) x[d] = s[0].x[d] + (s[v].x[d] - s[0].x[d]) / 2;
          s[v] = {x, fn(x)};
        }
      }
    }
    order();
  }
  return s[0];
}

}  // namespace

Matchgate vn_disentangler(const CovarianceMatrix& cov, int bond, double n, const VnOptions& opts) {
  if (bond < 1 || bond > cov.L - 1) throw Error(ErrorCode::BondOutOfRange, "bond " + std::to_string(bond));
  if (!(n > 0)) throw Error(ErrorCode::RangeError, "entropy order must be positive");
  if (!purity_check(cov)) throw Error(ErrorCode::NotPure, "disentangler requires a pure state");
  if (opts.grid_points < 1 || opts.starts < 1) throw Error(ErrorCode::RangeError, "empty search");

  BondObjective objective(cov, bond, n);
  auto fn = [&](const Params& x) { return objective(gate_of(x).r()); };
  const double identity = objective(Mat4r::Identity());
  if (identity <= opts.tolerance) return Matchgate();

  const int g = opts.grid_points;
  const double spacing = std::numbers::pi / g;
  std::vector<Vertex> grid;
  grid.reserve(static_cast<std::size_t>(g) * g * g * g);
  for (int i = 0; i < g * g * g * g; ++i) {
    Params x;
    for (int d = 0, rest = i; d < 4; ++d, rest /= g) x[d] = -std::numbers::pi / 2 + (rest % g) * spacing;
    grid.push_back({x, fn(x)});
  }
  const int starts = std::min<int>(opts.starts, static_cast<int>(grid.size()));
  std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                    [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  Vertex best = grid[0];
  for (int s = 0; s < starts; ++s) {
    const Vertex v = nelder_mead(grid[s].x, spacing / 2, opts.max_iterations, opts.tolerance, fn);
    if (v.f < best.f) best = v;
  }
  if (best.f >= identity - opts.tolerance) return Matchgate();
  return gate_of(best.x);
}

BenchmarkResult disentangler_benchmark(int L, std::uint64_t seed, const VnOptions& opts) {
  if (L < 2) throw Error(ErrorCode::RangeError, "L must be at least 2");
  if (L > 256) throw Error(ErrorCode::TooLarge, "benchmark is limited to L <= 256");
  BenchmarkResult out;
  out.L = L;
  out.seed = seed;
  const int half = L / 2;
  const auto bonds = static_cast<std::uint64_t>(L - 1);

  RsfCircuit initial;
  initial.L = L;
  Rng prep(derive_seed(seed, 0));
  const long long absorbs = static_cast<long long>(L) * L * L;
  for (long long i = 0; i < absorbs; ++i) {
    const int bond = 1 + static_cast<int>(prep.below(bonds));
    absorb(initial, haar_matchgate(prep), bond);
  }
  out.initial_gates = initial.gate_count();

  auto record_rsf = [&](const RsfCircuit& c, StrategySeries& s) {
    const auto s0 = renyi0_profile_from_layout(c.layout());
    s.s0_half.push_back(s0[half - 1]);
    s.s0_total.push_back(std::accumulate(s0.begin(), s0.end(), 0.0));
    s.s1_half.push_back(bond_entropy(evaluate_covariance(c), half, 1));
  };

  for (const char* name : {"gate", "renyi0"}) {
    const bool renyi0 = std::string(name) == "renyi0";
    StrategySeries s;
    s.strategy = name;
    RsfCircuit c = initial;
    Rng schedule(derive_seed(seed, 1));
    record_rsf(c, s);
    for (int t = 1; t <= 2 * L; ++t) {
      for (int move = 0; move < L; ++move) {
        const int bond = 1 + static_cast<int>(schedule.below(bonds));
        auto found = disentangle_gate(c, bond);
        if (!found) continue;
        if (renyi0) {
          const int before = renyi0_profile_from_layout(c.layout())[bond - 1];
          const int after = renyi0_profile_from_layout(found->second.layout())[bond - 1];
          if (after >= before) continue;
        }
        c = std::move(found->second);
      }
      record_rsf(c, s);
    }
    out.series.push_back(std::move(s));
  }

  StrategySeries s;
  s.strategy = "von-neumann";
  CovarianceMatrix cov = evaluate_covariance(initial);
  Rng schedule(derive_seed(seed, 1));
  auto record_cov = [&] {
    double total = 0;
    for (int b = 1; b < L; ++b) {
      const double r = bond_entropy(cov, b, 0);
      total += r;
      if (b == half) s.s0_half.push_back(r);
    }
    s.s0_total.push_back(total);
    s.s1_half.push_back(bond_entropy(cov, half, 1));
  };
  record_cov();
  for (int t = 1; t <= 2 * L; ++t) {
    for (int move = 0; move < L; ++move) {
      const int bond = 1 + static_cast<int>(schedule.below(bonds));
      apply_gate(cov, bond, vn_disentangler(cov, bond, 1, opts).r());
    }
    record_cov();
  }
  out.series.push_back(std::move(s));
  return out;
}

}  // namespace mgarena
