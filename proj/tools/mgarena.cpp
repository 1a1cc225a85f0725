// Command-line front end: game, bench-disentanglers, critical-profile, selftest, collapse, convert.
// Exit codes: 0 success, 1 failed selftest or internal error, 2 configuration or input error, 3 I/O error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mgarena/analysis.hpp"
#include "mgarena/bellpair.hpp"
#include "mgarena/error.hpp"
#include "mgarena/game.hpp"
#include "mgarena/io.hpp"
#include "mgarena/rsf.hpp"
#include "mgarena/selftest.hpp"

using namespace mgarena;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("MGARENA_SEED");
    if (env == nullptr || *env == '\0') return 0;
    text = env;
  }
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw Error(ErrorCode::ConfigError, "seed must be a non-negative integer, got '" + text + "'");
  return v;
}

// Writes to --out atomically, or to stdout when no path is given.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::IoError, "cannot write to stdout");
    return;
  }
  write_file_atomic(path, content);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct GameArgs {
  std::string model;
  std::vector<int> L;
  std::vector<std::string> p;
  int trajectories = 1;
  int steps = 100;
  int burn_in = -1;
  std::string seed;
  std::vector<double> orders{0};
  bool profile = false;
  int measure_every = 1;
  int workers = 1;
  bool layout_only = false;
  double disentangler_order = 1;
  std::string out;
  std::string format;
};

int run_game_command(const GameArgs& a) {
  const Model model = parse_model(a.model);
  const std::uint64_t seed = resolve_seed(a.seed);
  std::vector<double> ps;
  for (const auto& text : a.p)
    for (double p : parse_decimal_grid(text)) ps.push_back(p);
  const Format format = !a.format.empty() ? parse_format(a.format)
                                          : (ends_with(a.out, ".json") ? Format::Json : Format::Csv);
  std::vector<GameConfig> configs;
  for (int L : a.L) {
    for (double p : ps) {
      GameConfig cfg;
      cfg.model = model;
      cfg.L = L;
      cfg.p = p;
      cfg.steps = a.steps;
      cfg.burn_in = a.burn_in;
      cfg.trajectories = a.trajectories;
      cfg.seed = seed;
      cfg.entropy_orders = a.orders;
      cfg.record_profile = a.profile;
      cfg.measure_every = a.measure_every;
      cfg.workers = a.workers;
      cfg.layout_only = a.layout_only;
      cfg.disentangler_order = a.disentangler_order;
      validate_config(cfg);
      configs.push_back(cfg);
    }
  }
  std::vector<EnsembleStat> stats;
  for (const auto& cfg : configs) {
    Aggregator agg(cfg);
    run_game(cfg, [&](TrajectoryResult&& r) { agg.add(r); });
    for (auto& s : agg.finish()) stats.push_back(std::move(s));
  }
  emit(a.out, format == Format::Csv ? stats_to_csv(stats) : stats_to_json(stats, configs));
  return 0;
}

int run_bench_command(int L, const std::string& seed_flag, const std::string& out) {
  if (L < 2) throw Error(ErrorCode::ConfigError, "--L must be at least 2");
  const BenchmarkResult res = disentangler_benchmark(L, resolve_seed(seed_flag));
  std::string csv = "strategy,t,s0_half,s0_total,s1_half\n";
  for (const auto& s : res.series)
    for (std::size_t t = 0; t < s.s0_half.size(); ++t)
      csv += s.strategy + ',' + std::to_string(t) + ',' + fmt17(s.s0_half[t]) + ',' + fmt17(s.s0_total[t]) + ',' +
             fmt17(s.s1_half[t]) + '\n';
  emit(out, csv);
  std::ostream& log = out.empty() || out == "-" ? std::cerr : std::cout;
  log << "L=" << res.L << " seed=" << res.seed << " initial gates=" << res.initial_gates << '\n';
  for (const auto& s : res.series) {
    int reached = -1;
    for (std::size_t t = 0; t < s.s0_total.size(); ++t)
      if (s.s0_total[t] == 0) {
        reached = static_cast<int>(t);
        break;
      }
    log << s.strategy << ": product state " << (reached < 0 ? "not reached" : "at t=" + std::to_string(reached))
        << ", final half-chain S0=" << s.s0_half.back() << '\n';
  }
  return 0;
}

struct ProfileArgs {
  int L = 16;
  int trajectories = 1000;
  std::string seed;
  int burn_in = -1;
  int steps = -1;
  int measure_every = 1;
  int workers = 1;
  std::string out;
};

int run_profile_command(const ProfileArgs& a) {
  GameConfig cfg;
  cfg.model = Model::Bellpair;
  cfg.L = a.L;
  cfg.p = 0.5;
  // Equilibration at the critical point is diffusive, so the default burn-in scales as L^2.
  cfg.burn_in = a.burn_in >= 0 ? a.burn_in : 2 * a.L * a.L;
  cfg.steps = a.steps >= 0 ? a.steps : 2 * a.L;
  cfg.trajectories = a.trajectories;
  cfg.seed = resolve_seed(a.seed);
  cfg.record_profile = true;
  cfg.measure_every = a.measure_every;
  cfg.workers = a.workers;
  validate_config(cfg);
  Aggregator agg(cfg);
  run_game(cfg, [&](TrajectoryResult&& r) { agg.add(r); });
  std::map<int, EnsembleStat> by_bond;
  for (const auto& s : agg.finish()) by_bond[s.bond] = s;
  std::string csv = "bond,mean,stderr,exact,exact_rational,z\n";
  double worst = 0;
  for (int m = 0; m <= cfg.L; ++m) {
    double mean = 0, err = 0;
    if (m > 0 && m < cfg.L) {
      mean = by_bond.at(m).mean;
      err = by_bond.at(m).stderr_;
    }
    const double exact = mean_critical_profile(cfg.L, m);
    const double diff = mean - exact;
    const double z = err > 0 ? diff / err : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    worst = std::max(worst, std::abs(z));
    std::ostringstream rational;
    rational << mean_critical_profile_exact(cfg.L, m);
    csv += std::to_string(m) + ',' + fmt17(mean) + ',' + fmt17(err) + ',' + fmt17(exact) + ',' + rational.str() + ',' +
           fmt17(z) + '\n';
  }
  emit(a.out, csv);
  (a.out.empty() || a.out == "-" ? std::cerr : std::cout) << "max |z| = " << worst << '\n';
  return 0;
}

int run_selftest_command(const std::string& level, bool corrupt) {
  SelftestOptions opts;
  if (level == "fast") {
    opts.level = SelftestLevel::Fast;
  } else if (level == "full") {
    opts.level = SelftestLevel::Full;
  } else {
    throw Error(ErrorCode::ConfigError, "--level must be fast or full");
  }
  opts.corrupt_rules = corrupt;
  bool ok = true;
  for (const auto& r : run_selftest(opts)) {
    std::printf("%s %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), r.seconds);
    ok = ok && r.pass;
  }
  return ok ? 0 : kExitFailed;
}

struct CollapseArgs {
  std::vector<std::string> in;
  double pc = 0.5;
  std::string nu = "0.5:2";
  int nu_points = 151;
  double sigma = 0;
  double window = 0.15;
  double order = -1;
  std::string out;
};

int run_collapse_command(const CollapseArgs& a) {
  const auto colon = a.nu.find(':');
  double lo = 0, hi = 0;
  try {
    lo = std::stod(a.nu.substr(0, colon));
    hi = colon == std::string::npos ? lo : std::stod(a.nu.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "--nu must be 'lo:hi', got '" + a.nu + "'");
  }
  if (!(lo > 0) || hi < lo || a.nu_points < 1 || !(a.window > 0))
    throw Error(ErrorCode::ConfigError, "invalid nu range, point count or window");
  std::vector<EnsembleStat> stats;
  for (const auto& path : a.in)
    for (auto& s : import_stats(path)) stats.push_back(std::move(s));
  const auto curves = curves_from_stats(stats, a.order);
  const NuScan scan = scan_nu(curves, a.pc, a.sigma, lo, hi, colon == std::string::npos ? 1 : a.nu_points, a.window);
  std::string csv = "nu,score\n";
  for (const auto& [nu, score] : scan.scores) csv += fmt17(nu) + ',' + fmt17(score) + '\n';
  if (!a.out.empty()) emit(a.out, csv);
  std::cout << "best_nu=" << fmt17(scan.best_nu) << " score=" << fmt17(scan.best_score) << " sizes=" << curves.size()
            << '\n';
  return 0;
}

int run_convert_command(const std::string& in_path, const std::string& out_path) {
  const std::string text = read_file(in_path);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw Error(ErrorCode::ParseError, "empty input file");
  std::istringstream in(text);
  std::ostringstream out;
  if (text.compare(start, 4, "RSF ") == 0) {
    write_bell(out, rsf_layout_to_bell(read_rsf_layout(in)));
  } else if (text.compare(start, 5, "BELL ") == 0) {
    write_rsf_layout(out, bell_to_rsf_layout(read_bell(in)));
  } else {
    throw Error(ErrorCode::ParseError, "input is neither an RSF nor a BELL file");
  }
  emit(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary circuit games with matchgates"};
  app.require_subcommand(1);

  GameArgs game;
  auto* g = app.add_subcommand("game", "Run a game ensemble and export statistics");
  g->add_option("--model", game.model, "braiding | bellpair | rsf-gate | covariance-vn")->required();
  g->add_option("--L", game.L, "System size (repeatable)")->required();
  g->add_option("--p", game.p, "Disentangling probability or start:stop:step (repeatable)")->required();
  g->add_option("--trajectories", game.trajectories, "Trajectories per (L, p)");
  g->add_option("--steps", game.steps, "Measured steps after burn-in");
  g->add_option("--burn-in", game.burn_in, "Steps before measuring (default depends on model and p)");
  g->add_option("--seed", game.seed, "Global seed (falls back to MGARENA_SEED)");
  g->add_option("--orders", game.orders, "Entropy orders, comma separated")->delimiter(',');
  g->add_flag("--profile", game.profile, "Also record every bond");
  g->add_option("--measure-every", game.measure_every, "Measurement interval in steps");
  g->add_option("--workers", game.workers, "Worker threads");
  g->add_flag("--layout-only", game.layout_only, "rsf-gate: track the layout only (Renyi-0)");
  g->add_option("--disentangler-order", game.disentangler_order, "covariance-vn: entropy order minimized");
  g->add_option("--out", game.out, "Output path (stdout if omitted)");
  g->add_option("--format", game.format, "csv | json (default from the --out extension)");

  int bench_l = 64;
  std::string bench_seed, bench_out;
  auto* b = app.add_subcommand("bench-disentanglers", "Compare gate, Renyi-0 and von Neumann disentanglers");
  b->add_option("--L", bench_l, "System size");
  b->add_option("--seed", bench_seed, "Seed (falls back to MGARENA_SEED)");
  b->add_option("--out", bench_out, "Output CSV path (stdout if omitted)");

  ProfileArgs prof;
  auto* c = app.add_subcommand("critical-profile", "Bell pair game at p = 1/2 against the exact profile");
  c->add_option("--L", prof.L, "System size")->required();
  c->add_option("--trajectories", prof.trajectories, "Trajectories");
  c->add_option("--seed", prof.seed, "Seed (falls back to MGARENA_SEED)");
  c->add_option("--burn-in", prof.burn_in, "Steps before measuring (default 2 L^2)");
  c->add_option("--steps", prof.steps, "Measured steps (default 2 L)");
  c->add_option("--measure-every", prof.measure_every, "Measurement interval in steps");
  c->add_option("--workers", prof.workers, "Worker threads");
  c->add_option("--out", prof.out, "Output CSV path (stdout if omitted)");

  std::string level = "fast";
  bool corrupt = false;
  auto* s = app.add_subcommand("selftest", "Run the property suites");
  s->add_option("--level", level, "fast | full");
  s->add_flag("--corrupt-rule", corrupt, "Test hook: corrupt one entangle rule")->group("");

  CollapseArgs col;
  auto* k = app.add_subcommand("collapse", "Finite-size collapse scan over nu");
  k->add_option("--in", col.in, "Stat files from `game` (repeatable)")->required();
  k->add_option("--pc", col.pc, "Critical probability")->required();
  k->add_option("--nu", col.nu, "Scan range lo:hi");
  k->add_option("--nu-points", col.nu_points, "Grid points in the scan");
  k->add_option("--sigma", col.sigma, "Exponent of the value scaling L^sigma");
  k->add_option("--collapse-window", col.window, "Only use |p - pc| <= window");
  k->add_option("--order", col.order, "Entropy order to use (default: first in the file)");
  k->add_option("--out", col.out, "Write the score table as CSV");

  std::string conv_in, conv_out;
  auto* v = app.add_subcommand("convert", "Convert between RSF layout and Bell configuration files");
  v->add_option("--in", conv_in, "Input file")->required();
  v->add_option("--out", conv_out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*g) return run_game_command(game);
    if (*b) return run_bench_command(bench_l, bench_seed, bench_out);
    if (*c) return run_profile_command(prof);
    if (*s) return run_selftest_command(level, corrupt);
    if (*k) return run_collapse_command(col);
    if (*v) return run_convert_command(conv_in, conv_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? kExitIo : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitConfig;
}
