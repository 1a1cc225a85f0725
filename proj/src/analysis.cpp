#include "mgarena/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "mgarena/error.hpp"

namespace mgarena {

bool key_less(const EnsembleStat& a, const EnsembleStat& b) {
  return std::tie(a.model, a.L, a.p, a.n, a.bond) < std::tie(b.model, b.L, b.p, b.n, b.bond);
}

namespace {

// Keys per order: the half chain, then bonds 1..L-1 when profiles are recorded.
std::size_t keys_per_order(const GameConfig& cfg) { return cfg.record_profile ? static_cast<std::size_t>(cfg.L) : 1; }

}  // namespace

Aggregator::Aggregator(const GameConfig& cfg)
    : cfg_(cfg), averages_(static_cast<std::size_t>(cfg.trajectories)), seen_(static_cast<std::size_t>(cfg.trajectories)) {}

void Aggregator::add(const TrajectoryResult& result) {
  if (result.index < 0 || result.index >= cfg_.trajectories) throw Error(ErrorCode::RangeError, "trajectory index out of range");
  if (result.records.empty()) throw Error(ErrorCode::EmptyInput, "trajectory without measurements");
  const std::size_t orders = cfg_.entropy_orders.size();
  const std::size_t per = keys_per_order(cfg_);
  std::vector<double> sum(orders * per, 0.0);
  for (const auto& m : result.records) {
    for (std::size_t o = 0; o < orders; ++o) {
      sum[o * per] += m.half_chain.at(o);
      for (std::size_t b = 1; b < per; ++b) sum[o * per + b] += m.profile.at(o).at(b - 1);
    }
  }
  for (double& s : sum) s /= static_cast<double>(result.records.size());
  averages_[result.index] = std::move(sum);
  seen_[result.index] = true;
}

std::vector<EnsembleStat> Aggregator::finish() const {
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < seen_.size(); ++i)
    if (seen_[i]) present.push_back(i);
  if (present.empty()) throw Error(ErrorCode::EmptyInput, "no trajectories to aggregate");
  const std::size_t orders = cfg_.entropy_orders.size();
  const std::size_t per = keys_per_order(cfg_);
  const auto count = static_cast<double>(present.size());
  std::vector<EnsembleStat> out;
  for (std::size_t o = 0; o < orders; ++o) {
    for (std::size_t b = 0; b < per; ++b) {
      const std::size_t key = o * per + b;
      double mean = 0;
      for (std::size_t i : present) mean += averages_[i][key];
      mean /= count;
      double var = 0;
      for (std::size_t i : present) var += (averages_[i][key] - mean) * (averages_[i][key] - mean);
      EnsembleStat s;
      s.model = model_name(cfg_.model);
      s.L = cfg_.L;
      s.p = cfg_.p;
      s.n = cfg_.entropy_orders[o];
      s.bond = static_cast<int>(b);
      s.mean = mean;
      s.stderr_ = present.size() > 1 ? std::sqrt(var / (count - 1) / count) : 0.0;
      s.count = static_cast<int>(present.size());
      s.seed = cfg_.seed;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<EnsembleStat> aggregate(const std::vector<TrajectoryResult>& results, const GameConfig& cfg) {
  if (results.empty()) throw Error(ErrorCode::EmptyInput, "no trajectories to aggregate");
  Aggregator agg(cfg);
  for (const auto& r : results) agg.add(r);
  return agg.finish();
}

namespace {

struct Scaled {
  std::vector<double> x, y;
};

std::vector<Scaled> rescale(const std::vector<Curve>& curves, double pc, double nu, double sigma, double window) {
  std::vector<Scaled> out;
  for (const auto& c : curves) {
    if (c.L <= 0) throw Error(ErrorCode::RangeError, "curve with non-positive L");
    Scaled s;
    const double xs = std::pow(static_cast<double>(c.L), 1.0 / nu);
    const double ys = std::pow(static_cast<double>(c.L), sigma);
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& [p, v] : c.points) {
      if (!(p > last)) throw Error(ErrorCode::RangeError, "p grid must be strictly increasing");
      last = p;
      if (std::abs(p - pc) > window) continue;
      s.x.push_back((p - pc) * xs);
      s.y.push_back(v / ys);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Piecewise-linear interpolation; x must lie within [front, back].
double interpolate(const Scaled& c, double x) {
  const auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - c.x.begin());
  if (c.x[hi] == x || hi == 0) return c.y[hi];
  const std::size_t lo = hi - 1;
  const double t = (x - c.x[lo]) / (c.x[hi] - c.x[lo]);
  return c.y[lo] + t * (c.y[hi] - c.y[lo]);
}

}  // namespace

double collapse_score(const std::vector<Curve>& curves, double pc, double nu, double sigma, double window) {
  if (curves.size() < 2) throw Error(ErrorCode::InsufficientOverlap, "collapse needs at least two system sizes");
  if (!(nu > 0)) throw Error(ErrorCode::RangeError, "nu must be positive");
  const auto scaled = rescale(curves, pc, nu, sigma, window);
  double sum = 0;
  long long pairs = 0;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      if (i == j || scaled[j].x.size() < 2) continue;
      for (std::size_t k = 0; k < scaled[i].x.size(); ++k) {
        const double x = scaled[i].x[k];
        if (x < scaled[j].x.front() || x > scaled[j].x.back()) continue;
        const double d = scaled[i].y[k] - interpolate(scaled[j], x);
        sum += d * d;
        ++pairs;
      }
    }
  }
  if (pairs == 0) throw Error(ErrorCode::InsufficientOverlap, "rescaled curves do not overlap");
  return sum / static_cast<double>(pairs);
}

NuScan scan_nu(const std::vector<Curve>& curves, double pc, double sigma, double lo, double hi, int points,
               double window) {
  if (points < 1 || !(lo > 0) || hi < lo) throw Error(ErrorCode::RangeError, "invalid nu scan range");
  NuScan scan;
  for (int k = 0; k < points; ++k) {
    const double nu = points == 1 ? lo : lo + k * (hi - lo) / (points - 1);
    const double score = collapse_score(curves, pc, nu, sigma, window);
    scan.scores.emplace_back(nu, score);
    if (k == 0 || score < scan.best_score) {
      scan.best_nu = nu;
      scan.best_score = score;
    }
  }
  return scan;
}

std::vector<Curve> curves_from_stats(const std::vector<EnsembleStat>& stats, double n) {
  std::map<int, std::map<double, double>> by_l;
  std::string model;
  double order = n;
  for (const auto& s : stats) {
    if (s.bond != 0) continue;
    if (order < 0) order = s.n;
    if (s.n != order) continue;
    if (model.empty()) model = s.model;
    if (s.model != model) throw Error(ErrorCode::ParseError, "collapse input mixes models");
    by_l[s.L][s.p] = s.mean;
  }
  std::vector<Curve> out;
  for (const auto& [L, pts] : by_l) {
    Curve c;
    c.L = L;
    c.points.assign(pts.begin(), pts.end());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mgarena
