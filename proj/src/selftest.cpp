#include "mgarena/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mgarena/bellpair.hpp"
#include "mgarena/fgs.hpp"
#include "mgarena/matchgate.hpp"
#include "mgarena/rng.hpp"
#include "mgarena/rsf.hpp"

namespace mgarena {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

CheckResult yang_baxter_batch(int count) {
  Rng rng(derive_seed(0x5e1f, 1));
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const Matchgate u = haar_matchgate(rng), up = haar_matchgate(rng), upp = haar_matchgate(rng);
    const auto lr = yang_baxter(u, up, upp, Direction::LeftToRight);
    const Mat8c before = embed_three(u, 1) * embed_three(up, 2) * embed_three(upp, 1);
    const Mat8c after = embed_three(lr[0], 2) * embed_three(lr[1], 1) * embed_three(lr[2], 2);
    worst = std::max(worst, phase_aligned_distance(after, before));
    const auto rl = yang_baxter(u, up, upp, Direction::RightToLeft);
    const Mat8c before2 = embed_three(u, 2) * embed_three(up, 1) * embed_three(upp, 2);
    const Mat8c after2 = embed_three(rl[0], 1) * embed_three(rl[1], 2) * embed_three(rl[2], 1);
    worst = std::max(worst, phase_aligned_distance(after2, before2));
  }
  return {"yang-baxter", worst <= kEpsRewrite, std::to_string(count) + " triples, max deviation " + fmt(worst)};
}

CheckResult left_right_batch(int count) {
  Rng rng(derive_seed(0x5e1f, 2));
  Vec8c zero = Vec8c::Zero();
  zero(0) = 1;
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const Matchgate u = haar_matchgate(rng), up = haar_matchgate(rng);
    const auto lr = left_right(u, up, Direction::LeftToRight);
    const Vec8c before = embed_three(u, 1) * (embed_three(up, 2) * zero);
    const Vec8c after = embed_three(lr[0], 2) * (embed_three(lr[1], 1) * zero);
    worst = std::max(worst, phase_aligned_distance(after, before));
    const auto rl = left_right(u, up, Direction::RightToLeft);
    const Vec8c before2 = embed_three(u, 2) * (embed_three(up, 1) * zero);
    const Vec8c after2 = embed_three(rl[0], 1) * (embed_three(rl[1], 2) * zero);
    worst = std::max(worst, phase_aligned_distance(after2, before2));
  }
  return {"left-right", worst <= kEpsRewrite, std::to_string(count) + " pairs, max deviation " + fmt(worst)};
}

CheckResult bijection(int max_l) {
  for (int L = 1; L <= max_l; ++L) {
    const auto all = enumerate_configs(L);
    if (BigInt(all.size()) != telephone(L)) return {"bijection", false, "count differs from T(" + std::to_string(L) + ")"};
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto& c : all) {
      const RsfLayout layout = bell_to_rsf_layout(c);
      if (!validate(layout) || !(rsf_layout_to_bell(layout) == c))
        return {"bijection", false, "round trip fails at L=" + std::to_string(L)};
      seen.insert(layout.diagonals);
    }
    if (seen.size() != all.size()) return {"bijection", false, "layouts collide at L=" + std::to_string(L)};
  }
  return {"bijection", true, "exhaustive for L <= " + std::to_string(max_l)};
}

CheckResult profile_equality(int max_l) {
  for (int L = 1; L <= max_l; ++L)
    for (const auto& c : enumerate_configs(L))
      if (renyi0_profile_from_layout(bell_to_rsf_layout(c)) != bell_profile(c))
        return {"profile-equality", false, "profiles differ at L=" + std::to_string(L)};
  return {"profile-equality", true, "exhaustive for L <= " + std::to_string(max_l)};
}

BellConfig corrupted_entangle(const BellConfig& c, int b) {
  // Two free neighbours stay free instead of forming a pair.
  if (c.partner(b) == 0 && c.partner(b + 1) == 0) return c;
  return entangle_move(c, b);
}

CheckResult dynamics_equivalence(int max_l, bool corrupt) {
  const std::function<BellConfig(const BellConfig&, int)> entangle =
      corrupt ? corrupted_entangle : [](const BellConfig& c, int b) { return entangle_move(c, b); };
  long long pairs = 0;
  for (int L = 2; L <= max_l; ++L) {
    for (const auto& c : enumerate_configs(L)) {
      const RsfLayout layout = bell_to_rsf_layout(c);
      for (int b = 1; b < L; ++b, ++pairs) {
        LayoutCircuit lc = layout_circuit(layout);
        absorb(lc, LayoutGate{}, b);
        if (!(rsf_layout_to_bell(lc.layout()) == entangle(c, b)))
          return {"dynamics-equivalence", false, "absorb differs from the entangle move at L=" + std::to_string(L)};
        const auto removed = disentangle_gate(layout_circuit(layout), b);
        const BellConfig d = removed ? rsf_layout_to_bell(removed->second.layout()) : c;
        if (!(d == disentangle_move(c, b)))
          return {"dynamics-equivalence", false, "disentangle differs at L=" + std::to_string(L)};
      }
    }
  }
  return {"dynamics-equivalence", true,
          std::to_string(pairs) + " (layout, bond) pairs for L <= " + std::to_string(max_l)};
}

CheckResult markov_uniform() {
  const int L = 3;
  const auto all = enumerate_configs(L);
  const std::size_t n = all.size();
  std::map<BellConfig, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[all[i]] = i;
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (int b = 1; b < L; ++b) {
      t[i][index.at(entangle_move(all[i], b))] += 0.5 / (L - 1);
      t[i][index.at(disentangle_move(all[i], b))] += 0.5 / (L - 1);
    }
  }
  double worst = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0;
    for (std::size_t i = 0; i < n; ++i) col += t[i][j];
    worst = std::max(worst, std::abs(col - 1));
  }
  std::vector<double> pi(n, 0.0);
  pi[0] = 1;
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * t[i][j];
    pi = next;
  }
  for (double x : pi) worst = std::max(worst, std::abs(x - 1.0 / n));
  return {"markov-uniform", worst <= 1e-12, "L=3 doubly stochastic, deviation " + fmt(worst)};
}

CheckResult pfaffian_batch(int count) {
  Rng rng(derive_seed(0x5e1f, 3));
  double worst = 0;
  for (int t = 0; t < count; ++t) {
    Eigen::MatrixXd m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = rng.normal();
    m = (m - m.transpose()).eval();
    const double pf = pfaffian(m);
    const double det = m.determinant();
    worst = std::max(worst, std::abs(pf * pf - det) / std::abs(det));
  }
  return {"pfaffian", worst <= 1e-8, std::to_string(count) + " matrices, max relative deviation " + fmt(worst)};
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opts) {
  const bool full = opts.level == SelftestLevel::Full;
  const std::vector<std::function<CheckResult()>> checks = {
      [] { return yang_baxter_batch(1000); },
      [] { return left_right_batch(1000); },
      [full] { return bijection(full ? 8 : 6); },
      [full] { return profile_equality(full ? 8 : 6); },
      [full, &opts] { return dynamics_equivalence(full ? 6 : 5, opts.corrupt_rules); },
      [] { return markov_uniform(); },
      [] { return pfaffian_batch(200); },
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = check();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mgarena
