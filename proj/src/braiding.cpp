#include "mgarena/braiding.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mgarena/error.hpp"

namespace mgarena {

namespace {

void check_bond(int L, int bond) {
  if (bond < 1 || bond > L - 1) throw Error(ErrorCode::BondOutOfRange, "bond " + std::to_string(bond));
}

}  // namespace

MajoranaPairing::MajoranaPairing(std::vector<int> partner) : partner_(std::move(partner)) {
  if (!valid()) throw Error(ErrorCode::RangeError, "partner map is not a fixed-point-free involution");
}

bool MajoranaPairing::valid() const {
  const int n = static_cast<int>(partner_.size());
  if (n % 2 != 0) return false;
  for (int i = 1; i <= n; ++i) {
    const int p = partner_[i - 1];
    if (p < 1 || p > n || p == i || partner_[p - 1] != i) return false;
  }
  return true;
}

const std::array<SlotPermutation, 24>& slot_permutations() {
  static const std::array<SlotPermutation, 24> perms = [] {
    std::array<SlotPermutation, 24> out{};
    SlotPermutation p = {1, 2, 3, 4};
    for (auto& slot : out) {
      slot = p;
      std::next_permutation(p.begin(), p.end());
    }
    return out;
  }();
  return perms;
}

MajoranaPairing product_state(int L) {
  if (L < 1) throw Error(ErrorCode::RangeError, "L must be positive");
  std::vector<int> p(2 * static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    p[2 * k] = 2 * k + 2;
    p[2 * k + 1] = 2 * k + 1;
  }
  return MajoranaPairing(std::move(p));
}

MajoranaPairing apply_braid(const MajoranaPairing& state, int bond, const SlotPermutation& tau) {
  check_bond(state.L(), bond);
  const int base = 2 * bond - 2;  // Majorana index of slot 1, minus one
  auto relabel = [&](int i) { return i > base && i <= base + 4 ? base + tau[i - base - 1] : i; };
  MajoranaPairing out = state;
  for (int s = 1; s <= 4; ++s) {
    const int i = base + s;
    const int p = state.partner(i);
    out.partner_[relabel(i) - 1] = relabel(p);
    out.partner_[relabel(p) - 1] = relabel(i);
  }
  return out;
}

MajoranaPairing random_braid(const MajoranaPairing& state, int bond, Rng& rng) {
  check_bond(state.L(), bond);
  return apply_braid(state, bond, slot_permutations()[rng.below(24)]);
}

MajoranaPairing braid_disentangle(const MajoranaPairing& state, int bond) {
  check_bond(state.L(), bond);
  const int base = 2 * bond - 2;
  const int cut = 2 * bond;
  // Only pairs touching the four slots change; score those.
  auto score = [&](const SlotPermutation& tau) {
    auto relabel = [&](int i) { return i > base && i <= base + 4 ? base + tau[i - base - 1] : i; };
    int crossing = 0, distance = 0;
    for (int s = 1; s <= 4; ++s) {
      const int i = base + s;
      const int p = state.partner(i);
      const bool both_slots = p > base && p <= base + 4;
      if (both_slots && p < i) continue;  // counted once from the smaller slot
      const int a = std::min(relabel(i), relabel(p));
      const int b = std::max(relabel(i), relabel(p));
      crossing += a <= cut && b > cut;
      distance += b - a;
    }
    return std::pair(crossing, distance);
  };
  const auto& perms = slot_permutations();
  std::size_t best = 0;
  auto best_score = score(perms[0]);
  for (std::size_t k = 1; k < perms.size(); ++k) {
    const auto sc = score(perms[k]);
    if (sc < best_score) {
      best = k;
      best_score = sc;
    }
  }
  return best == 0 ? state : apply_braid(state, bond, perms[best]);
}

double braid_entropy_at(const MajoranaPairing& state, int bond) {
  const int cut = 2 * bond;
  int crossing = 0;
  for (int i = 1; i <= cut; ++i) crossing += state.partner(i) > cut;
  return crossing / 2.0;
}

std::vector<double> entropy_profile(const MajoranaPairing& state) {
  const int L = state.L();
  std::vector<int> diff(static_cast<std::size_t>(L) + 1, 0);
  for (int a = 1; a <= 2 * L; ++a) {
    const int b = state.partner(a);
    if (b < a) continue;
    // Bonds m with a <= 2m < b.
    const int lo = (a + 1) / 2;
    const int hi = (b - 1) / 2;
    if (lo <= hi) {
      diff[lo] += 1;
      diff[hi + 1] -= 1;
    }
  }
  std::vector<double> out;
  int running = 0;
  for (int m = 1; m < L; ++m) {
    running += diff[m];
    out.push_back(running / 2.0);
  }
  return out;
}

}  // namespace mgarena
