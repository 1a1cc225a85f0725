#include "doctest.h"
#include <cmath>

#include "mgarena/braiding.hpp"
#include "mgarena/error.hpp"

using namespace mgarena;

namespace {

MajoranaPairing from_pairs(int L, std::vector<std::pair<int, int>> pairs) {
  std::vector<int> p(2 * static_cast<std::size_t>(L));
  for (auto [a, b] : pairs) {
    p[a - 1] = b;
    p[b - 1] = a;
  }
  return MajoranaPairing(p);
}

}  // namespace

TEST_CASE("product state and profile") {
  CHECK(product_state(2) == from_pairs(2, {{1, 2}, {3, 4}}));
  for (double s : entropy_profile(product_state(6))) CHECK(s == 0.0);
  const auto crossed = from_pairs(2, {{2, 3}, {1, 4}});
  CHECK(entropy_profile(crossed) == std::vector<double>{1.0});
  CHECK(braid_entropy_at(crossed, 1) == 1.0);
  CHECK_THROWS_AS(MajoranaPairing(std::vector<int>{1, 2}), Error);
}

TEST_CASE("slot permutations") {
  const auto& perms = slot_permutations();
  CHECK(perms[0] == SlotPermutation{1, 2, 3, 4});
  CHECK(perms[23] == SlotPermutation{4, 3, 2, 1});
  // (1,2),(3,4) -> (2,3),(1,4): slots 1 and 3 exchange.
  CHECK(apply_braid(product_state(2), 1, {3, 2, 1, 4}) == from_pairs(2, {{2, 3}, {1, 4}}));
  CHECK(apply_braid(product_state(3), 2, perms[0]) == product_state(3));
  CHECK_THROWS_AS(apply_braid(product_state(3), 3, perms[0]), Error);
}

TEST_CASE("random braids keep a valid pairing") {
  Rng rng(5);
  MajoranaPairing s = product_state(10);
  for (int i = 0; i < 5000; ++i) {
    s = random_braid(s, 1 + static_cast<int>(rng.below(9)), rng);
    CHECK(s.valid());
  }
  const auto prof = entropy_profile(s);
  for (int m = 1; m < 10; ++m) {
    CHECK(prof[m - 1] == braid_entropy_at(s, m));
    CHECK(prof[m - 1] <= std::min(m, 10 - m));
    CHECK(prof[m - 1] * 2 == std::floor(prof[m - 1] * 2));
  }
}

TEST_CASE("braid disentangler") {
  const auto s = from_pairs(3, {{1, 4}, {2, 3}, {5, 6}});
  CHECK(braid_entropy_at(s, 1) == 1.0);
  const auto d = braid_disentangle(s, 1);
  CHECK(d == product_state(3));
  for (int b = 1; b < 4; ++b) CHECK(braid_disentangle(product_state(4), b) == product_state(4));
  // Every single braid on a product state is undone at the same bond.
  for (const auto& tau : slot_permutations()) {
    const auto scrambled = apply_braid(product_state(4), 2, tau);
    CHECK(braid_entropy_at(braid_disentangle(scrambled, 2), 2) == 0.0);
  }
  Rng rng(9);
  MajoranaPairing x = product_state(8);
  for (int i = 0; i < 2000; ++i) {
    const int b = 1 + static_cast<int>(rng.below(7));
    x = random_braid(x, b, rng);
    const auto y = braid_disentangle(x, b);
    CHECK(braid_entropy_at(y, b) <= braid_entropy_at(x, b));
    CHECK(y.valid());
  }
}
