#pragma once

#include <array>
#include <vector>

#include "mgarena/rng.hpp"

namespace mgarena {

// Perfect matching on Majoranas 1..2L; stabilizer signs are not tracked.
class MajoranaPairing {
 public:
  MajoranaPairing() = default;
  explicit MajoranaPairing(std::vector<int> partner);  // 1-based, partner[i-1] = partner of i

  int L() const { return static_cast<int>(partner_.size()) / 2; }
  int partner(int i) const { return partner_[i - 1]; }
  const std::vector<int>& partners() const { return partner_; }
  bool valid() const;

  bool operator==(const MajoranaPairing&) const = default;

 private:
  friend MajoranaPairing apply_braid(const MajoranaPairing&, int, const std::array<int, 4>&);
  std::vector<int> partner_;
};

// One-line notation over the four slots of a bond: slot s goes to tau[s-1].
using SlotPermutation = std::array<int, 4>;

// All 24 slot permutations in lexicographic order; entry 0 is the identity.
const std::array<SlotPermutation, 24>& slot_permutations();

MajoranaPairing product_state(int L);
MajoranaPairing apply_braid(const MajoranaPairing& state, int bond, const SlotPermutation& tau);
MajoranaPairing random_braid(const MajoranaPairing& state, int bond, Rng& rng);
MajoranaPairing braid_disentangle(const MajoranaPairing& state, int bond);

double braid_entropy_at(const MajoranaPairing& state, int bond);
// Half the number of pairs crossing each bond 1..L-1.
std::vector<double> entropy_profile(const MajoranaPairing& state);

}  // namespace mgarena
