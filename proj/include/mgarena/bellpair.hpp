#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <vector>

#include "mgarena/rsf.hpp"

namespace mgarena {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Qubits 1..L, each free (partner 0) or in a Bell pair.
class BellConfig {
 public:
  BellConfig() = default;
  explicit BellConfig(int L) : partner_(static_cast<std::size_t>(L), 0) {}
  explicit BellConfig(std::vector<int> partner);  // partner[q-1], 0 = free

  static BellConfig from_pairs(int L, const std::vector<std::pair<int, int>>& pairs);

  int L() const { return static_cast<int>(partner_.size()); }
  int partner(int q) const { return partner_[q - 1]; }
  const std::vector<int>& partners() const { return partner_; }
  bool valid() const;

  void pair(int a, int b) {
    partner_[a - 1] = b;
    partner_[b - 1] = a;
  }
  void free(int q) { partner_[q - 1] = 0; }
  // Exchanges the roles of qubits q and q+1 (a SWAP gate on the bond).
  void swap_bond(int q);

  bool operator==(const BellConfig&) const = default;
  bool operator<(const BellConfig& o) const { return partner_ < o.partner_; }

 private:
  std::vector<int> partner_;
};

int entropy_at(const BellConfig& config, int m);
// Entropy at bonds 1..L-1.
std::vector<int> bell_profile(const BellConfig& config);

BellConfig entangle_move(const BellConfig& config, int bond);
BellConfig disentangle_move(const BellConfig& config, int bond);
// In-place versions used by the game loop.
void entangle_in_place(BellConfig& config, int bond);
void disentangle_in_place(BellConfig& config, int bond);

RsfLayout bell_to_rsf_layout(const BellConfig& config);
BellConfig rsf_layout_to_bell(const RsfLayout& layout);

BigInt telephone(int L);
BigRational mean_critical_profile_exact(int L, int m);
double mean_critical_profile(int L, int m);

std::vector<BellConfig> enumerate_configs(int L);

void write_bell(std::ostream& out, const BellConfig& config);
BellConfig read_bell(std::istream& in);

}  // namespace mgarena
