#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgarena/fgs.hpp"
#include "mgarena/matchgate.hpp"

namespace mgarena {

// Diagonal i is (k_i, l_i): gates on bonds k_i .. k_i + l_i - 1.
struct RsfLayout {
  int L = 0;
  std::vector<std::pair<int, int>> diagonals;
  bool operator==(const RsfLayout&) const = default;
};

// Payload used when only the layout matters.
struct LayoutGate {};

template <class G>
struct Diagonal {
  int k = 0;
  std::vector<G> gates;  // gates[j] acts on bond k + j; gates[0] is applied first
  int l() const { return static_cast<int>(gates.size()); }
};

// U = D_1 ... D_n applied to |0...0>; D_n acts first.
template <class G>
struct Circuit {
  int L = 0;
  std::vector<Diagonal<G>> diagonals;

  RsfLayout layout() const;
  int gate_count() const;
};

using RsfCircuit = Circuit<Matchgate>;
using LayoutCircuit = Circuit<LayoutGate>;

bool validate(const RsfLayout& layout);
int max_gate_count(int L);

LayoutCircuit layout_circuit(const RsfLayout& layout);
template <class G>
LayoutCircuit strip_payload(const Circuit<G>& circuit);

// How the moving gate left the circuit during one absorption.
enum class AbsorbEnd {
  NewDiagonal,  // became a diagonal of its own
  Append,       // attached after the last gate of a diagonal
  Fuse,         // merged into the last gate of a diagonal
  LeftFuse,     // q = k with no diagonal starting at k+2: merged into the second gate
  PairFuse,     // q = k with a diagonal at k+2 that is too short to swap lengths
  PairSwap,     // q = k, the two diagonals exchange lengths and gain a gate
  LeftExtend,   // diagonal grows one bond to the left
  Vanished,     // moving gate became the identity
};

struct AbsorbTrace {
  AbsorbEnd end = AbsorbEnd::NewDiagonal;
  int diagonal = -1;  // index of the diagonal where the gate ended
  // Yang-Baxter passes through the interior of a diagonal: (diagonal, bond before the move).
  std::vector<std::pair<int, int>> passes;
};

// Applies `gate` at `bond` after the circuit and restores right standard form.
template <class G>
AbsorbTrace absorb(Circuit<G>& circuit, const G& gate, int bond);

// Finds A and V with U|0> = A_bond V|0> where V has one gate less.
// Returns (A^dag, V), so absorbing A^dag's adjoint back into V restores U.
template <class G>
std::optional<std::pair<G, Circuit<G>>> disentangle_gate(const Circuit<G>& circuit, int bond);

CovarianceMatrix evaluate_covariance(const RsfCircuit& circuit);
std::vector<int> renyi0_profile_from_layout(const RsfLayout& layout);

// Gates in the order they act on the state: (bond, gate).
template <class G>
std::vector<std::pair<int, G>> time_ordered_gates(const Circuit<G>& circuit);

void write_rsf(std::ostream& out, const RsfCircuit& circuit);
RsfCircuit read_rsf(std::istream& in);
// Layout-only text: header and diagonal lines, no gate lines.
void write_rsf_layout(std::ostream& out, const RsfLayout& layout);
RsfLayout read_rsf_layout(std::istream& in);

}  // namespace mgarena
