#include "mgarena/rsf.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace mgarena {

namespace {

template <class G>
struct GateOps;

template <>
struct GateOps<Matchgate> {
  static std::array<Matchgate, 3> yb(const Matchgate& a, const Matchgate& b, const Matchgate& c, Direction d) {
    return yang_baxter(a, b, c, d);
  }
  static std::array<Matchgate, 2> lr(const Matchgate& a, const Matchgate& b, Direction d) {
    return left_right(a, b, d);
  }
  static Matchgate fuse(const Matchgate& g1, const Matchgate& g2) { return mgarena::fuse(g1, g2); }
  static bool trivial(const Matchgate& g) { return is_identity(g); }
  static Matchgate adjoint(const Matchgate& g) { return g.adjoint(); }
};

template <>
struct GateOps<LayoutGate> {
  static std::array<LayoutGate, 3> yb(LayoutGate, LayoutGate, LayoutGate, Direction) { return {}; }
  static std::array<LayoutGate, 2> lr(LayoutGate, LayoutGate, Direction) { return {}; }
  static LayoutGate fuse(LayoutGate, LayoutGate) { return {}; }
  static bool trivial(LayoutGate) { return false; }
  static LayoutGate adjoint(LayoutGate) { return {}; }
};

constexpr Direction kLtoR = Direction::LeftToRight;
constexpr Direction kRtoL = Direction::RightToLeft;

template <class G>
void rebuild(Circuit<G>& circuit) {
  const auto gates = time_ordered_gates(circuit);
  circuit.diagonals.clear();
  for (const auto& [bond, g] : gates)
    if (!GateOps<G>::trivial(g)) absorb(circuit, g, bond);
}

// Drops an identity produced by a fusion at gates[j]; the layout only stays
// valid without a rebuild when it was the last gate of its diagonal.
template <class G>
bool drop_if_trivial(Circuit<G>& circuit, std::size_t i, std::size_t j) {
  auto& d = circuit.diagonals[i];
  if (!GateOps<G>::trivial(d.gates[j])) return false;
  if (j + 1 == d.gates.size()) {
    d.gates.pop_back();
    if (d.gates.empty()) circuit.diagonals.erase(circuit.diagonals.begin() + static_cast<long>(i));
  } else {
    rebuild(circuit);
  }
  return true;
}

template <class G>
AbsorbTrace absorb_impl(Circuit<G>& circuit, G a, int q) {
  using Ops = GateOps<G>;
  AbsorbTrace trace;
  auto& ds = circuit.diagonals;
  if (Ops::trivial(a)) {
    trace.end = AbsorbEnd::Vanished;
    return trace;
  }
  std::size_t i = 0;
  while (true) {
    trace.diagonal = static_cast<int>(i);
    if (i == ds.size()) {
      ds.push_back({q, {a}});
      trace.end = AbsorbEnd::NewDiagonal;
      return trace;
    }
    auto& d = ds[i];
    const int k = d.k;
    const int l = d.l();
    if (q >= k + l + 1) {
      ++i;
      continue;
    }
    if (q == k + l) {
      d.gates.push_back(a);
      trace.end = AbsorbEnd::Append;
      return trace;
    }
    if (q == k + l - 1) {
      d.gates.back() = Ops::fuse(d.gates.back(), a);
      trace.end = AbsorbEnd::Fuse;
      drop_if_trivial(circuit, i, d.gates.size() - 1);
      return trace;
    }
    if (q > k) {
      const auto j = static_cast<std::size_t>(q - k);
      const auto o = Ops::yb(a, d.gates[j + 1], d.gates[j], kLtoR);
      d.gates[j] = o[1];
      d.gates[j + 1] = o[0];
      a = o[2];
      trace.passes.emplace_back(static_cast<int>(i), q);
      ++q;
      ++i;
      if (Ops::trivial(a)) {
        trace.end = AbsorbEnd::Vanished;
        return trace;
      }
      continue;
    }
    if (q == k) {
      // l >= 2 here; the gate passes the first two gates and lands on bond k+1.
      auto o = Ops::yb(a, d.gates[1], d.gates[0], kLtoR);
      d.gates[0] = o[1];
      d.gates[1] = o[0];
      a = o[2];
      if (Ops::trivial(a)) {
        trace.end = AbsorbEnd::Vanished;
        return trace;
      }
      const bool paired = i + 1 < ds.size() && ds[i + 1].k == k + 2;
      if (!paired) {
        const auto w = Ops::lr(d.gates[0], a, kLtoR);
        d.gates[0] = w[1];
        d.gates[1] = Ops::fuse(w[0], d.gates[1]);
        trace.end = AbsorbEnd::LeftFuse;
        drop_if_trivial(circuit, i, 1);
        return trace;
      }
      auto& d2 = ds[i + 1];
      const auto x = Ops::lr(a, d2.gates[0], kLtoR);
      d2.gates[0] = x[0];
      a = x[1];
      if (Ops::trivial(a)) {
        trace.end = AbsorbEnd::Vanished;
        return trace;
      }
      const auto pq = Ops::lr(d.gates[0], a, kLtoR);
      d.gates[0] = pq[1];
      a = pq[0];
      if (Ops::trivial(a)) {
        trace.end = AbsorbEnd::Vanished;
        return trace;
      }
      const std::size_t l1 = d.gates.size();
      const std::size_t l2 = d2.gates.size();
      for (std::size_t j = 1;; ++j) {
        if (j < l1 && j - 1 < l2) {
          const auto y = Ops::yb(d.gates[j], d2.gates[j - 1], a, kLtoR);
          a = y[0];
          d.gates[j] = y[1];
          d2.gates[j - 1] = y[2];
          if (Ops::trivial(a)) {
            trace.end = AbsorbEnd::Vanished;
            return trace;
          }
        } else if (j < l1) {
          d.gates[j] = Ops::fuse(a, d.gates[j]);
          trace.end = AbsorbEnd::PairFuse;
          drop_if_trivial(circuit, i, j);
          return trace;
        } else {
          // The first diagonal takes over the tail of the second one.
          std::vector<G> first = std::move(d.gates);
          first.push_back(a);
          first.insert(first.end(), d2.gates.begin() + static_cast<long>(l1 - 1), d2.gates.end());
          d2.gates.resize(l1 - 1);
          d.gates = std::move(first);
          trace.end = AbsorbEnd::PairSwap;
          return trace;
        }
      }
    }
    if (q == k - 1) {
      const auto v = Ops::lr(a, d.gates[0], kLtoR);
      d.k = k - 1;
      d.gates[0] = v[0];
      d.gates.insert(d.gates.begin(), v[1]);
      trace.end = AbsorbEnd::LeftExtend;
      return trace;
    }
    ds.insert(ds.begin() + static_cast<long>(i), Diagonal<G>{q, {a}});
    trace.end = AbsorbEnd::NewDiagonal;
    return trace;
  }
}

void check_bond(int L, int bond) {
  if (bond < 1 || bond > L - 1) throw Error(ErrorCode::BondOutOfRange, "bond " + std::to_string(bond));
}

}  // namespace

template <class G>
RsfLayout Circuit<G>::layout() const {
  RsfLayout out{L, {}};
  for (const auto& d : diagonals) out.diagonals.emplace_back(d.k, d.l());
  return out;
}

template <class G>
int Circuit<G>::gate_count() const {
  int n = 0;
  for (const auto& d : diagonals) n += d.l();
  return n;
}

bool validate(const RsfLayout& layout) {
  const int L = layout.L;
  if (L < 1) return false;
  if (static_cast<int>(layout.diagonals.size()) > L / 2) return false;
  long total = 0;
  for (std::size_t i = 0; i < layout.diagonals.size(); ++i) {
    const auto [k, l] = layout.diagonals[i];
    if (k < 1 || k > L - 1 || l < 1 || l > L - k) return false;
    if (i + 1 < layout.diagonals.size() && layout.diagonals[i + 1].first < k + 2) return false;
    total += l;
  }
  return total <= max_gate_count(L);
}

int max_gate_count(int L) { return L * L / 4; }

LayoutCircuit layout_circuit(const RsfLayout& layout) {
  LayoutCircuit c;
  c.L = layout.L;
  for (const auto& [k, l] : layout.diagonals) c.diagonals.push_back({k, std::vector<LayoutGate>(l)});
  return c;
}

template <class G>
LayoutCircuit strip_payload(const Circuit<G>& circuit) {
  return layout_circuit(circuit.layout());
}

template <class G>
std::vector<std::pair<int, G>> time_ordered_gates(const Circuit<G>& circuit) {
  std::vector<std::pair<int, G>> out;
  for (auto it = circuit.diagonals.rbegin(); it != circuit.diagonals.rend(); ++it)
    for (int j = 0; j < it->l(); ++j) out.emplace_back(it->k + j, it->gates[j]);
  return out;
}

template <class G>
AbsorbTrace absorb(Circuit<G>& circuit, const G& gate, int bond) {
  check_bond(circuit.L, bond);
  return absorb_impl(circuit, gate, bond);
}

template <class G>
std::optional<std::pair<G, Circuit<G>>> disentangle_gate(const Circuit<G>& circuit, int bond) {
  using Ops = GateOps<G>;
  check_bond(circuit.L, bond);
  // Follow an auxiliary gate through the layout to find the target gate.
  LayoutCircuit probe = strip_payload(circuit);
  const AbsorbTrace trace = absorb_impl(probe, LayoutGate{}, bond);
  Circuit<G> v = circuit;
  auto& ds = v.diagonals;
  const auto i = static_cast<std::size_t>(trace.diagonal);
  G m{};
  switch (trace.end) {
    case AbsorbEnd::Fuse: {
      auto& d = ds[i];
      m = d.gates.back();
      d.gates.pop_back();
      if (d.gates.empty()) ds.erase(ds.begin() + static_cast<long>(i));
      break;
    }
    case AbsorbEnd::LeftFuse: {
      // Undo a left extension: the first gate of the diagonal moves out at bond k.
      auto& d = ds[i];
      const auto x = Ops::lr(d.gates[1], d.gates[0], kRtoL);
      m = x[0];
      d.gates.erase(d.gates.begin());
      d.gates[0] = x[1];
      d.k += 1;
      break;
    }
    case AbsorbEnd::PairFuse: {
      // Undo a length exchange between diagonals i and i+1.
      auto& d = ds[i];
      auto& d2 = ds[i + 1];
      const std::size_t l1 = d2.gates.size() + 1;
      m = d.gates[l1];
      d2.gates.insert(d2.gates.end(), d.gates.begin() + static_cast<long>(l1 + 1), d.gates.end());
      d.gates.resize(l1);
      for (std::size_t j = l1 - 1; j >= 1; --j) {
        const auto y = Ops::yb(m, d.gates[j], d2.gates[j - 1], kRtoL);
        d.gates[j] = y[0];
        d2.gates[j - 1] = y[1];
        m = y[2];
      }
      const auto pq = Ops::lr(m, d.gates[0], kRtoL);
      d.gates[0] = pq[0];
      m = pq[1];
      const auto x = Ops::lr(d2.gates[0], m, kRtoL);
      m = x[0];
      d2.gates[0] = x[1];
      const auto o = Ops::yb(d.gates[1], d.gates[0], m, kRtoL);
      m = o[0];
      d.gates[1] = o[1];
      d.gates[0] = o[2];
      break;
    }
    default:
      return std::nullopt;
  }
  for (auto it = trace.passes.rbegin(); it != trace.passes.rend(); ++it) {
    auto& d = ds[static_cast<std::size_t>(it->first)];
    const auto j = static_cast<std::size_t>(it->second - d.k);
    const auto o = Ops::yb(d.gates[j + 1], d.gates[j], m, kRtoL);
    m = o[0];
    d.gates[j + 1] = o[1];
    d.gates[j] = o[2];
  }
  return std::make_pair(Ops::adjoint(m), std::move(v));
}

CovarianceMatrix evaluate_covariance(const RsfCircuit& circuit) {
  CovarianceMatrix cov = vacuum_covariance(circuit.L);
  for (auto it = circuit.diagonals.rbegin(); it != circuit.diagonals.rend(); ++it)
    for (int j = 0; j < it->l(); ++j) apply_gate(cov, it->k + j, it->gates[j].r());
  return cov;
}

std::vector<int> renyi0_profile_from_layout(const RsfLayout& layout) {
  // s[m] for m = 0..L with fixed zero boundaries.
  std::vector<int> s(static_cast<std::size_t>(layout.L) + 1, 0);
  for (auto it = layout.diagonals.rbegin(); it != layout.diagonals.rend(); ++it)
    for (int m = it->first; m < it->first + it->second; ++m) s[m] = 1 + std::min(s[m - 1], s[m + 1]);
  return std::vector<int>(s.begin() + 1, s.end() - 1);
}

void write_rsf_layout(std::ostream& out, const RsfLayout& layout) {
  out << "RSF L=" << layout.L << '\n';
  for (const auto& [k, l] : layout.diagonals) out << "k=" << k << " l=" << l << '\n';
}

void write_rsf(std::ostream& out, const RsfCircuit& circuit) {
  write_rsf_layout(out, circuit.layout());
  char buf[64];
  for (const auto& d : circuit.diagonals) {
    for (const auto& g : d.gates) {
      std::string line;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          for (double x : {g.u()(r, c).real(), g.u()(r, c).imag()}) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            if (!line.empty()) line += ' ';
            line += buf;
          }
        }
      }
      out << line << '\n';
    }
  }
}

namespace {

std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

RsfLayout parse_layout(const std::vector<std::string>& lines, std::size_t& pos) {
  RsfLayout layout;
  if (lines.empty() || std::sscanf(lines[0].c_str(), "RSF L=%d", &layout.L) != 1) {
    throw Error(ErrorCode::ParseError, "missing 'RSF L=<int>' header");
  }
  pos = 1;
  int k = 0, l = 0;
  while (pos < lines.size() && std::sscanf(lines[pos].c_str(), "k=%d l=%d", &k, &l) == 2) {
    layout.diagonals.emplace_back(k, l);
    ++pos;
  }
  if (!validate(layout)) throw Error(ErrorCode::ParseError, "layout violates right standard form");
  return layout;
}

}  // namespace

RsfLayout read_rsf_layout(std::istream& in) {
  const auto lines = content_lines(in);
  std::size_t pos = 0;
  return parse_layout(lines, pos);
}

RsfCircuit read_rsf(std::istream& in) {
  const auto lines = content_lines(in);
  std::size_t pos = 0;
  const RsfLayout layout = parse_layout(lines, pos);
  RsfCircuit c;
  c.L = layout.L;
  for (const auto& [k, l] : layout.diagonals) {
    Diagonal<Matchgate> d{k, {}};
    for (int j = 0; j < l; ++j, ++pos) {
      if (pos >= lines.size()) throw Error(ErrorCode::ParseError, "missing gate line");
      std::istringstream row(lines[pos]);
      Mat4c u;
      for (int r = 0; r < 4; ++r) {
        for (int cc = 0; cc < 4; ++cc) {
          double re = 0, im = 0;
          if (!(row >> re >> im)) throw Error(ErrorCode::ParseError, "gate line needs 32 numbers");
          u(r, cc) = cd(re, im);
        }
      }
      d.gates.push_back(Matchgate::from_unitary(u));
    }
    c.diagonals.push_back(std::move(d));
  }
  if (pos != lines.size()) throw Error(ErrorCode::ParseError, "trailing content after gates");
  return c;
}

template struct Circuit<Matchgate>;
template struct Circuit<LayoutGate>;
template LayoutCircuit strip_payload(const Circuit<Matchgate>&);
template LayoutCircuit strip_payload(const Circuit<LayoutGate>&);
template std::vector<std::pair<int, Matchgate>> time_ordered_gates(const Circuit<Matchgate>&);
template std::vector<std::pair<int, LayoutGate>> time_ordered_gates(const Circuit<LayoutGate>&);
template AbsorbTrace absorb(Circuit<Matchgate>&, const Matchgate&, int);
template AbsorbTrace absorb(Circuit<LayoutGate>&, const LayoutGate&, int);
template std::optional<std::pair<Matchgate, Circuit<Matchgate>>> disentangle_gate(const Circuit<Matchgate>&, int);
template std::optional<std::pair<LayoutGate, Circuit<LayoutGate>>> disentangle_gate(const Circuit<LayoutGate>&,
                                                                                     int);

}  // namespace mgarena
