#include "mgarena/bellpair.hpp"

#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

namespace mgarena {

namespace {

void check_bond(int L, int bond) {
  if (bond < 1 || bond > L - 1) throw Error(ErrorCode::BondOutOfRange, "bond " + std::to_string(bond));
}

}  // namespace

BellConfig::BellConfig(std::vector<int> partner) : partner_(std::move(partner)) {
  if (!valid()) throw Error(ErrorCode::RangeError, "partner map is not an involution");
}

BellConfig BellConfig::from_pairs(int L, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> p(static_cast<std::size_t>(L), 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > L || b > L || a == b || p[a - 1] || p[b - 1]) {
      throw Error(ErrorCode::RangeError, "invalid pair list");
    }
    p[a - 1] = b;
    p[b - 1] = a;
  }
  return BellConfig(std::move(p));
}

bool BellConfig::valid() const {
  const int n = L();
  for (int q = 1; q <= n; ++q) {
    const int p = partner_[q - 1];
    if (p == 0) continue;
    if (p < 1 || p > n || p == q || partner_[p - 1] != q) return false;
  }
  return true;
}

void BellConfig::swap_bond(int q) {
  const int a = partner_[q - 1];
  const int b = partner_[q];
  if (a == q + 1) return;  // the pair {q, q+1} is symmetric
  if (a) partner_[a - 1] = q + 1;
  if (b) partner_[b - 1] = q;
  partner_[q - 1] = b;
  partner_[q] = a;
}

int entropy_at(const BellConfig& config, int m) {
  int n = 0;
  for (int q = 1; q <= m; ++q) n += config.partner(q) > m;
  return n;
}

std::vector<int> bell_profile(const BellConfig& config) {
  std::vector<int> out;
  int running = 0;
  for (int m = 1; m < config.L(); ++m) {
    const int p = config.partner(m);
    if (p > m) ++running;
    if (p != 0 && p < m) --running;
    out.push_back(running);
  }
  return out;
}

void entangle_in_place(BellConfig& c, int b) {
  check_bond(c.L(), b);
  const int p1 = c.partner(b);
  const int p2 = c.partner(b + 1);
  const bool left1 = p1 != 0 && p1 < b, right1 = p1 > b + 1;
  const bool left2 = p2 != 0 && p2 < b, right2 = p2 > b + 1;
  if (p1 == 0 && p2 == 0) {
    c.pair(b, b + 1);
  } else if (p1 == 0 && right2) {
    c.free(b + 1);
    c.pair(b, p2);
  } else if (left1 && p2 == 0) {
    c.free(b);
    c.pair(p1, b + 1);
  } else if (left1 && right2) {
    c.pair(p1, b + 1);
    c.pair(b, p2);
  } else if (right1 && right2 && p2 > p1) {
    c.pair(b, p2);
    c.pair(b + 1, p1);
  } else if (left1 && left2 && p1 < p2) {
    c.pair(p1, b + 1);
    c.pair(p2, b);
  }
}

void disentangle_in_place(BellConfig& c, int b) {
  check_bond(c.L(), b);
  const int p1 = c.partner(b);
  const int p2 = c.partner(b + 1);
  const bool left1 = p1 != 0 && p1 < b, right1 = p1 > b + 1;
  const bool left2 = p2 != 0 && p2 < b, right2 = p2 > b + 1;
  if (p1 == b + 1) {
    c.free(b);
    c.free(b + 1);
  } else if (right1 && p2 == 0) {
    c.free(b);
    c.pair(b + 1, p1);
  } else if (p1 == 0 && left2) {
    c.free(b + 1);
    c.pair(p2, b);
  } else if (right1 && left2) {
    c.pair(p2, b);
    c.pair(b + 1, p1);
  } else if (right1 && right2 && p1 > p2) {
    c.pair(b, p2);
    c.pair(b + 1, p1);
  } else if (left1 && left2 && p2 < p1) {
    c.pair(p1, b + 1);
    c.pair(p2, b);
  }
}

BellConfig entangle_move(const BellConfig& config, int bond) {
  BellConfig c = config;
  entangle_in_place(c, bond);
  return c;
}

BellConfig disentangle_move(const BellConfig& config, int bond) {
  BellConfig c = config;
  disentangle_in_place(c, bond);
  return c;
}

RsfLayout bell_to_rsf_layout(const BellConfig& config) {
  RsfLayout layout{config.L(), {}};
  BellConfig c = config;
  int k = 1;
  while (k <= c.L()) {
    const int p = c.partner(k);
    if (p == 0) {
      ++k;
      continue;
    }
    // Lower partners were consumed already, so p > k.
    layout.diagonals.emplace_back(k, p - k);
    for (int q = p - 1; q >= k + 1; --q) c.swap_bond(q);
    k += 2;
  }
  return layout;
}

BellConfig rsf_layout_to_bell(const RsfLayout& layout) {
  if (!validate(layout)) throw Error(ErrorCode::RangeError, "invalid layout");
  BellConfig c(layout.L);
  for (auto it = layout.diagonals.rbegin(); it != layout.diagonals.rend(); ++it) {
    const auto [k, l] = *it;
    c.pair(k, k + 1);
    for (int q = k + 1; q < k + l; ++q) c.swap_bond(q);
  }
  return c;
}

BigInt telephone(int L) {
  if (L < 0) throw Error(ErrorCode::RangeError, "negative size");
  BigInt prev = 1, cur = 1;  // T(0), T(1)
  for (int n = 1; n < L; ++n) {
    BigInt next = n * prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigRational mean_critical_profile_exact(int L, int m) {
  if (m < 0 || m > L) throw Error(ErrorCode::RangeError, "bond outside 0..L");
  if (m == 0 || m == L) return 0;
  return BigRational(BigInt(m) * (L - m) * telephone(L - 2), telephone(L));
}

double mean_critical_profile(int L, int m) { return mean_critical_profile_exact(L, m).convert_to<double>(); }

std::vector<BellConfig> enumerate_configs(int L) {
  if (L > 12) throw Error(ErrorCode::TooLarge, "enumeration is limited to L <= 12");
  if (L < 0) throw Error(ErrorCode::RangeError, "negative size");
  std::vector<BellConfig> out;
  BellConfig c(L);
  auto rec = [&](auto&& self, int q) -> void {
    while (q <= L && c.partner(q) != 0) ++q;
    if (q > L) {
      out.push_back(c);
      return;
    }
    self(self, q + 1);  // q stays free
    for (int r = q + 1; r <= L; ++r) {
      if (c.partner(r) != 0) continue;
      c.pair(q, r);
      self(self, q + 1);
      c.free(q);
      c.free(r);
    }
  };
  rec(rec, 1);
  return out;
}

void write_bell(std::ostream& out, const BellConfig& config) {
  out << "BELL L=" << config.L() << '\n';
  for (int q = 1; q <= config.L(); ++q) out << (q > 1 ? " " : "") << config.partner(q);
  out << '\n';
}

BellConfig read_bell(std::istream& in) {
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  int L = -1;
  if (std::sscanf(header.c_str(), "BELL L=%d", &L) != 1 || L < 0) {
    throw Error(ErrorCode::ParseError, "missing 'BELL L=<int>' header");
  }
  std::vector<int> p;
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream body(rest);
  int x = 0;
  while (body >> x) p.push_back(x);
  if (!body.eof()) throw Error(ErrorCode::ParseError, "partner list must be integers");
  if (static_cast<int>(p.size()) != L) throw Error(ErrorCode::ParseError, "expected L partner entries");
  for (int v : p)
    if (v < 0 || v > L) throw Error(ErrorCode::ParseError, "partner index out of range");
  try {
    return BellConfig(std::move(p));
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "partner list is not an involution");
  }
}

}  // namespace mgarena
