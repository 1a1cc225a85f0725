#pragma once

// Dense state-vector reference used by the tests. Qubit 1 is the most
// significant bit of the basis index.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <vector>

#include "mgarena/matchgate.hpp"

namespace oracle {

using cd = std::complex<double>;
using State = Eigen::VectorXcd;

inline State zero_state(int n) {
  State s = State::Zero(Eigen::Index(1) << n);
  s(0) = 1.0;
  return s;
}

// Applies a 4x4 gate to qubits (bond, bond+1), bonds counted from 1.
inline void apply(State& s, int n, int bond, const Eigen::Matrix4cd& u) {
  const int hi = n - bond;  // bit position of qubit `bond`
  const Eigen::Index stride_hi = Eigen::Index(1) << hi;
  const Eigen::Index stride_lo = Eigen::Index(1) << (hi - 1);
  for (Eigen::Index base = 0; base < s.size(); ++base) {
    if (base & (stride_hi | stride_lo)) continue;
    const Eigen::Index idx[4] = {base, base | stride_lo, base | stride_hi, base | stride_hi | stride_lo};
    cd in[4], out[4];
    for (int k = 0; k < 4; ++k) in[k] = s(idx[k]);
    for (int r = 0; r < 4; ++r) {
      out[r] = 0;
      for (int c = 0; c < 4; ++c) out[r] += u(r, c) * in[c];
    }
    for (int k = 0; k < 4; ++k) s(idx[k]) = out[k];
  }
}

inline double fidelity(const State& a, const State& b) { return std::norm(a.dot(b)); }

// Schmidt coefficients squared across the cut after qubit m.
inline Eigen::VectorXd schmidt_probs(const State& s, int n, int m) {
  const Eigen::Index rows = Eigen::Index(1) << m;
  const Eigen::Index cols = Eigen::Index(1) << (n - m);
  Eigen::MatrixXcd mat(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = s(r * cols + c);
  Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(mat).singularValues();
  return sv.array().square();
}

inline double renyi(const Eigen::VectorXd& probs, double order) {
  if (order == 0.0) {
    int rank = 0;
    for (double p : probs) rank += p > 1e-12;
    return std::log2(static_cast<double>(rank));
  }
  if (order == 1.0) {
    double h = 0;
    for (double p : probs)
      if (p > 1e-300) h -= p * std::log2(p);
    return h;
  }
  double acc = 0;
  for (double p : probs) acc += std::pow(p, order);
  return std::log2(acc) / (1.0 - order);
}

// Majorana operators on n qubits (Jordan-Wigner): gamma_{2k-1} = Z..Z X_k, gamma_{2k} = Z..Z Y_k.
inline Eigen::MatrixXcd majorana(int n, int index) {
  const int q = (index - 1) / 2;
  Eigen::Matrix2cd x, y, z, id;
  x << 0, 1, 1, 0;
  y << 0, cd(0, -1), cd(0, 1), 0;
  z << 1, 0, 0, -1;
  id.setIdentity();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const Eigen::Matrix2cd& f = k < q ? z : (k == q ? ((index % 2) ? x : y) : id);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) next(2 * i + a, 2 * j + b) = out(i, j) * f(a, b);
    out = next;
  }
  return out;
}

}  // namespace oracle
