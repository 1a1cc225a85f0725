#include "mgarena/fgs.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>

namespace mgarena {

namespace {

double binary_entropy(double p) {
  double h = 0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

double entropy_term(double lambda, double n) {
  if (n == 0) return lambda < 1 - kEpsRank ? 1.0 : 0.0;
  const double p = (1 + lambda) / 2;
  if (n == 1) return binary_entropy(p);
  return std::log2(std::pow(p, n) + std::pow(1 - p, n)) / (1 - n);
}

void require_bond(const CovarianceMatrix& cov, int bond) {
  if (bond < 1 || bond > cov.L - 1) throw Error(ErrorCode::BondOutOfRange, "bond " + std::to_string(bond));
}

// Polar factor of Gamma by Newton-Schulz steps X <- X (3 - X^T X) / 2, which keep X
// antisymmetric; removes drift of Gamma Gamma^T away from 1.
void reorthogonalize(Eigen::MatrixXd& g) {
  const Eigen::Index n = g.rows();
  for (int it = 0; it < 8; ++it) {
    const Eigen::MatrixXd defect = g.transpose() * g - Eigen::MatrixXd::Identity(n, n);
    if (defect.cwiseAbs().maxCoeff() < 1e-15) break;
    g = (g - g * defect / 2).eval();
  }
  g = (g - g.transpose()).eval() / 2;
}

}  // namespace

CovarianceMatrix vacuum_covariance(int L) {
  if (L < 1) throw Error(ErrorCode::RangeError, "L must be positive");
  CovarianceMatrix cov;
  cov.L = L;
  cov.gamma = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (int k = 0; k < L; ++k) {
    cov.gamma(2 * k, 2 * k + 1) = -1;
    cov.gamma(2 * k + 1, 2 * k) = 1;
  }
  return cov;
}

void apply_gate(CovarianceMatrix& cov, int bond, const Mat4r& r) {
  require_bond(cov, bond);
  const int i = 2 * (bond - 1);
  Eigen::MatrixXd& g = cov.gamma;
  g.middleRows(i, 4) = (r * g.middleRows(i, 4)).eval();
  g.middleCols(i, 4) = (g.middleCols(i, 4) * r.transpose()).eval();
  // Re-antisymmetrize the touched rows and columns.
  const Eigen::MatrixXd rows = g.middleRows(i, 4);
  const Eigen::MatrixXd cols = g.middleCols(i, 4);
  g.middleRows(i, 4) = (rows - cols.transpose()) / 2;
  g.middleCols(i, 4) = (-g.middleRows(i, 4).transpose()).eval();
  if (++cov.gates_applied % kReorthogonalizeEvery == 0) reorthogonalize(g);
}

Eigen::MatrixXd reduced(const CovarianceMatrix& cov, int first, int last) {
  if (first < 1 || first > last || last > cov.L) throw Error(ErrorCode::RangeError, "invalid qubit range");
  const int n = 2 * (last - first + 1);
  return cov.gamma.block(2 * (first - 1), 2 * (first - 1), n, n);
}

WilliamsonSpectrum williamson_eigenvalues(const Eigen::MatrixXd& gamma_reduced) {
  if (gamma_reduced.rows() % 2 != 0 || gamma_reduced.rows() != gamma_reduced.cols()) {
    throw Error(ErrorCode::OddDimension, "reduced covariance must be square of even size");
  }
  if (gamma_reduced.size() == 0) return {};
  if ((gamma_reduced + gamma_reduced.transpose()).cwiseAbs().maxCoeff() > kEpsCov) {
    throw Error(ErrorCode::AsymmetryTooLarge, "matrix is not antisymmetric");
  }
  // The zero-diagonal symmetric tridiagonal matrix with the skew subdiagonal magnitudes
  // is similar to i T and has eigenvalues +-lambda_k.
  Eigen::MatrixXd work = gamma_reduced;
  Eigen::VectorXd sub;
  skew_tridiagonalize(work, sub);
  const Eigen::Index n = gamma_reduced.rows();
  WilliamsonSpectrum out;
  out.reserve(static_cast<std::size_t>(n / 2));
  // Split at exact zeros; an isolated pair gives lambda = |e| with no rounding.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start;
    while (end + 1 < n && sub(end) != 0) ++end;
    const Eigen::Index m = end - start + 1;
    if (m == 2) {
      out.push_back(std::abs(sub(start)));
    } else if (m > 2) {
      solver.computeFromTridiagonal(Eigen::VectorXd::Zero(m), sub.segment(start, m - 1), Eigen::EigenvaluesOnly);
      const Eigen::VectorXd& ev = solver.eigenvalues();
      for (Eigen::Index k = 0; k < m / 2; ++k) out.push_back((ev(m - 1 - k) - ev(k)) / 2);
      if (m % 2 == 1) out.push_back(0.0);
    } else {
      out.push_back(0.0);
    }
    start = end + 1;
  }
  // Unpaired zero modes come one per odd block; merge them pairwise.
  std::sort(out.begin(), out.end(), std::greater<>());
  out.resize(static_cast<std::size_t>(n / 2));
  for (double& x : out) x = std::clamp(x, 0.0, 1.0);
  return out;
}

void skew_tridiagonalize(Eigen::MatrixXd& a, Eigen::VectorXd& sub) {
  // Only the strict lower triangle is read and updated.
  const Eigen::Index n = a.rows();
  sub.resize(n > 0 ? n - 1 : 0);
  Eigen::VectorXd v, w;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    v = a.col(k).tail(m);
    const double norm = v.norm();
    sub(k) = norm;
    if (m == 1 || norm == 0) continue;
    v(0) += v(0) < 0 ? -norm : norm;
    v.normalize();
    const Eigen::Index off = k + 1;
    w.setZero(m);
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      const auto col = a.col(off + j).segment(off + j + 1, m - j - 1);
      w.tail(m - j - 1) += v(j) * col;
      w(j) -= col.dot(v.tail(m - j - 1));
    }
    for (Eigen::Index j = 0; j + 1 < m; ++j)
      a.col(off + j).segment(off + j + 1, m - j - 1) += 2 * (w(j) * v.tail(m - j - 1) - v(j) * w.tail(m - j - 1));
  }
}

double renyi_entropy(const WilliamsonSpectrum& spec, double n) {
  double s = 0;
  for (double lambda : spec) s += entropy_term(lambda, n);
  return s;
}

double window_entropy(const WilliamsonSpectrum& spec, double n, double x, double y) {
  double s = 0;
  for (double lambda : spec)
    if (lambda >= x && lambda < y) s += entropy_term(lambda, n);
  return s;
}

std::vector<double> entanglement_profile(const CovarianceMatrix& cov, double n, Side side) {
  if (!purity_check(cov)) throw Error(ErrorCode::NotPure, "profile requires a pure state");
  std::vector<double> out;
  out.reserve(cov.L - 1);
  for (int m = 1; m < cov.L; ++m) {
    const auto block = side == Side::Left ? reduced(cov, 1, m) : reduced(cov, m + 1, cov.L);
    out.push_back(renyi_entropy(williamson_eigenvalues(block), n));
  }
  return out;
}

double bond_entropy(const CovarianceMatrix& cov, int bond, double n) {
  require_bond(cov, bond);
  const auto block = 2 * bond <= cov.L ? reduced(cov, 1, bond) : reduced(cov, bond + 1, cov.L);
  return renyi_entropy(williamson_eigenvalues(block), n);
}

double pfaffian(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (n != input.cols() || n % 2 != 0) throw Error(ErrorCode::OddDimension, "pfaffian needs even square input");
  Eigen::MatrixXd a = input;
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // Pivot the largest entry of column k below the diagonal into row k+1.
    Eigen::Index p = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&p);
    p += k + 1;
    if (p != k + 1) {
      a.row(k + 1).swap(a.row(p));
      a.col(k + 1).swap(a.col(p));
      pf = -pf;
    }
    const double piv = a(k + 1, k);
    if (piv == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXd tau = a.col(k).tail(rest) / piv;
      // Gauss transform that clears column k below row k+1, applied symmetrically.
      const Eigen::VectorXd u = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * u.transpose() - u * tau.transpose();
    }
  }
  return pf;
}

double majorana_expectation(const CovarianceMatrix& cov, const std::vector<int>& indices) {
  if (indices.size() % 2 != 0) throw Error(ErrorCode::OddCount, "odd number of Majorana indices");
  const int dim = 2 * cov.L;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > dim || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error(ErrorCode::IndexError, "indices must be increasing and within range");
    }
  }
  const auto s = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd sub(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) sub(i, j) = cov.gamma(indices[i] - 1, indices[j] - 1);
  return s == 0 ? 1.0 : pfaffian(sub);
}

bool purity_check(const CovarianceMatrix& cov) {
  const Eigen::MatrixXd prod = cov.gamma * cov.gamma.transpose();
  return (prod - Eigen::MatrixXd::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff() <= kEpsPure;
}

}  // namespace mgarena
