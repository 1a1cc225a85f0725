#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mgarena/matchgate.hpp"

namespace mgarena {

inline constexpr double kEpsRank = 1e-8;
inline constexpr double kEpsCov = 1e-9;
inline constexpr double kEpsPure = 1e-7;
inline constexpr std::uint64_t kReorthogonalizeEvery = 10000;

// Majorana covariance Gamma_kl = (i/2)<[g_k, g_l]> of an L-qubit state.
struct CovarianceMatrix {
  Eigen::MatrixXd gamma;
  int L = 0;
  std::uint64_t gates_applied = 0;
};

// Williamson eigenvalues, unsigned, descending.
using WilliamsonSpectrum = std::vector<double>;

enum class Side { Left, Right };

CovarianceMatrix vacuum_covariance(int L);

// Gamma <- R Gamma R^T with r acting on the four Majoranas of `bond`.
void apply_gate(CovarianceMatrix& cov, int bond, const Mat4r& r);

// Majorana block of qubits first..last (1-based, inclusive).
Eigen::MatrixXd reduced(const CovarianceMatrix& cov, int first, int last);

WilliamsonSpectrum williamson_eigenvalues(const Eigen::MatrixXd& gamma_reduced);

// Householder reduction of a real antisymmetric matrix to tridiagonal form; `sub`
// receives the magnitudes of the subdiagonal. Reads and overwrites the strict lower triangle.
void skew_tridiagonalize(Eigen::MatrixXd& a, Eigen::VectorXd& sub);

double renyi_entropy(const WilliamsonSpectrum& spec, double n);
// Contribution of the eigenvalues in [x, y) only.
double window_entropy(const WilliamsonSpectrum& spec, double n, double x, double y);

// Entry m-1 holds the entropy of qubits 1..m (Left) or m+1..L (Right).
std::vector<double> entanglement_profile(const CovarianceMatrix& cov, double n, Side side = Side::Left);
// Entropy across one bond computed from the smaller side; requires a pure state.
double bond_entropy(const CovarianceMatrix& cov, int bond, double n);

double pfaffian(const Eigen::MatrixXd& m);
// Returns i^(s/2) <g_k1 ... g_ks> for 1-based increasing indices.
double majorana_expectation(const CovarianceMatrix& cov, const std::vector<int>& indices);
bool purity_check(const CovarianceMatrix& cov);

}  // namespace mgarena
