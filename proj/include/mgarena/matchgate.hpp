#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>

#include "mgarena/error.hpp"

namespace mgarena {

using cd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat4r = Eigen::Matrix4d;
using Mat6r = Eigen::Matrix<double, 6, 6>;
using Vec8c = Eigen::Matrix<cd, 8, 1>;
using Mat8c = Eigen::Matrix<cd, 8, 8>;

inline constexpr double kEpsUnitary = 1e-10;
inline constexpr double kEpsRewrite = 1e-9;
inline constexpr double kEpsPivot = 1e-12;
inline constexpr double kIdentityTol = 1e-8;

class Rng;

// Two-qubit gate G(A,B): A acts on span{|00>,|11>}, B on span{|01>,|10>}.
// Basis order |00>,|01>,|10>,|11>; the first qubit is the left one.
// The orthogonal representation r (U^dag g_i U = sum_j r_ij g_j) is kept
// alongside the unitary because every rewrite works on it.
class Matchgate {
 public:
  Matchgate();  // identity

  const Mat4c& u() const { return u_; }
  const Mat4r& r() const { return r_; }
  Mat2c a() const;
  Mat2c b() const;

  Matchgate adjoint() const;
  // Same gate with the two qubits exchanged.
  Matchgate mirrored() const;

  // Builds from a unitary that is already block structured; the phase is
  // normalized and the orthogonal representation computed.
  static Matchgate from_unitary(const Mat4c& u);

 private:
  Matchgate(const Mat4c& u, const Mat4r& r) : u_(u), r_(r) {}
  friend Matchgate from_orthogonal(const Mat4r& r);
  friend Matchgate fuse(const Matchgate& g1, const Matchgate& g2);

  Mat4c u_;
  Mat4r r_;
};

enum class Direction { LeftToRight, RightToLeft };

// Majorana operators on two qubits: X1, Y1, ZX, ZY.
const std::array<Mat4c, 4>& two_qubit_majoranas();

Matchgate make_matchgate(const Mat2c& a, const Mat2c& b);
Matchgate from_params(double alpha, double beta, double phi1, double phi2, double phi3, double phi4);
Matchgate haar_matchgate(Rng& rng);
Mat4r to_orthogonal(const Matchgate& g);
Mat4r orthogonal_of_unitary(const Mat4c& u);
Matchgate from_orthogonal(const Mat4r& r);
// Same map computed through the matrix logarithm: h = log(r)/4 and
// U = exp(i H) with H = i sum h_kl g_k g_l. Slower; kept for cross-checks.
Matchgate from_orthogonal_log(const Mat4r& r);
Matchgate fuse(const Matchgate& g1, const Matchgate& g2);
bool is_identity(const Matchgate& g, double tol = kIdentityTol);

Matchgate fermionic_swap();

// Rewrites u_{12} u'_{23} u''_{12} into v_{23} v'_{12} v''_{23} (LeftToRight),
// or the mirror image (RightToLeft). Gates are listed in operator order,
// leftmost applied last.
std::array<Matchgate, 3> yang_baxter(const Matchgate& u, const Matchgate& up, const Matchgate& upp,
                                     Direction dir);

// LeftToRight: u_{12} u'_{23}|000> = v_{23} v'_{12}|000>. RightToLeft is the mirror.
std::array<Matchgate, 2> left_right(const Matchgate& u, const Matchgate& up, Direction dir);

// Helpers for three-qubit checks. Qubit 1 is the most significant bit.
Mat8c embed_three(const Matchgate& g, int first_qubit);
Vec8c normalize_phase(const Vec8c& amp);
double phase_aligned_distance(const Mat8c& x, const Mat8c& y);
double phase_aligned_distance(const Vec8c& x, const Vec8c& y);

}  // namespace mgarena
