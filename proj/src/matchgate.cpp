#include "mgarena/matchgate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "mgarena/rng.hpp"

namespace mgarena {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::DeterminantMismatch: return "DeterminantMismatch";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::BondOutOfRange: return "BondOutOfRange";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::OddCount: return "OddCount";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

namespace {

const cd I(0.0, 1.0);

Mat2c pauli_x() { return (Mat2c() << 0, 1, 1, 0).finished(); }
Mat2c pauli_y() { return (Mat2c() << 0, -I, I, 0).finished(); }
Mat2c pauli_z() { return (Mat2c() << 1, 0, 0, -1).finished(); }

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

Mat4c assemble(const Mat2c& a, const Mat2c& b) {
  Mat4c u = Mat4c::Zero();
  u(0, 0) = a(0, 0);
  u(0, 3) = a(0, 1);
  u(3, 0) = a(1, 0);
  u(3, 3) = a(1, 1);
  u(1, 1) = b(0, 0);
  u(1, 2) = b(0, 1);
  u(2, 1) = b(1, 0);
  u(2, 2) = b(1, 1);
  return u;
}

// First nonzero entry of the first column made real positive, off-block
// entries exactly zero. Idempotent, so serialized gates read back bit-identical.
void normalize_gate_phase(Mat4c& u) {
  const int row = std::abs(u(0, 0)) > kEpsPivot ? 0 : 3;
  const cd pivot = u(row, 0);
  const double mag = std::abs(pivot);
  if (mag > 0.0 && !(pivot.imag() == 0.0 && pivot.real() > 0.0)) {
    u *= std::conj(pivot) / mag;
    u(row, 0) = cd(mag, 0.0);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (((i == 0 || i == 3) != (j == 0 || j == 3)) || u(i, j) == cd(0.0, 0.0)) u(i, j) = cd(0.0, 0.0);
}

// Rotation in plane (a,b) by theta, written [[c,-s],[s,c]], corresponds to
// exp(-theta/2 g_a g_b).
const Mat4c& majorana_product(int a, int b) {
  static const std::array<std::array<Mat4c, 4>, 4> table = [] {
    const auto& g = two_qubit_majoranas();
    std::array<std::array<Mat4c, 4>, 4> t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[i][j] = g[i] * g[j];
    return t;
  }();
  return table[a][b];
}

Mat4c plane_rotation_unitary(int a, int b, double theta) {
  return std::cos(theta / 2) * Mat4c::Identity() - std::sin(theta / 2) * majorana_product(a, b);
}

void check_special_orthogonal(const Mat4r& r) {
  const double dev = (r * r.transpose() - Mat4r::Identity()).cwiseAbs().maxCoeff();
  if (!(dev <= kEpsUnitary * 10) || std::abs(r.determinant() - 1.0) > kEpsUnitary * 10) {
    throw Error(ErrorCode::NotSpecialOrthogonal, "matrix is not in SO(4)");
  }
}

// Givens rotation that zeroes x[j+1] against x[j]; a vanishing pivot gives angle 0.
template <int N>
void eliminate(Eigen::Matrix<double, N, N>& m, Eigen::Matrix<double, N, N>& acc, int row, int col) {
  const double x = m(row, col);
  const double y = m(row + 1, col);
  const double n = std::hypot(x, y);
  double c = 1.0, s = 0.0;
  if (n >= kEpsPivot) {
    c = x / n;
    s = -y / n;
  }
  for (auto* mat : {&m, &acc}) {
    for (int k = 0; k < N; ++k) {
      const double top = (*mat)(row, k);
      const double bot = (*mat)(row + 1, k);
      (*mat)(row, k) = c * top - s * bot;
      (*mat)(row + 1, k) = s * top + c * bot;
    }
  }
}

Mat6r embed_low(const Mat4r& r) {
  Mat6r out = Mat6r::Identity();
  out.block<4, 4>(0, 0) = r;
  return out;
}

Mat6r embed_high(const Mat4r& r) {
  Mat6r out = Mat6r::Identity();
  out.block<4, 4>(2, 2) = r;
  return out;
}

// R = (1_2 + r1)(r2 + 1_2)(1_2 + r3), following the column-by-column Givens sweep.
std::array<Mat4r, 3> euler_split(const Mat6r& r) {
  Mat6r m = r;
  Mat6r first = Mat6r::Identity();   // planes (5,6),(4,5),(3,4) of the first sweep
  Mat6r second = Mat6r::Identity();  // planes (2,3),(1,2) of the first sweep
  Mat6r third = Mat6r::Identity();   // planes (5,6),(4,5) of the second sweep
  Mat6r fourth = Mat6r::Identity();  // planes (3,4),(2,3) of the second sweep
  for (int row = 4; row >= 0; --row) {
    Mat6r& acc = row >= 2 ? first : second;
    eliminate<6>(m, acc, row, 0);
  }
  for (int row = 4; row >= 1; --row) {
    Mat6r& acc = row >= 3 ? third : fourth;
    eliminate<6>(m, acc, row, 1);
  }
  // fourth*second acts on modes 1..4, third*first on modes 3..6.
  const Mat6r low = fourth * second;
  const Mat6r high = third * first;
  return {high.block<4, 4>(2, 2).transpose(), low.block<4, 4>(0, 0).transpose(),
          m.block<4, 4>(2, 2)};
}

Mat4r reverse4(const Mat4r& r) { return r.colwise().reverse().rowwise().reverse(); }

Mat6r reverse6(const Mat6r& r) { return r.colwise().reverse().rowwise().reverse(); }

}  // namespace

const std::array<Mat4c, 4>& two_qubit_majoranas() {
  static const std::array<Mat4c, 4> g = {
      kron(pauli_x(), Mat2c::Identity()), kron(pauli_y(), Mat2c::Identity()),
      kron(pauli_z(), pauli_x()), kron(pauli_z(), pauli_y())};
  return g;
}

Matchgate::Matchgate() : u_(Mat4c::Identity()), r_(Mat4r::Identity()) {}

Mat2c Matchgate::a() const { return (Mat2c() << u_(0, 0), u_(0, 3), u_(3, 0), u_(3, 3)).finished(); }

Mat2c Matchgate::b() const { return (Mat2c() << u_(1, 1), u_(1, 2), u_(2, 1), u_(2, 2)).finished(); }

Matchgate Matchgate::adjoint() const {
  Mat4c u = u_.adjoint();
  normalize_gate_phase(u);
  return Matchgate(u, r_.transpose());
}

Matchgate Matchgate::mirrored() const {
  const Mat2c bb = b();
  Mat2c swapped;
  swapped << bb(1, 1), bb(1, 0), bb(0, 1), bb(0, 0);
  return from_unitary(assemble(a(), swapped));
}

Matchgate Matchgate::from_unitary(const Mat4c& u) {
  const double off = std::max({std::abs(u(0, 1)), std::abs(u(0, 2)), std::abs(u(1, 0)), std::abs(u(2, 0)),
                               std::abs(u(1, 3)), std::abs(u(2, 3)), std::abs(u(3, 1)), std::abs(u(3, 2))});
  if (off > kEpsUnitary) throw Error(ErrorCode::NonUnitary, "unitary mixes parity sectors");
  Mat4c v = assemble((Mat2c() << u(0, 0), u(0, 3), u(3, 0), u(3, 3)).finished(),
                     (Mat2c() << u(1, 1), u(1, 2), u(2, 1), u(2, 2)).finished());
  if ((v.adjoint() * v - Mat4c::Identity()).cwiseAbs().maxCoeff() > kEpsUnitary) {
    throw Error(ErrorCode::NonUnitary, "gate is not unitary");
  }
  const cd det_a = v(0, 0) * v(3, 3) - v(0, 3) * v(3, 0);
  const cd det_b = v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1);
  if (std::abs(det_a - det_b) > kEpsUnitary) throw Error(ErrorCode::DeterminantMismatch, "det A != det B");
  normalize_gate_phase(v);
  return Matchgate(v, orthogonal_of_unitary(v));
}

Matchgate make_matchgate(const Mat2c& a, const Mat2c& b) {
  const double ua = (a.adjoint() * a - Mat2c::Identity()).cwiseAbs().maxCoeff();
  const double ub = (b.adjoint() * b - Mat2c::Identity()).cwiseAbs().maxCoeff();
  if (ua > kEpsUnitary || ub > kEpsUnitary) throw Error(ErrorCode::NonUnitary, "block is not unitary");
  if (std::abs(a.determinant() - b.determinant()) > kEpsUnitary) {
    throw Error(ErrorCode::DeterminantMismatch, "det A != det B");
  }
  return Matchgate::from_unitary(assemble(a, b));
}

Matchgate from_params(double alpha, double beta, double phi1, double phi2, double phi3, double phi4) {
  auto zrot = [](double t) { return (Mat2c() << std::exp(I * t), 0, 0, std::exp(-I * t)).finished(); };
  auto xrot = [](double t) {
    return (Mat2c() << std::cos(t), I * std::sin(t), I * std::sin(t), std::cos(t)).finished();
  };
  // XX and YY act as (alpha-beta) X on the even block and (alpha+beta) X on the odd one.
  const Mat4c core = assemble(xrot(alpha - beta), xrot(alpha + beta));
  const Mat4c u = kron(zrot(phi3), zrot(phi4)) * core * kron(zrot(phi2), zrot(phi1));
  return Matchgate::from_unitary(u);
}

Matchgate haar_matchgate(Rng& rng) {
  Mat4r g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat4r> qr(g);
  Mat4r q = qr.householderQ();
  const Mat4r rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j)
    if (rr(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return from_orthogonal(q);
}

Mat4r orthogonal_of_unitary(const Mat4c& u) {
  const auto& g = two_qubit_majoranas();
  Mat4r r;
  for (int i = 0; i < 4; ++i) {
    const Mat4c conj = u.adjoint() * g[i] * u;
    for (int j = 0; j < 4; ++j) r(i, j) = 0.25 * (conj * g[j]).trace().real();
  }
  return r;
}

Mat4r to_orthogonal(const Matchgate& g) { return g.r(); }

Matchgate from_orthogonal(const Mat4r& r) {
  check_special_orthogonal(r);
  // Sweep r to the identity with plane rotations; r is then the product of
  // their transposes, each of which is a quadratic exponential.
  Mat4r m = r;
  Mat4r acc = Mat4r::Identity();
  struct Step {
    int row;
    double theta;
  };
  std::array<Step, 6> steps;
  int count = 0;
  for (int col = 0; col < 3; ++col) {
    for (int row = 2; row >= col; --row) {
      const double before_x = m(row, col);
      const double before_y = m(row + 1, col);
      const double n = std::hypot(before_x, before_y);
      const double theta = n >= kEpsPivot ? std::atan2(-before_y, before_x) : 0.0;
      eliminate<4>(m, acc, row, col);
      steps[count++] = {row, theta};
    }
  }
  // acc * r = 1, so r = acc^T = E_1^T ... E_6^T, and E_k^T rotates by -theta_k.
  Mat4c u = Mat4c::Identity();
  for (const Step& s : steps) u = u * plane_rotation_unitary(s.row, s.row + 1, -s.theta);
  normalize_gate_phase(u);
  return Matchgate(u, r);
}

Matchgate from_orthogonal_log(const Mat4r& r) {
  check_special_orthogonal(r);
  Eigen::RealSchur<Mat4r> schur(r);
  const Mat4r t = schur.matrixT();
  const Mat4r z = schur.matrixU();
  Mat4r logt = Mat4r::Zero();
  std::vector<int> negatives;
  for (int i = 0; i < 4;) {
    if (i + 1 < 4 && std::abs(t(i + 1, i)) > 1e-14) {
      const double theta = std::atan2(t(i + 1, i), t(i, i));
      logt(i, i + 1) = -theta;
      logt(i + 1, i) = theta;
      i += 2;
    } else {
      if (t(i, i) < 0) negatives.push_back(i);
      ++i;
    }
  }
  for (std::size_t k = 0; k + 1 < negatives.size(); k += 2) {
    logt(negatives[k], negatives[k + 1]) = -std::numbers::pi;
    logt(negatives[k + 1], negatives[k]) = std::numbers::pi;
  }
  const Mat4r k = z * logt * z.transpose();
  // With our Majorana convention R = exp(-4h) for U = exp(iH), H = i sum h_kl g_k g_l.
  const Mat4r h = -k / 4.0;
  const auto& g = two_qubit_majoranas();
  Mat4c ham = Mat4c::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) ham += I * h(a, b) * g[a] * g[b];
  Eigen::SelfAdjointEigenSolver<Mat4c> es((ham + ham.adjoint()) / 2.0);
  const Eigen::Vector4cd phases = (I * es.eigenvalues().cast<cd>()).array().exp();
  Mat4c u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return Matchgate::from_unitary(u);
}

Matchgate fuse(const Matchgate& g1, const Matchgate& g2) {
  Mat4c u = g2.u() * g1.u();
  normalize_gate_phase(u);
  return Matchgate(u, g2.r() * g1.r());
}

bool is_identity(const Matchgate& g, double tol) {
  Mat4c u = g.u();
  normalize_gate_phase(u);
  return (u - Mat4c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Matchgate fermionic_swap() {
  return make_matchgate((Mat2c() << 1, 0, 0, -1).finished(), (Mat2c() << 0, 1, 1, 0).finished());
}

std::array<Matchgate, 3> yang_baxter(const Matchgate& u, const Matchgate& up, const Matchgate& upp,
                                     Direction dir) {
  if (dir == Direction::LeftToRight) {
    const Mat6r r = embed_low(u.r()) * embed_high(up.r()) * embed_low(upp.r());
    const auto parts = euler_split(r);
    return {from_orthogonal(parts[0]), from_orthogonal(parts[1]), from_orthogonal(parts[2])};
  }
  // Mirror: reversing the six modes maps the (2,3)/(1,2) pattern onto (1,2)/(2,3).
  const Mat6r r = embed_high(u.r()) * embed_low(up.r()) * embed_high(upp.r());
  const auto parts = euler_split(reverse6(r));
  return {from_orthogonal(reverse4(parts[0])), from_orthogonal(reverse4(parts[1])),
          from_orthogonal(reverse4(parts[2]))};
}

Mat8c embed_three(const Matchgate& g, int first_qubit) {
  Mat8c out = Mat8c::Zero();
  if (first_qubit == 1) {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int q = 0; q < 2; ++q) out(2 * a + q, 2 * b + q) = g.u()(a, b);
  } else {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int q = 0; q < 2; ++q) out(4 * q + a, 4 * q + b) = g.u()(a, b);
  }
  return out;
}

Vec8c normalize_phase(const Vec8c& amp) {
  for (int i = 0; i < 8; ++i) {
    if (std::abs(amp(i)) > kEpsPivot) return amp * (std::conj(amp(i)) / std::abs(amp(i)));
  }
  return amp;
}

double phase_aligned_distance(const Mat8c& x, const Mat8c& y) {
  Eigen::Index r = 0, c = 0;
  y.cwiseAbs().maxCoeff(&r, &c);
  const cd ph = x(r, c) / y(r, c);
  return (x - (ph / std::abs(ph)) * y).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Vec8c& x, const Vec8c& y) {
  Eigen::Index r = 0;
  y.cwiseAbs().maxCoeff(&r);
  const cd ph = x(r) / y(r);
  return (x - (ph / std::abs(ph)) * y).cwiseAbs().maxCoeff();
}

std::array<Matchgate, 2> left_right(const Matchgate& u, const Matchgate& up, Direction dir) {
  if (dir == Direction::RightToLeft) {
    const auto out = left_right(u.mirrored(), up.mirrored(), Direction::LeftToRight);
    return {out[0].mirrored(), out[1].mirrored()};
  }
  Vec8c psi = Vec8c::Zero();
  psi(0) = 1.0;
  psi = embed_three(u, 1) * (embed_three(up, 2) * psi);
  // psi = mu (alpha|000> + beta|011>) + nu (gamma|110> + delta|101>)
  const double mu = std::hypot(std::abs(psi(0)), std::abs(psi(3)));
  const double nu = std::hypot(std::abs(psi(6)), std::abs(psi(5)));
  cd alpha = 1.0, beta = 0.0, gamma = 1.0, delta = 0.0;
  if (mu > kEpsPivot) {
    alpha = psi(0) / mu;
    beta = psi(3) / mu;
  }
  if (nu > kEpsPivot) {
    gamma = psi(6) / nu;
    delta = psi(5) / nu;
  }
  const Mat2c a = (Mat2c() << std::conj(alpha), std::conj(beta), -beta, alpha).finished();
  const Mat2c b = (Mat2c() << gamma, -delta, std::conj(delta), std::conj(gamma)).finished();
  const Mat2c c = (Mat2c() << mu, nu, -nu, mu).finished();
  const Matchgate gab = Matchgate::from_unitary(assemble(a, b));
  const Matchgate gcc = Matchgate::from_unitary(assemble(c, c));
  return {gab.adjoint(), gcc.adjoint()};
}

}  // namespace mgarena
