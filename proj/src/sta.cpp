#include "rdi/sta.hpp"

#include <cmath>

#include "rdi/errors.hpp"

namespace rdi::sta {
namespace {

using M2 = Eigen::Matrix2cd;

M2 pauli(int k) {
  const Cplx I(0, 1);
  M2 s;
  if (k == 1) s << 0, 1, 1, 0;
  else if (k == 2) s << 0, -I, I, 0;
  else s << 1, 0, 0, -1;
  return s;
}

Multivector block(const M2& a, const M2& b, const M2& c, const M2& d) {
  Multivector m;
  m << a, b, c, d;
  return m;
}

struct Tables {
  std::array<Multivector, 4> lo, up;
  std::array<Multivector, 3> al;
  std::array<Multivector, 16> Gamma;
  std::array<double, 16> sq;
  Multivector g5, ps, id;

  Tables() {
    const M2 I2 = M2::Identity(), Z = M2::Zero();
    id = Multivector::Identity();
    lo[0] = block(I2, Z, Z, -I2);
    for (int k = 1; k <= 3; ++k) lo[k] = block(Z, -pauli(k), pauli(k), Z);
    up[0] = lo[0];
    for (int k = 1; k <= 3; ++k) up[k] = -lo[k];
    g5 = block(Z, I2, I2, Z);
    ps = lo[0] * lo[1] * lo[2] * lo[3];
    for (int k = 0; k < 3; ++k) al[k] = lo[k + 1] * lo[0];
    Gamma[0] = id;
    for (int mu = 0; mu < 4; ++mu) Gamma[1 + mu] = up[mu];
    for (int k = 0; k < 3; ++k) Gamma[5 + k] = al[k];
    Gamma[8] = up[2] * up[3];
    Gamma[9] = up[3] * up[1];
    Gamma[10] = up[1] * up[2];
    Gamma[11] = up[1] * up[2] * up[3];
    Gamma[12] = up[0] * up[2] * up[3];
    Gamma[13] = up[0] * up[3] * up[1];
    Gamma[14] = up[0] * up[1] * up[2];
    Gamma[15] = g5;
    for (int k = 0; k < 16; ++k) sq[k] = (Gamma[k] * Gamma[k])(0, 0).real();
  }
};

const Tables& T() {
  static const Tables t;
  return t;
}

}  // namespace

const Multivector& gamma(int mu) { return T().lo.at(mu); }
const Multivector& gamma_up(int mu) { return T().up.at(mu); }
const Multivector& gamma5() { return T().g5; }
const Multivector& pseudoscalar() { return T().ps; }
const Multivector& alpha(int k) { return T().al.at(k - 1); }
const Multivector& identity() { return T().id; }

const Multivector& basis(int k) {
  if (k < 1 || k > 16) throw IndexError("basis index must be in 1..16");
  return T().Gamma[k - 1];
}

double basis_square(int k) {
  if (k < 1 || k > 16) throw IndexError("basis index must be in 1..16");
  return T().sq[k - 1];
}

GammaBasis gamma_basis() {
  GammaBasis g;
  g.up = T().up;
  g.Gamma = T().Gamma;
  g.g5 = T().g5;
  g.I = T().ps;
  return g;
}

double eta(int mu) { return mu == 0 ? 1.0 : -1.0; }

double dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

Multivector slash(const FourVector& v) {
  Multivector m = Multivector::Zero();
  for (int mu = 0; mu < 4; ++mu) m += v[mu] * T().lo[mu];
  return m;
}

FourVector vector_part(const Multivector& A) {
  FourVector v;
  for (int mu = 0; mu < 4; ++mu) v[mu] = (A * T().up[mu]).trace().real() / 4.0;
  return v;
}

double non_vector_residual(const Multivector& A) {
  Multivector r = A;
  for (int mu = 0; mu < 4; ++mu) r -= ((A * T().up[mu]).trace() / 4.0) * T().lo[mu];
  double vim = 0;
  for (int mu = 0; mu < 4; ++mu) vim = std::max(vim, std::abs((A * T().up[mu]).trace().imag() / 4.0));
  return std::max(max_abs(r), vim);
}

Multivector reversion(const Multivector& A) {
  const auto& g0 = T().lo[0];
  return g0 * A.adjoint() * g0;
}

Cplx trace_project(const Multivector& A, int k) { return (A * basis(k)).trace() / 4.0; }

Multivector expm(const Multivector& A) {
  // b_k of the (6,6) diagonal Pade approximant
  static const double b[] = {1.0,
                             1.0 / 2,
                             5.0 / 44,
                             1.0 / 66,
                             1.0 / 792,
                             1.0 / 15840,
                             1.0 / 665280};
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Multivector X = A / std::ldexp(1.0, s);
  const Multivector I = Multivector::Identity();
  const Multivector X2 = X * X, X4 = X2 * X2, X6 = X4 * X2;
  const Multivector U = X * (b[1] * I + b[3] * X2 + b[5] * X4);
  const Multivector V = b[0] * I + b[2] * X2 + b[4] * X4 + b[6] * X6;
  Multivector E = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) E = E * E;
  return E;
}

Multivector exp_bivector(const Vec3& a, const Vec3& b) {
  Multivector G = Multivector::Zero();
  for (int k = 1; k <= 3; ++k) G += a[k - 1] * alpha(k) - b[k - 1] * (T().ps * alpha(k));
  return expm(G);
}

Multivector boost_closed(const Vec3& a) {
  const double n = a.norm();
  if (n == 0) return identity();
  Multivector G = Multivector::Zero();
  for (int k = 1; k <= 3; ++k) G += (a[k - 1] / n) * alpha(k);
  return std::cosh(n) * identity() + std::sinh(n) * G;
}

Multivector rotation_closed(const Vec3& b) {
  const double n = b.norm();
  if (n == 0) return identity();
  Multivector G = Multivector::Zero();
  for (int k = 1; k <= 3; ++k) G -= (b[k - 1] / n) * (T().ps * alpha(k));
  return std::cos(n) * identity() + std::sin(n) * G;
}

RotorFactors polar_decompose(const Multivector& R) {
  Eigen::JacobiSVD<Multivector> svd(R);
  if (svd.singularValues().minCoeff() < 1e-12) throw SingularInput("rotor is singular");
  Eigen::SelfAdjointEigenSolver<Multivector> es(R * R.adjoint());
  const Eigen::Vector4d w = es.eigenvalues().cwiseSqrt();
  const Multivector& Q = es.eigenvectors();
  RotorFactors f;
  f.boost = Q * w.cast<Cplx>().asDiagonal() * Q.adjoint();
  f.rotation = Q * w.cwiseInverse().cast<Cplx>().asDiagonal() * Q.adjoint() * R;
  return f;
}

FourVector sandwich(const Multivector& R, const FourVector& v) {
  const Multivector out = R * slash(v) * reversion(R);
  if (non_vector_residual(out) > 1e-8) throw NonVectorResult("sandwich left non-vector grades");
  return vector_part(out);
}

double max_abs(const Multivector& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace rdi::sta
