#pragma once
// Spacetime algebra Cl(1,3) in the standard (Dirac) gamma representation.
#include <Eigen/Dense>
#include <array>
#include <complex>

namespace rdi {

using Cplx = std::complex<double>;
using Multivector = Eigen::Matrix4cd;
using ColumnSpinor = Eigen::Vector4cd;
using FourVector = Eigen::Vector4d;  // contravariant components a^mu
using Vec3 = Eigen::Vector3d;

struct RotorFactors {
  Multivector boost;     // Hermitian, positive definite
  Multivector rotation;  // unitary
};

namespace sta {

// gamma_0 = diag(I,-I), gamma_k = [[0,-sigma_k],[sigma_k,0]]
const Multivector& gamma(int mu);
// gamma^mu = eta^{mu mu} gamma_mu
const Multivector& gamma_up(int mu);
const Multivector& gamma5();
// i = gamma_0 gamma_1 gamma_2 gamma_3 = i*gamma5, squares to -1
const Multivector& pseudoscalar();
// alpha_k = gamma_k gamma_0, k = 1..3
const Multivector& alpha(int k);
const Multivector& identity();
// Gamma_1..Gamma_16: 1, gamma^mu, alpha_k, gamma^2gamma^3, gamma^3gamma^1,
// gamma^1gamma^2, gamma^1gamma^2gamma^3, gamma^0gamma^2gamma^3,
// gamma^0gamma^3gamma^1, gamma^0gamma^1gamma^2, gamma5
const Multivector& basis(int k);
// Gamma_k squared is +-1; this returns the sign.
double basis_square(int k);
// Traces that must vanish for an electromagnetic potential.
inline constexpr std::array<int, 12> kConstrained = {1, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};

struct GammaBasis {
  std::array<Multivector, 4> up;
  std::array<Multivector, 16> Gamma;
  Multivector g5;
  Multivector I;
};
GammaBasis gamma_basis();

double eta(int mu);
double dot(const FourVector& a, const FourVector& b);
Multivector slash(const FourVector& v);  // gamma_mu v^mu
// v^mu = Re Tr[A gamma^mu]/4
FourVector vector_part(const Multivector& A);
// max entry of A minus its vector projection (complex vector part included)
double non_vector_residual(const Multivector& A);

Multivector reversion(const Multivector& A);
Cplx trace_project(const Multivector& A, int k);

// Pade(6,6) with scaling and squaring.
Multivector expm(const Multivector& A);
// exp(a^k alpha_k - b^k i alpha_k)
Multivector exp_bivector(const Vec3& a, const Vec3& b);
// closed forms for the pure cases
Multivector boost_closed(const Vec3& a);
Multivector rotation_closed(const Vec3& b);

RotorFactors polar_decompose(const Multivector& R);
// R gamma(v) R~ projected back to a vector
FourVector sandwich(const Multivector& R, const FourVector& v);

double max_abs(const Multivector& A);

}  // namespace sta
}  // namespace rdi
