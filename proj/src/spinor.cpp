#include "rdi/spinor.hpp"

#include <cmath>

#include "rdi/errors.hpp"

namespace rdi::spinor {

using namespace rdi::sta;

namespace {
const Cplx I(0, 1);

Multivector phase_rotor(double angle) {
  // exp(-g2g1 angle); (g2g1)^2 = -1
  return std::cos(angle) * identity() - std::sin(angle) * (gamma(2) * gamma(1));
}
}  // namespace

Multivector assemble(const MatrixSpinor& ms) {
  const Multivector duality = std::cos(ms.beta / 2) * identity() + std::sin(ms.beta / 2) * pseudoscalar();
  return std::sqrt(ms.rho) * duality * ms.rotor * phase_rotor(ms.phase_arg);
}

ColumnSpinor to_column(const Multivector& Psi) { return Psi.col(0); }

ColumnSpinor from_components(const FourVector& r, const FourVector& s) {
  ColumnSpinor p;
  p << Cplx(r[0], -r[3]), Cplx(r[2], -r[1]), Cplx(s[3], s[0]), Cplx(s[1], s[2]);
  return p;
}

void to_components(const ColumnSpinor& psi, FourVector& r, FourVector& s) {
  r << psi[0].real(), -psi[1].imag(), psi[1].real(), -psi[0].imag();
  s << psi[2].imag(), psi[3].real(), psi[3].imag(), psi[2].real();
}

Multivector from_column(const ColumnSpinor& psi) {
  FourVector r, s;
  to_components(psi, r, s);
  Multivector P = r[0] * identity();
  Multivector Q = s[0] * identity();
  for (int k = 1; k <= 3; ++k) {
    P += s[k] * alpha(k);
    Q -= r[k] * alpha(k);
  }
  return P + pseudoscalar() * Q;
}

void density_angle(const Multivector& Psi, double& rho, double& beta) {
  const Multivector PP = Psi * reversion(Psi);
  const double a = PP.trace().real() / 4.0;
  const double b = -(PP * pseudoscalar()).trace().real() / 4.0;
  rho = std::hypot(a, b);
  beta = std::atan2(b, a);
}

MatrixSpinor factor(const Multivector& Psi, double phase_arg) {
  MatrixSpinor ms;
  density_angle(Psi, ms.rho, ms.beta);
  if (ms.rho == 0) throw NullDensity("singular matrix spinor");
  const Multivector undo = std::cos(ms.beta / 2) * identity() - std::sin(ms.beta / 2) * pseudoscalar();
  ms.rotor = undo * Psi * phase_rotor(-phase_arg) / std::sqrt(ms.rho);
  ms.phase_arg = phase_arg;
  return ms;
}

Multivector boost_from_momentum(const Vec3& p, double m) {
  const double E = std::sqrt(m * m + p.squaredNorm());
  Multivector B = (E + m) * identity();
  for (int k = 1; k <= 3; ++k) B += p[k - 1] * alpha(k);
  return B / std::sqrt(2 * m * (E + m));
}

ColumnField plane_wave(const Vec3& p, double m, const Vec3& spin_axis, double angle, int energy_sign) {
  if (!(m > 0)) throw DomainError("plane_wave needs m > 0");
  const double E = std::sqrt(m * m + p.squaredNorm());
  const Vec3 axis = spin_axis.norm() > 0 ? Vec3(spin_axis.normalized()) : Vec3(0, 0, 1);
  const Multivector U = rotation_closed(axis * (angle / 2));
  Multivector R;
  if (energy_sign >= 0) {
    R = boost_from_momentum(p, m) * U;
  } else {
    R = pseudoscalar() * boost_from_momentum(-p, m) * U;
  }
  return [=](const SpacetimePoint& x) -> ColumnSpinor {
    const double px = p[0] * x[1] + p[1] * x[2] + p[2] * x[3];
    const double th = energy_sign >= 0 ? E * x[0] - px : -(E * x[0] + px);
    return to_column(R * phase_rotor(th));
  };
}

Observables observables(const Multivector& Psi, double rho_floor) {
  Observables o;
  density_angle(Psi, o.rho, o.beta);
  o.scalar = o.rho * std::cos(o.beta);
  const Multivector Rev = reversion(Psi);
  o.current = vector_part(Psi * gamma(0) * Rev);
  o.spin_density = vector_part(Psi * gamma(3) * Rev);
  if (o.current[0] <= 0) throw NullDensity("psi^dagger psi vanishes");
  o.defined = o.rho > rho_floor && o.rho > 0;
  if (!o.defined) {
    for (auto& e : o.tetrad) e.setZero();
    o.bivector_S.setZero();
    return o;
  }
  for (int mu = 0; mu < 4; ++mu) o.tetrad[mu] = vector_part(Psi * gamma(mu) * Rev) / o.rho;
  const Multivector undo = std::cos(o.beta) * identity() - std::sin(o.beta) * pseudoscalar();
  o.bivector_S = undo * Psi * gamma(2) * gamma(1) * Rev / o.rho;
  return o;
}

Observables observables(const ColumnSpinor& psi, double rho_floor) {
  if (psi.squaredNorm() == 0) throw NullDensity("psi^dagger psi vanishes");
  return observables(from_column(psi), rho_floor);
}

}  // namespace rdi::spinor
