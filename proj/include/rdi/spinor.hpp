#pragma once
// Matrix/column spinors and their local observables.
#include <array>
#include <functional>

#include "rdi/sta.hpp"

namespace rdi {

struct MatrixSpinor {
  double rho = 1.0;
  double beta = 0.0;
  Multivector rotor = Multivector::Identity();
  double phase_arg = 0.0;  // angle multiplying -gamma^2gamma^1
};

struct Observables {
  FourVector current;       // J^mu
  FourVector spin_density;  // rho s^mu
  double rho = 0.0;
  double beta = 0.0;
  double scalar = 0.0;  // psibar psi = rho cos(beta)
  std::array<FourVector, 4> tetrad;
  Multivector bivector_S;
  bool defined = true;  // false where rho is below the density floor
};

using SpacetimePoint = FourVector;  // (t, x, y, z)
using ColumnField = std::function<ColumnSpinor(const SpacetimePoint&)>;
using MatrixField = std::function<Multivector(const SpacetimePoint&)>;

namespace spinor {

Multivector assemble(const MatrixSpinor& ms);
ColumnSpinor to_column(const Multivector& Psi);
// psi = (r0 - i r3, r2 - i r1, s3 + i s0, s1 + i s2)
ColumnSpinor from_components(const FourVector& r, const FourVector& s);
void to_components(const ColumnSpinor& psi, FourVector& r, FourVector& s);
// Even element with Psi u1 = psi: r0 + s_k alpha_k + i(s0 - r_k alpha_k)
Multivector from_column(const ColumnSpinor& psi);
// Psi Psi~ = a + b i
void density_angle(const Multivector& Psi, double& rho, double& beta);
MatrixSpinor factor(const Multivector& Psi, double phase_arg = 0.0);

// energy_sign = +1: B U exp(-g2g1 (Et - p.x));
// energy_sign = -1: i B^- U exp(+g2g1 (Et + p.x)).
ColumnField plane_wave(const Vec3& p, double m, const Vec3& spin_axis, double angle, int energy_sign);
Multivector boost_from_momentum(const Vec3& p, double m);

Observables observables(const ColumnSpinor& psi, double rho_floor = 0.0);
Observables observables(const Multivector& Psi, double rho_floor = 0.0);

}  // namespace spinor
}  // namespace rdi
