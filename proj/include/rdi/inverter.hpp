#pragma once
// Recover the driving potential from a matrix-spinor field.
#include <array>
#include <limits>

#include "rdi/catalog.hpp"

namespace rdi {

struct PotentialSample {
  FourVector eA = FourVector::Zero();
  // |Tr[eA Gamma_k]/4| for k = 1..16; the constrained ones must vanish
  std::array<double, 16> grade_residuals{};
  double richardson = 0;  // |eA(h) - eA(h/2)|_max
  double max_constrained() const;
};

namespace inverter {

// eA = (d Psi) g2g1 Psi^-1 - m Psi g0 Psi^-1 with 4th-order central differences.
// SingularSpinor when |det Psi| < 1e-12 |Psi|_max^4; StepTooLarge when the
// Richardson estimate exceeds `tolerance`.
PotentialSample invert(const MatrixField& Psi, const SpacetimePoint& x, double h = 1e-3, double m = 1.0,
                       double tolerance = std::numeric_limits<double>::infinity());

// d_mu Psi by the 4th-order stencil
std::array<Multivector, 4> derivatives(const MatrixField& Psi, const SpacetimePoint& x, double h);

// Closed form from H(lambda); stationary families only.
FourVector stationary_potential(const SolutionSpec& s, const SpacetimePoint& x);

// |eA_0| from (1/2) div(rho s x v)/rho + P_0 - m v_0, with the divergence by finite differences.
double circularity_residual(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-3);

// f'' - 4(m^2 + pz^2 - eps^2) f / B^2 + f' ((M+1)/lambda + 2 H'/H) at lambda
double radial_ode_residual(const SolutionSpec& s, double lambda, double h = 1e-3);

}  // namespace inverter
}  // namespace rdi
