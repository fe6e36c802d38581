#include "rdi/inverter.hpp"

#include <cmath>

#include "rdi/errors.hpp"

namespace rdi {

using namespace rdi::sta;

double PotentialSample::max_constrained() const {
  double r = 0;
  for (int k : kConstrained) r = std::max(r, grade_residuals[k - 1]);
  return r;
}

namespace inverter {
namespace {

// eA-slash at step h; also returns the full matrix for the trace projections
Multivector invert_at(const MatrixField& Psi, const SpacetimePoint& x, double h, double m) {
  const Multivector P = Psi(x);
  const double scale = max_abs(P);
  if (scale == 0 || std::abs(P.determinant()) < 1e-12 * std::pow(scale, 4))
    throw SingularSpinor("matrix spinor is not invertible here");
  const auto d = derivatives(Psi, x, h);
  Multivector dslash = Multivector::Zero();
  for (int mu = 0; mu < 4; ++mu) dslash += gamma_up(mu) * d[mu];
  const Multivector Pinv = P.inverse();
  return dslash * gamma(2) * gamma(1) * Pinv - m * P * gamma(0) * Pinv;
}

}  // namespace

std::array<Multivector, 4> derivatives(const MatrixField& Psi, const SpacetimePoint& x, double h) {
  std::array<Multivector, 4> d;
  for (int mu = 0; mu < 4; ++mu) {
    SpacetimePoint p1 = x, p2 = x, m1 = x, m2 = x;
    p1[mu] += h;
    p2[mu] += 2 * h;
    m1[mu] -= h;
    m2[mu] -= 2 * h;
    d[mu] = (8.0 * (Psi(p1) - Psi(m1)) - (Psi(p2) - Psi(m2))) / (12 * h);
  }
  return d;
}

PotentialSample invert(const MatrixField& Psi, const SpacetimePoint& x, double h, double m, double tolerance) {
  if (!(h >= 1e-6 && h <= 1e-2)) throw DomainError("finite-difference step must lie in [1e-6, 1e-2]");
  const Multivector A = invert_at(Psi, x, h, m);
  const Multivector A2 = invert_at(Psi, x, h / 2, m);
  PotentialSample s;
  s.eA = vector_part(A);
  for (int k = 1; k <= 16; ++k) s.grade_residuals[k - 1] = std::abs(trace_project(A, k));
  s.richardson = (vector_part(A2) - s.eA).cwiseAbs().maxCoeff();
  if (s.richardson > tolerance) throw StepTooLarge("Richardson estimate exceeds the requested tolerance");
  return s;
}

FourVector stationary_potential(const SolutionSpec& s, const SpacetimePoint& x) {
  if (!catalog::is_stationary(s.family)) throw DomainError("stationary_potential needs a stationary family");
  SolutionSpec t = s;
  t.potential_scale = 1.0;
  return catalog::potential(t, x);
}

double circularity_residual(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  if (!catalog::is_stationary(s.family)) throw DomainError("circularity_residual needs a stationary family");
  const double eps = catalog::eigenvalue(s);
  auto W = [&](const SpacetimePoint& p, double* scalar, double* v0) -> Vec3 {
    const auto o = spinor::observables(catalog::spinor(s, p));
    const Vec3 v = o.tetrad[0].tail<3>(), sp = o.tetrad[3].tail<3>();
    if (scalar) *scalar = o.scalar;
    if (v0) *v0 = o.tetrad[0][0] * o.rho;
    return o.scalar * sp.cross(v);
  };
  double div = 0;
  for (int k = 1; k <= 3; ++k) {
    SpacetimePoint p1 = x, p2 = x, m1 = x, m2 = x;
    p1[k] += h;
    p2[k] += 2 * h;
    m1[k] -= h;
    m2[k] -= 2 * h;
    div += (8 * (W(p1, nullptr, nullptr)[k - 1] - W(m1, nullptr, nullptr)[k - 1]) -
            (W(p2, nullptr, nullptr)[k - 1] - W(m2, nullptr, nullptr)[k - 1])) /
           (12 * h);
  }
  double a = 0, J0 = 0;
  W(x, &a, &J0);
  if (a == 0) throw NullDensity("scalar density vanishes");
  return std::abs(0.5 * div / a + eps - s.m * J0 / a);
}

double radial_ode_residual(const SolutionSpec& s, double lam, double h) {
  if (!catalog::is_stationary(s.family)) throw DomainError("radial ODE applies to stationary families");
  if (lam - 2 * h <= 0) throw DomainError("lambda too close to the axis for the stencil");
  auto f = [&](double l) { return catalog::radial_profile(s, l).f; };
  const double f0 = f(lam), fp1 = f(lam + h), fm1 = f(lam - h), fp2 = f(lam + 2 * h), fm2 = f(lam - 2 * h);
  const double d1 = (8 * (fp1 - fm1) - (fp2 - fm2)) / (12 * h);
  const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
  const double eps = catalog::eigenvalue(s);
  double dlnH = 0;
  switch (catalog::seed_family(s.family)) {
    case Family::HomogeneousB_degenerate:
    case Family::HomogeneousB_nondegenerate: dlnH = -2 * lam; break;
    case Family::InhomogeneousB: dlnH = -0.5; break;
    default: break;
  }
  const int M = catalog::orbital_M(s);
  return d2 - 4 * (s.m * s.m + s.pz * s.pz - eps * eps) * f0 / (s.B * s.B) + d1 * ((M + 1) / lam + 2 * dlnH);
}

}  // namespace inverter
}  // namespace rdi
