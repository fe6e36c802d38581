#include "doctest.h"
#include "rdi/catalog.hpp"
#include "rdi/errors.hpp"
#include "rdi/inverter.hpp"

using namespace rdi;

namespace {
SolutionSpec make(Family f, int n, int l, int M, double B = 1.0, double pz = 0.0) {
  SolutionSpec s;
  s.family = f;
  s.n = n;
  s.l = l;
  s.M = M;
  s.B = B;
  s.pz = pz;
  return s;
}
}  // namespace

TEST_CASE("a free plane wave inverts to zero potential") {
  const ColumnField pw = spinor::plane_wave(Vec3(0.4, 0.1, -0.3), 1.0, Vec3(0, 1, 0), 0.5, 1);
  const MatrixField Psi = [pw](const SpacetimePoint& x) { return spinor::from_column(pw(x)); };
  const PotentialSample p = inverter::invert(Psi, SpacetimePoint(0.3, 1, 2, -1), 1e-3, 1.0);
  CHECK(p.eA.cwiseAbs().maxCoeff() < 1e-8);
  CHECK(p.max_constrained() < 1e-8);
}

TEST_CASE("inversion recovers the uniform-field potential") {
  const SolutionSpec s = make(Family::HomogeneousB_degenerate, 1, 1, 0, 0.9, 0.3);
  const SpacetimePoint x(0.5, 0.8, -1.2, 0.4);
  const PotentialSample p = inverter::invert(catalog::matrix_field(s), x, 1e-3, s.m);
  CHECK((p.eA - catalog::potential(s, x)).cwiseAbs().maxCoeff() < 2e-7);
  CHECK((inverter::stationary_potential(s, x) - catalog::potential(s, x)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(p.max_constrained() < 2e-7);
  CHECK(p.richardson < 1e-6);
}

TEST_CASE("inversion recovers the dressed potential") {
  SolutionSpec s = make(Family::Redmond, 1, 0, 0);
  s.waveform = Waveform::circular(0.4, 0.7);
  const SpacetimePoint x(1.1, 0.7, 1.4, 0.2);
  const PotentialSample p = inverter::invert(catalog::matrix_field(s), x, 1e-3, s.m);
  CHECK((p.eA - catalog::potential(s, x)).cwiseAbs().maxCoeff() < 2e-7);
}

TEST_CASE("inversion preconditions") {
  const MatrixField Psi = catalog::matrix_field(make(Family::HomogeneousB_degenerate, 1, 0, 0));
  CHECK_THROWS_AS(inverter::invert(Psi, SpacetimePoint(0, 1, 1, 0), 0.5), DomainError);
  CHECK_THROWS_AS(inverter::invert(Psi, SpacetimePoint(0, 1, 1, 0), 1e-8), DomainError);
  const MatrixField zero = [](const SpacetimePoint&) { return Multivector::Zero().eval(); };
  CHECK_THROWS_AS(inverter::invert(zero, SpacetimePoint(0, 1, 1, 0)), SingularSpinor);
  CHECK_THROWS_AS(inverter::invert(Psi, SpacetimePoint(0, 1, 1, 0), 1e-3, 1.0, 1e-30), StepTooLarge);
}

TEST_CASE("fourth-order derivatives are accurate") {
  const ColumnField pw = spinor::plane_wave(Vec3(0.2, 0, 0), 1.0, Vec3(0, 0, 1), 0, 1);
  const MatrixField Psi = [pw](const SpacetimePoint& x) { return spinor::from_column(pw(x)); };
  const double E = std::sqrt(1.04);
  const SpacetimePoint x(0.4, 0.3, 0, 0);
  const auto d = inverter::derivatives(Psi, x, 1e-3);
  // d_t Psi = -E Psi g2g1 for a positive-energy wave
  const Multivector want = -E * Psi(x) * sta::gamma(2) * sta::gamma(1);
  CHECK(sta::max_abs(d[0] - want) < 1e-10);
}

TEST_CASE("circularity and radial equation residuals are small") {
  for (const auto& s : {make(Family::HomogeneousB_degenerate, 2, 1, 0, 0.8),
                        make(Family::HomogeneousB_nondegenerate, 1, 2, 0), make(Family::InhomogeneousB, 1, 0, 1, 1.2, 0.4)}) {
    CHECK(inverter::circularity_residual(s, SpacetimePoint(0, 0.9, -0.6, 0.3)) < 1e-6);
    for (double lam : {0.3, 1.0, 2.2}) CHECK(inverter::radial_ode_residual(s, lam) < 1e-6);
  }
}
