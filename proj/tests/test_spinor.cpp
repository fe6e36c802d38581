#include <random>

#include "doctest.h"
#include "rdi/errors.hpp"
#include "rdi/spinor.hpp"
#include "rdi/verifier.hpp"

using namespace rdi;
using namespace rdi::sta;

namespace {

ColumnSpinor random_column(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  ColumnSpinor c;
  for (int k = 0; k < 4; ++k) c[k] = Cplx(N(rng), N(rng));
  return c;
}

FourVector zero_potential(const SpacetimePoint&) { return FourVector::Zero(); }

}  // namespace

TEST_CASE("column and matrix forms round-trip") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const ColumnSpinor psi = random_column(rng);
    CHECK((spinor::to_column(spinor::from_column(psi)) - psi).norm() < 1e-14);
    FourVector r, s;
    spinor::to_components(psi, r, s);
    CHECK((spinor::from_components(r, s) - psi).norm() < 1e-14);
  }
}

TEST_CASE("matrix spinor is an even element: commutes with the pseudoscalar") {
  std::mt19937_64 rng(22);
  const Multivector Psi = spinor::from_column(random_column(rng));
  CHECK(max_abs(Psi * pseudoscalar() - pseudoscalar() * Psi) < 1e-14);
}

TEST_CASE("factor and assemble are inverse") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const Multivector Psi = spinor::from_column(random_column(rng));
    const MatrixSpinor f = spinor::factor(Psi);
    CHECK(f.rho > 0);
    CHECK(max_abs(f.rotor * reversion(f.rotor) - identity()) < 1e-10);
    CHECK(max_abs(spinor::assemble(f) - Psi) < 1e-10 * max_abs(Psi));
  }
}

TEST_CASE("density and angle: Psi Psi~ = rho exp(i beta)") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 20; ++i) {
    const Multivector Psi = spinor::from_column(random_column(rng));
    double rho, beta;
    spinor::density_angle(Psi, rho, beta);
    const Multivector want = rho * (std::cos(beta) * identity() + std::sin(beta) * pseudoscalar());
    CHECK(max_abs(Psi * reversion(Psi) - want) < 1e-12);
  }
}

TEST_CASE("property: observables form an orthonormal tetrad") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 50; ++i) {
    const Observables o = spinor::observables(random_column(rng));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(std::abs(dot(o.tetrad[a], o.tetrad[b]) - (a == b ? eta(a) : 0)) < 1e-10);
    CHECK(o.tetrad[0][0] > 0);
    CHECK((o.current - o.rho * o.tetrad[0]).cwiseAbs().maxCoeff() < 1e-10 * o.current[0]);
    CHECK(std::abs(o.current[0] - o.current.tail<3>().norm()) >= 0);  // timelike or null
    CHECK(dot(o.current, o.current) >= -1e-12);
  }
}

TEST_CASE("positive- and negative-energy plane waves solve the free equation") {
  const Vec3 p(0.3, -0.7, 1.1);
  for (int sign : {+1, -1})
    for (double angle : {0.0, 0.9}) {
      const ColumnField psi = spinor::plane_wave(p, 1.3, Vec3(1, 1, 0), angle, sign);
      const auto r = verifier::dirac_residual(psi, zero_potential, 1.3, SpacetimePoint(0.2, 0.5, -1, 2));
      CHECK(r.column <= 1e-8);
    }
}

TEST_CASE("plane-wave current is along the four-momentum") {
  const Vec3 p(0.5, 0.2, -0.4);
  const double m = 1, E = std::sqrt(m * m + p.squaredNorm());
  const Observables o = spinor::observables(spinor::plane_wave(p, m, Vec3(0, 0, 1), 0, 1)(SpacetimePoint(0, 1, 2, 3)));
  const FourVector u(E / m, p[0] / m, p[1] / m, p[2] / m);
  CHECK((o.tetrad[0] - u).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(o.beta) < 1e-12);
}

TEST_CASE("negative-energy plane wave has beta = pi") {
  const Observables o =
      spinor::observables(spinor::plane_wave(Vec3(0.1, 0, 0.2), 1, Vec3(0, 0, 1), 0, -1)(SpacetimePoint(0, 0, 0, 0)));
  CHECK(std::abs(std::abs(o.beta) - M_PI) < 1e-12);
}

TEST_CASE("observables reject an empty spinor") {
  CHECK_THROWS_AS(spinor::observables(ColumnSpinor::Zero().eval()), NullDensity);
  CHECK_THROWS_AS(spinor::plane_wave(Vec3::Zero(), 0, Vec3(0, 0, 1), 0, 1), DomainError);
}
