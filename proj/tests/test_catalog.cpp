#include <random>

#include "doctest.h"
#include "rdi/catalog.hpp"
#include "rdi/errors.hpp"
#include "rdi/verifier.hpp"

using namespace rdi;
using namespace rdi::sta;

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

SolutionSpec dressed(Family f, int n, int l, int M, const Waveform& w, double B = 1.0) {
  SolutionSpec s = make(f, n, l, M, B);
  s.waveform = w;
  if (f == Family::VolkovBessel) s.energy = 1.6;
  return s;
}

std::vector<SpacetimePoint> points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.5, 3.0), S(-1, 1);
  std::vector<SpacetimePoint> out;
  while (static_cast<int>(out.size()) < count) {
    const SpacetimePoint x(U(rng), U(rng) * (S(rng) > 0 ? 1 : -1), U(rng) * (S(rng) > 0 ? 1 : -1), U(rng));
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("family names parse back, aliases included") {
  for (Family f : catalog::all_families()) CHECK(catalog::parse_family(catalog::family_name(f)) == f);
  CHECK(catalog::parse_family("redmond") == Family::Redmond);
  CHECK(catalog::parse_family("inhomogeneous") == Family::InhomogeneousB);
  CHECK_FALSE(catalog::parse_family("nosuch").has_value());
  CHECK(catalog::all_families().size() == 7);
}

TEST_CASE("eigenvalues of the magnetic families") {
  CHECK(std::abs(catalog::eigenvalue(make(Family::HomogeneousB_degenerate, 1, 0, 0)) - std::sqrt(3.0)) < 1e-12);
  CHECK(std::abs(catalog::eigenvalue(make(Family::HomogeneousB_nondegenerate, 1, 1, 0)) - std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(catalog::eigenvalue(make(Family::InhomogeneousB, 1, 0, 0)) - std::sqrt(19.0 / 18.0)) < 1e-12);
  // p_z adds in quadrature
  const double e0 = catalog::eigenvalue(make(Family::InhomogeneousB, 2, 0, 1));
  const double e1 = catalog::eigenvalue(make(Family::InhomogeneousB, 2, 0, 1, 1.0, 0.7));
  CHECK(std::abs(e1 * e1 - e0 * e0 - 0.49) < 1e-12);
}

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS_AS(catalog::validate(make(Family::HomogeneousB_degenerate, -1, 0, 0)), DomainError);
  SolutionSpec s = make(Family::FreeBessel, 0, 1, 0);
  s.energy = 0.5;
  CHECK_THROWS_AS(catalog::validate(s), DomainError);
  CHECK_THROWS_AS(catalog::validate(make(Family::Redmond, 1, 0, 0)), DomainError);  // no waveform
  SolutionSpec r = dressed(Family::Redmond, 1, 0, 0, Waveform::circular(0.3, 0.8));
  r.pz = 0.2;
  CHECK_THROWS_AS(catalog::validate(r), DomainError);
}

TEST_CASE("every family solves the Dirac equation with its own potential") {
  const auto w = Waveform::circular(0.4, 0.7);
  const std::vector<SolutionSpec> specs = {
      [] {
        SolutionSpec s = make(Family::FreeBessel, 0, 2, 0, 0.9, 0.3);
        s.energy = 1.8;
        return s;
      }(),
      make(Family::HomogeneousB_degenerate, 2, 1, 0, 0.8, 0.4),
      make(Family::HomogeneousB_nondegenerate, 1, 2, 0, 1.1),
      make(Family::InhomogeneousB, 1, 1, 1, 1.2, 0.3),
      dressed(Family::VolkovBessel, 0, 1, 0, w),
      dressed(Family::Redmond, 1, 1, 0, w),
      dressed(Family::InhomogeneousB_Laser, 2, 0, 1, w)};
  for (const auto& s : specs)
    for (const auto& x : points(10, 31)) CHECK(verifier::dirac_residual(s, x).column <= 1e-7);
}

TEST_CASE("laser generator is nilpotent and vanishes without a drive") {
  const auto w = Waveform::linear(0.5, 1.2);
  for (double xi : {0.0, 0.4, 1.9, 3.3}) {
    const Multivector N = catalog::laser_generator(w, xi, 1.4);
    CHECK(max_abs(N * N) < 1e-15);
  }
  const auto zero = Waveform::circular(0.0, 1.0);
  CHECK(max_abs(catalog::laser_generator(zero, 0.7, 1.2)) == 0.0);
  CHECK(catalog::gauge_phase(zero, 0.7, 1.2) == 0.0);
}

TEST_CASE("gauge phase of a circular drive grows linearly") {
  const double a = 0.4, om = 0.7, eps = 1.5;
  const auto w = Waveform::circular(a, om);
  // derivatives are in xi, so |fdot|^2 = a^2 for a circular drive
  const double xi = 2.3;
  CHECK(catalog::gauge_phase(w, xi, eps) == doctest::Approx(-a * a * xi / (2 * eps * om * om * om)).epsilon(1e-12));
}

TEST_CASE("closed polar factors of 1 + N") {
  const auto w = Waveform::pulse(0.6, 0.9, 2.0);
  for (double xi : {-1.0, 0.2, 1.4}) {
    const double eps = 1.3;
    const Multivector one_plus_N = identity() + catalog::laser_generator(w, xi, eps);
    const catalog::LaserPolar p = catalog::laser_polar(w, xi, eps);
    CHECK(max_abs(p.rotation * p.boost - one_plus_N) < 1e-12);
    // rotation after boost: decompose the adjoint, which puts the boost first
    const RotorFactors f = polar_decompose(one_plus_N.adjoint());
    CHECK(max_abs(f.rotation.adjoint() - p.rotation) < 1e-10);
    CHECK(max_abs(f.boost - p.boost) < 1e-10);
  }
}

TEST_CASE("dressing with a zero drive reproduces the stationary state") {
  const auto zero = Waveform::circular(0.0, 0.8);
  const SolutionSpec d = dressed(Family::Redmond, 1, 2, 0, zero);
  const SolutionSpec st = make(Family::HomogeneousB_degenerate, 1, 2, 0);
  for (const auto& x : points(5, 32)) CHECK((catalog::spinor(d, x) - catalog::spinor(st, x)).norm() == 0.0);
}

TEST_CASE("closed-form fields match curls of the potential") {
  const auto w = Waveform::circular(0.3, 0.9);
  for (const auto& s : {make(Family::HomogeneousB_degenerate, 1, 0, 0), make(Family::InhomogeneousB, 1, 0, 1),
                        dressed(Family::Redmond, 1, 0, 0, w), dressed(Family::InhomogeneousB_Laser, 1, 0, 0, w)})
    for (const auto& x : points(8, 33)) {
      const FieldSample a = catalog::fields(s, x), b = catalog::fields_fd(s, x);
      CHECK((a.eE - b.eE).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((a.eB - b.eB).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("static potential examples") {
  const SpacetimePoint x(0, 0.6, -0.8, 0);
  const FourVector A = catalog::potential(make(Family::HomogeneousB_degenerate, 1, 0, 0, 2.0), x);
  // (0, -y B^2/2, x B^2/2, 0)
  CHECK(A[1] == doctest::Approx(0.8 * 2.0));
  CHECK(A[2] == doctest::Approx(0.6 * 2.0));
  const FourVector Ai = catalog::potential(make(Family::InhomogeneousB, 1, 0, 0, 2.0), x);
  // g = B / (4 r) with r = 1
  CHECK(Ai[1] == doctest::Approx(0.8 * 0.5));
  CHECK_THROWS_AS(catalog::potential(make(Family::InhomogeneousB, 1, 0, 0), SpacetimePoint(0, 0, 0, 1)), OnAxis);
  SolutionSpec fb = make(Family::FreeBessel, 0, 0, 0);
  fb.energy = 1.2;
  CHECK(catalog::potential(fb, x).isZero());
}

TEST_CASE("dressed magnetic fields: E.B = 0 and the invariant -B^2/16r'^2") {
  const auto w = Waveform::linear(0.4, 0.8);
  const SolutionSpec s = dressed(Family::InhomogeneousB_Laser, 1, 0, 0, w, 1.3);
  const double eps = catalog::eigenvalue(s);
  for (const auto& x : points(10, 34)) {
    const FieldSample f = catalog::fields(s, x);
    CHECK(std::abs(f.eE.dot(f.eB)) < 1e-12);
    double xp, yp;
    catalog::shifted_coords(w, eps, x, xp, yp);
    const double r2 = xp * xp + yp * yp;
    CHECK(std::abs(f.eE.squaredNorm() - f.eB.squaredNorm() + 1.3 * 1.3 / (16 * r2)) < 1e-12);
  }
}

TEST_CASE("normalization and the density average") {
  for (const auto& s : {make(Family::HomogeneousB_degenerate, 2, 1, 0, 0.8),
                        make(Family::HomogeneousB_nondegenerate, 1, 1, 0, 1.2, 0.3),
                        make(Family::InhomogeneousB, 2, 0, 1, 1.1)}) {
    const Averages q = catalog::averages_quadrature(s);
    CHECK(std::abs(q.J0 - 1) < 1e-8);
    CHECK(std::abs(q.rho - s.m / catalog::eigenvalue(s)) < 1e-8);
    CHECK(std::abs(q.Jz - s.pz / catalog::eigenvalue(s)) < 1e-8);
  }
}

TEST_CASE("inhomogeneous azimuthal current average") {
  const SolutionSpec s = make(Family::InhomogeneousB, 2, 0, 1, 1.3);
  const double eps = catalog::eigenvalue(s);
  const double want = -1.3 * 2 * (1 + 2 + 1) / (std::pow(1 + 4 + 1, 2) * eps);
  CHECK(std::abs(catalog::averages_quadrature(s).Jphi - want) < 1e-8);
  CHECK(std::abs(catalog::averages_closed(s).Jphi - want) < 1e-12);
}

TEST_CASE("dressed averages follow the drive") {
  const auto w = Waveform::circular(0.4, 0.7);
  const SolutionSpec s = dressed(Family::Redmond, 1, 1, 0, w);
  const double eps = catalog::eigenvalue(s);
  const double T = 0.4 * 0.4 / (2 * eps * eps * 0.7 * 0.7);
  for (double xi : {0.0, 1.1, 2.9}) {
    const Averages q = catalog::averages_quadrature(s, xi);
    CHECK(std::abs(q.J0 - (1 + T)) < 1e-8);
    CHECK(std::abs(q.Jz - T) < 1e-8);
  }
}

TEST_CASE("velocity and spin closed forms match the observables") {
  const auto w = Waveform::circular(0.4, 0.7);
  for (const auto& s : {make(Family::HomogeneousB_degenerate, 1, 1, 0, 1, 0.5), make(Family::InhomogeneousB, 1, 0, 2),
                        dressed(Family::Redmond, 2, 0, 0, w), dressed(Family::InhomogeneousB_Laser, 1, 0, 1, w)})
    for (const auto& x : points(10, 35)) {
      const Observables o = spinor::observables(catalog::spinor(s, x));
      const VelocitySpin vs = catalog::velocity_spin(s, x);
      CHECK((vs.v - o.tetrad[0]).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((vs.s - o.tetrad[3]).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("property: radial current vanishes for stationary states") {
  const SolutionSpec s = make(Family::HomogeneousB_nondegenerate, 2, 1, 0, 0.9);
  for (const auto& x : points(20, 36)) {
    const Observables o = spinor::observables(catalog::spinor(s, x));
    const double r = std::hypot(x[1], x[2]);
    CHECK(std::abs(o.current[1] * x[1] + o.current[2] * x[2]) / r < 1e-12 * o.current[0] + 1e-300);
    CHECK(std::abs(o.current[3]) < 1e-14);
  }
}

TEST_CASE("both normalization constants are positive") {
  const SolutionSpec s = make(Family::HomogeneousB_degenerate, 1, 1, 0);
  CHECK(catalog::normalization(s) > 0);
  CHECK(catalog::normalization_nominal(s) > 0);
}

TEST_CASE("uniform-field azimuthal current average: exact moments") {
  // exact rational multiples of sqrt(2 pi) B / eps from symbolic integration
  const double c = std::sqrt(2 * M_PI);
  const SolutionSpec d = make(Family::HomogeneousB_degenerate, 1, 1, 0);
  const SolutionSpec nd = make(Family::HomogeneousB_nondegenerate, 1, 1, 0);
  CHECK(std::abs(catalog::averages_closed(d).Jphi + 3 * c / 16 / catalog::eigenvalue(d)) < 1e-12);
  CHECK(std::abs(catalog::averages_closed(nd).Jphi + 5 * c / 8 / catalog::eigenvalue(nd)) < 1e-12);
  const SolutionSpec d2 = make(Family::HomogeneousB_degenerate, 2, 1, 0, 0.7, 0.3);
  CHECK(std::abs(catalog::averages_closed(d2).Jphi - catalog::averages_quadrature(d2).Jphi) < 1e-10);
}
