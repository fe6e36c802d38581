#include <random>

#include "doctest.h"
#include "rdi/errors.hpp"
#include "rdi/verifier.hpp"

using namespace rdi;
using namespace rdi::verifier;

namespace {
SolutionSpec make(Family f, int n, int l, int M, double B = 1.0) {
  SolutionSpec s;
  s.family = f;
  s.n = n;
  s.l = l;
  s.M = M;
  s.B = B;
  return s;
}
}  // namespace

TEST_CASE("Bessel addition theorem, both sign conventions") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 20; ++i) {
    const int nu = static_cast<int>(rng() % 11);
    const double rho = 5 * U(rng), rb = 2 * U(rng), ph = 6.28 * U(rng), pb = 6.28 * U(rng);
    CHECK(bessel_addition_check(nu, rho, rb, ph, pb, 40) < 1e-10);
    CHECK(bessel_addition_check(nu, rho, rb, ph, pb, 40, true) < 1e-10);
  }
}

TEST_CASE("Bessel addition with too few terms is detectably wrong") {
  CHECK(bessel_addition_check(2, 4.0, 1.8, 0.3, 1.1, 2) > 1e-6);
}

TEST_CASE("appendix identity and nilpotency") {
  const auto w = Waveform::circular(0.5, 0.8);
  CHECK(appendix_null_rotation_check(w, M_PI / 4, 1.3) < 1e-12);
  const Multivector L = appendix_LA(w, 0.9, 1.3);
  const Multivector D = L - sta::identity();
  CHECK(sta::max_abs(D * D) < 1e-14);
  CHECK(std::abs(L.determinant() - 1.0) < 1e-12);
  CHECK(sta::max_abs(appendix_LA(Waveform::circular(0, 1), 0.9, 1.3) - sta::identity()) == 0.0);
}

TEST_CASE("dual-path dressed spinors agree") {
  SolutionSpec v = make(Family::VolkovBessel, 0, 1, 0);
  v.energy = 1.5;
  v.waveform = Waveform::circular(0.4, 0.7);
  SolutionSpec r = make(Family::Redmond, 1, 1, 0);
  r.waveform = Waveform::linear(0.3, 1.1);
  for (double t : {0.5, 1.7, 3.2}) {
    const SpacetimePoint x(t, 1.1, -0.7, 0.4);
    CHECK(volkov_equivalence(v, x) < 1e-10);
    CHECK(dressing_equivalence(r, x) < 1e-10);
  }
}

TEST_CASE("negative controls are detected by the Dirac residual") {
  SolutionSpec s = make(Family::HomogeneousB_degenerate, 1, 1, 0);
  const SpacetimePoint x(1, 1.2, 0.8, 0.5);
  CHECK(dirac_residual(s, x).column < 1e-7);
  SolutionSpec a = s;
  a.potential_scale = 1.01;
  CHECK(dirac_residual(a, x).column > 1e-4);
  SolutionSpec b = s;
  b.profile_perturbation = 0.01;
  CHECK(dirac_residual(b, x).column > 1e-4);
}

TEST_CASE("sample points are reproducible and avoid the axis") {
  SuiteConfig cfg;
  cfg.points = 50;
  const SolutionSpec s = make(Family::InhomogeneousB, 1, 0, 0);
  const auto a = sample_points(s, cfg, 7), b = sample_points(s, cfg, 7), c = sample_points(s, cfg, 8);
  REQUIRE(a.size() == 50);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (const auto& x : a) {
    CHECK(std::hypot(x[1], x[2]) > cfg.axis_exclusion);
    for (int k = 0; k < 4; ++k) CHECK((std::abs(x[k]) >= cfg.box_lo - 1e-12 && std::abs(x[k]) <= cfg.box_hi));
  }
}

TEST_CASE("uniform-field orbit closes") {
  const SolutionSpec s = make(Family::HomogeneousB_degenerate, 1, 0, 0);
  const OrbitReport o = orbit_closure(s, SpacetimePoint(0, 0.9, 0, 0));
  CHECK(o.radial_drift < 1e-6);
  CHECK(o.period > 0);
  const double ratio = proper_time_ratio(s);
  CHECK(std::abs(ratio - catalog::eigenvalue(s)) / catalog::eigenvalue(s) < 1e-4);
}

TEST_CASE("free rest particle streamline is a straight time line") {
  const ColumnField pw = spinor::plane_wave(Vec3::Zero(), 1.0, Vec3(0, 0, 1), 0, 1);
  const Observables o = spinor::observables(pw(SpacetimePoint(0, 1, 1, 1)));
  CHECK(o.current.tail<3>().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tetrad residual: kinematic invariants and beta") {
  const SolutionSpec s = make(Family::HomogeneousB_nondegenerate, 1, 1, 0);
  const TetradResidual r = tetrad_residual(catalog::spinor(s, SpacetimePoint(0, 0.7, 0.2, 0)));
  CHECK(r.kinematic < 1e-10);
  CHECK(r.beta >= 0);
}

TEST_CASE("report JSON round-trips") {
  SuiteConfig cfg;
  cfg.points = 5;
  cfg.checks = {"dirac", "continuity"};
  cfg.include_identities = false;
  cfg.solutions = {make(Family::HomogeneousB_degenerate, 1, 0, 0)};
  const VerificationReport rep = run_suite(cfg);
  const nlohmann::json j = rep;
  const VerificationReport back = j.get<VerificationReport>();
  CHECK(nlohmann::json(back).dump() == j.dump());
  CHECK(rep.pass());
  REQUIRE(rep.solutions.size() == 1);
  CHECK(rep.solutions[0].checks.size() == 2);
  int total = 0;
  for (int c : rep.solutions[0].checks[0].histogram) total += c;
  CHECK(total == rep.solutions[0].checks[0].points);
}

TEST_CASE("spec JSON round-trips, waveform included") {
  SolutionSpec s = make(Family::InhomogeneousB_Laser, 2, 0, 1, 1.3);
  s.waveform = Waveform::pulse(0.5, 0.9, 3.0);
  const SolutionSpec b = spec_from_json(spec_to_json(s));
  CHECK(spec_to_json(b).dump() == spec_to_json(s).dump());
  CHECK_THROWS_AS(spec_from_json({{"family", "nosuch"}}), DomainError);
}

TEST_CASE("suite runs are deterministic across thread counts") {
  SuiteConfig cfg;
  cfg.points = 8;
  cfg.checks = {"dirac", "tetrad"};
  cfg.solutions = default_specs(Family::Redmond);
  cfg.threads = 1;
  const std::string a = nlohmann::json(run_suite(cfg)).dump();
  cfg.threads = 4;
  CHECK(nlohmann::json(run_suite(cfg)).dump() == a);
}

TEST_CASE("a corrupted solution fails the suite and names the check") {
  SuiteConfig cfg;
  cfg.points = 5;
  cfg.checks = {"dirac"};
  cfg.include_identities = false;
  SolutionSpec s = make(Family::HomogeneousB_degenerate, 1, 0, 0);
  s.potential_scale = 1.01;
  cfg.solutions = {s};
  const VerificationReport rep = run_suite(cfg);
  CHECK_FALSE(rep.pass());
  REQUIRE(rep.failing_checks().size() == 1);
  CHECK(rep.failing_checks()[0].find(":dirac") != std::string::npos);
}
