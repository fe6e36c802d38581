#pragma once
// Closed-form solution families, their potentials, fields and averages.
#include <optional>
#include <string>
#include <vector>

#include "rdi/spinor.hpp"
#include "rdi/waveform.hpp"

namespace rdi {

enum class Family {
  FreeBessel,
  HomogeneousB_degenerate,
  HomogeneousB_nondegenerate,
  InhomogeneousB,
  VolkovBessel,
  Redmond,
  InhomogeneousB_Laser
};

// Natural units by default. Only the cli uses these to rescale output.
struct UnitConstants {
  double hbar = 1.0, c = 1.0, mu0 = 1.0, mass = 1.0;  // mass: the particle mass m = 1 maps to this
  static UnitConstants natural() { return {}; }
  static UnitConstants si() { return {1.054571817e-34, 299792458.0, 1.25663706212e-6, 9.1093837015e-31}; }
  // length and energy carried by one natural unit
  double length() const { return hbar / (mass * c); }
  double energy() const { return mass * c * c; }
};

struct SolutionSpec {
  Family family = Family::HomogeneousB_degenerate;
  int n = 0;
  // l for the Landau and Bessel families (M = 2l or M = -2l), M for the inhomogeneous ones.
  int l = 0;
  int M = 0;
  double B = 1.0;
  double pz = 0.0;
  double m = 1.0;
  double energy = 0.0;  // Bessel families only: epsilon > sqrt(m^2 + pz^2)
  std::optional<Waveform> waveform;
  // negative-control hooks: f -> f (1 + c lambda), eA -> s eA
  double profile_perturbation = 0.0;
  double potential_scale = 1.0;
};

struct RadialProfile {
  double f = 0, H = 0;
};

struct PotentialSplit {
  FourVector total, static_part, radiation, laser;
};

struct FieldSample {
  Vec3 eE = Vec3::Zero(), eB = Vec3::Zero();
  double charge_source = 0;  // e mu0 rho_e
  Vec3 current_source = Vec3::Zero();
};

struct Averages {
  double rho = 0;   // signed psibar psi
  double J0 = 0;
  double Jphi = 0;  // J . phi-hat about the shifted axis
  double Jz = 0;
  double x = 0, y = 0;  // J0-weighted centroid of (x', y')
};

struct VelocitySpin {
  FourVector v, s;
};

namespace catalog {

std::string family_name(Family f);
// accepts the family_name spelling or the short cli aliases
std::optional<Family> parse_family(const std::string& s);
const std::vector<Family>& all_families();
bool is_dressed(Family f);
bool is_stationary(Family f);
// dressed family -> its stationary seed
Family seed_family(Family f);
SolutionSpec seed_spec(const SolutionSpec& s);

void validate(const SolutionSpec& s);
// orbital exponent M of the column form (2l, -2l or M)
int orbital_M(const SolutionSpec& s);

double eigenvalue(const SolutionSpec& s);
// normalization making 2 pi int J0 lambda dlambda = 1
double normalization(const SolutionSpec& s);
// nominal closed-form constant; it does not normalize to one and is kept for comparison
double normalization_nominal(const SolutionSpec& s);

RadialProfile radial_profile(const SolutionSpec& s, double lambda);
// Reduced radial pair q0 = N lambda^{M/2} H f, q1 = N lambda^{M/2} H f'.
void reduced_profile(const SolutionSpec& s, double lambda, double& q0, double& q1);

// Explicit column form; dressed families use their laser closed forms.
ColumnSpinor spinor(const SolutionSpec& s, const SpacetimePoint& x);
Multivector matrix_spinor(const SolutionSpec& s, const SpacetimePoint& x);
ColumnField spinor_field(const SolutionSpec& s);
MatrixField matrix_field(const SolutionSpec& s);

// N = (1/2 eps omega)(gamma_0 + gamma_3)(fdot_1 gamma_1 + fdot_2 gamma_2)
Multivector laser_generator(const Waveform& wf, double xi, double eps);
// gauge phase Phi(xi) = -(1/2 eps omega^3) int_0^xi |fdot|^2
double gauge_phase(const Waveform& wf, double xi, double eps);
// (x', y') = (x + f1/(eps omega^2), y + f2/(eps omega^2))
void shifted_coords(const Waveform& wf, double eps, const SpacetimePoint& x, double& xp, double& yp);
// Psi_T = (1 + N) Psi(t, x', y', z) exp(gamma2gamma1 Phi); checks N^2 = 0.
MatrixField laser_dress(MatrixField stationary, const Waveform& wf, double eps);

// Closed polar factors of 1 + N = rotation * boost.
struct LaserPolar {
  double theta = 0, vartheta = 0, w = 0;
  Multivector rotation, boost;
};
LaserPolar laser_polar(const Waveform& wf, double xi, double eps);

PotentialSplit potential_split(const SolutionSpec& s, const SpacetimePoint& x);
FourVector potential(const SolutionSpec& s, const SpacetimePoint& x);
FieldSample fields(const SolutionSpec& s, const SpacetimePoint& x);
// E, B from potential() by central differences, for cross-checks
FieldSample fields_fd(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-4);

Averages averages_closed(const SolutionSpec& s, double xi = 0.0);
Averages averages_quadrature(const SolutionSpec& s, double xi = 0.0, int n_phi = 64);

VelocitySpin velocity_spin(const SolutionSpec& s, const SpacetimePoint& x);

}  // namespace catalog
}  // namespace rdi
