#pragma once
// Pointwise machine checks and the standard verification suite.
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rdi/catalog.hpp"

namespace rdi {

using PotentialField = std::function<FourVector(const SpacetimePoint&)>;

struct DiracResidual {
  double column = 0;  // |i g^mu d_mu psi - eA psi - m psi| / max(|m psi|, floor)
  double matrix = 0;  // |dPsi g2g1 - eA Psi - m Psi g0| / max(|m Psi|, floor)
};

struct TetradResidual {
  double kinematic = 0;  // max of |v.v-1|, |s.s+1|, |v.s|, |Gram - eta|
  double beta = 0;       // |beta|
};

struct StreamlinePoint {
  SpacetimePoint x;
  double s = 0;  // proper-time parameter
};

struct OrbitReport {
  double radial_drift = 0;  // max |r - r0| over one revolution
  double period = 0;
  double revolutions = 0;
};

struct CheckRecord {
  std::string name;
  std::string grid;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  int points = 0;
  int excluded = 0;
  std::vector<int> histogram;  // counts per decade of log10(residual), [-17, 1)
  nlohmann::json detail = nlohmann::json::object();
};

struct SolutionReport {
  std::string id;
  nlohmann::json spec;
  std::vector<CheckRecord> checks;
  bool pass() const;
};

struct VerificationReport {
  std::string version;
  std::uint64_t seed = 0;
  double fd_step = 1e-3;
  nlohmann::json config = nlohmann::json::object();
  std::vector<SolutionReport> solutions;
  bool pass() const;
  std::vector<std::string> failing_checks() const;
};

void to_json(nlohmann::json& j, const CheckRecord& r);
void from_json(const nlohmann::json& j, CheckRecord& r);
void to_json(nlohmann::json& j, const SolutionReport& r);
void from_json(const nlohmann::json& j, SolutionReport& r);
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

nlohmann::json spec_to_json(const SolutionSpec& s);
SolutionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json waveform_to_json(const Waveform& w);
Waveform waveform_from_json(const nlohmann::json& j);

namespace verifier {

inline constexpr double kEpsFloor = 1e-30;
inline constexpr double kRhoFloor = 1e-10;

DiracResidual dirac_residual(const ColumnField& psi, const PotentialField& eA, double m, const SpacetimePoint& x,
                             double h = 1e-3);
DiracResidual dirac_residual(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-3);

// |d_mu J^mu| / J^0
double continuity_residual(const ColumnField& psi, const SpacetimePoint& x, double h = 1e-3);
double lorentz_gauge_residual(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-3);
// Gauss and Ampere-Maxwell laws from the closed-form fields against the closed-form sources
double maxwell_source_check(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-4);
// closed-form fields against curls of the closed-form potential
double field_consistency(const SolutionSpec& s, const SpacetimePoint& x, double h = 1e-4);

// |e^{-i nu theta} J_nu(varpi) - sum_{|k|<=K} J_k(rbar) J_{nu+k}(rho) e^{-ik(phi-phibar)}|.
// alternating: sum with (-1)^k against the left side at (phi - phibar) - pi.
double bessel_addition_check(int nu, double rho, double rhobar, double phi, double phibar, int K,
                             bool alternating = false);

// closed-form dressed spinor against the dressing of its stationary seed
double dressing_equivalence(const SolutionSpec& s, const SpacetimePoint& x);
double volkov_equivalence(const SolutionSpec& s, const SpacetimePoint& x);

// L_A against T (1 + N) T^dagger with a = -(fdot1 - i fdot2)/(eps omega)
double appendix_null_rotation_check(const Waveform& wf, double xi, double eps);
Multivector appendix_LA(const Waveform& wf, double xi, double eps);

TetradResidual tetrad_residual(const ColumnSpinor& psi);
// closed-form velocity/spin against observables
double velocity_spin_residual(const SolutionSpec& s, const SpacetimePoint& x);

// RK4 on dx/dt = J/J0, ds/dt = psibar psi / J0.
std::vector<StreamlinePoint> streamline(const SolutionSpec& s, const SpacetimePoint& x0, double t_max, int steps);
// One revolution of a stationary p_z = 0 orbit, found by angle unwinding; step halving
// guards against StepUnstable.
OrbitReport orbit_closure(const SolutionSpec& s, const SpacetimePoint& x0, int steps_per_revolution = 2000);
// J0-weighted ensemble average of ds/dt over streamlines launched on a radial grid; returns dt/ds.
double proper_time_ratio(const SolutionSpec& s, int radial_nodes = 64);

struct SuiteConfig {
  std::vector<SolutionSpec> solutions;
  std::vector<std::string> checks;  // empty = all
  int points = 100;
  std::uint64_t seed = 12345;
  double h = 1e-3;
  double axis_exclusion = 1e-3;
  double box_lo = 0.5, box_hi = 5.0;
  bool include_identities = true;
  int threads = 0;  // 0 = RDI_THREADS or hardware
};

const std::vector<std::string>& check_names();
// three parameter sets per family
std::vector<SolutionSpec> default_specs(Family f);
std::string solution_id(const SolutionSpec& s);

VerificationReport run_suite(const SuiteConfig& cfg);
SolutionReport verify_solution(const SolutionSpec& s, const SuiteConfig& cfg);
SolutionReport verify_identities(const SuiteConfig& cfg);

// Uniform points in the box with the (shifted) axis cylinder excluded.
std::vector<SpacetimePoint> sample_points(const SolutionSpec& s, const SuiteConfig& cfg, std::uint64_t stream);

int thread_count(int requested);

}  // namespace verifier
}  // namespace rdi
