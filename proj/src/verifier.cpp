#include "rdi/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "rdi/errors.hpp"
#include "rdi/inverter.hpp"
#include "rdi/quadrature.hpp"
#include "rdi/special.hpp"
#include "rdi/version.hpp"

namespace rdi {

using namespace rdi::sta;
using nlohmann::json;

bool SolutionReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

bool VerificationReport::pass() const {
  return std::all_of(solutions.begin(), solutions.end(), [](const SolutionReport& s) { return s.pass(); });
}

std::vector<std::string> VerificationReport::failing_checks() const {
  std::vector<std::string> out;
  for (const auto& s : solutions)
    for (const auto& c : s.checks)
      if (!c.pass) out.push_back(s.id + ":" + c.name);
  return out;
}

void to_json(json& j, const CheckRecord& r) {
  j = json{{"name", r.name},         {"grid", r.grid},     {"max_residual", r.max_residual},
           {"tolerance", r.tolerance}, {"pass", r.pass},     {"points", r.points},
           {"excluded", r.excluded}, {"histogram", r.histogram}, {"detail", r.detail}};
}

void from_json(const json& j, CheckRecord& r) {
  j.at("name").get_to(r.name);
  j.at("grid").get_to(r.grid);
  j.at("max_residual").get_to(r.max_residual);
  j.at("tolerance").get_to(r.tolerance);
  j.at("pass").get_to(r.pass);
  j.at("points").get_to(r.points);
  j.at("excluded").get_to(r.excluded);
  j.at("histogram").get_to(r.histogram);
  r.detail = j.at("detail");
}

void to_json(json& j, const SolutionReport& r) {
  j = json{{"id", r.id}, {"spec", r.spec}, {"checks", r.checks}, {"pass", r.pass()}};
}

void from_json(const json& j, SolutionReport& r) {
  j.at("id").get_to(r.id);
  r.spec = j.at("spec");
  j.at("checks").get_to(r.checks);
}

void to_json(json& j, const VerificationReport& r) {
  j = json{{"version", r.version}, {"seed", r.seed},           {"fd_step", r.fd_step},
           {"config", r.config},   {"solutions", r.solutions}, {"pass", r.pass()}};
}

void from_json(const json& j, VerificationReport& r) {
  j.at("version").get_to(r.version);
  j.at("seed").get_to(r.seed);
  j.at("fd_step").get_to(r.fd_step);
  r.config = j.at("config");
  j.at("solutions").get_to(r.solutions);
}

json waveform_to_json(const Waveform& w) {
  if (w.family() == Waveform::Family::Custom) throw DomainError("custom waveforms cannot be serialized");
  json j{{"family", w.name()}, {"amplitude", w.amplitude()}, {"omega", w.omega()}};
  if (w.family() == Waveform::Family::PulseEnvelope) j["tau"] = w.tau();
  return j;
}

Waveform waveform_from_json(const json& j) {
  const std::string f = j.value("family", "circular");
  const double a = j.value("amplitude", 0.4), om = j.value("omega", 0.7);
  if (f == "circular") return Waveform::circular(a, om);
  if (f == "linear") return Waveform::linear(a, om);
  if (f == "pulse") return Waveform::pulse(a, om, j.value("tau", 3.0));
  throw DomainError("unknown waveform family '" + f + "'");
}

json spec_to_json(const SolutionSpec& s) {
  json j{{"family", catalog::family_name(s.family)},
         {"n", s.n},
         {"l", s.l},
         {"M", s.M},
         {"B", s.B},
         {"pz", s.pz},
         {"m", s.m},
         {"energy", s.energy},
         {"profile_perturbation", s.profile_perturbation},
         {"potential_scale", s.potential_scale}};
  j["waveform"] = s.waveform ? waveform_to_json(*s.waveform) : json(nullptr);
  return j;
}

SolutionSpec spec_from_json(const json& j) {
  SolutionSpec s;
  const auto f = catalog::parse_family(j.at("family").get<std::string>());
  if (!f) throw DomainError("unknown family '" + j.at("family").get<std::string>() + "'");
  s.family = *f;
  s.n = j.value("n", 0);
  s.l = j.value("l", 0);
  s.M = j.value("M", 0);
  s.B = j.value("B", 1.0);
  s.pz = j.value("pz", 0.0);
  s.m = j.value("m", 1.0);
  s.energy = j.value("energy", 0.0);
  s.profile_perturbation = j.value("profile_perturbation", 0.0);
  s.potential_scale = j.value("potential_scale", 1.0);
  if (j.contains("waveform") && !j["waveform"].is_null()) s.waveform = waveform_from_json(j["waveform"]);
  return s;
}

namespace verifier {
namespace {

const Cplx I(0, 1);

template <class F>
auto stencil(const F& f, const SpacetimePoint& x, int mu, double h) -> decltype(f(x)) {
  SpacetimePoint p1 = x, p2 = x, m1 = x, m2 = x;
  p1[mu] += h;
  p2[mu] += 2 * h;
  m1[mu] -= h;
  m2[mu] -= 2 * h;
  return (8.0 * (f(p1) - f(m1)) - (f(p2) - f(m2))) / (12 * h);
}

FourVector current(const ColumnSpinor& psi) {
  FourVector J;
  J[0] = psi.squaredNorm();
  for (int k = 1; k <= 3; ++k) J[k] = psi.dot(alpha(k) * psi).real();
  return J;
}

double scalar_density(const ColumnSpinor& psi) {
  return std::norm(psi[0]) + std::norm(psi[1]) - std::norm(psi[2]) - std::norm(psi[3]);
}

std::vector<int> histogram(const std::vector<double>& v) {
  std::vector<int> h(18, 0);
  for (double r : v) {
    int b = r <= 0 ? 0 : static_cast<int>(std::floor(std::log10(r))) + 17;
    h[std::clamp(b, 0, 17)]++;
  }
  return h;
}

template <class Fn>
void parallel_for(int n, int threads, const Fn& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Evaluate `fn` over the points; nullopt marks an excluded point.
CheckRecord pointwise(const std::string& name, const std::vector<SpacetimePoint>& pts, double tol, int threads,
                      const std::function<std::optional<double>(const SpacetimePoint&)>& fn) {
  std::vector<std::optional<double>> res(pts.size());
  std::vector<std::string> errs(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    try {
      res[i] = fn(pts[i]);
    } catch (const OnAxis&) {
      res[i].reset();
    } catch (const SingularSpinor&) {
      res[i].reset();
    } catch (const NullDensity&) {
      res[i].reset();
    } catch (const std::exception& e) {
      res[i] = std::numeric_limits<double>::infinity();
      errs[i] = e.what();
    }
  });
  CheckRecord r;
  r.name = name;
  r.tolerance = tol;
  std::vector<double> vals;
  for (size_t i = 0; i < res.size(); ++i) {
    if (!res[i]) {
      r.excluded++;
      continue;
    }
    vals.push_back(*res[i]);
    if (!errs[i].empty() && !r.detail.contains("error")) r.detail["error"] = errs[i];
  }
  r.points = static_cast<int>(vals.size());
  r.max_residual = vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
  r.histogram = histogram(vals);
  r.pass = !vals.empty() && r.max_residual <= tol;
  return r;
}

CheckRecord scalar_record(const std::string& name, double residual, double tol, const std::string& grid) {
  CheckRecord r;
  r.name = name;
  r.grid = grid;
  r.max_residual = residual;
  r.tolerance = tol;
  r.points = 1;
  r.histogram = histogram({residual});
  r.pass = residual <= tol;
  return r;
}

bool wants(const SuiteConfig& cfg, const std::string& name) {
  return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
}

bool below_floor(const ColumnSpinor& psi) {
  double rho, beta;
  spinor::density_angle(spinor::from_column(psi), rho, beta);
  return rho < kRhoFloor;
}

}  // namespace

DiracResidual dirac_residual(const ColumnField& psi, const PotentialField& eA, double m, const SpacetimePoint& x,
                             double h) {
  const ColumnSpinor p = psi(x);
  ColumnSpinor lhs = -(sta::slash(eA(x)) * p) - m * p;
  Multivector dslash = Multivector::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    const ColumnSpinor d = stencil(psi, x, mu, h);
    lhs += I * (gamma_up(mu) * d);
    dslash += gamma_up(mu) * spinor::from_column(d);
  }
  const Multivector P = spinor::from_column(p);
  const Multivector R = dslash * gamma(2) * gamma(1) - sta::slash(eA(x)) * P - m * P * gamma(0);
  DiracResidual r;
  r.column = lhs.norm() / std::max(m * p.norm(), kEpsFloor);
  r.matrix = R.norm() / std::max(m * P.norm(), kEpsFloor);
  return r;
}

DiracResidual dirac_residual(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  return dirac_residual(catalog::spinor_field(s), [&s](const SpacetimePoint& p) { return catalog::potential(s, p); },
                        s.m, x, h);
}

double continuity_residual(const ColumnField& psi, const SpacetimePoint& x, double h) {
  double div = 0;
  for (int mu = 0; mu < 4; ++mu) div += stencil([&](const SpacetimePoint& p) { return current(psi(p)); }, x, mu, h)[mu];
  return std::abs(div) / std::max(current(psi(x))[0], kEpsFloor);
}

double lorentz_gauge_residual(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  double div = 0;
  for (int mu = 0; mu < 4; ++mu)
    div += stencil([&](const SpacetimePoint& p) { return catalog::potential(s, p); }, x, mu, h)[mu];
  return std::abs(div);
}

double maxwell_source_check(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  auto E = [&](const SpacetimePoint& p) { return Vec3(catalog::fields(s, p).eE); };
  auto Bf = [&](const SpacetimePoint& p) { return Vec3(catalog::fields(s, p).eB); };
  const FieldSample F = catalog::fields(s, x);
  Vec3 dE[4], dB[4];
  for (int mu = 0; mu < 4; ++mu) {
    dE[mu] = stencil(E, x, mu, h);
    dB[mu] = stencil(Bf, x, mu, h);
  }
  const double gauss = dE[1][0] + dE[2][1] + dE[3][2] - F.charge_source;
  const Vec3 curlB(dB[2][2] - dB[3][1], dB[3][0] - dB[1][2], dB[1][1] - dB[2][0]);
  const Vec3 ampere = curlB - dE[0] - F.current_source;
  const double divB = dB[1][0] + dB[2][1] + dB[3][2];
  const Vec3 curlE(dE[2][2] - dE[3][1], dE[3][0] - dE[1][2], dE[1][1] - dE[2][0]);
  const Vec3 faraday = curlE + dB[0];
  return std::max({std::abs(gauss), ampere.cwiseAbs().maxCoeff(), std::abs(divB), faraday.cwiseAbs().maxCoeff()});
}

double field_consistency(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  const FieldSample a = catalog::fields(s, x), b = catalog::fields_fd(s, x, h);
  return std::max((a.eE - b.eE).cwiseAbs().maxCoeff(), (a.eB - b.eB).cwiseAbs().maxCoeff());
}

double bessel_addition_check(int nu, double rho, double rhobar, double phi, double phibar, int K, bool alternating) {
  if (rho < 0 || rhobar < 0) throw DomainError("Bessel addition radii must be non-negative");
  const double d = phi - phibar;
  const double a = alternating ? d - M_PI : d;
  const double varpi = std::sqrt(std::max(0.0, rho * rho + rhobar * rhobar - 2 * rho * rhobar * std::cos(a)));
  const double theta = std::atan2(rhobar * std::sin(a), rho - rhobar * std::cos(a));
  const Cplx lhs = std::exp(-I * (nu * theta)) * special::bessel_j_int(nu, varpi);
  Cplx rhs = 0;
  for (int k = -K; k <= K; ++k) {
    const double sgn = alternating && (k % 2) ? -1.0 : 1.0;
    rhs += sgn * special::bessel_j_int(k, rhobar) * special::bessel_j_int(nu + k, rho) * std::exp(-I * (k * d));
  }
  return std::abs(lhs - rhs);
}

double dressing_equivalence(const SolutionSpec& s, const SpacetimePoint& x) {
  if (!catalog::is_dressed(s.family)) throw DomainError("dressing_equivalence needs a laser-dressed family");
  const SolutionSpec seed = catalog::seed_spec(s);
  const MatrixField stat = [seed](const SpacetimePoint& p) { return catalog::matrix_spinor(seed, p); };
  const ColumnSpinor route = spinor::to_column(catalog::laser_dress(stat, *s.waveform, catalog::eigenvalue(s))(x));
  return (route - catalog::spinor(s, x)).cwiseAbs().maxCoeff();
}

double volkov_equivalence(const SolutionSpec& s, const SpacetimePoint& x) {
  if (s.family != Family::VolkovBessel) throw DomainError("volkov_equivalence needs a VolkovBessel spec");
  return dressing_equivalence(s, x);
}

Multivector appendix_LA(const Waveform& wf, double xi, double eps) {
  const Cplx a = -Cplx(wf.d1(xi), -wf.d2(xi)) / (eps * wf.omega());
  Multivector L = Multivector::Identity();
  L(1, 0) = -std::conj(a);
  L(2, 3) = a;
  return L;
}

double appendix_null_rotation_check(const Waveform& wf, double xi, double eps) {
  const Multivector T = (identity() + gamma5() * gamma(0)) / std::sqrt(2.0);
  const Multivector rhs = T * (identity() + catalog::laser_generator(wf, xi, eps)) * T.adjoint();
  return max_abs(appendix_LA(wf, xi, eps) - rhs);
}

TetradResidual tetrad_residual(const ColumnSpinor& psi) {
  const auto o = spinor::observables(psi);
  TetradResidual r;
  r.beta = std::abs(o.beta);
  if (!o.defined) return r;
  const FourVector& v = o.tetrad[0];
  const FourVector& s = o.tetrad[3];
  r.kinematic = std::max({std::abs(dot(v, v) - 1), std::abs(dot(s, s) + 1), std::abs(dot(v, s))});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      r.kinematic = std::max(r.kinematic, std::abs(dot(o.tetrad[a], o.tetrad[b]) - (a == b ? eta(a) : 0.0)));
  return r;
}

double velocity_spin_residual(const SolutionSpec& s, const SpacetimePoint& x) {
  const auto o = spinor::observables(catalog::spinor(s, x));
  if (!o.defined) throw NullDensity("density below floor");
  const VelocitySpin vs = catalog::velocity_spin(s, x);
  return std::max((vs.v - o.tetrad[0]).cwiseAbs().maxCoeff(), (vs.s - o.tetrad[3]).cwiseAbs().maxCoeff());
}

namespace {
// d(x, y, z, s)/dt
Eigen::Vector4d flow(const SolutionSpec& s, double t, const Eigen::Vector4d& y) {
  const ColumnSpinor psi = catalog::spinor(s, SpacetimePoint(t, y[0], y[1], y[2]));
  const FourVector J = current(psi);
  if (J[0] <= 0) throw NullDensity("current density vanishes on the streamline");
  return Eigen::Vector4d(J[1] / J[0], J[2] / J[0], J[3] / J[0], scalar_density(psi) / J[0]);
}

Eigen::Vector4d rk4(const SolutionSpec& s, double t, const Eigen::Vector4d& y, double dt) {
  const auto k1 = flow(s, t, y);
  const auto k2 = flow(s, t + dt / 2, y + dt / 2 * k1);
  const auto k3 = flow(s, t + dt / 2, y + dt / 2 * k2);
  const auto k4 = flow(s, t + dt, y + dt * k3);
  return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}
}  // namespace

std::vector<StreamlinePoint> streamline(const SolutionSpec& s, const SpacetimePoint& x0, double t_max, int steps) {
  if (steps <= 0) throw DomainError("streamline needs a positive step count");
  if (std::hypot(x0[1], x0[2]) < 1e-3 && catalog::seed_family(s.family) == Family::InhomogeneousB)
    throw OnAxis("streamline start on the singular axis");
  std::vector<StreamlinePoint> out;
  Eigen::Vector4d y(x0[1], x0[2], x0[3], 0.0);
  const double dt = t_max / steps;
  out.push_back({x0, 0.0});
  for (int i = 0; i < steps; ++i) {
    const double t = x0[0] + i * dt;
    y = rk4(s, t, y, dt);
    out.push_back({SpacetimePoint(t + dt, y[0], y[1], y[2]), y[3]});
  }
  return out;
}

namespace {
OrbitReport one_revolution(const SolutionSpec& s, const SpacetimePoint& x0, int steps) {
  const Eigen::Vector4d v = flow(s, x0[0], Eigen::Vector4d(x0[1], x0[2], x0[3], 0));
  const double r0 = std::hypot(x0[1], x0[2]);
  const double speed = std::hypot(v[0], v[1]);
  if (speed == 0) throw StepUnstable("no transverse motion at the start point");
  const double period_guess = 2 * M_PI * r0 / speed;
  const double dt = period_guess / steps;
  Eigen::Vector4d y(x0[1], x0[2], x0[3], 0.0);
  double angle = std::atan2(y[1], y[0]), unwound = 0, t = x0[0];
  OrbitReport rep;
  for (int i = 0; i < 4 * steps; ++i) {
    const Eigen::Vector4d yn = rk4(s, t, y, dt);
    const double an = std::atan2(yn[1], yn[0]);
    double da = an - angle;
    if (da > M_PI) da -= 2 * M_PI;
    if (da < -M_PI) da += 2 * M_PI;
    rep.radial_drift = std::max(rep.radial_drift, std::abs(std::hypot(yn[0], yn[1]) - r0));
    if (std::abs(unwound + da) >= 2 * M_PI) {
      const double frac = (2 * M_PI - std::abs(unwound)) / std::abs(da);
      rep.period = t - x0[0] + frac * dt;
      rep.revolutions = 1;
      return rep;
    }
    unwound += da;
    angle = an;
    y = yn;
    t += dt;
  }
  throw StepUnstable("orbit did not close within four period estimates");
}
}  // namespace

OrbitReport orbit_closure(const SolutionSpec& s, const SpacetimePoint& x0, int steps) {
  if (!catalog::is_stationary(s.family) || s.pz != 0)
    throw DomainError("orbit closure applies to stationary p_z = 0 states");
  const OrbitReport a = one_revolution(s, x0, steps);
  const OrbitReport b = one_revolution(s, x0, 2 * steps);
  if (std::abs(a.period - b.period) > 1e-6 * std::max(1.0, b.period))
    throw StepUnstable("orbit period not converged under step halving");
  return b;
}

double proper_time_ratio(const SolutionSpec& s, int nodes) {
  if (!catalog::is_stationary(s.family) || catalog::seed_family(s.family) == Family::FreeBessel)
    throw NotNormalizable("proper-time ratio needs a normalizable stationary state");
  double span;
  if (catalog::seed_family(s.family) == Family::InhomogeneousB) {
    const double a = (s.M + 1.0) / (2 * s.n + s.M + 1);
    span = (s.M + 2 * s.n + 60) / a;
  } else {
    span = 2 * std::sqrt(s.n + s.l + 1.0) + 5;
  }
  const auto& gl = quad::gauss_legendre(nodes);
  double num = 0, den = 0;
  for (const auto& [u, w] : gl) {
    const double lam = span * (u + 1) / 2, wt = w * span / 2;
    const SpacetimePoint x0(0, 2 * lam / s.B, 0, 0);
    const ColumnSpinor psi = catalog::spinor(s, x0);
    const double J0 = psi.squaredNorm();
    // proper time gained along the streamline over a unit time span
    const auto line = streamline(s, x0, 1.0, 20);
    const double dsdt = line.back().s;
    num += wt * 2 * M_PI * lam * J0 * dsdt;
    den += wt * 2 * M_PI * lam * J0;
  }
  return den / num;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "dirac",      "inversion", "continuity",  "lorentz_gauge",   "maxwell",  "fields",
      "tetrad",     "velocity_spin", "dressing", "circularity",    "radial_ode", "normalization",
      "streamline", "negative_control", "bessel_addition", "appendix"};
  return names;
}

std::vector<SolutionSpec> default_specs(Family f) {
  auto mk = [f](int n, int l, int M, double B, double pz, double energy, std::optional<Waveform> w) {
    SolutionSpec s;
    s.family = f;
    s.n = n;
    s.l = l;
    s.M = M;
    s.B = B;
    s.pz = pz;
    s.energy = energy;
    s.waveform = w;
    return s;
  };
  const auto circ = Waveform::circular(0.4, 0.7);
  const auto lin = Waveform::linear(0.3, 1.1);
  const auto pulse = Waveform::pulse(0.5, 0.9, 3.0);
  switch (f) {
    case Family::FreeBessel:
      return {mk(0, 0, 0, 1.0, 0.0, 1.5, {}), mk(0, 1, 0, 1.0, 0.5, 2.0, {}), mk(0, 3, 0, 0.8, 0.2, 1.3, {})};
    case Family::HomogeneousB_degenerate:
      return {mk(1, 1, 0, 1.0, 0.0, 0, {}), mk(2, 0, 0, 0.7, 0.4, 0, {}), mk(0, 2, 0, 1.2, 0.0, 0, {})};
    case Family::HomogeneousB_nondegenerate:
      return {mk(1, 1, 0, 0.8, 0.0, 0, {}), mk(2, 2, 0, 0.6, 0.3, 0, {}), mk(0, 1, 0, 1.0, 0.0, 0, {})};
    case Family::InhomogeneousB:
      return {mk(1, 0, 0, 1.0, 0.0, 0, {}), mk(2, 0, 1, 1.3, 0.4, 0, {}), mk(0, 0, 2, 0.9, 0.0, 0, {})};
    case Family::VolkovBessel:
      return {mk(0, 1, 0, 1.0, 0, 1.5, circ), mk(0, 0, 0, 1.0, 0, 2.0, lin), mk(0, 2, 0, 1.0, 0, 1.7, pulse)};
    case Family::Redmond:
      return {mk(1, 1, 0, 1.0, 0, 0, circ), mk(2, 0, 0, 0.7, 0, 0, lin), mk(0, 2, 0, 1.2, 0, 0, pulse)};
    case Family::InhomogeneousB_Laser:
      return {mk(1, 0, 0, 1.0, 0, 0, circ), mk(2, 0, 1, 1.3, 0, 0, lin), mk(1, 0, 2, 0.9, 0, 0, pulse)};
  }
  return {};
}

std::string solution_id(const SolutionSpec& s) {
  std::ostringstream o;
  o << catalog::family_name(s.family) << "(n=" << s.n;
  if (catalog::seed_family(s.family) == Family::InhomogeneousB)
    o << ",M=" << s.M;
  else
    o << ",l=" << s.l;
  o << ",B=" << s.B << ",pz=" << s.pz;
  if (catalog::seed_family(s.family) == Family::FreeBessel) o << ",E=" << s.energy;
  if (s.waveform) o << ",wave=" << s.waveform->name();
  o << ")";
  return o.str();
}

int thread_count(int requested) {
  if (const char* env = std::getenv("RDI_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  if (requested >= 1) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SpacetimePoint> sample_points(const SolutionSpec& s, const SuiteConfig& cfg, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(cfg.box_lo, cfg.box_hi);
  std::vector<SpacetimePoint> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < cfg.points && guard++ < 100 * cfg.points) {
    SpacetimePoint x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = U(rng);
    double xp = x[1], yp = x[2];
    if (catalog::is_dressed(s.family) && s.waveform) catalog::shifted_coords(*s.waveform, catalog::eigenvalue(s), x, xp, yp);
    if (std::hypot(x[1], x[2]) < cfg.axis_exclusion || std::hypot(xp, yp) < cfg.axis_exclusion) continue;
    pts.push_back(x);
  }
  return pts;
}

SolutionReport verify_solution(const SolutionSpec& s, const SuiteConfig& cfg) {
  catalog::validate(s);
  SolutionReport rep;
  rep.id = solution_id(s);
  rep.spec = spec_to_json(s);
  const int threads = thread_count(cfg.threads);
  const Family seed = catalog::seed_family(s.family);
  const bool dressed = catalog::is_dressed(s.family);
  const bool normalizable = seed != Family::FreeBessel;
  std::uint64_t stream = 0;
  for (char c : rep.id) stream = stream * 131 + static_cast<unsigned char>(c);
  const auto pts = sample_points(s, cfg, stream);
  std::ostringstream grid;
  grid << cfg.points << " uniform points in [" << cfg.box_lo << "," << cfg.box_hi << "]^4, axis exclusion "
       << cfg.axis_exclusion << ", seed " << cfg.seed;
  const std::string g = grid.str();
  const double h = cfg.h;
  auto add = [&](CheckRecord r) {
    if (r.grid.empty()) r.grid = g;
    rep.checks.push_back(std::move(r));
  };

  if (wants(cfg, "dirac")) {
    auto r = pointwise("dirac", pts, 1e-7, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      if (below_floor(catalog::spinor(s, x))) return std::nullopt;
      const auto d = dirac_residual(s, x, h);
      return std::max(d.column, d.matrix);
    });
    r.detail["fd_step"] = h;
    add(r);
  }
  if (wants(cfg, "inversion")) {
    std::vector<double> rich(pts.size(), 0.0);
    const MatrixField P = catalog::matrix_field(s);
    auto r = pointwise("inversion", pts, 2e-7, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      const PotentialSample ps = inverter::invert(P, x, h, s.m);
      const double diff = (ps.eA - catalog::potential(s, x)).cwiseAbs().maxCoeff();
      const double allowed = std::max(2e-7, 10 * ps.richardson);
      // scaled so that 2e-7 remains the pass threshold
      return std::max(diff * 2e-7 / allowed, ps.max_constrained());
    });
    r.detail["note"] = "residual = max(|eA - closed form| * 2e-7 / max(2e-7, 10 * richardson), constrained traces)";
    add(r);
  }
  if (wants(cfg, "continuity")) {
    const ColumnField psi = catalog::spinor_field(s);
    add(pointwise("continuity", pts, 1e-7, threads,
                  [&](const SpacetimePoint& x) -> std::optional<double> { return continuity_residual(psi, x, h); }));
  }
  if (wants(cfg, "lorentz_gauge"))
    add(pointwise("lorentz_gauge", pts, 2e-7, threads,
                  [&](const SpacetimePoint& x) -> std::optional<double> { return lorentz_gauge_residual(s, x, h); }));
  if (wants(cfg, "maxwell"))
    add(pointwise("maxwell", pts, 1e-6, threads,
                  [&](const SpacetimePoint& x) -> std::optional<double> { return maxwell_source_check(s, x); }));
  if (wants(cfg, "fields"))
    add(pointwise("fields", pts, 1e-6, threads,
                  [&](const SpacetimePoint& x) -> std::optional<double> { return field_consistency(s, x); }));
  if (wants(cfg, "tetrad"))
    add(pointwise("tetrad", pts, 1e-10, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      const ColumnSpinor psi = catalog::spinor(s, x);
      if (below_floor(psi)) return std::nullopt;
      // roundoff grows as v0^2 near nodes of psibar psi
      const double v0 = spinor::observables(psi).tetrad[0][0];
      return tetrad_residual(psi).kinematic / std::max(1.0, v0 * v0);
    }));
  if (wants(cfg, "velocity_spin"))
    add(pointwise("velocity_spin", pts, 1e-10, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      if (below_floor(catalog::spinor(s, x))) return std::nullopt;
      return velocity_spin_residual(s, x);
    }));
  if (dressed && wants(cfg, "dressing"))
    add(pointwise("dressing", pts, 1e-10, threads,
                  [&](const SpacetimePoint& x) -> std::optional<double> { return dressing_equivalence(s, x); }));
  if (!dressed && wants(cfg, "circularity"))
    add(pointwise("circularity", pts, 1e-6, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      if (below_floor(catalog::spinor(s, x))) return std::nullopt;
      return inverter::circularity_residual(s, x, h);
    }));
  if (!dressed && wants(cfg, "radial_ode")) {
    std::vector<SpacetimePoint> lam;
    for (int i = 0; i < 200; ++i) lam.push_back(SpacetimePoint(0.05 + 0.05 * i, 0, 0, 0));
    auto r = pointwise("radial_ode", lam, 1e-8, threads, [&](const SpacetimePoint& x) -> std::optional<double> {
      const double f = std::abs(catalog::radial_profile(s, x[0]).f);
      return std::abs(inverter::radial_ode_residual(s, x[0])) / std::max(1.0, f);
    });
    r.grid = "lambda = 0.05..10 step 0.05";
    add(r);
  }
  if (normalizable && wants(cfg, "normalization")) {
    const Averages q = catalog::averages_quadrature(s, dressed ? 0.7 : 0.0);
    const Averages c = catalog::averages_closed(s, dressed ? 0.7 : 0.0);
    auto r = scalar_record("normalization",
                           std::max({std::abs(q.J0 - c.J0), std::abs(q.rho - c.rho), std::abs(q.Jz - c.Jz)}), 1e-8,
                           "radial Gauss-Legendre x 64-point azimuthal trapezoid");
    r.detail = {{"J0", q.J0}, {"rho", q.rho}, {"m_over_eps", c.rho}, {"Jz", q.Jz}};
    add(r);
  }
  if (!dressed && normalizable && s.pz == 0 && wants(cfg, "streamline")) {
    double drift = 0;
    const double scale = 2 / s.B;
    std::vector<double> radii = {0.4 * scale, 0.9 * scale, 1.6 * scale};
    nlohmann::json periods = nlohmann::json::array();
    for (double r0 : radii) {
      const FourVector J0 = current(catalog::spinor(s, SpacetimePoint(0, r0, 0, 0)));
      if (std::hypot(J0[1], J0[2]) <= 1e-14 * J0[0]) {
        periods.push_back("static");  // no transverse current: the streamline is a point
        continue;
      }
      try {
        const OrbitReport o = orbit_closure(s, SpacetimePoint(0, r0, 0, 0));
        drift = std::max(drift, o.radial_drift);
        periods.push_back(o.period);
      } catch (const Error& e) {
        periods.push_back(e.kind);
        drift = std::numeric_limits<double>::infinity();
      }
    }
    const double ratio = proper_time_ratio(s);
    const double target = catalog::eigenvalue(s) / s.m;
    auto r = scalar_record("streamline", std::max(drift / 1e-6, std::abs(ratio - target) / target / 1e-4), 1.0,
                           "3 start radii, 64 launch radii for dt/ds");
    r.detail = {{"radial_drift", drift}, {"periods", periods}, {"dt_ds", ratio}, {"eps_over_m", target}};
    add(r);
  }
  if (wants(cfg, "negative_control") && s.potential_scale == 1.0 && s.profile_perturbation == 0.0) {
    SolutionSpec a = s, b = s;
    a.potential_scale = 1.01;
    b.profile_perturbation = 0.01;
    double ra = 0, rb = 0;
    // a free state has no potential to scale
    const bool free = catalog::seed_family(s.family) == Family::FreeBessel;
    if (free) ra = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < std::min<size_t>(pts.size(), 20); ++i) {
      try {
        if (!free) ra = std::max(ra, dirac_residual(a, pts[i], h).column);
        rb = std::max(rb, dirac_residual(b, pts[i], h).column);
      } catch (const Error&) {
      }
    }
    // detection power: both corruptions must exceed 1e-4 somewhere
    auto r = scalar_record("negative_control", 1e-4 / std::max(std::min(ra, rb), kEpsFloor), 1.0,
                           "first 20 suite points");
    r.detail = {{"scaled_potential_max", free ? nlohmann::json("n/a") : nlohmann::json(ra)},
                {"perturbed_profile_max", rb},
                {"threshold", 1e-4}};
    add(r);
  }
  return rep;
}

SolutionReport verify_identities(const SuiteConfig& cfg) {
  SolutionReport rep;
  rep.id = "identities";
  rep.spec = nlohmann::json::object();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 7u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(0, 1);
  if (wants(cfg, "bessel_addition")) {
    double worst = 0, worst_alt = 0;
    for (int i = 0; i < 50; ++i) {
      const int nu = static_cast<int>(U(rng) * 11);
      const double rho = 5 * U(rng), rb = 2 * U(rng), phi = 2 * M_PI * U(rng), pb = 2 * M_PI * U(rng);
      worst = std::max(worst, bessel_addition_check(std::min(nu, 10), rho, rb, phi, pb, 40));
      worst_alt = std::max(worst_alt, bessel_addition_check(std::min(nu, 10), rho, rb, phi, pb, 40, true));
    }
    auto r = scalar_record("bessel_addition", std::max(worst, worst_alt), 1e-10,
                           "50 random tuples nu<=10, rho<=5, rhobar<=2, K=40");
    r.points = 50;
    r.detail = {{"direct", worst}, {"alternating", worst_alt}};
    rep.checks.push_back(r);
  }
  if (wants(cfg, "appendix")) {
    const Waveform wf = Waveform::circular(0.4, 0.7);
    double worst = 0, nil = 0;
    for (int i = 0; i < 20; ++i) {
      const double xi = 20 * U(rng) - 10, eps = 1 + U(rng);
      worst = std::max(worst, appendix_null_rotation_check(wf, xi, eps));
      const Multivector N = catalog::laser_generator(wf, xi, eps);
      nil = std::max(nil, max_abs(N * N));
    }
    auto r = scalar_record("appendix", std::max(worst, nil), 1e-12, "20 random xi, circular drive");
    r.points = 20;
    r.detail = {{"LA_vs_TPhiT", worst}, {"nilpotency", nil}};
    rep.checks.push_back(r);
  }
  return rep;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
  VerificationReport rep;
  rep.version = kVersion;
  rep.seed = cfg.seed;
  rep.fd_step = cfg.h;
  for (const auto& s : cfg.solutions) rep.solutions.push_back(verify_solution(s, cfg));
  if (cfg.include_identities) {
    SolutionReport id = verify_identities(cfg);
    if (!id.checks.empty()) rep.solutions.push_back(std::move(id));
  }
  return rep;
}

}  // namespace verifier
}  // namespace rdi
