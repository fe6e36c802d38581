#include "rdi/catalog.hpp"

#include <cmath>
#include <map>

#include "rdi/errors.hpp"
#include "rdi/quadrature.hpp"
#include "rdi/special.hpp"

namespace rdi::catalog {

using namespace rdi::sta;
namespace sp = rdi::special;

namespace {

const Cplx I(0, 1);

bool trivial_wave(const SolutionSpec& s) {
  return s.waveform && s.waveform->family() != Waveform::Family::Custom && s.waveform->amplitude() == 0.0;
}

// coefficient g(r) in the static potential (0, -y g, x g, 0)
double static_g(Family seed, double B, double r) {
  switch (seed) {
    case Family::HomogeneousB_degenerate:
    case Family::HomogeneousB_nondegenerate:
      return B * B / 2;
    case Family::InhomogeneousB:
      if (r == 0) throw OnAxis("inhomogeneous potential is singular on the axis");
      return B / (4 * r);
    default:
      return 0.0;
  }
}

double fdot_sq(const Waveform& wf, double xi) {
  const double a = wf.d1(xi), b = wf.d2(xi);
  return a * a + b * b;
}

ColumnSpinor stationary_spinor(const SolutionSpec& s, const SpacetimePoint& x) {
  const double eps = eigenvalue(s);
  const double r = std::hypot(x[1], x[2]);
  const double lam = s.B * r / 2;
  const double phi = std::atan2(x[2], x[1]);
  double q0, q1;
  reduced_profile(s, lam, q0, q1);
  const int M = orbital_M(s);
  const Cplx pre = std::exp(Cplx(0, -(eps * x[0] - s.pz * x[3]) + M * phi / 2));
  ColumnSpinor psi;
  psi << (s.m + eps) / s.B * q0, 0.0, s.pz / s.B * q0, -0.5 * I * q1 * std::exp(I * phi);
  return pre * psi;
}

ColumnSpinor volkov_bessel(const SolutionSpec& s, const SpacetimePoint& x) {
  const Waveform& wf = *s.waveform;
  const double eps = s.energy, m = s.m, om = wf.omega();
  const double xi = om * (x[0] - x[3]);
  double xp, yp;
  shifted_coords(wf, eps, x, xp, yp);
  const double rp = std::hypot(xp, yp), ph = std::atan2(yp, xp);
  const double k = std::sqrt(eps * eps - m * m);
  const double D1 = wf.d1(xi), D2 = wf.d2(xi);
  const int l = s.l;
  const double Jl = sp::bessel_j(l, k * rp), Jl1 = sp::bessel_j(l + 1, k * rp);
  const Cplx e0 = std::exp(I * double(l) * ph), e1 = std::exp(I * double(l + 1) * ph);
  const Cplx F = normalization(s) * std::exp(I * (gauge_phase(wf, xi, eps) - eps * x[0])) / (2 * s.B);
  const Cplx Dp(D1, D2), Dq(D2, D1);
  const double eo = eps * om;
  ColumnSpinor v;
  v << 2 * (m + eps) * e0 * Jl - k * e1 * Dq * Jl1 / eo,
      (m + eps) * Dp * e0 * Jl / eo,
      -k * Dq * e1 * Jl1 / eo,
      2.0 * I * k * e1 * Jl1 - (m + eps) * Dp * e0 * Jl / eo;
  return F * v;
}

ColumnSpinor redmond(const SolutionSpec& s, const SpacetimePoint& x) {
  const Waveform& wf = *s.waveform;
  const double eps = eigenvalue(s), m = s.m, B = s.B, om = wf.omega();
  const double xi = om * (x[0] - x[3]);
  double xp, yp;
  shifted_coords(wf, eps, x, xp, yp);
  const double lp = B * std::hypot(xp, yp) / 2, ph = std::atan2(yp, xp);
  const int n = s.n, l = s.l;
  const double D1 = wf.d1(xi), D2 = wf.d2(xi);
  const double u = 2 * lp * lp;
  const double F0 = sp::hyp1f1_poly(n, l + 1, u);
  const double F1 = n > 0 ? sp::hyp1f1_poly(n - 1, l + 2, u) : 0.0;
  const Cplx z(xp, yp), Dp(D1, D2), Dq(D2, D1), Dm(D1, -D2), w(yp, -xp);
  const double eo = eps * om;
  const Cplx F = normalization(s) * sp::binomial(n + l, n) / 4 * std::pow(lp, l) * std::exp(I * double(l) * ph) *
                 std::exp(-lp * lp) * std::exp(I * (gauge_phase(wf, xi, eps) - eps * x[0]));
  ColumnSpinor v;
  v << 4 * (m + eps) * F0 / B - 4 * B * n * z * Dq * F1 / (eo * (2 * l + 2)),
      2 * (m + eps) * Dp * F0 / (B * eo),
      4 * B * n * w * Dm * F1 / (eo * (2 * l + 2)),
      8.0 * I * B * double(n) * z * F1 / double(2 * l + 2) - 2 * (m + eps) * Dp * F0 / (B * eo);
  return F * v;
}

ColumnSpinor inhomogeneous_laser(const SolutionSpec& s, const SpacetimePoint& x) {
  const Waveform& wf = *s.waveform;
  const double eps = eigenvalue(s), m = s.m, B = s.B, om = wf.omega();
  const double xi = om * (x[0] - x[3]);
  double xp, yp;
  shifted_coords(wf, eps, x, xp, yp);
  const double lp = B * std::hypot(xp, yp) / 2, ph = std::atan2(yp, xp);
  if (lp == 0) throw OnAxis("inhomogeneous laser spinor evaluated on the axis");
  const int n = s.n, M = s.M;
  const double a = double(M + 1) / (M + 2 * n + 1), u = a * lp;
  const double Ln = sp::laguerre(n, M, u);
  const double Lm = n > 0 ? sp::laguerre(n - 1, M + 1, u) : 0.0;
  const double D1 = wf.d1(xi), D2 = wf.d2(xi);
  const Cplx z(xp, yp), Dp(D1, D2), Dq(D2, D1), Dm(D1, -D2), w(yp, -xp);
  const double eo = eps * om, K = M + 2 * n + 1;
  const Cplx F = normalization(s) * std::exp(I * (gauge_phase(wf, xi, eps) - eps * x[0])) *
                 std::pow(lp, M / 2.0) * std::exp(-lp * a / 2 + I * (M * ph / 2)) / 8.0;
  ColumnSpinor v;
  v << 8 * (m + eps) * Ln / B + B * w * Dm * ((M + 1) * Lm - n * Ln) / (eo * lp * K),
      4 * (m + eps) * Dp * Ln / (B * eo),
      z * Dq * (2 * B * n * Ln - 2 * B * (M + 1) * Lm) /
          (lp * om * std::sqrt(B * B * n * (M + n + 1) + 4 * m * m * K * K)),
      2 * B * (I * double(M + 1) * z * Lm + double(n) * w * Ln) / (lp * K) - 4 * (m + eps) * Dp * Ln / (B * eo);
  return F * v;
}

Multivector laser_matrix(const SolutionSpec& s, const SpacetimePoint& x) {
  const SolutionSpec seed = seed_spec(s);
  const MatrixField stat = [seed](const SpacetimePoint& p) { return spinor::from_column(stationary_spinor(seed, p)); };
  return laser_dress(stat, *s.waveform, eigenvalue(s))(x);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::FreeBessel: return "FreeBessel";
    case Family::HomogeneousB_degenerate: return "HomogeneousB_degenerate";
    case Family::HomogeneousB_nondegenerate: return "HomogeneousB_nondegenerate";
    case Family::InhomogeneousB: return "InhomogeneousB";
    case Family::VolkovBessel: return "VolkovBessel";
    case Family::Redmond: return "Redmond";
    case Family::InhomogeneousB_Laser: return "InhomogeneousB_Laser";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  static const std::map<std::string, Family> aliases = {
      {"free-bessel", Family::FreeBessel},       {"homogeneous-degenerate", Family::HomogeneousB_degenerate},
      {"homogeneous", Family::HomogeneousB_degenerate},
      {"homogeneous-nondegenerate", Family::HomogeneousB_nondegenerate},
      {"inhomogeneous", Family::InhomogeneousB}, {"volkov-bessel", Family::VolkovBessel},
      {"redmond", Family::Redmond},              {"inhomogeneous-laser", Family::InhomogeneousB_Laser}};
  for (Family f : all_families())
    if (family_name(f) == s) return f;
  auto it = aliases.find(s);
  if (it != aliases.end()) return it->second;
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> v = {Family::FreeBessel,     Family::HomogeneousB_degenerate,
                                        Family::HomogeneousB_nondegenerate, Family::InhomogeneousB,
                                        Family::VolkovBessel,   Family::Redmond,
                                        Family::InhomogeneousB_Laser};
  return v;
}

bool is_dressed(Family f) {
  return f == Family::VolkovBessel || f == Family::Redmond || f == Family::InhomogeneousB_Laser;
}

bool is_stationary(Family f) { return !is_dressed(f); }

Family seed_family(Family f) {
  switch (f) {
    case Family::VolkovBessel: return Family::FreeBessel;
    case Family::Redmond: return Family::HomogeneousB_degenerate;
    case Family::InhomogeneousB_Laser: return Family::InhomogeneousB;
    default: return f;
  }
}

SolutionSpec seed_spec(const SolutionSpec& s) {
  SolutionSpec t = s;
  t.family = seed_family(s.family);
  t.waveform.reset();
  return t;
}

void validate(const SolutionSpec& s) {
  if (!(s.m > 0)) throw DomainError("mass must be positive");
  if (!(s.B > 0)) throw DomainError("field constant B must be positive");
  if (s.n < 0 || s.n > 100) throw DomainError("n must be in 0..100");
  if (s.l < 0 || s.l > 100) throw DomainError("l must be in 0..100");
  if (!std::isfinite(s.pz)) throw DomainError("p_z must be finite");
  const Family seed = seed_family(s.family);
  if (seed == Family::InhomogeneousB && (s.M < 0 || s.M > 100)) throw DomainError("M must be in 0..100");
  if (seed == Family::HomogeneousB_nondegenerate && s.M != 0 && s.M != -2 * s.l)
    throw DomainError("non-degenerate branch uses M = -2l");
  if (seed == Family::HomogeneousB_degenerate && s.M != 0 && s.M != 2 * s.l)
    throw DomainError("degenerate branch uses M = 2l");
  if (seed == Family::FreeBessel && !(s.energy > std::hypot(s.m, s.pz)))
    throw DomainError("free Bessel states need energy > sqrt(m^2 + p_z^2)");
  if (is_dressed(s.family)) {
    if (!s.waveform) throw DomainError("laser-dressed family needs a waveform");
    if (s.pz != 0) throw DomainError("laser-dressed families are built on p_z = 0 states");
    if (!(s.waveform->omega() > 0)) throw DomainError("waveform frequency must be positive");
  }
}

int orbital_M(const SolutionSpec& s) {
  switch (seed_family(s.family)) {
    case Family::HomogeneousB_nondegenerate: return -2 * s.l;
    case Family::InhomogeneousB: return s.M;
    default: return 2 * s.l;
  }
}

double eigenvalue(const SolutionSpec& s) {
  const double m2 = s.m * s.m, B2 = s.B * s.B, p2 = s.pz * s.pz;
  switch (seed_family(s.family)) {
    case Family::FreeBessel: return s.energy;
    case Family::HomogeneousB_degenerate: return std::sqrt(m2 + 2 * B2 * s.n + p2);
    case Family::HomogeneousB_nondegenerate: return std::sqrt(m2 + 2 * B2 * (s.n + s.l) + p2);
    case Family::InhomogeneousB: {
      const double K = 2.0 * s.n + s.M + 1;
      return std::sqrt(m2 + s.n * (s.n + s.M + 1.0) * B2 / (4 * K * K) + p2);
    }
    default: break;
  }
  throw DomainError("unknown family");
}

double normalization(const SolutionSpec& s) {
  const double eps = eigenvalue(s), m = s.m, B = s.B;
  const int n = s.n, l = s.l, M = s.M;
  const double base = M_PI * eps * (m + eps);
  switch (seed_family(s.family)) {
    case Family::FreeBessel: return B / (std::sqrt(2.0) * eps * std::sqrt(m / eps + 1));
    case Family::HomogeneousB_degenerate:
      return B * std::sqrt(std::ldexp(1.0, l) * sp::factorial(n) / (sp::factorial(n + l) * base));
    case Family::HomogeneousB_nondegenerate:
      return B * std::sqrt(sp::factorial(n + l) / (std::ldexp(1.0, l) * sp::factorial(n)) / base) / sp::factorial(l);
    case Family::InhomogeneousB: {
      const double K = 2.0 * n + M + 1, a = (M + 1) / K;
      return B * std::sqrt(std::pow(a, M + 2) * sp::factorial(n) / (4 * base * sp::factorial(n + M) * K));
    }
    default: break;
  }
  throw DomainError("unknown family");
}

double normalization_nominal(const SolutionSpec& s) {
  const double eps = eigenvalue(s), m = s.m, B = s.B;
  const int n = s.n, l = s.l, M = s.M;
  switch (seed_family(s.family)) {
    case Family::HomogeneousB_degenerate:
    case Family::HomogeneousB_nondegenerate:
      return B / (sp::factorial(l) * std::sqrt(std::pow(2.0, 2 - l) * M_PI * eps * (m + eps))) *
             std::sqrt(sp::factorial(l + n) / sp::factorial(n));
    case Family::InhomogeneousB: {
      const double K = M + 2.0 * n + 1;
      return B * B * std::pow(M + 1.0, M / 2.0 + 1) * std::sqrt(sp::factorial(n)) /
             (2 * std::sqrt(2.0) *
              std::sqrt(2 * M_PI * std::pow(K, M + 3) * sp::factorial(M + n) * eps * (m + eps)));
    }
    default: return normalization(s);
  }
}

void reduced_profile(const SolutionSpec& s, double lam, double& q0, double& q1) {
  const double N = normalization(s);
  const int n = s.n, l = s.l;
  switch (seed_family(s.family)) {
    case Family::FreeBessel: {
      const double kappa = 2 * std::sqrt(s.energy * s.energy - s.m * s.m - s.pz * s.pz) / s.B;
      q0 = sp::bessel_j(l, kappa * lam);
      q1 = -kappa * sp::bessel_j(l + 1, kappa * lam);
      break;
    }
    case Family::HomogeneousB_degenerate: {
      const double u = 2 * lam * lam, pre = std::pow(lam, l) * std::exp(-lam * lam);
      q0 = pre * sp::laguerre(n, l, u);
      q1 = n > 0 ? -4 * lam * pre * sp::laguerre(n - 1, l + 1, u) : 0.0;
      break;
    }
    case Family::HomogeneousB_nondegenerate: {
      const double u = 2 * lam * lam, H = std::exp(-lam * lam), sgn = (l % 2) ? -1.0 : 1.0;
      const double F = sp::hyp1f1_poly(n, l + 1, u);
      const double Fp = n > 0 ? -double(n) / (l + 1) * sp::hyp1f1_poly(n - 1, l + 2, u) : 0.0;
      q0 = sgn * std::ldexp(std::pow(lam, l), l) * H * F;
      const double d = l == 0 ? 4 * lam * Fp : std::ldexp(std::pow(lam, l - 1), l + 1) * (l * F + u * Fp);
      q1 = sgn * H * d;
      break;
    }
    case Family::InhomogeneousB: {
      const int M = s.M;
      const double a = (M + 1.0) / (2 * n + M + 1);
      const double pre = std::pow(lam, M / 2.0) * std::exp(-a * lam / 2);
      const double L = sp::laguerre(n, M, a * lam);
      const double Lm = n > 0 ? sp::laguerre(n - 1, M + 1, a * lam) : 0.0;
      q0 = pre * L;
      q1 = pre * ((1 - a) / 2 * L - a * Lm);
      break;
    }
    default: throw DomainError("unknown family");
  }
  q0 *= N;
  q1 *= N;
  if (s.profile_perturbation != 0) {
    const double c = s.profile_perturbation;
    q1 = q1 * (1 + c * lam) + c * q0;
    q0 *= 1 + c * lam;
  }
}

RadialProfile radial_profile(const SolutionSpec& s, double lam) {
  if (lam < 0) throw DomainError("lambda must be non-negative");
  RadialProfile p;
  const double N = normalization(s);
  const int n = s.n, l = s.l;
  switch (seed_family(s.family)) {
    case Family::FreeBessel: {
      const double kappa = 2 * std::sqrt(s.energy * s.energy - s.m * s.m - s.pz * s.pz) / s.B;
      p.H = 1;
      p.f = lam == 0 ? (l == 0 ? 1.0 : std::pow(kappa / 2, l) / sp::factorial(l))
                     : sp::bessel_j(l, kappa * lam) / std::pow(lam, l);
      break;
    }
    case Family::HomogeneousB_degenerate:
      p.H = std::exp(-lam * lam);
      p.f = sp::laguerre(n, l, 2 * lam * lam);
      break;
    case Family::HomogeneousB_nondegenerate: {
      const double u = 2 * lam * lam;
      p.H = std::exp(-lam * lam);
      p.f = ((l % 2) ? -1.0 : 1.0) * std::pow(u, l) * sp::hyp1f1_poly(n, l + 1, u);
      break;
    }
    case Family::InhomogeneousB: {
      const double a = (s.M + 1.0) / (2 * n + s.M + 1);
      p.H = std::exp(-lam / 2);
      p.f = std::exp(lam * (1 - a) / 2) * sp::laguerre(n, s.M, a * lam);
      break;
    }
    default: throw DomainError("unknown family");
  }
  p.f *= N * (1 + s.profile_perturbation * lam);
  return p;
}

ColumnSpinor spinor(const SolutionSpec& s, const SpacetimePoint& x) {
  validate(s);
  if (!is_dressed(s.family) || trivial_wave(s)) return stationary_spinor(seed_spec(s), x);
  if (s.profile_perturbation != 0) return spinor::to_column(laser_matrix(s, x));
  switch (s.family) {
    case Family::VolkovBessel: return volkov_bessel(s, x);
    case Family::Redmond: return redmond(s, x);
    default: return inhomogeneous_laser(s, x);
  }
}

Multivector matrix_spinor(const SolutionSpec& s, const SpacetimePoint& x) { return spinor::from_column(spinor(s, x)); }

ColumnField spinor_field(const SolutionSpec& s) {
  validate(s);
  return [s](const SpacetimePoint& x) { return spinor(s, x); };
}

MatrixField matrix_field(const SolutionSpec& s) {
  validate(s);
  return [s](const SpacetimePoint& x) { return matrix_spinor(s, x); };
}

Multivector laser_generator(const Waveform& wf, double xi, double eps) {
  const Multivector N = (gamma(0) + gamma(3)) * (wf.d1(xi) * gamma(1) + wf.d2(xi) * gamma(2)) / (2 * eps * wf.omega());
  return N;
}

double gauge_phase(const Waveform& wf, double xi, double eps) {
  const double om = wf.omega();
  return -wf.gauge_integral(xi) / (2 * eps * om * om * om);
}

void shifted_coords(const Waveform& wf, double eps, const SpacetimePoint& x, double& xp, double& yp) {
  const double om = wf.omega(), xi = om * (x[0] - x[3]);
  xp = x[1] + wf.f1(xi) / (eps * om * om);
  yp = x[2] + wf.f2(xi) / (eps * om * om);
}

MatrixField laser_dress(MatrixField stationary, const Waveform& wf, double eps) {
  return [stationary = std::move(stationary), wf, eps](const SpacetimePoint& x) -> Multivector {
    const double xi = wf.omega() * (x[0] - x[3]);
    const Multivector N = laser_generator(wf, xi, eps);
    if (max_abs(N * N) > 1e-12 * std::max(1.0, max_abs(N) * max_abs(N)))
      throw NonVectorResult("laser generator is not nilpotent");
    SpacetimePoint xs = x;
    shifted_coords(wf, eps, x, xs[1], xs[2]);
    const double Phi = gauge_phase(wf, xi, eps);
    const Multivector gauge = std::cos(Phi) * identity() + std::sin(Phi) * (gamma(2) * gamma(1));
    return (identity() + N) * stationary(xs) * gauge;
  };
}

LaserPolar laser_polar(const Waveform& wf, double xi, double eps) {
  LaserPolar p;
  const double D1 = wf.d1(xi), D2 = wf.d2(xi);
  p.theta = 2 * std::atan(std::hypot(D1, D2) / (2 * eps * wf.omega()));
  p.vartheta = std::atan2(D2, D1);
  const double V1 = 2 * std::cos(p.theta / 2) * std::cos(p.vartheta);
  const double V2 = 2 * std::cos(p.theta / 2) * std::sin(p.vartheta);
  const double V3 = 2 * std::sin(p.theta / 2);
  p.w = std::atanh(V3 / 2);
  const Multivector biv = std::cos(p.vartheta) * gamma_up(1) * gamma_up(3) + std::sin(p.vartheta) * gamma_up(2) * gamma_up(3);
  p.rotation = expm(-p.theta / 2 * biv);
  p.boost = expm(-p.w / 2 * (V1 * alpha(1) + V2 * alpha(2) + V3 * alpha(3)));
  return p;
}

PotentialSplit potential_split(const SolutionSpec& s, const SpacetimePoint& x) {
  validate(s);
  PotentialSplit p;
  p.static_part.setZero();
  p.radiation.setZero();
  p.laser.setZero();
  const Family seed = seed_family(s.family);
  if (!is_dressed(s.family) || trivial_wave(s)) {
    const double g = static_g(seed, s.B, std::hypot(x[1], x[2]));
    p.static_part << 0, -x[2] * g, x[1] * g, 0;
  } else {
    const Waveform& wf = *s.waveform;
    const double eps = eigenvalue(s), om = wf.omega(), xi = om * (x[0] - x[3]);
    double xp, yp;
    shifted_coords(wf, eps, x, xp, yp);
    const double g = static_g(seed, s.B, std::hypot(xp, yp));
    const double D1 = wf.d1(xi), D2 = wf.d2(xi);
    p.static_part << 0, -yp * g, xp * g, 0;
    const double a0 = -g * (xp * D2 - yp * D1) / (eps * om);
    p.radiation << a0, 0, 0, a0;
    p.laser << 0, D1 / om, D2 / om, 0;
  }
  p.total = s.potential_scale * (p.static_part + p.radiation + p.laser);
  return p;
}

FourVector potential(const SolutionSpec& s, const SpacetimePoint& x) { return potential_split(s, x).total; }

FieldSample fields(const SolutionSpec& s, const SpacetimePoint& x) {
  validate(s);
  FieldSample F;
  const Family seed = seed_family(s.family);
  const double B = s.B, sc = s.potential_scale;
  if (!is_dressed(s.family) || trivial_wave(s)) {
    const double r = std::hypot(x[1], x[2]);
    if (seed == Family::InhomogeneousB) {
      if (r == 0) throw OnAxis("inhomogeneous field is singular on the axis");
      F.eB << 0, 0, B / (4 * r);
      F.current_source << -B * x[2] / (4 * r * r * r), B * x[1] / (4 * r * r * r), 0;
    } else if (seed != Family::FreeBessel) {
      F.eB << 0, 0, B * B;
    }
  } else {
    const Waveform& wf = *s.waveform;
    const double eps = eigenvalue(s), om = wf.omega(), xi = om * (x[0] - x[3]), eo = eps * om;
    double xp, yp;
    shifted_coords(wf, eps, x, xp, yp);
    const double rp = std::hypot(xp, yp);
    const double D1 = wf.d1(xi), D2 = wf.d2(xi), A1 = wf.dd1(xi), A2 = wf.dd2(xi);
    // radiation coefficient and axial field per family
    double cR = 0, Bz = 0;
    if (seed == Family::HomogeneousB_degenerate) {
      cR = B * B;
      Bz = B * B;
    } else if (seed == Family::InhomogeneousB) {
      if (rp == 0) throw OnAxis("inhomogeneous field is singular on the shifted axis");
      cR = B / (4 * rp);
      Bz = cR;
      const double r3 = rp * rp * rp, w = yp * D1 - xp * D2;
      F.charge_source = B * w / (4 * eo * r3);
      F.current_source << -B * yp / (4 * r3), B * xp / (4 * r3), B * w / (4 * r3 * eo);
    }
    F.eE << cR * D2 / eo - A1, -cR * D1 / eo - A2, 0;
    F.eB << cR * D1 / eo + A2, cR * D2 / eo - A1, Bz;
  }
  F.eE *= sc;
  F.eB *= sc;
  F.charge_source *= sc;
  F.current_source *= sc;
  return F;
}

FieldSample fields_fd(const SolutionSpec& s, const SpacetimePoint& x, double h) {
  // dA[mu][nu] = d_mu A^nu
  double dA[4][4];
  for (int mu = 0; mu < 4; ++mu) {
    SpacetimePoint p1 = x, p2 = x, m1 = x, m2 = x;
    p1[mu] += h;
    p2[mu] += 2 * h;
    m1[mu] -= h;
    m2[mu] -= 2 * h;
    const FourVector d =
        (8 * (potential(s, p1) - potential(s, m1)) - (potential(s, p2) - potential(s, m2))) / (12 * h);
    for (int nu = 0; nu < 4; ++nu) dA[mu][nu] = d[nu];
  }
  FieldSample F;
  for (int k = 1; k <= 3; ++k) F.eE[k - 1] = -dA[k][0] - dA[0][k];
  F.eB << dA[2][3] - dA[3][2], dA[3][1] - dA[1][3], dA[1][2] - dA[2][1];
  return F;
}

Averages averages_closed(const SolutionSpec& s, double xi) {
  validate(s);
  const Family seed = seed_family(s.family);
  if (seed == Family::FreeBessel) throw NotNormalizable("Bessel states are not square-integrable on the plane");
  Averages a;
  const double eps = eigenvalue(s), B = s.B;
  const int n = s.n;
  a.rho = s.m / eps;
  a.J0 = 1;
  a.Jz = s.pz / eps;
  if (seed == Family::InhomogeneousB) {
    const double K = 1.0 + 2 * n + s.M;
    a.Jphi = -B * n * (1.0 + n + s.M) / (K * K * eps);
  } else {
    // No short closed form here: the ratio of radial moments of q0 q1 and J0 is taken
    // exactly (polynomial times a Gaussian) on Gauss-Legendre blocks.
    const SolutionSpec st = seed_spec(s);
    const double mp = s.m + eps, Dp = mp * mp + s.pz * s.pz;
    const double span = 2 * std::sqrt(n + s.l + 1.0) + 6;
    const auto& gl = quad::gauss_legendre(32);
    double num = 0, den = 0;
    for (double lo = 0; lo < span; lo += 0.5)
      for (const auto& [u, w] : gl) {
        const double lam = lo + 0.25 * (u + 1);
        double q0, q1;
        reduced_profile(st, lam, q0, q1);
        num += w * lam * (-mp * q0 * q1 / B);
        den += w * lam * (Dp * q0 * q0 / (B * B) + q1 * q1 / 4);
      }
    a.Jphi = num / den;
  }
  if (is_dressed(s.family)) {
    const Waveform& wf = *s.waveform;
    const double om = wf.omega(), T = fdot_sq(wf, xi) / (2 * eps * eps * om * om);
    a.J0 = 1 + T;
    a.Jz = T;
    const double k = seed == Family::InhomogeneousB ? 3.0 * n * (n + s.M + 1) / (2.0 * (s.M + 1)) : double(n);
    a.x = k * wf.d2(xi) / (om * eps * eps);
    a.y = -k * wf.d1(xi) / (om * eps * eps);
  }
  return a;
}

Averages averages_quadrature(const SolutionSpec& s, double xi, int n_phi) {
  validate(s);
  const Family seed = seed_family(s.family);
  if (seed == Family::FreeBessel) throw NotNormalizable("Bessel states are not square-integrable on the plane");
  const double eps = eigenvalue(s), B = s.B;
  const bool dressed = is_dressed(s.family);
  const double om = dressed ? s.waveform->omega() : 1.0;
  const double t = dressed ? xi / om : 0.0;
  double sx = 0, sy = 0;
  if (dressed) {
    sx = s.waveform->f1(xi) / (eps * om * om);
    sy = s.waveform->f2(xi) / (eps * om * om);
  }
  using Acc = Eigen::Matrix<double, 6, 1>;  // rho, J0, Jphi, Jz, x J0, y J0
  auto ring = [&](double lp) -> Acc {
    Acc acc = Acc::Zero();
    const double r = 2 * lp / B;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2 * M_PI * (j + 0.5) / n_phi;
      const double xp = r * std::cos(ph), yp = r * std::sin(ph);
      SpacetimePoint x(t, xp - sx, yp - sy, 0.0);
      ColumnSpinor psi;
      try {
        psi = spinor(s, x);
      } catch (const OnAxis&) {
        continue;
      }
      const double j0 = psi.squaredNorm();
      const double sc = std::norm(psi[0]) + std::norm(psi[1]) - std::norm(psi[2]) - std::norm(psi[3]);
      const double j1 = psi.dot(alpha(1) * psi).real(), j2 = psi.dot(alpha(2) * psi).real();
      const double j3 = psi.dot(alpha(3) * psi).real();
      acc[0] += sc;
      acc[1] += j0;
      acc[2] += -std::sin(ph) * j1 + std::cos(ph) * j2;
      acc[3] += j3;
      acc[4] += xp * j0;
      acc[5] += yp * j0;
    }
    return acc * (2 * M_PI / n_phi) * lp;
  };
  const auto& gl = quad::gauss_legendre(24);
  auto block = [&](double a, double b) {
    Acc acc = Acc::Zero();
    for (const auto& [u, w] : gl) acc += w * ring(0.5 * (a + b) + 0.5 * (b - a) * u);
    return Acc(acc * 0.5 * (b - a));
  };
  std::function<Acc(double, double, int)> adapt = [&](double a, double b, int depth) -> Acc {
    const Acc whole = block(a, b);
    const double mid = 0.5 * (a + b);
    const Acc halves = block(a, mid) + block(mid, b);
    if (depth == 0 || (halves - whole).cwiseAbs().maxCoeff() < 1e-14) return halves;
    return adapt(a, mid, depth - 1) + adapt(mid, b, depth - 1);
  };
  // step out in blocks until past the bulk and the tail is negligible
  double width, bulk;
  if (seed == Family::InhomogeneousB) {
    const double a = (s.M + 1.0) / (2 * s.n + s.M + 1);
    width = 2 / a;
    bulk = (s.M + 2 * s.n + 4) / a;
  } else {
    width = 0.5;
    bulk = 2 * std::sqrt(s.n + s.l + 1.0) + 1;
  }
  Acc total = Acc::Zero();
  for (int k = 0; k < 4000; ++k) {
    const double a = k * width, b = a + width;
    const Acc part = adapt(a, b, 6);
    total += part;
    if (b > bulk && part.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  Averages out;
  out.rho = total[0];
  out.J0 = total[1];
  out.Jphi = total[2];
  out.Jz = total[3];
  out.x = total[4];
  out.y = total[5];
  return out;
}

VelocitySpin velocity_spin(const SolutionSpec& s, const SpacetimePoint& x) {
  validate(s);
  const SolutionSpec seed = seed_spec(s);
  const double eps = eigenvalue(s), m = s.m, B = s.B, P = s.pz;
  double px = x[1], py = x[2];
  const bool dressed = is_dressed(s.family) && !trivial_wave(s);
  double xi = 0;
  if (dressed) {
    xi = s.waveform->omega() * (x[0] - x[3]);
    shifted_coords(*s.waveform, eps, x, px, py);
  }
  const double r = std::hypot(px, py), lam = B * r / 2, ph = std::atan2(py, px);
  double q0, q1;
  reduced_profile(seed, lam, q0, q1);
  const double mp = m + eps, Dp = mp * mp + P * P, Dm = mp * mp - P * P;
  const double rho = std::abs(Dm * q0 * q0 / (B * B) - q1 * q1 / 4);
  if (rho == 0) throw OnAxis("velocity undefined where the density vanishes");
  const double J0 = Dp * q0 * q0 / (B * B) + q1 * q1 / 4;
  const double Jphi = -mp * q0 * q1 / B;
  const double Jz = 2 * mp * P * q0 * q0 / (B * B);
  VelocitySpin o;
  o.v << J0, -std::sin(ph) * Jphi, std::cos(ph) * Jphi, Jz;
  o.v /= rho;
  o.s << o.v[3], P / mp * o.v[1], P / mp * o.v[2], (Dp * q0 * q0 / (B * B) - q1 * q1 / 4) / rho;
  if (dressed) {
    const Waveform& wf = *s.waveform;
    const double eo = eps * wf.omega();
    const double T = fdot_sq(wf, xi) / (2 * eo * eo);
    const double s1 = wf.d1(xi) / eo, s2 = wf.d2(xi) / eo;
    const FourVector v = o.v;
    const double k = -T * v[0] + s1 * v[1] + s2 * v[2];
    o.v << v[0] - k, v[1] - v[0] * s1, v[2] - v[0] * s2, v[3] - k;
    // the seed spin is +-e3 according to the sign of psibar psi
    o.s << -T, s1, s2, 1 - T;
    o.s *= std::copysign(1.0, Dm * q0 * q0 / (B * B) - q1 * q1 / 4);
  }
  return o;
}

}  // namespace rdi::catalog
