#include "rdi/waveform.hpp"

#include <cmath>

#include "rdi/errors.hpp"
#include "rdi/quadrature.hpp"

namespace rdi {

Waveform Waveform::circular(double amplitude, double omega) {
  Waveform w;
  w.family_ = Family::CircularSin;
  w.a_ = amplitude;
  w.omega_ = omega;
  return w;
}

Waveform Waveform::linear(double amplitude, double omega) {
  Waveform w = circular(amplitude, omega);
  w.family_ = Family::LinearSin;
  return w;
}

Waveform Waveform::pulse(double amplitude, double omega, double tau) {
  if (!(tau > 0)) throw DomainError("pulse width must be positive");
  Waveform w = circular(amplitude, omega);
  w.family_ = Family::PulseEnvelope;
  w.tau_ = tau;
  return w;
}

Waveform Waveform::custom(double omega, Callbacks cb) {
  if (!cb.f1 || !cb.f2 || !cb.d1 || !cb.d2 || !cb.dd1 || !cb.dd2)
    throw DomainError("custom waveform needs f, f' and f'' callbacks for both components");
  Waveform w;
  w.family_ = Family::Custom;
  w.omega_ = omega;
  w.cb_ = std::move(cb);
  return w;
}

std::string Waveform::name() const {
  switch (family_) {
    case Family::CircularSin: return "circular";
    case Family::LinearSin: return "linear";
    case Family::PulseEnvelope: return "pulse";
    default: return "custom";
  }
}

namespace {
// envelope g and its derivatives
struct Env {
  double g, g1, g2;
};
Env envelope(double xi, double tau) {
  const double t2 = tau * tau;
  const double g = std::exp(-xi * xi / (2 * t2));
  return {g, -xi / t2 * g, (xi * xi / (t2 * t2) - 1 / t2) * g};
}
}  // namespace

double Waveform::f1(double xi) const {
  switch (family_) {
    case Family::CircularSin: return a_ * std::cos(xi);
    case Family::LinearSin: return 0.0;
    case Family::PulseEnvelope: return a_ * envelope(xi, tau_).g * std::cos(xi);
    default: return cb_.f1(xi);
  }
}

double Waveform::f2(double xi) const {
  switch (family_) {
    case Family::CircularSin:
    case Family::LinearSin: return a_ * std::sin(xi);
    case Family::PulseEnvelope: return a_ * envelope(xi, tau_).g * std::sin(xi);
    default: return cb_.f2(xi);
  }
}

double Waveform::d1(double xi) const {
  switch (family_) {
    case Family::CircularSin: return -a_ * std::sin(xi);
    case Family::LinearSin: return 0.0;
    case Family::PulseEnvelope: {
      const Env e = envelope(xi, tau_);
      return a_ * (e.g1 * std::cos(xi) - e.g * std::sin(xi));
    }
    default: return cb_.d1(xi);
  }
}

double Waveform::d2(double xi) const {
  switch (family_) {
    case Family::CircularSin:
    case Family::LinearSin: return a_ * std::cos(xi);
    case Family::PulseEnvelope: {
      const Env e = envelope(xi, tau_);
      return a_ * (e.g1 * std::sin(xi) + e.g * std::cos(xi));
    }
    default: return cb_.d2(xi);
  }
}

double Waveform::dd1(double xi) const {
  switch (family_) {
    case Family::CircularSin: return -a_ * std::cos(xi);
    case Family::LinearSin: return 0.0;
    case Family::PulseEnvelope: {
      const Env e = envelope(xi, tau_);
      return a_ * (e.g2 * std::cos(xi) - 2 * e.g1 * std::sin(xi) - e.g * std::cos(xi));
    }
    default: return cb_.dd1(xi);
  }
}

double Waveform::dd2(double xi) const {
  switch (family_) {
    case Family::CircularSin:
    case Family::LinearSin: return -a_ * std::sin(xi);
    case Family::PulseEnvelope: {
      const Env e = envelope(xi, tau_);
      return a_ * (e.g2 * std::sin(xi) + 2 * e.g1 * std::cos(xi) - e.g * std::sin(xi));
    }
    default: return cb_.dd2(xi);
  }
}

double Waveform::gauge_integral(double xi) const {
  switch (family_) {
    case Family::CircularSin: return a_ * a_ * xi;
    case Family::LinearSin: return a_ * a_ * (xi / 2 + std::sin(2 * xi) / 4);
    default:
      if (family_ == Family::Custom && cb_.gauge) return cb_.gauge(xi);
      return quad::adaptive_simpson([this](double s) { return d1(s) * d1(s) + d2(s) * d2(s); }, 0.0, xi, 1e-10);
  }
}

}  // namespace rdi
