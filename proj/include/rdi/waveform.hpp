#pragma once
// Plane-wave driving functions f1(xi), f2(xi) with xi = omega (t - z).
#include <functional>
#include <string>

namespace rdi {

class Waveform {
 public:
  enum class Family { CircularSin, LinearSin, PulseEnvelope, Custom };

  struct Callbacks {
    std::function<double(double)> f1, f2, d1, d2, dd1, dd2;
    std::function<double(double)> gauge;  // optional; quadrature if empty
  };

  static Waveform circular(double amplitude, double omega);
  // polarized along y: f1 = 0, f2 = a sin(xi)
  static Waveform linear(double amplitude, double omega);
  // circular carrier under a Gaussian envelope exp(-xi^2 / (2 tau^2))
  static Waveform pulse(double amplitude, double omega, double tau);
  static Waveform custom(double omega, Callbacks cb);

  Family family() const { return family_; }
  std::string name() const;
  double amplitude() const { return a_; }
  double omega() const { return omega_; }
  double tau() const { return tau_; }

  double f1(double xi) const;
  double f2(double xi) const;
  double d1(double xi) const;
  double d2(double xi) const;
  double dd1(double xi) const;
  double dd2(double xi) const;
  // int_0^xi (d1^2 + d2^2)
  double gauge_integral(double xi) const;

 private:
  Family family_ = Family::CircularSin;
  double a_ = 0, omega_ = 1, tau_ = 1;
  Callbacks cb_;
};

}  // namespace rdi
