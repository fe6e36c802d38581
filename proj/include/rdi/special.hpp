#pragma once
// Special functions used by the solution catalog.

namespace rdi::special {

// J_nu(x) for integer nu in [0,200] and x in [0,1e4]; DomainError outside.
double bessel_j(int nu, double x);
// Any integer order and real argument, by parity from bessel_j.
double bessel_j_int(int nu, double x);

// Generalized Laguerre L_n^alpha(x), n <= 100, alpha > -1 (recurrence works for any alpha).
double laguerre(int n, double alpha, double x);

// 1F1(-n; b; x), terminating
double hyp1f1_poly(int n, double b, double x);
// U(-n, b, x), terminating
double tricomi_u_poly(int n, double b, double x);

double factorial(int n);
double binomial(double n, int k);
double pochhammer(double a, int n);

}  // namespace rdi::special
