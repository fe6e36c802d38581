#pragma once
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace rdi::quad {

// Adaptive Simpson on [a,b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                        int max_depth = 50);

// Adaptive Gauss-Kronrod (G7/K15) on [a,b] with absolute+relative tolerance.
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                     int max_depth = 40);

// n-point Gauss-Legendre nodes and weights on [-1,1], cached per n.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

}  // namespace rdi::quad
