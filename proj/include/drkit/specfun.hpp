#pragma once

#include <utility>
#include <vector>

#include "drkit/jet.hpp"

namespace drkit {

// Gamma function for real x > 0.
double gamma_fn(double x);

// Generalized Laguerre polynomial L_ell^a(t) by the three-term recurrence.
double laguerre(int ell, double a, double t);

// L_0^a(t), ..., L_L^a(t).
std::vector<double> laguerre_all(int L, double a, double t);

// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);

// log K_nu(x); stays finite where K_nu under- or overflows.
double log_bessel_k(double nu, double x);

struct ST {
  double S;
  double T;
};

// S(u) = u / sinh u and T(u) = u / tanh u.
ST st_funcs(double u);

// Taylor jets of S and T at u0.
std::pair<Jet<double>, Jet<double>> st_jets(double u0, int order);

}  // namespace drkit
