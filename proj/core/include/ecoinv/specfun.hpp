#pragma once

// Bessel and Hankel functions of integer order and real argument.
//
// J_n is evaluated by the ascending series for small arguments, by Miller's
// backward recurrence at moderate arguments and by the Hankel asymptotic
// expansion for large arguments. Y_n for n >= 2 comes from upward recurrence,
// which is stable for the second kind.

#include "ecoinv/types.hpp"

namespace ecoinv::specfun {

/// J_n(x) for n >= 0 and x >= 0. Throws DomainError otherwise.
double bessel_j(int n, double x);

/// Y_n(x) for n >= 0 and x > 0. Throws DomainError for x <= 0.
double bessel_y(int n, double x);

/// H_n^{(1)}(x) = J_n(x) + i Y_n(x); x > 0.
cplx hankel1(int n, double x);

/// d/dx H_n^{(1)}(x) = H_{n-1}^{(1)}(x) - (n/x) H_n^{(1)}(x), with H_{-1} = -H_1.
cplx hankel1_deriv(int n, double x);

/// d/dx J_n(x).
double bessel_j_deriv(int n, double x);

/// H_0 .. H_3 at one argument. The kernels need exactly these, and
/// computing them together shares the J_0/J_1/Y_0/Y_1 evaluation.
struct HankelSet {
  cplx h0, h1, h2, h3;
};
HankelSet hankel1_0to3(double x);

}  // namespace ecoinv::specfun
