#pragma once

// Dirichlet eigenvalues of the negative Lame operator inside a disk.
//
// omega^2 is an eigenvalue for the disk of radius r exactly when one of the
// determinants
//   P_n(r) = | kp r J_n'(kp r)    i n J_n(ks r)   |
//            | i n J_n(kp r)     -ks r J_n'(ks r) |
// vanishes. count_n0 sums the weights (2n+1) over the positive zeros of P_n
// below R.

#include <vector>

#include "ecoinv/kernels.hpp"

namespace ecoinv {

struct EigenZero {
  double r = 0.0;
  /// max |P_n| at the ends of the scan bracket that isolated the zero.
  double scale = 0.0;
};

struct EigencountResult {
  long long n0 = 0;
  int n_max = 0;
  double scan_step = 0.0;
  /// zeros[n] = increasing zeros of P_n in (0, R).
  std::vector<std::vector<EigenZero>> zeros;
};

namespace eigenguard {

/// P_n(r) = -kp ks r^2 J_n'(kp r) J_n'(ks r) + n^2 J_n(kp r) J_n(ks r).
double pn(const ElasticMedium& medium, int n, double r);

/// Default scan step min(2 pi / ks, 0.05) / 4.
double default_scan_step(const ElasticMedium& medium);

/// Scans orders 0..n_max. Throws TruncationError if P_{n_max} has a zero below R.
/// `scan_step` <= 0 selects the default.
EigencountResult count_n0(const ElasticMedium& medium, double radius, int n_max, double scan_step = 0.0);

/// Largest order that can have a zero below `radius`, with margin.
int suggested_n_max(const ElasticMedium& medium, double radius);

/// True when some P_n has a zero within `rel_tol * radius` of `radius`.
bool near_eigenvalue(const ElasticMedium& medium, double radius, double rel_tol = 1e-3);

}  // namespace eigenguard
}  // namespace ecoinv
