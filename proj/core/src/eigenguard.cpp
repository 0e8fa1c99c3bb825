#include "ecoinv/eigenguard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecoinv/errors.hpp"
#include "ecoinv/specfun.hpp"

namespace ecoinv::eigenguard {
namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::vector<EigenZero> zeros_of_order(const ElasticMedium& medium, int n, double upper, double step) {
  std::vector<EigenZero> out;
  double r_prev = step;
  double v_prev = pn(medium, n, r_prev);
  const auto steps = static_cast<long long>(std::ceil((upper - step) / step));
  for (long long i = 1; i <= steps; ++i) {
    const double r = std::min(upper, step * static_cast<double>(i + 1));
    const double v = pn(medium, n, r);
    // Underflowed samples carry no sign information; keep the last bracket end.
    if (sign_of(v) == 0) continue;
    if (sign_of(v_prev) != 0 && sign_of(v) != sign_of(v_prev)) {
      double lo = r_prev;
      double hi = r;
      double flo = v_prev;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = pn(medium, n, mid);
        if (sign_of(fm) == sign_of(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back({0.5 * (lo + hi), std::max(std::abs(v_prev), std::abs(v))});
    }
    r_prev = r;
    v_prev = v;
  }
  return out;
}

}  // namespace

double pn(const ElasticMedium& medium, int n, double r) {
  if (!(r > 0.0)) throw DomainError("P_n requires r > 0");
  const double xp = medium.kp() * r;
  const double xs = medium.ks() * r;
  const double dn = n;
  return -xp * xs * specfun::bessel_j_deriv(n, xp) * specfun::bessel_j_deriv(n, xs) +
         dn * dn * specfun::bessel_j(n, xp) * specfun::bessel_j(n, xs);
}

double default_scan_step(const ElasticMedium& medium) {
  return std::min(kTwoPi / medium.ks(), 0.05) / 4.0;
}

int suggested_n_max(const ElasticMedium& medium, double radius) {
  return static_cast<int>(std::ceil(1.5 * medium.ks() * radius)) + 8;
}

EigencountResult count_n0(const ElasticMedium& medium, double radius, int n_max, double scan_step) {
  if (!(radius > 0.0)) throw ValidationError("eigencount radius must be positive");
  if (n_max < 0) throw ValidationError("n_max must be nonnegative");
  const double step = scan_step > 0.0 ? scan_step : default_scan_step(medium);

  EigencountResult res;
  res.n_max = n_max;
  res.scan_step = step;
  res.zeros.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto z = zeros_of_order(medium, n, radius, step);
    // The weight is (2n+1) per zero.
    res.n0 += static_cast<long long>(z.size()) * (2LL * n + 1);
    res.zeros[static_cast<std::size_t>(n)] = std::move(z);
  }
  if (!res.zeros.back().empty()) {
    std::ostringstream msg;
    msg << "P_" << n_max << " has a zero below R = " << radius << "; raise n_max";
    throw TruncationError(msg.str());
  }
  return res;
}

bool near_eigenvalue(const ElasticMedium& medium, double radius, double rel_tol) {
  const double upper = radius * (1.0 + rel_tol);
  const double step = std::min(default_scan_step(medium), 0.5 * rel_tol * radius);
  const int n_max = suggested_n_max(medium, upper);
  for (int n = 0; n <= n_max; ++n) {
    for (const EigenZero& z : zeros_of_order(medium, n, upper, step)) {
      if (std::abs(z.r - radius) <= rel_tol * radius) return true;
    }
  }
  return false;
}

}  // namespace ecoinv::eigenguard
