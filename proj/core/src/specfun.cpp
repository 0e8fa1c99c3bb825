#include "ecoinv/specfun.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ecoinv/errors.hpp"

namespace ecoinv::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Crossovers between the three evaluation regimes. Below kSeriesMax the
// ascending series loses at most two digits to cancellation; above
// kAsymptoticMin the smallest term of the Hankel expansion is below 1e-20.
constexpr double kSeriesMax = 8.0;
constexpr double kAsymptoticMin = 25.0;

struct Base {
  // J_0..J_3 and Y_0, Y_1 at the same argument.
  std::array<double, 4> j{};
  double y0 = 0.0;
  double y1 = 0.0;
};

// Ascending series. Valid (to ~1e-14) for 0 < x < kSeriesMax.
Base series_base(double x) {
  const double q = 0.25 * x * x;
  const double half = 0.5 * x;

  // J_n = (x/2)^n sum_k (-q)^k / (k! (k+n)!)
  Base b;
  for (int n = 0; n < 4; ++n) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double term = std::pow(half, n) / fact;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<double>(k) * (k + n));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    b.j[static_cast<std::size_t>(n)] = sum;
  }

  const double lead = (2.0 / kPi) * (std::log(half) + kEulerGamma);

  // Y_0 = lead J_0 + (2/pi) sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2
  {
    double term = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      const double add = -harmonic * term;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    b.y0 = lead * b.j[0] + (2.0 / kPi) * sum;
  }

  // Y_1 = -2/(pi x) + lead J_1 - (1/pi) sum_k (-1)^k (H_k + H_{k+1}) (x/2)^{2k+1}/(k!(k+1)!)
  {
    double term = half;  // k = 0
    double hk = 0.0;
    double hk1 = 1.0;
    double sum = (hk + hk1) * term;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<double>(k) * (k + 1));
      hk = hk1;
      hk1 += 1.0 / (k + 1);
      const double add = (hk + hk1) * term;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    b.y1 = -2.0 / (kPi * x) + lead * b.j[1] - sum / kPi;
  }
  return b;
}

// Miller's backward recurrence: J_0..J_{n_max}, normalized by
// J_0 + 2 sum J_{2k} = 1. Start order is chosen so that J_start(x) is far
// below double precision relative to the values returned.
std::vector<double> miller_sequence(double x, int n_max) {
  int start = static_cast<int>(std::max<double>(n_max, x) + 40.0 + 6.0 * std::cbrt(std::max<double>(n_max, x)));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start) + 1] = 0.0;
  j[static_cast<std::size_t>(start)] = 1e-30;
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    const auto uk = static_cast<std::size_t>(k);
    j[uk - 1] = k * two_over_x * j[uk] - j[uk + 1];
    if (std::abs(j[uk - 1]) > 1e250) {
      for (std::size_t i = uk - 1; i < j.size(); ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (std::size_t k = 2; k <= static_cast<std::size_t>(start); k += 2) norm += 2.0 * j[k];
  for (double& v : j) v /= norm;
  return j;
}

Base miller_base(double x) {
  const std::vector<double> j = miller_sequence(x, 3);
  Base b;
  for (std::size_t n = 0; n < 4; ++n) b.j[n] = j[n];

  // Neumann series for Y_0 and its derivative for Y_1.
  const double lead = (2.0 / kPi) * (std::log(0.5 * x) + kEulerGamma);
  double s0 = 0.0;
  double s1 = 0.0;
  const std::size_t kmax = (j.size() - 2) / 2;
  double sign = -1.0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    s0 += sign * j[2 * k] / static_cast<double>(k);
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
    sign = -sign;
  }
  b.y0 = lead * j[0] - (4.0 / kPi) * s0;
  b.y1 = -(2.0 / (kPi * x)) * j[0] + lead * j[1] + (2.0 / kPi) * s1;
  return b;
}

// Hankel asymptotic expansion of H_nu^{(1)} for x >= kAsymptoticMin.
cplx hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  cplx sum = 1.0;
  cplx term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 120; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= kI * ((mu - odd * odd) / (8.0 * k * x));
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    sum += term;
    last = mag;
    if (mag < 1e-17) break;
  }
  const double phase = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * std::polar(1.0, phase) * sum;
}

Base asymptotic_base(double x) {
  const cplx h0 = hankel_asymptotic(0, x);
  const cplx h1 = hankel_asymptotic(1, x);
  const cplx h2 = (2.0 / x) * h1 - h0;
  const cplx h3 = (4.0 / x) * h2 - h1;
  Base b;
  b.j = {h0.real(), h1.real(), h2.real(), h3.real()};
  b.y0 = h0.imag();
  b.y1 = h1.imag();
  return b;
}

Base base(double x) {
  if (x < kSeriesMax) return series_base(x);
  if (x < kAsymptoticMin) return miller_base(x);
  return asymptotic_base(x);
}

// Ascending series for arbitrary order.
double series_jn(int n, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  // (x/2)^n / n! accumulated stepwise to avoid overflow for large n.
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  for (int k = 1; k < 300; ++k) {
    term *= -q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

void check_order(int n) {
  if (n < 0) throw DomainError("Bessel order must be nonnegative, got " + std::to_string(n));
}

}  // namespace

double bessel_j(int n, double x) {
  check_order(n);
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j requires x >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n <= 3) return base(x).j[static_cast<std::size_t>(n)];
  if (x < kSeriesMax) return series_jn(n, x);
  if (static_cast<double>(n) < x && x >= kAsymptoticMin) {
    // Upward recurrence is stable below the turning point.
    Base b = asymptotic_base(x);
    double jm = b.j[2];
    double jc = b.j[3];
    for (int k = 3; k < n; ++k) {
      const double jn = (2.0 * k / x) * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  return miller_sequence(x, n)[static_cast<std::size_t>(n)];
}

double bessel_y(int n, double x) {
  check_order(n);
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_y requires x > 0");
  const Base b = base(x);
  if (n == 0) return b.y0;
  double ym = b.y0;
  double yc = b.y1;
  for (int k = 1; k < n; ++k) {
    const double yn = (2.0 * k / x) * yc - ym;
    ym = yc;
    yc = yn;
  }
  return yc;
}

cplx hankel1(int n, double x) {
  check_order(n);
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel1 requires x > 0");
  if (n <= 1) {
    const Base b = base(x);
    return n == 0 ? cplx(b.j[0], b.y0) : cplx(b.j[1], b.y1);
  }
  return {bessel_j(n, x), bessel_y(n, x)};
}

cplx hankel1_deriv(int n, double x) {
  check_order(n);
  if (n == 0) return -hankel1(1, x);
  return hankel1(n - 1, x) - (static_cast<double>(n) / x) * hankel1(n, x);
}

double bessel_j_deriv(int n, double x) {
  check_order(n);
  if (n == 0) return -bessel_j(1, x);
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  // J_n' = (J_{n-1} - J_{n+1}) / 2 avoids the n/x division near the origin.
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

HankelSet hankel1_0to3(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel1 requires x > 0");
  const Base b = base(x);
  const double y2 = (2.0 / x) * b.y1 - b.y0;
  const double y3 = (4.0 / x) * y2 - b.y1;
  return {cplx(b.j[0], b.y0), cplx(b.j[1], b.y1), cplx(b.j[2], y2), cplx(b.j[3], y3)};
}

}  // namespace ecoinv::specfun
