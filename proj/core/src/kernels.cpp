#include "ecoinv/kernels.hpp"

#include <cmath>

#include "ecoinv/errors.hpp"
#include "ecoinv/specfun.hpp"

namespace ecoinv {

ElasticMedium::ElasticMedium(double lambda, double mu, double omega)
    : lambda_(lambda), mu_(mu), omega_(omega) {
  if (!(mu > 0.0)) throw ValidationError("Lame constant mu must be positive");
  if (!(lambda + mu > 0.0)) throw ValidationError("Lame constants must satisfy 2 lambda + 2 mu > 0");
  if (!(omega > 0.0)) throw ValidationError("angular frequency must be positive");
  cp_ = std::sqrt(lambda + 2.0 * mu);
  cs_ = std::sqrt(mu);
  kp_ = omega / cp_;
  ks_ = omega / cs_;
}

SourceSpec SourceSpec::make(const Vec2& z, const Vec2& p) {
  const double n = p.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("source polarization must be nonzero");
  return SourceSpec{z, p / n};
}

namespace kernels {
namespace {

// Derivatives of (i/4) H_0(k r) up to third order for one wavenumber.
struct Radial {
  double k = 0.0;
  double r = 0.0;
  Vec2 d = Vec2::Zero();
  specfun::HankelSet h;
};

Radial radial(double k, const Vec2& x, const Vec2& z) {
  Radial out;
  out.k = k;
  out.d = x - z;
  out.r = out.d.norm();
  if (out.r < kSingularityGuard) throw SingularityError("kernel evaluated at its source point");
  out.h = specfun::hankel1_0to3(k * out.r);
  return out;
}

constexpr cplx kQuarterI{0.0, 0.25};

cplx value(const Radial& q) { return kQuarterI * q.h.h0; }

CVec2 gradient(const Radial& q) {
  const cplx c = -kQuarterI * q.k * q.h.h1 / q.r;
  return CVec2(c * q.d.x(), c * q.d.y());
}

Mat2c hessian(const Radial& q) {
  const cplx a = kQuarterI * q.k * q.k * q.h.h2 / (q.r * q.r);
  const cplx b = -kQuarterI * q.k * q.h.h1 / q.r;
  Mat2c m;
  m(0, 0) = a * q.d.x() * q.d.x() + b;
  m(0, 1) = a * q.d.x() * q.d.y();
  m(1, 0) = m(0, 1);
  m(1, 1) = a * q.d.y() * q.d.y() + b;
  return m;
}

// d_l d_i d_j Phi = (i/4)[-k^3 H_3 d_i d_j d_l / r^3 + k^2 H_2/r^2 (delta_il d_j + delta_jl d_i + delta_ij d_l)]
std::array<Mat2c, 2> third(const Radial& q) {
  const cplx a = -kQuarterI * q.k * q.k * q.k * q.h.h3 / (q.r * q.r * q.r);
  const cplx b = kQuarterI * q.k * q.k * q.h.h2 / (q.r * q.r);
  std::array<Mat2c, 2> out;
  for (int l = 0; l < 2; ++l) {
    Mat2c& m = out[static_cast<std::size_t>(l)];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double dil = i == l ? 1.0 : 0.0;
        const double djl = j == l ? 1.0 : 0.0;
        const double dij = i == j ? 1.0 : 0.0;
        m(i, j) = a * q.d[i] * q.d[j] * q.d[l] + b * (dil * q.d[j] + djl * q.d[i] + dij * q.d[l]);
      }
    }
  }
  return out;
}

Mat2c assemble_K(const CVec2& gp, const CVec2& gs) {
  Mat2c k;
  k(0, 0) = gp.x();
  k(1, 0) = gp.y();
  k(0, 1) = gs.y();
  k(1, 1) = -gs.x();
  return k;
}

// d_l K from the Hessians: column 1 is d_l grad Phi_p, column 2 is the
// rotated d_l grad Phi_s.
std::array<Mat2c, 2> assemble_dK(const Mat2c& hp, const Mat2c& hs) {
  std::array<Mat2c, 2> out;
  for (int l = 0; l < 2; ++l) {
    Mat2c& m = out[static_cast<std::size_t>(l)];
    m(0, 0) = hp(0, l);
    m(1, 0) = hp(1, l);
    m(0, 1) = hs(1, l);
    m(1, 1) = -hs(0, l);
  }
  return out;
}

}  // namespace

double wavenumber(Wave alpha, const ElasticMedium& medium) {
  return alpha == Wave::p ? medium.kp() : medium.ks();
}

cplx phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  return value(radial(wavenumber(alpha, medium), x, z));
}

CVec2 grad_phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  return gradient(radial(wavenumber(alpha, medium), x, z));
}

Mat2c hess_phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  return hessian(radial(wavenumber(alpha, medium), x, z));
}

std::array<Mat2c, 2> hess_phi_grad(Wave alpha, const ElasticMedium& medium, const Vec2& x,
                                   const Vec2& z) {
  return third(radial(wavenumber(alpha, medium), x, z));
}

Mat2c green_p(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  const double scale = -1.0 / (medium.mu() * medium.ks() * medium.ks());
  return scale * hess_phi(Wave::p, medium, x, z);
}

Mat2c green_s(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  const Radial q = radial(medium.ks(), x, z);
  const double ks2 = medium.ks() * medium.ks();
  return (value(q) * Mat2c::Identity() + hessian(q) / ks2) / medium.mu();
}

Mat2c green(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  return green_p(medium, x, z) + green_s(medium, x, z);
}

Mat2c green_closed_form(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  const Radial qp = radial(medium.kp(), x, z);
  const Radial qs = radial(medium.ks(), x, z);
  const double w2 = medium.omega() * medium.omega();
  return (value(qs) / medium.mu()) * Mat2c::Identity() + (hessian(qs) - hessian(qp)) / w2;
}

GreenWithGrad green_with_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  const Radial qp = radial(medium.kp(), x, z);
  const Radial qs = radial(medium.ks(), x, z);
  const double w2 = medium.omega() * medium.omega();
  GreenWithGrad out;
  out.g = (value(qs) / medium.mu()) * Mat2c::Identity() + (hessian(qs) - hessian(qp)) / w2;
  const CVec2 gs = gradient(qs);
  const auto tp = third(qp);
  const auto ts = third(qs);
  for (std::size_t l = 0; l < 2; ++l) {
    out.dg[l] = (gs[static_cast<Eigen::Index>(l)] / medium.mu()) * Mat2c::Identity() + (ts[l] - tp[l]) / w2;
  }
  return out;
}

std::array<Mat2c, 2> green_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& z) {
  return green_with_grad(medium, x, z).dg;
}

Mat2c kernel_K(const ElasticMedium& medium, const Vec2& x, const Vec2& y) {
  return assemble_K(grad_phi(Wave::p, medium, x, y), grad_phi(Wave::s, medium, x, y));
}

std::array<Mat2c, 2> kernel_K_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& y) {
  return assemble_dK(hess_phi(Wave::p, medium, x, y), hess_phi(Wave::s, medium, x, y));
}

KernelWithGrad kernel_K_with_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& y) {
  const Radial qp = radial(medium.kp(), x, y);
  const Radial qs = radial(medium.ks(), x, y);
  return {assemble_K(gradient(qp), gradient(qs)), assemble_dK(hessian(qp), hessian(qs))};
}

}  // namespace kernels
}  // namespace ecoinv
