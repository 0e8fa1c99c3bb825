#pragma once

// Fundamental solutions of the 2D Helmholtz and Navier equations and their
// spatial derivatives. All derivatives are taken with respect to the first
// argument x.

#include <array>

#include "ecoinv/types.hpp"

namespace ecoinv {

/// Isotropic elastic background with unit mass density.
class ElasticMedium {
 public:
  /// Throws ValidationError unless mu > 0, lambda + mu > 0 and omega > 0.
  ElasticMedium(double lambda, double mu, double omega);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double omega() const { return omega_; }
  double kp() const { return kp_; }
  double ks() const { return ks_; }
  double cp() const { return cp_; }
  double cs() const { return cs_; }

 private:
  double lambda_, mu_, omega_;
  double kp_, ks_, cp_, cs_;
};

/// Compressional or shear mode.
enum class Wave { p, s };

/// One excitation: a point source at `z` with unit polarization `p`.
struct SourceSpec {
  Vec2 z = Vec2::Zero();
  Vec2 p = Vec2::UnitX();

  /// Builds a source, normalizing the polarization. Throws ValidationError for p = 0.
  static SourceSpec make(const Vec2& z, const Vec2& p);
};

namespace kernels {

/// Points closer than this are treated as coincident.
inline constexpr double kSingularityGuard = 1e-12;

double wavenumber(Wave alpha, const ElasticMedium& medium);

/// Phi_alpha(x, z) = (i/4) H_0^{(1)}(k_alpha |x - z|).
cplx phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z);
CVec2 grad_phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z);
Mat2c hess_phi(Wave alpha, const ElasticMedium& medium, const Vec2& x, const Vec2& z);
/// [l] = d/dx_l of the Hessian of Phi_alpha.
std::array<Mat2c, 2> hess_phi_grad(Wave alpha, const ElasticMedium& medium, const Vec2& x,
                                   const Vec2& z);

/// Compressional part -(1/(mu ks^2)) grad grad^T Phi_p.
Mat2c green_p(const ElasticMedium& medium, const Vec2& x, const Vec2& z);
/// Shear part (1/mu)(I + ks^-2 grad grad^T) Phi_s.
Mat2c green_s(const ElasticMedium& medium, const Vec2& x, const Vec2& z);
/// Navier Green tensor G = G_p + G_s.
Mat2c green(const ElasticMedium& medium, const Vec2& x, const Vec2& z);
/// The closed form (1/mu) Phi_s I + omega^-2 grad grad^T (Phi_s - Phi_p); an
/// independent route to `green`.
Mat2c green_closed_form(const ElasticMedium& medium, const Vec2& x, const Vec2& z);
/// [l] = d/dx_l G(x, z).
std::array<Mat2c, 2> green_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& z);

/// Helmholtz-decomposition kernel
///   K = [[d1 Phi_p,  d2 Phi_s],
///        [d2 Phi_p, -d1 Phi_s]]
/// mapping the densities (g1, g2) of the p- and s-potentials to displacement.
Mat2c kernel_K(const ElasticMedium& medium, const Vec2& x, const Vec2& y);
/// [l] = d/dx_l K(x, y). Only second derivatives of Phi appear.
std::array<Mat2c, 2> kernel_K_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& y);

/// K and its gradient from one set of Hankel evaluations.
struct KernelWithGrad {
  Mat2c k;
  std::array<Mat2c, 2> dk;
};
KernelWithGrad kernel_K_with_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& y);

struct GreenWithGrad {
  Mat2c g;
  std::array<Mat2c, 2> dg;
};
GreenWithGrad green_with_grad(const ElasticMedium& medium, const Vec2& x, const Vec2& z);

}  // namespace kernels
}  // namespace ecoinv
