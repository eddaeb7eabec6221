#pragma once

// The Bogoliubov (Kubo-Mori) metric in its three formulations and the two
// dually affine connections.
//
//   g_{sigma,tau}(rho) = int_0^1 Tr rho^u (log sigma - log rho) rho^{1-u}
//                                 (log tau - log rho) du
//                        - D(rho||sigma) D(rho||tau)
//
// evaluated through the duhamel_sandwich kernel (no quadrature), equal to the
// superoperator form (G_rho P Omega, Q Omega) with P, Q the chi-chart values,
// and to the mixed second derivative -d_s d_t D(sigma_s || tau_t) at 0.
//
// Mixture geodesics are affine combinations of states; exponential geodesics
// interpolate log-densities with a convex normalising function zeta.

#include "qig/charts.hpp"
#include "qig/core.hpp"
#include "qig/gns.hpp"
#include "qig/matfun.hpp"
#include "qig/states.hpp"

#include <cmath>
#include <utility>

namespace qig {

// The family sigma_s = exp(log rho + s(log sigma - log rho)) / Z(s) joining
// rho (s=0) to sigma (s=1).
class InterpolationFamily {
 public:
  InterpolationFamily(DensityMatrix rho, DensityMatrix sigma)
      : rho_(std::move(rho)),
        sigma_(std::move(sigma)),
        log_rho_(rho_.log()),
        direction_(sigma_.log() - log_rho_) {}

  const DensityMatrix& start() const { return rho_; }
  const DensityMatrix& end() const { return sigma_; }

  double partition(double s) const {
    return mat_exp(spectral(cmat(log_rho_ + s * direction_))).trace().real();
  }

  DensityMatrix at(double s) const {
    cmat m = mat_exp(spectral(cmat(log_rho_ + s * direction_)));
    return DensityMatrix(m / m.trace().real());
  }

 private:
  DensityMatrix rho_;
  DensityMatrix sigma_;
  cmat log_rho_;
  cmat direction_;
};

inline DensityMatrix interp(const InterpolationFamily& family, double s) {
  return family.at(s);
}

// Exact kernel evaluation of the Bogoliubov inner product.
inline double bogoliubov_metric(const DensityMatrix& rho,
                                const DensityMatrix& sigma,
                                const DensityMatrix& tau) {
  cmat a = sigma.log() - rho.log();
  cmat b = tau.log() - rho.log();
  const double integral = (duhamel_sandwich(rho, a) * b).trace().real();
  return integral -
         umegaki_divergence(rho, sigma) * umegaki_divergence(rho, tau);
}

// Defining formulation: central second mixed difference of the divergence
// along the two exponential interpolations. Verification oracle for
// bogoliubov_metric, O(h^2) accurate.
inline double metric_fd(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const DensityMatrix& tau, double h = 1e-4) {
  if (!(h >= 1e-5 && h <= 1e-3))
    throw DomainError("metric_fd: step must lie in [1e-5, 1e-3]");
  InterpolationFamily fs(rho, sigma);
  InterpolationFamily ft(rho, tau);
  auto d = [&](double s, double t) {
    return umegaki_divergence(fs.at(s), ft.at(t));
  };
  return -(d(h, h) - d(h, -h) - d(-h, h) + d(-h, -h)) / (4.0 * h * h);
}

// Riemannian formulation: (G_rho P Omega, Q Omega) with P = chi_rho(sigma),
// Q = chi_rho(tau).
inline double metric_via_G(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const DensityMatrix& tau) {
  GnsSpace space(rho);
  MetricSuperoperator g(space);
  GnsVector omega = omega_vector(space);
  GnsVector vp = commutant_apply(chi_chart(space, sigma).K(), omega);
  GnsVector vq = commutant_apply(chi_chart(space, tau).K(), omega);
  return hs_inner(g.apply(vp), vq).real();
}

// Mixture geodesic rho_t = (1-t) rho_0 + t rho_1; rejects t outside the
// faithfulness region through the DensityMatrix invariants.
inline DensityMatrix mixture_geodesic(const DensityMatrix& rho0,
                                      const DensityMatrix& rho1, double t) {
  return DensityMatrix((1.0 - t) * rho0.matrix() + t * rho1.matrix());
}

// Exponential geodesic log rho_t = (1-t) log rho_0 + t log rho_1 - zeta(t),
// zeta(t) = log Tr exp((1-t) log rho_0 + t log rho_1) <= 0 on (0,1).
class ExponentialArc {
 public:
  ExponentialArc(DensityMatrix rho0, DensityMatrix rho1)
      : rho0_(std::move(rho0)),
        rho1_(std::move(rho1)),
        log0_(rho0_.log()),
        h_rel_(rho1_.log() - log0_) {}

  const DensityMatrix& start() const { return rho0_; }
  const DensityMatrix& end() const { return rho1_; }
  // H = log rho_1 - log rho_0, original basis.
  const cmat& relative_hamiltonian() const { return h_rel_; }

  // log-trace-exp with the spectrum shifted before exponentiation.
  double zeta(double t) const {
    SpectralDecomposition s = spectral(cmat(log0_ + t * h_rel_));
    const double shift = s.eigenvalues.maxCoeff();
    return shift +
           std::log((s.eigenvalues.array() - shift).exp().sum());
  }

  DensityMatrix at(double t) const {
    SpectralDecomposition s = spectral(cmat(log0_ + t * h_rel_));
    const double shift = s.eigenvalues.maxCoeff();
    rvec w = (s.eigenvalues.array() - shift).exp();
    w /= w.sum();
    return DensityMatrix(s.eigenvectors * w.cast<cplx>().asDiagonal() *
                         s.eigenvectors.adjoint());
  }

  struct ZetaDerivatives {
    double first;   // Tr(rho_t H) = D(rho_t||rho_0) - D(rho_t||rho_1)
    double second;  // int Tr rho_t^{1-u} H rho_t^u H du - (Tr rho_t H)^2 >= 0
  };

  ZetaDerivatives zeta_derivatives(double t) const {
    DensityMatrix rt = at(t);
    const double zdot = expectation(rt, h_rel_);
    const double zddot =
        (duhamel_sandwich(rt, h_rel_) * h_rel_).trace().real() - zdot * zdot;
    return {zdot, zddot};
  }

 private:
  DensityMatrix rho0_;
  DensityMatrix rho1_;
  cmat log0_;
  cmat h_rel_;
};

inline std::pair<DensityMatrix, double> exp_geodesic(const ExponentialArc& arc,
                                                     double t) {
  return {arc.at(t), arc.zeta(t)};
}

// Residual of the affine-coordinate property of the chi charts along an
// exponential geodesic:
//   || chi_rho(rho_t) - (1-t) chi_rho(rho_0) - t chi_rho(rho_1) ||  (op norm).
inline double affine_coordinate_check(const DensityMatrix& rho,
                                      const ExponentialArc& arc, double t) {
  GnsSpace space(rho);
  cmat lhs = chi_chart(space, arc.at(t)).B();
  cmat rhs = (1.0 - t) * chi_chart(space, arc.start()).B() +
             t * chi_chart(space, arc.end()).B();
  return op_norm(lhs - rhs);
}

// Max mismatch, over the Hermitian probe basis, between the central
// difference of t -> Tr(rho_t A) and the tangent functional of
// K = chi_t(rho_1) - chi_t(rho_0) at the moving center rho_t.
inline double geodesic_tangent_check(const ExponentialArc& arc, double t,
                                     double step = 1e-4) {
  GnsSpace space(arc.at(t));
  cmat b = chi_chart(space, arc.end()).B() - chi_chart(space, arc.start()).B();
  TangentFunctional f = tangent_functional(space, ChartPoint(space, b));
  cmat plus = arc.at(t + step).matrix();
  cmat minus = arc.at(t - step).matrix();
  double worst = 0.0;
  for (const cmat& a : hermitian_basis(space.dim())) {
    const double fd = ((plus - minus) * a).trace().real() / (2.0 * step);
    worst = std::max(worst, std::abs(fd - f(a).real()));
  }
  return worst;
}

}  // namespace qig
