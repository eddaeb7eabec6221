#pragma once

// Two chart systems on the manifold of faithful states, both valued in the
// centered self-adjoint commutant elements B_rho:
//
//   xi_rho : built from the positive representative X of Theorem-1 type,
//            K = log X recentred, with inverse
//            sigma = e^{-alpha} rho^{1/2} e^{B^T} rho^{1/2}  (eigenbasis);
//
//   chi_rho: built from the conjugation average of
//            A_{rho,sigma} = log sigma - log rho + D(rho||sigma),
//            B^T_ij = (A_{rho,sigma})_ij L(p_i,p_j)/sqrt(p_i p_j).
//
// Alongside: tangent functionals f_{rho,K}(A) = (pi(A) Omega, K Omega) with
// dual matrix T = rho^{1/2} conj(B) rho^{1/2}, their inverse, the Frechet
// remainder diagnostic, cross-over between charts, and the metric
// superoperator G_rho with multipliers p_j / L(p_i, p_j).

#include "qig/core.hpp"
#include "qig/gns.hpp"
#include "qig/matfun.hpp"
#include "qig/states.hpp"

#include <cmath>
#include <utility>

namespace qig {

namespace detail {

inline cmat recentered(const GnsSpace& space, const cmat& b) {
  // subtracts (K Omega, Omega) = sum_n p_n B_nn
  const double c = (space.p().array() * b.diagonal().real().array()).sum();
  return b - c * cmat::Identity(b.rows(), b.cols());
}

// Dual matrix (rho-eigenbasis) of the functional A -> (pi(A) Omega, K Omega)
// for the commutant element with parameter B: T = rho^{1/2} conj(B) rho^{1/2}.
inline cmat functional_dual_eig(const GnsSpace& space, const cmat& b) {
  Eigen::VectorXcd sq = space.p().cwiseSqrt().cast<cplx>();
  return sq.asDiagonal() * b.conjugate() * sq.asDiagonal();
}

// Inverse of functional_dual_eig: conj(B) = rho^{-1/2} T rho^{-1/2}.
inline cmat functional_dual_inverse_eig(const GnsSpace& space,
                                        const cmat& t_eig) {
  Eigen::VectorXcd isq = space.p().cwiseSqrt().cwiseInverse().cast<cplx>();
  return (isq.asDiagonal() * t_eig * isq.asDiagonal()).conjugate();
}

}  // namespace detail

// A chart value: a centered Hermitian commutant parameter at a given center.
class ChartPoint {
 public:
  ChartPoint(const GnsSpace& space, const cmat& b) : k_(b) {
    const double c =
        std::abs((space.p().array() * k_.B().diagonal().real().array()).sum());
    if (c > kUnitTraceTol * std::max(1.0, k_.B().cwiseAbs().maxCoeff()))
      throw DomainError("chart point: commutant parameter not centered");
  }

  const CommutantOperator& K() const { return k_; }
  const cmat& B() const { return k_.B(); }
  int dim() const { return k_.dim(); }

 private:
  CommutantOperator k_;
};

// Element of the tangent plane: the linear functional A -> Tr(T A) with
// Hermitian traceless dual matrix T (original basis). Its norm, as the dual
// of the operator norm, is the trace norm of T.
class TangentFunctional {
 public:
  TangentFunctional(const GnsSpace& space, const cmat& t_original)
      : space_(&space) {
    if (!is_hermitian(t_original))
      throw DomainError("tangent functional: dual matrix not hermitian");
    t_ = symmetrized(t_original);
    if (std::abs(t_.trace()) >
        kUnitTraceTol * std::max(1.0, t_.cwiseAbs().maxCoeff()))
      throw DomainError("tangent functional: dual matrix not traceless");
  }

  cplx operator()(const cmat& a) const { return (t_ * a).trace(); }
  const cmat& dual_matrix() const { return t_; }
  double norm() const { return trace_norm(t_); }
  const GnsSpace& space() const { return *space_; }

 private:
  const GnsSpace* space_;
  cmat t_;
};

// ---------------------------------------------------------------------------
// xi chart system
// ---------------------------------------------------------------------------

inline ChartPoint xi_chart(const GnsSpace& space, const DensityMatrix& sigma) {
  CommutantOperator x = represent_state(space, sigma);
  return ChartPoint(space, detail::recentered(space, mat_log(spectral(x.B()))));
}

// alpha_rho(K) = log (e^K Omega, Omega) = log sum_n p_n (e^B)_nn.
inline double alpha(const GnsSpace& space, const ChartPoint& k) {
  cmat eb = mat_exp(spectral(k.B()));
  return std::log(
      (space.p().array() * eb.diagonal().real().array()).sum());
}

// Inverse chart: the state with sigma = e^{-alpha} rho^{1/2} e^{B^T} rho^{1/2}
// in the rho-eigenbasis.
inline DensityMatrix xi_inverse(const GnsSpace& space, const ChartPoint& k) {
  const double a = alpha(space, k);
  Eigen::VectorXcd sq = space.p().cwiseSqrt().cast<cplx>();
  cmat sig_eig = std::exp(-a) * cmat(sq.asDiagonal() *
                                     mat_exp(spectral(k.B())).transpose() *
                                     sq.asDiagonal());
  return DensityMatrix(space.from_eigenbasis(sig_eig));
}

// ---------------------------------------------------------------------------
// tangent plane
// ---------------------------------------------------------------------------

// F_rho: K -> f_{rho,K}, the Frechet derivative of the inverse chart at the
// center.
inline TangentFunctional tangent_functional(const GnsSpace& space,
                                            const ChartPoint& k) {
  return TangentFunctional(
      space,
      space.from_eigenbasis(detail::functional_dual_eig(space, k.B())));
}

// F_rho^{-1}: recovers K from the dual matrix, conj(B) = rho^{-1/2} T rho^{-1/2}.
// Well-defined only on traceless functionals, which TangentFunctional enforces.
inline ChartPoint f_inverse(const GnsSpace& space,
                            const TangentFunctional& f) {
  return ChartPoint(space,
                    detail::functional_dual_inverse_eig(
                        space, space.to_eigenbasis(f.dual_matrix())));
}

// First-order remainder of the chart at scale t:
//   || omega_{xi^{-1}(tK)} - omega_rho - F_rho(tK) || / ||tK||
// with the dual (trace) norm on functionals and the operator norm on K.
inline double frechet_ratio(const GnsSpace& space, const ChartPoint& k,
                            double t) {
  if (t == 0.0) throw DomainError("frechet_ratio: t must be nonzero");
  const double knorm = op_norm(k.B());
  if (knorm == 0.0) return 0.0;
  ChartPoint tk(space, cmat(t * k.B()));
  DensityMatrix sigma = xi_inverse(space, tk);
  TangentFunctional f = tangent_functional(space, tk);
  cmat remainder =
      sigma.matrix() - space.reference().matrix() - f.dual_matrix();
  return trace_norm(remainder) / (std::abs(t) * knorm);
}

// ---------------------------------------------------------------------------
// atlas
// ---------------------------------------------------------------------------

// Carries a commutant representative between two GNS spaces so that the
// induced functional A -> (pi(A) Omega, X Omega) is preserved. This is the
// linear operator behind the cross-over map: the chart transition is this
// transport conjugated by exp/log at the ends.
inline cmat functional_transport(const GnsSpace& from, const GnsSpace& to,
                                 const cmat& b) {
  cmat t_orig = from.from_eigenbasis(detail::functional_dual_eig(from, b));
  return detail::functional_dual_inverse_eig(to, to.to_eigenbasis(t_orig));
}

// Cross-over map between charts: the value of the chart at rho2 on the state
// the chart at rho1 labels by k. Computed by linear transport of the positive
// representative e^{B}; the normaliser is a multiple of the identity and is
// absorbed by the final recentring. Coincides with
// xi_chart(to, xi_inverse(from, k)).
inline ChartPoint crossover(const GnsSpace& from, const GnsSpace& to,
                            const ChartPoint& k) {
  cmat x1 = mat_exp(spectral(k.B()));
  cmat x2 = functional_transport(from, to, x1);
  return ChartPoint(to, detail::recentered(to, mat_log(spectral(x2))));
}

// Continuity estimate for the atlas, on the positive representatives
// X_i(sigma) = e^{xi_i(sigma) - alpha} (Theorem-1 normalisation):
//   ||X_2(s2) - X_2(s1)|| <= ||rho1|| ||rho2^{-1}|| ||X_1(s2) - X_1(s1)||.
inline bool norm_bound_check(const DensityMatrix& rho1,
                             const DensityMatrix& rho2,
                             const DensityMatrix& sigma1,
                             const DensityMatrix& sigma2) {
  GnsSpace g1(rho1), g2(rho2);
  auto rep = [](const GnsSpace& g, const DensityMatrix& s) {
    return represent_state(g, s).B();
  };
  const double lhs = op_norm(rep(g2, sigma2) - rep(g2, sigma1));
  const double factor =
      rho1.max_eigenvalue() / rho2.min_eigenvalue();
  const double rhs = factor * op_norm(rep(g1, sigma2) - rep(g1, sigma1));
  return lhs <= rhs + 1e-12 * (1.0 + rhs);
}

// ---------------------------------------------------------------------------
// chi chart system and the metric superoperator
// ---------------------------------------------------------------------------

// chi_rho(sigma): the unique centered K with
//   K Omega = int_0^1 pi(rho^u A_{rho,sigma} rho^{-u}) du Omega,
//   A_{rho,sigma} = log sigma - log rho + D(rho||sigma),
// in closed form B^T_ij = (A_{rho,sigma})_ij L(p_i,p_j)/sqrt(p_i p_j).
inline ChartPoint chi_chart(const GnsSpace& space, const DensityMatrix& sigma) {
  const int n = space.dim();
  const double d = umegaki_divergence(space.reference(), sigma);
  cmat a = sigma.log() - space.reference().log() + d * cmat::Identity(n, n);
  cmat at = space.to_eigenbasis(a);
  const rvec& p = space.p();
  cmat bt(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      bt(i, j) = at(i, j) * log_mean(p(i), p(j)) / std::sqrt(p(i) * p(j));
  return ChartPoint(space, bt.transpose());
}

// G_rho: entrywise multipliers g_ij = p_j / L(p_i, p_j) on eigenbasis
// coordinates; the strictly positive operator with
//   G_rho int_0^1 pi(rho^u A rho^{-u}) du Omega = pi(A) Omega.
class MetricSuperoperator {
 public:
  explicit MetricSuperoperator(const GnsSpace& space) {
    const int n = space.dim();
    const rvec& p = space.p();
    multipliers_.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        multipliers_(i, j) = p(j) / log_mean(p(i), p(j));
  }

  const rmat& multipliers() const { return multipliers_; }

  GnsVector apply(const GnsVector& v) const {
    return GnsVector{
        (v.coords.array() * multipliers_.array().cast<cplx>()).matrix()};
  }

  GnsVector apply_inverse(const GnsVector& v) const {
    return GnsVector{
        (v.coords.array() / multipliers_.array().cast<cplx>()).matrix()};
  }

 private:
  rmat multipliers_;
};

// Max mismatch, over the Hermitian probe basis, between the central
// difference of s -> Tr(sigma_s A) along the exponential interpolation
// sigma_s = exp(log rho + s(log sigma - log rho))/Z(s) at s = 0 and the
// tangent functional of chi_rho(sigma).
inline double chi_tangent_check(const GnsSpace& space,
                                const DensityMatrix& sigma,
                                double step = 1e-4) {
  const cmat log_rho = space.reference().log();
  const cmat dir = sigma.log() - log_rho;
  auto state_at = [&](double s) {
    cmat m = mat_exp(spectral(cmat(log_rho + s * dir)));
    return cmat(m / m.trace().real());
  };
  cmat plus = state_at(step);
  cmat minus = state_at(-step);
  TangentFunctional f = tangent_functional(space, chi_chart(space, sigma));
  double worst = 0.0;
  for (const cmat& a : hermitian_basis(space.dim())) {
    const double fd = ((plus - minus) * a).trace().real() / (2.0 * step);
    worst = std::max(worst, std::abs(fd - f(a).real()));
  }
  return worst;
}

}  // namespace qig
