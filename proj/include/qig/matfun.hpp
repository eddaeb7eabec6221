#pragma once

// Hermitian spectral calculus and the two averaged-multiplication transforms
// that the geometry is built from:
//
//   duhamel_sandwich(rho, A)    = int_0^1 rho^u A rho^{1-u} du
//   conjugation_average(rho, A) = int_0^1 rho^u A rho^{-u}  du
//
// Neither integral is ever evaluated by quadrature here: in the eigenbasis of
// rho both are entrywise multiplications by kernels built from the logarithmic
// mean L(x,y) = (x-y)/(log x - log y),
//
//   [int rho^u A rho^{1-u} du]_ij = A_ij * L(p_i, p_j)
//   [int rho^u A rho^{-u}  du]_ij = A_ij * L(p_i, p_j) / p_j
//
// so the only approximation left is the eigendecomposition itself. Quadrature
// appears only in verification oracles.

#include "qig/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>

namespace qig {

// Eigensystem of a Hermitian matrix: ascending eigenvalues, unitary columns.
struct SpectralDecomposition {
  rvec eigenvalues;
  cmat eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }

  cmat reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

inline SpectralDecomposition spectral(const cmat& h) {
  if (!is_hermitian(h)) throw DomainError("spectral: matrix not hermitian");
  Eigen::SelfAdjointEigenSolver<cmat> solver(symmetrized(h));
  if (solver.info() != Eigen::Success)
    throw DomainError("spectral: eigensolver did not converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

// U diag(f(lambda)) U^dagger. f must be finite on the whole spectrum.
template <class F>
cmat apply_function(const SpectralDecomposition& s, F&& f) {
  rvec fx(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    fx(i) = f(s.eigenvalues(i));
    if (!std::isfinite(fx(i)))
      throw DomainError("apply_function: function undefined at eigenvalue " +
                        std::to_string(s.eigenvalues(i)));
  }
  return symmetrized(s.eigenvectors * fx.cast<cplx>().asDiagonal() *
                     s.eigenvectors.adjoint());
}

inline cmat mat_log(const SpectralDecomposition& s) {
  return apply_function(s, [](double x) { return std::log(x); });
}

inline cmat mat_exp(const SpectralDecomposition& s) {
  return apply_function(s, [](double x) { return std::exp(x); });
}

inline cmat mat_pow(const SpectralDecomposition& s, double a) {
  return apply_function(s, [a](double x) { return std::pow(x, a); });
}

// Logarithmic mean L(x,y) = (x-y)/(log x - log y), continuously extended by
// L(x,x) = x. Evaluated as max * h(r) with r = min/max and h(r) = (r-1)/log r;
// a short series guards against cancellation for r near 1.
inline double log_mean(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw DomainError("log_mean: arguments must be positive");
  if (x == y) return x;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  const double e = lo / hi - 1.0;
  if (std::abs(e) < 1e-6)
    return hi * (1.0 + e * (0.5 + e * (-1.0 / 12.0 + e / 24.0)));
  return hi * e / std::log1p(e);
}

namespace detail {

inline void require_strictly_positive(const SpectralDecomposition& rho,
                                      const char* who) {
  if (rho.eigenvalues(0) <= 0.0)
    throw DomainError(std::string(who) + ": matrix not strictly positive");
}

}  // namespace detail

// int_0^1 rho^u A rho^{1-u} du for strictly positive rho.
inline cmat duhamel_sandwich(const SpectralDecomposition& rho, const cmat& a) {
  detail::require_strictly_positive(rho, "duhamel_sandwich");
  const rvec& p = rho.eigenvalues;
  const cmat& u = rho.eigenvectors;
  cmat at = u.adjoint() * a * u;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (Eigen::Index j = 0; j < p.size(); ++j)
      at(i, j) *= log_mean(p(i), p(j));
  return symmetrized(u * at * u.adjoint());
}

// int_0^1 rho^u A rho^{-u} du for strictly positive rho. Not Hermitian in
// general, so no symmetrisation here.
inline cmat conjugation_average(const SpectralDecomposition& rho,
                                const cmat& a) {
  detail::require_strictly_positive(rho, "conjugation_average");
  const rvec& p = rho.eigenvalues;
  const cmat& u = rho.eigenvectors;
  cmat at = u.adjoint() * a * u;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (Eigen::Index j = 0; j < p.size(); ++j)
      at(i, j) *= log_mean(p(i), p(j)) / p(j);
  return u * at * u.adjoint();
}

}  // namespace qig
