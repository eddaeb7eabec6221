#pragma once

// Faithful quantum states on the full matrix algebra. A DensityMatrix is a
// strictly positive, unit-trace Hermitian matrix; the associated state
// functional is omega_rho(A) = Tr(rho A). Includes Gibbs states
// rho = e^{-beta H}/Z(beta) and the Umegaki relative entropy
// D(sigma||tau) = Tr sigma (log sigma - log tau).

#include "qig/core.hpp"
#include "qig/matfun.hpp"
#include "qig/rng.hpp"

#include <cstdint>
#include <utility>

namespace qig {

class DensityMatrix {
 public:
  explicit DensityMatrix(const cmat& m) {
    if (!is_hermitian(m)) throw DomainError("density matrix not hermitian");
    matrix_ = symmetrized(m);
    const cplx tr = matrix_.trace();
    if (std::abs(tr - cplx(1.0)) > kUnitTraceTol)
      throw DomainError("density matrix trace not equal to one");
    spec_ = spectral(matrix_);
    if (spec_.eigenvalues(0) < kFaithfulFloor)
      throw DomainError("density matrix not strictly positive");
  }

  const cmat& matrix() const { return matrix_; }
  const SpectralDecomposition& spec() const { return spec_; }
  int dim() const { return spec_.dim(); }
  double min_eigenvalue() const { return spec_.eigenvalues(0); }
  double max_eigenvalue() const {
    return spec_.eigenvalues(spec_.dim() - 1);
  }

  cmat log() const { return mat_log(spec_); }
  cmat pow(double a) const { return mat_pow(spec_, a); }

 private:
  cmat matrix_;
  SpectralDecomposition spec_;
};

class Hamiltonian {
 public:
  explicit Hamiltonian(const cmat& m) : matrix_(symmetrized(m)) {
    if (!is_hermitian(m)) throw DomainError("hamiltonian not hermitian");
  }
  const cmat& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  cmat matrix_;
};

// rho = e^{-beta H} / Tr e^{-beta H}. The spectrum of -beta*H is shifted by
// its maximum before exponentiation so that overflow cannot occur.
inline DensityMatrix thermal_state(const Hamiltonian& h, double beta) {
  SpectralDecomposition s = spectral(h.matrix());
  rvec e = -beta * s.eigenvalues;
  const double shift = e.maxCoeff();
  rvec w = (e.array() - shift).exp();
  w /= w.sum();
  return DensityMatrix(s.eigenvectors * w.cast<cplx>().asDiagonal() *
                       s.eigenvectors.adjoint());
}

// omega_rho(A) = Tr(rho A); real for Hermitian A.
inline double expectation(const DensityMatrix& rho, const cmat& a) {
  return (rho.matrix() * a).trace().real();
}

// Umegaki divergence D(sigma||tau) = Tr sigma (log sigma - log tau).
inline double umegaki_divergence(const DensityMatrix& sigma,
                                 const DensityMatrix& tau) {
  return (sigma.matrix() * (sigma.log() - tau.log())).trace().real();
}

// Reproducible faithful state: a flat-Dirichlet eigenvalue draw mixed with
// I/N to enforce the eigenvalue floor, conjugated by a Haar-random unitary.
inline DensityMatrix random_faithful(int n, std::uint64_t seed,
                                     double min_eig = 0.05) {
  if (n < 1) throw DomainError("random_faithful: dimension must be positive");
  if (!(min_eig > 0.0) || !(min_eig < 1.0 / n))
    throw DomainError("random_faithful: min_eig must lie in (0, 1/N)");
  CounterRng rng(CounterRng::derive(seed, "random_faithful"));
  rvec lam(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    lam(i) = -std::log(rng.uniform());  // Exp(1) draws normalise to Dirichlet(1,..,1)
    sum += lam(i);
  }
  lam = (1.0 - n * min_eig) * (lam / sum);
  lam.array() += min_eig;
  cmat u = haar_unitary(rng, n);
  return DensityMatrix(u * lam.cast<cplx>().asDiagonal() * u.adjoint());
}

// DensityMatrix-level views of the integral transforms.
inline cmat duhamel_sandwich(const DensityMatrix& rho, const cmat& a) {
  return duhamel_sandwich(rho.spec(), a);
}

inline cmat conjugation_average(const DensityMatrix& rho, const cmat& a) {
  return conjugation_average(rho.spec(), a);
}

}  // namespace qig
