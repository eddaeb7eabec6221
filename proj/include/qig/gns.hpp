#pragma once

// The GNS representation of the N-by-N matrix algebra induced by a faithful
// state, in vectorised form: the representation Hilbert space is the N-by-N
// matrices with the Hilbert-Schmidt inner product (M, M') = Tr(M'^dagger M),
// all coordinates taken in the eigenbasis of the reference state rho.
//
//   Omega_rho        <->  diag(sqrt(p_n))
//   pi(A)            <->  left multiplication by A   (A in the rho-eigenbasis)
//   commutant        <->  right multiplication by B^T, one Hermitian B each
//
// With these identifications (pi(A) Omega, Omega) = Tr(rho A), Omega is cyclic
// and separating, and every Tomita-Takesaki object acquires a closed form.

#include "qig/core.hpp"
#include "qig/matfun.hpp"
#include "qig/states.hpp"

#include <utility>

namespace qig {

class GnsSpace {
 public:
  explicit GnsSpace(DensityMatrix rho) : rho_(std::move(rho)) {}

  const DensityMatrix& reference() const { return rho_; }
  int dim() const { return rho_.dim(); }

  // Eigenvalues p_n of the reference state, ascending.
  const rvec& p() const { return rho_.spec().eigenvalues; }
  // Eigenvector columns; the coordinate basis of every GnsVector.
  const cmat& basis() const { return rho_.spec().eigenvectors; }

  cmat to_eigenbasis(const cmat& a) const {
    return basis().adjoint() * a * basis();
  }
  cmat from_eigenbasis(const cmat& a) const {
    return basis() * a * basis().adjoint();
  }

 private:
  DensityMatrix rho_;
};

// A vector of the representation space, stored as its coordinate matrix in
// the rho-eigenbasis.
struct GnsVector {
  cmat coords;
};

// (v, w) = Tr(w^dagger v): linear in the first slot.
inline cplx hs_inner(const GnsVector& v, const GnsVector& w) {
  return (w.coords.adjoint() * v.coords).trace();
}

inline double hs_norm(const GnsVector& v) { return v.coords.norm(); }

// Element of the commutant pi(A)', acting as M -> M B^T. Self-adjoint on the
// representation space exactly when B is Hermitian, which this type enforces.
class CommutantOperator {
 public:
  explicit CommutantOperator(const cmat& b) {
    if (!is_hermitian(b))
      throw DomainError("commutant operator: parameter matrix not hermitian");
    b_ = symmetrized(b);
  }

  const cmat& B() const { return b_; }
  int dim() const { return static_cast<int>(b_.rows()); }

 private:
  cmat b_;
};

// The distinguished cyclic vector Omega_rho <-> diag(sqrt(p_n)).
inline GnsVector omega_vector(const GnsSpace& space) {
  return GnsVector{space.p().cwiseSqrt().cast<cplx>().asDiagonal() *
                   cmat::Identity(space.dim(), space.dim())};
}

// pi(A) v; A is given in the original basis and converted internally.
inline GnsVector pi_apply(const GnsSpace& space, const cmat& a,
                          const GnsVector& v) {
  return GnsVector{space.to_eigenbasis(a) * v.coords};
}

inline GnsVector commutant_apply(const CommutantOperator& k,
                                 const GnsVector& v) {
  return GnsVector{v.coords * k.B().transpose()};
}

// The conjugate-linear companion A' of A, defined against the rho-eigenbasis:
// its eigenbasis coordinates are the entrywise complex conjugate of those of
// A. Returned in the original basis; it satisfies (A')' = A and preserves
// column norms on the eigenvectors.
inline cmat prime_map(const GnsSpace& space, const cmat& a) {
  return space.from_eigenbasis(space.to_eigenbasis(a).conjugate());
}

// The unique strictly positive commutant element X with
// Tr(sigma A) = (pi(A) X^{1/2} Omega, X^{1/2} Omega) for all A:
// B_X^T = rho^{-1/2} sigma rho^{-1/2} in the rho-eigenbasis.
inline CommutantOperator represent_state(const GnsSpace& space,
                                         const DensityMatrix& sigma) {
  Eigen::VectorXcd isq =
      space.p().cwiseSqrt().cwiseInverse().cast<cplx>();
  cmat bt = isq.asDiagonal() * space.to_eigenbasis(sigma.matrix()) *
            isq.asDiagonal();
  return CommutantOperator(bt.transpose());
}

struct CyclicityReport {
  int rank = 0;
  double min_singular_value = 0.0;
  bool cyclic = false;
  bool separating = false;
};

// Rank test for cyclicity: the N^2 vectors pi(E_nm) Omega = E_nm rho^{1/2}
// are the images of the HS-orthonormal matrix units under right
// multiplication by rho^{1/2}, so one SVD of their coordinate matrix yields
// both the rank and the smallest singular value of that right multiplication
// (whose positivity makes Omega separating).
inline CyclicityReport check_cyclic_separating(const GnsSpace& space) {
  const int n = space.dim();
  cmat m(n * n, n * n);
  const rvec sq = space.p().cwiseSqrt();
  int col = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cmat e = cmat::Zero(n, n);
      e(a, b) = sq(b);  // E_ab * diag(sqrt(p))
      m.col(col++) = Eigen::Map<const Eigen::VectorXcd>(e.data(), n * n);
    }
  rvec sv = m.jacobiSvd().singularValues();
  CyclicityReport report;
  const double cutoff = 1e-12 * std::max(sv(0), 1.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++report.rank;
  report.min_singular_value = sv(sv.size() - 1);
  report.cyclic = (report.rank == n * n);
  report.separating = report.min_singular_value > cutoff;
  return report;
}

}  // namespace qig
