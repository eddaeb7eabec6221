#pragma once

// Tomita-Takesaki structure of the GNS space. In eigenbasis coordinates every
// object is entrywise:
//
//   Delta        : multipliers p_i / p_j            (= rho (.) rho^{-1})
//   Delta^{iz}   : multipliers (p_i / p_j)^{iz}, entire in z
//   J            : M -> M^dagger                    (antilinear isometry)
//   S = J Delta^{1/2}  maps  pi(A) Omega -> pi(A^dagger) Omega
//   F = J Delta^{-1/2} is its commutant counterpart
//
// Naming follows the roles: J is the modular conjugation, S the Tomita
// operator with polar decomposition S = J Delta^{1/2} (the literature
// occasionally attaches the former name to S).
//
// The modular flow sigma_t(A) = Delta^{it} pi(A) Delta^{-it} = pi(rho^{it} A
// rho^{-it}) fixes omega_rho, and the two-point function
// F(t) = (sigma_t(A) as represented, applied against B) extends to an entire
// function whose value on the upper edge of the unit strip reproduces the
// operators in the opposite order: F(t+i) = (pi(B) Delta^{it} pi(A) Omega,
// Omega) -- the representation-level residue of trace cyclicity.

#include "qig/core.hpp"
#include "qig/gns.hpp"
#include "qig/matfun.hpp"
#include "qig/states.hpp"

#include <cmath>
#include <complex>

namespace qig {

class ModularOperator {
 public:
  explicit ModularOperator(const GnsSpace& space) : space_(&space) {
    const int n = space.dim();
    const rvec& p = space.p();
    multipliers_.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) multipliers_(i, j) = p(i) / p(j);
  }

  const rmat& multipliers() const { return multipliers_; }

  GnsVector apply(const GnsVector& v) const {
    return GnsVector{
        (v.coords.array() * multipliers_.array().cast<cplx>()).matrix()};
  }

  // Delta^{w} for complex w, evaluated spectrally; Delta^{it} is unitary for
  // real t and the entire continuation needs no extra machinery.
  GnsVector apply_power(const GnsVector& v, cplx w) const {
    cmat out = v.coords;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        out(i, j) *= std::pow(cplx(multipliers_(i, j), 0.0), w);
    return GnsVector{out};
  }

  GnsVector apply_unitary(const GnsVector& v, double t) const {
    return apply_power(v, cplx(0.0, t));  // Delta^{it}
  }

 private:
  const GnsSpace* space_;
  rmat multipliers_;
};

inline ModularOperator modular_operator(const GnsSpace& space) {
  return ModularOperator(space);
}

// Antilinear modular conjugation: in eigenbasis coordinates the adjoint map.
struct ModularConjugation {
  GnsVector apply(const GnsVector& v) const {
    return GnsVector{v.coords.adjoint()};
  }
};

// Modular automorphism Delta^{it} pi(A) Delta^{-it} = pi(rho^{it} A rho^{-it});
// input and result in the original basis.
inline cmat modular_flow(const GnsSpace& space, const cmat& a, double t) {
  const int n = space.dim();
  Eigen::VectorXcd phase(n);
  for (int i = 0; i < n; ++i)
    phase(i) = std::pow(cplx(space.p()(i), 0.0), cplx(0.0, t));
  cmat at = space.to_eigenbasis(a);
  cmat flowed = phase.asDiagonal() * at * phase.conjugate().asDiagonal();
  return space.from_eigenbasis(flowed);
}

// Image of omega_sigma under the flow induced by Delta_rho:
// omega_{sigma,t}(A) = (Delta^{it} pi(A) Delta^{-it} Omega_sigma, Omega_sigma),
// i.e. the state with density rho^{-it} sigma rho^{it}. omega_rho is a
// fixpoint.
inline DensityMatrix transformed_state(const GnsSpace& space,
                                       const DensityMatrix& sigma, double t) {
  const int n = space.dim();
  Eigen::VectorXcd phase(n);
  for (int i = 0; i < n; ++i)
    phase(i) = std::pow(cplx(space.p()(i), 0.0), cplx(0.0, -t));
  cmat st = space.to_eigenbasis(sigma.matrix());
  cmat moved = phase.asDiagonal() * st * phase.conjugate().asDiagonal();
  return DensityMatrix(space.from_eigenbasis(moved));
}

// Two-point function of the modular flow,
//   F(z) = sum_{a,c} p_a^{1+iz} p_c^{-iz} A_ac B_ca   (eigenbasis entries),
// the entire continuation of t -> omega(sigma_t(A) B). Only the closed KMS
// strip Im z in [0,1] is in contract.
inline cplx kms_function(const GnsSpace& space, const cmat& a, const cmat& b,
                         cplx z) {
  if (z.imag() < 0.0 || z.imag() > 1.0)
    throw DomainError("kms_function: Im z must lie in [0, 1]");
  const cmat at = space.to_eigenbasis(a);
  const cmat bt = space.to_eigenbasis(b);
  const rvec& p = space.p();
  cplx sum(0.0, 0.0);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (Eigen::Index j = 0; j < p.size(); ++j)
      sum += std::pow(cplx(p(i), 0.0), cplx(1.0, 0.0) + cplx(0.0, 1.0) * z) *
             std::pow(cplx(p(j), 0.0), -cplx(0.0, 1.0) * z) * at(i, j) *
             bt(j, i);
  return sum;
}

// KMS boundary identity: |F(t+i) - (pi(B) Delta^{it} pi(A) Omega, Omega)|.
inline double kms_check(const GnsSpace& space, const cmat& a, const cmat& b,
                        double t) {
  const cplx lhs = kms_function(space, a, b, cplx(t, 1.0));
  ModularOperator delta(space);
  GnsVector v = delta.apply_unitary(pi_apply(space, a, omega_vector(space)), t);
  const cplx rhs = hs_inner(pi_apply(space, b, v), omega_vector(space));
  return std::abs(lhs - rhs);
}

// Polar decomposition probe: max residual over random-free probes of
//   || J Delta^{1/2} (pi(A) Omega) - pi(A^dagger) Omega ||    and
//   || J Delta^{-1/2} ((I (.) A) Omega) - (I (.) A^dagger) Omega ||
// over the Hermitian basis and its pairwise complex combinations (so that
// non-normal A are exercised).
inline double polar_check(const GnsSpace& space) {
  ModularOperator delta(space);
  ModularConjugation j;
  GnsVector omega = omega_vector(space);
  const int n = space.dim();
  auto probe = [&](const cmat& a_eig) {
    // S = J Delta^{1/2} on pi(A) Omega
    GnsVector va{a_eig * omega.coords};
    GnsVector sa = j.apply(delta.apply_power(va, cplx(0.5, 0.0)));
    double r = (sa.coords - a_eig.adjoint() * omega.coords).norm();
    // F = J Delta^{-1/2} on the commutant image (I (.) A) Omega = Omega A^T
    GnsVector vc{omega.coords * a_eig.transpose()};
    GnsVector fc = j.apply(delta.apply_power(vc, cplx(-0.5, 0.0)));
    r = std::max(r,
                 (fc.coords - omega.coords * a_eig.adjoint().transpose()).norm());
    return r;
  };
  double worst = 0.0;
  const auto basis = hermitian_basis(n);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    worst = std::max(worst, probe(basis[idx]));
    // non-normal combination with the next basis element
    const cmat& h1 = basis[idx];
    const cmat& h2 = basis[(idx + 1) % basis.size()];
    worst = std::max(worst, probe(cmat(h1 + cplx(0.0, 1.0) * h2)));
  }
  return worst;
}

}  // namespace qig
