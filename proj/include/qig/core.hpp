#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qig {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
// Absolute tolerance on |Tr rho - 1| for density matrices.
inline constexpr double kUnitTraceTol = 1e-11;
// States whose smallest eigenvalue falls below this floor are rejected:
// log(rho), rho^{-1} and rho^{-u} appear throughout, so conditioning must
// stay bounded.
inline constexpr double kFaithfulFloor = 1e-10;

// Signals evaluation outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_hermitian(const cmat& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

// (M + M^dagger)/2; removes round-off drift after constructions that are
// Hermitian by design.
inline cmat symmetrized(const cmat& m) { return 0.5 * (m + m.adjoint()); }

// Largest singular value.
inline double op_norm(const cmat& m) {
  return m.jacobiSvd().singularValues()(0);
}

// Sum of singular values; the dual of the operator norm.
inline double trace_norm(const cmat& m) {
  return m.jacobiSvd().singularValues().sum();
}

inline double hs_norm(const cmat& m) { return m.norm(); }

// Orthonormal Hermitian basis of the n-by-n matrices (HS inner product):
// E_nn, (E_nm + E_mn)/sqrt(2), i(E_nm - E_mn)/sqrt(2). Deterministic probe
// set for functional comparisons.
inline std::vector<cmat> hermitian_basis(int n) {
  std::vector<cmat> out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a) {
    cmat e = cmat::Zero(n, n);
    e(a, a) = 1.0;
    out.push_back(e);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      cmat s = cmat::Zero(n, n);
      s(a, b) = inv_sqrt2;
      s(b, a) = inv_sqrt2;
      out.push_back(s);
      cmat t = cmat::Zero(n, n);
      t(a, b) = cplx(0.0, inv_sqrt2);
      t(b, a) = cplx(0.0, -inv_sqrt2);
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace qig
