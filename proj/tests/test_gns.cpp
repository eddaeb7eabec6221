#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qig;

TEST_CASE("omega_vector", "[gns]") {
  SECTION("maximally mixed") {
    GnsSpace g(DensityMatrix(0.5 * cmat::Identity(2, 2)));
    CHECK((omega_vector(g).coords -
           cmat(cmat::Identity(2, 2) / std::sqrt(2.0)))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }
  SECTION("two-level example: Omega is the square root of rho") {
    rvec p(2);
    p << 0.75, 0.25;
    GnsSpace g(oracle::diagonal_state(p));
    cmat in_original = g.from_eigenbasis(omega_vector(g).coords);
    cmat expect = cmat::Zero(2, 2);
    expect(0, 0) = std::sqrt(3.0) / 2.0;
    expect(1, 1) = 0.5;
    CHECK((in_original - expect).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("unit norm and state reproduction") {
    CounterRng rng(31);
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 4);
      GnsSpace g(oracle::random_state(rng, n));
      GnsVector omega = omega_vector(g);
      CHECK(std::abs(hs_inner(omega, omega).real() - 1.0) < 1e-12);
      cmat a = random_hermitian(rng, n);
      CHECK(std::abs(hs_inner(pi_apply(g, a, omega), omega).real() -
                     expectation(g.reference(), a)) < 1e-11);
    }
  }
}

TEST_CASE("pi_apply", "[gns]") {
  CounterRng rng(32);
  GnsSpace g(oracle::random_state(rng, 3));
  GnsVector omega = omega_vector(g);
  SECTION("identity acts trivially") {
    GnsVector v{random_complex(rng, 3)};
    CHECK((pi_apply(g, cmat::Identity(3, 3), v).coords - v.coords)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SECTION("defining GNS norm property") {
    cmat a = random_complex(rng, 3);
    const double lhs = hs_norm(pi_apply(g, a, omega));
    const double rhs = std::sqrt(
        expectation(g.reference(), cmat(a.adjoint() * a)));
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
  SECTION("homomorphism on random triples") {
    for (int k = 0; k < 20; ++k) {
      cmat a = random_complex(rng, 3);
      cmat b = random_complex(rng, 3);
      GnsVector v{random_complex(rng, 3)};
      GnsVector lhs = pi_apply(g, cmat(a * b), v);
      GnsVector rhs = pi_apply(g, a, pi_apply(g, b, v));
      const double scale = op_norm(a) * op_norm(b) * hs_norm(v);
      CHECK((lhs.coords - rhs.coords).norm() < 1e-12 * scale);
    }
  }
}

TEST_CASE("commutant operators", "[gns]") {
  CounterRng rng(33);
  GnsSpace g(oracle::random_state(rng, 4));
  SECTION("B = I is the identity map") {
    GnsVector v{random_complex(rng, 4)};
    CHECK((commutant_apply(CommutantOperator(cmat::Identity(4, 4)), v).coords -
           v.coords)
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SECTION("commutes with the representation") {
    for (int k = 0; k < 100; ++k) {
      cmat a = random_complex(rng, 4);
      CommutantOperator op(random_hermitian(rng, 4));
      GnsVector v{random_complex(rng, 4)};
      GnsVector lhs = pi_apply(g, a, commutant_apply(op, v));
      GnsVector rhs = commutant_apply(op, pi_apply(g, a, v));
      const double scale =
          op_norm(a) * op_norm(op.B()) * hs_norm(v);
      CHECK((lhs.coords - rhs.coords).norm() < 1e-11 * scale);
    }
  }
  SECTION("(K Omega, Omega) = Tr(rho B^T)") {
    GnsVector omega = omega_vector(g);
    cmat b = random_hermitian(rng, 4);
    const cplx lhs =
        hs_inner(commutant_apply(CommutantOperator(b), omega), omega);
    const cplx rhs =
        (g.p().cast<cplx>().asDiagonal() * b.transpose()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
  SECTION("non-hermitian parameter rejected") {
    cmat bad = cmat::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(CommutantOperator(bad), DomainError);
  }
}

TEST_CASE("prime_map", "[gns]") {
  SECTION("diagonal reference: conjugation in the original basis") {
    rvec p(2);
    p << 0.75, 0.25;
    GnsSpace g(oracle::diagonal_state(p));
    cmat real_sym = cmat::Zero(2, 2);
    real_sym(0, 1) = 0.4;
    real_sym(1, 0) = 0.4;
    real_sym(0, 0) = 1.0;
    CHECK((prime_map(g, real_sym) - real_sym).cwiseAbs().maxCoeff() < 1e-14);
    cmat sy = cmat::Zero(2, 2);
    sy(0, 1) = cplx(0.0, -1.0);
    sy(1, 0) = cplx(0.0, 1.0);
    CHECK((prime_map(g, sy) + sy).cwiseAbs().maxCoeff() < 1e-14);
  }
  SECTION("involution and column-norm preservation") {
    CounterRng rng(34);
    GnsSpace g(oracle::random_state(rng, 3));
    cmat a = random_complex(rng, 3);
    CHECK((prime_map(g, prime_map(g, a)) - a).cwiseAbs().maxCoeff() < 1e-12);
    cmat ap = prime_map(g, a);
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs((a * g.basis().col(c)).norm() -
                     (ap * g.basis().col(c)).norm()) < 1e-12);
  }
}

TEST_CASE("represent_state", "[gns]") {
  CounterRng rng(35);
  SECTION("sigma = rho gives the identity") {
    GnsSpace g(oracle::random_state(rng, 3));
    CHECK((represent_state(g, g.reference()).B() - cmat::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SECTION("commuting diagonal pair") {
    rvec p(3), s(3);
    p << 0.5, 0.3, 0.2;
    s << 0.6, 0.3, 0.1;
    GnsSpace g(oracle::diagonal_state(p));
    cmat b_orig =
        g.from_eigenbasis(represent_state(g, oracle::diagonal_state(s)).B());
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(b_orig(i, i).real() - s(i) / p(i)) < 1e-13);
  }
  SECTION("reconstruction identity on random pairs") {
    for (int k = 0; k < 10; ++k) {
      GnsSpace g(oracle::random_state(rng, 3));
      DensityMatrix sigma = oracle::random_state(rng, 3);
      CommutantOperator x = represent_state(g, sigma);
      SpectralDecomposition xs = spectral(x.B());
      CHECK(xs.eigenvalues(0) > 0.0);
      CommutantOperator xhalf(mat_pow(xs, 0.5));
      GnsVector v = commutant_apply(xhalf, omega_vector(g));
      for (int j = 0; j < 10; ++j) {
        cmat a = random_hermitian(rng, 3);
        CHECK(std::abs(hs_inner(pi_apply(g, a, v), v).real() -
                       expectation(sigma, a)) < 1e-10);
      }
    }
  }
}

TEST_CASE("cyclic and separating vector", "[gns]") {
  SECTION("maximally mixed reference") {
    GnsSpace g(DensityMatrix(cmat::Identity(3, 3) / 3.0));
    CyclicityReport rep = check_cyclic_separating(g);
    CHECK(rep.rank == 9);
    CHECK(rep.cyclic);
    CHECK(rep.separating);
  }
  SECTION("two-level example: rank 4, min singular value 1/2") {
    rvec p(2);
    p << 0.75, 0.25;
    GnsSpace g(oracle::diagonal_state(p));
    CyclicityReport rep = check_cyclic_separating(g);
    CHECK(rep.rank == 4);
    CHECK(rep.min_singular_value == Catch::Approx(0.5).epsilon(1e-12));
  }
  SECTION("commutant orbit spans as well") {
    // (I (.) E_ab) Omega over all units has full rank too
    CounterRng rng(36);
    GnsSpace g(oracle::random_state(rng, 3));
    const int n = 3;
    cmat m(n * n, n * n);
    GnsVector omega = omega_vector(g);
    int col = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        cmat e = cmat::Zero(n, n);
        e(a, b) = 1.0;
        cmat img = omega.coords * e.transpose();
        m.col(col++) = Eigen::Map<Eigen::VectorXcd>(img.data(), n * n);
      }
    rvec sv = m.jacobiSvd().singularValues();
    CHECK(sv(sv.size() - 1) > 1e-8);
  }
}
