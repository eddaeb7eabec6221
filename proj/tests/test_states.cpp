#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qig;

TEST_CASE("density matrix invariants", "[states]") {
  SECTION("valid construction symmetrises") {
    cmat m = cmat::Zero(2, 2);
    m(0, 0) = 0.75;
    m(1, 1) = 0.25;
    m(0, 1) = cplx(0.1, 1e-14);
    m(1, 0) = cplx(0.1, 1e-14);  // hermitian only up to drift
    DensityMatrix rho(m);
    CHECK(is_hermitian(rho.matrix()));
  }
  SECTION("non-hermitian rejected") {
    cmat m = cmat::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = cplx(0.0, 0.3);
    m(1, 0) = cplx(0.0, 0.3);
    CHECK_THROWS_AS(DensityMatrix(m), DomainError);
  }
  SECTION("wrong trace rejected") {
    CHECK_THROWS_AS(DensityMatrix(cmat::Identity(2, 2)), DomainError);
  }
  SECTION("non-faithful rejected, message names the invariant") {
    cmat m = cmat::Zero(2, 2);
    m(0, 0) = 1.0;
    CHECK_THROWS_WITH(DensityMatrix(m),
                      Catch::Matchers::ContainsSubstring(
                          "density matrix not strictly positive"));
    // a 1e-9 eigenvalue clears the 1e-10 floor, 1e-11 does not
    cmat near = cmat::Zero(2, 2);
    near(0, 0) = 1.0 - 1e-9;
    near(1, 1) = 1e-9;
    CHECK_NOTHROW(DensityMatrix(near));
    near(0, 0) = 1.0 - 1e-11;
    near(1, 1) = 1e-11;
    CHECK_THROWS_AS(DensityMatrix(near), DomainError);
  }
}

TEST_CASE("thermal_state", "[states]") {
  SECTION("zero hamiltonian is maximally mixed") {
    DensityMatrix rho = thermal_state(Hamiltonian(cmat::Zero(2, 2)), 1.7);
    CHECK((rho.matrix() - 0.5 * cmat::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);
  }
  SECTION("two-level example at beta = ln 3") {
    cmat h = cmat::Zero(2, 2);
    h(1, 1) = 1.0;
    DensityMatrix rho = thermal_state(Hamiltonian(h), std::log(3.0));
    // Z = 1 + 1/3, weights 3/4 and 1/4
    CHECK(std::abs(rho.matrix()(0, 0).real() - 0.75) < 1e-14);
    CHECK(std::abs(rho.matrix()(1, 1).real() - 0.25) < 1e-14);
  }
  SECTION("beta = 0 is maximally mixed") {
    CounterRng rng(21);
    cmat h = random_hermitian(rng, 4);
    DensityMatrix rho = thermal_state(Hamiltonian(h), 0.0);
    CHECK((rho.matrix() - 0.25 * cmat::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-14);
  }
  SECTION("overflow guard for steep spectra") {
    // without the spectral shift exp(-beta * (-500)) would overflow
    cmat h = cmat::Zero(2, 2);
    h(0, 0) = -500.0;
    h(1, 1) = -498.0;
    DensityMatrix rho = thermal_state(Hamiltonian(h), 10.0);
    CHECK(rho.matrix().allFinite());
    CHECK(rho.min_eigenvalue() > 0.0);
    // a gap so large the Gibbs state is numerically pure is rejected by the
    // faithfulness floor rather than returned degenerate
    h(1, 1) = 500.0;
    CHECK_THROWS_AS(thermal_state(Hamiltonian(h), 10.0), DomainError);
  }
  SECTION("pointwise Gibbs property") {
    CounterRng rng(22);
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 3);
      Hamiltonian h(random_hermitian(rng, n));
      const double beta = rng.uniform(-2.0, 2.0);
      DensityMatrix rho = thermal_state(h, beta);
      cmat boltz = apply_function(spectral(h.matrix()), [&](double x) {
        return std::exp(-beta * x);
      });
      const double z = boltz.trace().real();
      cmat a = random_hermitian(rng, n);
      CHECK(std::abs(expectation(rho, a) * z - (boltz * a).trace().real()) <
            1e-10);
    }
  }
}

TEST_CASE("expectation", "[states]") {
  CounterRng rng(23);
  DensityMatrix rho = oracle::random_state(rng, 3);
  SECTION("normalisation") {
    CHECK(expectation(rho, cmat::Identity(3, 3)) == Catch::Approx(1.0));
  }
  SECTION("linearity on scaled identity") {
    CHECK(expectation(rho, cmat(2.5 * cmat::Identity(3, 3))) ==
          Catch::Approx(2.5));
  }
  SECTION("two-level hand-evaluated example") {
    rvec p(2);
    p << 0.75, 0.25;
    cmat a = cmat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    CHECK(expectation(oracle::diagonal_state(p), a) == Catch::Approx(0.5));
  }
}

TEST_CASE("umegaki_divergence", "[states]") {
  CounterRng rng(24);
  SECTION("vanishes on the diagonal") {
    DensityMatrix rho = oracle::random_state(rng, 4);
    CHECK(std::abs(umegaki_divergence(rho, rho)) < 1e-12);
  }
  SECTION("commuting pair reduces to classical KL") {
    rvec p(2), q(2);
    p << 0.5, 0.5;
    q << 0.75, 0.25;
    const double d =
        umegaki_divergence(oracle::diagonal_state(p), oracle::diagonal_state(q));
    CHECK(std::abs(d - oracle::scalar_kl(p, q)) < 1e-14);
    CHECK(d == Catch::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-13));
    // random commuting pairs
    for (int k = 0; k < 20; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 5);
      rvec a(n), b(n);
      for (int i = 0; i < n; ++i) a(i) = rng.uniform(0.05, 1.0);
      for (int i = 0; i < n; ++i) b(i) = rng.uniform(0.05, 1.0);
      a /= a.sum();
      b /= b.sum();
      CHECK(std::abs(umegaki_divergence(oracle::diagonal_state(a),
                                        oracle::diagonal_state(b)) -
                     oracle::scalar_kl(a, b)) < 1e-11);
    }
  }
  SECTION("nonnegativity sweep") {
    for (int k = 0; k < 100; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 5);
      DensityMatrix s = oracle::random_state(rng, n);
      DensityMatrix t = oracle::random_state(rng, n);
      const double d1 = umegaki_divergence(s, t);
      const double d2 = umegaki_divergence(t, s);
      CHECK(d1 > -1e-12);
      CHECK(d1 + d2 > -1e-12);
    }
  }
  SECTION("joint positivity equality only on equal states") {
    DensityMatrix s = oracle::random_state(rng, 3);
    CHECK(std::abs(umegaki_divergence(s, s) + umegaki_divergence(s, s)) <
          1e-12);
    DensityMatrix t = oracle::random_state(rng, 3);
    CHECK(umegaki_divergence(s, t) + umegaki_divergence(t, s) > 1e-6);
  }
}

TEST_CASE("random_faithful", "[states]") {
  SECTION("contract for N=2, min_eig = 0.1") {
    DensityMatrix rho = random_faithful(2, 99, 0.1);
    CHECK(rho.min_eigenvalue() >= 0.1 - 1e-12);
    CHECK(rho.max_eigenvalue() <= 0.9 + 1e-12);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
  }
  SECTION("determinism") {
    DensityMatrix a = random_faithful(4, 1234, 0.05);
    DensityMatrix b = random_faithful(4, 1234, 0.05);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
    DensityMatrix c = random_faithful(4, 1235, 0.05);
    CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 1e-3);
  }
  SECTION("invariant sweep over 100 seeds") {
    for (std::uint64_t s = 0; s < 100; ++s)
      CHECK_NOTHROW(random_faithful(4, s, 0.05));
  }
  SECTION("infeasible floor rejected") {
    CHECK_THROWS_AS(random_faithful(4, 1, 0.25), DomainError);
    CHECK_THROWS_AS(random_faithful(4, 1, 0.0), DomainError);
    CHECK_THROWS_AS(random_faithful(4, 1, -0.1), DomainError);
  }
}
