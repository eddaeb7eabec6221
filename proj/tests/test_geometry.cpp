#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qig;

TEST_CASE("interpolation family", "[geometry]") {
  CounterRng rng(61);
  SECTION("endpoints and partition normalisation") {
    InterpolationFamily fam(oracle::random_state(rng, 3),
                            oracle::random_state(rng, 3));
    CHECK(trace_norm(fam.at(0.0).matrix() - fam.start().matrix()) < 1e-11);
    CHECK(trace_norm(fam.at(1.0).matrix() - fam.end().matrix()) < 1e-11);
    CHECK(fam.partition(0.0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(fam.partition(1.0) == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("commuting case: renormalised geometric interpolation") {
    rvec p(2), s(2);
    p << 0.7, 0.3;
    s << 0.2, 0.8;
    InterpolationFamily fam(oracle::diagonal_state(p),
                            oracle::diagonal_state(s));
    const double t = 0.4;
    rvec geo(2);
    for (int i = 0; i < 2; ++i)
      geo(i) = std::pow(p(i), 1.0 - t) * std::pow(s(i), t);
    geo /= geo.sum();
    cmat got = fam.at(t).matrix();
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(got(i, i).real() - geo(i)) < 1e-13);
  }
  SECTION("midpoint partition function stays below one") {
    for (int k = 0; k < 50; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 3);
      InterpolationFamily fam(oracle::random_state(rng, n),
                              oracle::random_state(rng, n));
      CHECK(fam.partition(0.5) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("bogoliubov metric", "[geometry]") {
  CounterRng rng(62);
  SECTION("vanishes when one slot sits at the base point") {
    DensityMatrix rho = oracle::random_state(rng, 3);
    DensityMatrix tau = oracle::random_state(rng, 3);
    CHECK(std::abs(bogoliubov_metric(rho, rho, tau)) < 1e-12);
    CHECK(std::abs(bogoliubov_metric(rho, tau, rho)) < 1e-12);
  }
  SECTION("classical diagonal case is the Fisher covariance") {
    rvec p(3), s(3), t(3);
    p << 0.5, 0.3, 0.2;
    s << 0.6, 0.3, 0.1;
    t << 0.25, 0.35, 0.4;
    double cov = 0.0, ma = 0.0, mb = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double a = std::log(s(i) / p(i));
      const double b = std::log(t(i) / p(i));
      cov += p(i) * a * b;
      ma += p(i) * a;
      mb += p(i) * b;
    }
    const double fisher = cov - ma * mb;
    CHECK(std::abs(bogoliubov_metric(oracle::diagonal_state(p),
                                     oracle::diagonal_state(s),
                                     oracle::diagonal_state(t)) -
                   fisher) < 1e-11);
  }
  SECTION("symmetry in the two directions") {
    for (int k = 0; k < 20; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 3);
      DensityMatrix rho = oracle::random_state(rng, n);
      DensityMatrix s = oracle::random_state(rng, n);
      DensityMatrix t = oracle::random_state(rng, n);
      CHECK(std::abs(bogoliubov_metric(rho, s, t) -
                     bogoliubov_metric(rho, t, s)) < 1e-11);
    }
  }
  SECTION("three formulations agree") {
    for (int n : {2, 3, 4}) {
      DensityMatrix rho = oracle::random_state(rng, n);
      DensityMatrix s = oracle::random_state(rng, n);
      DensityMatrix t = oracle::random_state(rng, n);
      const double exact = bogoliubov_metric(rho, s, t);
      CHECK(std::abs(exact - metric_via_G(rho, s, t)) < 1e-9);
      CHECK(std::abs(exact - metric_fd(rho, s, t, 1e-4)) < 1e-5);
    }
  }
  SECTION("finite-difference error decays like h^2") {
    DensityMatrix rho = oracle::random_state(rng, 3);
    DensityMatrix s = oracle::random_state(rng, 3);
    DensityMatrix t = oracle::random_state(rng, 3);
    const double exact = bogoliubov_metric(rho, s, t);
    const double e1 = std::abs(metric_fd(rho, s, t, 1e-3) - exact);
    const double e2 = std::abs(metric_fd(rho, s, t, 5e-4) - exact);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
  }
  SECTION("superoperator form is positive definite on nonzero directions") {
    DensityMatrix rho = oracle::random_state(rng, 3);
    DensityMatrix s = oracle::random_state(rng, 3);
    CHECK(metric_via_G(rho, s, s) > 0.0);
    CHECK(std::abs(metric_via_G(rho, rho, s)) < 1e-12);
  }
  SECTION("step outside the stencil window rejected") {
    DensityMatrix rho = oracle::random_state(rng, 2);
    CHECK_THROWS_AS(metric_fd(rho, rho, rho, 1e-2), DomainError);
    CHECK_THROWS_AS(metric_fd(rho, rho, rho, 1e-6), DomainError);
  }
}

TEST_CASE("mixture geodesic", "[geometry]") {
  CounterRng rng(63);
  DensityMatrix r0 = oracle::random_state(rng, 3);
  DensityMatrix r1 = oracle::random_state(rng, 3);
  SECTION("endpoints") {
    CHECK((mixture_geodesic(r0, r1, 0.0).matrix() - r0.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((mixture_geodesic(r0, r1, 1.0).matrix() - r1.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SECTION("midpoint of a state with itself") {
    CHECK((mixture_geodesic(r0, r0, 0.5).matrix() - r0.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SECTION("second difference vanishes exactly") {
    cmat second = mixture_geodesic(r0, r1, 0.2).matrix() -
                  2.0 * mixture_geodesic(r0, r1, 0.3).matrix() +
                  mixture_geodesic(r0, r1, 0.4).matrix();
    CHECK(second.cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("derivative functional independent of t") {
    const double h = 0.0625;
    cmat d1 = mixture_geodesic(r0, r1, 0.25 + h).matrix() -
              mixture_geodesic(r0, r1, 0.25).matrix();
    cmat d2 = mixture_geodesic(r0, r1, 0.75).matrix() -
              mixture_geodesic(r0, r1, 0.75 - h).matrix();
    CHECK((d1 - d2).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("leaving the faithful cone rejected") {
    CHECK_THROWS_AS(mixture_geodesic(r0, r1, 25.0), DomainError);
  }
}

TEST_CASE("exponential geodesic", "[geometry]") {
  CounterRng rng(64);
  SECTION("endpoints carry zero normaliser") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    auto [s0, z0] = exp_geodesic(arc, 0.0);
    auto [s1, z1] = exp_geodesic(arc, 1.0);
    CHECK(std::abs(z0) < 1e-12);
    CHECK(std::abs(z1) < 1e-12);
    CHECK(trace_norm(s0.matrix() - arc.start().matrix()) < 1e-11);
    CHECK(trace_norm(s1.matrix() - arc.end().matrix()) < 1e-11);
  }
  SECTION("commuting case: normalised geometric path") {
    rvec p(2), q(2);
    p << 0.8, 0.2;
    q << 0.3, 0.7;
    ExponentialArc arc(oracle::diagonal_state(p), oracle::diagonal_state(q));
    const double t = 0.6;
    rvec geo(2);
    for (int i = 0; i < 2; ++i)
      geo(i) = std::pow(p(i), 1.0 - t) * std::pow(q(i), t);
    const double z = std::log(geo.sum());
    geo /= geo.sum();
    auto [state, zeta] = exp_geodesic(arc, t);
    CHECK(std::abs(zeta - z) < 1e-13);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(state.matrix()(i, i).real() - geo(i)) < 1e-13);
  }
  SECTION("normaliser nonpositive inside the interval") {
    for (int k = 0; k < 30; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 3);
      ExponentialArc arc(oracle::random_state(rng, n),
                         oracle::random_state(rng, n));
      CHECK(arc.zeta(0.5) <= 1e-12);
      CHECK(arc.zeta(rng.uniform(0.01, 0.99)) <= 1e-12);
    }
  }
  SECTION("affine reparametrisation stays on the arc") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    const double a = 0.2, b = 0.7, t = 0.4;
    ExponentialArc sub(arc.at(a), arc.at(b));
    CHECK(trace_norm(sub.at(t).matrix() -
                     arc.at((1 - t) * a + t * b).matrix()) < 1e-10);
  }
}

TEST_CASE("zeta derivatives", "[geometry]") {
  CounterRng rng(65);
  SECTION("degenerate arc") {
    DensityMatrix r = oracle::random_state(rng, 3);
    ExponentialArc arc(r, r);
    auto dz = arc.zeta_derivatives(0.37);
    CHECK(std::abs(dz.first) < 1e-12);
    CHECK(std::abs(dz.second) < 1e-12);
  }
  SECTION("boundary values against the divergences") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    CHECK(std::abs(arc.zeta_derivatives(0.0).first +
                   umegaki_divergence(arc.start(), arc.end())) < 1e-10);
    CHECK(std::abs(arc.zeta_derivatives(1.0).first -
                   umegaki_divergence(arc.end(), arc.start())) < 1e-10);
    CHECK(arc.zeta_derivatives(0.0).first <= 1e-12);
    CHECK(arc.zeta_derivatives(1.0).first >= -1e-12);
  }
  SECTION("first derivative equals the divergence difference") {
    ExponentialArc arc(oracle::random_state(rng, 4),
                       oracle::random_state(rng, 4));
    const double t = 0.3;
    DensityMatrix rt = arc.at(t);
    CHECK(std::abs(arc.zeta_derivatives(t).first -
                   (umegaki_divergence(rt, arc.start()) -
                    umegaki_divergence(rt, arc.end()))) < 1e-10);
  }
  SECTION("finite-difference oracle") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    const double t = 0.42, h = 1e-4;
    auto dz = arc.zeta_derivatives(t);
    const double fd1 = (arc.zeta(t + h) - arc.zeta(t - h)) / (2.0 * h);
    const double fd2 =
        (arc.zeta(t + h) - 2.0 * arc.zeta(t) + arc.zeta(t - h)) / (h * h);
    CHECK(std::abs(dz.first - fd1) < 1e-6);
    CHECK(std::abs(dz.second - fd2) < 1e-5);
  }
  SECTION("convexity along a grid") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    double prev = -1e300;
    for (int j = 0; j <= 100; ++j) {
      auto dz = arc.zeta_derivatives(j / 100.0);
      CHECK(dz.second >= -1e-11);
      CHECK(dz.first >= prev - 1e-11);
      prev = dz.first;
    }
  }
}

TEST_CASE("affine coordinates along exponential geodesics", "[geometry]") {
  CounterRng rng(66);
  SECTION("endpoints are exact") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    DensityMatrix center = oracle::random_state(rng, 3);
    CHECK(affine_coordinate_check(center, arc, 0.0) < 1e-12);
    CHECK(affine_coordinate_check(center, arc, 1.0) < 1e-12);
  }
  SECTION("center at the start, midpoint") {
    DensityMatrix r0 = oracle::random_state(rng, 3);
    ExponentialArc arc(r0, oracle::random_state(rng, 3));
    CHECK(affine_coordinate_check(r0, arc, 0.5) < 1e-9);
  }
  SECTION("commuting family is classical") {
    rvec p(2), q(2), c(2);
    p << 0.8, 0.2;
    q << 0.35, 0.65;
    c << 0.5, 0.5;
    ExponentialArc arc(oracle::diagonal_state(p), oracle::diagonal_state(q));
    CHECK(affine_coordinate_check(oracle::diagonal_state(c), arc, 0.3) <
          1e-12);
  }
  SECTION("random centers and parameters") {
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 3);
      ExponentialArc arc(oracle::random_state(rng, n),
                         oracle::random_state(rng, n));
      DensityMatrix center = oracle::random_state(rng, n);
      CHECK(affine_coordinate_check(center, arc, rng.uniform(0.1, 0.9)) <
            1e-9);
    }
  }
}

TEST_CASE("geodesic tangent identity", "[geometry]") {
  CounterRng rng(67);
  SECTION("degenerate arc") {
    DensityMatrix r = oracle::random_state(rng, 3);
    ExponentialArc arc(r, r);
    CHECK(geodesic_tangent_check(arc, 0.5) < 1e-10);
  }
  SECTION("commuting arc matches the scalar derivative") {
    rvec p(2), q(2);
    p << 0.8, 0.2;
    q << 0.3, 0.7;
    ExponentialArc arc(oracle::diagonal_state(p), oracle::diagonal_state(q));
    CHECK(geodesic_tangent_check(arc, 0.4) < 1e-8);
  }
  SECTION("random three-level arc") {
    ExponentialArc arc(oracle::random_state(rng, 3),
                       oracle::random_state(rng, 3));
    CHECK(geodesic_tangent_check(arc, 0.3) < 1e-6);
  }
}
