#include "torq/scaling.hpp"

#include <doctest.h>

#include <cmath>

using namespace torq::scaling;

namespace {
const cplx ray = std::polar(1.0, -M_PI / 4);
}

TEST_CASE("basic limits") {
  CHECK(F(40.0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(F(0.0), SingularInput);
  CHECK(Ctilde(1.3, 1.3) == doctest::Approx(1.0));
  CHECK(std::abs(I(0.0)) == 0.0);
  CHECK(I(30.0).real() == doctest::Approx(1.0 / 96).epsilon(1e-14));
  CHECK(std::abs(J(0.0)) == 0.0);
  CHECK(std::abs(F1(0.0)) == 0.0);
  CHECK(rho(-1.0, 2.0) == 0.0);
}

TEST_CASE("rho decays like a free propagator at large labels") {
  const double L1 = 12.0, L2 = 12.7;
  const double free = std::sqrt(6.0) / 4 * std::exp(-std::sqrt(6.0) * std::abs(L1 - L2));
  CHECK(rho(L1, L2) == doctest::Approx(free).epsilon(1e-6));
  CHECK(rho(L1, L2) == doctest::Approx(rho(L2, L1)));
}

TEST_CASE("J tends to 1/96") {
  // H grows linearly while F'(2L) decays, but their product has a finite limit
  CHECK(J(10.0).real() == doctest::Approx(1.0 / 96).epsilon(1e-8));
  CHECK(J(20.0).real() == doctest::Approx(1.0 / 96).epsilon(1e-12));
}

TEST_CASE("small-L behaviour of F1") {
  CHECK(taylor_exact(Series::F1, 4) == "1/2016");
  for (double L : {0.01, 0.03}) CHECK(F1(L).real() * 896 / std::pow(L, 4) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(taylor_exact(Series::F1, 2) == "0/1");
}

TEST_CASE("Taylor tables agree with direct evaluation on the overlap annulus") {
  for (double m : {0.25, 0.3, 0.35})
    for (double a : {0.0, M_PI / 4, -M_PI / 4}) {
      const cplx L = std::polar(m, a);
      CHECK(std::abs(eval_taylor(Series::F1, L) - F1_direct(L)) < 1e-9);
      CHECK(std::abs(eval_taylor(Series::J, L) - J_direct(L)) < 1e-9);
      CHECK(std::abs(eval_taylor(Series::H, L) - H_direct(L)) < 1e-9);
    }
}

TEST_CASE("conjugation symmetry and decay on the rays") {
  for (double m : {0.5, 1.0, 3.0}) {
    const cplx L = ray * m;
    CHECK(std::abs(F1(std::conj(L)) - std::conj(F1(L))) < 1e-14);
    CHECK(std::abs(J(std::conj(L)) - std::conj(J(L))) < 1e-14);
    CHECK(std::abs(I(std::conj(L)) - std::conj(I(L))) < 1e-14);
  }
  for (double m : {5.0, 10.0, 20.0}) {
    const cplx L = ray * m;
    CHECK(std::isfinite(std::abs(F1(L))));
    CHECK(std::abs(I(L) - 1.0 / 96) < 1e-3);
    CHECK(std::abs(F(L) - 1.0) < 1e-2);
  }
}

TEST_CASE("M parametrization") {
  for (double L : {0.7, 1.5, 2.5}) {
    const cplx f = A0(L) + L * A1(L) + L * L * A2(L);
    CHECK(std::abs(f - (4.0 * M(L) + L * Mprime(L))) < 1e-10);
    CHECK(std::abs(M(L) - (alpha0(L) + L * alpha1(L))) < 1e-14);
  }
}

TEST_CASE("residual report") {
  const auto rs = residuals();
  CHECK(rs.size() >= 8);
  for (const auto& r : rs) {
    INFO(r.name);
    CHECK(r.ok());
  }
}

TEST_CASE("oracles") {
  CHECK(I_by_ode(1.0) == doctest::Approx(I(1.0).real()).epsilon(1e-8));
  CHECK(J_by_ode(0.7) == doctest::Approx(J(0.7).real()).epsilon(1e-8));
  CHECK(H_by_quadrature(1.0) == doctest::Approx(H(1.0).real()).epsilon(1e-9));
}
