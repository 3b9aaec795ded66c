#include "torq/distributions.hpp"

#include <doctest.h>

#include <cmath>

using namespace torq::dist;

TEST_CASE("endpoints") {
  for (Law law : {Law::sigma, Law::sigma2, Law::phi1}) {
    CHECK(cdf(law, 0.0).value == 0.0);
    CHECK_THROWS(cdf(law, -1.0));
  }
  CHECK(sigma(6.0).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sigma2(6.0).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(phi1(6.0).value == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("real and complex routes for sigma agree") {
  for (double r : {0.2, 0.7, 1.0, 2.5}) CHECK(sigma(r).value == doctest::Approx(sigma_complex(r).value).epsilon(1e-9));
}

TEST_CASE("reference values") {
  CHECK(sigma(1.0).value == doctest::Approx(0.3665482).epsilon(1e-6));
  CHECK(sigma2(1.0).value == doctest::Approx(0.1596572).epsilon(1e-6));
  CHECK(phi1(1.0).value == doctest::Approx(0.1024638).epsilon(1e-6));
}

TEST_CASE("densities against finite differences") {
  const double h = 1e-4;
  for (Law law : {Law::sigma, Law::sigma2, Law::phi1}) {
    const double fd = (cdf(law, 1 + h).value - cdf(law, 1 - h).value) / (2 * h);
    CHECK(std::abs(density(law, 1.0).value - fd) < 1e-5);
  }
}

TEST_CASE("curves are monotone") {
  const Curve c = curve(Law::phi1, 4.0, 0.25, true);
  CHECK(c.r.size() == 17);
  for (std::size_t i = 1; i < c.r.size(); ++i) CHECK(c.cdf[i] >= c.cdf[i - 1] - 1e-12);
  CHECK(c.pdf.front() == 0.0);
}

TEST_CASE("first correction of phi1 is negative and of order r^10") {
  std::vector<double> r, y;
  for (double x : {0.08, 0.1, 0.12, 0.15}) {
    r.push_back(x);
    y.push_back(-(phi1(x).value - 3 * std::pow(x, 4) / 28));
  }
  for (double v : y) CHECK(v > 0);
  CHECK(loglog_slope(r, y) == doctest::Approx(10.0).epsilon(0.03));
}

TEST_CASE("small cycle scalings") {
  const double n = 1e12;
  std::vector<double> ls, a, b;
  for (int l : {20, 40, 80, 160}) {
    const auto s = small_cycle_scalings(l, n);
    ls.push_back(l);
    a.push_back(s.n_sigma);
    b.push_back(s.n_sigma2);
  }
  CHECK(loglog_slope(ls, a) == doctest::Approx(6.0).epsilon(0.1 / 6));
  CHECK(loglog_slope(ls, b) == doctest::Approx(10.0).epsilon(0.02));
  std::vector<double> ns, c;
  for (double m : {1e12, 1e13, 1e14}) {
    ns.push_back(m);
    c.push_back(small_cycle_scalings(40, m).n_sigma);
  }
  CHECK(loglog_slope(ns, c) == doctest::Approx(-0.5).epsilon(0.04));
}

TEST_CASE("law names") {
  CHECK(parse_law("sigma2") == Law::sigma2);
  CHECK(std::string(law_name(Law::phi1)) == "phi1");
  CHECK_THROWS(parse_law("phi0"));
}
