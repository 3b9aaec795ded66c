#include "torq/gf_series.hpp"
#include "torq/numeric_gf.hpp"
#include "torq/scaling.hpp"

#include <doctest.h>

#include <cmath>

using namespace torq;

TEST_CASE("x(g) series") {
  CHECK(gf::solve_x(1)[0] == 0);
  CHECK(gf::solve_x(1)[1] == 1);
  CHECK(gf::solve_x(2)[2] == 7);
}

TEST_CASE("R_l boundary values") {
  CHECK(gf::series_R(0, 6).is_zero());
  for (int l = 1; l <= 4; ++l) CHECK(gf::series_R(l, 6)[0] == 1);
  CHECK(gf::series_R(1, 3)[1] == 2);
}

TEST_CASE("exact identities") {
  CHECK(gf::check_R_recursion(10, 20).ok);
  CHECK(gf::check_R_recursion(1, 0).ok);
  CHECK(gf::check_X_recursion(8, 15).ok);
  CHECK(gf::check_Xtilde_forms(6, 12).ok);
  CHECK(gf::check_K_recursion(8, 12).ok);
  CHECK(gf::check_kp_recursion(6, 15).ok);
  CHECK(gf::check_K_symmetry(6, 12).ok);
}

TEST_CASE("perturbed R table is rejected") {
  gf::ChainTables t(8, 5);
  std::vector<IntSeries> R;
  for (int l = 0; l <= 5; ++l) R.push_back(t.R(l));
  REQUIRE(gf::check_R_recursion(R).ok);
  R[3][4] += 1;
  const auto r = gf::check_R_recursion(R);
  CHECK_FALSE(r.ok);
  CHECK(r.where.find("l=") != std::string::npos);
}

TEST_CASE("X and Xtilde") {
  for (int l = 1; l <= 4; ++l) CHECK(gf::series_X(l, 8)[0] == 1);
  // coefficients stop depending on l once l exceeds the order
  CHECK(gf::series_X(9, 7) == gf::series_X(12, 7));
  CHECK(gf::series_Xtilde(3, 3, 8) == FormalSeries::constant(1, 8));
  const int o = 10;
  const auto single = (gf::series_R(2, o) * gf::series_R(3, o) * gf::series_X(3, o)).shifted(1);
  CHECK(gf::series_Xtilde(3, 2, o) == single);
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= a; ++b) CHECK(gf::series_Xtilde(a, b, 12) == gf::series_Xtilde_closed(a, b, 12));
}

TEST_CASE("K and k_p") {
  CHECK(gf::series_K(0, 3, 8).is_zero());
  CHECK(gf::series_K(2, 5, 10) == gf::series_K(5, 2, 10));
  CHECK(gf::series_K(3, 3, 8)[0] == 0);
  CHECK(gf::series_kp(2, 12) == gf::series_kp(-2, 12));
  // deep labels: K_{l,l+p} agrees with k_p up to order l - 1
  const int order = 6;
  for (int p = 0; p <= 2; ++p) CHECK(gf::series_K(12, 12 + p, order) == gf::series_kp(p, order));
  // one edge between two label-1 vertices: [g^1] K_{1,1}
  CHECK(gf::series_K(1, 1, 3)[1] == 1);
}

TEST_CASE("W1, W2 and Q1") {
  CHECK(gf::series_W1(10) == gf::series_W1_double_sum(10));
  CHECK(gf::series_W2(10) == gf::series_W2_double_sum(10));
  CHECK(gf::series_W2(10) == gf::series_kp(0, 10) * gf::series_kp(0, 10) * mpq_class(1, 4));
  const auto q = gf::series_Q1(10);
  CHECK(q.pointed == gf::series_Q1_closed(10));
  CHECK(q.rooted == q.pointed * mpq_class(4));
  // single figure-eight with four corners, weight 1/4
  CHECK(q.pointed[2] == mpq_class(1, 4));
}

TEST_CASE("exact min skeleton distribution") {
  const auto d2 = gf::exact_min_skeleton_distribution(2);
  CHECK(d2.at(1) == 1);
  for (int n = 2; n <= 8; ++n) {
    mpz_class total = 0;
    for (const auto& [m, c] : gf::exact_min_skeleton_distribution(n)) total += c;
    CHECK(mpq_class(total) == 2 * n * gf::series_Q1(n).pointed[n]);
  }
}

TEST_CASE("numeric values at fixed g") {
  const double g = 0.05;
  const gf::NumericGF num(g);
  const double x = num.x(), R = num.R();
  CHECK(x > 0);
  CHECK(x < 1);
  CHECK(x + 1 / x + 1 == doctest::Approx(1 / (g * R * R)).epsilon(1e-12));
  // numeric against the truncated series, well inside the radius
  const auto s = gf::series_R(2, 40);
  CHECK(num.R(2) == doctest::Approx(s.evaluate(g)).epsilon(1e-10));
  CHECK(num.K(2, 3) == doctest::Approx(num.K_xtilde_sum(2, 3)).epsilon(1e-9));
  CHECK(num.K(3, 2) == doctest::Approx(num.K(2, 3)).epsilon(1e-12));
  CHECK(num.K(40, 42) == doctest::Approx(num.kp(2)).epsilon(1e-8));
  const int labels[] = {3};
  CHECK(gf::eval_numeric(gf::GfKind::R, labels, g) == doctest::Approx(num.R(3)));
  CHECK_THROWS(gf::NumericGF(0.09));
}

TEST_CASE("propagator against rho at eps = 1e-4") {
  const double eps = 1e-4, se = std::sqrt(eps);
  const auto num = gf::NumericGF::from_epsilon(eps);
  for (double L : {0.5, 1.0, 2.0}) {
    const int l1 = static_cast<int>(std::lround(L / se)), l2 = static_cast<int>(std::lround(1.5 * L / se));
    // labels measured from -3/2, where the closed forms are centred
    const double rho = scaling::rho((l1 + 1.5) * se, (l2 + 1.5) * se);
    CHECK(se * num.K(l1, l2) == doctest::Approx(rho).epsilon(1e-3));
    // with L = l sqrt(eps) the offset costs O(sqrt(eps) / L)
    const double plain = scaling::rho(l1 * se, l2 * se);
    CHECK(std::abs(se * num.K(l1, l2) / plain - 1) < 0.1);
  }
}
