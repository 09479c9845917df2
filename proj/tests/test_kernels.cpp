#include <doctest.h>

#include <cmath>
#include <random>

#include "skewhowe/exact_oracle.hpp"
#include "skewhowe/kernels.hpp"
#include "skewhowe/saddle.hpp"

using namespace skewhowe;

namespace {

std::vector<Rational> rationals(std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 6);
  std::vector<Rational> v;
  for (int i = 0; i < count; ++i) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

// Maclaurin series of Ai and Ai'.
std::pair<double, double> airy_series(double x) {
  const double c1 = 1 / (std::pow(3.0, 2.0 / 3) * std::tgamma(2.0 / 3));
  const double c2 = 1 / (std::pow(3.0, 1.0 / 3) * std::tgamma(1.0 / 3));
  double f = 0, g = 0, fp = 0, gp = 0;
  double cf = 1, cg = 1;  // Maclaurin coefficients of x^{3j} and x^{3j+1}
  for (int j = 0; j < 80; ++j) {
    f += cf * std::pow(x, 3 * j);
    g += cg * std::pow(x, 3 * j + 1);
    if (j > 0) fp += cf * 3 * j * std::pow(x, 3 * j - 1);
    gp += cg * (3 * j + 1) * std::pow(x, 3 * j);
    cf /= (3.0 * j + 2) * (3 * j + 3);
    cg /= (3.0 * j + 3) * (3 * j + 4);
  }
  return {c1 * f - c2 * g, c1 * fp - c2 * gp};
}

}  // namespace

TEST_CASE("single cell") {
  auto v = finite_kernel({1}, {1}, 0.5, 0.5);
  CHECK(std::abs(v.value - 0.5) < 1e-12);
  CHECK(v.error < 1e-9);
  CHECK_THROWS_AS(finite_kernel({1}, {1}, 1.0, 0.5), Error);
  CHECK_THROWS_AS(finite_kernel({-1}, {1}, 0.5, 0.5), Error);
  CHECK_THROWS_AS(choose_contour({}, {1}), Error);
}

TEST_CASE("one-point function against enumeration") {
  MeasureTable t = measure_table(2, 2, {1, 1}, {1, 1});
  for (int dm = -3; dm <= 3; dm += 2) {
    double exact = to_double({onepoint_bruteforce(t, dm)})[0];
    CHECK(std::abs(finite_kernel({1, 1}, {1, 1}, dm / 2.0, dm / 2.0).value - exact) < 1e-8);
  }
  CHECK(std::abs(finite_kernel({1, 1}, {1, 1}, 1.5, 1.5).value - 0.5) < 1e-8);
}

TEST_CASE("trace equals the number of particles") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) {
      auto x = to_double(rationals(rng, n)), y = to_double(rationals(rng, k));
      auto km = kernel_matrix(x, y, box_window(n, k));
      double tr = 0;
      for (std::size_t i = 0; i < km.size(); ++i) tr += km(i, i);
      CHECK(std::abs(tr - n) < 1e-7);
      for (std::size_t i = 0; i < km.size(); ++i) {
        CHECK(km(i, i) >= -1e-9);
        CHECK(km(i, i) <= 1 + 1e-9);
      }
    }
}

TEST_CASE("determinantal identity") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k) {
      auto xr = rationals(rng, n), yr = rationals(rng, k);
      MeasureTable t = measure_table(n, k, xr, yr);
      auto km = kernel_matrix(to_double(xr), to_double(yr), box_window(n, k));
      CHECK(determinantal_check(t, [&](int a, int b) { return km.at_doubled(a, b); }) <= 1e-8);
    }
}

TEST_CASE("geometric convergence of the trapezoid rule") {
  for (auto [x, y] : {std::pair<std::vector<double>, std::vector<double>>{{1, 1}, {1, 1}}, {{0.5, 0.25}, {0.3, 1}}}) {
    auto w = box_window(2, 2);
    auto ref = kernel_matrix_fixed(x, y, w, 4096);
    double prev = 0;
    for (int n : {16, 32, 64}) {
      auto km = kernel_matrix_fixed(x, y, w, n);
      double err = 0;
      for (std::size_t i = 0; i < km.values.size(); ++i) err = std::max(err, std::abs(km.values[i] - ref.values[i]));
      if (prev > 1e-13) CHECK(err <= prev / 10);
      prev = err;
    }
  }
}

TEST_CASE("contour choice") {
  auto c1 = choose_contour({0.5}, {1});
  CHECK(c1.concentric);
  CHECK(c1.z_radius > 1);
  CHECK(c1.z_radius < 2);
  auto c2 = choose_contour({1, 2}, {3});
  CHECK(!c2.concentric);
  CHECK(std::abs(-3 - c2.z_center) < c2.z_radius);
  CHECK(std::abs(0.5 - c2.z_center) > c2.z_radius);
  CHECK(c2.w_radius < c2.z_radius - std::abs(c2.z_center));
}

TEST_CASE("sine kernel") {
  CHECK(sine_kernel(0.5, 0) == 0.5);
  CHECK(std::abs(sine_kernel(0.5, 2)) < 1e-16);
  for (int d : {-3, -1, 1, 4}) CHECK(std::abs(sine_kernel(1, d)) < 1e-15);
  CHECK(sine_kernel(0.5, 1) == doctest::Approx(1 / M_PI));
}

TEST_CASE("bulk convergence") {
  SpecPair s{SpecFamily::constant(1), SpecFamily::constant(1), 1};
  auto rows = bulk_convergence_report(s, 0, 0, 1, {4, 8, 16});
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].sine == doctest::Approx(1 / M_PI));
  CHECK(rows[2].deviation < rows[0].deviation);
  CHECK(rows[2].deviation < 0.02);
  SpecPair s4{SpecFamily::constant(1), SpecFamily::constant(1), 4};
  auto r4 = bulk_convergence_report(s4, 0, 0, 0, {4, 8, 16});
  CHECK(r4[0].sine == doctest::Approx(std::acos(0.75) / M_PI));
  CHECK(r4[2].deviation < 0.02);
  auto frozen = bulk_convergence_report(s4, 3.8, 0, 0, {8, 16});
  CHECK(frozen[1].sine == 0);
  CHECK(frozen[1].deviation < frozen[0].deviation);
}

TEST_CASE("Airy kernel") {
  const double ap0 = 1 / (std::pow(3.0, 1.0 / 3) * std::tgamma(1.0 / 3));
  CHECK(airy_kernel(0, 0) == doctest::Approx(ap0 * ap0).epsilon(1e-12));
  for (double a : {-3.0, -1.2, 0.0, 0.7, 2.5})
    for (double b : {-2.0, 0.3, 1.9}) {
      CHECK(airy_kernel(a, b) == doctest::Approx(airy_kernel(b, a)).epsilon(1e-13));
      auto [ai, aip] = airy_series(a);
      auto [bi, bip] = airy_series(b);
      double k = a == b ? aip * aip - a * ai * ai : (ai * bip - aip * bi) / (a - b);
      CHECK(std::abs(airy_kernel(a, b) - k) < 1e-10);
    }
  CHECK(airy_kernel(5, 5) < 1e-6);
  CHECK(airy_kernel(5, 5) > 0);
}

TEST_CASE("Pearcey kernel") {
  for (auto [xi, eta] : {std::pair{0.0, 0.0}, {1.0, 0.5}, {-0.8, 1.3}, {2.0, 2.0}}) {
    double a = pearcey_kernel(xi, eta);
    double b = pearcey_kernel(xi, eta, 1e-9, {0.6, 0.9, 0.25});
    double c = pearcey_kernel(xi, eta, 1e-9, {1.0, 0.7853981633974483, 0.125});
    CHECK(std::abs(a - b) <= 1e-6);
    CHECK(std::abs(a - c) <= 1e-9);
    CHECK(std::isfinite(a));
  }
  for (double xi : {-2.0, 0.0, 1.5}) CHECK(pearcey_kernel(xi, xi) > 0);
  CHECK_THROWS_AS(pearcey_kernel(0, 0, 1e-9, {1.0, 0.1, 0.25}), Error);
}

TEST_CASE("large boxes keep the trace") {
  const int n = 24, k = 24;
  std::vector<double> x(n, 1.0), y(k, 1.0);
  auto km = kernel_matrix(x, y, box_window(n, k));
  double tr = 0;
  for (std::size_t i = 0; i < km.size(); ++i) {
    tr += km(i, i);
    CHECK(km(i, i) > -1e-9);
    CHECK(km(i, i) < 1 + 1e-9);
  }
  CHECK(tr == doctest::Approx(n).epsilon(1e-8));
  CHECK(km.at_doubled(-1, -1) == doctest::Approx(km.at_doubled(1, 1)).epsilon(1e-8));
}
