#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skewhowe/specialization.hpp"

using namespace skewhowe;

namespace {

SpecPair constant_pair(double alpha, double c) {
  return {SpecFamily::constant(alpha), SpecFamily::constant(1.0), c};
}

SpecPair pearcey_pair(double c) {
  double beta = 2 * c + 1 + 2 * std::sqrt(c * (c + 1));
  return {SpecFamily::constant(1.0), SpecFamily::piecewise({beta, 1 / beta}, {c / 2, c / 2}), c};
}

void check_close(cplx a, cplx b, double tol) {
  CHECK(std::abs(a - b) <= tol * std::max(1.0, std::abs(b)));
}

}  // namespace

TEST_CASE("grid values") {
  SpecPair s = constant_pair(2.0, 1.0);
  CHECK(x_values(s, 3) == std::vector<double>{2, 2, 2});
  SpecPair e{SpecFamily::exponential(1.0, std::log(2.0)), SpecFamily::constant(1.0), 1.0};
  auto x = x_values(e, 2);
  CHECK(x[0] == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-15));
  SpecPair m{SpecFamily::monomial(1.0, 1.0), SpecFamily::constant(1.0), 1.0};
  CHECK(x_values(m, 4) == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  SpecPair q{SpecFamily::constant_q(2.0, 1.0), SpecFamily::constant_q(2.0, -1.0), 1.0};
  CHECK(x_values(q, 3) == std::vector<double>{1, 2, 4});
  CHECK(y_values(q, 3) == std::vector<double>{1, 0.5, 0.25});
  SpecPair mono_g{SpecFamily::constant(1.0), SpecFamily::monomial(1.0, 2.0), 1.0};
  CHECK_NOTHROW(y_values(mono_g, 3));
  SpecPair grid{SpecFamily::grid({1, 2}), SpecFamily::constant(1.0), 1.0};
  CHECK_THROWS_AS(x_values(grid, 3), Error);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(SpecFamily::constant(-1).validate(), Error);
  CHECK_THROWS_AS(SpecFamily::sinusoidal(1.0, 2.0, 1.0).validate(), Error);
  CHECK_THROWS_AS(SpecFamily::constant_q(1.0, 1.0).validate(), Error);
  auto pw = SpecFamily::piecewise({3, 1}, {1, 1});
  CHECK(pw.shares[0] == doctest::Approx(0.5));
  CHECK(pw(0.25) == 3);
  CHECK(pw(0.75) == 1);
}

TEST_CASE("constant closed forms for I1..I4") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    double alpha = 0.3 + std::abs(U(rng)), c = 0.2 + std::abs(U(rng));
    SpecPair s = constant_pair(alpha, c);
    cplx z(U(rng), U(rng));
    if (std::abs(z.imag()) < 0.05) z += cplx(0, 0.1);
    cplx w = alpha * z;
    check_close(transform_I1(s, z), w / (1.0 - w) + c / (z + 1.0), 1e-10);
    check_close(transform_I2(s, z), w / std::pow(1.0 - w, 2) - c * z / std::pow(z + 1.0, 2), 1e-10);
    check_close(transform_I3(s, z), w * (1.0 + w) / std::pow(1.0 - w, 3) + c * z * (z - 1.0) / std::pow(z + 1.0, 3),
                1e-10);
    check_close(transform_I4(s, z),
                w * (1.0 + 4.0 * w + w * w) / std::pow(1.0 - w, 4) -
                    c * z * (z * z - 4.0 * z + 1.0) / std::pow(z + 1.0, 4),
                1e-10);
  }
}

TEST_CASE("transforms at z = 0 and at the constant double root") {
  SpecPair s = constant_pair(1.0, 4.0);
  CHECK(transform_I1(s, 0.0).real() == doctest::Approx(4.0));
  CHECK(std::abs(transform_I2(s, 0.0)) == 0.0);
  CHECK(std::abs(transform_I3(s, 0.0)) == 0.0);
  CHECK(std::abs(transform_I4(s, 0.0)) == 0.0);
  CHECK(std::abs(transform_I2(s, 3.0)) < 1e-12);
  CHECK(std::abs(transform_I2(s, 1.0 / 3)) < 1e-12);
}

TEST_CASE("third derivative at the critical point matches the constant closed form") {
  for (auto [alpha, c] : {std::pair{1.0, 4.0}, std::pair{0.5, 3.0}, std::pair{2.0, 0.3}}) {
    SpecPair s = constant_pair(alpha, c);
    double zc = (alpha * (c + 1) - (alpha + 1) * std::sqrt(alpha * c)) / (alpha * (alpha * c - 1));
    double s3 = -2 * alpha * alpha * std::pow(1 + std::sqrt(alpha * c), 5) /
                (std::pow(alpha + 1, 3) * (std::sqrt(alpha) - std::sqrt(c)) * std::sqrt(c));
    CHECK(std::abs(transform_I2(s, zc)) < 1e-12);
    CHECK(transform_I3(s, zc).real() == doctest::Approx(zc * zc * zc * s3).epsilon(1e-8));
  }
  CHECK(transform_I3(constant_pair(1.0, 4.0), 1.0 / 3).real() == doctest::Approx(1.125).epsilon(1e-12));
}

TEST_CASE("piecewise Pearcey point") {
  SpecPair s = pearcey_pair(2.0);
  CHECK(transform_I1(s, -1.0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(transform_I2(s, -1.0)) < 1e-12);
  CHECK(std::abs(transform_I3(s, -1.0)) < 1e-12);
  CHECK(transform_I4(s, -1.0).real() == doctest::Approx(9.0 / 16).epsilon(1e-10));
}

TEST_CASE("exponential closed form of I1") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-2.5, 2.5);
  const double gamma = 0.7, delta = 0.4, c = 1.5;
  SpecPair s{SpecFamily::exponential(1.0, gamma), SpecFamily::exponential(1.0, delta * c), c};
  double mu = delta * c;
  for (int trial = 0; trial < 20; ++trial) {
    cplx z(U(rng), U(rng));
    if (std::abs(z.imag()) < 0.1) z = cplx(z.real(), 0.3);
    cplx closed = std::log((1.0 - z * std::exp(-gamma)) / (1.0 - z)) / gamma +
                  c * (1.0 - std::log((1.0 + z * std::exp(mu)) / (1.0 + z)) / mu);
    check_close(transform_I1(s, z), closed, 1e-9);
  }
}

TEST_CASE("symmetry and realness") {
  SpecPair s{SpecFamily::monomial(1.0, 3.0), SpecFamily::sinusoidal(2.0, 1.0, 1.0), std::sqrt(3.0)};
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    cplx z(U(rng), U(rng));
    check_close(transform_I1(s, std::conj(z)), std::conj(transform_I1(s, z)), 1e-12);
  }
  for (double x : {-5.0, -0.5, 0.3, 0.9}) CHECK(std::abs(transform_I1(s, x).imag()) < 1e-14);
}

TEST_CASE("branch cut guard") {
  SpecPair s = constant_pair(1.0, 4.0);
  CHECK_THROWS_AS(transform_I1(s, 1.0), Error);
  CHECK_THROWS_AS(transform_I1(s, -1.0), Error);
  CHECK_NOTHROW(transform_I1(s, cplx(1.0, 1e-3)));
  SpecPair e{SpecFamily::exponential(2.0, 1.0), SpecFamily::constant(1.0), 1.0};
  BranchCuts bc = branch_cuts(e);
  CHECK(bc.f[0].first == doctest::Approx(0.5));
  CHECK(bc.f[0].second == doctest::Approx(std::exp(1.0) / 2));
  SpecPair pw = pearcey_pair(2.0);
  CHECK(branch_cuts(pw).all().size() == 3);
  CHECK_THROWS_AS(transform_I1(pw, branch_cuts(pw).g[0].first), Error);
  try {
    transform_I2(e, 1.0);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == Errc::OnBranchCut);
  }
}

TEST_CASE("derivative and chart identities") {
  SpecPair s{SpecFamily::exponential(1.5, 0.8), SpecFamily::piecewise({2.0, 0.5}, {1, 1}), 1.3};
  const double h = 1e-5;
  for (cplx z : {cplx(0.2, 0.1), cplx(-3.0, 0.5), cplx(4.0, -1.0), cplx(-0.1, 0.0)}) {
    check_close(transform_J(s, z) * z, transform_I2(s, z), 1e-11);
    cplx d = (transform_I1(s, z + h) - transform_I1(s, z - h)) / (2 * h);
    check_close(d, transform_J(s, z), 1e-7);
    cplx dj = (transform_J(s, z + h) - transform_J(s, z - h)) / (2 * h);
    check_close(dj, transform_Jprime(s, z), 1e-6);
    cplx u = 1.0 / z;
    check_close(transform_I1_u(s, u), transform_I1(s, z), 1e-11);
    check_close(transform_H(s, u), z * transform_I2(s, z), 1e-11);
    cplx dh = (transform_H(s, u + h) - transform_H(s, u - h)) / (2 * h);
    check_close(dh, transform_Hprime(s, u), 1e-6);
  }
  CHECK(transform_I1_u(s, 0.0).real() == doctest::Approx(-1.0));
  double int_inv_f = integrate_family(s.f, [](double v) { return 1 / v; });
  double int_g = integrate_family(s.g, [](double v) { return v; });
  CHECK(transform_H(s, 0.0).real() == doctest::Approx(int_inv_f - s.c * int_g).epsilon(1e-12));
}

TEST_CASE("sinusoidal reciprocal integral") {
  auto g = SpecFamily::sinusoidal(2.0, 1.0, 1.0);
  CHECK(integrate_family(g, [](double v) { return 1 / v; }) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("spec json round trip") {
  auto j = nlohmann::json::parse(
      R"({"f":{"family":"monomial","alpha":1.0,"exponent":3.0},"g":{"family":"constant","alpha":1.0},"c":2.0})");
  SpecPair s = spec_from_json(j);
  CHECK(s.f.kind == Family::Monomial);
  CHECK(s.f.exponent == 3.0);
  CHECK(s.c == 2.0);
  CHECK(spec_to_json(spec_from_json(spec_to_json(s))) == spec_to_json(s));
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"f":{"family":"nope"},"g":{"family":"constant"}})")), Error);
}
