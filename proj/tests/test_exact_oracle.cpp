#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <random>

#include "skewhowe/exact_oracle.hpp"
#include "skewhowe/sampler.hpp"

using namespace skewhowe;

namespace {

std::vector<Rational> random_rationals(std::mt19937& rng, int count) {
  std::vector<Rational> v;
  for (int i = 0; i < count; ++i) {
    Rational r(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 7));
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

std::vector<Rational> ones(int count) { return std::vector<Rational>(count, Rational(1)); }

}  // namespace

TEST_CASE("schur examples") {
  std::vector<Rational> x{Rational(2), Rational(5, 3)};
  CHECK(schur(Partition{1}, x) == Rational(11, 3));
  CHECK(schur(Partition{3, 3}, x) == Rational(1000, 27));
  CHECK(schur(Partition{2, 1}, ones(3)) == 8);
  CHECK(schur_enumerate(Partition{2, 1}, ones(3)) == 8);
  CHECK(schur(Partition{}, x) == 1);
  CHECK(schur(Partition{1, 1, 1}, x) == 0);
}

TEST_CASE("Jacobi-Trudi agrees with tableau enumeration") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_rationals(rng, 3);
    for_each_in_box(3, 3, [&](const Partition& p) { CHECK(schur(p, x) == schur_enumerate(p, x)); });
  }
  auto x = random_rationals(rng, 4);
  for_each_in_box(3, 2, [&](const Partition& p) { CHECK(schur(p, x) == schur_enumerate(p, x)); });
}

TEST_CASE("dual Cauchy identity is exact") {
  CHECK(dual_cauchy_residual(1, 1, {Rational(3, 7)}, {Rational(5, 2)}) == 0);
  CHECK(dual_cauchy_residual(2, 2, {Rational(1), Rational(2)}, {Rational(1), Rational(3)}) == 0);
  std::mt19937 rng(11);
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k)
      for (int trial = 0; trial < 3; ++trial)
        CHECK(dual_cauchy_residual(n, k, random_rationals(rng, n), random_rationals(rng, k)) == 0);
  CHECK_THROWS_AS(dual_cauchy_residual(2, 2, ones(1), ones(2)), Error);
}

TEST_CASE("measure table") {
  auto t1 = measure_table(1, 1, ones(1), ones(1));
  CHECK(t1.entries.at(Partition{}) == Rational(1, 2));
  CHECK(t1.entries.at(Partition{1}) == Rational(1, 2));
  auto t2 = measure_table(2, 2, ones(2), ones(2));
  CHECK(t2.entries.size() == 6);
  CHECK(t2.entries.at(Partition{}) == Rational(1, 16));
  CHECK(t2.entries.at(Partition{2, 1}) == Rational(1, 4));
  CHECK(t2.total() == 1);
  std::mt19937 rng(5);
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) {
      auto t = measure_table(n, k, random_rationals(rng, n), random_rationals(rng, k));
      CHECK(t.total() == 1);
      for (const auto& [p, v] : t.entries) CHECK(v > 0);
    }
  CHECK_THROWS_AS(measure_table(20, 20, ones(20), ones(20)), Error);
  try {
    measure_table(20, 20, ones(20), ones(20));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}

TEST_CASE("one-point probabilities") {
  auto t1 = measure_table(1, 1, ones(1), ones(1));
  CHECK(onepoint_bruteforce(t1, 1) == Rational(1, 2));
  CHECK(onepoint_bruteforce(t1, -1) == Rational(1, 2));
  auto t2 = measure_table(2, 2, ones(2), ones(2));
  // mu(2) + mu(2,1) + mu(2,2) = (3 + 4 + 1) / 16.
  CHECK(onepoint_bruteforce(t2, 3) == Rational(1, 2));
  std::mt19937 rng(8);
  for (auto [n, k] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    auto t = measure_table(n, k, random_rationals(rng, n), random_rationals(rng, k));
    Rational s = 0;
    for (int m = -2 * n + 1; m <= 2 * k - 1; m += 2) s += onepoint_bruteforce(t, m);
    CHECK(s == n);
  }
}

TEST_CASE("first-row law matches sampled histogram") {
  std::vector<Rational> x{Rational(1), Rational(1, 2)}, y{Rational(1), Rational(1, 3), Rational(1, 4)};
  auto law = first_row_law(measure_table(2, 3, x, y));
  SpecPair s{SpecFamily::grid({1.0, 0.5}), SpecFamily::grid({1.0, 1.0 / 3, 0.25}), 1.5};
  const int N = 50000;
  std::vector<int> hist(4, 0);
  for (const auto& p : sample_batch(s, 2, 3, N, 31)) hist[p[0]]++;
  double chi2 = 0;
  for (int v = 0; v <= 3; ++v) {
    double e = N * law[v].get_d();
    chi2 += (hist[v] - e) * (hist[v] - e) / e;
  }
  CHECK(1 - boost::math::cdf(boost::math::chi_squared(3), chi2) > 1e-3);
}

TEST_CASE("determinantal check with the brute-force kernel of a product measure") {
  // n = 1: the single particle sits at a_1, so K(a, a) = P(a occupied) and det is the diagonal.
  auto t = measure_table(1, 3, ones(1), {Rational(1), Rational(2), Rational(1, 2)});
  double r = determinantal_check(t, [&](int a, int b) { return a == b ? onepoint_bruteforce(t, a).get_d() : 0.0; });
  CHECK(r < 1e-15);
}
