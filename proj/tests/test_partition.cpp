#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "skewhowe/partition.hpp"

using namespace skewhowe;

TEST_CASE("conjugate examples") {
  CHECK(conjugate(Partition{5, 5, 2, 1}) == Partition{4, 3, 2, 2, 2});
  CHECK(conjugate(Partition{}) == Partition{});
  CHECK(conjugate(Partition::rectangle(3, 5)) == Partition::rectangle(5, 3));
}

TEST_CASE("conjugate is an involution on random partitions") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    int len = rng() % 12;
    std::vector<int> parts(len);
    for (int& p : parts) p = rng() % 15;
    std::sort(parts.rbegin(), parts.rend());
    Partition p(parts);
    Partition q = conjugate(p);
    CHECK(conjugate(q) == p);
    CHECK(q.size() == p.size());
  }
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition({1, 2}), Error);
  CHECK_THROWS_AS(Partition({-1}), Error);
  CHECK(Partition({3, 0, 0}).length() == 1);
}

TEST_CASE("maya examples") {
  MayaDiagram m = maya(Partition{5, 5, 2, 1}, 4, 5);
  CHECK(m.doubled == std::vector<int>{9, 7, -1, -5});
  CHECK(maya(Partition{}, 3, 2).doubled == std::vector<int>{-1, -3, -5});
  MayaDiagram full = maya(Partition::rectangle(3, 4), 3, 4);
  CHECK(full.doubled == std::vector<int>{7, 5, 3});
  CHECK_THROWS_AS(maya(Partition{3}, 2, 2), Error);
  CHECK_THROWS_AS(maya(Partition{1, 1, 1}, 2, 2), Error);
  CHECK(from_maya(m) == Partition{5, 5, 2, 1});
}

TEST_CASE("count_right examples") {
  CHECK(count_right(maya(Partition{}, 3, 3), -2) == 1);
  CHECK(count_right(maya(Partition{5, 5, 2, 1}, 4, 5), 0) == 2);
  CHECK(count_right(maya(Partition{5, 5, 2, 1}, 4, 5), 2 * 5 - 1) == 0);
}

TEST_CASE("maya of conjugate is the negated complement") {
  const int n = 3, k = 3;
  for_each_in_box(n, k, [&](const Partition& p) {
    std::set<int> occ;
    for (int a : maya(p, n, k).doubled) occ.insert(a);
    std::vector<int> comp;
    for (int a = 2 * k - 1; a >= -2 * n + 1; a -= 2)
      if (!occ.count(a)) comp.push_back(-a);
    std::sort(comp.rbegin(), comp.rend());
    CHECK(maya(conjugate(p), k, n).doubled == comp);
  });
}

TEST_CASE("box enumeration") {
  int count = 0;
  for_each_in_box(2, 2, [&](const Partition& p) {
    CHECK(p.fits_box(2, 2));
    ++count;
  });
  CHECK(count == 6);
  CHECK(count_in_box(4, 4) == 70);
  std::set<Partition> seen;
  for_each_in_box(3, 4, [&](const Partition& p) { seen.insert(p); });
  CHECK(seen.size() == 35);
}

TEST_CASE("boundary profile of the vacuum and full box") {
  const int n = 5, k = 10;
  BoundaryProfile vac(Partition{}, n, k);
  BoundaryProfile full(Partition::rectangle(n, k), n, k);
  double c = 2.0;
  for (int i = 0; i <= 300; ++i) {
    double u = -1.0 + (1.0 + c) * i / 300.0;
    CHECK(vac(u) == doctest::Approx(std::abs(u)).epsilon(1e-12));
    CHECK(full(u) == doctest::Approx(c + 1 - std::abs(u - (c - 1))).epsilon(1e-12));
  }
  CHECK(vac(-1.0) == 1.0);
  CHECK(full(c) == doctest::Approx(c));
  CHECK(full(-1.0) == doctest::Approx(1.0));
}

TEST_CASE("boundary profile notch for a single box") {
  BoundaryProfile p(Partition{1}, 2, 2);
  BoundaryProfile vac(Partition{}, 2, 2);
  // The counting formula puts the notch 2/n above the vacuum at u = 0.
  CHECK(p(0.0) - vac(0.0) == doctest::Approx(2.0 / 2));
  CHECK(p(-0.5) == doctest::Approx(vac(-0.5)));
  CHECK(p(0.5) == doctest::Approx(vac(0.5)));
}

TEST_CASE("boundary profile is 1-Lipschitz with corners fixed") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + rng() % 8, k = 1 + rng() % 8;
    std::vector<int> parts(n);
    for (int& x : parts) x = rng() % (k + 1);
    std::sort(parts.rbegin(), parts.rend());
    BoundaryProfile b(Partition(parts), n, k);
    const auto& u = b.breakpoints();
    const auto& v = b.values();
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
      CHECK(std::abs(std::abs(v[i + 1] - v[i]) - (u[i + 1] - u[i])) < 1e-12);
    CHECK(v.front() == doctest::Approx(1.0));
    CHECK(v.back() == doctest::Approx(static_cast<double>(k) / n));
    CHECK(b(-1.5) == doctest::Approx(1.5));
    CHECK(b(k * 1.0 / n + 0.5) == doctest::Approx(k * 1.0 / n + 0.5));
  }
}
