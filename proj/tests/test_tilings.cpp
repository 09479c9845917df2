#include <doctest.h>

#include <chrono>
#include <map>

#include "skewhowe/philox.hpp"
#include "skewhowe/tilings.hpp"

using namespace skewhowe;

namespace {

TableauPair sampled_pair(int n, int k, std::uint64_t seed, double a = 1.0) {
  SpecPair s{SpecFamily::constant(a), SpecFamily::constant(1.0), static_cast<double>(k) / n};
  return dual_rsk(sample_matrix(s, n, k, seed));
}

// Row i filled with i: the tableau of a full rectangle.
Tableau full(int rows, int cols) {
  Tableau t;
  for (int i = 1; i <= rows; ++i) t.rows.push_back(std::vector<int>(cols, i));
  return t;
}

std::map<TileType, int> histogram(const TilingScene& sc) {
  std::map<TileType, int> h;
  for (const auto& t : sc.tiles) ++h[t.type];
  return h;
}

}  // namespace

TEST_CASE("Gelfand-Tsetlin patterns") {
  GTPattern e = gt_pattern(Tableau{}, 3);
  REQUIRE(e.rows.size() == 3);
  for (int l = 1; l <= 3; ++l) CHECK(e.rows[l - 1] == std::vector<int>(l, 0));

  GTPattern one = gt_pattern(Tableau{{{1}}}, 3);
  CHECK(one.rows[0] == std::vector<int>{1});
  CHECK(one.rows[1] == std::vector<int>{1, 0});
  CHECK(one.rows[2] == std::vector<int>{1, 0, 0});

  Tableau t{{{1, 1, 2, 3}, {2, 3}}};
  REQUIRE(t.semistandard());
  GTPattern g = gt_pattern(t, 3);
  CHECK(g.rows[0] == std::vector<int>{2});
  CHECK(g.rows[1] == std::vector<int>{3, 1});
  CHECK(g.rows[2] == std::vector<int>{4, 2, 0});
  CHECK_THROWS_AS(gt_pattern(t, 2), Error);
}

TEST_CASE("frozen lozenge tilings") {
  const int n = 3, k = 2;
  TilingScene empty = lozenge_scene({}, n, k);
  auto c = check_scene(empty, Partition{});
  CHECK_MESSAGE(c.ok(), c.message);
  auto h = histogram(empty);
  CHECK(h[TileType::HalfL] == n);
  CHECK(h[TileType::HalfR] == k);

  TableauPair box{full(n, k), full(k, n)};
  TilingScene packed = lozenge_scene(box, n, k);
  auto cb = check_scene(packed, Partition::rectangle(n, k));
  CHECK_MESSAGE(cb.ok(), cb.message);
  // The empty diagram keeps every left particle at the bottom, the full box pushes them to the top.
  CHECK(gluing_maya(empty) == std::vector<int>{-1, -3, -5});
  CHECK(gluing_maya(packed) == std::vector<int>{3, 1, -1});
  CHECK(histogram(packed)[TileType::U] != h[TileType::U]);
}

TEST_CASE("frozen Aztec tilings keep three domino types per part") {
  for (auto [n, k] : {std::pair{1, 1}, {2, 3}, {4, 2}}) {
    TilingScene e = aztec_scene({}, n, k);
    auto c = check_scene(e, Partition{});
    CHECK_MESSAGE(c.ok(), c.message);
    CHECK(e.tiles.size() == static_cast<std::size_t>((n + k) * (n + k + 1)));
    TilingScene f = aztec_scene({full(n, k), full(k, n)}, n, k);
    auto cf = check_scene(f, Partition::rectangle(n, k));
    CHECK_MESSAGE(cf.ok(), cf.message);
  }
}

TEST_CASE("gluing line carries the Maya diagram at n = k = 2") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    TableauPair pq = sampled_pair(2, 2, seed);
    Partition lam = pq.P.shape();
    CHECK(gluing_maya(lozenge_scene(pq, 2, 2)) == maya(lam, 2, 2).doubled);
    CHECK(gluing_maya(aztec_scene(pq, 2, 2)) == maya(lam, 2, 2).doubled);
  }
}

TEST_CASE("random scenes are valid tilings") {
  int failures = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    TableauPair pq = sampled_pair(6, 6, derive_seed(2024, i));
    Partition lam = pq.P.shape();
    TilingScene lz = lozenge_scene(pq, 6, 6), az = aztec_scene(pq, 6, 6);
    auto a = check_scene(lz, lam), b = check_scene(az, lam);
    if (!a.ok() || !b.ok()) ++failures;
    if (gluing_maya(lz) != gluing_maya(az)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("skewed parameters and unequal sides") {
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    for (auto [n, k, a] : {std::tuple{3, 7, 0.3}, {7, 3, 2.5}, {5, 5, 10.0}}) {
      TableauPair pq = sampled_pair(n, k, seed, a);
      auto c1 = check_scene(lozenge_scene(pq, n, k), pq.P.shape());
      auto c2 = check_scene(aztec_scene(pq, n, k), pq.P.shape());
      CHECK_MESSAGE(c1.ok(), c1.message);
      CHECK_MESSAGE(c2.ok(), c2.message);
    }
}

TEST_CASE("checker rejects broken scenes") {
  TableauPair pq = sampled_pair(4, 4, 9);
  TilingScene sc = lozenge_scene(pq, 4, 4);
  TilingScene missing = sc;
  missing.tiles.pop_back();
  CHECK(!check_scene(missing, pq.P.shape()).exact_cover);
  TilingScene twice = sc;
  twice.tiles.push_back(sc.tiles.front());
  CHECK(!check_scene(twice, pq.P.shape()).exact_cover);
  CHECK(!check_scene(sc, Partition{4, 4, 4, 4}).gluing_maya);

  // Sampled scenes use exactly three types on each side of the gluing line and all four overall.
  TableauPair big = sampled_pair(6, 6, 77);
  TilingScene az = aztec_scene(big, 6, 6);
  std::map<TileType, int> left, right, all;
  for (const auto& t : az.tiles) {
    ++(t.x < 12 ? left : right)[t.type];
    ++all[t.type];
  }
  CHECK(left.size() == 3);
  CHECK(right.size() == 3);
  CHECK(all.size() == 4);
}

TEST_CASE("shape mismatch") {
  TableauPair pq = sampled_pair(3, 3, 5);
  TableauPair bad = pq;
  bad.Q = Tableau{{{1, 2, 3, 3}}};
  CHECK_THROWS_AS(lozenge_scene(bad, 3, 3), Error);
  CHECK_THROWS_AS(aztec_scene(bad, 3, 3), Error);
  CHECK_THROWS_AS(lozenge_scene(pq, 2, 3), Error);
  try {
    aztec_scene(bad, 3, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShapeMismatch);
  }
}

TEST_CASE("SVG output") {
  TableauPair pq = sampled_pair(5, 4, 11);
  for (auto sc : {lozenge_scene(pq, 5, 4), aztec_scene(pq, 5, 4)}) {
    std::string a = render_svg(sc), b = render_svg(sc);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    double area = 0;
    for (const auto& p : scene_polygons(sc)) area += p.area();
    CHECK(area == doctest::Approx(region_area(sc)).epsilon(1e-9));
  }
  CHECK(region_area(aztec_scene({}, 2, 3)) == 2 * 5 * 6);
}

TEST_CASE("large scene renders quickly") {
  auto t0 = std::chrono::steady_clock::now();
  TableauPair pq = sampled_pair(40, 80, 3);
  std::string lz = render_svg(lozenge_scene(pq, 40, 80));
  std::string az = render_svg(aztec_scene(pq, 40, 80));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10);
  CHECK(lz.size() > 1000);
  CHECK(az.size() > 1000);
}
