#include <doctest.h>

#include <cmath>

#include "skewhowe/harness.hpp"

using namespace skewhowe;

namespace {

SpecPair constant(double a, double c) { return {SpecFamily::constant(a), SpecFamily::constant(1.0), c}; }

ExperimentConfig make(Statistic st, SpecPair s, int n, int samples, std::uint64_t seed) {
  ExperimentConfig c;
  c.statistic = st;
  c.spec = s;
  c.n = n;
  c.samples = samples;
  c.seed = seed;
  return c;
}

SpecPair figure_corner() { return {SpecFamily::monomial(4, 3), SpecFamily::sinusoidal(2, 1, 1), std::sqrt(3.0)}; }

}  // namespace

TEST_CASE("lattice KS and sup distance helpers") {
  // Values drawn exactly in proportion to a discrete law have zero lattice distance to its CDF.
  std::vector<double> v{0, 0, 1, 1, 1, 1, 2, 2};
  auto cdf = [](double x) { return x < 0 ? 0.0 : x < 1 ? 0.25 : x < 2 ? 0.75 : 1.0; };
  CHECK(lattice_ks(v, cdf) == doctest::Approx(0.0));
  CHECK(lattice_ks({0, 0, 0, 2}, cdf) == doctest::Approx(0.5));
  CHECK(lattice_ks({2, 2}, cdf, 1.0, -1, 3) == doctest::Approx(0.75));
  CHECK(lattice_ks(v, cdf, 1.0, -3, 5) == doctest::Approx(0.0));
  CHECK(sup_distance({0, 1}, {0, 1}, [](double u) { return u; }) == 0);
  CHECK(sup_distance({0, 1}, {0, 1}, [](double u) { return u * u; }) == doctest::Approx(0.25));
}

TEST_CASE("sup-norm convergence") {
  auto r = run_experiment(make(Statistic::SupNorm, constant(1, 2), 100, 40, 11));
  CHECK(r.pass);
  CHECK(r.distance >= 0.95);
  CHECK(r.values.size() == 40);

  auto small = supnorm_experiment(make(Statistic::SupNorm, constant(1, 2), 25, 20, 12));
  auto large = supnorm_experiment(make(Statistic::SupNorm, constant(1, 2), 100, 20, 12));
  CHECK(large.details["median"].get<double>() < small.details["median"].get<double>());

  // Nearly certain filling of the box.
  auto full = supnorm_experiment(make(Statistic::SupNorm, constant(1e6, 1), 30, 5, 13));
  CHECK(full.details["max"].get<double>() < 0.01);
}

TEST_CASE("Tracy-Widom edge") {
  auto r = edge_experiment(make(Statistic::Edge, constant(1, 2), 100, 2000, 21));
  CHECK(r.details["observable"] == "first_row");
  CHECK(r.details["sigma"].get<double>() > 0);
  CHECK(r.distance < 0.08);
  CHECK(r.details["mean"].get<double>() == doctest::Approx(-1.77).epsilon(0.15));

  ExperimentConfig wrong = make(Statistic::Edge, constant(1, 2), 100, 2000, 21);
  wrong.observable = EdgeObservable::FullRows;
  CHECK(edge_experiment(wrong).distance > 0.3);

  ExperimentConfig left = make(Statistic::Edge, constant(1, 2), 60, 400, 22);
  left.side = EdgeSide::Left;
  auto l = edge_experiment(left);
  CHECK(l.details["observable"] == "last_row");
  CHECK(l.details["t_edge"].get<double>() > -1);
  CHECK(l.distance < 0.12);
}

TEST_CASE("discrete Hermite corner") {
  ExperimentConfig half = make(Statistic::Corner, constant(1, 1), 200, 2000, 31);
  auto h = corner_experiment(half);
  CHECK(h.k == 200);
  CHECK(std::abs(h.details["p_zero"].get<double>() - 0.5) < 0.03);

  auto f0 = corner_experiment(make(Statistic::Corner, figure_corner(), 200, 2000, 32));
  CHECK(f0.k == 346);
  CHECK(f0.distance <= 0.05);

  ExperimentConfig shifted = make(Statistic::Corner, figure_corner(), 200, 2000, 33);
  shifted.s = 0.71;
  auto f1 = corner_experiment(shifted);
  CHECK(f1.details["k_rounded"] == 376);
  CHECK(f1.distance <= 0.07);

  CHECK_THROWS_AS(corner_experiment(make(Statistic::Corner, constant(1, 2), 50, 10, 1)), Error);
}

TEST_CASE("constant-q slopes") {
  SpecPair line{SpecFamily::constant_q(1.2, 1), SpecFamily::constant_q(1.2, -1), 1};
  auto r = constant_q_experiment(make(Statistic::Slope, line, 200, 20, 41));
  CHECK(r.details["regime"] == "line");
  CHECK(r.distance < 0.05);

  SpecPair empty{SpecFamily::constant_q(0.8, 1), SpecFamily::constant_q(0.8, 1), 1};
  auto e = constant_q_experiment(make(Statistic::Slope, empty, 200, 10, 42));
  CHECK(e.details["regime"] == "empty");
  CHECK(e.details["mean_fill"].get<double>() < 0.01);

  // b = -n/k: the first-row law is reported, not tested against a limit.
  SpecPair fig{SpecFamily::constant_q(1.2, 1), SpecFamily::constant_q(1.2, -100.0 / 120), 1.2};
  ExperimentConfig c = make(Statistic::Slope, fig, 100, 20, 43);
  c.k = 120;
  auto f = constant_q_experiment(c);
  double total = 0;
  for (double p : f.details["first_row_pmf"]) total += p;
  CHECK(total == doctest::Approx(1.0));

  CHECK_THROWS_AS(constant_q_experiment(make(Statistic::Slope, constant(1, 1), 10, 2, 1)), Error);
}

TEST_CASE("reports are reproducible") {
  ExperimentConfig c = make(Statistic::Edge, constant(1, 2), 60, 200, 51);
  auto a = run_experiment(c);
  c.threads = 3;
  auto b = run_experiment(c);
  CHECK(a.to_json(true).dump() == b.to_json(true).dump());
  CHECK(a.table_csv() == b.table_csv());
  CHECK(a.table_csv().rfind("observable,standardized", 0) == 0);
}

TEST_CASE("experiment config JSON") {
  nlohmann::json j = {{"spec", {{"f", {{"family", "constant"}, {"alpha", 1.0}}}, {"g", {{"family", "constant"}, {"alpha", 1.0}}}, {"c", 2.0}}},
                      {"n", 50},
                      {"samples", 10},
                      {"seed", 7},
                      {"statistic", "edge"},
                      {"side", "left"}};
  ExperimentConfig c = config_from_json(j);
  CHECK(c.statistic == Statistic::Edge);
  CHECK(c.side == EdgeSide::Left);
  CHECK(c.spec.c == 2.0);
  ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  j["statistic"] = "median";
  CHECK_THROWS_AS(config_from_json(j), Error);
  j.erase("statistic");
  CHECK_THROWS_AS(config_from_json(j), Error);
}
