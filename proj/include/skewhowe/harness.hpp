#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewhowe/fluctuations.hpp"
#include "skewhowe/specialization.hpp"

namespace skewhowe {

enum class Statistic { SupNorm, Edge, Corner, Slope };

struct ExperimentConfig {
  SpecPair spec;
  int n = 0;
  std::optional<int> k;  // default round(c n), or the calibrated k for corner runs
  int samples = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  Statistic statistic = Statistic::SupNorm;
  std::optional<double> threshold;  // defaults: 0.95 (supnorm fraction), 0.05 otherwise
  double epsilon = 0.05;            // supnorm
  EdgeSide side = EdgeSide::Right;  // edge
  std::optional<EdgeObservable> observable;
  double s = 0;    // corner
  int dmax = 40;   // corner pmf support
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct StatReport {
  std::string statistic, metric;
  double distance = 0;
  double threshold = 0;
  bool pass = false;
  int n = 0, k = 0, samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // per-sample statistic
  nlohmann::json details = nlohmann::json::object();
  // Plot-ready table.
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  nlohmann::json to_json(bool with_values = false) const;
  std::string table_csv() const;
};

// Fraction of samples whose sup-norm distance to the limit shape is below epsilon; passes at >= threshold.
StatReport supnorm_experiment(const ExperimentConfig& cfg);
// KS distance of the standardized edge observable to F_GUE, taken over the lattice of attained values.
StatReport edge_experiment(const ExperimentConfig& cfg);
// Total variation between the law of k - lambda_1 and the discrete Hermite pmf.
StatReport corner_experiment(const ExperimentConfig& cfg);
// Mean least-squares slope of the boundary against the constant-q conjecture.
StatReport constant_q_experiment(const ExperimentConfig& cfg);
StatReport run_experiment(const ExperimentConfig& cfg);

// sup_u |F(u) - target(u)| over the breakpoints of F and the midpoints between them.
double sup_distance(const std::vector<double>& u, const std::vector<double>& v,
                    const std::function<double(double)>& target);
// max |F_emp(x) - F(x)| over x on the lattice of the values (spacing step) spanning [lo, hi] and the
// samples; step <= 0 uses the attained values only.
double lattice_ks(std::vector<double> values, const std::function<double(double)>& cdf, double step = 0,
                  double lo = -8, double hi = 5);

}  // namespace skewhowe
