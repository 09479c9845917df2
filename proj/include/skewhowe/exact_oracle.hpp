#pragma once

#include <functional>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "skewhowe/partition.hpp"

namespace skewhowe {

using Rational = mpq_class;

// Jacobi-Trudi determinant in complete homogeneous functions.
Rational schur(const Partition& p, const std::vector<Rational>& x);
// Sum over semistandard tableaux, for cross-validation.
Rational schur_enumerate(const Partition& p, const std::vector<Rational>& x);

// Complete homogeneous h_0..h_degree of x.
std::vector<Rational> complete_homogeneous(const std::vector<Rational>& x, int degree);

Rational dual_cauchy_residual(int n, int k, const std::vector<Rational>& x, const std::vector<Rational>& y);

struct MeasureTable {
  int n = 0, k = 0;
  std::map<Partition, Rational> entries;
  Rational total() const;
};

inline constexpr std::uint64_t kMaxTablePartitions = 1000000;

// Throws TooLarge when the box holds more than kMaxTablePartitions diagrams.
MeasureTable measure_table(int n, int k, const std::vector<Rational>& x, const std::vector<Rational>& y);

// P(lambda_1 = v) for v = 0..k.
std::vector<Rational> first_row_law(const MeasureTable& t);

// Probability that the doubled half-integer m is occupied.
Rational onepoint_bruteforce(const MeasureTable& t, int doubled_m);

// max over lambda of |mu(lambda) - det[K(a_i, a_j)]|, kernel indexed by doubled positions.
double determinantal_check(const MeasureTable& t, const std::function<double(int, int)>& kernel);

std::vector<double> to_double(const std::vector<Rational>& v);

}  // namespace skewhowe
