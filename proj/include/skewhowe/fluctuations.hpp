#pragma once

#include <vector>

#include "skewhowe/exact_oracle.hpp"
#include "skewhowe/partition.hpp"
#include "skewhowe/specialization.hpp"

namespace skewhowe {

// Probabilists' Hermite polynomial He_l(s).
double hermite_poly(int l, double s);

// Discrete Hermite kernel, 0-based indices:
// K_s(l, l') = 1/(sqrt(2 pi) l'!) * int_s^inf e^{-t^2/2} He_l(t) He_l'(t) dt.
double hermite_kernel(double s, int l, int lp);
// Diagonal by direct quadrature of the integral.
double hermite_kernel_diagonal(double s, int l);

// det(I - K_s) over 0..delta-1, the limit of P(lambda_1 - k <= -delta).
double hermite_gap(double s, int delta);
// P(lambda_1 = k - d) for d = 0..dmax.
std::vector<double> hermite_pmf(double s, int dmax);

// Gravner-Tracy-Widom critical kernel, 0 <= i, j <= delta - 1.
double gtw_kernel(int delta, int i, int j);
double gtw_gap(int delta);

struct EquivalenceResidual {
  double entries = 0;      // kernel entries with (j - i) odd
  double determinant = 0;  // |det(I - K_crit) - det(I - K_0)|
  double max() const { return entries > determinant ? entries : determinant; }
};
EquivalenceResidual kernel_equivalence_residual(int delta);

// N!! / (K!! (N-K)!!), zero for K < -1 or K > N + 1.
Rational double_factorial(int n);
Rational df_binomial(int n, int k);

struct DfReport {
  int checked = 0;
  int failures = 0;
  bool ok() const { return failures == 0; }
};
// Positive and negative identities for all opposite-parity 0 <= i, j <= max_idx, plus the
// alternating base case for J = 1..max_idx/2.
DfReport verify_df_identities(int max_idx);
Rational df_pos_lhs(int i, int j);
Rational df_neg_lhs(int i, int j);
Rational df_rhs(int i, int j);

enum class TwMethod { Truncated, Mapped };
// F_GUE(s) = det(I - K_Airy) on L^2(s, inf), doubling nodes until the change is below 1e-10.
double tracy_widom_cdf(double s, TwMethod method = TwMethod::Truncated);
double airy_kernel_value(double x, double y);

enum class EdgeSide { Right, Left };
enum class EdgeObservable {
  FirstRow,       // lambda_1
  FullRows,       // k - #{i : lambda_i = k}
  LastRow,        // lambda_n - n
  NegativeLength  // -l(lambda)
};
double edge_observable(const Partition& p, EdgeObservable obs, int n, int k);
// sigma (L - t n) / n^{1/3}, negated on the left edge so both sides are Tracy-Widom distributed.
std::vector<double> standardize_edge(const std::vector<Partition>& samples, double t_edge, double sigma, int n,
                                     int k, EdgeSide side, EdgeObservable obs);

// tau = (|f|^2 + c |1/g|^2)^{-1/2}, s = s_tilde * int 1/g, k = round(c n + s_tilde sqrt(n) / tau).
struct CornerCalibration {
  double tau = 0, s = 0, s_tilde = 0;
  double k_exact = 0;
  int k = 0;
  double imbalance = 0;  // int f - c int 1/g
};
CornerCalibration corner_calibration(const SpecPair& spec, int n, double s);

}  // namespace skewhowe
