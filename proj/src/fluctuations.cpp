#include "skewhowe/fluctuations.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <limits>

namespace skewhowe {

namespace {

const double kSqrt2Pi = std::sqrt(2 * M_PI);

double gamma_any(double x) {
  if (x < 0) return M_PI / (std::sin(M_PI * x) * std::tgamma(1 - x));
  return std::tgamma(x);
}

double gap_det(const Eigen::MatrixXd& k) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k.rows(), k.cols()) - k;
  return a.determinant();
}

}  // namespace

double hermite_poly(int l, double s) {
  if (l == 0) return 1;
  double prev = 1, cur = s;
  for (int m = 1; m < l; ++m) {
    double next = s * cur - m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_kernel_diagonal(double s, int l) {
  const double lf = std::lgamma(l + 1.0);
  auto f = [&](double t) {
    double h = hermite_poly(l, t);
    if (h == 0) return 0.0;
    return std::exp(2 * std::log(std::abs(h)) - t * t / 2 - lf);
  };
  const double inf = std::numeric_limits<double>::infinity();
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  // The mass sits near |t| <= 2 sqrt(l + 1); split there so the adaptive rule sees the oscillation.
  double edge = 2 * std::sqrt(l + 1.0) + 4;
  double v = 0;
  if (s < -edge) {
    v = kSqrt2Pi - GK::integrate(f, -inf, s, 20, 1e-14);
  } else {
    double hi = std::max(s, edge);
    if (hi > s) v += GK::integrate(f, s, hi, 20, 1e-14);
    v += GK::integrate(f, hi, inf, 20, 1e-14);
  }
  return v / kSqrt2Pi;
}

double hermite_kernel(double s, int l, int lp) {
  if (l < 0 || lp < 0) throw Error(Errc::InvalidArgument, "hermite kernel indices must be nonnegative");
  if (l == lp) return hermite_kernel_diagonal(s, l);
  double num = hermite_poly(l + 1, s) * hermite_poly(lp, s) - hermite_poly(l, s) * hermite_poly(lp + 1, s);
  return std::exp(-s * s / 2 - std::lgamma(lp + 1.0)) * num / ((lp - l) * kSqrt2Pi);
}

double hermite_gap(double s, int delta) {
  if (delta < 1) throw Error(Errc::InvalidArgument, "delta must be at least 1");
  Eigen::MatrixXd k(delta, delta);
  for (int i = 0; i < delta; ++i)
    for (int j = 0; j < delta; ++j) k(i, j) = hermite_kernel(s, i, j);
  return gap_det(k);
}

std::vector<double> hermite_pmf(double s, int dmax) {
  std::vector<double> pmf;
  double prev = 1;
  for (int d = 0; d <= dmax; ++d) {
    double g = hermite_gap(s, d + 1);
    pmf.push_back(prev - g);
    prev = g;
  }
  return pmf;
}

double gtw_kernel(int delta, int i, int j) {
  if (i < 0 || j < 0 || i >= delta || j >= delta) throw Error(Errc::InvalidArgument, "index outside 0..delta-1");
  const int d = j - i;
  static const double sin_quarter[4] = {0, 1, 0, -1};
  const double sn = sin_quarter[((d % 4) + 4) % 4];
  double sum = 0;
  for (int l = 0; 2 * l <= delta - j - 1; ++l) {
    bool nonpositive_int = d % 2 == 0 && l + d / 2 <= 0;
    if (nonpositive_int) {
      int r = -d / 2 - l;
      sum += 0.5 * ((l % 2) ? -1.0 : 1.0) / (std::tgamma(l + 1.0) * std::tgamma(r + 1.0));
    } else if (sn != 0) {
      sum += sn * gamma_any(l + d / 2.0) / (2 * M_PI * std::tgamma(l + 1.0));
    }
  }
  return sum;
}

double gtw_gap(int delta) {
  Eigen::MatrixXd k(delta, delta);
  for (int i = 0; i < delta; ++i)
    for (int j = 0; j < delta; ++j) k(i, j) = gtw_kernel(delta, i, j);
  return gap_det(k);
}

EquivalenceResidual kernel_equivalence_residual(int delta) {
  EquivalenceResidual r;
  for (int i = 0; i < delta; ++i)
    for (int j = 0; j < delta; ++j) {
      if ((j - i) % 2 == 0) continue;
      double lhs = std::pow(2.0, (i - j) / 2.0) * gtw_kernel(delta, delta - 1 - i, delta - 1 - j);
      r.entries = std::max(r.entries, std::abs(lhs - hermite_kernel(0, i, j)));
    }
  r.determinant = std::abs(gtw_gap(delta) - hermite_gap(0, delta));
  return r;
}

Rational double_factorial(int n) {
  mpz_class v = 1;
  for (int m = n; m > 1; m -= 2) v *= m;
  return Rational(v);
}

Rational df_binomial(int n, int k) {
  if (k < -1 || k > n + 1) return 0;
  Rational v = double_factorial(n) / (double_factorial(k) * double_factorial(n - k));
  v.canonicalize();
  return v;
}

namespace {

Rational two_pow_factorial(int l) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(l));
  return Rational(f << l);
}

}  // namespace

Rational df_rhs(int i, int j) {
  mpz_class jf;
  mpz_fac_ui(jf.get_mpz_t(), static_cast<unsigned long>(j));
  Rational num = (i % 2) ? double_factorial(i) * double_factorial(j - 1) : double_factorial(i - 1) * double_factorial(j);
  Rational v = num / (Rational(jf) * (i - j));
  v.canonicalize();
  return v;
}

Rational df_pos_lhs(int i, int j) {
  Rational s = 0;
  for (int l = 0; l <= j / 2; ++l) s += double_factorial(2 * l + i - j - 2) / two_pow_factorial(l);
  s.canonicalize();
  return s;
}

Rational df_neg_lhs(int i, int j) {
  const int a = (j - i + 1) / 2;
  Rational s = 0;
  for (int l = 0; l < a; ++l) {
    Rational t = 1 / (two_pow_factorial(l) * double_factorial(j - i - 2 * l));
    s += ((l + a) % 2) ? -t : t;
  }
  for (int l = a; l <= j / 2; ++l) s += double_factorial(2 * l + i - j - 2) / two_pow_factorial(l);
  s.canonicalize();
  return s;
}

DfReport verify_df_identities(int max_idx) {
  DfReport r;
  for (int i = 0; i <= max_idx; ++i)
    for (int j = 0; j <= max_idx; ++j) {
      if ((i + j) % 2 == 0) continue;
      Rational lhs = i > j ? df_pos_lhs(i, j) : df_neg_lhs(i, j);
      ++r.checked;
      if (lhs != df_rhs(i, j)) ++r.failures;
    }
  for (int J = 1; 2 * J <= max_idx; ++J) {
    Rational s = 0;
    for (int l = 0; l < J; ++l) s += ((l + J) % 2 ? -1 : 1) * df_binomial(2 * J - 1, 2 * l);
    Rational rhs = -double_factorial(2 * J - 3) / double_factorial(2 * J - 2);
    ++r.checked;
    if (s != rhs) ++r.failures;
  }
  return r;
}

double airy_kernel_value(double x, double y) {
  using boost::math::airy_ai;
  using boost::math::airy_ai_prime;
  if (x == y) {
    double a = airy_ai(x), ap = airy_ai_prime(x);
    return ap * ap - x * a * a;
  }
  return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

namespace {

double tw_det(double s, int m, TwMethod method) {
  std::vector<double> gx, gw;
  gauss_legendre(m, gx, gw);
  std::vector<double> t(m), w(m), ai(m), aip(m);
  for (int a = 0; a < m; ++a) {
    double u = (gx[a] + 1) / 2;
    if (method == TwMethod::Truncated) {
      const double len = 16;
      t[a] = s + len * u;
      w[a] = gw[a] * len / 2;
    } else {
      const double scale = 4;
      double th = M_PI * u / 2;
      t[a] = s + scale * std::tan(th);
      w[a] = gw[a] / 2 * scale * (M_PI / 2) / (std::cos(th) * std::cos(th));
    }
    if (t[a] > 80) {
      ai[a] = aip[a] = 0;
    } else {
      ai[a] = boost::math::airy_ai(t[a]);
      aip[a] = boost::math::airy_ai_prime(t[a]);
    }
  }
  Eigen::MatrixXd k(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double v = a == b ? aip[a] * aip[a] - t[a] * ai[a] * ai[a]
                        : (ai[a] * aip[b] - aip[a] * ai[b]) / (t[a] - t[b]);
      k(a, b) = std::sqrt(w[a]) * v * std::sqrt(w[b]);
    }
  return gap_det(k);
}

}  // namespace

double tracy_widom_cdf(double s, TwMethod method) {
  if (s > 12) return 1.0;
  double prev = tw_det(s, 16, method);
  for (int m = 32; m <= 512; m *= 2) {
    double cur = tw_det(s, m, method);
    if (std::abs(cur - prev) < 1e-10) return std::clamp(cur, 0.0, 1.0);
    prev = cur;
  }
  throw Error(Errc::NoConvergence, "Fredholm determinant did not converge");
}

double edge_observable(const Partition& p, EdgeObservable obs, int n, int k) {
  switch (obs) {
    case EdgeObservable::FirstRow:
      return p[0];
    case EdgeObservable::FullRows: {
      int full = 0;
      while (full < p.length() && p[full] == k) ++full;
      return k - full;
    }
    case EdgeObservable::LastRow:
      return p[n - 1] - n;
    case EdgeObservable::NegativeLength:
      return -p.length();
  }
  return 0;
}

std::vector<double> standardize_edge(const std::vector<Partition>& samples, double t_edge, double sigma, int n,
                                     int k, EdgeSide side, EdgeObservable obs) {
  if (!std::isfinite(sigma) || sigma <= 0) throw Error(Errc::DegenerateEdge, "edge scale is not finite");
  const double scale = sigma / std::cbrt(static_cast<double>(n));
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& p : samples) {
    double v = scale * (edge_observable(p, obs, n, k) - t_edge * n);
    out.push_back(side == EdgeSide::Right ? v : -v);
  }
  return out;
}

CornerCalibration corner_calibration(const SpecPair& spec, int n, double s) {
  spec.validate();
  if (!spec.has_transforms()) throw Error(Errc::InvalidFamily, "corner calibration needs continuous families");
  double f1 = integrate_family(spec.f, [](double v) { return v; });
  double f2 = integrate_family(spec.f, [](double v) { return v * v; });
  double g1 = integrate_family(spec.g, [](double v) { return 1 / v; });
  double g2 = integrate_family(spec.g, [](double v) { return 1 / (v * v); });
  CornerCalibration c;
  c.tau = 1 / std::sqrt(f2 + spec.c * g2);
  c.s = s;
  c.s_tilde = s / g1;
  c.imbalance = f1 - spec.c * g1;
  c.k_exact = spec.c * n + c.s_tilde / c.tau * std::sqrt(static_cast<double>(n));
  c.k = static_cast<int>(std::lround(c.k_exact));
  if (c.k < 1) throw Error(Errc::CalibrationFailure, "calibrated k is not positive");
  return c;
}

}  // namespace skewhowe
