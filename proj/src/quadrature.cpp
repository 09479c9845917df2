#include "skewhowe/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace skewhowe {

namespace {
using boost::math::quadrature::gauss_kronrod;
constexpr int kMaxSegments = 4000;

template <class T>
struct Segment {
  double a, b;
  T value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <class T, class F>
Segment<T> rule(const F& f, double a, double b) {
  const double mid = (a + b) / 2, half = (b - a) / 2;
  double e = 0, l1 = 0;
  T v = gauss_kronrod<double, 31>::integrate([&](double x) { return f(mid + half * x); }, -1.0, 1.0, 0, 0.0, &e, &l1);
  return {a, b, v * half, e * half};
}

// Global adaptive bisection: always split the segment with the largest error.
template <class T, class F>
T adaptive(const F& f, const std::vector<double>& pts, double rel_tol, double* err) {
  std::priority_queue<Segment<T>> q;
  T total = 0;
  double e_total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    auto s = rule<T>(f, pts[i], pts[i + 1]);
    total += s.value;
    e_total += s.err;
    q.push(s);
  }
  int count = static_cast<int>(q.size());
  while (!q.empty() && e_total > rel_tol * std::abs(total) && e_total > 1e-300 && count < kMaxSegments) {
    auto s = q.top();
    q.pop();
    double mid = (s.a + s.b) / 2;
    if (!(mid > s.a && mid < s.b)) break;
    auto l = rule<T>(f, s.a, mid), r = rule<T>(f, mid, s.b);
    total += l.value + r.value - s.value;
    e_total += l.err + r.err - s.err;
    q.push(l);
    q.push(r);
    ++count;
  }
  if (err) *err = e_total;
  return total;
}

}  // namespace

cplx integrate_c(const std::function<cplx(double)>& f, const std::vector<double>& pts, double rel_tol,
                 double* err) {
  return adaptive<cplx>(f, pts, rel_tol, err);
}

double integrate_r(const std::function<double(double)>& f, const std::vector<double>& pts, double rel_tol,
                   double* err) {
  return adaptive<double>(f, pts, rel_tol, err);
}

void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p0 = 1, p1 = t;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (t * p1 - p0) / (t * t - 1);
    x[i] = -t;
    x[m - 1 - i] = t;
    w[i] = w[m - 1 - i] = 2 / ((1 - t * t) * dp * dp);
  }
}

}  // namespace skewhowe
