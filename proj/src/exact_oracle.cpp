#include "skewhowe/exact_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace skewhowe {

namespace {

Rational det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

Rational schur_from_h(const Partition& p, const std::vector<Rational>& h) {
  const int l = p.length();
  if (l == 0) return 1;
  std::vector<std::vector<Rational>> a(l, std::vector<Rational>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      int d = p[i] - i + j;
      a[i][j] = d < 0 ? Rational(0) : h[d];
    }
  return det(std::move(a));
}

Rational product_weight(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational z = 1;
  for (const auto& a : x)
    for (const auto& b : y) z *= 1 + a * b;
  return z;
}

void fill_tableaux(const Partition& p, const std::vector<Rational>& x, std::vector<std::vector<int>>& t,
                   int row, int col, const Rational& w, Rational& sum) {
  if (row == p.length()) {
    sum += w;
    return;
  }
  if (col == p[row]) {
    fill_tableaux(p, x, t, row + 1, 0, w, sum);
    return;
  }
  int lo = 1;
  if (col > 0) lo = std::max(lo, t[row][col - 1]);
  if (row > 0) lo = std::max(lo, t[row - 1][col] + 1);
  for (int v = lo; v <= static_cast<int>(x.size()); ++v) {
    t[row][col] = v;
    fill_tableaux(p, x, t, row, col + 1, w * x[v - 1], sum);
  }
}

}  // namespace

std::vector<Rational> complete_homogeneous(const std::vector<Rational>& x, int degree) {
  std::vector<Rational> h(degree + 1, Rational(0));
  h[0] = 1;
  // Add one variable at a time: h_m <- sum_j x^j h_{m-j}.
  for (const auto& v : x)
    for (int m = 1; m <= degree; ++m) h[m] += v * h[m - 1];
  return h;
}

Rational schur(const Partition& p, const std::vector<Rational>& x) {
  if (p.length() > static_cast<int>(x.size())) return 0;
  return schur_from_h(p, complete_homogeneous(x, p[0] + p.length()));
}

Rational schur_enumerate(const Partition& p, const std::vector<Rational>& x) {
  std::vector<std::vector<int>> t;
  for (int r = 0; r < p.length(); ++r) t.emplace_back(p[r], 0);
  Rational sum = 0;
  fill_tableaux(p, x, t, 0, 0, Rational(1), sum);
  return sum;
}

Rational dual_cauchy_residual(int n, int k, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != k)
    throw Error(Errc::InvalidArgument, "parameter vector length does not match the box");
  auto hx = complete_homogeneous(x, k + n), hy = complete_homogeneous(y, n + k);
  Rational sum = 0;
  for_each_in_box(n, k, [&](const Partition& p) { sum += schur_from_h(p, hx) * schur_from_h(conjugate(p), hy); });
  return sum - product_weight(x, y);
}

Rational MeasureTable::total() const {
  Rational s = 0;
  for (const auto& [p, v] : entries) s += v;
  return s;
}

MeasureTable measure_table(int n, int k, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != k)
    throw Error(Errc::InvalidArgument, "parameter vector length does not match the box");
  if (count_in_box(n, k) > kMaxTablePartitions)
    throw Error(Errc::TooLarge, "box has more than 10^6 partitions");
  for (const auto& v : x)
    if (v <= 0) throw Error(Errc::InvalidArgument, "parameters must be positive");
  for (const auto& v : y)
    if (v <= 0) throw Error(Errc::InvalidArgument, "parameters must be positive");
  MeasureTable t;
  t.n = n;
  t.k = k;
  auto hx = complete_homogeneous(x, k + n), hy = complete_homogeneous(y, n + k);
  Rational z = product_weight(x, y);
  for_each_in_box(n, k, [&](const Partition& p) {
    Rational w = schur_from_h(p, hx) * schur_from_h(conjugate(p), hy) / z;
    w.canonicalize();
    t.entries.emplace(p, w);
  });
  return t;
}

std::vector<Rational> first_row_law(const MeasureTable& t) {
  std::vector<Rational> law(t.k + 1, Rational(0));
  for (const auto& [p, v] : t.entries) law[p[0]] += v;
  return law;
}

Rational onepoint_bruteforce(const MeasureTable& t, int doubled_m) {
  Rational s = 0;
  for (const auto& [p, v] : t.entries) {
    auto md = maya(p, t.n, t.k);
    if (std::find(md.doubled.begin(), md.doubled.end(), doubled_m) != md.doubled.end()) s += v;
  }
  return s;
}

double determinantal_check(const MeasureTable& t, const std::function<double(int, int)>& kernel) {
  double worst = 0;
  for (const auto& [p, v] : t.entries) {
    auto md = maya(p, t.n, t.k);
    Eigen::MatrixXd a(t.n, t.n);
    for (int i = 0; i < t.n; ++i)
      for (int j = 0; j < t.n; ++j) a(i, j) = kernel(md.doubled[i], md.doubled[j]);
    double d = t.n == 0 ? 1.0 : a.determinant();
    worst = std::max(worst, std::abs(v.get_d() - d));
  }
  return worst;
}

std::vector<double> to_double(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& r : v) out.push_back(r.get_d());
  return out;
}

}  // namespace skewhowe
