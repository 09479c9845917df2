#include "skewhowe/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <gmpxx.h>

#include "skewhowe/fluctuations.hpp"
#include "skewhowe/quadrature.hpp"
#include "skewhowe/saddle.hpp"
#include "skewhowe/simd.hpp"

namespace skewhowe {

namespace {

constexpr int kMinNodes = 64;
constexpr int kMaxNodes = 1 << 15;
constexpr int kMaxInnerNodes = 1024;

cplx log_K(const std::vector<double>& x, const std::vector<double>& y, cplx z) {
  cplx lz = std::log(z), acc = 0;
  for (double xi : x) acc -= std::log(1.0 - xi * z);
  for (double yj : y) acc += lz - std::log(z + yj);
  return acc;
}

template <class F>
void parallel_for(int count, int threads, F&& f) {
  threads = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) f(i);
  };
  if (threads == 1) return work();
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

void check_half_integer(int doubled) {
  if (doubled % 2 == 0) throw Error(Errc::InvalidArgument, "kernel positions must be half-integers");
}

int to_doubled(double m) {
  double d = 2 * m;
  if (std::abs(d - std::round(d)) > 1e-9) throw Error(Errc::InvalidArgument, "kernel positions must be half-integers");
  int v = static_cast<int>(std::lround(d));
  check_half_integer(v);
  return v;
}

// One trapezoid evaluation with nz z-nodes. Returns complex values, row-major over (m, m').
std::vector<cplx> trapezoid(const std::vector<double>& x, const std::vector<double>& y, const ContourSpec& cs,
                            const std::vector<int>& doubled, int nz, int threads) {
  const int nw = std::min(nz, kMaxInnerNodes);
  const std::size_t p = doubled.size();
  std::vector<cplx> z(nz), lkz(nz), lz(nz), wz(nz);
  for (int j = 0; j < nz; ++j) {
    cplx e = std::polar(1.0, 2 * M_PI * (j + 0.5) / nz);
    z[j] = cs.z_center + cs.z_radius * e;
    wz[j] = cs.z_radius * e / static_cast<double>(nz);
    lkz[j] = log_K(x, y, z[j]);
    lz[j] = std::log(z[j]);
  }
  std::vector<double> wr(nw), wi(nw);
  std::vector<cplx> lkw(nw), lw(nw), ww(nw);
  for (int l = 0; l < nw; ++l) {
    cplx w = std::polar(cs.w_radius, 2 * M_PI * (l + 0.5) / nw);
    wr[l] = w.real();
    wi[l] = w.imag();
    ww[l] = w / static_cast<double>(nw);
    lkw[l] = log_K(x, y, w);
    lw[l] = std::log(w);
  }
  std::vector<cplx> out(p * p);
  parallel_for(static_cast<int>(p), threads, [&](int b) {
    const double ep = (doubled[b] - 1) / 2.0;  // m' - 1/2
    std::vector<double> gr(nw), gi(nw);
    for (int l = 0; l < nw; ++l) {
      cplx g = ww[l] * std::exp(ep * lw[l] - lkw[l]);
      gr[l] = g.real();
      gi[l] = g.imag();
    }
    std::vector<cplx> inner(nz);
    for (int j = 0; j < nz; ++j) inner[j] = cauchy_sum(z[j], wr.data(), wi.data(), gr.data(), gi.data(), nw);
    for (std::size_t a = 0; a < p; ++a) {
      const double ez = -(doubled[a] + 1) / 2.0;  // -m - 1/2
      cplx acc = 0;
      for (int j = 0; j < nz; ++j) acc += wz[j] * std::exp(lkz[j] + ez * lz[j]) * inner[j];
      out[a * p + b] = acc;
    }
  });
  return out;
}

// Extended-precision path. The w integral is the residue at w = 0, read off the coefficients of
// prod(1 - x_i w) prod(w + y_j); the z integral is a trapezoid in mpf arithmetic.
struct MpC {
  mpf_class re, im;
};

MpC mp_make(double r, double i, unsigned bits) { return {mpf_class(r, bits), mpf_class(i, bits)}; }
MpC mp_mul(const MpC& a, const MpC& b) {
  mpf_class re(a.re * b.re - a.im * b.im, a.re.get_prec()), im(a.re * b.im + a.im * b.re, a.re.get_prec());
  return {re, im};
}
MpC mp_inv(const MpC& a) {
  mpf_class d(a.re * a.re + a.im * a.im, a.re.get_prec());
  mpf_class re(a.re / d, a.re.get_prec()), im(-a.im / d, a.re.get_prec());
  return {re, im};
}
MpC mp_add(const MpC& a, const MpC& b) {
  mpf_class re(a.re + b.re, a.re.get_prec()), im(a.im + b.im, a.re.get_prec());
  return {re, im};
}

// Estimated size of the largest term in the double sum.
double term_scale(const std::vector<double>& x, const std::vector<double>& y, const ContourSpec& cs,
                  const std::vector<int>& doubled) {
  const int probes = 256;
  int lo = *std::min_element(doubled.begin(), doubled.end());
  int hi = *std::max_element(doubled.begin(), doubled.end());
  double mz = -1e300, mw = -1e300;
  for (int j = 0; j < probes; ++j) {
    cplx e = std::polar(1.0, 2 * M_PI * (j + 0.5) / probes);
    cplx z = cs.z_center + cs.z_radius * e, w = cs.w_radius * e;
    double lkz = log_K(x, y, z).real(), lkw = log_K(x, y, w).real();
    double lz = std::log(std::abs(z)), lw = std::log(std::abs(w));
    for (int d : {lo, hi}) {
      mz = std::max(mz, lkz - (d + 1) / 2.0 * lz);
      mw = std::max(mw, (d - 1) / 2.0 * lw - lkw);
    }
  }
  double gap = cs.z_radius - std::abs(cs.z_center) - cs.w_radius;
  return std::exp(mz + mw) * cs.z_radius * cs.w_radius / gap;
}

std::vector<double> trapezoid_mp(const std::vector<double>& x, const std::vector<double>& y, const ContourSpec& cs,
                                 const std::vector<int>& doubled, int nz, unsigned bits) {
  const int k = static_cast<int>(y.size());
  // Coefficients of prod(1 - x_i w) prod(w + y_j).
  std::vector<mpf_class> e(1, mpf_class(1, bits));
  auto times = [&](double c0, double c1) {
    std::vector<mpf_class> out(e.size() + 1, mpf_class(0, bits));
    for (std::size_t i = 0; i < e.size(); ++i) {
      out[i] += e[i] * c0;
      out[i + 1] += e[i] * c1;
    }
    e = std::move(out);
  };
  for (double v : x) times(1, -v);
  for (double v : y) times(v, 1);

  // Nodes z_j = c + r exp(2 pi i j / N); the angle comes from repeated half-angle steps.
  mpf_class co(-1, bits), si(0, bits);
  for (int span = 1; span < nz; span *= 2) {
    co = sqrt((mpf_class(1, bits) + co) / 2);
  }
  si = sqrt(mpf_class(1, bits) - co * co);
  const MpC step{mpf_class(co * co - si * si, bits), mpf_class(2 * co * si, bits)};  // angle 2 pi / N

  const std::size_t p = doubled.size();
  std::vector<mpf_class> acc(p * p, mpf_class(0, bits));
  std::vector<std::size_t> order(p);
  for (std::size_t i = 0; i < p; ++i) order[i] = i;
  // descending d, so the exponent of z climbs step by step
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return doubled[a] > doubled[b]; });
  int qmin = 1 << 30, qmax = 0;
  for (int d : doubled) {
    qmin = std::min(qmin, k - (d + 1) / 2);
    qmax = std::max(qmax, k - (d + 1) / 2);
  }
  MpC unit = mp_make(1, 0, bits);
  const MpC center = mp_make(cs.z_center, 0, bits);
  const mpf_class radius(cs.z_radius, bits);
  for (int j = 0; j < nz; ++j) {
    MpC off{mpf_class(unit.re * radius, bits), mpf_class(unit.im * radius, bits)};
    MpC z = mp_add(center, off);
    MpC zi = mp_inv(z);
    // K(z) = z^k / (prod(1 - x_i z) prod(z + y_j))
    MpC den = mp_make(1, 0, bits);
    for (double v : x) den = mp_mul(den, MpC{mpf_class(1 - z.re * v, bits), mpf_class(-z.im * v, bits)});
    for (double v : y) den = mp_mul(den, MpC{mpf_class(z.re + v, bits), z.im});
    MpC kz = mp_inv(den);
    for (int i = 0; i < k; ++i) kz = mp_mul(kz, z);
    // weight (z - c) / N times K(z)
    MpC base = mp_mul(off, kz);
    // W_q(z) = sum_p e_{q - p} z^{-p-1} obeys W_{q+1} = (W_q + e_{q+1}) / z.
    std::vector<MpC> wq(qmax + 1 - std::min(qmin, 0), mp_make(0, 0, bits));
    {
      MpC cur = mp_make(0, 0, bits);
      for (int q = 0; q <= qmax; ++q) {
        if (q < static_cast<int>(e.size())) cur = mp_add(cur, MpC{e[q], mpf_class(0, bits)});
        cur = mp_mul(cur, zi);
        if (q >= qmin) wq[q - std::min(qmin, 0)] = cur;
      }
    }
    std::vector<MpC> right(p), left(p);
    for (std::size_t c = 0; c < p; ++c) {
      const int q = k - (doubled[c] + 1) / 2;
      right[c] = q < 0 ? mp_make(0, 0, bits) : mp_mul(base, wq[q - std::min(qmin, 0)]);
    }
    // z^{-m-1/2} = z^{-(d+1)/2}, walked in sorted order
    MpC pw = mp_make(1, 0, bits);
    int at = 0;
    for (std::size_t i : order) {
      const int want = -(doubled[i] + 1) / 2;
      for (; at < want; ++at) pw = mp_mul(pw, z);
      for (; at > want; --at) pw = mp_mul(pw, zi);
      left[i] = pw;
    }
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t c = 0; c < p; ++c) acc[a * p + c] += left[a].re * right[c].re - left[a].im * right[c].im;
    unit = mp_mul(unit, step);
  }
  std::vector<double> out(p * p);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mpf_class(acc[i] / nz, bits).get_d();
  return out;
}

}  // namespace

ContourSpec choose_contour(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) throw Error(Errc::ContourInfeasible, "need at least one x and one y");
  for (double v : x)
    if (!(v > 0) || !std::isfinite(v)) throw Error(Errc::ContourInfeasible, "x parameters must be positive");
  for (double v : y)
    if (!(v >= 0) || !std::isfinite(v)) throw Error(Errc::ContourInfeasible, "y parameters must be nonnegative");
  const double pole = 1 / *std::max_element(x.begin(), x.end());
  const double ymax = *std::max_element(y.begin(), y.end());
  ContourSpec cs;
  if (ymax < pole) {
    cs.concentric = true;
    cs.z_center = 0;
    cs.z_radius = ymax > 0 ? std::sqrt(ymax * pole) : pole / 2;
    cs.w_radius = cs.z_radius / 2;
  } else {
    // Balance the inner poles {0, -ymax} against the outer pole.
    cs.concentric = false;
    cs.z_center = -ymax / 2;
    cs.z_radius = std::sqrt(ymax / 2 * (pole + ymax / 2));
    cs.w_radius = (cs.z_radius - ymax / 2) / 2;
  }
  return cs;
}

namespace {

KernelMatrix kernel_matrix_mp(const std::vector<double>& x, const std::vector<double>& y, const ContourSpec& cs,
                              const std::vector<int>& doubled, double tol, double scale_est) {
  const unsigned bits =
      static_cast<unsigned>(96 + std::max(0.0, std::log2(std::max(1.0, scale_est))) + std::log2(1 / tol));
  std::vector<double> prev = trapezoid_mp(x, y, cs, doubled, kMinNodes, bits);
  for (int n = 2 * kMinNodes; n <= kMaxNodes; n *= 2) {
    std::vector<double> cur = trapezoid_mp(x, y, cs, doubled, n, bits);
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
      scale = std::max(scale, std::abs(cur[i]));
    }
    if (diff < tol * scale) return KernelMatrix{doubled, std::move(cur), diff, n};
    prev = std::move(cur);
  }
  throw Error(Errc::NoConvergence, "contour quadrature did not converge");
}

}  // namespace

double KernelMatrix::at_doubled(int dm, int dmp) const {
  auto ia = std::find(doubled.begin(), doubled.end(), dm);
  auto ib = std::find(doubled.begin(), doubled.end(), dmp);
  if (ia == doubled.end() || ib == doubled.end()) throw Error(Errc::InvalidArgument, "position outside the window");
  return (*this)(ia - doubled.begin(), ib - doubled.begin());
}

KernelMatrix kernel_matrix(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<int>& doubled, double tol, int threads) {
  for (int d : doubled) check_half_integer(d);
  ContourSpec cs = choose_contour(x, y);
  const double scale_est = term_scale(x, y, cs, doubled);
  if (scale_est * 1e-14 > tol) return kernel_matrix_mp(x, y, cs, doubled, tol, scale_est);
  std::vector<cplx> prev = trapezoid(x, y, cs, doubled, kMinNodes, threads);
  for (int n = 2 * kMinNodes; n <= kMaxNodes; n *= 2) {
    std::vector<cplx> cur = trapezoid(x, y, cs, doubled, n, threads);
    double diff = 0, scale = 1, imag = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      diff = std::max(diff, std::abs(cur[i] - prev[i]));
      scale = std::max(scale, std::abs(cur[i].real()));
      imag = std::max(imag, std::abs(cur[i].imag()));
    }
    if (diff < tol * scale) {
      KernelMatrix km;
      km.doubled = doubled;
      km.values.resize(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) km.values[i] = cur[i].real();
      km.error = diff + imag;
      km.nodes = n;
      return km;
    }
    prev = std::move(cur);
  }
  return kernel_matrix_mp(x, y, cs, doubled, tol, scale_est);
}

KernelMatrix kernel_matrix_fixed(const std::vector<double>& x, const std::vector<double>& y,
                                 const std::vector<int>& doubled, int nodes) {
  for (int d : doubled) check_half_integer(d);
  auto cur = trapezoid(x, y, choose_contour(x, y), doubled, nodes, 1);
  KernelMatrix km;
  km.doubled = doubled;
  km.nodes = nodes;
  for (const auto& v : cur) {
    km.values.push_back(v.real());
    km.error = std::max(km.error, std::abs(v.imag()));
  }
  return km;
}

KernelValue finite_kernel(const std::vector<double>& x, const std::vector<double>& y, double m, double mp,
                          double tol) {
  int a = to_doubled(m), b = to_doubled(mp);
  std::vector<int> d{a};
  if (b != a) d.push_back(b);
  KernelMatrix km = kernel_matrix(x, y, d, tol, 1);
  return {km.at_doubled(a, b), km.error, km.nodes};
}

std::vector<int> box_window(int n, int k) {
  std::vector<int> v;
  for (int d = -2 * n + 1; d <= 2 * k - 1; d += 2) v.push_back(d);
  return v;
}

double sine_kernel(double rho, int d) {
  if (d == 0) return rho;
  return std::sin(M_PI * rho * d) / (M_PI * d);
}

std::vector<BulkRow> bulk_convergence_report(const SpecPair& s, double t, int l, int lp,
                                             const std::vector<int>& n_list) {
  const double rho = density(s, t).rho;
  std::vector<BulkRow> rows;
  for (int n : n_list) {
    BulkRow r;
    r.n = n;
    r.k = std::max(1, static_cast<int>(std::lround(s.c * n)));
    const double base = std::floor(n * t);
    r.m = base + l + 0.5;
    r.mp = base + lp + 0.5;
    KernelValue kv = finite_kernel(x_values(s, n), y_values(s, r.k), r.m, r.mp);
    r.kernel = kv.value;
    r.error = kv.error;
    r.sine = sine_kernel(rho, l - lp);
    r.deviation = std::abs(r.kernel - r.sine);
    rows.push_back(r);
  }
  return rows;
}

double airy_kernel(double xi, double eta) { return airy_kernel_value(xi, eta); }

namespace {

struct Node {
  cplx at, weight;
};

void add_panels(std::vector<Node>& out, double lo, double hi, double panel, const std::function<Node(double, double)>& f) {
  static std::vector<double> gx, gw;
  static const bool init = (gauss_legendre(16, gx, gw), true);
  (void)init;
  int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
  double h = (hi - lo) / count;
  for (int p = 0; p < count; ++p)
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double r = lo + h * (p + (gx[i] + 1) / 2);
      out.push_back(f(r, gw[i] * h / 2));
    }
}

double ray_length(cplx vertex, cplx dir, double xi) {
  // Walk out until the integrand stays below e^-45.
  double r = 1;
  for (; r < 60; r += 0.05) {
    cplx z = vertex + r * dir;
    if ((z * z * z * z / 4.0 - z * xi).real() < -45 && r * r * r * r / 4 > 2 * std::abs(xi) * r + 45) break;
  }
  return r;
}

double pearcey_once(double xi, double eta, const PearceyContour& pc, double panel) {
  const double T = std::pow(4 * (45 + 1.0), 0.25) + 0.5;
  std::vector<Node> nu;
  add_panels(nu, -T, T, panel, [&](double t, double w) {
    cplx v(0, t);
    return Node{v, cplx(0, w) * std::exp(-v * v * v * v / 4.0 + v * eta)};
  });
  std::vector<double> wr, wi, gr, gi;
  for (const auto& n : nu) {
    wr.push_back(n.at.real());
    wi.push_back(n.at.imag());
    gr.push_back(n.weight.real());
    gi.push_back(n.weight.imag());
  }
  struct Ray {
    double vertex, angle, sign;
  };
  // Right wedge runs up through its vertex, the left one down, which makes K(xi, xi) positive.
  const Ray rays[4] = {{pc.vertex, pc.angle, 1}, {pc.vertex, -pc.angle, -1}, {-pc.vertex, -(M_PI - pc.angle), 1},
                       {-pc.vertex, M_PI - pc.angle, -1}};
  cplx total = 0;
  for (const auto& ray : rays) {
    cplx dir = std::polar(1.0, ray.angle);
    double R = ray_length(ray.vertex, dir, xi);
    std::vector<Node> zeta;
    add_panels(zeta, 0, R, panel, [&](double r, double w) {
      cplx z = ray.vertex + r * dir;
      return Node{z, ray.sign * w * dir * std::exp(z * z * z * z / 4.0 - z * xi)};
    });
    for (const auto& z : zeta) total += z.weight * cauchy_sum(z.at, wr.data(), wi.data(), gr.data(), gi.data(), nu.size());
  }
  // (2 pi i)^2 = -4 pi^2.
  return (total / (-4 * M_PI * M_PI)).real();
}

}  // namespace

double pearcey_kernel(double xi, double eta, double tol, const PearceyContour& contour) {
  if (!(contour.vertex > 0) || !(contour.angle > M_PI / 8) || !(contour.angle < 3 * M_PI / 8))
    throw Error(Errc::InvalidArgument, "Pearcey rays must stay in the decay sectors");
  double h = contour.panel;
  double prev = pearcey_once(xi, eta, contour, h);
  for (int it = 0; it < 5; ++it) {
    h /= 2;
    double cur = pearcey_once(xi, eta, contour, h);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw Error(Errc::NoConvergence, "Pearcey quadrature did not converge");
}

}  // namespace skewhowe
