#include "skewhowe/saddle.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

namespace skewhowe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kProbes = 512;

enum class Chart { Z, U };

double chart_value(const SpecPair& s, Chart ch, double x) {
  return ch == Chart::Z ? transform_J(s, x).real() : transform_H(s, x).real();
}

double chart_slope(const SpecPair& s, Chart ch, double x) {
  return ch == Chart::Z ? transform_Jprime(s, x).real() : transform_Hprime(s, x).real();
}

double safe_value(const SpecPair& s, Chart ch, double x) {
  try {
    return chart_value(s, ch, x);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double bisect_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::abs(a) + std::abs(b)); ++it) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

struct RawRoot {
  double x;
  bool tangential;
};

void scan_gap(const SpecPair& s, Chart ch, double a, double b, std::vector<RawRoot>& out) {
  if (!(b > a)) return;
  std::vector<double> x(kProbes), v(kProbes);
  for (int i = 0; i < kProbes; ++i) {
    double l = -16.0 + 32.0 * i / (kProbes - 1);
    x[i] = a + (b - a) / (1 + std::exp(-l));
    v[i] = safe_value(s, ch, x[i]);
  }
  std::vector<double> mags;
  for (double val : v)
    if (std::isfinite(val)) mags.push_back(std::abs(val));
  if (mags.empty()) return;
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double tol = 1e-9 * (1 + mags[mags.size() / 2]);
  auto f = [&](double z) { return chart_value(s, ch, z); };
  for (int i = 0; i + 1 < kProbes; ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    if (v[i] == 0) {
      out.push_back({x[i], false});
    } else if ((v[i] < 0) != (v[i + 1] < 0) && v[i + 1] != 0) {
      out.push_back({bisect_root(f, x[i], x[i + 1]), false});
    }
  }
  for (int i = 1; i + 1 < kProbes; ++i) {
    if (!std::isfinite(v[i - 1]) || !std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    if ((v[i - 1] < 0) != (v[i] < 0) || (v[i] < 0) != (v[i + 1] < 0)) continue;
    if (!(std::abs(v[i]) < std::abs(v[i - 1]) && std::abs(v[i]) < std::abs(v[i + 1]))) continue;
    auto [xm, fm] = boost::math::tools::brent_find_minima([&](double z) { return std::abs(f(z)); }, x[i - 1],
                                                          x[i + 1], 52);
    if (fm > tol) continue;
    // A double root: polish on the sign change of the derivative.
    auto d = [&](double z) { return chart_slope(s, ch, z); };
    double da = d(x[i - 1]), db = d(x[i + 1]);
    if ((da < 0) != (db < 0)) xm = bisect_root(d, x[i - 1], x[i + 1]);
    out.push_back({xm, true});
  }
}

std::vector<RawRoot> dedupe(std::vector<RawRoot> r) {
  std::sort(r.begin(), r.end(), [](const RawRoot& a, const RawRoot& b) { return a.x < b.x; });
  std::vector<RawRoot> out;
  for (const auto& x : r) {
    if (!out.empty() && std::abs(x.x - out.back().x) < 1e-7 * (1 + std::abs(x.x))) {
      // Two nearby simple roots are a numerically split double root.
      if (!x.tangential && !out.back().tangential) out.back().tangential = true;
      if (x.tangential) out.back().x = x.x;
      continue;
    }
    out.push_back(x);
  }
  return out;
}

// Newton for I1(z) = t in the upper half plane.
bool newton_upper(const SpecPair& s, double t, cplx& z) {
  for (int it = 0; it < 80; ++it) {
    cplx f, d;
    try {
      f = transform_I1(s, z) - t;
      d = transform_J(s, z);
    } catch (const Error&) {
      return false;
    }
    if (std::abs(f) <= 1e-15 * (1 + std::abs(t))) return z.imag() > 0;
    if (d == cplx(0)) return false;
    cplx dz = f / d;
    int damp = 0;
    while ((z - dz).imag() <= 0 && damp < 40) {
      dz *= 0.5;
      ++damp;
    }
    if (damp == 40) return false;
    z -= dz;
    if (std::abs(dz) < 1e-13 * (1 + std::abs(z))) return z.imag() > 0;
  }
  return false;
}

std::optional<cplx> global_complex_root(const SpecPair& s, double t) {
  for (int ir = -6; ir <= 6; ++ir)
    for (int ia = 1; ia <= 7; ++ia) {
      cplx z = std::polar(std::pow(10.0, ir / 2.0), M_PI * ia / 8);
      if (newton_upper(s, t, z) && z.imag() > 1e-10 * std::abs(z)) return z;
    }
  return std::nullopt;
}

struct Endpoint {
  double t;
  bool right;
  double z;
  EdgeClass cls;
  double curvature;
};

Frozen frozen_from(double z, EdgeClass cls) {
  if (cls == EdgeClass::Corner) return Frozen::None;
  return z < 0 ? Frozen::Full : Frozen::Empty;
}

double frozen_rho(Frozen f, double fallback) {
  if (f == Frozen::Full) return 1;
  if (f == Frozen::Empty) return 0;
  return fallback;
}

// Seed just inside an interval end at distance delta.
cplx end_seed(const SpecPair& s, double z_end, double curvature, EdgeClass cls, double delta, bool left_end) {
  double signed_dt = left_end ? delta : -delta;
  if (std::isinf(z_end)) {
    // u chart: I1 ~ t_end - H'(0) u^2 / 2 with u = 1/z; Im z > 0 needs Im u < 0.
    double k = curvature != 0 ? curvature : -transform_Hprime(s, 0.0).real();
    cplx u(0, -std::sqrt(2 * delta / std::abs(k)));
    return 1.0 / u;
  }
  if (cls == EdgeClass::PearceyShared) {
    double h = 1e-4 * (1 + std::abs(z_end));
    double j2 = (transform_Jprime(s, z_end + h).real() - transform_Jprime(s, z_end - h).real()) / (2 * h);
    cplx w = 6 * signed_dt / j2;
    double r = std::cbrt(std::abs(w));
    cplx best;
    for (int k = 0; k < 3; ++k) {
      cplx c = std::polar(r, (std::arg(w) + 2 * M_PI * k) / 3);
      if (c.imag() > best.imag()) best = c;
    }
    return z_end + best;
  }
  double k = curvature;
  if (k == 0) k = transform_Jprime(s, z_end).real();
  return cplx(z_end, std::sqrt(2 * delta / std::abs(k)));
}

double end_curvature(const SpecPair& s, const SupportInterval& iv, bool left_end) {
  double z = left_end ? iv.z_minus : iv.z_plus;
  if (std::isinf(z)) return -transform_Hprime(s, 0.0).real();
  return transform_Jprime(s, z).real();
}

// Continuation along one interval. Targets must lie strictly inside (t_minus, t_plus).
std::vector<cplx> march(const SpecPair& s, const SupportInterval& iv, const std::vector<double>& targets) {
  std::vector<cplx> out(targets.size());
  if (targets.empty()) return out;
  const double len = iv.t_plus - iv.t_minus;
  bool from_left = iv.left_class != EdgeClass::PearceyShared || iv.right_class == EdgeClass::PearceyShared;
  std::vector<std::size_t> order(targets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return from_left ? targets[a] < targets[b] : targets[a] > targets[b];
  });
  const double t_end = from_left ? iv.t_minus : iv.t_plus;
  const double dir = from_left ? 1.0 : -1.0;
  double first_gap = std::abs(targets[order[0]] - t_end);
  double delta = std::min(1e-6 * len, 0.5 * first_gap);
  double z_end = from_left ? iv.z_minus : iv.z_plus;
  EdgeClass cls = from_left ? iv.left_class : iv.right_class;
  double curvature = end_curvature(s, iv, from_left);

  double t_cur = t_end + dir * delta;
  cplx z = end_seed(s, z_end, curvature, cls, delta, from_left);
  if (!newton_upper(s, t_cur, z)) {
    auto g = global_complex_root(s, t_cur);
    if (!g) throw Error(Errc::RootFindFailure, "could not start density continuation");
    z = *g;
  }
  double h = delta;
  for (std::size_t idx : order) {
    const double target = targets[idx];
    while (std::abs(target - t_cur) > 0) {
      double step = std::min(h, std::abs(target - t_cur));
      double t_new = t_cur + dir * step;
      if (std::abs(target - t_new) < 1e-15 * len) t_new = target;
      cplx zp = z;
      try {
        zp = z + (t_new - t_cur) / transform_J(s, z);
      } catch (const Error&) {
      }
      if (zp.imag() <= 0) zp = cplx(zp.real(), 0.5 * z.imag());
      if (newton_upper(s, t_new, zp) && std::abs(zp - z) < 0.5 * std::abs(z) + 0.5) {
        z = zp;
        t_cur = t_new;
        h = std::min(step * 2, len / 16);
      } else {
        h = step / 2;
        if (h < 1e-15 * len) throw Error(Errc::RootFindFailure, "density continuation stalled");
      }
    }
    out[idx] = z;
  }
  return out;
}

double rho_from_z(cplx z) { return std::arg(z) / M_PI; }

double frozen_value(const std::vector<SupportInterval>& sup, double t, double c) {
  if (t < -1) return 1;
  if (t > c) return 0;
  if (sup.empty()) return 0;
  if (t <= sup.front().t_minus) return frozen_rho(sup.front().left_frozen, sup.front().z_minus < 0 ? 1 : 0);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (t >= sup[i].t_plus && (i + 1 == sup.size() || t <= sup[i + 1].t_minus))
      return frozen_rho(sup[i].right_frozen, sup[i].z_plus < 0 ? 1 : 0);
  }
  return 0;
}

}  // namespace

const char* frozen_name(Frozen f) {
  switch (f) {
    case Frozen::Empty:
      return "empty";
    case Frozen::Full:
      return "full";
    case Frozen::None:
      return "none";
  }
  return "none";
}

const char* edge_class_name(EdgeClass e) {
  switch (e) {
    case EdgeClass::Airy:
      return "airy";
    case EdgeClass::Corner:
      return "corner";
    case EdgeClass::PearceyShared:
      return "pearcey_shared";
    case EdgeClass::Degenerate:
      return "degenerate";
  }
  return "degenerate";
}

std::vector<CriticalPoint> critical_points(const SpecPair& s) {
  s.validate();
  if (!s.has_transforms()) throw Error(Errc::InvalidFamily, "the support solver needs continuous families");
  auto cuts = branch_cuts(s).all();
  std::vector<RawRoot> zr, ur;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i].second, b = cuts[i + 1].first;
    if (a < 0 && b > 0) {
      scan_gap(s, Chart::Z, a, 0, zr);
      scan_gap(s, Chart::Z, 0, b, zr);
    } else {
      scan_gap(s, Chart::Z, a, b, zr);
    }
  }
  double ua = 1 / cuts.front().first;
  double ub = std::isinf(cuts.back().second) ? 0.0 : 1 / cuts.back().second;
  scan_gap(s, Chart::U, ua, ub, ur);

  std::vector<CriticalPoint> out;
  for (const auto& r : dedupe(zr)) {
    if (std::abs(r.x) < 1e-9) continue;
    CriticalPoint cp;
    cp.z = r.x;
    cp.t = transform_I1(s, r.x).real();
    cp.curvature = transform_Jprime(s, r.x).real();
    cp.tangential = r.tangential;
    out.push_back(cp);
  }
  for (const auto& r : dedupe(ur)) {
    CriticalPoint cp;
    cp.at_infinity = std::abs(r.x) < 1e-10;
    cp.z = cp.at_infinity ? kInf : 1 / r.x;
    cp.t = cp.at_infinity ? -1.0 : transform_I1_u(s, r.x).real();
    cp.curvature = -transform_Hprime(s, cp.at_infinity ? 0.0 : r.x).real();
    cp.tangential = r.tangential;
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.t < b.t; });
  return out;
}

std::vector<SupportInterval> solve_support(const SpecPair& s) {
  auto cps = critical_points(s);
  std::vector<Endpoint> ends;
  for (const auto& cp : cps) {
    double t = std::clamp(cp.t, -1.0, s.c);
    if (cp.tangential) {
      ends.push_back({t, true, cp.z, EdgeClass::PearceyShared, cp.curvature});
      ends.push_back({t, false, cp.z, EdgeClass::PearceyShared, cp.curvature});
      continue;
    }
    EdgeClass cls = cp.at_infinity ? EdgeClass::Corner : EdgeClass::Airy;
    if (!cp.at_infinity && std::abs(transform_I3(s, cp.z).real()) < 1e-12) cls = EdgeClass::Degenerate;
    ends.push_back({t, cp.curvature > 0, cp.z, cls, cp.curvature});
  }
  std::stable_sort(ends.begin(), ends.end(), [](const Endpoint& a, const Endpoint& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.right && !b.right;
  });
  if (ends.empty()) {
    if (!global_complex_root(s, 0.5 * (s.c - 1))) throw Error(Errc::NoSupport, "no complex saddle points found");
    ends.push_back({-1, false, kInf, EdgeClass::Corner, 0});
    ends.push_back({s.c, true, 0, EdgeClass::Corner, 0});
  } else {
    if (ends.front().right) ends.insert(ends.begin(), Endpoint{-1, false, kInf, EdgeClass::Corner, 0});
    if (!ends.back().right) ends.push_back({s.c, true, 0, EdgeClass::Corner, 0});
  }
  if (ends.size() % 2) throw Error(Errc::AmbiguousRoots, "unpaired support endpoint");
  std::vector<SupportInterval> out;
  for (std::size_t i = 0; i < ends.size(); i += 2) {
    const Endpoint &l = ends[i], &r = ends[i + 1];
    if (l.right || !r.right) throw Error(Errc::AmbiguousRoots, "support endpoints do not alternate");
    SupportInterval iv;
    iv.t_minus = l.t;
    iv.t_plus = r.t;
    iv.z_minus = l.z;
    iv.z_plus = r.z;
    iv.left_class = l.cls;
    iv.right_class = r.cls;
    iv.left_frozen = frozen_from(l.z, l.cls);
    iv.right_frozen = frozen_from(r.z, r.cls);
    if (iv.t_plus > iv.t_minus) out.push_back(iv);
  }
  if (out.empty()) throw Error(Errc::NoSupport, "support intervals are empty");
  return out;
}

DensityPoint density(const SpecPair& s, const std::vector<SupportInterval>& support, double t) {
  return density_curve(s, support, {t})[0];
}

DensityPoint density(const SpecPair& s, double t) { return density(s, solve_support(s), t); }

std::vector<DensityPoint> density_curve(const SpecPair& s, const std::vector<SupportInterval>& support,
                                        const std::vector<double>& t_grid) {
  std::vector<DensityPoint> out(t_grid.size());
  std::vector<std::vector<std::size_t>> members(support.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double t = t_grid[i];
    bool inside = false;
    for (std::size_t j = 0; j < support.size(); ++j)
      if (t > support[j].t_minus && t < support[j].t_plus) {
        members[j].push_back(i);
        inside = true;
        break;
      }
    if (!inside) {
      out[i].rho = frozen_value(support, t, s.c);
      out[i].frozen = true;
    }
  }
  for (std::size_t j = 0; j < support.size(); ++j) {
    std::vector<double> ts;
    for (auto i : members[j]) ts.push_back(t_grid[i]);
    auto zs = march(s, support[j], ts);
    for (std::size_t m = 0; m < zs.size(); ++m) {
      auto& dp = out[members[j][m]];
      dp.z1 = zs[m];
      dp.rho = rho_from_z(zs[m]);
      dp.frozen = false;
    }
  }
  return out;
}

LimitShape::LimitShape(const SpecPair& s, int nodes) : c_(s.c), support_(solve_support(s)) { build(s, nodes); }

LimitShape::LimitShape(const SpecPair& s, std::vector<SupportInterval> support, int nodes)
    : c_(s.c), support_(std::move(support)) {
  build(s, nodes);
}

namespace {

double clenshaw(const std::vector<double>& c, double x) {
  double b1 = 0, b2 = 0;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + 0.5 * c[0];
}

std::vector<double> cheb_coeffs(const std::vector<double>& vals) {
  const std::size_t n = vals.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += vals[j] * std::cos(M_PI * k * (j + 0.5) / n);
    c[k] = 2 * sum / n;
  }
  return c;
}

std::vector<double> cheb_integral(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<double> C(n + 1, 0.0);
  auto at = [&](std::size_t k) { return k < n ? c[k] : 0.0; };
  for (std::size_t k = 1; k <= n; ++k) C[k] = (at(k - 1) - at(k + 1)) / (2.0 * k);
  // Zero at x = -1 (Clenshaw halves C[0]).
  double sum = 0;
  for (std::size_t k = 1; k <= n; ++k) sum += (k % 2 ? -1.0 : 1.0) * C[k];
  C[0] = -2 * sum;
  return C;
}

// t in [lo, hi] <-> theta in [0, pi] <-> x in [-1, 1]: t = lo + (hi - lo)(1 - cos theta)/2, theta = pi (x + 1)/2.
double x_of_t(double lo, double hi, double t) {
  double r = std::clamp(1 - 2 * (t - lo) / (hi - lo), -1.0, 1.0);
  return 2 * std::acos(r) / M_PI - 1;
}

}  // namespace

void LimitShape::build(const SpecPair& s, int nodes) {
  for (const auto& iv : support_) {
    Piece p{iv.t_minus, iv.t_plus, {}, {}};
    const double L = iv.t_plus - iv.t_minus;
    std::vector<double> ts(nodes), xs(nodes);
    for (int j = 0; j < nodes; ++j) {
      xs[j] = std::cos(M_PI * (j + 0.5) / nodes);
      double th = M_PI * (xs[j] + 1) / 2;
      ts[j] = iv.t_minus + L * (1 - std::cos(th)) / 2;
    }
    auto zs = march(s, iv, ts);
    std::vector<double> rho(nodes), h(nodes);
    for (int j = 0; j < nodes; ++j) {
      double th = M_PI * (xs[j] + 1) / 2;
      rho[j] = rho_from_z(zs[j]);
      h[j] = rho[j] * L * std::sin(th) / 2 * M_PI / 2;
    }
    p.coef = cheb_coeffs(rho);
    p.integral = cheb_integral(cheb_coeffs(h));
    pieces_.push_back(std::move(p));
  }
}

double LimitShape::frozen_value_at(double t) const { return frozen_value(support_, t, c_); }

double LimitShape::rho(double t) const {
  for (const auto& p : pieces_)
    if (t > p.lo && t < p.hi) return std::clamp(clenshaw(p.coef, x_of_t(p.lo, p.hi, t)), 0.0, 1.0);
  return frozen_value_at(t);
}

double LimitShape::mass_below(double u) const {
  if (u <= -1) return u + 1;
  double mass = 0, cur = -1;
  auto frozen_run = [&](double a, double b) {
    if (b <= a) return;
    mass += frozen_value_at(0.5 * (a + b)) * (b - a);
  };
  const double top = std::min(u, c_);
  for (const auto& p : pieces_) {
    if (top <= p.lo) break;
    frozen_run(cur, p.lo);
    double end = std::min(top, p.hi);
    mass += clenshaw(p.integral, x_of_t(p.lo, p.hi, end));
    cur = p.hi;
    if (top < p.hi) return mass;
  }
  frozen_run(cur, top);
  return mass;
}

double LimitShape::omega(double u) const { return 1 + (u + 1) - 2 * mass_below(u); }

std::vector<double> limit_shape(const SpecPair& s, const std::vector<double>& u_grid) {
  LimitShape ls(s);
  std::vector<double> out;
  for (double u : u_grid) out.push_back(ls.omega(u));
  return out;
}

AiryScale airy_sigma(const SpecPair& s, const SupportInterval& iv, End end) {
  double z = end == End::Right ? iv.z_plus : iv.z_minus;
  EdgeClass cls = end == End::Right ? iv.right_class : iv.left_class;
  if (cls != EdgeClass::Airy || std::isinf(z) || z == 0)
    throw Error(Errc::DegenerateEdge, std::string("edge is not of Airy type: ") + edge_class_name(cls));
  AiryScale a;
  a.z_crit = z;
  a.d3s = transform_I3(s, z).real();
  if (std::abs(a.d3s) < 1e-12) throw Error(Errc::DegenerateEdge, "third derivative vanishes");
  a.sigma = std::cbrt(2 / std::abs(a.d3s));
  return a;
}

PearceyScale pearcey_sigma(const SpecPair& s, double t_d, double tol) {
  for (const auto& iv : solve_support(s)) {
    if (iv.right_class != EdgeClass::PearceyShared || std::abs(iv.t_plus - t_d) > tol) continue;
    PearceyScale p;
    p.t_d = iv.t_plus;
    p.z_crit = iv.z_plus;
    p.d3s = transform_I3(s, p.z_crit).real();
    p.d4s = transform_I4(s, p.z_crit).real();
    if (std::abs(p.d4s) < 1e-12) throw Error(Errc::NotPearcey, "fourth derivative vanishes");
    p.sigma = std::pow(6 / std::abs(p.d4s), 0.25);
    p.negative_convention = p.z_crit < 0;
    return p;
  }
  throw Error(Errc::NotPearcey, "no shared support endpoint near the requested point");
}

namespace {

bool reciprocal_integrable(const SpecFamily& f) {
  if (f.min_value() > 0) return true;
  return f.kind == Family::Monomial && f.exponent < 1;
}

}  // namespace

double corner_residual(const SpecPair& s, End end) {
  s.validate();
  if (!s.has_transforms()) throw Error(Errc::InvalidFamily, "corner residuals need continuous families");
  if (end == End::Right) {
    if (!reciprocal_integrable(s.g)) throw Error(Errc::DivergentIntegral, "1/g is not integrable");
    return integrate_family(s.f, [](double v) { return v; }) - s.c * integrate_family(s.g, [](double v) { return 1 / v; });
  }
  if (!reciprocal_integrable(s.f)) throw Error(Errc::DivergentIntegral, "1/f is not integrable");
  return integrate_family(s.f, [](double v) { return 1 / v; }) - s.c * integrate_family(s.g, [](double v) { return v; });
}

CornerResiduals corner_residuals(const SpecPair& s) {
  CornerResiduals r;
  try {
    r.right = corner_residual(s, End::Right);
  } catch (const Error& e) {
    if (e.code() != Errc::DivergentIntegral) throw;
  }
  try {
    r.left = corner_residual(s, End::Left);
  } catch (const Error& e) {
    if (e.code() != Errc::DivergentIntegral) throw;
  }
  return r;
}

namespace {

// Shape words follow the diagram drawn with the rows going up, where an empty frozen region
// beyond the right edge reads as a concave boundary.
std::string shape_word(Frozen f, EdgeClass cls, bool right_end) {
  if (cls == EdgeClass::Corner) return "flat";
  if (cls == EdgeClass::PearceyShared) return "cusp";
  bool empty = f == Frozen::Empty;
  return (empty == right_end) ? "concave" : "convex";
}

}  // namespace

EdgeReport classify_edges(const SpecPair& s) {
  EdgeReport r;
  r.intervals = solve_support(s);
  for (const auto& iv : r.intervals) {
    r.left_shape.push_back(shape_word(iv.left_frozen, iv.left_class, false));
    r.right_shape.push_back(shape_word(iv.right_frozen, iv.right_class, true));
  }
  const auto& last = r.intervals.back();
  auto& d = r.conjecture;
  d.t_plus = last.t_plus;
  d.z_plus = last.z_plus;
  double eps = 1e-7 * (last.t_plus - last.t_minus);
  d.omega_slope = 1 - 2 * density(s, r.intervals, last.t_plus - eps).rho;
  try {
    d.residual = corner_residual(s, End::Right);
  } catch (const Error&) {
  }
  d.t_plus_is_c = std::abs(last.t_plus - s.c) < 1e-8;
  d.z_plus_zero = std::isfinite(last.z_plus) && std::abs(last.z_plus) < 1e-8;
  d.omega_flat = std::abs(d.omega_slope) < 0.5;
  d.residual_zero = d.residual && std::abs(*d.residual) < 1e-8;
  return r;
}

double ConstantQLine::omega(double t, double c) const {
  if (t <= -1) return -t;
  if (t >= c) return t;
  if (regime == "empty") return std::abs(t);
  if (regime == "full") return c + 1 - std::abs(t - (c - 1));
  if (t < t_lo) {
    double at = slope * t_lo + intercept;
    return at + (t - t_lo) * (left == Frozen::Full ? -1.0 : 1.0);
  }
  if (t > t_hi) {
    double at = slope * t_hi + intercept;
    return at + (t - t_hi) * (right == Frozen::Full ? -1.0 : 1.0);
  }
  return slope * t + intercept;
}

ConstantQLine constant_q_line(double q, double b, double c) {
  if (q <= 0 || q == 1 || b == 0 || c <= 0) throw Error(Errc::InvalidArgument, "need q > 0, q != 1, b != 0, c > 0");
  ConstantQLine l;
  if (b > 0) {
    l.regime = q < 1 ? "empty" : "full";
    l.density = q < 1 ? 0 : 1;
    l.t_lo = l.t_hi = q < 1 ? 0 : c - 1;
    l.slope = q < 1 ? 1 : -1;
    return l;
  }
  l.regime = "line";
  l.density = b / (b - 1);
  l.slope = (1 + b) / (1 - b);
  if (q > 1) {
    l.intercept = 2 / (1 - b);
    l.t_lo = -1;
    double empty_end = -1 / b, full_end = c - 1 - b * c;
    l.t_hi = std::min(empty_end, full_end);
    l.right = std::abs(l.t_hi - c) < 1e-12 ? Frozen::None : (empty_end <= full_end ? Frozen::Empty : Frozen::Full);
  } else {
    l.intercept = -2 * b * c / (1 - b);
    l.t_hi = c;
    double empty_start = c - 1 + 1 / b, full_start = b * c;
    l.t_lo = std::max(empty_start, full_start);
    l.left = std::abs(l.t_lo + 1) < 1e-12 ? Frozen::None : (empty_start >= full_start ? Frozen::Empty : Frozen::Full);
  }
  return l;
}

namespace {

nlohmann::json zjson(double z) {
  if (std::isinf(z)) return "inf";
  return z;
}

}  // namespace

nlohmann::json support_to_json(const std::vector<SupportInterval>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& iv : v)
    a.push_back({{"t_minus", iv.t_minus},
                 {"t_plus", iv.t_plus},
                 {"z_minus", zjson(iv.z_minus)},
                 {"z_plus", zjson(iv.z_plus)},
                 {"left_frozen", frozen_name(iv.left_frozen)},
                 {"right_frozen", frozen_name(iv.right_frozen)},
                 {"left_class", edge_class_name(iv.left_class)},
                 {"right_class", edge_class_name(iv.right_class)}});
  return a;
}

nlohmann::json edge_report_to_json(const EdgeReport& r) {
  nlohmann::json j;
  j["intervals"] = support_to_json(r.intervals);
  for (std::size_t i = 0; i < r.intervals.size(); ++i) {
    j["intervals"][i]["left_shape"] = r.left_shape[i];
    j["intervals"][i]["right_shape"] = r.right_shape[i];
  }
  const auto& d = r.conjecture;
  j["critical_diagnostic"] = {{"status", "conjecture"},
                              {"t_plus_is_c", d.t_plus_is_c},
                              {"z_plus_zero", d.z_plus_zero},
                              {"omega_flat", d.omega_flat},
                              {"corner_residual_zero", d.residual_zero},
                              {"omega_slope", d.omega_slope},
                              {"corner_residual", d.residual ? nlohmann::json(*d.residual) : nlohmann::json(nullptr)},
                              {"all_agree", d.all_agree()}};
  return j;
}

namespace closed_form {

double constant_t(double a, double c, int sign) { return (a * (c - 1) + sign * 2 * std::sqrt(a * c)) / (a + 1); }

double constant_z(double a, double c, int sign) {
  return (a * (c + 1) + sign * (a + 1) * std::sqrt(a * c)) / (a * (a * c - 1));
}

double constant_z_crit(double a, double c) { return constant_z(a, c, -1); }

double constant_rho(double a, double c, double t) {
  double lo = constant_t(a, c, -1), hi = constant_t(a, c, 1);
  if (t <= lo) return constant_z(a, c, 1) < 0 ? 1 : 0;
  if (t >= hi) return constant_z(a, c, -1) < 0 ? 1 : 0;
  double arg = (a * (c - 1) + t * (1 - a)) / (2 * std::sqrt(a * (c - t) * (t + 1)));
  return std::acos(std::clamp(arg, -1.0, 1.0)) / M_PI;
}

double constant_sigma(double a, double c) {
  return (a + 1) * std::pow(c, 1.0 / 6) /
         (std::pow(a, 1.0 / 6) * std::pow(std::abs(std::sqrt(c) - std::sqrt(a)), 2.0 / 3) *
          std::pow(1 + std::sqrt(a * c), 2.0 / 3));
}

double principal_t(double a, double g, double c, int sign) {
  double G = std::exp(g), C = std::exp(g * c);
  double root = 2 * std::sqrt(a * (a + 1) * (C - 1) * (G - 1) * (C * G + a));
  double base = 2 * a * C * G + C * G - C * a - G * a + a * a + 2 * a;
  double t1 = std::log(C * (base + root) / (G * (C + a) * (C + a))) / g;
  double t2 = std::log(C * (base - root) / (G * (C + a) * (C + a))) / g;
  return sign > 0 ? std::max(t1, t2) : std::min(t1, t2);
}

double principal_rho(double a, double g, double c, double t) {
  double num = a * std::exp(c * g) - std::exp((c + 1) * g) - a * std::exp(g * (t + 1)) + std::exp(g * (c + t + 1));
  double den = 2 * std::sqrt(a * (std::exp(g * (c + 1)) - std::exp(g * (t + 1))) *
                             (std::exp(g * (c + t + 1)) - std::exp(g * c)));
  // Both factors under the root flip sign with gamma.
  double sg = g > 0 ? 1.0 : -1.0;
  return std::acos(std::clamp(sg * num / den, -1.0, 1.0)) / M_PI;
}

double principal_d3s_alpha1(double g, double c) {
  auto e = [&](double k) { return std::exp(k * g); };
  double D = std::sqrt(2.0) * std::sqrt((e(1) - 1) * (e(c) - 1) * (e(c + 1) + 1));
  double pre = -std::pow(-2 * e(c) + e(c + 1) + 1, 2);
  double p1 = 2 * e(c) - 3 * e(2 * (c + 1)) + 2 * e(c + 2) - 2 * e(c + 1) + 2 * e(2 * c + 1) + 2 * e(1) - 3;
  double p2 = 4 * e(c) + 4 * e(2 * (c + 1)) + 4 * e(3 * (c + 1)) - 4 * e(2 * c + 3) - 4 * e(3 * c + 2) -
              4 * e(c + 1) + 4 * e(1) - 4;
  double q1 = -2 * D + 2 * e(c) + e(c + 2) - e(c + 1) + e(1) - 3;
  double q2 = e(c) * (1 - 2 * D) - 2 * e(2 * c) - e(c + 1) + 3 * e(2 * c + 1) - 1;
  return pre * (D * p1 + p2) / (g / 2 * D * D * q1 * q2);
}

double inverse_t(double a, double g, double c, int sign) {
  double G = std::exp(g), C = std::exp(g * c);
  double base = G + 2 * a - a * G + a * (2 * G + a - 1) * C;
  double root = 2 * std::sqrt(a * (G - 1) * (a + G) * (C - 1) * (1 + a * C));
  double t1 = -1 - 2 / g * std::log(1 + a) + std::log(base + root) / g;
  double t2 = -1 - 2 / g * std::log(1 + a) + std::log(base - root) / g;
  return sign > 0 ? std::max(t1, t2) : std::min(t1, t2);
}

double inverse_rho(double a, double g, double c, double t) {
  double E = std::exp(g * (t + 1));
  double num = a * std::exp(g * c) - (a - 1) * E - std::exp(g);
  double den = 2 * std::sqrt(a * std::exp(g) * (E - 1) * (std::exp(g * c) - std::exp(g * t)));
  double sg = E - 1 > 0 ? 1.0 : -1.0;
  return std::acos(std::clamp(sg * num / den, -1.0, 1.0)) / M_PI;
}

double inverse_rho_alpha1(double g, double c, double t) {
  double tau = t + 1;
  double sg = g < 0 ? 1.0 : -1.0;
  double v = sg * std::exp(g - g * tau / 2) / 2 * (1 - std::exp(g * (c - 1))) /
             std::sqrt((1 - std::exp(g * tau)) * (1 - std::exp(g * (c + 1 - tau))));
  return std::acos(std::clamp(v, -1.0, 1.0)) / M_PI;
}

}  // namespace closed_form

}  // namespace skewhowe
