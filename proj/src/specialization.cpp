#include "skewhowe/specialization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace skewhowe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::InvalidFamily, msg);
}

}  // namespace

SpecFamily SpecFamily::constant(double a) {
  SpecFamily f;
  f.kind = Family::Constant;
  f.alpha = a;
  return f;
}

SpecFamily SpecFamily::piecewise(std::vector<double> values, std::vector<double> shares) {
  SpecFamily f;
  f.kind = Family::PiecewiseConstant;
  require(!values.empty() && values.size() == shares.size(), "piecewise: values and shares differ in length");
  double total = std::accumulate(shares.begin(), shares.end(), 0.0);
  require(total > 0, "piecewise: shares must be positive");
  for (double& s : shares) s /= total;
  f.values = std::move(values);
  f.shares = std::move(shares);
  return f;
}

SpecFamily SpecFamily::monomial(double a, double m) {
  SpecFamily f;
  f.kind = Family::Monomial;
  f.alpha = a;
  f.exponent = m;
  return f;
}

SpecFamily SpecFamily::exponential(double a, double rate) {
  SpecFamily f;
  f.kind = Family::Exponential;
  f.alpha = a;
  f.rate = rate;
  return f;
}

SpecFamily SpecFamily::grid(std::vector<double> values) {
  SpecFamily f;
  f.kind = Family::Grid;
  f.values = std::move(values);
  return f;
}

SpecFamily SpecFamily::constant_q(double q, double b) {
  SpecFamily f;
  f.kind = Family::ConstantQ;
  f.q = q;
  f.b = b;
  return f;
}

SpecFamily SpecFamily::sinusoidal(double offset, double amplitude, double frequency) {
  SpecFamily f;
  f.kind = Family::Sinusoidal;
  f.offset = offset;
  f.amplitude = amplitude;
  f.frequency = frequency;
  return f;
}

void SpecFamily::validate() const {
  switch (kind) {
    case Family::Constant:
      require(alpha > 0 && std::isfinite(alpha), "constant: alpha must be positive");
      break;
    case Family::PiecewiseConstant:
      require(!values.empty() && values.size() == shares.size(), "piecewise: bad sizes");
      for (double v : values) require(v > 0 && std::isfinite(v), "piecewise: values must be positive");
      for (double s : shares) require(s > 0, "piecewise: shares must be positive");
      break;
    case Family::Monomial:
      require(alpha > 0 && exponent >= 0, "monomial: need alpha > 0, exponent >= 0");
      break;
    case Family::Exponential:
      require(alpha > 0 && std::isfinite(rate), "exponential: need alpha > 0");
      break;
    case Family::Grid:
      require(!values.empty(), "grid: empty");
      for (double v : values) require(v > 0 && std::isfinite(v), "grid: values must be positive");
      break;
    case Family::ConstantQ:
      require(q > 0 && q != 1.0 && b != 0.0, "constant_q: need q > 0, q != 1, b != 0");
      break;
    case Family::Sinusoidal:
      require(offset - std::abs(amplitude) > 0, "sinusoidal: must stay positive");
      break;
  }
}

double SpecFamily::operator()(double s) const {
  switch (kind) {
    case Family::Constant:
      return alpha;
    case Family::PiecewiseConstant: {
      double acc = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        acc += shares[i];
        if (s < acc || i + 1 == values.size()) return values[i];
      }
      return values.back();
    }
    case Family::Monomial:
      return exponent == 0 ? alpha : alpha * std::pow(s, exponent);
    case Family::Exponential:
      return alpha * std::exp(-rate * s);
    case Family::Grid: {
      auto i = static_cast<std::size_t>(std::clamp(s, 0.0, 1.0) * values.size());
      return values[std::min(i, values.size() - 1)];
    }
    case Family::ConstantQ:
      throw Error(Errc::InvalidFamily, "constant_q has no continuous profile");
    case Family::Sinusoidal:
      return offset + amplitude * std::sin(2 * std::numbers::pi * frequency * s);
  }
  return 0;
}

std::vector<double> SpecFamily::grid_values(int count) const {
  std::vector<double> out(count);
  if (kind == Family::Grid) {
    if (static_cast<int>(values.size()) != count)
      throw Error(Errc::InvalidFamily, "grid family has " + std::to_string(values.size()) + " values, need " +
                                           std::to_string(count));
    return values;
  }
  for (int i = 1; i <= count; ++i) {
    double v = kind == Family::ConstantQ ? std::pow(q, b * (i - 1)) : (*this)(static_cast<double>(i) / count);
    if (!(v > 0) || !std::isfinite(v)) throw Error(Errc::InvalidFamily, "nonpositive parameter at index " + std::to_string(i));
    out[i - 1] = v;
  }
  return out;
}

std::vector<double> SpecFamily::joints() const {
  std::vector<double> out;
  if (kind == Family::PiecewiseConstant) {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < shares.size(); ++i) {
      acc += shares[i];
      out.push_back(acc);
    }
  } else if (kind == Family::Sinusoidal) {
    // Quarter periods, where the profile turns.
    for (int j = 1; j < 4 * frequency; ++j) out.push_back(j / (4.0 * frequency));
  }
  return out;
}

double SpecFamily::min_value() const {
  switch (kind) {
    case Family::Constant: return alpha;
    case Family::PiecewiseConstant:
    case Family::Grid: return *std::min_element(values.begin(), values.end());
    case Family::Monomial: return exponent == 0 ? alpha : 0.0;
    case Family::Exponential: return std::min(alpha, alpha * std::exp(-rate));
    case Family::ConstantQ: throw Error(Errc::InvalidFamily, "constant_q has no range");
    case Family::Sinusoidal: {
      double m = kInf;
      for (int i = 0; i <= 4096; ++i) m = std::min(m, (*this)(i / 4096.0));
      return m;
    }
  }
  return 0;
}

double SpecFamily::max_value() const {
  switch (kind) {
    case Family::Constant: return alpha;
    case Family::PiecewiseConstant:
    case Family::Grid: return *std::max_element(values.begin(), values.end());
    case Family::Monomial: return alpha;
    case Family::Exponential: return std::max(alpha, alpha * std::exp(-rate));
    case Family::ConstantQ: throw Error(Errc::InvalidFamily, "constant_q has no range");
    case Family::Sinusoidal: {
      double m = -kInf;
      for (int i = 0; i <= 4096; ++i) m = std::max(m, (*this)(i / 4096.0));
      return m;
    }
  }
  return 0;
}

std::vector<std::pair<double, double>> SpecFamily::value_ranges() const {
  if (kind == Family::PiecewiseConstant) {
    std::vector<std::pair<double, double>> out;
    for (double v : values) out.emplace_back(v, v);
    return out;
  }
  return {{min_value(), max_value()}};
}

void SpecPair::validate() const {
  if (!(c > 0) || !std::isfinite(c)) throw Error(Errc::InvalidFamily, "c must be positive");
  f.validate();
  g.validate();
}

std::vector<double> x_values(const SpecPair& s, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be positive");
  return s.f.grid_values(n);
}

std::vector<double> y_values(const SpecPair& s, int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
  return s.g.grid_values(k);
}

SpecFamily family_from_json(const nlohmann::json& j) {
  std::string fam = j.at("family").get<std::string>();
  auto num = [&](const char* key, double def) { return j.contains(key) ? j.at(key).get<double>() : def; };
  SpecFamily out;
  if (fam == "constant") {
    out = SpecFamily::constant(num("alpha", 1.0));
  } else if (fam == "piecewise_constant") {
    out = SpecFamily::piecewise(j.at("values").get<std::vector<double>>(), j.at("shares").get<std::vector<double>>());
  } else if (fam == "monomial") {
    out = SpecFamily::monomial(num("alpha", 1.0), num("exponent", 1.0));
  } else if (fam == "exponential") {
    out = SpecFamily::exponential(num("alpha", 1.0), num("rate", 0.0));
  } else if (fam == "grid") {
    out = SpecFamily::grid(j.at("values").get<std::vector<double>>());
  } else if (fam == "constant_q") {
    out = SpecFamily::constant_q(num("q", 1.0), num("b", 1.0));
  } else if (fam == "sinusoidal") {
    out = SpecFamily::sinusoidal(num("offset", 2.0), num("amplitude", 1.0), num("frequency", 1.0));
  } else {
    throw Error(Errc::InvalidFamily, "unknown family '" + fam + "'");
  }
  out.validate();
  return out;
}

nlohmann::json family_to_json(const SpecFamily& f) {
  switch (f.kind) {
    case Family::Constant: return {{"family", "constant"}, {"alpha", f.alpha}};
    case Family::PiecewiseConstant: return {{"family", "piecewise_constant"}, {"values", f.values}, {"shares", f.shares}};
    case Family::Monomial: return {{"family", "monomial"}, {"alpha", f.alpha}, {"exponent", f.exponent}};
    case Family::Exponential: return {{"family", "exponential"}, {"alpha", f.alpha}, {"rate", f.rate}};
    case Family::Grid: return {{"family", "grid"}, {"values", f.values}};
    case Family::ConstantQ: return {{"family", "constant_q"}, {"q", f.q}, {"b", f.b}};
    case Family::Sinusoidal:
      return {{"family", "sinusoidal"}, {"offset", f.offset}, {"amplitude", f.amplitude}, {"frequency", f.frequency}};
  }
  return {};
}

SpecPair spec_from_json(const nlohmann::json& j) {
  SpecPair s;
  s.f = family_from_json(j.at("f"));
  s.g = family_from_json(j.at("g"));
  s.c = j.contains("c") ? j.at("c").get<double>() : 1.0;
  s.validate();
  return s;
}

nlohmann::json spec_to_json(const SpecPair& s) {
  return {{"f", family_to_json(s.f)}, {"g", family_to_json(s.g)}, {"c", s.c}};
}

BranchCuts branch_cuts(const SpecPair& s) {
  BranchCuts bc;
  for (auto [lo, hi] : s.f.value_ranges()) bc.f.emplace_back(1.0 / hi, lo > 0 ? 1.0 / lo : kInf);
  for (auto [lo, hi] : s.g.value_ranges()) bc.g.emplace_back(-hi, -lo);
  return bc;
}

std::vector<std::pair<double, double>> BranchCuts::all() const {
  std::vector<std::pair<double, double>> v(f);
  v.insert(v.end(), g.begin(), g.end());
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  for (auto seg : v) {
    if (!out.empty() && seg.first <= out.back().second)
      out.back().second = std::max(out.back().second, seg.second);
    else
      out.push_back(seg);
  }
  return out;
}

namespace {

double seg_dist(cplx z, double lo, double hi) {
  double x = z.real();
  double dx = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
  return std::hypot(dx, z.imag());
}

// Breakpoints for integrating a function of fam(s): joints plus the point where fam(s) is
// closest to the complex pole location.
std::vector<double> breakpoints(const SpecFamily& fam, cplx pole) {
  std::vector<double> pts{0.0, 1.0};
  for (double j : fam.joints()) pts.push_back(j);
  if (std::isfinite(pole.real()) && fam.kind != Family::Constant) {
    const int m = 256;
    double best = kInf, arg = 0;
    for (int i = 0; i <= m; ++i) {
      double s = static_cast<double>(i) / m;
      double d = std::abs(fam(s) - pole);
      if (d < best) best = d, arg = s;
    }
    if (arg > 0 && arg < 1) pts.push_back(arg);
    // Bracket tightly around a near-singular point.
    double h = std::max(1e-6, std::abs(pole.imag()) / (1.0 + std::abs(pole)));
    if (h < 1.0 / m) {
      for (double d : {-1.0 / m, -10 * h, -h, h, 10 * h, 1.0 / m}) {
        double s = arg + d;
        if (s > 0 && s < 1) pts.push_back(s);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <class FPart, class GPart>
cplx integrate_parts(const SpecPair& s, cplx fpole, cplx gpole, FPart fpart, GPart gpart) {
  if (!s.has_transforms()) throw Error(Errc::InvalidFamily, "transforms are not available for grid families");
  cplx a = integrate_c([&](double t) { return fpart(s.f(t)); }, breakpoints(s.f, fpole));
  cplx b = integrate_c([&](double t) { return gpart(s.g(t)); }, breakpoints(s.g, gpole));
  return a + s.c * b;
}

void check_cut(const SpecPair& s, cplx z) {
  if (on_branch_cut(s, z)) throw Error(Errc::OnBranchCut, "z lies on a branch segment");
}

void check_cut_u(const SpecPair& s, cplx u) {
  if (u == cplx(0)) return;
  if (on_branch_cut(s, 1.0 / u)) throw Error(Errc::OnBranchCut, "1/u lies on a branch segment");
}

}  // namespace

bool on_branch_cut(const SpecPair& s, cplx z, double eps) {
  double scale = eps * std::max(1.0, std::abs(z));
  for (auto [lo, hi] : branch_cuts(s).all())
    if (seg_dist(z, lo, hi) < scale) return true;
  return false;
}

cplx transform(const SpecPair& s, int order, cplx z) {
  check_cut(s, z);
  if (z == cplx(0)) return order == 1 ? cplx(s.c) : cplx(0);
  cplx fpole = 1.0 / z, gpole = -z;
  switch (order) {
    case 1:
      return integrate_parts(
          s, fpole, gpole, [&](double f) { cplx w = f * z; return w / (1.0 - w); },
          [&](double g) { return g / (z + g); });
    case 2:
      return integrate_parts(
          s, fpole, gpole, [&](double f) { cplx w = f * z; return w / ((1.0 - w) * (1.0 - w)); },
          [&](double g) { cplx d = z + g; return -g * z / (d * d); });
    case 3:
      return integrate_parts(
          s, fpole, gpole,
          [&](double f) { cplx w = f * z, d = 1.0 - w; return w * (1.0 + w) / (d * d * d); },
          [&](double g) { cplx d = z + g; return g * z * (z - g) / (d * d * d); });
    case 4:
      return integrate_parts(
          s, fpole, gpole,
          [&](double f) { cplx w = f * z, d = 1.0 - w, d2 = d * d; return w * (1.0 + 4.0 * w + w * w) / (d2 * d2); },
          [&](double g) { cplx d = z + g, d2 = d * d; return -g * z * (z * z - 4.0 * g * z + g * g) / (d2 * d2); });
    default:
      throw Error(Errc::InvalidArgument, "transform order must be 1..4");
  }
}

cplx transform_I1(const SpecPair& s, cplx z) { return transform(s, 1, z); }
cplx transform_I2(const SpecPair& s, cplx z) { return transform(s, 2, z); }
cplx transform_I3(const SpecPair& s, cplx z) { return transform(s, 3, z); }
cplx transform_I4(const SpecPair& s, cplx z) { return transform(s, 4, z); }

cplx transform_J(const SpecPair& s, cplx z) {
  check_cut(s, z);
  return integrate_parts(
      s, 1.0 / z, -z, [&](double f) { cplx d = 1.0 - f * z; return f / (d * d); },
      [&](double g) { cplx d = z + g; return -g / (d * d); });
}

cplx transform_Jprime(const SpecPair& s, cplx z) {
  check_cut(s, z);
  return integrate_parts(
      s, 1.0 / z, -z, [&](double f) { cplx d = 1.0 - f * z; return 2.0 * f * f / (d * d * d); },
      [&](double g) { cplx d = z + g; return 2.0 * g / (d * d * d); });
}

cplx transform_I1_u(const SpecPair& s, cplx u) {
  check_cut_u(s, u);
  cplx gpole = u == cplx(0) ? cplx(kInf) : -1.0 / u;
  return integrate_parts(
      s, u, gpole, [&](double f) { return f / (u - f); }, [&](double g) { return g * u / (1.0 + g * u); });
}

cplx transform_H(const SpecPair& s, cplx u) {
  check_cut_u(s, u);
  cplx gpole = u == cplx(0) ? cplx(kInf) : -1.0 / u;
  return integrate_parts(
      s, u, gpole, [&](double f) { cplx d = u - f; return f / (d * d); },
      [&](double g) { cplx d = 1.0 + g * u; return -g / (d * d); });
}

cplx transform_Hprime(const SpecPair& s, cplx u) {
  check_cut_u(s, u);
  cplx gpole = u == cplx(0) ? cplx(kInf) : -1.0 / u;
  return integrate_parts(
      s, u, gpole, [&](double f) { cplx d = u - f; return -2.0 * f / (d * d * d); },
      [&](double g) { cplx d = 1.0 + g * u; return 2.0 * g * g / (d * d * d); });
}

double integrate_family(const SpecFamily& fam, const std::function<double(double)>& fn) {
  std::vector<double> pts{0.0, 1.0};
  for (double j : fam.joints()) pts.push_back(j);
  std::sort(pts.begin(), pts.end());
  return integrate_r([&](double t) { return fn(fam(t)); }, pts);
}

}  // namespace skewhowe
