#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewhowe/error.hpp"
#include "skewhowe/quadrature.hpp"

namespace skewhowe {

enum class Family { Constant, PiecewiseConstant, Monomial, Exponential, Grid, ConstantQ, Sinusoidal };

// A positive function on [0,1] (or an explicit grid) defining x_i = f(i/n) or y_j = g(j/k).
struct SpecFamily {
  Family kind = Family::Constant;
  double alpha = 1.0;
  double exponent = 0.0;  // monomial
  double rate = 0.0;      // exponential: alpha * exp(-rate * s)
  double q = 1.0, b = 1.0;  // constant_q: value q^(b (i-1)) at index i
  double offset = 0.0, amplitude = 0.0, frequency = 1.0;  // sinusoidal
  std::vector<double> values;
  std::vector<double> shares;  // piecewise, normalized to sum 1

  static SpecFamily constant(double a);
  static SpecFamily piecewise(std::vector<double> values, std::vector<double> shares);
  static SpecFamily monomial(double a, double m);
  static SpecFamily exponential(double a, double rate);
  static SpecFamily grid(std::vector<double> values);
  static SpecFamily constant_q(double q, double b);
  static SpecFamily sinusoidal(double offset, double amplitude, double frequency);

  void validate() const;
  bool has_transforms() const { return kind != Family::ConstantQ && kind != Family::Grid; }
  double operator()(double s) const;
  std::vector<double> grid_values(int count) const;
  std::vector<double> joints() const;  // interior breakpoints in (0,1)
  double min_value() const;
  double max_value() const;
  // Value ranges of the continuous pieces; degenerate for piecewise constants.
  std::vector<std::pair<double, double>> value_ranges() const;
};

struct SpecPair {
  SpecFamily f, g;
  double c = 1.0;

  void validate() const;
  bool has_transforms() const { return f.has_transforms() && g.has_transforms(); }
};

std::vector<double> x_values(const SpecPair& s, int n);
std::vector<double> y_values(const SpecPair& s, int k);

SpecFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const SpecFamily& f);
SpecPair spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const SpecPair& s);

// Saddle transforms, D = z d/dz applied to the action:
//   I1 = D S + t,  I2 = D^2 S,  I3 = D^3 S,  I4 = D^4 S.
cplx transform_I1(const SpecPair& s, cplx z);
cplx transform_I2(const SpecPair& s, cplx z);
cplx transform_I3(const SpecPair& s, cplx z);
cplx transform_I4(const SpecPair& s, cplx z);
cplx transform(const SpecPair& s, int order, cplx z);

// J = I2 / z = dI1/dz and its derivative.
cplx transform_J(const SpecPair& s, cplx z);
cplx transform_Jprime(const SpecPair& s, cplx z);
// Chart u = 1/z: I1(1/u), H = z I2 at z = 1/u, and dH/du.
cplx transform_I1_u(const SpecPair& s, cplx u);
cplx transform_H(const SpecPair& s, cplx u);
cplx transform_Hprime(const SpecPair& s, cplx u);

// Branch segments on the real z axis: [1/max f, 1/min f] and [-max g, -min g] per piece.
struct BranchCuts {
  std::vector<std::pair<double, double>> f;  // upper ends may be +inf
  std::vector<std::pair<double, double>> g;
  std::vector<std::pair<double, double>> all() const;  // sorted union, merged
};
BranchCuts branch_cuts(const SpecPair& s);
bool on_branch_cut(const SpecPair& s, cplx z, double eps = 1e-8);

// Plain integrals over [0,1] of a function of f(s) or g(s).
double integrate_family(const SpecFamily& fam, const std::function<double(double)>& fn);

}  // namespace skewhowe
