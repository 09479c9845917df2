#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewhowe/specialization.hpp"

namespace skewhowe {

enum class Frozen { Empty, Full, None };  // rho = 0, rho = 1, no frozen region (corner or shared point)
enum class EdgeClass { Airy, Corner, PearceyShared, Degenerate };

const char* frozen_name(Frozen f);
const char* edge_class_name(EdgeClass e);

// Real nonzero critical point of the action. z = +-inf is stored with at_infinity set.
struct CriticalPoint {
  double z = 0;
  bool at_infinity = false;
  double t = 0;          // I1(z)
  double curvature = 0;  // second derivative of I1 in the chart used to find the root
  bool tangential = false;
};

struct SupportInterval {
  double t_minus = 0, t_plus = 0;
  double z_minus = 0, z_plus = 0;  // +inf when the endpoint sits at z = infinity
  Frozen left_frozen = Frozen::None, right_frozen = Frozen::None;
  EdgeClass left_class = EdgeClass::Airy, right_class = EdgeClass::Airy;
};

// Real roots of I2 on the real line (z chart away from infinity, u = 1/z near it).
std::vector<CriticalPoint> critical_points(const SpecPair& s);
std::vector<SupportInterval> solve_support(const SpecPair& s);

struct DensityPoint {
  double rho = 0;
  cplx z1;             // root of I1(z) = t with Im z1 > 0, zero when frozen
  bool frozen = true;
};
DensityPoint density(const SpecPair& s, const std::vector<SupportInterval>& support, double t);
DensityPoint density(const SpecPair& s, double t);
// Sorted or unsorted grid; continuation runs once per interval.
std::vector<DensityPoint> density_curve(const SpecPair& s, const std::vector<SupportInterval>& support,
                                        const std::vector<double>& t_grid);

// Omega(u) = 1 + int_{-1}^u (1 - 2 rho), with rho interpolated in the angle variable on each interval.
class LimitShape {
 public:
  explicit LimitShape(const SpecPair& s, int nodes = 96);
  LimitShape(const SpecPair& s, std::vector<SupportInterval> support, int nodes = 96);

  double omega(double u) const;
  double mass_below(double u) const;  // int_{-1}^u rho
  double rho(double t) const;         // interpolated density
  double c() const { return c_; }
  const std::vector<SupportInterval>& support() const { return support_; }

 private:
  struct Piece {
    double lo, hi;
    std::vector<double> coef;      // Chebyshev series of rho in the angle variable
    std::vector<double> integral;  // its cumulative integral in t
  };
  double c_;
  std::vector<SupportInterval> support_;
  std::vector<Piece> pieces_;
  void build(const SpecPair& s, int nodes);
  double frozen_value_at(double t) const;
};

std::vector<double> limit_shape(const SpecPair& s, const std::vector<double>& u_grid);

enum class End { Left, Right };

struct AiryScale {
  double z_crit = 0;
  double d3s = 0;  // (z d/dz)^3 S at z_crit
  double sigma = 0;
};
AiryScale airy_sigma(const SpecPair& s, const SupportInterval& interval, End end);

struct PearceyScale {
  double t_d = 0;
  double z_crit = 0;
  double d3s = 0;  // should vanish
  double d4s = 0;
  double sigma = 0;  // magnitude
  bool negative_convention = false;  // z_crit < 0
};
PearceyScale pearcey_sigma(const SpecPair& s, double t_d, double tol = 1e-6);

struct CornerResiduals {
  std::optional<double> right;  // int f - c int 1/g
  std::optional<double> left;   // int 1/f - c int g
};
// Throws DivergentIntegral on the requested side.
double corner_residual(const SpecPair& s, End end);
CornerResiduals corner_residuals(const SpecPair& s);

struct ConjectureDiagnostic {
  double t_plus = 0, z_plus = 0, omega_slope = 0;
  std::optional<double> residual;
  bool t_plus_is_c = false, z_plus_zero = false, omega_flat = false, residual_zero = false;
  bool all_agree() const {
    return t_plus_is_c == z_plus_zero && z_plus_zero == omega_flat && omega_flat == residual_zero;
  }
};

struct EdgeReport {
  std::vector<SupportInterval> intervals;
  std::vector<std::string> left_shape, right_shape;  // "concave" / "convex" / "flat"
  ConjectureDiagnostic conjecture;
};
EdgeReport classify_edges(const SpecPair& s);

// Conjectured constant-q limit (x_i = q^{i-1}, y_j = q^{b(j-1)}); reported, never asserted.
struct ConstantQLine {
  std::string regime;  // "line", "empty", "full"
  double density = 0, slope = 0, intercept = 0;
  double t_lo = 0, t_hi = 0;
  Frozen left = Frozen::None, right = Frozen::None;
  bool conjecture = true;
  double omega(double t, double c) const;
};
ConstantQLine constant_q_line(double q, double b, double c);

nlohmann::json support_to_json(const std::vector<SupportInterval>& v);
nlohmann::json edge_report_to_json(const EdgeReport& r);

// Closed forms used as independent checks.
namespace closed_form {

// f = alpha, g = 1.
double constant_t(double alpha, double c, int sign);
double constant_z(double alpha, double c, int sign);
double constant_rho(double alpha, double c, double t);
double constant_sigma(double alpha, double c);
double constant_z_crit(double alpha, double c);

// f = alpha e^{-gamma s}, g = e^{-gamma c s}.
double principal_t(double alpha, double gamma, double c, int sign);
double principal_rho(double alpha, double gamma, double c, double t);
double principal_d3s_alpha1(double gamma, double c);  // Delta form at the right edge

// f = alpha e^{-gamma s}, g = e^{gamma c s}.
double inverse_t(double alpha, double gamma, double c, int sign);
double inverse_rho(double alpha, double gamma, double c, double t);
double inverse_rho_alpha1(double gamma, double c, double t);

}  // namespace closed_form

}  // namespace skewhowe
