#pragma once

#include <complex>
#include <vector>

#include "skewhowe/specialization.hpp"

namespace skewhowe {

// z runs over the circle |z - z_center| = z_radius, which holds every -y_j and 0 and no 1/x_i.
// w runs over |w| = w_radius, strictly inside the z circle.
struct ContourSpec {
  double z_center = 0, z_radius = 1, w_radius = 0.25;
  bool concentric = true;
};
// Throws ContourInfeasible when the parameters are not positive.
ContourSpec choose_contour(const std::vector<double>& x, const std::vector<double>& y);

struct KernelValue {
  double value = 0;
  double error = 0;  // change over the last node doubling, plus any imaginary residue
  int nodes = 0;
};

// m, m' are half-integers.
KernelValue finite_kernel(const std::vector<double>& x, const std::vector<double>& y, double m, double mp,
                          double tol = 1e-9);

// Dense K over a window of doubled positions.
struct KernelMatrix {
  std::vector<int> doubled;
  std::vector<double> values;  // row-major
  double error = 0;
  int nodes = 0;
  std::size_t size() const { return doubled.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i * doubled.size() + j]; }
  double at_doubled(int dm, int dmp) const;
};
KernelMatrix kernel_matrix(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<int>& doubled, double tol = 1e-9, int threads = 1);
// Single trapezoid pass with a fixed node count; error holds the largest imaginary residue.
KernelMatrix kernel_matrix_fixed(const std::vector<double>& x, const std::vector<double>& y,
                                 const std::vector<int>& doubled, int nodes);
// Every position a particle can occupy: -n + 1/2, ..., k - 1/2, doubled.
std::vector<int> box_window(int n, int k);

double sine_kernel(double rho, int d);

struct BulkRow {
  int n = 0, k = 0;
  double m = 0, mp = 0;
  double kernel = 0, sine = 0, deviation = 0, error = 0;
};
// K(nt + l, nt + l') against the sine kernel at rho(t), with m = floor(nt) + l + 1/2.
std::vector<BulkRow> bulk_convergence_report(const SpecPair& s, double t, int l, int lp,
                                             const std::vector<int>& n_list);

double airy_kernel(double xi, double eta);

// zeta runs over two wedges with vertices +-vertex and rays at +-angle, +-(pi - angle);
// nu runs up the imaginary axis.
struct PearceyContour {
  double vertex = 1.0;
  double angle = 0.7853981633974483;
  double panel = 0.25;
};
double pearcey_kernel(double xi, double eta, double tol = 1e-9, const PearceyContour& contour = {});

}  // namespace skewhowe
