#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace skewhowe {

using cplx = std::complex<double>;

// Adaptive Gauss-Kronrod over consecutive breakpoints (which must be sorted).
cplx integrate_c(const std::function<cplx(double)>& f, const std::vector<double>& pts,
                 double rel_tol = 1e-12, double* err = nullptr);
double integrate_r(const std::function<double(double)>& f, const std::vector<double>& pts,
                   double rel_tol = 1e-12, double* err = nullptr);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);

}  // namespace skewhowe
