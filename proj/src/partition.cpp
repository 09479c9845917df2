#include "skewhowe/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace skewhowe {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::BoxViolation: return "BoxViolation";
    case Errc::InvalidFamily: return "InvalidFamily";
    case Errc::OnBranchCut: return "OnBranchCut";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ContourInfeasible: return "ContourInfeasible";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NoSupport: return "NoSupport";
    case Errc::RootFindFailure: return "RootFindFailure";
    case Errc::AmbiguousRoots: return "AmbiguousRoots";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::NotPearcey: return "NotPearcey";
    case Errc::DivergentIntegral: return "DivergentIntegral";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::CalibrationFailure: return "CalibrationFailure";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw Error(Errc::InvalidArgument, "negative part");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
      throw Error(Errc::InvalidArgument, "parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::rectangle(int rows, int cols) {
  return Partition(std::vector<int>(rows, cols));
}

Partition conjugate(const Partition& p) {
  std::vector<int> out(p[0], 0);
  for (int j = 0; j < p[0]; ++j) {
    int c = 0;
    while (c < p.length() && p[c] > j) ++c;
    out[j] = c;
  }
  return Partition(std::move(out));
}

MayaDiagram maya(const Partition& p, int n, int k) {
  if (!p.fits_box(n, k))
    throw Error(Errc::BoxViolation, "partition does not fit the " + std::to_string(n) + "x" +
                                        std::to_string(k) + " box");
  MayaDiagram m;
  m.n = n;
  m.k = k;
  m.doubled.resize(n);
  for (int i = 0; i < n; ++i) m.doubled[i] = 2 * (p[i] - i - 1) + 1;
  return m;
}

Partition from_maya(const MayaDiagram& m) {
  std::vector<int> parts(m.doubled.size());
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = (m.doubled[i] - 1) / 2 + static_cast<int>(i) + 1;
  return Partition(std::move(parts));
}

int count_right(const MayaDiagram& m, int doubled_threshold) {
  return static_cast<int>(std::count_if(m.doubled.begin(), m.doubled.end(),
                                        [&](int a) { return a > doubled_threshold; }));
}

BoundaryProfile::BoundaryProfile(const Partition& p, int n, int k) : n_(n), k_(k) {
  MayaDiagram m = maya(p, n, k);
  u_.reserve(n + k + 1);
  v_.reserve(n + k + 1);
  // Particles are sorted decreasingly, so the count is a moving pointer.
  int idx = n;
  for (int j = -n; j <= k; ++j) {
    while (idx > 0 && m.doubled[idx - 1] <= 2 * j) --idx;
    u_.push_back(static_cast<double>(j) / n);
    v_.push_back(static_cast<double>(j) / n + 2.0 * idx / n);
  }
}

double BoundaryProfile::operator()(double u) const {
  if (u <= u_.front()) return -u;
  if (u >= u_.back()) return u;
  double x = (u + 1.0) * n_;
  auto j = static_cast<std::size_t>(x);
  if (j >= u_.size() - 1) j = u_.size() - 2;
  double w = x - static_cast<double>(j);
  return v_[j] * (1 - w) + v_[j + 1] * w;
}

std::uint64_t count_in_box(int n, int k) {
  // C(n+k, n), guarded against overflow by the caller's small sizes.
  std::uint64_t r = 1;
  for (int i = 1; i <= n; ++i) r = r * static_cast<std::uint64_t>(k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace skewhowe
