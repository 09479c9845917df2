#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "skewhowe/error.hpp"

namespace skewhowe {

// Weakly decreasing sequence of positive parts; trailing zeros are dropped.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  int size() const;
  bool empty() const { return parts_.empty(); }
  bool fits_box(int n, int k) const { return length() <= n && (*this)[0] <= k; }

  static Partition rectangle(int rows, int cols);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

Partition conjugate(const Partition& p);

// Positions a_i = lambda_i - i + 1/2, stored doubled (odd integers), strictly decreasing.
struct MayaDiagram {
  std::vector<int> doubled;
  int n = 0;
  int k = 0;
};

MayaDiagram maya(const Partition& p, int n, int k);
Partition from_maya(const MayaDiagram& m);

// Number of particles strictly to the right of a half-integer threshold given doubled.
int count_right(const MayaDiagram& m, int doubled_threshold);

// Rescaled rotated boundary of the diagram, piecewise linear between u = j/n.
class BoundaryProfile {
 public:
  BoundaryProfile(const Partition& p, int n, int k);

  double operator()(double u) const;
  const std::vector<double>& breakpoints() const { return u_; }
  const std::vector<double>& values() const { return v_; }
  int n() const { return n_; }
  double c() const { return static_cast<double>(k_) / n_; }

 private:
  int n_, k_;
  std::vector<double> u_, v_;
};

// Enumerate every partition fitting the n x k box, in reverse lexicographic order.
template <class F>
void for_each_in_box(int n, int k, F&& f) {
  std::vector<int> parts(n, k);
  while (true) {
    f(Partition(parts));
    int i = n - 1;
    while (i >= 0 && parts[i] == 0) --i;
    if (i < 0) return;
    int v = parts[i] - 1;
    for (int j = i; j < n; ++j) parts[j] = v;
  }
}

std::uint64_t count_in_box(int n, int k);

}  // namespace skewhowe
