#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skewhowe/partition.hpp"
#include "skewhowe/specialization.hpp"

namespace skewhowe {

struct BinaryMatrix {
  int n = 0, k = 0;
  std::vector<std::uint8_t> bits;  // row-major

  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols) : n(rows), k(cols), bits(static_cast<std::size_t>(rows) * cols, 0) {}
  std::uint8_t operator()(int i, int j) const { return bits[static_cast<std::size_t>(i) * k + j]; }
  std::uint8_t& at(int i, int j) { return bits[static_cast<std::size_t>(i) * k + j]; }
};

struct Tableau {
  std::vector<std::vector<int>> rows;
  Partition shape() const;
  bool semistandard() const;  // rows weak, columns strict
};

Tableau transpose(const Tableau& t);

// P: entries <= n (row indices), shape lambda. Q: entries <= k (column indices), shape lambda'.
struct TableauPair {
  Tableau P, Q;
};

// Thresholds p_ij 2^32 for P(M_ij = 1) = x_i y_j / (1 + x_i y_j), reused across samples.
class MatrixSampler {
 public:
  MatrixSampler(const std::vector<double>& x, const std::vector<double>& y);
  void fill(std::uint64_t seed, BinaryMatrix& m) const;
  BinaryMatrix sample(std::uint64_t seed) const;
  int n() const { return n_; }
  int k() const { return k_; }

 private:
  int n_, k_;
  std::vector<std::uint64_t> thr_;
};

BinaryMatrix sample_matrix(const SpecPair& s, int n, int k, std::uint64_t seed);

// Dual RSK: insert column indices in row-major order, bumping the leftmost entry >= x.
// The observer sees (P, Q) after each insertion.
TableauPair dual_rsk(const BinaryMatrix& m, const std::function<void(const TableauPair&)>& observer = {});
BinaryMatrix inverse_dual_rsk(const TableauPair& pq, int n, int k);

// Shape only, inserting each matrix row as one strictly increasing batch.
Partition rsk_shape(const BinaryMatrix& m);
// lambda_1 and the number of rows by last passage, O(nk).
int lpp_first_row(const BinaryMatrix& m);
int lpp_length(const BinaryMatrix& m);

Partition sample_diagram(const SpecPair& s, int n, int k, std::uint64_t seed);
std::vector<Partition> sample_batch(const SpecPair& s, int n, int k, int count, std::uint64_t base_seed,
                                    int threads = 1);

// Generic batch driver: f(index, seed) for index in [0, count), results in index order.
template <class T>
std::vector<T> parallel_map(int count, std::uint64_t base_seed, int threads,
                            const std::function<T(int, std::uint64_t)>& f);

int default_threads();

}  // namespace skewhowe

#include "skewhowe/sampler_impl.hpp"
