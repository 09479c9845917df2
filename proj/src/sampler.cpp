#include "skewhowe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "skewhowe/simd.hpp"

namespace skewhowe {

Partition Tableau::shape() const {
  std::vector<int> parts;
  for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
  return Partition(parts);
}

bool Tableau::semistandard() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) return false;
    if (i > 0 && rows[i].size() > rows[i - 1].size()) return false;
    for (std::size_t j = 0; j + 1 < rows[i].size(); ++j)
      if (rows[i][j] > rows[i][j + 1]) return false;
    if (i > 0)
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        if (rows[i - 1][j] >= rows[i][j]) return false;
  }
  return true;
}

Tableau transpose(const Tableau& t) {
  Tableau out;
  if (t.rows.empty()) return out;
  out.rows.resize(t.rows[0].size());
  for (const auto& r : t.rows)
    for (std::size_t j = 0; j < r.size(); ++j) out.rows[j].push_back(r[j]);
  return out;
}

MatrixSampler::MatrixSampler(const std::vector<double>& x, const std::vector<double>& y)
    : n_(static_cast<int>(x.size())), k_(static_cast<int>(y.size())), thr_(x.size() * y.size()) {
  const double scale = 4294967296.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < k_; ++j) {
      double xy = x[i] * y[j];
      double p = std::isinf(xy) ? 1.0 : xy / (1.0 + xy);
      thr_[static_cast<std::size_t>(i) * k_ + j] = static_cast<std::uint64_t>(std::llround(p * scale));
    }
}

void MatrixSampler::fill(std::uint64_t seed, BinaryMatrix& m) const {
  if (m.n != n_ || m.k != k_) m = BinaryMatrix(n_, k_);
  bernoulli_fill(seed, thr_.data(), thr_.size(), m.bits.data());
}

BinaryMatrix MatrixSampler::sample(std::uint64_t seed) const {
  BinaryMatrix m(n_, k_);
  fill(seed, m);
  return m;
}

BinaryMatrix sample_matrix(const SpecPair& s, int n, int k, std::uint64_t seed) {
  return MatrixSampler(x_values(s, n), y_values(s, k)).sample(seed);
}

TableauPair dual_rsk(const BinaryMatrix& m, const std::function<void(const TableauPair&)>& observer) {
  // ins: row-strict insertion tableau of column indices; rec: SSYT of row indices, same shape.
  std::vector<std::vector<int>> ins, rec;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.k; ++j) {
      if (!m(i, j)) continue;
      int x = j + 1;
      std::size_t r = 0;
      while (true) {
        if (r == ins.size()) {
          ins.push_back({x});
          rec.push_back({i + 1});
          break;
        }
        auto& row = ins[r];
        auto it = std::lower_bound(row.begin(), row.end(), x);
        if (it == row.end()) {
          row.push_back(x);
          rec[r].push_back(i + 1);
          break;
        }
        std::swap(x, *it);
        ++r;
      }
      if (observer) observer({Tableau{rec}, transpose(Tableau{ins})});
    }
  return {Tableau{rec}, transpose(Tableau{ins})};
}

BinaryMatrix inverse_dual_rsk(const TableauPair& pq, int n, int k) {
  std::vector<std::vector<int>> rec = pq.P.rows;
  std::vector<std::vector<int>> ins = transpose(pq.Q).rows;
  BinaryMatrix m(n, k);
  // The last inserted cell holds the largest recording entry, rightmost among ties.
  while (!rec.empty()) {
    std::size_t best = 0;
    for (std::size_t r = 0; r < rec.size(); ++r)
      if (rec[r].back() > rec[best].back() ||
          (rec[r].back() == rec[best].back() && rec[r].size() > rec[best].size()))
        best = r;
    int i = rec[best].back();
    rec[best].pop_back();
    int x = ins[best].back();
    ins[best].pop_back();
    if (rec[best].empty()) {
      rec.erase(rec.begin() + static_cast<long>(best));
      ins.erase(ins.begin() + static_cast<long>(best));
    }
    for (long r = static_cast<long>(best) - 1; r >= 0; --r) {
      auto& row = ins[r];
      // Largest entry <= x was the one bumped out by x.
      auto it = std::upper_bound(row.begin(), row.end(), x);
      --it;
      std::swap(x, *it);
    }
    m.at(i - 1, x - 1) = 1;
  }
  return m;
}

Partition rsk_shape(const BinaryMatrix& m) {
  std::vector<std::vector<int>> rows;
  std::vector<int> batch, bumped;
  for (int i = 0; i < m.n; ++i) {
    batch.clear();
    for (int j = 0; j < m.k; ++j)
      if (m(i, j)) batch.push_back(j);
    for (std::size_t r = 0; !batch.empty(); ++r) {
      if (r == rows.size()) {
        rows.push_back(batch);
        break;
      }
      auto& row = rows[r];
      bumped.clear();
      std::size_t p = 0, b = 0;
      for (; b < batch.size(); ++b) {
        p = static_cast<std::size_t>(std::lower_bound(row.begin() + static_cast<long>(p), row.end(), batch[b]) -
                                     row.begin());
        if (p == row.size()) break;
        bumped.push_back(row[p]);
        row[p++] = batch[b];
      }
      row.insert(row.end(), batch.begin() + static_cast<long>(b), batch.end());
      std::swap(batch, bumped);
    }
  }
  std::vector<int> parts;
  for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
  return Partition(parts);
}

int lpp_first_row(const BinaryMatrix& m) {
  // Chains with rows weakly and columns strictly increasing.
  std::vector<int> d(m.k + 1, 0);
  for (int i = 0; i < m.n; ++i) {
    const std::uint8_t* row = &m.bits[static_cast<std::size_t>(i) * m.k];
    for (int j = 0; j < m.k; ++j) d[j + 1] = std::max(d[j + 1], d[j] + row[j]);
  }
  return d[m.k];
}

int lpp_length(const BinaryMatrix& m) {
  // Chains with rows strictly increasing and columns weakly decreasing.
  std::vector<int> d(m.k + 1, 0), prev(m.k + 1, 0);
  for (int i = 0; i < m.n; ++i) {
    const std::uint8_t* row = &m.bits[static_cast<std::size_t>(i) * m.k];
    for (int j = m.k - 1; j >= 0; --j) d[j] = std::max({prev[j], d[j + 1], prev[j] + row[j]});
    std::swap(d, prev);
  }
  return prev[0];
}

Partition sample_diagram(const SpecPair& s, int n, int k, std::uint64_t seed) {
  return rsk_shape(sample_matrix(s, n, k, seed));
}

std::vector<Partition> sample_batch(const SpecPair& s, int n, int k, int count, std::uint64_t base_seed,
                                    int threads) {
  MatrixSampler sampler(x_values(s, n), y_values(s, k));
  return parallel_map<Partition>(count, base_seed, threads, [&](int, std::uint64_t seed) {
    return rsk_shape(sampler.sample(seed));
  });
}

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace skewhowe
