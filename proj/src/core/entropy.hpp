#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/matrix.hpp"

namespace tnp {

/// Read-only view of a 2D symbol grid (possibly a block of a larger matrix).
struct GridView {
  const Symbol* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t stride = 0;  // row stride in the underlying storage

  Symbol at(std::size_t r, std::size_t c) const { return data[r * stride + c]; }
};

inline GridView view_of(const Matrix& m) { return {m.values().data(), m.rows(), m.cols(), m.cols()}; }

/// Match lengths for every cell of a square grid. values[v] is the smallest
/// block size anchored at v (block = the k x k square ending at v) that does
/// not recur at any earlier anchor u <= v (componentwise, whole block inside
/// the grid). capped[v] marks cells where every feasible size recurred, so
/// the value is the geometric maximum min(row, col) + 2 in 0-based terms.
struct LambdaField {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> values;
  std::vector<std::uint8_t> capped;

  std::uint32_t at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::uint64_t sum() const;
  std::uint64_t sum_squares() const;
};

/// Match lengths of a square grid; errors on non-square input.
LambdaField lambda_2d(GridView g);
inline LambdaField lambda_2d(const Matrix& m) { return lambda_2d(view_of(m)); }

/// 1D analogue over a symbol sequence: values[t] is the shortest suffix
/// ending at t with no earlier occurrence; capped[t] set when values[t] == t+1.
struct LambdaSeq {
  std::vector<std::uint32_t> values;
  std::vector<std::uint8_t> capped;
  std::uint64_t sum() const;
};

LambdaSeq lambda_1d(std::span<const Symbol> series);

enum class EstimatorKind { Lz2d, Lz1d, BlockOracle };

struct EntropyEstimate {
  double bits_per_cell = 0.0;
  std::size_t cell_count = 0;
  EstimatorKind estimator = EstimatorKind::Lz2d;
};

/// H = n^2 log2(n^2) / sum(Lambda^2) over an n x n grid, n >= 2.
EntropyEstimate entropy_rate_2d(GridView g);
inline EntropyEstimate entropy_rate_2d(const Matrix& m) { return entropy_rate_2d(view_of(m)); }

/// H = T log2(T) / sum(Lambda) over a sequence of length T >= 2.
EntropyEstimate entropy_rate_1d(std::span<const Symbol> series);

/// Empirical Shannon entropy of overlapping k x k block frequencies divided
/// by k^2. Independent of the match-length path; used to cross-check it.
EntropyEstimate block_entropy_oracle(GridView g, std::size_t k);
inline EntropyEstimate block_entropy_oracle(const Matrix& m, std::size_t k) {
  return block_entropy_oracle(view_of(m), k);
}

/// Solves H = -(x log2 x + (1-x) log2(1-x)) + (1-x) log2(N-1) for the unique
/// root x in [1/N, 1] by bisection. Clamps: H >= log2 N gives 1/N, N == 1
/// gives 1.
double solve_fano(double entropy_bits, std::size_t alphabet_size);

}  // namespace tnp
