#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "core/matrix.hpp"

namespace tnp {

/// Evolving small-world model: snapshot 0 is a ring over n_nodes, each later
/// snapshot rewires floor(rewire_p * links) uniformly chosen links.
struct SmallWorldParams {
  std::size_t n_nodes = 50;
  double rewire_p = 0.0;
  std::size_t snapshots = 300;
  std::uint64_t seed = 1;
};

Matrix gen_small_world(const SmallWorldParams& params);

/// Temporal stochastic block model: frozen intra-community topology, weights
/// evolve by copying the matrix-adjacent row above (prob p_beta * beta), the
/// previous snapshot (prob p_gamma * gamma), or drawing a fresh uniform
/// symbol.
struct TsbmParams {
  std::size_t communities = 4;
  std::size_t n_nodes = 400;  // total; communities get equal shares
  std::size_t degree = 3;
  std::size_t snapshots = 300;
  double beta = 0.5;
  double gamma = 0.5;
  double p_beta = 0.5;
  double p_gamma = 0.5;
  std::size_t alphabet_size = 4;  // weights drawn from 1..alphabet_size
  std::uint64_t seed = 1;
};

Matrix gen_tsbm(const TsbmParams& params);

/// Long-range correlated field: Gaussian noise filtered in frequency space so
/// real-space correlations decay as r^-gamma_x along time (columns) and
/// r^-gamma_y along links (rows), then quantile-discretized.
struct LongRangeParams {
  std::size_t rows = 128;
  std::size_t cols = 128;
  double gamma_x = 1.0;
  double gamma_y = 1.0;
  std::size_t levels = 4;
  std::uint64_t seed = 1;
};

Matrix gen_long_range(const LongRangeParams& params);

/// Continuous field behind gen_long_range (row-major), exposed for decay
/// diagnostics.
std::vector<double> gen_long_range_field(const LongRangeParams& params);

}  // namespace tnp
