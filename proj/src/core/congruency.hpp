#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tnp {

/// Greedy square decomposition of an m x T rectangle. Squares are carved from
/// the column-0 / row-0 side so larger squares cover earlier history;
/// remainders of width or height 1 become units.
struct SplitPlan {
  struct Rect {
    std::size_t r0 = 0, c0 = 0, size = 0;
  };

  std::vector<std::size_t> square_sizes;  // non-increasing splitting order
  std::vector<Rect> square_rects;         // geometry, same order
  std::size_t unit_count = 0;
  std::size_t total_area = 0;  // D = m * T
  enum class Origin { Left, Top } origin = Origin::Left;

  std::size_t square_count() const { return square_sizes.size(); }
};

SplitPlan split_squares(std::size_t m, std::size_t T);

/// One splitting stage: after unitizing the last i-1 squares, N_i squares
/// (incl. units) remain and p_i is the area-weighted average predictability.
struct StagePoint {
  std::size_t n_squares = 0;  // N_i
  double p = 0.0;             // p_i
};

/// Stage sequence for i = 1..Q; squares are unitized in reverse splitting
/// order (smallest first) and units predict at 1/alphabet_size.
std::vector<StagePoint> stage_sequence(std::span<const double> square_preds, const SplitPlan& plan,
                                       std::size_t alphabet_size);

struct Extrapolation {
  double slope = 0.0;      // k
  double intercept = 0.0;  // b
  double r2 = 1.0;
  double ttp = 0.0;  // k + b, clamped to [1/alphabet, 1]
  bool clamped = false;
};

/// Ordinary least squares p_i = k N_i + b over all stages, evaluated at
/// N = 1. A single stage is returned as-is.
Extrapolation extrapolate_ttp(std::span<const StagePoint> stages, const SplitPlan& plan,
                              std::size_t alphabet_size);

/// Per-square congruency residuals e^2 (1/|A| - p) / (D (e^2 - 1)) - k for
/// the unitized squares (splitting order indices 2..Q); near-zero residuals
/// certify that the stage points are collinear. Squares of size 1 are
/// excluded.
std::vector<double> congruency_residual(const SplitPlan& plan, std::span<const double> square_preds,
                                        std::size_t alphabet_size, double slope);

}  // namespace tnp
