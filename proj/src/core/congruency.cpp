#include "core/congruency.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace tnp {

SplitPlan split_squares(std::size_t m, std::size_t T) {
  if (m < 1 || T < 1) throw UsageError("split_squares requires m, T >= 1");

  SplitPlan plan;
  plan.total_area = m * T;
  plan.origin = T >= m ? SplitPlan::Origin::Left : SplitPlan::Origin::Top;

  std::size_t r0 = 0, c0 = 0, h = m, w = T;
  while (h >= 1 && w >= 1) {
    std::size_t e = std::min(h, w);
    if (e == 1) {
      plan.unit_count += h * w;  // a 1 x k strip is k units
      break;
    }
    plan.square_sizes.push_back(e);
    plan.square_rects.push_back({r0, c0, e});
    if (w >= h) {
      c0 += e;
      w -= e;
    } else {
      r0 += e;
      h -= e;
    }
    if (w == 0 || h == 0) break;
  }
  return plan;
}

std::vector<StagePoint> stage_sequence(std::span<const double> square_preds, const SplitPlan& plan,
                                       std::size_t alphabet_size) {
  if (square_preds.size() != plan.square_count())
    throw UsageError("square predictability count does not match split plan");
  if (alphabet_size < 1) throw UsageError("alphabet size must be >= 1");

  const std::size_t Q = plan.square_count();
  const double D = static_cast<double>(plan.total_area);
  const double unit_p = 1.0 / static_cast<double>(alphabet_size);

  std::vector<StagePoint> stages;
  stages.reserve(Q);
  for (std::size_t i = 1; i <= Q; ++i) {
    double weighted = 0.0;
    double unitized_area = static_cast<double>(plan.unit_count);
    std::size_t predicted = Q - i + 1;
    for (std::size_t j = 0; j < Q; ++j) {
      double area = static_cast<double>(plan.square_sizes[j]) * static_cast<double>(plan.square_sizes[j]);
      if (j < predicted)
        weighted += area * square_preds[j];
      else
        unitized_area += area;
    }
    double p = (weighted + unitized_area * unit_p) / D;
    std::size_t n = predicted + static_cast<std::size_t>(unitized_area);
    stages.push_back({n, p});
  }
  return stages;
}

Extrapolation extrapolate_ttp(std::span<const StagePoint> stages, const SplitPlan& plan,
                              std::size_t alphabet_size) {
  if (stages.empty()) throw UsageError("extrapolate_ttp needs at least one stage");
  (void)plan;
  const double lo = 1.0 / static_cast<double>(alphabet_size);

  Extrapolation ex;
  if (stages.size() == 1) {
    ex.slope = 0.0;
    ex.intercept = stages[0].p;
    ex.r2 = 1.0;
    ex.ttp = stages[0].p;
    return ex;
  }

  double q = static_cast<double>(stages.size());
  double sn = 0, sp = 0, snn = 0, snp = 0;
  for (const auto& s : stages) {
    double n = static_cast<double>(s.n_squares);
    sn += n;
    sp += s.p;
    snn += n * n;
    snp += n * s.p;
  }
  double denom = q * snn - sn * sn;
  ex.slope = denom != 0 ? (q * snp - sn * sp) / denom : 0.0;
  ex.intercept = (sp - ex.slope * sn) / q;

  double mean_p = sp / q;
  double ss_tot = 0, ss_res = 0;
  for (const auto& s : stages) {
    double fit = ex.slope * static_cast<double>(s.n_squares) + ex.intercept;
    ss_tot += (s.p - mean_p) * (s.p - mean_p);
    ss_res += (s.p - fit) * (s.p - fit);
  }
  ex.r2 = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : 1.0;

  double raw = ex.slope + ex.intercept;
  ex.ttp = std::clamp(raw, lo, 1.0);
  ex.clamped = raw != ex.ttp;
  return ex;
}

std::vector<double> congruency_residual(const SplitPlan& plan, std::span<const double> square_preds,
                                        std::size_t alphabet_size, double slope) {
  if (plan.square_count() < 2) throw UsageError("congruency_residual needs at least two squares");
  if (square_preds.size() != plan.square_count())
    throw UsageError("square predictability count does not match split plan");

  const double D = static_cast<double>(plan.total_area);
  const double unit_p = 1.0 / static_cast<double>(alphabet_size);
  std::vector<double> res;
  res.reserve(plan.square_count() - 1);
  for (std::size_t j = 1; j < plan.square_count(); ++j) {
    double e2 = static_cast<double>(plan.square_sizes[j]) * static_cast<double>(plan.square_sizes[j]);
    if (e2 <= 1) continue;  // size-1 square: transition slope undefined
    res.push_back(e2 * (unit_p - square_preds[j]) / (D * (e2 - 1.0)) - slope);
  }
  return res;
}

}  // namespace tnp
