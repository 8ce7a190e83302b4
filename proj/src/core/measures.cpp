#include "core/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace tnp {

namespace {

struct ArrangementResult {
  double ttp;
  std::vector<double> square_entropies;
  std::vector<double> square_preds;
  std::vector<StagePoint> stages;
  Extrapolation regression;
};

ArrangementResult ttp_of_arrangement(const FilteredMatrix& fm, const SplitPlan& plan,
                                     std::size_t alphabet_n) {
  ArrangementResult res;
  const std::size_t Q = plan.square_count();

  if (Q == 0) {
    // Degenerate all-units matrix: no history at all.
    res.ttp = 1.0 / static_cast<double>(alphabet_n);
    res.regression = {0.0, res.ttp, 1.0, res.ttp, false};
    return res;
  }

  res.square_entropies.resize(Q);
  res.square_preds.resize(Q);
  parallel_for(Q, [&](std::size_t j) {
    const auto& rect = plan.square_rects[j];
    GridView g{fm.matrix.values().data() + rect.r0 * fm.cols() + rect.c0, rect.size, rect.size,
               fm.cols()};
    res.square_entropies[j] = entropy_rate_2d(g).bits_per_cell;
    res.square_preds[j] = solve_fano(res.square_entropies[j], alphabet_n);
  });

  res.stages = stage_sequence(res.square_preds, plan, alphabet_n);
  res.regression = extrapolate_ttp(res.stages, plan, alphabet_n);
  res.ttp = res.regression.ttp;
  return res;
}

}  // namespace

TtpResult ttp(const FilteredMatrix& fm, int row_orders, std::uint64_t seed) {
  if (fm.rows() == 0 || fm.cols() == 0) throw DataError("empty matrix");
  if (row_orders < 1) throw UsageError("row_orders must be >= 1");

  TtpResult out;
  out.alphabet_n = fm.matrix.alphabet_size();
  out.plan = split_squares(fm.rows(), fm.cols());

  ArrangementResult best{};
  for (int j = 0; j < row_orders; ++j) {
    ArrangementResult cur =
        j == 0 ? ttp_of_arrangement(fm, out.plan, out.alphabet_n)
               : ttp_of_arrangement(permute_rows(fm, derive_seed(seed, "row.order", j)), out.plan,
                                    out.alphabet_n);
    out.per_order.push_back(cur.ttp);
    if (j == 0 || cur.ttp > best.ttp) {
      best = std::move(cur);
      out.best_order = static_cast<std::size_t>(j);
    }
  }

  out.ttp = best.ttp;
  out.square_entropies = std::move(best.square_entropies);
  out.square_preds = std::move(best.square_preds);
  out.stages = std::move(best.stages);
  out.regression = best.regression;
  return out;
}

BaselineResult ttp_baseline(const FilteredMatrix& fm, int realizations, std::uint64_t seed) {
  if (realizations < 1) throw UsageError("need at least one baseline realization");

  BaselineResult res;
  res.per_run.assign(realizations, 0.0);
  parallel_for(realizations, [&](std::size_t r) {
    FilteredMatrix shuffled = shuffle_global(fm, derive_seed(seed, "baseline", r));
    res.per_run[r] = ttp(shuffled, 1, 0).ttp;
  });
  res.mean = std::accumulate(res.per_run.begin(), res.per_run.end(), 0.0) /
             static_cast<double>(realizations);
  return res;
}

Normalized normalize(double p, double b) {
  if (b == 1.0) {
    if (p == 1.0) return {1.0, true};
    return {0.0, false};  // division impossible
  }
  return {(p - b) / (1.0 - b), true};
}

PilResult pil(std::span<const Symbol> row) {
  if (row.size() < 2) throw UsageError("pil needs a row of length >= 2");
  std::set<Symbol> distinct(row.begin(), row.end());
  PilResult res;
  res.n_row = distinct.size();
  res.entropy = entropy_rate_1d(row).bits_per_cell;
  res.pil = solve_fano(res.entropy, res.n_row);
  return res;
}

TepResult tep_profile(const FilteredMatrix& fm, int realizations, std::uint64_t seed) {
  if (fm.rows() == 0) throw DataError("empty matrix");
  if (realizations < 1) throw UsageError("need at least one baseline realization");

  const std::size_t m = fm.rows();
  TepResult res;
  res.per_link.resize(m);

  parallel_for(m, [&](std::size_t r) {
    PilResult p = pil(fm.matrix.row(r));
    res.per_link[r].row = r;
    res.per_link[r].pil = p.pil;
    res.per_link[r].n_row = p.n_row;
  });

  // Baselines: PIL of within-row shuffles, averaged per row over realizations.
  std::vector<std::vector<double>> bl(realizations);
  parallel_for(realizations, [&](std::size_t k) {
    FilteredMatrix shuffled = shuffle_within_rows(fm, derive_seed(seed, "tep.baseline", k));
    bl[k].resize(m);
    for (std::size_t r = 0; r < m; ++r) bl[k][r] = pil(shuffled.matrix.row(r)).pil;
  });

  double tep_sum = 0.0, ntep_sum = 0.0;
  std::size_t ntep_count = 0;
  for (std::size_t r = 0; r < m; ++r) {
    double s = 0.0;
    for (int k = 0; k < realizations; ++k) s += bl[k][r];
    res.per_link[r].pil_bl = s / realizations;
    res.per_link[r].npil = normalize(res.per_link[r].pil, res.per_link[r].pil_bl);
    tep_sum += res.per_link[r].pil;
    if (res.per_link[r].npil.defined) {
      ntep_sum += res.per_link[r].npil.value;
      ++ntep_count;
    } else {
      ++res.undefined_npil;
    }
  }
  res.tep = tep_sum / static_cast<double>(m);
  if (ntep_count > 0)
    res.ntep = {ntep_sum / static_cast<double>(ntep_count), true};
  else
    res.ntep = {0.0, false};
  return res;
}

HammingSummary hamming_analysis(const FilteredMatrix& fm, std::size_t max_pairs, std::uint64_t seed,
                                std::span<const double> npil, const Normalized* nttp) {
  const std::size_t m = fm.rows();
  if (m < 2) throw DataError("hamming analysis needs at least two rows");
  if (max_pairs < 1) throw UsageError("max_pairs must be >= 1");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t all = m * (m - 1) / 2;
  if (all <= max_pairs) {
    pairs.reserve(all);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  } else {
    // Seeded rejection sampling of distinct unordered pairs.
    auto eng = make_engine(derive_seed(seed, "hamming"));
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (pairs.size() < max_pairs) {
      std::size_t i = pick(eng), j = pick(eng);
      if (i == j) continue;
      if (j < i) std::swap(i, j);
      if (!seen.insert({i, j}).second) continue;
      pairs.emplace_back(i, j);
    }
  }

  HammingSummary res;
  res.pair_count = pairs.size();
  res.h_values.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    auto [i, j] = pairs[k];
    auto ri = fm.matrix.row(i);
    auto rj = fm.matrix.row(j);
    std::size_t diff = 0;
    for (std::size_t c = 0; c < ri.size(); ++c)
      if (ri[c] != rj[c]) ++diff;
    res.h_values[k] = static_cast<double>(diff) / static_cast<double>(ri.size());
  });

  double sh = 0.0, se = 0.0;
  for (double h : res.h_values) {
    sh += h;
    se += std::exp(1.0 - h);
  }
  res.mean_h = sh / static_cast<double>(res.h_values.size());
  res.mean_exp = se / static_cast<double>(res.h_values.size());

  if (!npil.empty() && nttp != nullptr && nttp->defined) {
    res.ttp_minus_npil.reserve(npil.size());
    for (double v : npil) res.ttp_minus_npil.push_back(nttp->value - v);
  }
  return res;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw UsageError("pearson needs equal-length sequences");
  if (xs.size() < 2) throw UsageError("pearson needs at least two points");
  double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    vx += (xs[i] - mx) * (xs[i] - mx);
    vy += (ys[i] - my) * (ys[i] - my);
  }
  if (vx <= 0 || vy <= 0) throw NumericError("zero variance");
  return cov / std::sqrt(vx * vy);
}

ProfileResult profile(const Matrix& m, const ProfileParams& params) {
  ProfileResult res;
  res.params = params;
  res.input_rows = m.rows();
  res.input_cols = m.cols();
  res.input_alphabet = m.alphabet_size();

  FilteredMatrix fm = filter_matrix(m, params.filter);
  res.kept_rows = fm.rows();
  res.filtered_alphabet = fm.matrix.alphabet_size();
  res.link_labels.reserve(fm.rows());
  for (std::size_t r = 0; r < fm.rows(); ++r) {
    if (fm.matrix.has_link_ids()) {
      const LinkId& id = fm.matrix.link_ids()[r];
      res.link_labels.push_back(std::to_string(id.src) + (fm.matrix.directed() ? "->" : "-") +
                                std::to_string(id.dst));
    } else {
      res.link_labels.push_back("r" + std::to_string(fm.kept_rows[r]));
    }
  }

  res.ttp = ttp(fm, params.row_orders, params.seed);
  res.baseline = ttp_baseline(fm, params.baseline_runs, params.seed);
  res.nttp = normalize(res.ttp.ttp, res.baseline.mean);
  res.tep = tep_profile(fm, params.baseline_runs, params.seed);

  if (params.with_hamming && fm.rows() >= 2) {
    std::vector<double> npil;
    npil.reserve(res.tep.per_link.size());
    for (const auto& l : res.tep.per_link) npil.push_back(l.npil.defined ? l.npil.value : 0.0);
    res.hamming = hamming_analysis(fm, params.max_pairs, params.seed, npil, &res.nttp);
    res.has_hamming = true;
  }
  return res;
}

}  // namespace tnp
