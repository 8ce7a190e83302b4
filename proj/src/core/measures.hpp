#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/congruency.hpp"
#include "core/entropy.hpp"
#include "core/markov.hpp"
#include "core/matrix.hpp"

namespace tnp {

/// Topological-temporal predictability of one row arrangement: split into
/// squares, per-square entropy -> Fano bound with the matrix alphabet, stage
/// sequence, linear extrapolation to a single square.
struct TtpResult {
  double ttp = 0.0;
  std::vector<double> per_order;  // TTP of each row arrangement tried
  std::size_t best_order = 0;
  std::size_t alphabet_n = 0;
  SplitPlan plan;
  std::vector<double> square_entropies;  // best arrangement, splitting order
  std::vector<double> square_preds;
  std::vector<StagePoint> stages;
  Extrapolation regression;
};

/// Arrangement 1 is the matrix as given; further arrangements are seeded
/// random row permutations, and the maximum TTP is reported.
TtpResult ttp(const FilteredMatrix& fm, int row_orders = 1, std::uint64_t seed = 1);

struct BaselineResult {
  double mean = 0.0;
  std::vector<double> per_run;
};

/// Mean TTP over seeded global shuffles of the matrix.
BaselineResult ttp_baseline(const FilteredMatrix& fm, int realizations = 40, std::uint64_t seed = 1);

/// Baseline normalization (p - b) / (1 - b); the b == 1 branches follow the
/// piecewise definition and the undefined state is reported, not thrown.
struct Normalized {
  double value = 0.0;
  bool defined = true;
};

Normalized normalize(double p, double b);

struct PilResult {
  double pil = 0.0;
  std::size_t n_row = 0;  // distinct symbols in the row
  double entropy = 0.0;
};

/// Per-link predictability from the 1D estimator with the row's own alphabet.
PilResult pil(std::span<const Symbol> row);

struct LinkProfile {
  std::size_t row = 0;
  double pil = 0.0;
  double pil_bl = 0.0;
  Normalized npil;
  std::size_t n_row = 0;
};

struct TepResult {
  double tep = 0.0;
  Normalized ntep;
  std::size_t undefined_npil = 0;  // links skipped in the NTeP mean
  std::vector<LinkProfile> per_link;
};

/// TeP = mean PIL; baselines from within-row shuffles; NTeP = mean NPIL.
TepResult tep_profile(const FilteredMatrix& fm, int realizations = 40, std::uint64_t seed = 1);

struct HammingSummary {
  std::size_t pair_count = 0;
  std::vector<double> h_values;  // sampled normalized distances
  double mean_h = 0.0;
  double mean_exp = 0.0;  // mean of e^(1-h)
  std::vector<double> ttp_minus_npil;  // per link, when NTTP/NPIL supplied
};

/// Normalized Hamming distances over sampled row pairs (all pairs when they
/// fit in max_pairs). When per-link NPIL values and a defined NTTP are
/// passed, the per-link NTTP - NPIL column is filled for cross-network
/// correlation.
HammingSummary hamming_analysis(const FilteredMatrix& fm, std::size_t max_pairs, std::uint64_t seed,
                                std::span<const double> npil = {}, const Normalized* nttp = nullptr);

double pearson(std::span<const double> xs, std::span<const double> ys);

struct ProfileParams {
  FilterParams filter;
  int row_orders = 1;
  int baseline_runs = 40;
  std::uint64_t seed = 1;
  bool with_hamming = false;
  std::size_t max_pairs = 100000;
};

/// End-to-end report over an unfiltered matrix: filter, TTP with its shuffled
/// baseline, NTTP, the per-link temporal profile, optionally the Hamming
/// summary.
struct ProfileResult {
  std::size_t input_rows = 0, input_cols = 0, input_alphabet = 0;
  std::size_t kept_rows = 0;
  std::size_t filtered_alphabet = 0;
  std::vector<std::string> link_labels;  // per kept row
  TtpResult ttp;
  BaselineResult baseline;
  Normalized nttp;
  TepResult tep;
  bool has_hamming = false;
  HammingSummary hamming;
  ProfileParams params;
};

ProfileResult profile(const Matrix& m, const ProfileParams& params);

}  // namespace tnp
