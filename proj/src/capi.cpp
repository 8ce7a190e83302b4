#include "tnp.h"

#include <cstring>
#include <json.hpp>
#include <string>

#include "core/error.hpp"
#include "core/markov.hpp"
#include "core/matrix.hpp"
#include "core/measures.hpp"
#include "core/report.hpp"
#include "core/synth.hpp"

namespace {

thread_local std::string g_last_error;

tnp_status capture(const std::exception& e, tnp_status fallback) {
  g_last_error = e.what();
  if (const auto* err = dynamic_cast<const tnp::Error*>(&e))
    return static_cast<tnp_status>(static_cast<int>(err->kind()));
  return fallback;
}

template <typename Fn>
tnp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TNP_OK;
  } catch (const std::exception& e) {
    return capture(e, TNP_ERROR_NUMERIC);
  }
}

}  // namespace

struct tnp_matrix {
  tnp::Matrix m;
  // Filter provenance, kept when the handle came from tnp_matrix_filter so
  // later transforms preserve activation bookkeeping.
  tnp::FilteredMatrix fm;
  bool filtered = false;

  const tnp::Matrix& matrix() const { return filtered ? fm.matrix : m; }
  tnp::FilteredMatrix as_filtered_view() const { return filtered ? fm : tnp::as_filtered(m); }
};

struct tnp_report {
  std::string json_text;
  nlohmann::json parsed;
};

namespace {

tnp_matrix* wrap(tnp::Matrix m) {
  auto* h = new tnp_matrix;
  h->m = std::move(m);
  return h;
}

tnp_matrix* wrap(tnp::FilteredMatrix fm) {
  auto* h = new tnp_matrix;
  h->fm = std::move(fm);
  h->filtered = true;
  return h;
}

tnp_report* wrap_report(std::string json_text) {
  auto* r = new tnp_report;
  r->parsed = nlohmann::json::parse(json_text);
  r->json_text = std::move(json_text);
  return r;
}

void require(bool cond, const char* msg) {
  if (!cond) throw tnp::UsageError(msg);
}

}  // namespace

extern "C" {

const char* tnp_version(void) { return tnp::kToolVersion; }

const char* tnp_last_error(void) { return g_last_error.c_str(); }

tnp_status tnp_ingest_events_file(const char* path, double bin_width, int directed,
                                  const char* aggregation, tnp_matrix** out) {
  return guarded([&] {
    require(path && out, "null argument");
    tnp::Aggregation agg = tnp::Aggregation::Count;
    if (aggregation != nullptr) {
      std::string a = aggregation;
      if (a == "count")
        agg = tnp::Aggregation::Count;
      else if (a == "sum")
        agg = tnp::Aggregation::Sum;
      else if (a == "max")
        agg = tnp::Aggregation::Max;
      else
        throw tnp::UsageError("unknown aggregation: " + a);
    }
    auto events = tnp::read_event_file_path(path);
    *out = wrap(tnp::ingest_events(events, bin_width, directed != 0, agg));
  });
}

tnp_status tnp_matrix_read_file(const char* path, tnp_matrix** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = wrap(tnp::read_matrix_file_path(path));
  });
}

tnp_status tnp_matrix_write_file(const tnp_matrix* m, const char* path) {
  return guarded([&] {
    require(m && path, "null argument");
    tnp::write_matrix_file_path(path, m->matrix());
  });
}

void tnp_matrix_free(tnp_matrix* m) { delete m; }

size_t tnp_matrix_rows(const tnp_matrix* m) { return m ? m->matrix().rows() : 0; }
size_t tnp_matrix_cols(const tnp_matrix* m) { return m ? m->matrix().cols() : 0; }
size_t tnp_matrix_alphabet_size(const tnp_matrix* m) { return m ? m->matrix().alphabet_size() : 0; }
int tnp_matrix_directed(const tnp_matrix* m) { return m && m->matrix().directed() ? 1 : 0; }

int32_t tnp_matrix_value(const tnp_matrix* m, size_t row, size_t col) {
  if (!m || row >= m->matrix().rows() || col >= m->matrix().cols()) return -1;
  return m->matrix().at(row, col);
}

tnp_status tnp_matrix_quantize(const tnp_matrix* m, int levels, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::quantize_weights(m->matrix(), levels));
  });
}

tnp_status tnp_matrix_filter(const tnp_matrix* m, double mass_frac, double act_thresh,
                             size_t m_theta, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    tnp::FilterParams p;
    p.mass_frac = mass_frac;
    p.act_thresh = act_thresh;
    p.m_theta = m_theta;
    *out = wrap(tnp::filter_matrix(m->matrix(), p));
  });
}

tnp_status tnp_matrix_permute_rows(const tnp_matrix* m, uint64_t seed, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::permute_rows(m->as_filtered_view(), seed));
  });
}

tnp_status tnp_matrix_shuffle_global(const tnp_matrix* m, uint64_t seed, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::shuffle_global(m->as_filtered_view(), seed));
  });
}

tnp_status tnp_matrix_shuffle_within_rows(const tnp_matrix* m, uint64_t seed, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::shuffle_within_rows(m->as_filtered_view(), seed));
  });
}

tnp_status tnp_matrix_drop_links(const tnp_matrix* m, double fraction, uint64_t seed,
                                 tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::drop_links(m->as_filtered_view(), fraction, seed));
  });
}

tnp_status tnp_matrix_slice(const tnp_matrix* m, size_t row0, size_t row1, size_t col0,
                            size_t col1, tnp_matrix** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = wrap(tnp::slice(m->as_filtered_view(), row0, row1, col0, col1));
  });
}

tnp_status tnp_gen_small_world(size_t n_nodes, double rewire_p, size_t snapshots, uint64_t seed,
                               tnp_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    tnp::SmallWorldParams p{n_nodes, rewire_p, snapshots, seed};
    *out = wrap(tnp::gen_small_world(p));
  });
}

tnp_status tnp_gen_tsbm(size_t communities, size_t n_nodes, size_t degree, size_t snapshots,
                        double beta, double gamma, size_t alphabet_size, uint64_t seed,
                        tnp_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    tnp::TsbmParams p;
    p.communities = communities;
    p.n_nodes = n_nodes;
    p.degree = degree;
    p.snapshots = snapshots;
    p.beta = beta;
    p.gamma = gamma;
    p.alphabet_size = alphabet_size;
    p.seed = seed;
    *out = wrap(tnp::gen_tsbm(p));
  });
}

tnp_status tnp_gen_long_range(size_t rows, size_t cols, double gamma_x, double gamma_y,
                              size_t levels, uint64_t seed, tnp_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    tnp::LongRangeParams p{rows, cols, gamma_x, gamma_y, levels, seed};
    *out = wrap(tnp::gen_long_range(p));
  });
}

tnp_status tnp_entropy_rate_2d(const tnp_matrix* m, double* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = tnp::entropy_rate_2d(m->matrix()).bits_per_cell;
  });
}

tnp_status tnp_entropy_rate_1d(const tnp_matrix* m, size_t row, double* out) {
  return guarded([&] {
    require(m && out, "null argument");
    require(row < m->matrix().rows(), "row out of range");
    *out = tnp::entropy_rate_1d(m->matrix().row(row)).bits_per_cell;
  });
}

tnp_status tnp_solve_fano(double entropy_bits, size_t alphabet_size, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = tnp::solve_fano(entropy_bits, alphabet_size);
  });
}

void tnp_profile_params_init(tnp_profile_params* params) {
  if (params == nullptr) return;
  params->mass_frac = 0.6;
  params->act_thresh = 0.1;
  params->m_theta = 1000;
  params->row_orders = 1;
  params->baseline_runs = 40;
  params->seed = 1;
  params->with_hamming = 0;
  params->max_pairs = 100000;
}

tnp_status tnp_profile(const tnp_matrix* m, const tnp_profile_params* params, tnp_report** out) {
  return guarded([&] {
    require(m && out, "null argument");
    tnp_profile_params defaults;
    tnp_profile_params_init(&defaults);
    const tnp_profile_params& p = params != nullptr ? *params : defaults;

    tnp::ProfileParams pp;
    pp.filter.mass_frac = p.mass_frac;
    pp.filter.act_thresh = p.act_thresh;
    pp.filter.m_theta = p.m_theta;
    pp.row_orders = p.row_orders;
    pp.baseline_runs = p.baseline_runs;
    pp.seed = p.seed;
    pp.with_hamming = p.with_hamming != 0;
    pp.max_pairs = p.max_pairs;

    tnp::ProfileResult res = tnp::profile(m->matrix(), pp);
    *out = wrap_report(tnp::profile_report_json(res));
  });
}

tnp_status tnp_ttp(const tnp_matrix* m, int row_orders, uint64_t seed, double* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = tnp::ttp(m->as_filtered_view(), row_orders, seed).ttp;
  });
}

tnp_status tnp_ttp_baseline(const tnp_matrix* m, int realizations, uint64_t seed, double* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = tnp::ttp_baseline(m->as_filtered_view(), realizations, seed).mean;
  });
}

tnp_status tnp_markov(const tnp_matrix* m, int order, double train_frac, int row_orders,
                      uint64_t seed, double mass_frac, double act_thresh, size_t m_theta,
                      tnp_report** out) {
  return guarded([&] {
    require(m && out, "null argument");
    tnp::FilterParams fp;
    fp.mass_frac = mass_frac;
    fp.act_thresh = act_thresh;
    fp.m_theta = m_theta;
    tnp::FilteredMatrix fm = tnp::filter_matrix(m->matrix(), fp);
    tnp::MarkovResult mk = tnp::markov_accuracy(fm, order, train_frac, seed);
    tnp::TtpResult tt = tnp::ttp(fm, row_orders, seed);
    *out = wrap_report(tnp::markov_report_json(mk, tt, tt.ttp - mk.accuracy));
  });
}

const char* tnp_report_json(const tnp_report* report) {
  return report ? report->json_text.c_str() : "";
}

tnp_status tnp_report_value(const tnp_report* report, const char* json_pointer, double* out) {
  return guarded([&] {
    require(report && json_pointer && out, "null argument");
    const auto& v = report->parsed.at(nlohmann::json::json_pointer(json_pointer));
    if (!v.is_number()) throw tnp::UsageError("field is not numeric");
    *out = v.get<double>();
  });
}

void tnp_report_free(tnp_report* report) { delete report; }

}  // extern "C"
