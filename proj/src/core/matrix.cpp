#include "core/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tnp {

Matrix::Matrix(std::size_t rows, std::size_t cols, bool directed, bool zero_reserved)
    : rows_(rows), cols_(cols), directed_(directed), zero_reserved_(zero_reserved),
      values_(rows * cols, 0) {
  recompute_alphabet();
}

void Matrix::recompute_alphabet() {
  alphabet_ = values_;
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  if (zero_reserved_ && (alphabet_.empty() || alphabet_.front() != 0))
    alphabet_.insert(alphabet_.begin(), 0);
}

void Matrix::set_link_ids(std::vector<LinkId> ids) {
  if (!ids.empty() && ids.size() != rows_) throw UsageError("link id count does not match row count");
  link_ids_ = std::move(ids);
}

namespace {

Symbol checked_symbol(double v) {
  if (!(v >= 0) || v > static_cast<double>(std::numeric_limits<Symbol>::max()))
    throw DataError("aggregated weight out of symbol range");
  return static_cast<Symbol>(std::llround(v));
}

}  // namespace

Matrix ingest_events(std::span<const EventRecord> events, double bin_width, bool directed,
                     Aggregation aggregation) {
  if (events.empty()) throw DataError("empty corpus");
  if (!(bin_width > 0)) throw UsageError("bin width must be positive");

  double t_min = events.front().time;
  for (const auto& e : events) {
    if (!std::isfinite(e.time) || e.time < 0) throw DataError("event time must be a non-negative number");
    if (!std::isfinite(e.weight) || e.weight < 0) throw DataError("event weight must be non-negative");
    t_min = std::min(t_min, e.time);
  }

  // Bins are fixed-width, left-closed, anchored at the earliest event.
  auto bin_of = [&](double t) { return static_cast<std::size_t>(std::floor((t - t_min) / bin_width)); };

  std::map<LinkId, std::size_t> row_of;
  auto canonical = [&](std::int64_t s, std::int64_t d) {
    if (!directed && d < s) std::swap(s, d);
    return LinkId{s, d};
  };
  for (const auto& e : events) row_of.emplace(canonical(e.src, e.dst), 0);

  std::size_t m = 0;
  std::vector<LinkId> ids;
  ids.reserve(row_of.size());
  for (auto& [id, idx] : row_of) {
    idx = m++;
    ids.push_back(id);
  }

  std::size_t T = 0;
  for (const auto& e : events) T = std::max(T, bin_of(e.time) + 1);

  // Aggregate in double, round to a symbol at the end.
  std::vector<double> acc(m * T, 0.0);
  std::vector<bool> seen(m * T, false);
  for (const auto& e : events) {
    std::size_t idx = row_of.at(canonical(e.src, e.dst)) * T + bin_of(e.time);
    switch (aggregation) {
      case Aggregation::Count: acc[idx] += 1.0; break;
      case Aggregation::Sum: acc[idx] += e.weight; break;
      case Aggregation::Max:
        acc[idx] = seen[idx] ? std::max(acc[idx], e.weight) : e.weight;
        break;
    }
    seen[idx] = true;
  }

  Matrix out(m, T, directed, /*zero_reserved=*/true);
  for (std::size_t i = 0; i < m * T; ++i)
    out.values()[i] = seen[i] ? checked_symbol(acc[i]) : 0;
  out.recompute_alphabet();
  out.set_link_ids(std::move(ids));
  return out;
}

Matrix quantize_weights(const Matrix& m, int levels) {
  if (levels < 1) throw UsageError("quantization levels must be >= 1");

  std::vector<Symbol> nonzero;
  nonzero.reserve(m.values().size());
  for (Symbol v : m.values())
    if (v != 0) nonzero.push_back(v);
  Matrix out = m;
  if (nonzero.empty()) return out;

  std::sort(nonzero.begin(), nonzero.end());
  std::vector<Symbol> distinct = nonzero;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::map<Symbol, Symbol> level_of;
  if (distinct.size() <= static_cast<std::size_t>(levels)) {
    // Relabel by rank; the partition into value classes is unchanged.
    for (std::size_t j = 0; j < distinct.size(); ++j)
      level_of[distinct[j]] = static_cast<Symbol>(j + 1);
  } else {
    // Quantile split over cell mass, lower-median convention: a value's level
    // is ceil(levels * cum / nnz) where cum counts cells <= value.
    std::size_t nnz = nonzero.size();
    for (Symbol v : distinct) {
      std::size_t cum = std::upper_bound(nonzero.begin(), nonzero.end(), v) - nonzero.begin();
      auto lvl = static_cast<Symbol>((cum * static_cast<std::size_t>(levels) + nnz - 1) / nnz);
      level_of[v] = std::max<Symbol>(1, lvl);
    }
  }

  for (Symbol& v : out.values())
    if (v != 0) v = level_of.at(v);
  out.recompute_alphabet();
  return out;
}

std::vector<double> activation_rates(const Matrix& m) {
  std::vector<double> a(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t nz = 0;
    for (Symbol v : m.row(r))
      if (v != 0) ++nz;
    a[r] = m.cols() ? static_cast<double>(nz) / static_cast<double>(m.cols()) : 0.0;
  }
  return a;
}

namespace {

FilteredMatrix take_rows(const Matrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<double>& act, OrderPolicy policy) {
  Matrix kept(rows.size(), m.cols(), m.directed());
  std::vector<LinkId> ids;
  if (m.has_link_ids()) ids.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = m.row(rows[i]);
    std::copy(src.begin(), src.end(), kept.row(i).begin());
    if (m.has_link_ids()) ids.push_back(m.link_ids()[rows[i]]);
  }
  kept.recompute_alphabet();
  kept.set_link_ids(std::move(ids));
  FilteredMatrix fm;
  fm.matrix = std::move(kept);
  fm.activation.reserve(rows.size());
  for (std::size_t r : rows) fm.activation.push_back(act[r]);
  fm.kept_rows = rows;
  fm.order_policy = policy;
  return fm;
}

}  // namespace

FilteredMatrix filter_matrix(const Matrix& m, const FilterParams& params) {
  if (!(params.mass_frac > 0 && params.mass_frac <= 1)) throw UsageError("mass_frac must be in (0, 1]");
  if (!(params.act_thresh >= 0 && params.act_thresh <= 1)) throw UsageError("act_thresh must be in [0, 1]");
  if (params.m_theta < 1) throw UsageError("m_theta must be >= 1");

  std::vector<double> act = activation_rates(m);
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (act[a] != act[b]) return act[a] > act[b];
    return a < b;
  });

  double total = std::accumulate(act.begin(), act.end(), 0.0);
  if (total <= 0) throw DataError("no active links");

  double threshold = params.mass_frac * total;
  double cum = 0.0;
  std::size_t m60 = order.size();
  for (std::size_t i = 0; i < order.size(); ++i) {
    cum += act[order[i]];
    if (cum >= threshold - 1e-12 * total) {
      m60 = i + 1;
      break;
    }
  }

  std::size_t keep;
  if (m60 < params.m_theta) {
    keep = m60;
  } else {
    keep = 0;
    while (keep < order.size() && act[order[keep]] >= params.act_thresh) ++keep;
  }
  keep = std::max<std::size_t>(keep, 1);

  std::vector<std::size_t> rows(order.begin(), order.begin() + keep);
  return take_rows(m, rows, act, OrderPolicy::DescendingActivation);
}

FilteredMatrix as_filtered(const Matrix& m) {
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return take_rows(m, rows, activation_rates(m), OrderPolicy::Explicit);
}

FilteredMatrix permute_rows(const FilteredMatrix& fm, std::uint64_t seed) {
  std::vector<std::size_t> perm(fm.rows());
  std::iota(perm.begin(), perm.end(), 0);
  auto eng = make_engine(seed);
  std::shuffle(perm.begin(), perm.end(), eng);

  FilteredMatrix out;
  Matrix kept(fm.rows(), fm.cols(), fm.matrix.directed());
  std::vector<LinkId> ids;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto src = fm.matrix.row(perm[i]);
    std::copy(src.begin(), src.end(), kept.row(i).begin());
    if (fm.matrix.has_link_ids()) ids.push_back(fm.matrix.link_ids()[perm[i]]);
    out.activation.push_back(fm.activation[perm[i]]);
    out.kept_rows.push_back(fm.kept_rows[perm[i]]);
  }
  kept.recompute_alphabet();
  kept.set_link_ids(std::move(ids));
  out.matrix = std::move(kept);
  out.order_policy = OrderPolicy::Explicit;
  return out;
}

FilteredMatrix shuffle_global(const FilteredMatrix& fm, std::uint64_t seed) {
  FilteredMatrix out = fm;
  auto eng = make_engine(seed);
  std::shuffle(out.matrix.values().begin(), out.matrix.values().end(), eng);
  out.matrix.recompute_alphabet();
  out.activation = activation_rates(out.matrix);
  out.order_policy = OrderPolicy::Explicit;
  return out;
}

FilteredMatrix shuffle_within_rows(const FilteredMatrix& fm, std::uint64_t seed) {
  FilteredMatrix out = fm;
  auto eng = make_engine(seed);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.matrix.row(r);
    std::shuffle(row.begin(), row.end(), eng);
  }
  out.matrix.recompute_alphabet();
  return out;  // per-row histograms preserved, activation unchanged
}

FilteredMatrix drop_links(const FilteredMatrix& fm, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0 && fraction < 1)) throw UsageError("drop fraction must be in [0, 1)");
  FilteredMatrix out = fm;
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < out.matrix.values().size(); ++i)
    if (out.matrix.values()[i] != 0) nz.push_back(i);
  std::size_t k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(nz.size())));
  if (k > 0) {
    auto eng = make_engine(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::sample(nz.begin(), nz.end(), std::back_inserter(chosen), k, eng);
    for (std::size_t i : chosen) out.matrix.values()[i] = 0;
    out.matrix.recompute_alphabet();
    out.activation = activation_rates(out.matrix);
  }
  return out;
}

FilteredMatrix slice(const FilteredMatrix& fm, std::size_t r0, std::size_t r1, std::size_t c0,
                     std::size_t c1) {
  if (r0 >= r1 || c0 >= c1) throw UsageError("empty slice range");
  if (r1 > fm.rows() || c1 > fm.cols()) throw UsageError("slice range out of bounds");

  Matrix kept(r1 - r0, c1 - c0, fm.matrix.directed());
  std::vector<LinkId> ids;
  for (std::size_t r = r0; r < r1; ++r) {
    auto src = fm.matrix.row(r);
    std::copy(src.begin() + c0, src.begin() + c1, kept.row(r - r0).begin());
    if (fm.matrix.has_link_ids()) ids.push_back(fm.matrix.link_ids()[r]);
  }
  kept.recompute_alphabet();
  kept.set_link_ids(std::move(ids));

  FilteredMatrix out;
  out.matrix = std::move(kept);
  out.activation = activation_rates(out.matrix);
  out.kept_rows.assign(fm.kept_rows.begin() + r0, fm.kept_rows.begin() + r1);
  out.order_policy = OrderPolicy::Explicit;
  return out;
}

// --- file formats ---

std::vector<EventRecord> read_event_file(std::istream& in) {
  std::vector<EventRecord> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream ls(cleaned);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first[0] == '#') continue;

    EventRecord e;
    std::int64_t src, dst;
    std::istringstream fs(first);
    std::string tail;
    if (!(fs >> e.time) || fs.rdbuf()->in_avail() != 0 || !(ls >> src >> dst))
      throw DataError("malformed event at line " + std::to_string(lineno) + ": " + line);
    e.src = src;
    e.dst = dst;
    if (ls >> e.weight) {
      if (ls >> tail) throw DataError("malformed event at line " + std::to_string(lineno) + ": " + line);
    } else {
      e.weight = 1.0;
    }
    if (!std::isfinite(e.time) || e.time < 0)
      throw DataError("negative or non-finite time at line " + std::to_string(lineno));
    if (!std::isfinite(e.weight) || e.weight < 0)
      throw DataError("negative weight at line " + std::to_string(lineno));
    events.push_back(e);
  }
  return events;
}

std::vector<EventRecord> read_event_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open event file: " + path);
  return read_event_file(in);
}

Matrix read_matrix_file(std::istream& in) {
  std::size_t m, T, N;
  int directed;
  if (!(in >> m >> T >> N >> directed) || (directed != 0 && directed != 1))
    throw DataError("bad matrix header (expected: m T N directed)");
  if (m < 1 || T < 1) throw DataError("matrix dimensions must be >= 1");

  Matrix out(m, T, directed == 1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < T; ++c) {
      long long v;
      if (!(in >> v) || v < 0 || v > std::numeric_limits<Symbol>::max())
        throw DataError("bad matrix cell at row " + std::to_string(r));
      out.at(r, c) = static_cast<Symbol>(v);
    }
  out.recompute_alphabet();

  std::size_t present = out.alphabet_size();
  bool has_zero = !out.alphabet().empty() && out.alphabet().front() == 0;
  if (N == present + 1 && !has_zero) {
    // Writer reserved the absent-link symbol; keep it through round trips.
    Matrix reserved(m, T, directed == 1, /*zero_reserved=*/true);
    reserved.values() = out.values();
    reserved.recompute_alphabet();
    return reserved;
  }
  if (N != present)
    throw DataError("matrix header N=" + std::to_string(N) + " does not match " +
                    std::to_string(present) + " distinct values");
  return out;
}

Matrix read_matrix_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open matrix file: " + path);
  return read_matrix_file(in);
}

void write_matrix_file(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.alphabet_size() << ' ' << (m.directed() ? 1 : 0)
      << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << '\n';
  }
}

void write_matrix_file_path(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write matrix file: " + path);
  write_matrix_file(out, m);
}

}  // namespace tnp
