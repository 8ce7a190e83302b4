#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tnp {

using Symbol = std::int32_t;

/// One interaction event: a (src, dst) link active at `time` with a weight.
struct EventRecord {
  double time = 0.0;
  std::int64_t src = 0;
  std::int64_t dst = 0;
  double weight = 1.0;
};

enum class Aggregation { Count, Sum, Max };

struct LinkId {
  std::int64_t src = 0;
  std::int64_t dst = 0;
  auto operator<=>(const LinkId&) const = default;
};

/// The expanded matrix M: one row per potential link, one column per
/// snapshot. Cell values are non-negative integer symbols, 0 meaning the
/// link is absent in that snapshot.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, bool directed, bool zero_reserved = false);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool directed() const { return directed_; }

  Symbol at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  Symbol& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  std::span<const Symbol> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
  std::span<Symbol> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  const std::vector<Symbol>& values() const { return values_; }
  std::vector<Symbol>& values() { return values_; }

  /// Sorted distinct symbols. When the matrix was built from event data the
  /// absent-link symbol 0 is kept as a member even if every cell is active.
  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  bool zero_reserved() const { return zero_reserved_; }

  /// Recomputes the alphabet from cell contents; call after editing values.
  void recompute_alphabet();

  const std::vector<LinkId>& link_ids() const { return link_ids_; }
  void set_link_ids(std::vector<LinkId> ids);
  bool has_link_ids() const { return !link_ids_.empty(); }

private:
  std::size_t rows_ = 0, cols_ = 0;
  bool directed_ = true;
  bool zero_reserved_ = false;
  std::vector<Symbol> values_;
  std::vector<Symbol> alphabet_;
  std::vector<LinkId> link_ids_;
};

Matrix ingest_events(std::span<const EventRecord> events, double bin_width, bool directed,
                     Aggregation aggregation = Aggregation::Count);

/// Maps nonzero cells to quantile ranks 1..levels (zeros untouched). When
/// the number of distinct nonzero values does not exceed `levels` the values
/// are simply relabeled by rank.
Matrix quantize_weights(const Matrix& m, int levels);

/// Fraction of nonzero cells per row.
std::vector<double> activation_rates(const Matrix& m);

enum class OrderPolicy { DescendingActivation, Explicit };

/// The filtered matrix M~: rows of M sorted by activation and cut down to
/// the active part, with provenance of which original rows were kept.
struct FilteredMatrix {
  Matrix matrix;
  std::vector<double> activation;        // per kept row, same order as matrix
  std::vector<std::size_t> kept_rows;    // original row indices
  OrderPolicy order_policy = OrderPolicy::DescendingActivation;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }
};

struct FilterParams {
  double mass_frac = 0.6;
  double act_thresh = 0.1;
  std::size_t m_theta = 1000;
};

/// Keeps the most active rows: the smallest descending-activation prefix
/// holding `mass_frac` of the total activation, or, when that prefix has at
/// least m_theta rows, every row with activation >= act_thresh.
FilteredMatrix filter_matrix(const Matrix& m, const FilterParams& params = {});

/// Wraps a matrix as-is (activation computed, row order untouched). Used for
/// matrices loaded from files that are already in analysis order.
FilteredMatrix as_filtered(const Matrix& m);

FilteredMatrix permute_rows(const FilteredMatrix& fm, std::uint64_t seed);
FilteredMatrix shuffle_global(const FilteredMatrix& fm, std::uint64_t seed);
FilteredMatrix shuffle_within_rows(const FilteredMatrix& fm, std::uint64_t seed);
FilteredMatrix drop_links(const FilteredMatrix& fm, double fraction, std::uint64_t seed);
/// Contiguous submatrix [r0, r1) x [c0, c1); activation recomputed.
FilteredMatrix slice(const FilteredMatrix& fm, std::size_t r0, std::size_t r1, std::size_t c0,
                     std::size_t c1);

// --- file formats ---

/// Event file: one `time src dst [weight]` per line, comma- or
/// whitespace-separated; '#' starts a comment line.
std::vector<EventRecord> read_event_file(std::istream& in);
std::vector<EventRecord> read_event_file_path(const std::string& path);

/// Matrix file: header `m T N directed`, then m rows of T integers.
Matrix read_matrix_file(std::istream& in);
Matrix read_matrix_file_path(const std::string& path);
void write_matrix_file(std::ostream& out, const Matrix& m);
void write_matrix_file_path(const std::string& path, const Matrix& m);

}  // namespace tnp
