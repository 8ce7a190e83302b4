#include "core/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "core/error.hpp"

namespace tnp {

std::uint64_t LambdaField::sum() const {
  std::uint64_t s = 0;
  for (auto v : values) s += v;
  return s;
}

std::uint64_t LambdaField::sum_squares() const {
  std::uint64_t s = 0;
  for (auto v : values) s += static_cast<std::uint64_t>(v) * v;
  return s;
}

std::uint64_t LambdaSeq::sum() const {
  std::uint64_t s = 0;
  for (auto v : values) s += v;
  return s;
}

namespace {

// Positions are refined level by level: two cells share a class id at level k
// iff their k x k blocks are identical. A level-(k+1) class id is formed from
// the four level-k ids covering the (k+1)-block, so refinement needs no cell
// comparisons. Within a class, sorted row-major, a prefix min over column
// indices decides whether an earlier componentwise-dominating anchor exists.
struct RefineItem {
  std::uint32_t k1, k2, k3, k4;  // class ids of the four covering sub-blocks
  std::uint32_t pos;

  bool operator<(const RefineItem& o) const {
    if (k1 != o.k1) return k1 < o.k1;
    if (k2 != o.k2) return k2 < o.k2;
    if (k3 != o.k3) return k3 < o.k3;
    if (k4 != o.k4) return k4 < o.k4;
    return pos < o.pos;
  }
  bool same_class(const RefineItem& o) const {
    return k1 == o.k1 && k2 == o.k2 && k3 == o.k3 && k4 == o.k4;
  }
};

}  // namespace

LambdaField lambda_2d(GridView g) {
  if (g.rows != g.cols) throw UsageError("lambda_2d requires a square matrix");
  if (g.rows == 0) throw UsageError("lambda_2d requires a non-empty matrix");
  const std::size_t n = g.rows;

  LambdaField out;
  out.rows = out.cols = n;
  out.values.assign(n * n, 0);
  out.capped.assign(n * n, 0);

  std::vector<std::uint8_t> alive(n * n, 1);
  std::size_t alive_count = n * n;

  // Level 1: classes keyed by the cell symbol itself.
  std::vector<RefineItem> items;
  items.reserve(n * n);
  for (std::uint32_t pos = 0; pos < n * n; ++pos) {
    auto sym = static_cast<std::uint32_t>(g.at(pos / n, pos % n));
    items.push_back({sym, 0, 0, 0, pos});
  }
  std::sort(items.begin(), items.end());

  std::vector<std::uint32_t> cid(n * n, 0);

  for (std::uint32_t k = 1;; ++k) {
    // Dominance scan per class run; items are (class, pos)-sorted so members
    // appear in row-major order. Dead members still serve as anchors.
    std::size_t run_begin = 0;
    while (run_begin < items.size()) {
      std::size_t run_end = run_begin + 1;
      while (run_end < items.size() && items[run_end].same_class(items[run_begin])) ++run_end;
      std::uint32_t min_col = std::numeric_limits<std::uint32_t>::max();
      for (std::size_t i = run_begin; i < run_end; ++i) {
        std::uint32_t pos = items[i].pos;
        std::uint32_t c = pos % n;
        if (alive[pos] && min_col > c) {
          out.values[pos] = k;
          alive[pos] = 0;
          --alive_count;
        }
        min_col = std::min(min_col, c);
      }
      run_begin = run_end;
    }
    if (alive_count == 0) break;

    // Cells on the level-k feasibility boundary cannot grow their block.
    for (const auto& it : items) {
      std::uint32_t pos = it.pos;
      if (!alive[pos]) continue;
      std::uint32_t r = pos / n, c = pos % n;
      if (r == k - 1 || c == k - 1) {
        out.values[pos] = k + 1;
        out.capped[pos] = 1;
        alive[pos] = 0;
        --alive_count;
      }
    }
    if (alive_count == 0) break;

    // Assign dense class ids in sorted order, then refine to level k+1.
    std::uint32_t next_id = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0 && !items[i].same_class(items[i - 1])) ++next_id;
      cid[items[i].pos] = next_id;
    }

    items.clear();
    for (std::uint32_t r = k; r < n; ++r)
      for (std::uint32_t c = k; c < n; ++c) {
        std::uint32_t pos = r * static_cast<std::uint32_t>(n) + c;
        items.push_back({cid[pos], cid[pos - n], cid[pos - 1], cid[pos - n - 1], pos});
      }
    std::sort(items.begin(), items.end());
  }
  return out;
}

LambdaSeq lambda_1d(std::span<const Symbol> series) {
  const std::size_t T = series.size();
  if (T == 0) throw UsageError("lambda_1d requires a non-empty series");

  LambdaSeq out;
  out.values.assign(T, 0);
  out.capped.assign(T, 0);

  std::vector<std::uint8_t> alive(T, 1);
  std::size_t alive_count = T;

  struct Item {
    std::uint32_t k1, k2, pos;
    bool operator<(const Item& o) const {
      if (k1 != o.k1) return k1 < o.k1;
      if (k2 != o.k2) return k2 < o.k2;
      return pos < o.pos;
    }
    bool same_class(const Item& o) const { return k1 == o.k1 && k2 == o.k2; }
  };

  std::vector<Item> items;
  items.reserve(T);
  for (std::uint32_t t = 0; t < T; ++t)
    items.push_back({static_cast<std::uint32_t>(series[t]), 0, t});
  std::sort(items.begin(), items.end());

  std::vector<std::uint32_t> cid(T, 0);

  for (std::uint32_t k = 1;; ++k) {
    std::size_t run_begin = 0;
    while (run_begin < items.size()) {
      std::size_t run_end = run_begin + 1;
      while (run_end < items.size() && items[run_end].same_class(items[run_begin])) ++run_end;
      // Only the first member of a class has no earlier occurrence; every
      // later member is dominated by it (dead or alive).
      std::uint32_t pos = items[run_begin].pos;
      if (alive[pos]) {
        out.values[pos] = k;
        out.capped[pos] = (k == pos + 1);
        alive[pos] = 0;
        --alive_count;
      }
      run_begin = run_end;
    }
    if (alive_count == 0) break;

    std::uint32_t next_id = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0 && !items[i].same_class(items[i - 1])) ++next_id;
      cid[items[i].pos] = next_id;
    }
    items.clear();
    for (std::uint32_t t = k; t < T; ++t) items.push_back({cid[t], cid[t - 1], t});
    std::sort(items.begin(), items.end());
  }
  return out;
}

EntropyEstimate entropy_rate_2d(GridView g) {
  if (g.rows != g.cols || g.rows < 2) throw UsageError("degenerate matrix: entropy_rate_2d needs a square grid with n >= 2");
  LambdaField lf = lambda_2d(g);
  double n2 = static_cast<double>(g.rows) * static_cast<double>(g.rows);
  double h = n2 * std::log2(n2) / static_cast<double>(lf.sum_squares());
  return {h, static_cast<std::size_t>(n2), EstimatorKind::Lz2d};
}

EntropyEstimate entropy_rate_1d(std::span<const Symbol> series) {
  if (series.size() < 2) throw UsageError("entropy_rate_1d needs a series of length >= 2");
  LambdaSeq ls = lambda_1d(series);
  double T = static_cast<double>(series.size());
  double h = T * std::log2(T) / static_cast<double>(ls.sum());
  return {h, series.size(), EstimatorKind::Lz1d};
}

EntropyEstimate block_entropy_oracle(GridView g, std::size_t k) {
  if (k < 1 || k > g.rows || k > g.cols) throw UsageError("block size exceeds matrix dimensions");
  std::size_t br = g.rows - k + 1, bc = g.cols - k + 1;

  std::vector<std::vector<Symbol>> blocks;
  blocks.reserve(br * bc);
  for (std::size_t r = 0; r < br; ++r)
    for (std::size_t c = 0; c < bc; ++c) {
      std::vector<Symbol> b;
      b.reserve(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) b.push_back(g.at(r + i, c + j));
      blocks.push_back(std::move(b));
    }
  std::sort(blocks.begin(), blocks.end());

  double total = static_cast<double>(blocks.size());
  double h = 0.0;
  std::size_t i = 0;
  while (i < blocks.size()) {
    std::size_t j = i + 1;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    double f = static_cast<double>(j - i) / total;
    h -= f * std::log2(f);
    i = j;
  }
  return {h / static_cast<double>(k * k), g.rows * g.cols, EstimatorKind::BlockOracle};
}

namespace {

double fano_entropy(double x, double log2_nm1) {
  double t = 0.0;
  if (x > 0 && x < 1) t = -(x * std::log2(x) + (1 - x) * std::log2(1 - x));
  return t + (1 - x) * log2_nm1;
}

}  // namespace

double solve_fano(double entropy_bits, std::size_t alphabet_size) {
  if (entropy_bits < 0) throw UsageError("entropy must be non-negative");
  if (alphabet_size < 1) throw UsageError("alphabet size must be >= 1");
  if (alphabet_size == 1) return 1.0;
  if (entropy_bits == 0) return 1.0;

  double n = static_cast<double>(alphabet_size);
  double log2_n = std::log2(n);
  if (entropy_bits >= log2_n) return 1.0 / n;

  // F is strictly decreasing on [1/N, 1] from log2 N to 0.
  double log2_nm1 = std::log2(n - 1.0);
  double lo = 1.0 / n, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (fano_entropy(mid, log2_nm1) > entropy_bits)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tnp
