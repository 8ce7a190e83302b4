#include "core/markov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace tnp {

namespace {

double row_accuracy(std::span<const Symbol> row, int order, double train_frac, std::uint64_t seed,
                    std::size_t* tested) {
  const std::size_t T = row.size();
  const auto l = static_cast<std::size_t>(order);
  const std::size_t windows = T - l;

  std::vector<std::size_t> idx(windows);
  std::iota(idx.begin(), idx.end(), 0);
  auto eng = make_engine(seed);
  std::shuffle(idx.begin(), idx.end(), eng);

  auto n_train = static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(windows)));

  std::map<std::vector<Symbol>, std::map<Symbol, std::size_t>> table;
  std::map<Symbol, std::size_t> target_counts;
  for (std::size_t w = 0; w < n_train; ++w) {
    std::size_t i = idx[w];
    std::vector<Symbol> hist(row.begin() + i, row.begin() + i + l);
    Symbol target = row[i + l];
    ++table[hist][target];
    ++target_counts[target];
  }

  auto argmax = [](const std::map<Symbol, std::size_t>& counts) {
    Symbol best = 0;
    std::size_t best_n = 0;
    for (const auto& [s, n] : counts)
      if (n > best_n) {  // map order makes the lowest symbol win ties
        best = s;
        best_n = n;
      }
    return best;
  };

  Symbol fallback;
  if (!target_counts.empty())
    fallback = argmax(target_counts);
  else
    fallback = *std::min_element(row.begin(), row.end());

  std::size_t correct = 0, total = 0;
  for (std::size_t w = n_train; w < windows; ++w) {
    std::size_t i = idx[w];
    std::vector<Symbol> hist(row.begin() + i, row.begin() + i + l);
    auto it = table.find(hist);
    Symbol predicted = it != table.end() ? argmax(it->second) : fallback;
    if (predicted == row[i + l]) ++correct;
    ++total;
  }
  *tested = total;
  return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 1.0;
}

}  // namespace

MarkovResult markov_accuracy(const FilteredMatrix& fm, int order, double train_frac,
                             std::uint64_t seed) {
  if (order < 1) throw UsageError("markov order must be >= 1");
  if (!(train_frac > 0 && train_frac < 1)) throw UsageError("train fraction must be in (0, 1)");
  if (fm.cols() <= static_cast<std::size_t>(order))
    throw UsageError("series length must exceed the markov order");
  if (fm.rows() == 0) throw DataError("empty matrix");

  MarkovResult res;
  res.order = order;
  res.train_frac = train_frac;
  res.per_link.assign(fm.rows(), 0.0);
  res.test_counts.assign(fm.rows(), 0);

  parallel_for(fm.rows(), [&](std::size_t r) {
    res.per_link[r] = row_accuracy(fm.matrix.row(r), order, train_frac,
                                   derive_seed(seed, "markov.row", r), &res.test_counts[r]);
  });
  res.accuracy = std::accumulate(res.per_link.begin(), res.per_link.end(), 0.0) /
                 static_cast<double>(fm.rows());
  return res;
}

}  // namespace tnp
