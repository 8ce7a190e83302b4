#pragma once

#include <cstdint>
#include <vector>

#include "core/matrix.hpp"

namespace tnp {

struct MarkovResult {
  double accuracy = 0.0;             // unweighted mean of per-link accuracies
  std::vector<double> per_link;      // a_m per row
  std::vector<std::size_t> test_counts;
  int order = 1;
  double train_frac = 0.7;
};

/// Order-l baseline predictor: per row, the T-l overlapping
/// (history, target) windows are shuffled, an l-th order transition table is
/// trained on the first train_frac share and argmax prediction is scored on
/// the rest. Ties and unseen histories resolve deterministically (lowest
/// symbol / training-set mode).
MarkovResult markov_accuracy(const FilteredMatrix& fm, int order = 1, double train_frac = 0.7,
                             std::uint64_t seed = 1);

}  // namespace tnp
