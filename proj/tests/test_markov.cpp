#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/markov.hpp"

using namespace tnp;

namespace {

FilteredMatrix row_matrix(const std::vector<std::vector<Symbol>>& rows) {
  Matrix m(rows.size(), rows[0].size(), true);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  m.recompute_alphabet();
  return as_filtered(m);
}

}  // namespace

TEST_CASE("constant rows predict perfectly") {
  auto fm = row_matrix({std::vector<Symbol>(64, 3)});
  auto res = markov_accuracy(fm, 1, 0.7, 1);
  CHECK(res.accuracy == 1.0);
  CHECK(res.per_link[0] == 1.0);
}

TEST_CASE("alternating rows are deterministic at order 1") {
  std::vector<Symbol> alt(128);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
  auto res = markov_accuracy(row_matrix({alt}), 1, 0.7, 5);
  CHECK(res.accuracy == 1.0);
}

TEST_CASE("iid rows hit chance level") {
  std::mt19937_64 eng(17);
  std::uniform_int_distribution<Symbol> dist(0, 1);
  std::vector<std::vector<Symbol>> rows(4, std::vector<Symbol>(4096));
  for (auto& r : rows)
    for (auto& v : r) v = dist(eng);
  auto res = markov_accuracy(row_matrix(rows), 1, 0.7, 9);
  CHECK(res.accuracy == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("markov accuracy is seeded and deterministic") {
  std::mt19937_64 eng(4);
  std::uniform_int_distribution<Symbol> dist(0, 2);
  std::vector<Symbol> row(256);
  for (auto& v : row) v = dist(eng);
  auto fm = row_matrix({row});
  auto a = markov_accuracy(fm, 2, 0.7, 42);
  auto b = markov_accuracy(fm, 2, 0.7, 42);
  CHECK(a.accuracy == b.accuracy);
  auto c = markov_accuracy(fm, 2, 0.7, 43);
  CHECK(a.per_link.size() == c.per_link.size());
}

TEST_CASE("network accuracy is the unweighted row mean") {
  std::vector<Symbol> alt(100);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
  auto fm = row_matrix({std::vector<Symbol>(100, 1), alt});
  auto res = markov_accuracy(fm, 1, 0.7, 2);
  CHECK(res.accuracy == doctest::Approx((res.per_link[0] + res.per_link[1]) / 2.0));
}

TEST_CASE("markov parameter validation") {
  auto fm = row_matrix({std::vector<Symbol>(8, 1)});
  CHECK_THROWS_AS(markov_accuracy(fm, 0, 0.7, 1), UsageError);
  CHECK_THROWS_AS(markov_accuracy(fm, 1, 0.0, 1), UsageError);
  CHECK_THROWS_AS(markov_accuracy(fm, 1, 1.0, 1), UsageError);
  CHECK_THROWS_AS(markov_accuracy(fm, 8, 0.7, 1), UsageError);
}
