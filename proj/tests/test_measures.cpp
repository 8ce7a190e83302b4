#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "core/error.hpp"
#include "core/measures.hpp"
#include "core/synth.hpp"

using namespace tnp;

namespace {

FilteredMatrix iid_matrix(std::size_t rows, std::size_t cols, int symbols, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<Symbol> dist(0, symbols - 1);
  Matrix m(rows, cols, true);
  for (auto& v : m.values()) v = dist(eng);
  m.recompute_alphabet();
  return as_filtered(m);
}

FilteredMatrix constant_matrix(std::size_t rows, std::size_t cols, Symbol v) {
  Matrix m(rows, cols, true);
  for (auto& x : m.values()) x = v;
  m.recompute_alphabet();
  return as_filtered(m);
}

}  // namespace

TEST_CASE("normalize piecewise rule") {
  CHECK(normalize(0.9, 0.6).value == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(normalize(0.9, 0.6).defined);
  CHECK(normalize(1.0, 1.0).value == 1.0);
  CHECK(normalize(1.0, 1.0).defined);
  CHECK(normalize(0.6, 0.6).value == doctest::Approx(0.0));
  CHECK_FALSE(normalize(0.9, 1.0).defined);
  // negative values are preserved
  CHECK(normalize(0.4, 0.6).value == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("pil fixtures") {
  std::vector<Symbol> constant(64, 4);
  auto c = pil(constant);
  CHECK(c.pil == 1.0);
  CHECK(c.n_row == 1);

  std::vector<Symbol> alternating(256);
  for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2;
  CHECK(pil(alternating).pil >= 0.95);

  std::mt19937_64 eng(13);
  std::uniform_int_distribution<Symbol> dist(0, 1);
  double mean = 0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    std::vector<Symbol> iid(4096);
    for (auto& v : iid) v = dist(eng);
    mean += pil(iid).pil;
  }
  CHECK(mean / seeds <= 0.65);

  std::vector<Symbol> tiny{1};
  CHECK_THROWS_AS(pil(tiny), UsageError);
}

TEST_CASE("pearson fixtures") {
  std::vector<double> xs{1, 2, 3};
  CHECK(pearson(xs, xs) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> neg{-1, -2, -3};
  CHECK(pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  std::vector<double> ys{1, 2, 4};
  CHECK(pearson(xs, ys) == doctest::Approx(0.9819805061).epsilon(1e-9));
  std::vector<double> flat{2, 2, 2};
  CHECK_THROWS_AS(pearson(xs, flat), NumericError);
  std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(pearson(xs, shorter), UsageError);
}

TEST_CASE("hamming fixtures") {
  Matrix m(3, 4, true);
  std::vector<Symbol> rows{0, 1, 1, 0,   // r0
                           0, 1, 0, 0,   // r1: h=0.25 vs r0
                           1, 0, 0, 1};  // r2: complement of r0
  m.values() = rows;
  m.recompute_alphabet();
  auto hs = hamming_analysis(as_filtered(m), 100, 1);
  REQUIRE(hs.pair_count == 3);
  // pairs in order: (0,1), (0,2), (1,2)
  CHECK(hs.h_values[0] == doctest::Approx(0.25));
  CHECK(hs.h_values[1] == doctest::Approx(1.0));
  CHECK(std::exp(1.0 - hs.h_values[0]) == doctest::Approx(2.117000017).epsilon(1e-8));

  Matrix same(2, 4, true);
  for (auto& v : same.values()) v = 1;
  same.recompute_alphabet();
  auto hs2 = hamming_analysis(as_filtered(same), 100, 1);
  CHECK(hs2.h_values[0] == 0.0);
  CHECK(hs2.mean_exp == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  Matrix one(1, 4, true);
  CHECK_THROWS_AS(hamming_analysis(as_filtered(one), 100, 1), DataError);
}

TEST_CASE("hamming sampling respects the pair cap and is seeded") {
  FilteredMatrix fm = iid_matrix(40, 16, 2, 2);
  auto a = hamming_analysis(fm, 50, 7);
  auto b = hamming_analysis(fm, 50, 7);
  CHECK(a.pair_count == 50);
  CHECK(a.h_values == b.h_values);
}

TEST_CASE("ttp of a constant matrix is total") {
  auto res = ttp(constant_matrix(64, 64, 1), 1, 1);
  CHECK(res.ttp >= 0.95);
  CHECK(res.alphabet_n == 1);
}

TEST_CASE("ttp of an iid binary matrix stays near the Fano bound") {
  auto res = ttp(iid_matrix(64, 64, 2, 21), 1, 1);
  CHECK(res.ttp <= 0.75);
  CHECK(res.ttp >= 0.5);
}

TEST_CASE("ttp is invariant under symbol relabeling") {
  FilteredMatrix fm = iid_matrix(32, 48, 3, 5);
  FilteredMatrix relabeled = fm;
  for (auto& v : relabeled.matrix.values()) v = (v == 0) ? 9 : (v == 1 ? 0 : 4);
  relabeled.matrix.recompute_alphabet();
  CHECK(ttp(fm, 1, 1).ttp == doctest::Approx(ttp(relabeled, 1, 1).ttp).epsilon(1e-12));

  auto ha = hamming_analysis(fm, 1000, 3);
  auto hb = hamming_analysis(relabeled, 1000, 3);
  CHECK(ha.h_values == hb.h_values);
}

TEST_CASE("ttp across row orders reports per-order values") {
  FilteredMatrix fm = iid_matrix(24, 50, 2, 8);
  auto res = ttp(fm, 5, 123);
  CHECK(res.per_order.size() == 5);
  double best = *std::max_element(res.per_order.begin(), res.per_order.end());
  CHECK(res.ttp == best);
  auto res2 = ttp(fm, 5, 123);
  CHECK(res2.per_order == res.per_order);
}

TEST_CASE("baseline of a constant matrix equals its ttp") {
  FilteredMatrix fm = constant_matrix(32, 32, 2);
  auto t = ttp(fm, 1, 1);
  auto bl = ttp_baseline(fm, 5, 1);
  CHECK(bl.mean == doctest::Approx(t.ttp));
}

TEST_CASE("baseline of an iid matrix matches its ttp closely") {
  double diff = 0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    FilteredMatrix fm = iid_matrix(48, 48, 2, 500 + s);
    diff += ttp(fm, 1, 1).ttp - ttp_baseline(fm, 10, 600 + s).mean;
  }
  CHECK(std::abs(diff / seeds) < 0.05);
}

TEST_CASE("nttp of a shuffled matrix is near zero") {
  double worst = 0;
  for (int s = 0; s < 10; ++s) {
    Matrix corpus = gen_small_world({16, 0.2, 64, static_cast<std::uint64_t>(900 + s)});
    FilteredMatrix fm = filter_matrix(corpus);
    FilteredMatrix shuffled = shuffle_global(fm, 1234 + s);
    double p = ttp(shuffled, 1, 1).ttp;
    double b = ttp_baseline(shuffled, 10, 77 + s).mean;
    auto n = normalize(p, b);
    REQUIRE(n.defined);
    worst = std::max(worst, std::abs(n.value));
  }
  CHECK(worst < 0.1);
}

TEST_CASE("tep of constant rows is total") {
  auto res = tep_profile(constant_matrix(8, 64, 3), 5, 1);
  CHECK(res.tep == 1.0);
  REQUIRE(res.ntep.defined);
  CHECK(res.ntep.value == 1.0);
  for (const auto& l : res.per_link) {
    CHECK(l.pil == 1.0);
    CHECK(l.pil_bl == 1.0);
    CHECK(l.npil.value == 1.0);
  }
}

TEST_CASE("tep of iid rows normalizes to zero") {
  auto res = tep_profile(iid_matrix(16, 512, 2, 31), 10, 2);
  REQUIRE(res.ntep.defined);
  CHECK(std::abs(res.ntep.value) < 0.1);
}

TEST_CASE("tep of periodic rows stays high after normalization") {
  Matrix m(8, 256, true);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = static_cast<Symbol>((c + r) % 2);
  m.recompute_alphabet();
  auto res = tep_profile(as_filtered(m), 10, 3);
  REQUIRE(res.ntep.defined);
  CHECK(res.ntep.value >= 0.8);
}

TEST_CASE("profile produces a consistent report") {
  Matrix corpus = gen_small_world({16, 0.2, 80, 11});
  ProfileParams params;
  params.baseline_runs = 8;
  params.seed = 99;
  params.with_hamming = true;
  params.max_pairs = 200;
  ProfileResult res = profile(corpus, params);

  CHECK(res.kept_rows >= 1);
  CHECK(res.ttp.ttp >= 0.0);
  CHECK(res.ttp.ttp <= 1.0);
  CHECK(res.baseline.per_run.size() == 8);
  CHECK(res.tep.per_link.size() == res.kept_rows);
  CHECK(res.link_labels.size() == res.kept_rows);
  CHECK(res.has_hamming);
  CHECK(res.hamming.mean_exp >= 1.0);
  CHECK(res.hamming.mean_exp <= std::exp(1.0) + 1e-12);

  ProfileResult res2 = profile(corpus, params);
  CHECK(res2.ttp.ttp == res.ttp.ttp);
  CHECK(res2.baseline.mean == res.baseline.mean);
  CHECK(res2.tep.tep == res.tep.tep);
}

TEST_CASE("profile of an all-zero matrix reports no active links") {
  Matrix dead(4, 6, true);
  CHECK_THROWS_AS(profile(dead, ProfileParams{}), DataError);
}
