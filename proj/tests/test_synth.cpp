#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "core/error.hpp"
#include "core/synth.hpp"

using namespace tnp;

namespace {

std::size_t column_sum(const Matrix& m, std::size_t c) {
  std::size_t s = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m.at(r, c) != 0 ? 1 : 0;
  return s;
}

// Lag-h autocorrelation of the symbol field along an axis.
double axis_autocorr(const Matrix& m, std::size_t lag, bool along_cols) {
  std::vector<double> xs, ys;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::size_t r2 = along_cols ? r : r + lag;
      std::size_t c2 = along_cols ? c + lag : c;
      if (r2 >= m.rows() || c2 >= m.cols()) continue;
      xs.push_back(m.at(r, c));
      ys.push_back(m.at(r2, c2));
    }
  double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    vx += (xs[i] - mx) * (xs[i] - mx);
    vy += (ys[i] - my) * (ys[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

}  // namespace

TEST_CASE("small world: p=0 repeats the ring forever") {
  Matrix m = gen_small_world({10, 0.0, 20, 7});
  CHECK(m.rows() == 45);  // all unordered pairs
  for (std::size_t t = 1; t < m.cols(); ++t)
    for (std::size_t r = 0; r < m.rows(); ++r) CHECK(m.at(r, t) == m.at(r, 0));
  CHECK(column_sum(m, 0) == 10);
}

TEST_CASE("small world: rewiring preserves the link count") {
  Matrix m = gen_small_world({20, 0.5, 50, 3});
  for (std::size_t t = 0; t < m.cols(); ++t) CHECK(column_sum(m, t) == 20);
}

TEST_CASE("small world: deterministic and validated") {
  Matrix a = gen_small_world({12, 0.3, 30, 42});
  Matrix b = gen_small_world({12, 0.3, 30, 42});
  CHECK(a.values() == b.values());
  Matrix c = gen_small_world({12, 0.3, 30, 43});
  CHECK(a.values() != c.values());
  CHECK_THROWS_AS(gen_small_world({2, 0.0, 10, 1}), UsageError);
}

TEST_CASE("tsbm: topology is frozen across snapshots") {
  TsbmParams p;
  p.communities = 2;
  p.n_nodes = 20;
  p.degree = 3;
  p.snapshots = 40;
  p.beta = 0.6;
  p.gamma = 0.4;
  p.alphabet_size = 4;
  p.seed = 5;
  Matrix m = gen_tsbm(p);
  // every row is a topology edge and stays active in every column
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t t = 0; t < m.cols(); ++t) CHECK(m.at(r, t) >= 1);
  // intra-community wiring only
  for (const LinkId& id : m.link_ids()) CHECK((id.src < 10) == (id.dst < 10));
  CHECK(m.alphabet_size() <= p.alphabet_size);
}

TEST_CASE("tsbm: beta=gamma=1 leaves no fresh randomness after column 0") {
  TsbmParams p;
  p.communities = 1;
  p.n_nodes = 12;
  p.degree = 3;
  p.snapshots = 30;
  p.beta = 1.0;
  p.gamma = 1.0;
  p.alphabet_size = 6;
  p.seed = 9;
  Matrix m = gen_tsbm(p);
  // rows below the first can only copy the row above or their own past
  for (std::size_t t = 1; t < m.cols(); ++t)
    for (std::size_t r = 1; r < m.rows(); ++r) {
      bool from_above = m.at(r, t) == m.at(r - 1, t);
      bool from_past = m.at(r, t) == m.at(r, t - 1);
      CHECK((from_above || from_past));
    }
}

TEST_CASE("tsbm: beta=gamma=0 cells look iid uniform") {
  TsbmParams p;
  p.communities = 2;
  p.n_nodes = 40;
  p.degree = 4;
  p.snapshots = 100;
  p.beta = 0.0;
  p.gamma = 0.0;
  p.alphabet_size = 4;
  p.seed = 3;
  Matrix m = gen_tsbm(p);
  std::vector<std::size_t> counts(p.alphabet_size + 1, 0);
  for (Symbol v : m.values()) counts[v]++;
  double total = static_cast<double>(m.values().size());
  for (std::size_t s = 1; s <= p.alphabet_size; ++s)
    CHECK(static_cast<double>(counts[s]) / total == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("tsbm: parameter validation") {
  TsbmParams p;
  p.communities = 4;
  p.n_nodes = 8;
  p.degree = 3;  // degree >= community size 2
  CHECK_THROWS_AS(gen_tsbm(p), UsageError);
  p.degree = 1;
  p.alphabet_size = 1;
  CHECK_THROWS_AS(gen_tsbm(p), UsageError);
}

TEST_CASE("long range: white limit at steep decay") {
  double corr = 0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    Matrix m = gen_long_range({64, 64, 8.0, 8.0, 16, static_cast<std::uint64_t>(100 + s)});
    corr += std::abs(axis_autocorr(m, 1, true));
  }
  CHECK(corr / seeds < 0.1);
}

TEST_CASE("long range: smaller exponents decay slower") {
  for (std::size_t lag : {1u, 2u, 4u, 8u}) {
    double slow = 0, fast = 0;
    const int seeds = 5;
    for (int s = 0; s < seeds; ++s) {
      Matrix ms = gen_long_range({64, 64, 0.3, 0.3, 8, static_cast<std::uint64_t>(10 + s)});
      Matrix mf = gen_long_range({64, 64, 2.0, 2.0, 8, static_cast<std::uint64_t>(10 + s)});
      slow += axis_autocorr(ms, lag, true);
      fast += axis_autocorr(mf, lag, true);
    }
    CHECK(slow / seeds > fast / seeds);
  }
}

TEST_CASE("long range: quantile levels are balanced") {
  Matrix m = gen_long_range({64, 64, 1.0, 1.0, 2, 77});
  CHECK(m.alphabet() == std::vector<Symbol>{1, 2});
  std::size_t ones = 0;
  for (Symbol v : m.values())
    if (v == 1) ++ones;
  double frac = static_cast<double>(ones) / static_cast<double>(m.values().size());
  CHECK(frac == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("long range: validation and determinism") {
  CHECK_THROWS_AS(gen_long_range({60, 64, 1.0, 1.0, 4, 1}), UsageError);
  CHECK_THROWS_AS(gen_long_range({64, 64, 1.0, 1.0, 1, 1}), UsageError);
  Matrix a = gen_long_range({32, 32, 1.0, 2.0, 4, 5});
  Matrix b = gen_long_range({32, 32, 1.0, 2.0, 4, 5});
  CHECK(a.values() == b.values());
}
