#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace tnp {

namespace {

LinkId canonical_pair(std::int64_t a, std::int64_t b) {
  return b < a ? LinkId{b, a} : LinkId{a, b};
}

}  // namespace

Matrix gen_small_world(const SmallWorldParams& params) {
  const std::size_t n = params.n_nodes;
  if (n < 3) throw UsageError("small-world model needs at least 3 nodes");
  if (!(params.rewire_p >= 0 && params.rewire_p <= 1)) throw UsageError("rewire probability must be in [0, 1]");
  if (params.snapshots < 1) throw UsageError("need at least one snapshot");

  // Rows enumerate all unordered node pairs.
  std::map<LinkId, std::size_t> row_of;
  std::vector<LinkId> ids;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      row_of[{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}] = ids.size();
      ids.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
    }

  Matrix out(ids.size(), params.snapshots, /*directed=*/false);
  out.set_link_ids(ids);

  std::set<LinkId> links;
  for (std::size_t i = 0; i < n; ++i)
    links.insert(canonical_pair(static_cast<std::int64_t>(i), static_cast<std::int64_t>((i + 1) % n)));

  auto eng = make_engine(params.seed);
  std::uniform_int_distribution<std::size_t> node_dist(0, n - 1);
  std::size_t rewires = static_cast<std::size_t>(std::floor(params.rewire_p * static_cast<double>(n)));

  for (std::size_t t = 0; t < params.snapshots; ++t) {
    if (t > 0 && rewires > 0) {
      std::vector<LinkId> current(links.begin(), links.end());
      std::vector<LinkId> chosen;
      chosen.reserve(rewires);
      std::sample(current.begin(), current.end(), std::back_inserter(chosen), rewires, eng);
      for (const LinkId& link : chosen) {
        // Keep one endpoint, move the other to a fresh non-existing position.
        std::int64_t kept = std::uniform_int_distribution<int>(0, 1)(eng) == 0 ? link.src : link.dst;
        links.erase(link);
        bool placed = false;
        for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
          auto other = static_cast<std::int64_t>(node_dist(eng));
          if (other == kept) continue;
          LinkId candidate = canonical_pair(kept, other);
          if (links.count(candidate)) continue;
          links.insert(candidate);
          placed = true;
        }
        if (!placed) links.insert(link);  // give up, keep the original
      }
    }
    for (const LinkId& link : links) out.at(row_of.at(link), t) = 1;
  }
  out.recompute_alphabet();
  return out;
}

Matrix gen_tsbm(const TsbmParams& params) {
  if (params.communities < 1) throw UsageError("need at least one community");
  if (params.n_nodes % params.communities != 0)
    throw UsageError("node count must be divisible by the community count");
  std::size_t comm_size = params.n_nodes / params.communities;
  if (params.degree >= comm_size) throw UsageError("degree must be below community size");
  if (params.degree < 1) throw UsageError("degree must be >= 1");
  if (params.alphabet_size < 2) throw UsageError("alphabet size must be >= 2");
  if (params.snapshots < 1) throw UsageError("need at least one snapshot");
  for (double p : {params.beta, params.gamma, params.p_beta, params.p_gamma})
    if (!(p >= 0 && p <= 1)) throw UsageError("tsbm probabilities must be in [0, 1]");
  if (std::abs(params.p_beta + params.p_gamma - 1.0) > 1e-12)
    throw UsageError("p_beta + p_gamma must equal 1");

  auto eng = make_engine(params.seed);

  // Frozen topology: nodes in equal community blocks, each node wired to
  // `degree` distinct partners inside its community.
  std::set<LinkId> edges;
  for (std::size_t u = 0; u < params.n_nodes; ++u) {
    std::size_t base = (u / comm_size) * comm_size;
    std::set<std::int64_t> partners;
    std::uniform_int_distribution<std::size_t> pick(0, comm_size - 1);
    while (partners.size() < params.degree) {
      auto v = static_cast<std::int64_t>(base + pick(eng));
      if (v == static_cast<std::int64_t>(u)) continue;
      partners.insert(v);
    }
    for (std::int64_t v : partners) edges.insert(canonical_pair(static_cast<std::int64_t>(u), v));
  }

  std::vector<LinkId> ids(edges.begin(), edges.end());
  const std::size_t m = ids.size();
  const std::size_t T = params.snapshots;
  Matrix out(m, T, /*directed=*/false);
  out.set_link_ids(ids);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Symbol> sym(1, static_cast<Symbol>(params.alphabet_size));
  double pb = params.p_beta * params.beta;
  double pg = params.p_gamma * params.gamma;

  // Column by column, top to bottom; the "row above" is already updated for
  // the current snapshot, which is what produces the diagonal memory streaks.
  for (std::size_t r = 0; r < m; ++r) out.at(r, 0) = sym(eng);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t r = 0; r < m; ++r) {
      double u = coin(eng);
      if (u < pb && r > 0)
        out.at(r, t) = out.at(r - 1, t);
      else if (u < pb + pg)
        out.at(r, t) = out.at(r, t - 1);
      else
        out.at(r, t) = sym(eng);
    }
  }
  out.recompute_alphabet();
  return out;
}

namespace {

bool is_pow2(std::size_t x) { return x >= 2 && (x & (x - 1)) == 0; }

// Iterative radix-2 FFT; dims are powers of two by precondition.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        auto u = a[i + j];
        auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

void fft2_inplace(std::vector<std::complex<double>>& a, std::size_t rows, std::size_t cols,
                  bool inverse) {
  std::vector<std::complex<double>> buf(std::max(rows, cols));
  for (std::size_t r = 0; r < rows; ++r) {
    buf.assign(a.begin() + r * cols, a.begin() + (r + 1) * cols);
    fft_inplace(buf, inverse);
    std::copy(buf.begin(), buf.end(), a.begin() + r * cols);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    buf.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) buf[r] = a[r * cols + c];
    fft_inplace(buf, inverse);
    for (std::size_t r = 0; r < rows; ++r) a[r * cols + c] = buf[r];
  }
}

}  // namespace

std::vector<double> gen_long_range_field(const LongRangeParams& params) {
  if (!is_pow2(params.rows) || !is_pow2(params.cols))
    throw UsageError("field dimensions must be powers of two");
  if (!(params.gamma_x > 0 && params.gamma_y > 0)) throw UsageError("decay exponents must be positive");

  const std::size_t R = params.rows, C = params.cols;

  // Target correlation on the periodic grid; x = time lag (columns),
  // y = link lag (rows). The (1 + r^2)^(-g/2) form decays as r^-g at
  // distance and stays regular at the origin.
  std::vector<std::complex<double>> corr(R * C);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) {
      double dy = static_cast<double>(std::min(r, R - r));
      double dx = static_cast<double>(std::min(c, C - c));
      double val;
      if (dx == 0 && dy == 0) {
        val = 1.0;
      } else {
        double r2 = dx * dx + dy * dy;
        double cos2 = dx * dx / r2;
        double sin2 = dy * dy / r2;
        val = std::pow(1.0 + r2, -params.gamma_x / 2.0) * cos2 +
              std::pow(1.0 + r2, -params.gamma_y / 2.0) * sin2;
      }
      corr[r * C + c] = val;
    }

  fft2_inplace(corr, R, C, false);

  auto eng = make_engine(params.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> field(R * C);
  for (auto& x : field) x = gauss(eng);
  fft2_inplace(field, R, C, false);

  for (std::size_t i = 0; i < R * C; ++i) {
    double s = std::max(corr[i].real(), 0.0);  // clip spectral leakage
    field[i] *= std::sqrt(s);
  }
  fft2_inplace(field, R, C, true);

  std::vector<double> out(R * C);
  for (std::size_t i = 0; i < R * C; ++i) out[i] = field[i].real();
  return out;
}

Matrix gen_long_range(const LongRangeParams& params) {
  if (params.levels < 2) throw UsageError("need at least two quantization levels");
  std::vector<double> field = gen_long_range_field(params);

  // Equal-mass quantile discretization into symbols 1..levels.
  std::vector<std::size_t> order(field.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return field[a] < field[b]; });

  Matrix out(params.rows, params.cols, /*directed=*/false);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    auto level = static_cast<Symbol>(rank * params.levels / order.size() + 1);
    out.values()[order[rank]] = level;
  }
  out.recompute_alphabet();
  return out;
}

}  // namespace tnp
