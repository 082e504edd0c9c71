#include "qaplon/autocorr.hpp"

#include <algorithm>
#include <cmath>

#include "qaplon/enumeration.hpp"
#include "qaplon/kernels.hpp"
#include "qaplon/rng.hpp"

namespace qaplon {

std::vector<double> random_walk(const QapInstance& inst, const Permutation& start,
                                int length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("random_walk: length must be >= 1");
  if (start.size() != inst.n())
    throw std::invalid_argument("random_walk: start length does not match instance");
  const auto moves = swap_moves(inst.n());
  Rng rng(seed);
  Permutation p = start;
  double c = cost(inst, p);
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(length) + 1);
  series.push_back(c);
  for (int t = 0; t < length; ++t) {
    const SwapMove m = moves[rng.below(moves.size())];
    c += swap_delta(inst, p, m);
    p.apply(m);
    series.push_back(c);
  }
  return series;
}

std::vector<double> autocorrelation(std::span<const double> series, int s_max) {
  const std::size_t len = series.size();
  if (len < 2) throw std::invalid_argument("autocorrelation: series too short");
  if (s_max < 0 || static_cast<std::size_t>(s_max) >= len)
    throw std::invalid_argument("autocorrelation: s_max must be < series length");

  double mu = 0.0;
  for (double v : series) mu += v;
  mu /= static_cast<double>(len);

  std::vector<double> centered(len);
  for (std::size_t t = 0; t < len; ++t) centered[t] = series[t] - mu;
  // Prefix sums of the centered series give the exact window-mean correction
  // for each lag (the centered sums are near zero but not exactly).
  std::vector<double> prefix(len + 1, 0.0);
  for (std::size_t t = 0; t < len; ++t) prefix[t + 1] = prefix[t] + centered[t];

  const auto& k = kernels::active();
  auto lag_cov = [&](std::size_t s) {
    const std::size_t window = len - s;
    const double raw = k.dot(centered.data(), centered.data() + s, window);
    const double w1 = prefix[window];               // sum of centered[0..window)
    const double w2 = prefix[len] - prefix[s];      // sum of centered[s..len)
    return (raw + mu * (w1 + w2)) / static_cast<double>(window);
  };

  const double var = lag_cov(0);
  if (!(var > 1e-24 * std::max(1.0, mu * mu))) throw ZeroVarianceError();

  std::vector<double> r(static_cast<std::size_t>(s_max) + 1);
  r[0] = 1.0;
  for (int s = 1; s <= s_max; ++s) r[static_cast<std::size_t>(s)] = lag_cov(static_cast<std::size_t>(s)) / var;
  return r;
}

std::pair<double, int> autocorr_length(std::span<const double> r, double epsilon, int s_max) {
  if (r.empty() || r[0] != 1.0)
    throw std::invalid_argument("autocorr_length: r[0] must be 1");
  const int last = std::min<int>(s_max, static_cast<int>(r.size()) - 1);
  int s_cut = last;
  for (int s = 0; s <= last; ++s) {
    if (r[static_cast<std::size_t>(s)] < epsilon) {
      s_cut = s;
      break;
    }
  }
  double ell = 0.0;
  for (int s = 0; s < s_cut; ++s) ell += r[static_cast<std::size_t>(s)];
  return {ell, s_cut};
}

AutocorrEstimate estimate_autocorr(const QapInstance& inst, const AutocorrParams& params,
                                   std::uint64_t seed) {
  if (params.walk_length < 2 || params.n_walks < 1)
    throw std::invalid_argument("estimate_autocorr: bad walk parameters");
  const int s_max =
      params.s_max > 0 ? params.s_max : std::min(inst.n() * inst.n(), params.walk_length - 1);

  std::vector<double> r_sum(static_cast<std::size_t>(s_max) + 1, 0.0);
  for (int w = 0; w < params.n_walks; ++w) {
    const std::uint64_t wseed = derive_seed(seed, "walk", static_cast<std::uint64_t>(w));
    Rng rng(derive_seed(wseed, "start"));
    const Permutation start = random_permutation(inst.n(), rng);
    const auto series = random_walk(inst, start, params.walk_length, derive_seed(wseed, "steps"));
    const auto r = autocorrelation(series, s_max);
    for (std::size_t s = 0; s < r.size(); ++s) r_sum[s] += r[s];
  }
  for (double& v : r_sum) v /= static_cast<double>(params.n_walks);

  const double epsilon =
      params.epsilon > 0.0 ? params.epsilon : 2.0 / std::sqrt(static_cast<double>(params.walk_length));
  AutocorrEstimate est;
  est.r = std::move(r_sum);
  std::tie(est.ell, est.s_cut) = autocorr_length(est.r, epsilon, s_max);
  est.walk_length = params.walk_length;
  est.n_walks = params.n_walks;
  est.exact = false;
  return est;
}

AutocorrEstimate exact_autocorr(const QapInstance& inst, int s_max) {
  const int n = inst.n();
  if (n > 6) throw std::invalid_argument("exact_autocorr: n must be <= 6 (dense operator)");
  if (s_max < 0) throw std::invalid_argument("exact_autocorr: s_max must be >= 0");
  const std::uint64_t nfact = factorial(n);
  const std::size_t states = static_cast<std::size_t>(nfact);
  const auto moves = swap_moves(n);
  const std::size_t degree = moves.size();

  // Fitness vector and neighbor table over all states in lexicographic order.
  std::vector<double> f(states);
  std::vector<std::uint32_t> nbr(states * degree);
  {
    std::vector<int> perm(static_cast<std::size_t>(n));
    unrank_into(0, n, perm);
    auto cost_of = [&](const std::vector<int>& p) {
      double total = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          total += inst.a(i, j) * inst.b(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
      return total;
    };
    for (std::size_t s = 0; s < states; ++s) {
      f[s] = cost_of(perm);
      for (std::size_t mi = 0; mi < degree; ++mi) {
        std::swap(perm[static_cast<std::size_t>(moves[mi].i)], perm[static_cast<std::size_t>(moves[mi].j)]);
        nbr[s * degree + mi] = static_cast<std::uint32_t>(rank_of(perm));
        std::swap(perm[static_cast<std::size_t>(moves[mi].i)], perm[static_cast<std::size_t>(moves[mi].j)]);
      }
      std::next_permutation(perm.begin(), perm.end());
    }
  }

  const auto& k = kernels::active();
  double mu = k.sum(f.data(), states) / static_cast<double>(states);
  std::vector<double> centered(states);
  for (std::size_t s = 0; s < states; ++s) centered[s] = f[s] - mu;
  const double var = k.dot(centered.data(), centered.data(), states) / static_cast<double>(states);
  if (!(var > 1e-24 * std::max(1.0, mu * mu))) throw ZeroVarianceError();

  std::vector<double> r(static_cast<std::size_t>(s_max) + 1);
  r[0] = 1.0;
  std::vector<double> g = centered, next(states);
  for (int s = 1; s <= s_max; ++s) {
    for (std::size_t x = 0; x < states; ++x) {
      double acc = 0.0;
      const std::uint32_t* row = nbr.data() + x * degree;
      for (std::size_t mi = 0; mi < degree; ++mi) acc += g[row[mi]];
      next[x] = acc / static_cast<double>(degree);
    }
    g.swap(next);
    r[static_cast<std::size_t>(s)] =
        k.dot(centered.data(), g.data(), states) / (static_cast<double>(states) * var);
  }

  AutocorrEstimate est;
  est.r = std::move(r);
  std::tie(est.ell, est.s_cut) = autocorr_length(est.r, 0.0, s_max);
  est.exact = true;
  return est;
}

}  // namespace qaplon
