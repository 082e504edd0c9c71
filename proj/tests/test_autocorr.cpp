#include <doctest.h>

#include <cmath>
#include <map>

#include "qaplon/autocorr.hpp"
#include "qaplon/enumeration.hpp"
#include "qaplon/generators.hpp"
#include "qaplon/rng.hpp"

using namespace qaplon;

namespace {

QapInstance flat_instance(int n) {
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<double> a(nn, 0.0), b(nn, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b[static_cast<std::size_t>(i) * n + j] = 1.0;
  return QapInstance(n, std::move(a), std::move(b), "flat");
}

}  // namespace

TEST_CASE("random_walk: flat landscape gives a constant-zero series") {
  const QapInstance inst = flat_instance(5);
  const auto series = random_walk(inst, Permutation::identity(5), 500, 42);
  REQUIRE(series.size() == 501);
  for (double v : series) CHECK(v == 0.0);
}

TEST_CASE("random_walk mirrors an externally driven swap walk") {
  // Re-drive the walk's RNG stream and check the fitness series matches a
  // change-two-positions-per-step trajectory costed independently.
  const QapInstance inst = gen_uniform(6, 77);
  const std::uint64_t seed = 1234;
  const int steps = 300;
  const auto series = random_walk(inst, Permutation::identity(6), steps, seed);

  const auto moves = swap_moves(6);
  Rng rng(seed);
  Permutation p = Permutation::identity(6);
  CHECK(series[0] == cost(inst, p));
  for (int t = 0; t < steps; ++t) {
    const SwapMove m = moves[rng.below(moves.size())];
    Permutation q = p;
    q.apply(m);
    int moved = 0;
    for (int k = 0; k < 6; ++k) moved += q[k] != p[k];
    CHECK(moved == 2);
    p = q;
    CHECK(series[static_cast<std::size_t>(t) + 1] == cost(inst, p));
  }
}

TEST_CASE("random_walk visits n=3 permutations uniformly (regular graph)") {
  // The swap graph on S_3 is K_{3,3}: from any state the next state is
  // uniform over the opposite parity class, so per-class visit counts are
  // Binomial(T/2, 1/3) with sd sqrt(T/9).
  const QapInstance inst = gen_uniform(3, 5);
  const std::uint64_t seed = 99;
  const int steps = 1'000'000;
  const auto moves = swap_moves(3);
  Rng rng(seed);
  Permutation p = Permutation::identity(3);
  std::map<std::uint64_t, int> visits;
  for (int t = 0; t < steps; ++t) {
    p.apply(moves[rng.below(moves.size())]);
    ++visits[rank(p)];
  }
  REQUIRE(visits.size() == 6);
  const double expected = steps / 6.0;
  const double sigma = std::sqrt(steps / 9.0);
  for (const auto& [r, count] : visits) CHECK(std::abs(count - expected) <= 3.0 * sigma);
}

TEST_CASE("autocorrelation: definition cases") {
  CHECK_THROWS_AS(autocorrelation(std::vector<double>(100, 3.25), 10), ZeroVarianceError);

  Rng rng(8);
  std::vector<double> noise(2000);
  for (auto& v : noise) v = rng.unit() * 100.0;
  const auto r = autocorrelation(noise, 20);
  CHECK(r[0] == 1.0);
  for (std::size_t s = 1; s < r.size(); ++s) CHECK(std::abs(r[s]) <= 1.0 + 1e-6);

  // strictly alternating series: r(1) = -1 up to O(1/T)
  std::vector<double> alt(10'001);
  for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = (t % 2 == 0) ? 1.0 : -1.0;
  const auto ra = autocorrelation(alt, 2);
  CHECK(std::abs(ra[1] - (-1.0)) <= 1e-3);

  CHECK_THROWS_AS(autocorrelation(noise, 2000), std::invalid_argument);
}

TEST_CASE("autocorr_length truncation rule") {
  {
    const std::vector<double> r = {1.0, 0.0, 0.0, 0.0};
    const auto [ell, s_cut] = autocorr_length(r, 0.05, 3);
    CHECK(ell == 1.0);
    CHECK(s_cut == 1);
  }
  {
    std::vector<double> r(64);
    for (std::size_t s = 0; s < r.size(); ++s) r[s] = std::pow(0.5, static_cast<double>(s));
    const auto [ell, s_cut] = autocorr_length(r, 1e-6, 63);
    CHECK(std::abs(ell - 2.0) <= 1e-4);
    CHECK(s_cut == 20);  // 0.5^20 < 1e-6
  }
  {
    // nothing below the band: cut at s_max
    const std::vector<double> r = {1.0, 0.9, 0.8, 0.7};
    const auto [ell, s_cut] = autocorr_length(r, 0.1, 3);
    CHECK(s_cut == 3);
    CHECK(ell == doctest::Approx(1.0 + 0.9 + 0.8).epsilon(1e-12));
  }
  CHECK_THROWS_AS(autocorr_length(std::vector<double>{0.5, 0.2}, 0.0, 1), std::invalid_argument);
}

TEST_CASE("exact oracle: definition, two-route r(1), affine invariance") {
  CHECK_THROWS_AS(exact_autocorr(flat_instance(4), 5), ZeroVarianceError);
  CHECK_THROWS_AS(exact_autocorr(gen_uniform(7, 1), 5), std::invalid_argument);

  const QapInstance inst = gen_uniform(4, 2022);
  const AutocorrEstimate est = exact_autocorr(inst, 16);
  CHECK(est.exact);
  CHECK(est.r[0] == 1.0);

  // independent route: r(1) = 1 - E[(f(x) - f(y))^2] / (2 sigma^2) over all
  // ordered neighbor pairs (x uniform, y uniform neighbor of x)
  const std::uint64_t nfact = factorial(4);
  std::vector<double> f(nfact);
  for (std::uint64_t k = 0; k < nfact; ++k) f[k] = cost(inst, unrank(k, 4));
  double mu = 0;
  for (double v : f) mu += v;
  mu /= static_cast<double>(nfact);
  double var = 0;
  for (double v : f) var += (v - mu) * (v - mu);
  var /= static_cast<double>(nfact);
  double edge_sq = 0;
  std::uint64_t pairs = 0;
  for (std::uint64_t k = 0; k < nfact; ++k) {
    Permutation p = unrank(k, 4);
    for (const SwapMove m : neighbors(p)) {
      Permutation q = p;
      q.apply(m);
      const double d = f[k] - f[rank(q)];
      edge_sq += d * d;
      ++pairs;
    }
  }
  const double route2 = 1.0 - edge_sq / (static_cast<double>(pairs) * 2.0 * var);
  CHECK(std::abs(est.r[1] - route2) <= 1e-12);

  // positive scaling of all costs: B *= 3
  {
    std::vector<double> a2(16), b2(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        a2[static_cast<std::size_t>(i) * 4 + j] = inst.a(i, j);
        b2[static_cast<std::size_t>(i) * 4 + j] = 3.0 * inst.b(i, j);
      }
    const AutocorrEstimate scaled = exact_autocorr(QapInstance(4, a2, b2), 16);
    for (std::size_t s = 0; s < est.r.size(); ++s)
      CHECK(std::abs(scaled.r[s] - est.r[s]) <= 1e-12);
    CHECK(std::abs(scaled.ell - est.ell) <= 1e-12);
  }
  // adding a constant: diagonal trick a_ii = 1, b_jj = c shifts every cost by 4c
  {
    std::vector<double> a2(16), b2(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        a2[static_cast<std::size_t>(i) * 4 + j] = i == j ? 1.0 : inst.a(i, j);
        b2[static_cast<std::size_t>(i) * 4 + j] = i == j ? 250.0 : inst.b(i, j);
      }
    const QapInstance shifted(4, a2, b2);
    CHECK(cost(shifted, Permutation::identity(4)) ==
          cost(inst, Permutation::identity(4)) + 4.0 * 250.0);
    const AutocorrEstimate shift_est = exact_autocorr(shifted, 16);
    for (std::size_t s = 0; s < est.r.size(); ++s)
      CHECK(std::abs(shift_est.r[s] - est.r[s]) <= 1e-12);
  }
}

TEST_CASE("estimator converges to the oracle as walks lengthen") {
  const QapInstance inst = gen_uniform(5, 31337);
  const int s_max = 25;
  const AutocorrEstimate oracle = exact_autocorr(inst, s_max);

  AutocorrParams short_params;
  short_params.walk_length = 10'000;
  short_params.n_walks = 5;
  short_params.s_max = s_max;
  AutocorrParams long_params = short_params;
  long_params.walk_length = 1'000'000;

  const AutocorrEstimate coarse = estimate_autocorr(inst, short_params, 7);
  const AutocorrEstimate fine = estimate_autocorr(inst, long_params, 7);
  const double err_coarse = std::abs(coarse.r[1] - oracle.r[1]);
  const double err_fine = std::abs(fine.r[1] - oracle.r[1]);
  CHECK(err_fine <= err_coarse);
  CHECK(err_fine <= 0.005);

  // ell within 10% of the oracle's truncated value at matching s_max
  CHECK(std::abs(fine.ell - oracle.ell) <= 0.10 * oracle.ell);

  // estimated ell is invariant under positive cost scaling up to noise:
  // identical seeds walk identical move sequences, so it is exactly equal
  std::vector<double> a2(25), b2(25);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      a2[static_cast<std::size_t>(i) * 5 + j] = inst.a(i, j);
      b2[static_cast<std::size_t>(i) * 5 + j] = 2.0 * inst.b(i, j);
    }
  const AutocorrEstimate scaled = estimate_autocorr(QapInstance(5, a2, b2), long_params, 7);
  CHECK(std::abs(scaled.ell - fine.ell) <= 1e-9);
}

TEST_CASE("estimate_autocorr propagates zero variance") {
  AutocorrParams params;
  params.walk_length = 1000;
  params.n_walks = 2;
  CHECK_THROWS_AS(estimate_autocorr(flat_instance(4), params, 3), ZeroVarianceError);
}
