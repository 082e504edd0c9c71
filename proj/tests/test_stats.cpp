#include <doctest.h>

#include <cmath>

#include "qaplon/rng.hpp"
#include "qaplon/stats.hpp"

using namespace qaplon;

namespace {

// Independent oracle: rank with explicit tie averaging, then plain Pearson,
// kept separate from the library path.
double rank_then_pearson(std::vector<double> x, std::vector<double> y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double u : v) {
        if (u < v[i]) ++less;
        if (u == v[i]) ++equal;
      }
      r[i] = less + 0.5 * (equal + 1);
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("spearman basics") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y_up = {10, 20, 30, 40, 50};
  const std::vector<double> y_down = {5, 4, 3, 2, 1};
  CHECK(*spearman(x, y_up) == 1.0);
  CHECK(*spearman(x, y_down) == -1.0);

  // monotone transform invariance
  const std::vector<double> y_exp = {std::exp(1.0), std::exp(2.0), std::exp(3.0),
                                     std::exp(4.0), std::exp(5.0)};
  CHECK(*spearman(x, y_exp) == 1.0);

  CHECK_FALSE(spearman(std::vector<double>{1, 2}, std::vector<double>{3, 4}).has_value());  // too few
  CHECK_FALSE(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}).has_value());  // constant series
}

TEST_CASE("spearman tie handling matches the rank-then-Pearson oracle") {
  const std::vector<double> x = {1, 2, 2, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  CHECK(std::abs(*spearman(x, y) - rank_then_pearson(x, y)) <= 1e-12);

  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(10), b(10);
    for (auto& v : a) v = static_cast<double>(rng.range(0, 4));
    for (auto& v : b) v = static_cast<double>(rng.range(0, 4));
    const auto rho = spearman(a, b);
    if (rho) CHECK(std::abs(*rho - rank_then_pearson(a, b)) <= 1e-12);
  }
}

TEST_CASE("spearman_pairwise drops incomplete pairs") {
  const std::vector<Cell> x = {1.0, std::nullopt, 3.0, 4.0, 5.0};
  const std::vector<Cell> y = {2.0, 9.0, 6.0, std::nullopt, 10.0};
  // complete pairs: (1,2), (3,6), (5,10) — perfectly monotone
  CHECK(*spearman_pairwise(x, y) == 1.0);
  const std::vector<Cell> short_x = {1.0, std::nullopt, 3.0};
  CHECK_FALSE(spearman_pairwise(short_x, y).has_value());
}

TEST_CASE("ols on an exact line and degenerate inputs") {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  const OlsFit fit = *ols_regression(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> y_const = {7, 7, 7, 7, 7};
  const OlsFit flat = *ols_regression(x, y_const);
  CHECK(flat.slope == 0.0);
  CHECK(flat.r_squared == 0.0);

  CHECK_FALSE(ols_regression(y_const, x).has_value());  // constant x
  CHECK_FALSE(ols_regression(std::vector<double>{1, 2}, std::vector<double>{1, 2}).has_value());
}

TEST_CASE("ols residuals are orthogonal to x (normal equations)") {
  Rng rng(12);
  std::vector<double> x(10), y(10);
  for (std::size_t i = 0; i < 10; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = 3.0 * x[i] - 2.0 + (rng.unit() - 0.5);
  }
  const OlsFit fit = *ols_regression(x, y);
  double dot = 0, sum = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    const double resid = y[i] - (fit.slope * x[i] + fit.intercept);
    dot += resid * x[i];
    sum += resid;
  }
  CHECK(std::abs(dot) <= 1e-9);
  CHECK(std::abs(sum) <= 1e-9);

  // slope sign equals covariance sign
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= 10;
  my /= 10;
  double cov = 0;
  for (std::size_t i = 0; i < 10; ++i) cov += (x[i] - mx) * (y[i] - my);
  CHECK(fit.slope * cov >= 0.0);
}

namespace {

MetricsRecord sample_row(const std::string& cls, int n, int index, double base) {
  MetricsRecord r;
  r.cls = cls;
  r.n = n;
  r.index = index;
  r.n_v = static_cast<std::uint64_t>(10 + index);
  r.cc = 0.5 + base;
  r.l_opt = 4.0 - base;
  r.y2 = 0.3 + base;
  r.f_nn = base;
  r.q = 0.2;
  r.ell = 3.0 + base;
  r.sa_hit = 1.0 - base;
  r.ga_hit = 0.5;
  return r;
}

}  // namespace

TEST_CASE("correlation matrix is symmetric with unit diagonal and row-order invariant") {
  StudyTable t;
  for (int i = 0; i < 8; ++i) t.push_back(sample_row("uniform", 9, i, 0.05 * i));
  const auto m = correlation_matrix(t);
  REQUIRE(m.size() == kStudyVars.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(*m[i][i] == 1.0);
    for (std::size_t j = 0; j < m.size(); ++j) {
      CHECK(m[i][j].has_value() == m[j][i].has_value());
      if (m[i][j]) CHECK(*m[i][j] == *m[j][i]);
    }
  }
  // duplicating every row changes nothing (rank invariance)
  StudyTable doubled = t;
  doubled.insert(doubled.end(), t.begin(), t.end());
  const auto m2 = correlation_matrix(doubled);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      REQUIRE(m[i][j].has_value() == m2[i][j].has_value());
      if (m[i][j]) CHECK(std::abs(*m[i][j] - *m2[i][j]) <= 1e-12);
    }
  // ga_hit is constant in the fixture: its off-diagonal cells are missing
  CHECK_FALSE(m[8][0].has_value());
}

TEST_CASE("aggregate_classes") {
  StudyTable t;
  t.push_back(sample_row("uniform", 9, 0, 0.1));
  auto groups = aggregate_classes(t);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].count == 1);
  CHECK(*groups[0].mean[0] == 10.0);             // n_v of the single row
  CHECK_FALSE(groups[0].stddev[0].has_value());  // std undefined for one row

  // identical rows: std exactly 0
  StudyTable t2;
  for (int i = 0; i < 4; ++i) {
    MetricsRecord r = sample_row("real-like", 8, i, 0.2);
    r.n_v = 7;
    t2.push_back(r);
  }
  groups = aggregate_classes(t2);
  REQUIRE(groups.size() == 1);
  CHECK(*groups[0].mean[0] == 7.0);
  CHECK(*groups[0].stddev[0] == 0.0);

  // three hand-checked rows: n_v 1, 2, 6 -> mean 3, sample std sqrt(7)
  StudyTable t3;
  for (int i = 0; i < 3; ++i) {
    MetricsRecord r = sample_row("uniform", 10, i, 0);
    r.n_v = static_cast<std::uint64_t>(i == 0 ? 1 : (i == 1 ? 2 : 6));
    if (i == 2) r.cc = std::nullopt;  // missing cells are excluded per-variable
    t3.push_back(r);
  }
  groups = aggregate_classes(t3);
  CHECK(*groups[0].mean[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(*groups[0].stddev[0] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
  CHECK(groups[0].count == 3);

  // two (class, n) groups stay separate
  StudyTable t4 = t2;
  t4.push_back(sample_row("uniform", 9, 0, 0.3));
  CHECK(aggregate_classes(t4).size() == 2);
}
