#include "qaplon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qaplon {

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson_or_nan(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double rho = pearson_or_nan(rx, ry);
  if (std::isnan(rho)) return std::nullopt;
  return rho;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> complete_pairs(
    std::span<const Cell> x, std::span<const Cell> y) {
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (x[k] && y[k]) {
      xs.push_back(*x[k]);
      ys.push_back(*y[k]);
    }
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace

std::optional<double> spearman_pairwise(std::span<const Cell> x, std::span<const Cell> y) {
  auto [xs, ys] = complete_pairs(x, y);
  return spearman(xs, ys);
}

std::optional<OlsFit> ols_regression(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0) return std::nullopt;
  OlsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

std::optional<OlsFit> ols_pairwise(std::span<const Cell> x, std::span<const Cell> y) {
  auto [xs, ys] = complete_pairs(x, y);
  return ols_regression(xs, ys);
}

Cell study_var(const MetricsRecord& row, std::size_t var) {
  switch (var) {
    case 0: return static_cast<double>(row.n_v);
    case 1: return row.cc;
    case 2: return row.l_opt;
    case 3: return row.y2;
    case 4: return row.f_nn;
    case 5: return row.q;
    case 6: return row.ell;
    case 7: return row.sa_hit;
    case 8: return row.ga_hit;
    default: return std::nullopt;
  }
}

std::vector<std::vector<Cell>> correlation_matrix(const StudyTable& rows) {
  const std::size_t v = kStudyVars.size();
  std::vector<std::vector<Cell>> columns(v);
  for (std::size_t k = 0; k < v; ++k) {
    columns[k].reserve(rows.size());
    for (const auto& row : rows) columns[k].push_back(study_var(row, k));
  }
  std::vector<std::vector<Cell>> m(v, std::vector<Cell>(v));
  for (std::size_t i = 0; i < v; ++i) {
    m[i][i] = 1.0;
    for (std::size_t j = i + 1; j < v; ++j) {
      auto rho = spearman_pairwise(columns[i], columns[j]);
      m[i][j] = rho;
      m[j][i] = rho;
    }
  }
  return m;
}

std::vector<ClassAggregate> aggregate_classes(const StudyTable& rows) {
  std::vector<ClassAggregate> groups;
  auto find_group = [&](const MetricsRecord& row) -> ClassAggregate& {
    for (auto& g : groups)
      if (g.cls == row.cls && g.n == row.n) return g;
    groups.push_back(ClassAggregate{row.cls, row.n, 0, {}, {}});
    return groups.back();
  };
  // Two passes per group would be simpler but this keeps table order; collect
  // values per group/var, then reduce.
  std::vector<std::array<std::vector<double>, kStudyVars.size()>> values;
  for (const auto& row : rows) {
    ClassAggregate& g = find_group(row);
    const std::size_t gi = static_cast<std::size_t>(&g - groups.data());
    if (gi >= values.size()) values.resize(groups.size());
    ++g.count;
    for (std::size_t k = 0; k < kStudyVars.size(); ++k)
      if (auto v = study_var(row, k)) values[gi][k].push_back(*v);
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t k = 0; k < kStudyVars.size(); ++k) {
      const auto& vs = values[gi][k];
      if (vs.empty()) continue;
      const double mean = std::accumulate(vs.begin(), vs.end(), 0.0) / static_cast<double>(vs.size());
      groups[gi].mean[k] = mean;
      if (vs.size() >= 2) {
        double ss = 0.0;
        for (double v : vs) ss += (v - mean) * (v - mean);
        groups[gi].stddev[k] = std::sqrt(ss / static_cast<double>(vs.size() - 1));
      }
    }
  }
  return groups;
}

}  // namespace qaplon
