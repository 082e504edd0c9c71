#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaplon {

using Cell = std::optional<double>;

/// Average ranks (ties share the mean of the positions they occupy).
std::vector<double> average_ranks(std::span<const double> xs);

/// Spearman rank correlation with average-rank tie handling. Missing when
/// fewer than 3 pairs or either series is constant.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

/// Pairwise-complete variant: pairs with a missing member are dropped first.
std::optional<double> spearman_pairwise(std::span<const Cell> x, std::span<const Cell> y);

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line. Missing when fewer than 3 pairs or x is constant;
/// constant y gives slope 0 with r_squared 0.
std::optional<OlsFit> ols_regression(std::span<const double> x, std::span<const double> y);
std::optional<OlsFit> ols_pairwise(std::span<const Cell> x, std::span<const Cell> y);

/// One study row: instance identity, the six LON metrics, the autocorrelation
/// length and the two hit rates, plus bookkeeping extras.
struct MetricsRecord {
  std::string cls;
  int n = 0;
  int index = 0;

  std::uint64_t n_v = 0;
  Cell cc, l_opt, y2, f_nn, q;
  std::uint64_t unreachable_count = 0;
  bool mcl_converged = true;

  Cell ell;
  int s_cut = 0;
  int walk_length = 0;

  Cell sa_hit, ga_hit;
};

using StudyTable = std::vector<MetricsRecord>;

/// The nine variables of the correlation study, in fixed column order.
inline constexpr std::array<std::string_view, 9> kStudyVars = {
    "n_v", "cc", "l_opt", "y2", "f_nn", "q", "ell", "sa_hit_rate", "ga_hit_rate"};

Cell study_var(const MetricsRecord& row, std::size_t var);

/// Pairwise-complete Spearman over the nine study variables; symmetric with
/// unit diagonal, cells with fewer than 3 complete pairs are missing.
std::vector<std::vector<Cell>> correlation_matrix(const StudyTable& rows);

struct ClassAggregate {
  std::string cls;
  int n = 0;
  int count = 0;
  std::array<Cell, kStudyVars.size()> mean;
  std::array<Cell, kStudyVars.size()> stddev;  ///< sample std (n-1), missing if < 2 values
};

/// Per-(class, n) mean and sample standard deviation of every study variable,
/// missing cells excluded per variable. Groups appear in table order.
std::vector<ClassAggregate> aggregate_classes(const StudyTable& rows);

}  // namespace qaplon
