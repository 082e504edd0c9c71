#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaplon {

/// A pairwise exchange of two positions, 0 <= i < j < n.
struct SwapMove {
  int i = 0;
  int j = 1;
  friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

/// Bijection on {0..n-1}; the candidate-solution type.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  /// Validates that `values` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<int> values);

  int size() const { return static_cast<int>(v_.size()); }
  int operator[](int pos) const { return v_[pos]; }
  const std::vector<int>& values() const { return v_; }
  std::span<const int> span() const { return v_; }

  void apply(SwapMove m) { std::swap(v_[m.i], v_[m.j]); }

  auto operator<=>(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<int>&& values, bool /*trusted*/) : v_(std::move(values)) {}
  std::vector<int> v_;
  friend Permutation make_permutation_unchecked(std::vector<int>&& values);
};

/// Internal fast path for callers that already guarantee a bijection.
inline Permutation make_permutation_unchecked(std::vector<int>&& values) {
  return Permutation(std::move(values), true);
}

bool is_permutation_vector(std::span<const int> v);

class Rng;

/// Uniform random permutation (Fisher-Yates on the shared Rng).
Permutation random_permutation(int n, Rng& rng);

/// QAP instance: n locations/facilities, distance matrix A, flow matrix B,
/// both n×n with finite non-negative entries. Cost of a permutation p is
/// sum_ij a[i][j] * b[p[i]][p[j]], and lower is better throughout.
///
/// Matrices are stored as doubles. When every entry is an integer and the
/// worst-case intermediate stays below 2^53 all cost and delta arithmetic is
/// exact (no rounding ever occurs), which exact_arithmetic() reports; both
/// shipped generators satisfy this by a wide margin.
class QapInstance {
 public:
  /// a and b are row-major n×n.
  QapInstance(int n, std::vector<double> a, std::vector<double> b, std::string label = "");

  int n() const { return n_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double a(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double b(int i, int j) const { return b_[static_cast<std::size_t>(i) * n_ + j]; }
  const double* a_row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }
  const double* b_row(int i) const { return b_.data() + static_cast<std::size_t>(i) * n_; }
  /// Row i of A-transpose (column i of A, stored contiguously).
  const double* at_row(int i) const { return at_.data() + static_cast<std::size_t>(i) * n_; }

  bool exact_arithmetic() const { return exact_; }
  double max_abs_entry() const { return max_entry_; }

 private:
  int n_ = 0;
  std::vector<double> a_, b_, at_;
  double max_entry_ = 0.0;
  bool exact_ = false;
  std::string label_;
};

/// Exact double-sum cost. Throws on dimension mismatch.
double cost(const QapInstance& inst, const Permutation& p);

/// cost(apply(p, m)) - cost(p) in O(n), without touching p.
double swap_delta(const QapInstance& inst, const Permutation& p, SwapMove m);

/// All n(n-1)/2 swap moves in lexicographic (i, j) order.
std::vector<SwapMove> swap_moves(int n);
inline std::vector<SwapMove> neighbors(const Permutation& p) { return swap_moves(p.size()); }

/// Batched delta evaluation for one assignment: load() gathers the permuted
/// flow matrix C = B[p,p] and its transpose once, after which each delta is
/// two contiguous-row kernel calls. This is the hill-climbing hot path.
class DeltaScanner {
 public:
  explicit DeltaScanner(const QapInstance& inst);

  void load(std::span<const int> p);
  double delta(SwapMove m) const;

  /// Strictly improving move with the largest decrease; lexicographic (i, j)
  /// order breaks ties. nullopt at a local optimum.
  struct Best {
    SwapMove move;
    double delta;
  };
  std::optional<Best> best_improving() const;

 private:
  const QapInstance* inst_;
  std::vector<double> c_, ct_;
  int n_;
};

/// Parses the instance format: n, then n×n matrix A, then n×n matrix B, all
/// whitespace-separated. Throws std::runtime_error with a descriptive message
/// on malformed input.
QapInstance read_instance(std::string_view text, std::string label = "");
QapInstance read_instance_file(const std::string& path);
std::string write_instance(const QapInstance& inst);

}  // namespace qaplon
