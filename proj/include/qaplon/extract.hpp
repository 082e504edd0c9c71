#pragma once

#include "qaplon/lon.hpp"
#include "qaplon/qap.hpp"

namespace qaplon {

struct ExtractOptions {
  /// Hard refusal above this n: extraction enumerates all n! permutations.
  int size_cap = 11;
  /// Worker threads; the result is bit-identical for any value.
  int workers = 1;
};

struct HillClimbResult {
  Permutation optimum;
  double fitness = 0.0;
  int steps = 0;
};

/// Deterministic best-improvement descent: take the neighbor with the largest
/// strict cost decrease, lexicographically smallest (i, j) on ties, stop when
/// no neighbor strictly improves.
HillClimbResult hill_climb(const QapInstance& inst, const Permutation& start);

/// Exhaustive LON construction: every one of the n! permutations is attributed
/// to the basin of its hill-climbing endpoint, and edge weights are the
/// averaged one-step basin transition probabilities
///   w_ij = (1/|b_i|) * sum_{s in b_i} |N(s) ∩ b_j| / |N(s)|.
Lon extract_lon(const QapInstance& inst, const ExtractOptions& opts = {});

struct GlobalOptimum {
  double cost = 0.0;
  Permutation witness;  ///< smallest-rank permutation attaining the minimum
};

/// Exact global minimum by direct enumeration (no LON needed).
GlobalOptimum global_optimum(const QapInstance& inst, const ExtractOptions& opts = {});

}  // namespace qaplon
