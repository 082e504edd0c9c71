#pragma once

#include <cstdint>
#include <span>

#include "qaplon/qap.hpp"

namespace qaplon {

/// Largest n with n! representable in 64 bits.
inline constexpr int kMaxFactorialN = 20;

/// n! for 0 <= n <= 20; throws std::invalid_argument beyond that.
std::uint64_t factorial(int n);

/// Lexicographic rank of p in [0, n!). O(n) via a popcount Lehmer code.
std::uint64_t rank_of(std::span<const int> p);
inline std::uint64_t rank(const Permutation& p) { return rank_of(p.span()); }

/// Inverse of rank: writes the permutation with the given lexicographic rank.
void unrank_into(std::uint64_t index, int n, std::span<int> out);
Permutation unrank(std::uint64_t index, int n);

}  // namespace qaplon
