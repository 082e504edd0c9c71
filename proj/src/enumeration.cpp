#include "qaplon/enumeration.hpp"

#include <array>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace qaplon {

namespace {

constexpr std::array<std::uint64_t, 21> kFactorials = [] {
  std::array<std::uint64_t, 21> f{};
  f[0] = 1;
  for (int i = 1; i <= 20; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  return f;
}();

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxFactorialN)
    throw std::invalid_argument("factorial: n out of [0, 20]");
  return kFactorials[static_cast<std::size_t>(n)];
}

std::uint64_t rank_of(std::span<const int> p) {
  const int n = static_cast<int>(p.size());
  if (n > kMaxFactorialN) throw std::invalid_argument("rank_of: n too large for 64-bit rank");
  std::uint32_t seen = 0;
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    const int v = p[static_cast<std::size_t>(i)];
    // Lehmer digit: values smaller than v not yet consumed.
    const int digit = v - std::popcount(seen & ((1u << v) - 1u));
    r += static_cast<std::uint64_t>(digit) * kFactorials[static_cast<std::size_t>(n - 1 - i)];
    seen |= 1u << v;
  }
  return r;
}

void unrank_into(std::uint64_t index, int n, std::span<int> out) {
  if (n < 0 || n > kMaxFactorialN) throw std::invalid_argument("unrank: n out of range");
  if (index >= kFactorials[static_cast<std::size_t>(n)])
    throw std::out_of_range("unrank: index out of [0, n!)");
  assert(static_cast<int>(out.size()) == n);
  std::array<int, 32> pool;
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  int remaining = n;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = kFactorials[static_cast<std::size_t>(n - 1 - i)];
    const int digit = static_cast<int>(index / f);
    index %= f;
    out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(digit)];
    for (int k = digit; k < remaining - 1; ++k) pool[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k + 1)];
    --remaining;
  }
}

Permutation unrank(std::uint64_t index, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  unrank_into(index, n, v);
  return make_permutation_unchecked(std::move(v));
}

}  // namespace qaplon
