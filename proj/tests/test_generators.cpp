#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qaplon/generators.hpp"
#include "qaplon/rng.hpp"

using namespace qaplon;

TEST_CASE("uniform: bounds, zero diagonal, determinism") {
  GeneratorParams params;
  params.uniform_lo = 5;
  params.uniform_hi = 17;
  for (std::uint64_t seed : {1ULL, 2ULL, 42ULL}) {
    const QapInstance inst = gen_uniform(9, seed, params);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        if (i == j) {
          CHECK(inst.a(i, j) == 0.0);
          CHECK(inst.b(i, j) == 0.0);
        } else {
          CHECK(inst.a(i, j) >= 5.0);
          CHECK(inst.a(i, j) <= 17.0);
          CHECK(inst.a(i, j) == std::floor(inst.a(i, j)));
          CHECK(inst.b(i, j) >= 5.0);
          CHECK(inst.b(i, j) <= 17.0);
        }
      }
  }
  CHECK(write_instance(gen_uniform(10, 7)) == write_instance(gen_uniform(10, 7)));
  CHECK(write_instance(gen_uniform(10, 7)) != write_instance(gen_uniform(10, 8)));
}

TEST_CASE("uniform: degenerate bounds make every permutation cost n(n-1)c^2") {
  GeneratorParams params;
  params.uniform_lo = params.uniform_hi = 3;
  const int n = 6;
  const QapInstance inst = gen_uniform(n, 9, params);
  Rng rng(1);
  const double expected = static_cast<double>(n) * (n - 1) * 9.0;
  for (int k = 0; k < 20; ++k) CHECK(cost(inst, random_permutation(n, rng)) == expected);
}

TEST_CASE("real-like: Euclidean distances are symmetric with zero diagonal") {
  const QapInstance inst = gen_real_like(11, 31);
  for (int i = 0; i < 11; ++i) {
    CHECK(inst.a(i, i) == 0.0);
    for (int j = 0; j < 11; ++j) {
      CHECK(inst.a(i, j) == inst.a(j, i));
      CHECK(inst.a(i, j) == std::floor(inst.a(i, j)));
      CHECK(inst.a(i, j) <= std::ceil(100.0 * std::sqrt(2.0)));
    }
  }
  CHECK(write_instance(gen_real_like(9, 5)) == write_instance(gen_real_like(9, 5)));
}

TEST_CASE("real-like: flow sparsity matches the binomial expectation") {
  GeneratorParams params;
  params.rl_zero_prob = 0.9;
  const int n = 11;
  const int off_diag = n * (n - 1);  // 110 entries, 99 expected zeros
  double total_zeros = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const QapInstance inst = gen_real_like(n, 1000 + static_cast<std::uint64_t>(s), params);
    int zeros = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && inst.b(i, j) == 0.0) ++zeros;
    total_zeros += zeros;
  }
  const double mean = total_zeros / seeds;
  // per-instance count ~ Binomial(110, 0.9): sd = sqrt(110*0.9*0.1) = 3.146
  const double se = std::sqrt(off_diag * 0.9 * 0.1 / seeds);
  CHECK(std::abs(mean - 99.0) <= 3.0 * se);
}

TEST_CASE("real-like: flows are heavy-tailed") {
  GeneratorParams params;
  params.rl_exponent_max = 4.0;
  int tail_ok = 0;
  for (int s = 0; s < 100; ++s) {
    const QapInstance inst = gen_real_like(11, 500 + static_cast<std::uint64_t>(s), params);
    std::vector<double> nonzero;
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j)
        if (i != j && inst.b(i, j) > 0.0) nonzero.push_back(inst.b(i, j));
    REQUIRE(!nonzero.empty());
    std::sort(nonzero.begin(), nonzero.end());
    const double median = nonzero[nonzero.size() / 2];
    const double mx = nonzero.back();
    CHECK(mx >= 1.0);
    if (mx / median > 10.0) ++tail_ok;
  }
  CHECK(tail_ok >= 95);
}

TEST_CASE("parameter validation") {
  GeneratorParams bad;
  bad.uniform_lo = 10;
  bad.uniform_hi = 3;
  CHECK_THROWS_AS(gen_uniform(5, 1, bad), std::invalid_argument);
  GeneratorParams bad2;
  bad2.rl_zero_prob = 1.0;
  CHECK_THROWS_AS(gen_real_like(5, 1, bad2), std::invalid_argument);
  GeneratorParams bad3;
  bad3.rl_grid = 3;
  CHECK_THROWS_AS(gen_real_like(5, 1, bad3), std::invalid_argument);
  CHECK_THROWS_AS(gen_uniform(1, 1), std::invalid_argument);
}

TEST_CASE("per-instance seed derivation is stable and injective-in-practice") {
  const auto s1 = instance_seed(99, InstanceClass::Uniform, 9, 0);
  CHECK(s1 == instance_seed(99, InstanceClass::Uniform, 9, 0));
  CHECK(s1 != instance_seed(99, InstanceClass::Uniform, 9, 1));
  CHECK(s1 != instance_seed(99, InstanceClass::RealLike, 9, 0));
  CHECK(s1 != instance_seed(99, InstanceClass::Uniform, 10, 0));
  CHECK(s1 != instance_seed(100, InstanceClass::Uniform, 9, 0));
}

TEST_CASE("class parsing") {
  CHECK(parse_class("uniform") == InstanceClass::Uniform);
  CHECK(parse_class("real-like") == InstanceClass::RealLike);
  CHECK_FALSE(parse_class("banana").has_value());
  CHECK(class_name(InstanceClass::RealLike) == "real-like");
}
