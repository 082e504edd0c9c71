#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qaplon/qap.hpp"

namespace qaplon {

enum class InstanceClass { Uniform, RealLike };

std::string_view class_name(InstanceClass c);
std::optional<InstanceClass> parse_class(std::string_view name);

/// Generator knobs. The study's two instance families:
///   uniform   — A and B off-diagonal entries i.i.d. integers in [lo, hi]
///   real-like — A: rounded Euclidean distances of random points on a
///               grid×grid square; B: sparse flows, zero with probability
///               rl_zero_prob, otherwise floor(10^u) with u uniform on
///               (0, rl_exponent_max]
struct GeneratorParams {
  int uniform_lo = 0;
  int uniform_hi = 99;
  double rl_zero_prob = 0.6;
  double rl_exponent_max = 4.0;
  int rl_grid = 100;

  void validate(int n) const;
};

QapInstance gen_uniform(int n, std::uint64_t seed, const GeneratorParams& params = {});
QapInstance gen_real_like(int n, std::uint64_t seed, const GeneratorParams& params = {});
QapInstance generate(InstanceClass cls, int n, std::uint64_t seed,
                     const GeneratorParams& params = {});

/// Per-instance seed for cell (class, n, index) under one master seed.
std::uint64_t instance_seed(std::uint64_t master, InstanceClass cls, int n, int index);

}  // namespace qaplon
