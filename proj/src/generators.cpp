#include "qaplon/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qaplon/rng.hpp"

namespace qaplon {

std::string_view class_name(InstanceClass c) {
  return c == InstanceClass::Uniform ? "uniform" : "real-like";
}

std::optional<InstanceClass> parse_class(std::string_view name) {
  if (name == "uniform") return InstanceClass::Uniform;
  if (name == "real-like" || name == "rl") return InstanceClass::RealLike;
  return std::nullopt;
}

void GeneratorParams::validate(int n) const {
  if (uniform_lo > uniform_hi || uniform_lo < 0)
    throw std::invalid_argument("generator: need 0 <= uniform_lo <= uniform_hi");
  if (rl_zero_prob < 0.0 || rl_zero_prob >= 1.0)
    throw std::invalid_argument("generator: need 0 <= rl_zero_prob < 1");
  if (rl_exponent_max <= 0.0)
    throw std::invalid_argument("generator: need rl_exponent_max > 0");
  if (rl_grid < n) throw std::invalid_argument("generator: need rl_grid >= n");
}

namespace {

std::string make_label(InstanceClass cls, int n, std::uint64_t seed) {
  return std::string(class_name(cls)) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
}

}  // namespace

QapInstance gen_uniform(int n, std::uint64_t seed, const GeneratorParams& params) {
  if (n < 2) throw std::invalid_argument("gen_uniform: n must be >= 2");
  params.validate(n);
  Rng rng(seed);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<double> a(nn, 0.0), b(nn, 0.0);
  // Draw order is part of the determinism contract: A row-major, then B,
  // diagonals skipped.
  for (auto* m : {&a, &b}) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        (*m)[static_cast<std::size_t>(i) * n + j] =
            static_cast<double>(rng.range(params.uniform_lo, params.uniform_hi));
      }
  }
  return QapInstance(n, std::move(a), std::move(b),
                     make_label(InstanceClass::Uniform, n, seed));
}

QapInstance gen_real_like(int n, std::uint64_t seed, const GeneratorParams& params) {
  if (n < 2) throw std::invalid_argument("gen_real_like: n must be >= 2");
  params.validate(n);
  Rng rng(seed);
  const std::size_t nn = static_cast<std::size_t>(n) * n;

  // Locations first: n points uniform on the square, distances rounded.
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = rng.unit() * params.rl_grid;
    ys[static_cast<std::size_t>(i)] = rng.unit() * params.rl_grid;
  }
  std::vector<double> a(nn, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dx = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
      const double dy = ys[static_cast<std::size_t>(i)] - ys[static_cast<std::size_t>(j)];
      const double d = std::round(std::sqrt(dx * dx + dy * dy));
      a[static_cast<std::size_t>(i) * n + j] = d;
      a[static_cast<std::size_t>(j) * n + i] = d;
    }

  // Flows: sparse and heavy-tailed, independent per ordered pair.
  std::vector<double> b(nn, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.unit() < params.rl_zero_prob) continue;
      const double u = params.rl_exponent_max * (1.0 - rng.unit());  // (0, max]
      b[static_cast<std::size_t>(i) * n + j] = std::floor(std::pow(10.0, u));
    }
  return QapInstance(n, std::move(a), std::move(b),
                     make_label(InstanceClass::RealLike, n, seed));
}

QapInstance generate(InstanceClass cls, int n, std::uint64_t seed,
                     const GeneratorParams& params) {
  return cls == InstanceClass::Uniform ? gen_uniform(n, seed, params)
                                       : gen_real_like(n, seed, params);
}

std::uint64_t instance_seed(std::uint64_t master, InstanceClass cls, int n, int index) {
  return derive_seed(master, class_name(cls), static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(index));
}

}  // namespace qaplon
