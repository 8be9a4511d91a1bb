#pragma once

// Deterministic pseudo-random scalars and tensors for property tests. All
// draws go through one engine so a fixed seed reproduces the whole stream.

#include <cstdint>
#include <random>

#include "nambu/tensor.hpp"

namespace nambu {

class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

  // Uniform-ish draw in [0, n); n >= 1.
  std::uint64_t next(std::uint64_t n) { return rng_() % n; }
  // Nonzero rational in [-bound, bound].
  Rational rational(int bound);

 private:
  std::mt19937_64 rng_;
};

// Small polynomial (occasionally with an exponential or symbol factor) in the
// chart coordinates and the given function symbols.
ScalarExpr random_scalar(RandomGen& g, const ChartPtr& chart,
                         const std::vector<std::string>& symbols,
                         int max_terms);

// Homogeneous tensor of the given variance and grade with random sparse
// components. May be zero.
ExteriorTensor random_tensor(RandomGen& g, const AlgebroidPtr& A, Variance v,
                             int grade, int max_terms);

}  // namespace nambu
