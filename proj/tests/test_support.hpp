#pragma once

// Random smooth-function trees for property tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tamelab/function_space.hpp"

namespace tamelab::testing {

struct TreeGenerator {
  explicit TreeGenerator(std::uint64_t seed, Domain domain = Domain::Periodic1,
                         double amplitude = 1.0, int max_frequency = 3)
      : rng(seed), domain(domain), amplitude(amplitude), max_frequency(max_frequency) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

  SmoothFunction leaf() {
    if (pick(4) == 0) return SmoothFunction::constant(uniform(-amplitude, amplitude), domain);
    return SmoothFunction::sinusoid(uniform(-amplitude, amplitude), 1 + pick(max_frequency),
                                    uniform(0.0, 1.0), domain);
  }

  SmoothFunction tree(int depth = 2) {
    if (depth == 0) return leaf();
    switch (pick(5)) {
      case 0: return SmoothFunction::sum({tree(depth - 1), tree(depth - 1)});
      case 1: return SmoothFunction::product({tree(depth - 1), tree(depth - 1)});
      case 2: return SmoothFunction::scale(uniform(-1.5, 1.5), tree(depth - 1));
      case 3: {
        static const std::vector<ScalarPrimitive> prims = {
            ScalarPrimitive::sin(), ScalarPrimitive::cos(), ScalarPrimitive::tanh(),
            ScalarPrimitive::exp()};
        return SmoothFunction::compose(prims[static_cast<std::size_t>(pick(4))], tree(depth - 1));
      }
      default: return leaf();
    }
  }

  std::mt19937_64 rng;
  Domain domain;
  double amplitude;
  int max_frequency;
};

// Central difference for the n-th derivative with offsets (n/2 - j) h. The
// truncation error is even in h, so Richardson steps eliminate h^2, h^4, ...
inline double central_difference(const std::function<double(double)>& f, double x, int n,
                                 double h) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    acc += ((j % 2) ? -1.0 : 1.0) * binom * f(x + (0.5 * n - j) * h);
  }
  return acc / std::pow(h, n);
}

inline double richardson_derivative(const std::function<double(double)>& f, double x, int n,
                                    double h, int levels = 4) {
  std::vector<std::vector<double>> table(static_cast<std::size_t>(levels),
                                         std::vector<double>(static_cast<std::size_t>(levels)));
  for (int r = 0; r < levels; ++r) table[r][0] = central_difference(f, x, n, h / std::pow(2.0, r));
  for (int c = 1; c < levels; ++c) {
    const double factor = std::pow(4.0, c);
    for (int r = c; r < levels; ++r) {
      table[r][c] = (factor * table[r][c - 1] - table[r - 1][c - 1]) / (factor - 1.0);
    }
  }
  return table[levels - 1][levels - 1];
}

}  // namespace tamelab::testing
