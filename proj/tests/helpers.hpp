#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ncg/algebra.hpp"

namespace ncg::test {

inline ThetaPtr t3_theta(double t12 = 0.3) {
  ThetaMatrix t(3);
  t.set(0, 1, t12);
  return make_theta(t);
}

inline ThetaPtr random_theta(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return make_theta(ThetaMatrix::random(dim, rng, 1.0));
}

inline Complex cis(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

}  // namespace ncg::test
