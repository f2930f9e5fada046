#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"

using namespace ncg;
using namespace ncg::test;

TEST_CASE("monomial product of U_1 and U_2") {
  const auto theta = random_theta(3, 1);
  const auto p12 = monomial_product({1, 0, 0}, {0, 1, 0}, *theta);
  CHECK(std::abs(p12.phase - Complex(1.0)) < 1e-15);
  CHECK(p12.index == MultiIndex{1, 1, 0});
  const auto p21 = monomial_product({0, 1, 0}, {1, 0, 0}, *theta);
  CHECK(p21.index == MultiIndex{1, 1, 0});
  CHECK(std::abs(p21.phase - cis((*theta)(1, 0))) < 1e-15);
  // U_1 U_2 = e^{2 pi i theta_12} U_2 U_1
  CHECK(std::abs(p12.phase / p21.phase - cis((*theta)(0, 1))) < 1e-14);
}

TEST_CASE("monomial product identities") {
  const auto theta = random_theta(3, 2);
  const auto p = monomial_product({2, -1, 3}, {0, 0, 0}, *theta);
  CHECK(p.phase == Complex(1.0));
  CHECK(p.index == MultiIndex{2, -1, 3});
  const ThetaMatrix zero(3);
  const auto q = monomial_product({2, -1, 3}, {-4, 5, 1}, zero);
  CHECK(q.phase == Complex(1.0));
  CHECK(q.index == MultiIndex{-2, 4, 4});
  CHECK_THROWS_AS(monomial_product({1, 0}, {1, 0, 0}, *theta), std::invalid_argument);
  CHECK(std::abs(std::abs(monomial_product({7, -3, 2}, {-5, 9, 4}, *theta).phase) - 1.0) < 1e-15);
}

TEST_CASE("unit_phase is exact on quarter turns") {
  CHECK(unit_phase(0.25) == Complex(0, 1));
  CHECK(unit_phase(-0.5) == Complex(-1, 0));
  CHECK(unit_phase(3.0) == Complex(1, 0));
}

TEST_CASE("theta must be antisymmetric") {
  CHECK_THROWS_AS(ThetaMatrix::from_rows({{0, 0.1}, {0.2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ThetaMatrix::from_rows({{0.1, 0}, {0, 0}}), std::invalid_argument);
  CHECK_NOTHROW(ThetaMatrix::from_rows({{0, 0.1}, {-0.1, 0}}));
}

TEST_CASE("unitarity and products") {
  const auto theta = random_theta(3, 3);
  const auto u1 = AlgebraElement::generator(theta, 0);
  CHECK(distance(u1 * star(u1), AlgebraElement::scalar(theta, 1.0)) < 1e-15);
  CHECK(distance(star(u1) * u1, AlgebraElement::scalar(theta, 1.0)) < 1e-15);
}

TEST_CASE("(U_1 + U_2) U_3 with theta_13 = theta_23 = 1/4") {
  ThetaMatrix t(3);
  t.set(0, 2, 0.25);
  t.set(1, 2, 0.25);
  const auto theta = make_theta(t);
  const auto u1 = AlgebraElement::generator(theta, 0);
  const auto u2 = AlgebraElement::generator(theta, 1);
  const auto u3 = AlgebraElement::generator(theta, 2);
  const auto lhs = (u1 + u2) * u3;
  const auto rhs = Complex(0, 1) * (u3 * u1 + u3 * u2);
  CHECK(distance(lhs, rhs) < 1e-15);
  // Both are normal-ordered monomials with unit coefficient.
  CHECK(lhs.coefficient({1, 0, 1}) == Complex(1.0));
  CHECK(lhs.coefficient({0, 1, 1}) == Complex(1.0));
}

TEST_CASE("star") {
  const auto theta = random_theta(3, 4);
  const auto u1 = AlgebraElement::generator(theta, 0);
  CHECK(distance(star(u1), AlgebraElement::monomial(theta, {-1, 0, 0})) < 1e-15);
  const auto s = AlgebraElement::scalar(theta, Complex(2, 3));
  CHECK(distance(star(s), AlgebraElement::scalar(theta, Complex(2, -3))) < 1e-15);
}

TEST_CASE("derivations") {
  const auto theta = random_theta(3, 5);
  const auto u1 = AlgebraElement::generator(theta, 0);
  const auto u2 = AlgebraElement::generator(theta, 1);
  CHECK(distance(derivation(0, u1 * u2), u1 * u2) < 1e-15);
  CHECK(derivation(1, AlgebraElement::scalar(theta, 1.0)).is_zero());
  CHECK_THROWS_AS(derivation(3, u1), std::invalid_argument);
  CHECK_THROWS_AS(derivation(-1, u1), std::invalid_argument);
}

TEST_CASE("trace") {
  const auto theta = random_theta(3, 6);
  CHECK(trace(AlgebraElement::scalar(theta, 1.0)) == Complex(1.0));
  CHECK(trace(AlgebraElement::monomial(theta, {1, -2, 0})) == Complex(0.0));
}

TEST_CASE("algebra laws on random sparse elements") {
  const auto theta = random_theta(3, 7);
  std::mt19937_64 rng(11);
  for (int s = 0; s < 50; ++s) {
    const auto a = random_element(theta, rng, 2, 4);
    const auto b = random_element(theta, rng, 2, 4);
    const auto c = random_element(theta, rng, 2, 4);
    CHECK(distance((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(distance(a * (b + c), a * b + a * c) < 1e-12);
    CHECK(distance(star(a * b), star(b) * star(a)) < 1e-13);
    CHECK(distance(star(star(a)), a) < 1e-14);
    for (int j = 0; j < 3; ++j) {
      CHECK(distance(derivation(j, a * b), derivation(j, a) * b + a * derivation(j, b)) < 1e-12);
      CHECK(distance(derivation(j, derivation((j + 1) % 3, a)), derivation((j + 1) % 3, derivation(j, a))) < 1e-12);
    }
    CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-13);
    CHECK(std::abs(trace(star(a) * a) - coefficient_norm2(a)) < 1e-13);
  }
}

TEST_CASE("theta = 0 is commutative") {
  const auto theta = make_theta(ThetaMatrix(3));
  std::mt19937_64 rng(12);
  for (int s = 0; s < 20; ++s) {
    const auto a = random_element(theta, rng, 2, 3);
    const auto b = random_element(theta, rng, 2, 3);
    CHECK(distance(a * b, b * a) < 1e-14);
  }
}

TEST_CASE("different algebras do not mix") {
  const auto a = AlgebraElement::generator(random_theta(3, 1), 0);
  const auto b = AlgebraElement::generator(random_theta(3, 2), 0);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("graded decomposition") {
  const auto theta = t3_theta();
  const auto u1 = AlgebraElement::generator(theta, 0);
  const auto u3 = AlgebraElement::generator(theta, 2);
  auto parts = graded_decompose(u3, 2);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].degree == MultiIndex{0, 0});
  parts = graded_decompose(u1 * u3, 2);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].degree == MultiIndex{1, 0});
  parts = graded_decompose(u1 + u3, 2);
  REQUIRE(parts.size() == 2);
  CHECK(distance(parts[0].element + parts[1].element, u1 + u3) == 0.0);
  CHECK(is_homogeneous(u1 * u3, 2, {1, 0}));
  CHECK_FALSE(is_homogeneous(u1 + u3, 2, {1, 0}));
}

TEST_CASE("grading is multiplicative") {
  const auto theta = random_theta(3, 8);
  std::mt19937_64 rng(13);
  for (int s = 0; s < 20; ++s) {
    const MultiIndex q{s % 3 - 1, 1}, l{-1, s % 2};
    const auto a = random_graded_element(theta, rng, q, 2, 3);
    const auto b = random_graded_element(theta, rng, l, 2, 3);
    CHECK(is_homogeneous(a * b, 2, {q[0] + l[0], q[1] + l[1]}));
  }
}

TEST_CASE("random invariant selfadjoint elements") {
  const auto theta = random_theta(3, 9);
  std::mt19937_64 rng(14);
  const auto b = random_invariant_selfadjoint(theta, rng, 2, 2, 3);
  CHECK(distance(b, star(b)) < 1e-15);
  CHECK(is_homogeneous(b, 2, {0, 0}));
}
