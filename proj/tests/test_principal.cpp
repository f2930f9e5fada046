#include <doctest.h>

#include "helpers.hpp"
#include "ncg/principal.hpp"

using namespace ncg;
using namespace ncg::test;

TEST_CASE("lattice box enumeration") {
  const auto box = lattice_box(2, 1);
  CHECK(box.size() == 9);
  CHECK(box.front() == MultiIndex{-1, -1});
  CHECK(box.back() == MultiIndex{1, 1});
  CHECK(lattice_box(1, 3).size() == 7);
  CHECK(lattice_box(0, 2).size() == 1);
  CHECK(format_index({1, -2}) == "(1,-2)");
}

TEST_CASE("splitting map on a generator") {
  const auto theta = t3_theta();
  const auto ell = splitting_map(theta, 2, {1, 0});
  REQUIRE(ell.terms().size() == 1);
  const auto& [key, c] = *ell.terms().begin();
  CHECK(key[0] == MultiIndex{-1, 0, 0});
  CHECK(key[1] == MultiIndex{1, 0, 0});
  CHECK(std::abs(c - Complex(1.0)) < 1e-15);
  CHECK(distance(multiply_legs(theta, ell), AlgebraElement::scalar(theta, 1.0)) < 1e-15);
}

TEST_CASE("principality on T^3 over T^2") {
  const auto theta = t3_theta();
  const auto report = check_principality(theta, 2, lattice_box(2, 3));
  CHECK(report.all_passed());
  CHECK(report.size() == 1 + 3 * 49);
  CHECK(report.passed("principality.iv"));
}

TEST_CASE("principality with random theta, every fibre rank") {
  for (int n = 1; n <= 4; ++n) {
    const auto theta = random_theta(4, 20 + static_cast<std::uint64_t>(n));
    const auto report = check_principality(theta, n, lattice_box(n, n <= 2 ? 3 : 1));
    CHECK_MESSAGE(report.all_passed(), "n=" << n << " max=" << report.max_violation());
  }
}

TEST_CASE("coaction degree of the splitting map") {
  const auto theta = random_theta(3, 30);
  const auto ell = splitting_map(theta, 1, {2});
  const auto right = apply_coaction(ell, 1, 1);
  REQUIRE(right.terms().size() == 1);
  CHECK(right.terms().begin()->first[2] == MultiIndex{2});
  const auto left = apply_coaction(ell, 0, 1);
  CHECK(left.terms().begin()->first[1] == MultiIndex{-2});
  const auto swapped = swap_legs(left, 0);
  CHECK(swapped.legs()[0] == Leg::Hopf);
}

TEST_CASE("a wrong splitting map fails the right-colinearity axiom") {
  const auto theta = random_theta(3, 31);
  Tensor wrong({Leg::Algebra, Leg::Algebra});
  wrong.add({{1, 0, 0}, {-1, 0, 0}}, 1.0);
  Tensor expected({Leg::Algebra, Leg::Algebra, Leg::Hopf});
  expected.add({{1, 0, 0}, {-1, 0, 0}, {1}}, 1.0);
  CHECK(distance(apply_coaction(wrong, 1, 1), expected) == doctest::Approx(1.0));
}

TEST_CASE("invalid fibre rank") {
  const auto theta = t3_theta();
  CHECK_THROWS_AS(check_principality(theta, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_principality(theta, 4, {}), std::invalid_argument);
}
