#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "ncg/errors.hpp"
#include "ncg/projection.hpp"

using namespace ncg;
using namespace ncg::test;

namespace {

Matrix sigma3() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace

TEST_CASE("grading and horizontal Dirac operator on T^3 over T^2") {
  const auto p = projectable_flat_example(t3_theta(), 2, 1, 3);
  CHECK_FALSE(p.doubled);
  CHECK(check_grading(p.triple, p.Gamma).all_passed());
  const auto expected = spinor_operator(sigma3(), p.triple.space) * derivation_operator(2, p.triple.space);
  CHECK(interior_deviation(p.D_h, expected) < 1e-14);
  CHECK(interior_deviation(p.D_v + p.D_h + p.Z, p.triple.D) < 1e-14);
  const bool pm = (p.gamma_spinor - sigma3()).cwiseAbs().maxCoeff() < 1e-14 ||
                  (p.gamma_spinor + sigma3()).cwiseAbs().maxCoeff() < 1e-14;
  CHECK(pm);
}

TEST_CASE("both grading signs are accepted") {
  const auto plus = projectable_flat_example(t3_theta(), 2, 1, 2, 1);
  const auto minus = projectable_flat_example(t3_theta(), 2, 1, 2, -1);
  CHECK(interior_deviation(plus.Gamma, scale(minus.Gamma, -1.0)) < 1e-15);
  CHECK(check_isometric_fibres(minus).all_passed());
}

TEST_CASE("required J-Gamma sign") {
  CHECK(required_J_Gamma_sign(2, 1) == -1);
  CHECK(std::abs(required_J_Gamma_sign(1, 1)) == 1);
}

TEST_CASE("isometric fibres for flat tori") {
  struct Case {
    int n, m, cutoff;
  };
  for (const auto& c : {Case{2, 1, 3}, Case{1, 1, 4}, Case{1, 2, 3}, Case{2, 2, 2}, Case{3, 1, 2}}) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    const auto p = projectable_flat_example(random_theta(c.n + c.m, 70), c.n, c.m, c.cutoff);
    const auto report = check_isometric_fibres(p);
    CHECK_MESSAGE(report.all_passed(), report.failures().front());
    CHECK(report.passed("fibres.parity"));
  }
}

TEST_CASE("isometric fibres negative controls") {
  const auto p = projectable_flat_example(t3_theta(), 2, 1, 3);
  const auto& s = p.triple.space;

  // D_v with a delta_3 admixture no longer vanishes on H_0
  const auto bad_v = p.D_v + spinor_operator(p.triple.gammas.matrices[0], s) * derivation_operator(2, s);
  const auto r1 = check_isometric_fibres(p, 1e-12, bad_v);
  CHECK_FALSE(r1.passed("fibres.a"));

  // a zero-order admixture that is not invariant breaks [D_v, delta_i] = 0
  const auto u1 = AlgebraElement::generator(p.triple.theta, 0);
  const auto bump = spinor_operator(p.triple.gammas.matrices[0], s) * p.triple.pi(u1 + star(u1));
  const auto r2 = check_isometric_fibres(p, 1e-12, p.D_v + bump);
  CHECK_FALSE(r2.passed("fibres.c"));
}

TEST_CASE("H_0 and the base triple of T^3") {
  const auto p = projectable_flat_example(t3_theta(), 2, 1, 4);
  const auto h0 = h0_indices(p.triple.space, 2);
  CHECK(h0.size() == 18);
  const auto base = restrict_to_H0(p);
  CHECK(base.report.all_passed());
  CHECK(base.recipe.j == 1);
  CHECK(base.recipe.n == 2);
  CHECK(base.recipe.d_prime == DPrime::GammaD0);
  CHECK(base.recipe.j0 == J0Choice::GammaJ);
  CHECK(base.kr_dim_base == 1);
  const auto ev = spectrum(base.D0);
  REQUIRE(ev.size() == 18);
  for (int v = -4; v <= 4; ++v) {
    CHECK(std::count_if(ev.begin(), ev.end(), [&](double e) { return std::abs(e - v) < 1e-9; }) == 2);
  }
  // D_0 = sigma^3 k_3 on the diagonal
  const auto dense = to_dense(base.D0);
  CHECK((dense - Matrix(dense.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(verify_base_kr(base).all_passed());
}

TEST_CASE("recipe table entries") {
  const auto ee = base_triple_recipe(2, 2);
  CHECK(ee.j0 == J0Choice::J);
  CHECK(ee.gamma0 == Gamma0Choice::gammaGamma);
  CHECK(ee.d_prime == DPrime::D0);
  CHECK_FALSE(ee.pathological);

  const auto oe = base_triple_recipe(1, 2);
  CHECK(oe.d_prime == DPrime::GammaD0);
  CHECK(oe.j0 == J0Choice::GammaJ);
  CHECK(oe.gamma0 == Gamma0Choice::None);

  const auto path = base_triple_recipe(0, 3);
  CHECK(path.j0 == J0Choice::J);
  CHECK(path.pathological);

  int pathological = 0;
  for (int j = 0; j < 8; ++j) {
    for (int n = 1; n <= 8; ++n) pathological += base_triple_recipe(j, n).pathological;
  }
  CHECK(pathological == 4);
  CHECK(base_triple_recipe(10, 11).j0 == base_triple_recipe(2, 3).j0);
  CHECK(to_string(DPrime::GammaD0) == "Gamma D0");
  CHECK_THROWS_AS(base_triple_recipe(0, 0), std::invalid_argument);
}

TEST_CASE("even-even base on T^4 over T^2") {
  const auto p = projectable_flat_example(random_theta(4, 71), 2, 2, 3);
  const auto base = restrict_to_H0(p);
  CHECK(base.recipe.j == 2);
  CHECK(base.gamma0.has_value());
  const auto report = verify_base_kr(base);
  CHECK_MESSAGE(report.all_passed(), report.failures().front());
}

TEST_CASE("T^3 over a point shows the wrong sign of j_0^2") {
  const auto p = projectable_flat_example(random_theta(3, 72), 3, 0, 2);
  const auto base = restrict_to_H0(p);
  CHECK(base.recipe.pathological);
  const auto report = verify_base_kr(base);
  CHECK(report.contains("base_kr.j0_square_wrong_sign"));
  CHECK(report.all_passed());
}

TEST_CASE("restriction requires isometric fibres") {
  auto p = projectable_flat_example(t3_theta(), 2, 1, 2);
  p.D_v = p.D_v + spinor_operator(p.triple.gammas.matrices[0], p.triple.space) * derivation_operator(2, p.triple.space);
  CHECK_THROWS_AS(restrict_to_H0(p), PreconditionError);
}
