#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "ncg/connection.hpp"
#include "ncg/errors.hpp"
#include "ncg/principal.hpp"

using namespace ncg;
using namespace ncg::test;

namespace {

Matrix sigma(int k) {
  Matrix s(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, Complex(0, -1), Complex(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

struct T3 {
  ProjectabilityData p;
  BaseTriple base;
};

T3 t3(int cutoff, double t12 = 0.3) {
  auto p = projectable_flat_example(t3_theta(t12), 2, 1, cutoff);
  auto base = restrict_to_H0(p);
  return {std::move(p), std::move(base)};
}

}  // namespace

TEST_CASE("canonical and constant families are strong connections") {
  const auto s = t3(3);
  const auto& t = s.p.triple;
  const auto canonical = ConnectionFamily::canonical(t.theta, 2, 1);
  CHECK(canonical.degree() == 0);
  CHECK(canonical.selfadjoint(t));
  CHECK(check_strong_connection(canonical, t).all_passed());

  const auto constant = ConnectionFamily::constant(t.theta, 2, 1, {0.5, -0.25});
  const auto report = check_strong_connection(constant, t);
  CHECK_MESSAGE(report.all_passed(), report.failures().front());

  // omega_1 = sigma^1 + 0.5 sigma^3
  const auto forms = constant.forms(t);
  const auto expected = spinor_operator(sigma(1) + 0.5 * sigma(3), t.space);
  CHECK(interior_deviation(realize(forms[0], t.space), expected) < 1e-14);
}

TEST_CASE("nonconstant selfadjoint coefficients") {
  const auto s = t3(3);
  const auto& t = s.p.triple;
  auto family = ConnectionFamily::canonical(t.theta, 2, 1);
  const auto u3 = AlgebraElement::generator(t.theta, 2);
  family.b[0][0] = 0.5 * (u3 + star(u3));
  CHECK(family.degree() == 1);
  CHECK(family.selfadjoint(t));
  CHECK(check_strong_connection(family, t).all_passed());
}

TEST_CASE("a sigma^2 admixture in omega_1 breaks normalization") {
  const auto s = t3(3);
  const auto& t = s.p.triple;
  auto family = ConnectionFamily::canonical(t.theta, 2, 1);
  const auto u2 = AlgebraElement::generator(t.theta, 1);
  family.extra[0].emplace_back(star(u2), u2);
  const auto report = check_strong_connection(family, t);
  CHECK_FALSE(report.passed("connection.ii["));
  CHECK(report.passed("connection.i."));
}

TEST_CASE("connection from the splitting map") {
  const auto s = t3(3);
  const auto& t = s.p.triple;
  const auto e1 = connection_from_ell({1, 0}, t);
  CHECK(e1.report.all_passed());
  CHECK(interior_deviation(e1.form, spinor_operator(sigma(1), t.space)) < 1e-14);
  const auto zero = connection_from_ell({0, 0}, t);
  CHECK(interior_norm(zero.form) < 1e-15);
  const auto e12 = connection_from_ell({1, 1}, t);
  CHECK(e12.report.all_passed());
  CHECK(interior_deviation(e12.form, spinor_operator(sigma(1) + sigma(2), t.space)) < 1e-14);
}

TEST_CASE("nabla in degree zero is the commutator with D") {
  const auto s = t3(4);
  const auto& t = s.p.triple;
  const auto family = ConnectionFamily::constant(t.theta, 2, 1, {0.5, -0.25});
  std::mt19937_64 rng(80);
  const auto b = random_graded_element(t.theta, rng, {0, 0}, 1, 3);
  CHECK(interior_deviation(nabla_omega(b, family, t), commutator(t.D, t.pi(b))) < 1e-12);
}

TEST_CASE("nabla of U_1 with the canonical family is the sigma^3 delta_3 part") {
  const auto s = t3(4);
  const auto& t = s.p.triple;
  const auto family = ConnectionFamily::canonical(t.theta, 2, 1);
  const auto u1 = AlgebraElement::generator(t.theta, 0);
  const auto expected = spinor_operator(sigma(3), t.space) * t.pi(derivation(2, u1));
  CHECK(interior_deviation(nabla_omega(u1, family, t), expected) < 1e-14);
  const auto u13 = u1 * AlgebraElement::generator(t.theta, 2);
  const auto expected2 = spinor_operator(sigma(3), t.space) * t.pi(derivation(2, u13));
  CHECK(interior_deviation(nabla_omega(u13, family, t), expected2) < 1e-14);
}

TEST_CASE("Leibniz rule and hermiticity of nabla") {
  const auto s = t3(4);
  auto family = ConnectionFamily::constant(s.p.triple.theta, 2, 1, {0.5, -0.25});
  const auto report = check_nabla(family, s.base, s.p, lattice_box(2, 1));
  CHECK_MESSAGE(report.all_passed(), report.failures().front());
  CHECK(report.passed("nabla.hermitian_ii"));
}

TEST_CASE("twisted Dirac operator of the canonical family is D_h") {
  const auto s = t3(3);
  const auto family = ConnectionFamily::canonical(s.p.triple.theta, 2, 1);
  const auto tw = twisted_dirac(s.base, family, s.p);
  CHECK(tw.J_used == "Gamma j0");
  CHECK(interior_deviation(tw.D_omega, s.p.D_h) < 1e-14);
  CHECK(compatibility_deviation(tw, s.p) < 1e-14);
  CHECK(check_compatibility(tw, s.p).all_passed());
  const auto v = verify_twist(tw, family, s.p);
  CHECK_MESSAGE(v.all_passed(), v.failures().front());
  CHECK(verify_reprojection(tw, s.p).all_passed());
  CHECK(check_sector_equivalence(tw, family, s.p, lattice_box(2, 1)).all_passed());
}

TEST_CASE("constant family: closed-form spectra") {
  const double c1 = 0.5, c2 = -0.25;
  const auto s = t3(2);
  const auto& sp = s.p.triple.space;
  const auto family = ConnectionFamily::constant(s.p.triple.theta, 2, 1, {c1, c2});
  const auto tw = twisted_dirac(s.base, family, s.p);
  const auto expected = spinor_operator(sigma(3), sp) *
                        (derivation_operator(2, sp) - scale(derivation_operator(0, sp), c1) -
                         scale(derivation_operator(1, sp), c2));
  CHECK(interior_deviation(tw.D_omega, expected) < 1e-14);

  std::vector<double> flat, full;
  for (Index site = 0; site < sp.lattice_size(); ++site) {
    const auto k = sp.site(site);
    const double l = k[2] - c1 * k[0] - c2 * k[1];
    flat.push_back(l);
    flat.push_back(-l);
    const double r = std::sqrt(k[0] * k[0] + k[1] * k[1] + l * l);
    full.push_back(r);
    full.push_back(-r);
  }
  std::sort(flat.begin(), flat.end());
  std::sort(full.begin(), full.end());
  const auto ev = spectrum(tw.D_omega);
  const auto ev2 = spectrum(tw.script_D_omega);
  REQUIRE(ev.size() == flat.size());
  REQUIRE(ev2.size() == full.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(ev[i] == doctest::Approx(flat[i]).epsilon(1e-12));
    CHECK(ev2[i] == doctest::Approx(full[i]).epsilon(1e-12));
  }

  CHECK_FALSE(check_compatibility(tw, s.p).all_passed());
  CHECK(verify_reprojection(tw, s.p).all_passed());
  CHECK(check_sector_equivalence(tw, family, s.p, lattice_box(2, 1)).all_passed());
}

TEST_CASE("a nonconstant family is not compatible") {
  const auto s = t3(3);
  auto family = ConnectionFamily::canonical(s.p.triple.theta, 2, 1);
  const auto u3 = AlgebraElement::generator(s.p.triple.theta, 2);
  family.b[0][0] = 0.5 * (u3 + star(u3));
  const auto tw = twisted_dirac(s.base, family, s.p);
  CHECK(compatibility_deviation(tw, s.p) > 0.1);
  CHECK(verify_twist(tw, family, s.p).passed("twist.selfadjoint"));
  CHECK(check_sector_equivalence(tw, family, s.p, lattice_box(2, 1)).all_passed());
}

TEST_CASE("twisting needs a selfadjoint family") {
  const auto s = t3(2);
  auto family = ConnectionFamily::canonical(s.p.triple.theta, 2, 1);
  family.b[0][0] = AlgebraElement::scalar(s.p.triple.theta, Complex(0, 1));
  CHECK_FALSE(family.selfadjoint(s.p.triple));
  CHECK_THROWS_AS(twisted_dirac(s.base, family, s.p), PreconditionError);
}

TEST_CASE("even fibre rank: T^4 over T^2") {
  const auto p = projectable_flat_example(random_theta(4, 81), 2, 2, 2);
  const auto base = restrict_to_H0(p);
  const auto family = ConnectionFamily::constant(p.triple.theta, 2, 2, {0.5, 0.0, 0.0, -1.0});
  const auto tw = twisted_dirac(base, family, p);
  const auto v = verify_twist(tw, family, p);
  CHECK(v.contains("twist.reducibility"));
  CHECK_MESSAGE(v.all_passed(), v.failures().front());
  CHECK(verify_reprojection(tw, p).all_passed());
}
