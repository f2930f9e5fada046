#include <doctest.h>

#include "helpers.hpp"
#include "ncg/triple.hpp"

using namespace ncg;
using namespace ncg::test;

TEST_CASE("flat triples pass the axioms") {
  struct Case {
    int n, m, cutoff;
  };
  for (const auto& c : {Case{2, 1, 3}, Case{1, 1, 4}, Case{1, 2, 3}, Case{2, 2, 2}, Case{1, 3, 2}}) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    const auto theta = random_theta(c.n + c.m, 50 + static_cast<std::uint64_t>(c.n * 10 + c.m));
    const auto t = build_flat_triple(theta, c.n, c.m, c.cutoff);
    CHECK(t.kr_dim == c.n + c.m);
    CHECK(t.gamma.has_value() == ((c.n + c.m) % 2 == 0));
    TripleCheckOptions opt;
    opt.samples = 2;
    opt.a_degree = 1;
    opt.boundedness = c.n + c.m <= 3;
    const auto report = verify_equivariant_real_triple(t, opt);
    CHECK_MESSAGE(report.all_passed(), report.failures().front());
  }
}

TEST_CASE("D on T^3 at cutoff 1 has 54 eigenvalues") {
  const auto t = build_flat_triple(t3_theta(), 2, 1, 1);
  CHECK(t.space.total_dim() == 54);
  CHECK(spectrum(t.D).size() == 54);
}

TEST_CASE("spectrum does not depend on theta") {
  const auto a = spectrum(build_flat_triple(make_theta(ThetaMatrix(3)), 2, 1, 2).D);
  const auto b = spectrum(build_flat_triple(random_theta(3, 60), 2, 1, 2).D);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("dropping C from J breaks JD = eps' DJ") {
  const auto t = build_flat_triple(t3_theta(), 2, 1, 2);
  const auto bad = with_charge_conj(t, Matrix::Identity(2, 2));
  TripleCheckOptions opt;
  opt.samples = 1;
  opt.boundedness = false;
  const auto report = verify_equivariant_real_triple(bad, opt);
  CHECK_FALSE(report.passed("triple.kr.JD"));
  CHECK(report.passed("triple.D.selfadjoint"));
}

TEST_CASE("a central zero-order term keeps the triple") {
  const auto theta = make_theta(ThetaMatrix(3));
  const auto t = build_flat_triple(theta, 2, 1, 3);
  const auto b = AlgebraElement::monomial(theta, {0, 0, 1}) + AlgebraElement::monomial(theta, {0, 0, -1});
  const auto z = with_zero_order(t, 0.5 * t.pi(b));
  TripleCheckOptions opt;
  opt.samples = 2;
  opt.a_degree = 1;
  opt.boundedness = false;
  const auto report = verify_equivariant_real_triple(z, opt);
  CHECK(report.passed("triple.D.selfadjoint"));
  CHECK(report.passed("triple.first_order"));
  CHECK(report.passed("triple.commutant"));
}

TEST_CASE("right action via J") {
  const auto t = build_flat_triple(random_theta(3, 61), 2, 1, 2);
  std::mt19937_64 rng(62);
  const auto b = random_element(t.theta, rng, 1, 2);
  CHECK(interior_deviation(opposite(t, b), right_represent(b, t.space)) < 1e-12);
}

TEST_CASE("commutators of D with the algebra") {
  const auto t = build_flat_triple(random_theta(3, 63), 2, 1, 4);
  const auto u1 = AlgebraElement::generator(t.theta, 0);
  const auto c = commutator(t.D, t.pi(u1));
  // [D, U_1] = gamma^1 U_1, norm 1
  CHECK(interior_norm(c) == doctest::Approx(1.0));
  CHECK(commutator_bound(t, u1) == doctest::Approx(1.0));
  const int r = reference_box(t, u1);
  CHECK(reference_commutator_norm(t, u1, 4, r) == doctest::Approx(reference_commutator_norm(t, u1, 6, r)));
}

TEST_CASE("symbolic and operator one-forms agree") {
  const auto t = build_flat_triple(random_theta(3, 64), 2, 1, 4);
  std::mt19937_64 rng(65);
  Presentation pres;
  for (int i = 0; i < 2; ++i) pres.emplace_back(random_element(t.theta, rng, 1, 2), random_element(t.theta, rng, 1, 2));
  const auto op = one_form(pres, t);
  const auto sym = realize(symbolic_one_form(pres, t), t.space);
  CHECK(interior_deviation(op, sym) < 1e-12);
  const auto adj = realize(form_adjoint(symbolic_one_form(pres, t)), t.space);
  CHECK(interior_deviation(adjoint(sym), adj) < 1e-12);
}

TEST_CASE("calculus compatibility") {
  const auto t = build_flat_triple(t3_theta(), 2, 1, 4);
  std::mt19937_64 rng(66);
  const auto samples = generate_syzygies(t, rng, 4);
  CHECK_FALSE(samples.empty());
  CHECK(check_calculus_compatibility(t, samples).all_passed());

  // gamma^1 in the delta_3 slot makes U_1^* dU_1 - U_3^* dU_3 vanish with a nonzero delta_1 part
  auto symbols = t.dirac_symbols;
  symbols[2] = t.gammas.matrices[0];
  const auto bad = with_dirac_symbols(t, symbols);
  std::mt19937_64 rng2(66);
  const auto bad_samples = generate_syzygies(bad, rng2, 4);
  CHECK_FALSE(check_calculus_compatibility(bad, bad_samples).all_passed());
}
