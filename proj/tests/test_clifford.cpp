#include <doctest.h>

#include "ncg/clifford.hpp"

using namespace ncg;
using Complex = std::complex<double>;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix pauli(int k) {
  Matrix s(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, Complex(0, -1), Complex(0, 1), 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

}  // namespace

TEST_CASE("sign table") {
  CHECK(kr_signs(0) == KRSigns{0, 1, 1, 1});
  const auto s3 = kr_signs(3);
  CHECK(s3.eps == -1);
  CHECK(s3.eps_prime == 1);
  CHECK_FALSE(s3.eps_double_prime.has_value());
  CHECK(kr_signs(11) == kr_signs(3));
  CHECK(kr_signs(1).eps_prime == -1);
  CHECK(kr_signs(5).eps_prime == -1);
  CHECK(kr_signs(6).eps_double_prime == -1);
  CHECK_THROWS_AS(kr_signs(-1), std::invalid_argument);
}

TEST_CASE("small gamma sets") {
  const auto g1 = build_gammas(1);
  CHECK(g1.spinor_dim() == 1);
  CHECK_FALSE(g1.chirality.has_value());

  const auto g3 = build_gammas(3);
  CHECK(g3.spinor_dim() == 2);
  CHECK(max_abs(g3.matrices[0] - pauli(1)) == 0.0);
  CHECK(max_abs(g3.matrices[1] - pauli(2)) == 0.0);
  Matrix c(2, 2);
  c << 0, 1, -1, 0;
  CHECK(max_abs(g3.charge_conj - c) < 1e-14);
}

TEST_CASE("vertical grading of T^3 over T^2") {
  const auto g3 = build_gammas(3);
  const Matrix grading = vertical_grading(g3, 2);
  const bool plus = max_abs(grading - pauli(3)) < 1e-14;
  const bool minus = max_abs(grading + pauli(3)) < 1e-14;
  CHECK((plus || minus));
  CHECK(max_abs(grading * grading - Matrix::Identity(2, 2)) < 1e-14);
  CHECK_THROWS_AS(vertical_grading(g3, 0), std::invalid_argument);
  CHECK_THROWS_AS(vertical_grading(g3, 4), std::invalid_argument);
}

TEST_CASE("Clifford relations and charge conjugation for d = 1..9") {
  for (int d = 1; d <= 9; ++d) {
    CAPTURE(d);
    const auto g = build_gammas(d);
    const auto signs = kr_signs(d);
    CHECK(g.spinor_dim() == (1 << (d / 2)));
    CHECK(anticommutation_defect(g) < 1e-14);
    for (const auto& m : g.matrices) CHECK(max_abs(m - m.adjoint()) < 1e-14);
    const Matrix& c = g.charge_conj;
    const Matrix id = Matrix::Identity(g.spinor_dim(), g.spinor_dim());
    CHECK(max_abs(c.adjoint() * c - id) < 1e-12);
    // J^2 = C conj(C)
    CHECK(max_abs(c * c.conjugate() - static_cast<double>(signs.eps) * id) < 1e-12);
    // J D = eps' D J with J delta J^{-1} = -delta
    for (const auto& m : g.matrices) {
      CHECK(max_abs(c * m.conjugate() + static_cast<double>(signs.eps_prime) * m * c) < 1e-12);
    }
    if (d % 2 == 0) {
      REQUIRE(g.chirality.has_value());
      const Matrix& chi = *g.chirality;
      CHECK(max_abs(chi * chi - id) < 1e-12);
      CHECK(max_abs(chi - chi.adjoint()) < 1e-12);
      for (const auto& m : g.matrices) CHECK(max_abs(chi * m + m * chi) < 1e-12);
      CHECK(max_abs(c * chi.conjugate() - static_cast<double>(*signs.eps_double_prime) * chi * c) < 1e-12);
    }
  }
}

TEST_CASE("d = 4 anticommutation") {
  const auto g = build_gammas(4);
  CHECK(g.matrices.size() == 4);
  CHECK(anticommutation_defect(g) < 1e-15);
}

TEST_CASE("doubled module") {
  const auto g = doubled(build_gammas(3));
  CHECK(g.spinor_dim() == 4);
  CHECK(g.multiplicity == 2);
  CHECK(anticommutation_defect(g) < 1e-15);
}

TEST_CASE("charge conjugation that cannot exist") {
  // conj(sigma^2) = -sigma^2 while sigma^1, sigma^3 are real: no unitary C with C conj(g) = g C
  // for the three Pauli matrices.
  CHECK_THROWS_AS(solve_charge_conjugation({pauli(1), pauli(2), pauli(3)}, 1), std::runtime_error);
  CHECK_THROWS_AS(build_gammas(0), std::invalid_argument);
}
