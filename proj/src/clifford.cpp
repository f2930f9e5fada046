#include "ncg/clifford.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace ncg {

namespace {

using C = std::complex<double>;

Matrix pauli(int which) {
  Matrix s(2, 2);
  switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, C(0, -1), C(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

std::vector<Matrix> gamma_list(int d) {
  if (d == 1) return {Matrix::Identity(1, 1)};
  if (d == 2) return {pauli(1), pauli(2)};
  if (d % 2 == 1) {
    auto g = gamma_list(d - 1);
    g.push_back(chirality_of(g));
    return g;
  }
  const auto g = gamma_list(d - 2);
  const Matrix chi = chirality_of(g);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (const auto& x : g) out.push_back(kron(x, pauli(1)));
  out.push_back(kron(chi, pauli(1)));
  out.push_back(kron(Matrix::Identity(chi.rows(), chi.cols()), pauli(2)));
  return out;
}

}  // namespace

KRSigns kr_signs(int d) {
  if (d < 0) throw std::invalid_argument("KR dimension must be non-negative");
  static const std::array<KRSigns, 8> table = {{
      {0, 1, 1, 1},
      {1, 1, -1, std::nullopt},
      {2, -1, 1, -1},
      {3, -1, 1, std::nullopt},
      {4, -1, 1, 1},
      {5, -1, -1, std::nullopt},
      {6, 1, 1, -1},
      {7, 1, 1, std::nullopt},
  }};
  return table[static_cast<std::size_t>(d % 8)];
}

Matrix chirality_of(const std::vector<Matrix>& gammas) {
  if (gammas.empty() || gammas.size() % 2 != 0) {
    throw std::invalid_argument("chirality needs an even, non-zero number of gammas");
  }
  Matrix p = Matrix::Identity(gammas[0].rows(), gammas[0].cols());
  for (const auto& g : gammas) p = p * g;
  // (-i)^{d/2}
  const int quarter = static_cast<int>(gammas.size() / 2) % 4;
  static const std::array<C, 4> powers = {C(1, 0), C(0, -1), C(-1, 0), C(0, 1)};
  return powers[static_cast<std::size_t>(quarter)] * p;
}

Matrix solve_charge_conjugation(const std::vector<Matrix>& gammas, int sign) {
  if (gammas.empty()) throw std::invalid_argument("no gamma matrices given");
  const Eigen::Index n = gammas[0].rows();
  // Column-major vec: vec(C conj(g) - s g C) = (conj(g)^T (x) I - s I (x) g) vec(C).
  Matrix normal = Matrix::Zero(n * n, n * n);
  const Matrix id = Matrix::Identity(n, n);
  for (const auto& g : gammas) {
    const Matrix block = kron(g.conjugate().transpose(), id) - static_cast<double>(sign) * kron(id, g);
    normal += block.adjoint() * block;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(normal);
  if (solver.info() != Eigen::Success || solver.eigenvalues()(0) > 1e-9) {
    throw std::runtime_error("no charge conjugation with the requested sign");
  }
  Eigen::VectorXcd v = solver.eigenvectors().col(0);
  Matrix c = Eigen::Map<Matrix>(v.data(), n, n);
  c /= std::sqrt((c.adjoint() * c).trace().real() / static_cast<double>(n));
  for (Eigen::Index i = 0; i < n * n; ++i) {
    const C entry = c(i / n, i % n);
    if (std::abs(entry) > 1e-9) {
      c *= std::conj(entry) / std::abs(entry);
      break;
    }
  }
  // Snap rounding noise so that exact entries such as 0, +-1 stay exact.
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    auto& e = c.data()[i];
    const double re = std::abs(e.real()) < 1e-13 ? 0.0 : e.real();
    const double im = std::abs(e.imag()) < 1e-13 ? 0.0 : e.imag();
    e = C(re, im);
  }
  return c;
}

GammaSet build_gammas(int d) {
  if (d < 1) throw std::invalid_argument("Clifford dimension must be at least 1");
  GammaSet out;
  out.d = d;
  out.matrices = gamma_list(d);
  if (d % 2 == 0) out.chirality = chirality_of(out.matrices);
  const KRSigns signs = kr_signs(d);
  out.charge_conj = solve_charge_conjugation(out.matrices, -signs.eps_prime);
  return out;
}

GammaSet doubled(const GammaSet& g) {
  const Matrix id2 = Matrix::Identity(2, 2);
  GammaSet out;
  out.d = g.d;
  for (const auto& m : g.matrices) out.matrices.push_back(kron(m, id2));
  if (g.chirality) out.chirality = kron(*g.chirality, id2);
  out.charge_conj = kron(g.charge_conj, id2);
  out.multiplicity = 2 * g.multiplicity;
  return out;
}

Matrix vertical_grading(const GammaSet& gammas, int n) {
  if (n < 1 || n > gammas.d) throw std::invalid_argument("grading rank must satisfy 1 <= n <= d");
  Matrix p = Matrix::Identity(gammas.spinor_dim(), gammas.spinor_dim());
  for (int i = 0; i < n; ++i) p = p * gammas.matrices[static_cast<std::size_t>(i)];
  // The product of n anticommuting Hermitian unitaries is Hermitian or anti-Hermitian.
  if ((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12) return p;
  return C(0, 1) * p;
}

double anticommutation_defect(const GammaSet& gammas) {
  double worst = 0.0;
  const auto n = gammas.spinor_dim();
  for (int i = 0; i < gammas.d; ++i) {
    for (int j = 0; j < gammas.d; ++j) {
      const auto& a = gammas.matrices[static_cast<std::size_t>(i)];
      const auto& b = gammas.matrices[static_cast<std::size_t>(j)];
      Matrix r = a * b + b * a;
      if (i == j) r -= 2.0 * Matrix::Identity(n, n);
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace ncg
