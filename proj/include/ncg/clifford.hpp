#pragma once

// Euclidean Clifford algebras Cl(d): gamma matrices, chirality, charge conjugation
// and the KR-dimension sign table.

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ncg {

using Matrix = Eigen::MatrixXcd;

struct KRSigns {
  int dim_mod8 = 0;
  int eps = 1;
  int eps_prime = 1;
  std::optional<int> eps_double_prime;

  bool operator==(const KRSigns&) const = default;
};

/// Row of the sign table for d mod 8 (J^2 = eps, JD = eps' DJ, J gamma = eps'' gamma J).
KRSigns kr_signs(int d);

struct GammaSet {
  int d = 0;
  std::vector<Matrix> matrices;
  /// Present iff d is even.
  std::optional<Matrix> chirality;
  /// J acts on spinors as v -> C conj(v).
  Matrix charge_conj;
  /// Number of copies of the irreducible module (1 unless doubled()).
  int multiplicity = 1;

  int spinor_dim() const { return static_cast<int>(charge_conj.rows()); }
};

/// Irreducible gamma matrices of size 2^{[d/2]} with chirality (d even) and C.
GammaSet build_gammas(int d);

/// gamma (x) I_2, chirality (x) I_2, C (x) I_2: two copies of the irreducible module.
GammaSet doubled(const GammaSet& g);

/// (-i)^{d/2} gamma^1 ... gamma^d for an even number of matrices.
Matrix chirality_of(const std::vector<Matrix>& gammas);

/// Unitary C with C conj(g) C^{-1} = sign * g for every g; normalized so that the first
/// nonzero entry in row-major order is real and positive. Throws std::runtime_error when no
/// such matrix exists.
Matrix solve_charge_conjugation(const std::vector<Matrix>& gammas, int sign);

/// phase * gamma^1 ... gamma^n with phase in {1, i} chosen to make the product Hermitian.
Matrix vertical_grading(const GammaSet& gammas, int n);

/// Largest entry modulus of {gamma^i, gamma^j} - 2 delta_ij I over all pairs.
double anticommutation_defect(const GammaSet& gammas);

}  // namespace ncg
