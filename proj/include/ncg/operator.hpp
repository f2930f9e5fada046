#pragma once

// Truncated GNS space H_L = span{|k> : |k|_inf <= L} (x) C^N and operators on it.
//
// Basis order: index = site * N + spinor, sites enumerated lexicographically with the
// first lattice coordinate most significant. Shifts leaving the box are dropped, so an
// identity between operators is only exact on columns whose site satisfies
// |k|_inf <= L - r, r being the accumulated shift radius (the "interior").

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ncg/algebra.hpp"
#include "ncg/clifford.hpp"

namespace ncg {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

class TruncatedSpace {
 public:
  TruncatedSpace() = default;
  TruncatedSpace(int k, int cutoff, int spinor_dim);

  int k() const { return k_; }
  int cutoff() const { return cutoff_; }
  int spinor_dim() const { return spinor_dim_; }
  int side() const { return 2 * cutoff_ + 1; }
  Index lattice_size() const { return lattice_size_; }
  Index total_dim() const { return lattice_size_ * spinor_dim_; }

  MultiIndex site(Index s) const;
  /// Site number of k, or nullopt when k lies outside the box.
  std::optional<Index> site_index(const MultiIndex& k) const;
  Index index(Index site, int spinor) const { return site * spinor_dim_ + spinor; }
  int site_norm(Index s) const;

  bool operator==(const TruncatedSpace&) const = default;

 private:
  int k_ = 0;
  int cutoff_ = 0;
  int spinor_dim_ = 1;
  Index lattice_size_ = 1;
};

/// Matrix M with the action v -> M v (linear) or v -> M conj(v) (antilinear).
class LinearOperator {
 public:
  LinearOperator(TruncatedSpace space, SparseMatrix matrix, bool antilinear = false,
                 int shift_radius = 0);

  const TruncatedSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  bool antilinear() const { return antilinear_; }
  int shift_radius() const { return shift_radius_; }

  Vector apply(const Vector& v) const;
  LinearOperator with_radius(int r) const;

 private:
  TruncatedSpace space_;
  SparseMatrix matrix_;
  bool antilinear_ = false;
  int shift_radius_ = 0;
};

struct InteriorContract {
  int radius = 0;
  /// Column indices whose site lies within the contract.
  std::vector<Index> columns(const TruncatedSpace& space) const;
};

LinearOperator identity_operator(const TruncatedSpace& space);
LinearOperator zero_operator(const TruncatedSpace& space);

/// pi(a) (x) id_spinor. Throws std::invalid_argument when a.dim() != space.k().
LinearOperator represent(const AlgebraElement& a, const TruncatedSpace& space);
/// Right multiplication |k> -> U^k a, i.e. J pi(a)^* J^{-1}.
LinearOperator right_represent(const AlgebraElement& a, const TruncatedSpace& space);
/// delta_j, 0-based j: |k> -> k_j |k>.
LinearOperator derivation_operator(int j, const TruncatedSpace& space);
/// id_lattice (x) s for an N x N spinor matrix s.
LinearOperator spinor_operator(const Matrix& s, const TruncatedSpace& space);
/// Antilinear J = J_0 (x) (C o c.c.) with J_0 |k> = exp(2 pi i <k,k>) |-k>.
LinearOperator tomita_J(const TruncatedSpace& space, const ThetaMatrix& theta, const Matrix& charge_conj);

LinearOperator compose(const LinearOperator& a, const LinearOperator& b);
LinearOperator add(const LinearOperator& a, const LinearOperator& b);
LinearOperator subtract(const LinearOperator& a, const LinearOperator& b);
LinearOperator scale(const LinearOperator& a, Complex c);
LinearOperator adjoint(const LinearOperator& a);
/// ab + sign * ba; sign = -1 is the ordinary commutator, +1 the anticommutator.
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b, int sign = -1);

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator*(Complex c, const LinearOperator& a);

/// Largest exact column count for which norms use a dense eigensolver.
inline constexpr Index kExactNormColumns = 400;

/// 2-norm of A restricted to the given columns: exact for small column sets, otherwise the
/// upper bound min(Frobenius, sqrt(|A|_1 |A|_inf)). NaN when `columns` is empty.
double restricted_norm(const LinearOperator& a, const std::vector<Index>& columns);
/// Same as restricted_norm but always exact (dense eigensolver).
double exact_restricted_norm(const LinearOperator& a, const std::vector<Index>& columns);
double interior_norm(const LinearOperator& a, int radius);
/// Norm of A on the interior of its own shift radius.
double interior_norm(const LinearOperator& a);
/// Norm of a - b on the interior of the larger of the two radii (plus `extra`).
double interior_deviation(const LinearOperator& a, const LinearOperator& b, int extra = 0);
/// Norm of A - A^dagger over the whole space.
double selfadjoint_defect(const LinearOperator& a);

/// Eigenvalues of a selfadjoint linear operator, ascending. Throws PreconditionError if
/// |A - A^dagger| exceeds `tolerance` or A is antilinear.
std::vector<double> spectrum(const LinearOperator& a, double tolerance = 1e-12);

/// Indices of the basis vectors whose first n lattice coordinates equal q.
std::vector<Index> sector_indices(const TruncatedSpace& space, const MultiIndex& q);
/// Compression P A P onto the span of `indices`, expressed on `target`.
LinearOperator compress(const LinearOperator& a, const std::vector<Index>& indices,
                        const TruncatedSpace& target, int shift_radius);
/// Largest column norm of (1 - P) A P: how much A leaks out of the span of `indices`.
double leakage(const LinearOperator& a, const std::vector<Index>& indices);

Matrix to_dense(const LinearOperator& a);

}  // namespace ncg
