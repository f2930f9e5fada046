#include "ncg/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ncg/errors.hpp"
#include "ncg/parallel.hpp"

namespace ncg {

using Triplet = Eigen::Triplet<Complex>;

TruncatedSpace::TruncatedSpace(int k, int cutoff, int spinor_dim)
    : k_(k), cutoff_(cutoff), spinor_dim_(spinor_dim) {
  if (k < 0) throw std::invalid_argument("lattice dimension must be non-negative");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be a positive integer");
  if (spinor_dim < 1) throw std::invalid_argument("spinor dimension must be positive");
  lattice_size_ = 1;
  for (int i = 0; i < k; ++i) lattice_size_ *= side();
}

MultiIndex TruncatedSpace::site(Index s) const {
  MultiIndex k(static_cast<std::size_t>(k_));
  for (int i = k_ - 1; i >= 0; --i) {
    k[static_cast<std::size_t>(i)] = static_cast<int>(s % side()) - cutoff_;
    s /= side();
  }
  return k;
}

std::optional<Index> TruncatedSpace::site_index(const MultiIndex& k) const {
  if (static_cast<int>(k.size()) != k_) throw std::invalid_argument("lattice index has wrong length");
  Index s = 0;
  for (int v : k) {
    if (v < -cutoff_ || v > cutoff_) return std::nullopt;
    s = s * side() + (v + cutoff_);
  }
  return s;
}

int TruncatedSpace::site_norm(Index s) const {
  int worst = 0;
  for (int i = 0; i < k_; ++i) {
    worst = std::max(worst, std::abs(static_cast<int>(s % side()) - cutoff_));
    s /= side();
  }
  return worst;
}

LinearOperator::LinearOperator(TruncatedSpace space, SparseMatrix matrix, bool antilinear,
                               int shift_radius)
    : space_(std::move(space)), matrix_(std::move(matrix)), antilinear_(antilinear),
      shift_radius_(shift_radius) {
  if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
    throw std::invalid_argument("operator matrix does not match the space dimension");
  }
  matrix_.makeCompressed();
}

Vector LinearOperator::apply(const Vector& v) const {
  if (v.size() != space_.total_dim()) throw std::invalid_argument("vector has wrong dimension");
  if (antilinear_) return matrix_ * v.conjugate();
  return matrix_ * v;
}

LinearOperator LinearOperator::with_radius(int r) const {
  return LinearOperator(space_, matrix_, antilinear_, r);
}

std::vector<Index> InteriorContract::columns(const TruncatedSpace& space) const {
  std::vector<Index> out;
  const int limit = space.cutoff() - radius;
  if (limit < 0) return out;
  for (Index s = 0; s < space.lattice_size(); ++s) {
    if (space.site_norm(s) > limit) continue;
    for (int t = 0; t < space.spinor_dim(); ++t) out.push_back(space.index(s, t));
  }
  return out;
}

LinearOperator identity_operator(const TruncatedSpace& space) {
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setIdentity();
  return LinearOperator(space, std::move(m));
}

LinearOperator zero_operator(const TruncatedSpace& space) {
  return LinearOperator(space, SparseMatrix(space.total_dim(), space.total_dim()));
}

namespace {

void require_dim(const AlgebraElement& a, const TruncatedSpace& space) {
  if (a.dim() != space.k()) throw std::invalid_argument("algebra dimension does not match the space");
}

/// Shared body of left and right multiplication.
LinearOperator multiplication(const AlgebraElement& a, const TruncatedSpace& space, bool right) {
  require_dim(a, space);
  const auto& theta = a.theta();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(space.total_dim()) * a.terms().size());
  MultiIndex target(static_cast<std::size_t>(space.k()));
  for (Index s = 0; s < space.lattice_size(); ++s) {
    const MultiIndex k = space.site(s);
    for (const auto& [q, c] : a.terms()) {
      for (int i = 0; i < space.k(); ++i) target[i] = k[i] + q[i];
      const auto t = space.site_index(target);
      if (!t) continue;
      const Complex phase = c * unit_phase(right ? theta.pairing(k, q) : theta.pairing(q, k));
      for (int sp = 0; sp < space.spinor_dim(); ++sp) {
        trips.emplace_back(space.index(*t, sp), space.index(s, sp), phase);
      }
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m), false, a.degree());
}

void require_same_space(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.space() == b.space())) throw std::invalid_argument("operators act on different spaces");
}

}  // namespace

LinearOperator represent(const AlgebraElement& a, const TruncatedSpace& space) {
  return multiplication(a, space, false);
}

LinearOperator right_represent(const AlgebraElement& a, const TruncatedSpace& space) {
  return multiplication(a, space, true);
}

LinearOperator derivation_operator(int j, const TruncatedSpace& space) {
  if (j < 0 || j >= space.k()) throw std::invalid_argument("derivation index out of range");
  std::vector<Triplet> trips;
  for (Index s = 0; s < space.lattice_size(); ++s) {
    const int kj = space.site(s)[static_cast<std::size_t>(j)];
    if (kj == 0) continue;
    for (int t = 0; t < space.spinor_dim(); ++t) {
      trips.emplace_back(space.index(s, t), space.index(s, t), static_cast<double>(kj));
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m));
}

LinearOperator spinor_operator(const Matrix& s, const TruncatedSpace& space) {
  if (s.rows() != space.spinor_dim() || s.cols() != space.spinor_dim()) {
    throw std::invalid_argument("spinor matrix has wrong size");
  }
  std::vector<Triplet> trips;
  for (Index site = 0; site < space.lattice_size(); ++site) {
    for (int r = 0; r < space.spinor_dim(); ++r) {
      for (int c = 0; c < space.spinor_dim(); ++c) {
        if (s(r, c) != Complex{}) trips.emplace_back(space.index(site, r), space.index(site, c), s(r, c));
      }
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m));
}

LinearOperator tomita_J(const TruncatedSpace& space, const ThetaMatrix& theta, const Matrix& charge_conj) {
  if (theta.dim() != space.k()) throw std::invalid_argument("theta dimension does not match the space");
  if (charge_conj.rows() != space.spinor_dim() || charge_conj.cols() != space.spinor_dim()) {
    throw std::invalid_argument("charge conjugation has wrong size");
  }
  std::vector<Triplet> trips;
  for (Index s = 0; s < space.lattice_size(); ++s) {
    const MultiIndex k = space.site(s);
    MultiIndex neg = k;
    for (auto& v : neg) v = -v;
    const Index t = *space.site_index(neg);
    const Complex phase = unit_phase(theta.pairing(k, k));
    for (int r = 0; r < space.spinor_dim(); ++r) {
      for (int c = 0; c < space.spinor_dim(); ++c) {
        if (charge_conj(r, c) != Complex{}) {
          trips.emplace_back(space.index(t, r), space.index(s, c), phase * charge_conj(r, c));
        }
      }
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m), true, 0);
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a, b);
  SparseMatrix m = a.antilinear() ? SparseMatrix(a.matrix() * SparseMatrix(b.matrix().conjugate()))
                                  : SparseMatrix(a.matrix() * b.matrix());
  m.prune(Complex{}, 0.0);
  return LinearOperator(a.space(), std::move(m), a.antilinear() != b.antilinear(),
                        a.shift_radius() + b.shift_radius());
}

LinearOperator add(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a, b);
  if (a.antilinear() != b.antilinear()) {
    throw std::invalid_argument("cannot add a linear and an antilinear operator");
  }
  return LinearOperator(a.space(), a.matrix() + b.matrix(), a.antilinear(),
                        std::max(a.shift_radius(), b.shift_radius()));
}

LinearOperator subtract(const LinearOperator& a, const LinearOperator& b) {
  return add(a, scale(b, -1.0));
}

LinearOperator scale(const LinearOperator& a, Complex c) {
  return LinearOperator(a.space(), c * a.matrix(), a.antilinear(), a.shift_radius());
}

LinearOperator adjoint(const LinearOperator& a) {
  SparseMatrix m = a.antilinear() ? SparseMatrix(a.matrix().transpose()) : SparseMatrix(a.matrix().adjoint());
  return LinearOperator(a.space(), std::move(m), a.antilinear(), a.shift_radius());
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("commutator sign must be +1 or -1");
  return add(compose(a, b), scale(compose(b, a), static_cast<double>(sign)));
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) { return add(a, b); }
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) { return subtract(a, b); }
LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) { return compose(a, b); }
LinearOperator operator*(Complex c, const LinearOperator& a) { return scale(a, c); }

namespace {

/// Columns `cols` of A gathered as a sparse matrix over the full row range.
SparseMatrix gather_columns(const SparseMatrix& a, const std::vector<Index>& cols) {
  SparseMatrix out(a.rows(), static_cast<Index>(cols.size()));
  std::vector<Triplet> trips;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (SparseMatrix::InnerIterator it(a, cols[j]); it; ++it) {
      trips.emplace_back(it.row(), static_cast<Index>(j), it.value());
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double dense_norm(const SparseMatrix& sub) {
  const Matrix gram = Matrix(SparseMatrix(sub.adjoint() * sub));
  if (gram.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

}  // namespace

double exact_restricted_norm(const LinearOperator& a, const std::vector<Index>& columns) {
  if (columns.empty()) return std::numeric_limits<double>::quiet_NaN();
  return dense_norm(gather_columns(a.matrix(), columns));
}

double restricted_norm(const LinearOperator& a, const std::vector<Index>& columns) {
  if (columns.empty()) return std::numeric_limits<double>::quiet_NaN();
  const SparseMatrix sub = gather_columns(a.matrix(), columns);
  if (sub.nonZeros() == 0) return 0.0;
  if (static_cast<Index>(columns.size()) <= kExactNormColumns) return dense_norm(sub);
  double frob = 0.0;
  double col_max = 0.0;
  std::vector<double> row_sums(static_cast<std::size_t>(sub.rows()), 0.0);
  for (Index j = 0; j < sub.outerSize(); ++j) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(sub, j); it; ++it) {
      const double v = std::abs(it.value());
      frob += v * v;
      col += v;
      row_sums[static_cast<std::size_t>(it.row())] += v;
    }
    col_max = std::max(col_max, col);
  }
  const double row_max = *std::max_element(row_sums.begin(), row_sums.end());
  return std::min(std::sqrt(frob), std::sqrt(col_max * row_max));
}

double interior_norm(const LinearOperator& a, int radius) {
  return restricted_norm(a, InteriorContract{radius}.columns(a.space()));
}

double interior_norm(const LinearOperator& a) { return interior_norm(a, a.shift_radius()); }

double interior_deviation(const LinearOperator& a, const LinearOperator& b, int extra) {
  return interior_norm(subtract(a, b), std::max(a.shift_radius(), b.shift_radius()) + extra);
}

double selfadjoint_defect(const LinearOperator& a) {
  std::vector<Index> all(static_cast<std::size_t>(a.space().total_dim()));
  std::iota(all.begin(), all.end(), Index{0});
  return restricted_norm(subtract(a, adjoint(a)), all);
}

std::vector<double> spectrum(const LinearOperator& a, double tolerance) {
  if (a.antilinear()) throw PreconditionError("spectrum requires a linear operator");
  const double defect = selfadjoint_defect(a);
  if (!(defect <= tolerance)) {
    VerificationReport report;
    report.add("spectrum.selfadjoint", "A = A^dagger", defect, 0, tolerance);
    throw PreconditionError("spectrum requires a selfadjoint operator", report);
  }
  const SparseMatrix& m = a.matrix();
  const Index n = m.rows();

  // Connected components of the sparsity graph give an exact block decomposition.
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      const Index r1 = find(it.row());
      const Index r2 = find(j);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> block_of(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[root])].push_back(i);
  }

  std::vector<std::vector<double>> partial(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t b) {
    const auto& idx = blocks[b];
    const auto size = static_cast<Index>(idx.size());
    Matrix dense = Matrix::Zero(size, size);
    std::vector<Index> local(static_cast<std::size_t>(n), -1);
    for (Index i = 0; i < size; ++i) local[idx[i]] = i;
    for (Index j = 0; j < size; ++j) {
      for (SparseMatrix::InnerIterator it(m, idx[j]); it; ++it) dense(local[it.row()], j) = it.value();
    }
    // Symmetrize to remove the rounding-level anti-Hermitian part.
    dense = 0.5 * (dense + dense.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(dense, Eigen::EigenvaluesOnly);
    partial[b].assign(solver.eigenvalues().data(), solver.eigenvalues().data() + size);
  });
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const auto& p : partial) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> sector_indices(const TruncatedSpace& space, const MultiIndex& q) {
  std::vector<Index> out;
  for (Index s = 0; s < space.lattice_size(); ++s) {
    const MultiIndex k = space.site(s);
    if (!std::equal(q.begin(), q.end(), k.begin())) continue;
    for (int t = 0; t < space.spinor_dim(); ++t) out.push_back(space.index(s, t));
  }
  return out;
}

LinearOperator compress(const LinearOperator& a, const std::vector<Index>& indices,
                        const TruncatedSpace& target, int shift_radius) {
  if (static_cast<Index>(indices.size()) != target.total_dim()) {
    throw std::invalid_argument("compression target has wrong dimension");
  }
  std::vector<Index> local(static_cast<std::size_t>(a.space().total_dim()), -1);
  for (std::size_t i = 0; i < indices.size(); ++i) local[indices[i]] = static_cast<Index>(i);
  std::vector<Triplet> trips;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    for (SparseMatrix::InnerIterator it(a.matrix(), indices[j]); it; ++it) {
      const Index r = local[it.row()];
      if (r >= 0) trips.emplace_back(r, static_cast<Index>(j), it.value());
    }
  }
  SparseMatrix m(target.total_dim(), target.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(target, std::move(m), a.antilinear(), shift_radius);
}

double leakage(const LinearOperator& a, const std::vector<Index>& indices) {
  std::vector<char> inside(static_cast<std::size_t>(a.space().total_dim()), 0);
  for (Index i : indices) inside[i] = 1;
  double worst = 0.0;
  for (Index j : indices) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(a.matrix(), j); it; ++it) {
      if (!inside[it.row()]) col += std::norm(it.value());
    }
    worst = std::max(worst, std::sqrt(col));
  }
  return worst;
}

Matrix to_dense(const LinearOperator& a) { return Matrix(a.matrix()); }

}  // namespace ncg
