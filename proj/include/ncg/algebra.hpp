#pragma once

// Polynomial noncommutative torus A(T^k_theta): finite Laurent polynomials in
// unitaries U_1..U_k with U_i U_j = exp(2 pi i theta_ij) U_j U_i.
//
// A monomial U^k stands for the normal-ordered product U_1^{k_1} ... U_k^{k_k}.
// All products are re-expressed in that order, so
//   U^k U^l = exp(2 pi i sum_{i>j} k_i l_j theta_ij) U^{k+l}.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <vector>

namespace ncg {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

/// Coefficients below this magnitude are dropped when normalizing.
inline constexpr double kCoefficientEpsilon = 1e-15;

class ThetaMatrix {
 public:
  ThetaMatrix() = default;
  explicit ThetaMatrix(int dim);

  /// Throws std::invalid_argument unless the rows form an exactly antisymmetric square matrix.
  static ThetaMatrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Upper-triangle entries drawn uniformly from [-scale, scale).
  static ThetaMatrix random(int dim, std::mt19937_64& rng, double scale = 1.0);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
  /// Sets theta_ij = value and theta_ji = -value.
  void set(int i, int j, double value);

  /// Lower-right (dim - offset) block, i.e. the deformation matrix of the base torus.
  ThetaMatrix lower_block(int offset) const;
  std::vector<std::vector<double>> rows() const;

  /// sum_{i>j} k_i l_j theta_ij, the exponent (in turns) of the normal-ordering phase.
  double pairing(const MultiIndex& k, const MultiIndex& l) const;

  bool operator==(const ThetaMatrix&) const = default;

 private:
  int dim_ = 0;
  std::vector<double> entries_;
};

using ThetaPtr = std::shared_ptr<const ThetaMatrix>;

inline ThetaPtr make_theta(ThetaMatrix theta) {
  return std::make_shared<const ThetaMatrix>(std::move(theta));
}

/// exp(2 pi i turns) with the argument reduced modulo 1 first.
Complex unit_phase(double turns);

struct MonomialProduct {
  Complex phase;
  MultiIndex index;
};

/// U^k U^l = phase * U^{k+l}. Throws std::invalid_argument on a dimension mismatch.
MonomialProduct monomial_product(const MultiIndex& k, const MultiIndex& l, const ThetaMatrix& theta);

class AlgebraElement {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit AlgebraElement(ThetaPtr theta);
  AlgebraElement(ThetaPtr theta, Terms terms);

  static AlgebraElement scalar(ThetaPtr theta, Complex value);
  static AlgebraElement monomial(ThetaPtr theta, MultiIndex index, Complex coefficient = 1.0);
  /// U_j for 0 <= j < dim.
  static AlgebraElement generator(ThetaPtr theta, int j);

  const ThetaMatrix& theta() const { return *theta_; }
  const ThetaPtr& theta_ptr() const { return theta_; }
  int dim() const { return theta_->dim(); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// max over stored indices of |k|_inf; 0 for the zero element.
  int degree() const;
  Complex coefficient(const MultiIndex& index) const;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scale);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  void normalize();
  void require_same_algebra(const AlgebraElement& other) const;

  ThetaPtr theta_;
  Terms terms_;
};

bool same_algebra(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
/// Antilinear involution with (U^k)^* = (U^k)^{-1}.
AlgebraElement star(const AlgebraElement& a);
/// delta_j(U^k) = k_j U^k, 0 <= j < dim.
AlgebraElement derivation(int j, const AlgebraElement& a);
/// Coefficient of the unit monomial.
Complex trace(const AlgebraElement& a);

/// Largest coefficient modulus of a - b.
double distance(const AlgebraElement& a, const AlgebraElement& b);
/// Sum of squared coefficient moduli.
double coefficient_norm2(const AlgebraElement& a);

/// First n entries of a lattice index: its degree under the T^n coaction.
MultiIndex fibre_degree(const MultiIndex& index, int n);

struct GradedComponent {
  MultiIndex degree;
  AlgebraElement element;
};

/// Splits `a` into homogeneous components for the Z^n grading given by the first n indices.
/// Components are returned in increasing order of degree.
std::vector<GradedComponent> graded_decompose(const AlgebraElement& a, int n);
bool is_homogeneous(const AlgebraElement& a, int n, const MultiIndex& degree);

/// Random element with `terms` monomials of degree <= max_degree and Gaussian coefficients.
AlgebraElement random_element(const ThetaPtr& theta, std::mt19937_64& rng, int max_degree,
                              int terms);
/// Random homogeneous element: the first degree.size() indices are fixed to `degree`.
AlgebraElement random_graded_element(const ThetaPtr& theta, std::mt19937_64& rng,
                                     const MultiIndex& degree, int max_degree, int terms);
/// Random selfadjoint element of the invariant subalgebra (first n indices zero).
AlgebraElement random_invariant_selfadjoint(const ThetaPtr& theta, std::mt19937_64& rng, int n,
                                            int max_degree, int terms);

}  // namespace ncg
