#pragma once

// Symbolic verification that A(T^{n+m}_theta) is a principal H(T^n)-comodule algebra.
//
// H(T^n) is the commutative Hopf algebra of Laurent polynomials in z_1..z_n with
// Delta(z^q) = z^q (x) z^q, S(z^q) = z^{-q}, eps(z^q) = 1. The algebra coacts by
// Delta_R(U^k) = U^k (x) z^{(k_1..k_n)}. The candidate splitting map is
//   ell(z^q) = (U^{(q,0)})^* (x) U^{(q,0)}.

#include <string>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/report.hpp"

namespace ncg {

enum class Leg { Algebra, Hopf };

/// Finite sum of elementary tensors of monomials; each leg is either an algebra
/// monomial U^k (length k index) or a Hopf monomial z^q (length n index).
class Tensor {
 public:
  using Key = std::vector<MultiIndex>;

  explicit Tensor(std::vector<Leg> legs) : legs_(std::move(legs)) {}

  const std::vector<Leg>& legs() const { return legs_; }
  const std::map<Key, Complex>& terms() const { return terms_; }

  void add(Key key, Complex c);
  Tensor& operator+=(const Tensor& other);

  /// Largest coefficient modulus of the difference; throws if the leg types differ.
  friend double distance(const Tensor& a, const Tensor& b);

 private:
  std::vector<Leg> legs_;
  std::map<Key, Complex> terms_;
};

/// ell(z^q) as an element of A (x) A.
Tensor splitting_map(const ThetaPtr& theta, int n, const MultiIndex& q);

/// Applies Delta_R to the algebra leg `leg`, inserting the Hopf leg right after it.
Tensor apply_coaction(const Tensor& t, std::size_t leg, int n);
/// Swaps two adjacent legs.
Tensor swap_legs(const Tensor& t, std::size_t leg);
/// Multiplies the two algebra legs of an A (x) A tensor.
AlgebraElement multiply_legs(const ThetaPtr& theta, const Tensor& t);

/// Checks ell(1) = 1 (x) 1 and the four splitting axioms on every z^q, q in `degrees`,
/// with exact phase arithmetic. Entries are named "principality.<axiom> q=(..)".
VerificationReport check_principality(const ThetaPtr& theta, int n,
                                      const std::vector<MultiIndex>& degrees,
                                      double tolerance = 1e-14);

/// All q in Z^n with |q|_inf <= radius, lexicographic.
std::vector<MultiIndex> lattice_box(int n, int radius);

std::string format_index(const MultiIndex& k);

}  // namespace ncg
