#pragma once

// T^n-equivariant real spectral triples over A(T^{n+m}_theta) on a truncated GNS space,
// and the verification engine for their axioms.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/clifford.hpp"
#include "ncg/operator.hpp"
#include "ncg/report.hpp"

namespace ncg {

struct TripleData {
  ThetaPtr theta;
  int n = 0;
  int m = 0;
  GammaSet gammas;
  TruncatedSpace space;
  /// D = sum_j dirac_symbols[j] delta_j (+ zero_order when present).
  std::vector<Matrix> dirac_symbols;
  std::optional<LinearOperator> zero_order;
  LinearOperator D;
  LinearOperator J;
  std::optional<LinearOperator> gamma;
  std::vector<LinearOperator> deltas;
  std::vector<AlgebraElement> generators;
  int kr_dim = 0;

  int dim() const { return n + m; }
  LinearOperator pi(const AlgebraElement& a) const { return represent(a, space); }
};

/// sum_j symbols[j] (x) delta_j as a single sparse operator.
LinearOperator dirac_from_symbols(const std::vector<Matrix>& symbols, const TruncatedSpace& space);

/// Triple with the given gamma set: D = sum_j gamma^j delta_j, J from C, gamma = chirality.
TripleData assemble_triple(const ThetaPtr& theta, int n, int m, int cutoff, const GammaSet& gammas);
/// D = sum gamma^j delta_j with gammas of Cl(n+m) repeated `multiplicity` (1 or 2) times.
TripleData build_flat_triple(const ThetaPtr& theta, int n, int m, int cutoff, int multiplicity = 1);

/// Same triple with D rebuilt from new symbols (used for corrupted-D controls).
TripleData with_dirac_symbols(const TripleData& t, std::vector<Matrix> symbols);
/// Same triple with D = D_symbols + z, z bounded (e.g. pi(b) for central b).
TripleData with_zero_order(const TripleData& t, const LinearOperator& z);
/// Same triple with J rebuilt from a different charge conjugation matrix.
TripleData with_charge_conj(const TripleData& t, const Matrix& charge_conj);

/// J X J^{-1} for antiunitary J (J^{-1} = J^dagger).
LinearOperator conjugate_by(const LinearOperator& j, const LinearOperator& x);
/// J pi(b)^* J^{-1}: the opposite (right) action of b.
LinearOperator opposite(const TripleData& t, const AlgebraElement& b);

struct TripleCheckOptions {
  double tolerance = 1e-12;
  int samples = 3;
  int a_degree = 2;
  int b_degree = 1;
  int terms = 3;
  std::uint64_t seed = 7;
  /// Compare commutator norms at cutoff and cutoff + 2.
  bool boundedness = true;
};

/// Selfadjointness, boundedness surrogate, commutant, first-order, equivariance and KR signs.
VerificationReport verify_equivariant_real_triple(const TripleData& t,
                                                  const TripleCheckOptions& options = {});

/// Radius of the reference box: at most 512 columns and inside the cutoff of t for the sample a.
int reference_box(const TripleData& t, const AlgebraElement& a);
/// Norm of [D, pi(a)] on the columns |k| <= radius, computed with the triple truncated at `cutoff`.
double reference_commutator_norm(const TripleData& t, const AlgebraElement& a, int cutoff, int radius);
/// sum_q |a_q| |sum_j q_j A_j|: a priori bound on |[D, pi(a)]| for D = sum A_j delta_j.
double commutator_bound(const TripleData& t, const AlgebraElement& a);

using Presentation = std::vector<std::pair<AlgebraElement, AlgebraElement>>;

/// sum_p pi(a_p)[D, pi(b_p)] as an operator product.
LinearOperator one_form(const Presentation& coeffs, const TripleData& t);

/// One-form sum_c spinor_c (x) pi(coefficient_c); spinor factors commute with pi(A).
struct FormTerm {
  Matrix spinor;
  AlgebraElement coefficient;
};
using OneForm = std::vector<FormTerm>;

/// Symbolic form of sum_p a_p [D, b_p] = sum_j A_j (x) sum_p a_p delta_j(b_p).
OneForm symbolic_one_form(const Presentation& coeffs, const TripleData& t);
/// sum_c spinor_c (x) pi(coefficient_c) on the truncated space (exact compression).
LinearOperator realize(const OneForm& form, const TruncatedSpace& space);
OneForm form_adjoint(const OneForm& form);

/// Syzygies sum_p a_p [D, b_p] = 0: telescoping identities and null-space relations among
/// the generator forms U_j^* dU_j, each multiplied on the left by a random element.
std::vector<Presentation> generate_syzygies(const TripleData& t, std::mt19937_64& rng, int count);

/// For each presentation whose form vanishes, checks sum_p a_p delta_i(b_p) = 0 for i < n.
VerificationReport check_calculus_compatibility(const TripleData& t,
                                                const std::vector<Presentation>& samples,
                                                double tolerance = 1e-12);

}  // namespace ncg
