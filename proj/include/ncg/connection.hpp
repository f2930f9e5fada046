#pragma once

// Strong T^n-connections for the Dirac calculus, the D_0-connections nabla_omega on the
// graded modules A^(q), and the twisted Dirac operators D_omega and D_v + D_omega.
//
// Layout: omega_i = A_i (vertical unit, i < n) + sum_j A_{n+j} (x) b_ij + extra_i, where
// A_l = U_l^* [D, U_l] are the generator forms and b_ij lie in the invariant subalgebra.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncg/projection.hpp"

namespace ncg {

struct ConnectionFamily {
  int n = 0;
  int m = 0;
  bool vertical_units = true;
  /// n x m coefficients b_ij.
  std::vector<std::vector<AlgebraElement>> b;
  /// Additional presentation pairs appended to omega_i (negative controls).
  std::vector<Presentation> extra;

  /// b = 0.
  static ConnectionFamily canonical(const ThetaPtr& theta, int n, int m);
  /// b_ij = c[i * m + j] * 1.
  static ConnectionFamily constant(const ThetaPtr& theta, int n, int m, const std::vector<double>& c);

  /// omega_i = sum_p p d q, with pairs (U_i^*, U_i), (b_ij U_{n+j}^*, U_{n+j}) and the extras.
  Presentation presentation(int i, const ThetaPtr& theta) const;
  /// Symbolic forms in the Dirac calculus of t.
  std::vector<OneForm> forms(const TripleData& t) const;
  /// True iff every realized form is selfadjoint.
  bool selfadjoint(const TripleData& t, double tolerance = 1e-12) const;
  /// Largest algebra degree among the coefficients.
  int degree() const;
};

/// (i) invariance, (ii) normalization from the presentation, (iii) horizontality of
/// da - sum_i delta_i(a) omega_i on graded samples (vertical components vanish).
VerificationReport check_strong_connection(const ConnectionFamily& family, const TripleData& t,
                                           int samples = 4, std::uint64_t seed = 5,
                                           double tolerance = 1e-12);

struct EllConnection {
  LinearOperator form;
  VerificationReport report;
};

/// omega(z^q) = pi(U^{(q,0)})^* [D, pi(U^{(q,0)})], compared with sum_i q_i omega_i of the
/// canonical family.
EllConnection connection_from_ell(const MultiIndex& q, const TripleData& t, double tolerance = 1e-12);

/// [D, a] - sum_i q_i a omega_i for a homogeneous of degree q (symbolic, then realized).
OneForm nabla_symbolic(const AlgebraElement& a, const ConnectionFamily& family, const TripleData& t);
LinearOperator nabla_omega(const AlgebraElement& a, const ConnectionFamily& family, const TripleData& t);

/// Leibniz rule over B and the hermiticity identity of nabla_omega on graded samples.
VerificationReport check_nabla(const ConnectionFamily& family, const BaseTriple& base,
                               const ProjectabilityData& p, const std::vector<MultiIndex>& degrees,
                               int samples = 2, std::uint64_t seed = 9, double tolerance = 1e-12);

struct TwistData {
  BaseRecipe recipe;
  std::string J_used;
  LinearOperator J_twist;
  std::vector<LinearOperator> forms;
  LinearOperator D_omega;
  LinearOperator script_D_omega;
};

/// D_omega = D + sum_i J_0 omega_i^* J_0^{-1} delta_i - Z' and D_v + D_omega. Throws
/// PreconditionError unless the family is selfadjoint.
TwistData twisted_dirac(const BaseTriple& base, const ConnectionFamily& family, const ProjectabilityData& p,
                        const std::optional<LinearOperator>& Z_prime = std::nullopt, double tolerance = 1e-12);

/// Selfadjointness, sector preservation, cutoff-stable commutators and (n even) the
/// reducibility witness [Gamma, D_omega] = 0.
VerificationReport verify_twist(const TwistData& tw, const ConnectionFamily& family, const ProjectabilityData& p,
                                int samples = 2, std::uint64_t seed = 3, double tolerance = 1e-12);

/// |(D_omega - D_h) v| over interior vectors.
VerificationReport check_compatibility(const TwistData& tw, const ProjectabilityData& p, double tolerance = 1e-12);
double compatibility_deviation(const TwistData& tw, const ProjectabilityData& p);

/// Projectability and isometric fibres for (A, H, D_v + D_omega) with the same Gamma, and
/// its horizontal part equal to D_omega.
VerificationReport verify_reprojection(const TwistData& tw, const ProjectabilityData& p, double tolerance = 1e-12);

/// On each sector H_q, D_omega(hp) = (D_h h)p + h nabla(p) for h in H_0 and p in A^(q).
VerificationReport check_sector_equivalence(const TwistData& tw, const ConnectionFamily& family,
                                            const ProjectabilityData& p, const std::vector<MultiIndex>& degrees,
                                            double tolerance = 1e-12);

}  // namespace ncg
