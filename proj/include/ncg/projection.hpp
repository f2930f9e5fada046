#pragma once

// Projectability along the fibres: the grading Gamma, the splitting D = D_v + D_h + Z,
// the isometric-fibres conditions, the base triple on H_0 and the real-structure tables.

#include <optional>
#include <string>
#include <vector>

#include "ncg/triple.hpp"

namespace ncg {

struct ProjectabilityData {
  TripleData triple;
  LinearOperator Gamma;
  Matrix gamma_spinor;
  int parity_n = 0;
  int gamma_sign = 1;
  /// True when a second copy of the spinor module was needed to fix the J-Gamma sign.
  bool doubled = false;
  LinearOperator D_h;
  LinearOperator D_v;
  LinearOperator Z;
  LinearOperator Z_prime;
};

/// Sign s with J Gamma = s Gamma J required of a projectable triple of dimension n + m.
int required_J_Gamma_sign(int n, int m);

/// gamma_sign * vertical_grading(g, n); with `auxiliary` the set must be doubled and the
/// grading becomes P (x) sigma^2 on the two copies.
Matrix flat_grading(const GammaSet& g, int n, int gamma_sign, bool auxiliary);

/// Gamma^2 = 1, Gamma = Gamma^*, [Gamma, pi(U_j)] = 0, [Gamma, delta_i] = 0 (i <= n),
/// the J-Gamma sign and, for even triples, Gamma gamma = (-1)^n gamma Gamma.
VerificationReport check_grading(const TripleData& t, const LinearOperator& Gamma, double tolerance = 1e-12);

/// (D - Gamma D Gamma)/2 for n odd, (D + Gamma D Gamma)/2 for n even. Runs check_grading
/// first and throws PreconditionError with that report when it fails.
LinearOperator horizontal_dirac(const TripleData& t, const LinearOperator& Gamma, double tolerance = 1e-12);

/// Gamma from flat_grading, D_h, D_v = sum_{i<n} A_i delta_i, Z = zero-order part of D, Z' = Z.
ProjectabilityData make_projectable(const TripleData& t, int gamma_sign, bool auxiliary,
                                    double tolerance = 1e-12);

/// Flat triple over T^{n+m}_theta with its grading; multiplicity 0 picks 1 or 2 automatically
/// (2 exactly when the irreducible grading has the wrong J-Gamma sign).
ProjectabilityData projectable_flat_example(const ThetaPtr& theta, int n, int m, int cutoff,
                                            int gamma_sign = 1, int multiplicity = 0,
                                            double tolerance = 1e-12);

/// Same construction at a different cutoff (zero-order terms are not carried over).
ProjectabilityData rebuild_at(const ProjectabilityData& p, int cutoff);

/// H_0 = common kernel of delta_1..delta_n, as global basis indices.
std::vector<Index> h0_indices(const TruncatedSpace& space, int n);

/// Conditions (a)-(f) of isometric fibres plus D = D_v + D_h + Z, the parity relation between
/// Gamma and D_h, and [D_h, b] = [D, b] on B. `D_v_override` replaces D_v (negative controls).
VerificationReport check_isometric_fibres(const ProjectabilityData& p, double tolerance = 1e-12,
                                          const std::optional<LinearOperator>& D_v_override = std::nullopt);

enum class DPrime { D0, GammaD0 };
enum class J0Choice { J, GammaJ };
enum class Gamma0Choice { None, gamma, gammaGamma, Gamma };

struct BaseRecipe {
  int j = 0;
  int n = 0;
  DPrime d_prime = DPrime::D0;
  J0Choice j0 = J0Choice::J;
  Gamma0Choice gamma0 = Gamma0Choice::None;
  bool pathological = false;
};

/// Table entry for (j mod 8, n mod 8).
BaseRecipe base_triple_recipe(int j, int n);
std::string to_string(DPrime v);
std::string to_string(J0Choice v);
std::string to_string(Gamma0Choice v);

struct BaseTriple {
  BaseRecipe recipe;
  int kr_dim_base = 0;
  TruncatedSpace space0;
  std::vector<Index> basis;
  LinearOperator D0;
  LinearOperator D0_prime;
  LinearOperator j0;
  std::optional<LinearOperator> gamma0;
  LinearOperator Gamma0;
  /// j0 and the twist real structure (j0 if D'_0 = D_0, else Gamma j0) on the full space.
  LinearOperator j0_full;
  LinearOperator J_twist;
  /// Invariance of H_0 plus commutant and first-order condition for B on H_0.
  VerificationReport report;
};

/// Extracts H_0 and builds D_0, D'_0, j_0, gamma_0 per the recipe table. Throws
/// PreconditionError unless the isometric-fibres report passes.
BaseTriple restrict_to_H0(const ProjectabilityData& p, int samples = 3, std::uint64_t seed = 11,
                          double tolerance = 1e-12);

/// KR signs of dimension j for (j_0, D'_0, gamma_0). Pathological entries pass iff j_0^2 = -eps
/// while every other relation holds.
VerificationReport verify_base_kr(const BaseTriple& b, double tolerance = 1e-12);

struct KRSweepEntry {
  BaseRecipe recipe;
  bool doubled = false;
  VerificationReport report;
};

/// verify_base_kr over every (j, n) with n >= 1 and j + n <= max_dim, on random theta.
std::vector<KRSweepEntry> kr_sweep(int max_dim, int cutoff, std::uint64_t seed, double tolerance = 1e-12);

}  // namespace ncg
