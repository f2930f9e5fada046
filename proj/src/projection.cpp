#include "ncg/projection.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "ncg/errors.hpp"

namespace ncg {

int required_J_Gamma_sign(int n, int m) {
  if ((n + m) % 2 == 1) return m % 4 == 0 ? 1 : -1;
  return -1;
}

Matrix flat_grading(const GammaSet& g, int n, int gamma_sign, bool auxiliary) {
  if (gamma_sign != 1 && gamma_sign != -1) throw std::invalid_argument("gamma_sign must be +1 or -1");
  Matrix p = vertical_grading(g, n);
  if (auxiliary) {
    if (g.multiplicity % 2 != 0) throw std::invalid_argument("auxiliary grading needs a doubled gamma set");
    Matrix s2(2, 2);
    s2 << 0, Complex(0, -1), Complex(0, 1), 0;
    const Matrix aux = Eigen::kroneckerProduct(Matrix::Identity(g.spinor_dim() / 2, g.spinor_dim() / 2), s2).eval();
    p = p * aux;
  }
  return static_cast<double>(gamma_sign) * p;
}

VerificationReport check_grading(const TripleData& t, const LinearOperator& Gamma, double tolerance) {
  VerificationReport report;
  const auto id = identity_operator(t.space);
  report.add("grading.square", "Gamma^2 = 1", interior_deviation(compose(Gamma, Gamma), id), 0, tolerance);
  report.add("grading.selfadjoint", "Gamma = Gamma^*", selfadjoint_defect(Gamma), 0, tolerance);
  for (int j = 0; j < t.dim(); ++j) {
    const auto u = t.pi(t.generators[static_cast<std::size_t>(j)]);
    report.add("grading.pi[" + std::to_string(j + 1) + "]", "[Gamma, pi(a)] = 0",
               interior_norm(commutator(Gamma, u)), u.shift_radius(), tolerance);
  }
  for (int i = 0; i < t.n; ++i) {
    report.add("grading.delta[" + std::to_string(i + 1) + "]", "[Gamma, delta_j] = 0",
               interior_norm(commutator(Gamma, t.deltas[static_cast<std::size_t>(i)])), 0, tolerance);
  }
  const int s = required_J_Gamma_sign(t.n, t.m);
  report.add("grading.J", s > 0 ? "J Gamma = Gamma J" : "J Gamma = -Gamma J",
             interior_deviation(compose(t.J, Gamma), scale(compose(Gamma, t.J), s)), 0, tolerance);
  if (t.gamma) {
    const int sg = t.n % 2 == 0 ? 1 : -1;
    report.add("grading.gamma", "Gamma gamma = (-1)^n gamma Gamma",
               interior_deviation(compose(Gamma, *t.gamma), scale(compose(*t.gamma, Gamma), sg)), 0,
               tolerance);
  }
  return report;
}

LinearOperator horizontal_dirac(const TripleData& t, const LinearOperator& Gamma, double tolerance) {
  auto report = check_grading(t, Gamma, tolerance);
  if (!report.all_passed()) {
    throw PreconditionError("Gamma does not satisfy the projectability conditions", std::move(report));
  }
  const auto conj = compose(compose(Gamma, t.D), Gamma);
  const double s = t.n % 2 == 1 ? -1.0 : 1.0;
  return scale(add(t.D, scale(conj, s)), 0.5);
}

namespace {

LinearOperator vertical_dirac(const TripleData& t) {
  std::vector<Matrix> symbols = t.dirac_symbols;
  for (int j = t.n; j < t.dim(); ++j) symbols[static_cast<std::size_t>(j)].setZero();
  return dirac_from_symbols(symbols, t.space);
}

}  // namespace

ProjectabilityData make_projectable(const TripleData& t, int gamma_sign, bool auxiliary, double tolerance) {
  const Matrix g = flat_grading(t.gammas, t.n, gamma_sign, auxiliary);
  const auto Gamma = spinor_operator(g, t.space);
  auto d_h = horizontal_dirac(t, Gamma, tolerance);
  const auto z = t.zero_order ? *t.zero_order : zero_operator(t.space);
  return ProjectabilityData{t,        Gamma, g, t.n % 2, gamma_sign, auxiliary, std::move(d_h),
                            vertical_dirac(t), z, z};
}

ProjectabilityData projectable_flat_example(const ThetaPtr& theta, int n, int m, int cutoff,
                                            int gamma_sign, int multiplicity, double tolerance) {
  if (multiplicity == 0) {
    const GammaSet g = build_gammas(n + m);
    const Matrix grading = flat_grading(g, n, gamma_sign, false);
    const Matrix jg = g.charge_conj * grading.conjugate() * g.charge_conj.adjoint();
    const int s = required_J_Gamma_sign(n, m);
    multiplicity = (jg - static_cast<double>(s) * grading).cwiseAbs().maxCoeff() < 1e-12 ? 1 : 2;
  }
  const TripleData t = build_flat_triple(theta, n, m, cutoff, multiplicity);
  return make_projectable(t, gamma_sign, multiplicity == 2, tolerance);
}

ProjectabilityData rebuild_at(const ProjectabilityData& p, int cutoff) {
  const auto& t = p.triple;
  TripleData fresh = assemble_triple(t.theta, t.n, t.m, cutoff, t.gammas);
  fresh = with_dirac_symbols(fresh, t.dirac_symbols);
  return make_projectable(fresh, p.gamma_sign, p.doubled);
}

std::vector<Index> h0_indices(const TruncatedSpace& space, int n) {
  return sector_indices(space, MultiIndex(static_cast<std::size_t>(n), 0));
}

VerificationReport check_isometric_fibres(const ProjectabilityData& p, double tolerance,
                                          const std::optional<LinearOperator>& D_v_override) {
  VerificationReport report;
  const auto& t = p.triple;
  const auto& dv = D_v_override ? *D_v_override : p.D_v;
  const auto h0 = h0_indices(t.space, t.n);

  report.add("fibres.decomposition", "D = D_v + D_h + Z",
             interior_deviation(t.D, add(add(dv, p.D_h), p.Z)), 0, tolerance);
  report.add("fibres.a", "D_v|H_0 = 0", restricted_norm(dv, h0), 0, tolerance);
  report.add("fibres.b", p.parity_n ? "[D_v, Gamma] = 0" : "[D_v, Gamma]_+ = 0",
             interior_norm(commutator(dv, p.Gamma, p.parity_n ? -1 : 1)), dv.shift_radius(), tolerance);
  for (int i = 0; i < t.n; ++i) {
    report.add("fibres.c[" + std::to_string(i + 1) + "]", "[D_v, delta_i] = 0",
               interior_norm(commutator(dv, t.deltas[static_cast<std::size_t>(i)])), dv.shift_radius(),
               tolerance);
  }
  {
    const int r = p.Z.shift_radius();
    const int outer = t.space.cutoff() - r;
    const double n_outer = interior_norm(p.Z, r);
    const double n_inner = outer >= 1 ? interior_norm(p.Z, r + 1) : n_outer;
    const double growth = std::isfinite(n_outer) ? std::max(0.0, n_outer - n_inner) : n_outer;
    report.add("fibres.d", "Z bounded: norm growth between consecutive boxes", growth, r, 0.5);
  }
  for (int j = 0; j < t.dim(); ++j) {
    const auto& u = t.generators[static_cast<std::size_t>(j)];
    const auto pu = t.pi(u);
    report.add("fibres.e[" + std::to_string(j + 1) + "]", "[Z, a] = 0", interior_norm(commutator(p.Z, pu)),
               pu.shift_radius() + p.Z.shift_radius(), tolerance);
    const auto ju = opposite(t, u);
    report.add("fibres.f[" + std::to_string(j + 1) + "]", "J a^* J^-1 Z = Z' J a^* J^-1",
               interior_deviation(compose(ju, p.Z), compose(p.Z_prime, ju)), 0, tolerance);
  }
  report.add("fibres.parity", p.parity_n ? "Gamma D_h = -D_h Gamma" : "Gamma D_h = D_h Gamma",
             interior_norm(commutator(p.Gamma, p.D_h, p.parity_n ? 1 : -1)), 0, tolerance);
  for (int j = t.n; j < t.dim(); ++j) {
    const auto pb = t.pi(t.generators[static_cast<std::size_t>(j)]);
    report.add("fibres.calculus_B[" + std::to_string(j + 1) + "]", "[D_h, b] = [D, b]",
               interior_deviation(commutator(p.D_h, pb), commutator(t.D, pb)), 0, tolerance);
  }
  return report;
}

BaseRecipe base_triple_recipe(int j, int n) {
  if (j < 0 || n < 1) throw std::invalid_argument("recipe needs j >= 0 and n >= 1");
  using D = DPrime;
  using JC = J0Choice;
  using G = Gamma0Choice;
  const int jm = j % 8;
  const int col = (n % 8) / 2;
  BaseRecipe r;
  r.j = jm;
  r.n = n % 8;
  static const JC kJ = JC::J;
  static const JC kGJ = JC::GammaJ;
  if (jm % 2 == 0 && n % 2 == 0) {
    static const std::array<std::array<JC, 4>, 4> j0 = {{{kJ, kGJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ},
                                                           {kJ, kGJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ}}};
    static const std::array<G, 4> g0 = {G::gamma, G::gammaGamma, G::gamma, G::gammaGamma};
    r.d_prime = D::D0;
    r.j0 = j0[jm / 2][col];
    r.gamma0 = g0[col];
  } else if (jm % 2 == 0) {
    static const std::array<std::array<D, 4>, 4> dp = {{{D::D0, D::D0, D::D0, D::D0},
                                                         {D::D0, D::GammaD0, D::GammaD0, D::D0},
                                                         {D::D0, D::D0, D::D0, D::D0},
                                                         {D::D0, D::GammaD0, D::GammaD0, D::D0}}};
    static const std::array<std::array<JC, 4>, 4> j0 = {{{kGJ, kJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ},
                                                           {kGJ, kJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ}}};
    r.d_prime = dp[jm / 2][col];
    r.j0 = j0[jm / 2][col];
    r.gamma0 = G::Gamma;
  } else if (n % 2 == 0) {
    static const std::array<D, 4> dp = {D::D0, D::GammaD0, D::D0, D::GammaD0};
    static const std::array<std::array<JC, 4>, 4> j0 = {{{kJ, kGJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ},
                                                           {kJ, kGJ, kGJ, kJ},
                                                           {kJ, kJ, kGJ, kGJ}}};
    r.d_prime = dp[col];
    r.j0 = j0[jm / 2][col];
    r.gamma0 = G::None;
  } else {
    // Rows j = 3 and j = 7 of the D'_0 column: the swapped assignment breaks j_0 D'_0 = eps' D'_0 j_0.
    static const std::array<std::array<D, 4>, 4> dp = {{{D::D0, D::D0, D::GammaD0, D::GammaD0},
                                                         {D::D0, D::GammaD0, D::GammaD0, D::D0},
                                                         {D::D0, D::D0, D::GammaD0, D::GammaD0},
                                                         {D::D0, D::GammaD0, D::GammaD0, D::D0}}};
    static const std::array<std::array<JC, 4>, 4> j0 = {{{kGJ, kGJ, kJ, kJ},
                                                           {kJ, kGJ, kGJ, kJ},
                                                           {kGJ, kGJ, kJ, kJ},
                                                           {kJ, kGJ, kGJ, kJ}}};
    r.d_prime = dp[jm / 2][col];
    r.j0 = j0[jm / 2][col];
    r.gamma0 = G::None;
  }
  r.pathological = (jm == 0 || jm == 4) && (r.n == 3 || r.n == 5);
  return r;
}

std::string to_string(DPrime v) { return v == DPrime::D0 ? "D0" : "Gamma D0"; }
std::string to_string(J0Choice v) { return v == J0Choice::J ? "J" : "Gamma J"; }
std::string to_string(Gamma0Choice v) {
  switch (v) {
    case Gamma0Choice::gamma: return "gamma";
    case Gamma0Choice::gammaGamma: return "gamma Gamma";
    case Gamma0Choice::Gamma: return "Gamma";
    default: return "none";
  }
}

BaseTriple restrict_to_H0(const ProjectabilityData& p, int samples, std::uint64_t seed, double tolerance) {
  auto fibres = check_isometric_fibres(p, tolerance);
  if (!fibres.all_passed()) {
    throw PreconditionError("isometric fibres conditions fail; no base triple", std::move(fibres));
  }
  const auto& t = p.triple;
  const auto basis = h0_indices(t.space, t.n);
  if (basis.empty()) throw DegenerateInputError("H_0 is trivial");
  const TruncatedSpace space0(t.m, t.space.cutoff(), t.space.spinor_dim());
  const BaseRecipe recipe = base_triple_recipe(t.m, t.n);

  auto restrict = [&](const LinearOperator& op) { return compress(op, basis, space0, op.shift_radius()); };

  const auto j0_full = recipe.j0 == J0Choice::J ? t.J : compose(p.Gamma, t.J);
  const auto j_twist = recipe.d_prime == DPrime::D0 ? j0_full : compose(p.Gamma, j0_full);
  const auto d0 = restrict(p.D_h);
  const auto gamma0_full = [&]() -> std::optional<LinearOperator> {
    switch (recipe.gamma0) {
      case Gamma0Choice::gamma: return t.gamma;
      case Gamma0Choice::gammaGamma:
        return t.gamma ? std::optional<LinearOperator>(compose(*t.gamma, p.Gamma)) : std::nullopt;
      case Gamma0Choice::Gamma: return p.Gamma;
      default: return std::nullopt;
    }
  }();
  const auto Gamma0 = restrict(p.Gamma);
  BaseTriple out{recipe,
                 t.m,
                 space0,
                 basis,
                 d0,
                 recipe.d_prime == DPrime::D0 ? d0 : compose(Gamma0, d0),
                 restrict(j0_full),
                 gamma0_full ? std::optional<LinearOperator>(restrict(*gamma0_full)) : std::nullopt,
                 Gamma0,
                 j0_full,
                 j_twist,
                 {}};

  auto& report = out.report;
  report.add("h0.invariant.D_h", "D_h H_0 in H_0", leakage(p.D_h, basis), 0, tolerance);
  report.add("h0.invariant.Gamma", "Gamma H_0 in H_0", leakage(p.Gamma, basis), 0, tolerance);
  report.add("h0.invariant.J", "J H_0 in H_0", leakage(t.J, basis), 0, tolerance);
  if (t.gamma) {
    report.add("h0.invariant.gamma", "gamma H_0 in H_0", leakage(*t.gamma, basis), 0, tolerance);
    report.add("h0.gamma_D0", "gamma D_0 = -D_0 gamma",
               interior_norm(commutator(restrict(*t.gamma), d0, 1)), 0, tolerance);
  }
  const auto J0 = restrict(t.J);
  std::mt19937_64 rng(seed);
  const MultiIndex zero(static_cast<std::size_t>(t.n), 0);
  for (int s = 0; s < samples; ++s) {
    const std::string tag = "[" + std::to_string(s) + "]";
    const auto b = random_graded_element(t.theta, rng, zero, 1, 3);
    const auto c = random_graded_element(t.theta, rng, zero, 1, 3);
    const auto pb_full = t.pi(b);
    report.add("h0.invariant.b" + tag, "B H_0 in H_0", leakage(pb_full, basis), 0, tolerance);
    const auto pb = restrict(pb_full);
    const auto jc = conjugate_by(J0, adjoint(restrict(t.pi(c))));
    report.add("h0.commutant" + tag, "[b, J_0 c^* J_0^-1] = 0", interior_norm(commutator(pb, jc)),
               pb.shift_radius() + jc.shift_radius(), tolerance);
    const auto fo = commutator(commutator(d0, pb), jc);
    report.add("h0.first_order" + tag, "[[D_0, b], J_0 c^* J_0^-1] = 0", interior_norm(fo), fo.shift_radius(),
               tolerance);
  }
  return out;
}

VerificationReport verify_base_kr(const BaseTriple& b, double tolerance) {
  VerificationReport report;
  const KRSigns signs = kr_signs(b.kr_dim_base);
  const auto id = identity_operator(b.space0);
  const auto j2 = compose(b.j0, b.j0);
  const auto& dp = b.D0_prime;
  report.add("base_kr.j0_antiunitary", "j_0^dagger j_0 = 1",
             interior_deviation(compose(adjoint(b.j0), b.j0), id), 0, tolerance);
  if (b.recipe.pathological) {
    report.add("base_kr.j0_square_wrong_sign", "j_0^2 = -eps (documented obstruction)",
               interior_deviation(j2, scale(id, -signs.eps)), 0, tolerance);
  } else {
    report.add("base_kr.j0_square", "j_0^2 = eps", interior_deviation(j2, scale(id, signs.eps)), 0, tolerance);
  }
  report.add("base_kr.j0_D0", "j_0 D'_0 = eps' D'_0 j_0",
             interior_deviation(compose(b.j0, dp), scale(compose(dp, b.j0), signs.eps_prime)), 0, tolerance);
  // Gamma D_0 is skew-adjoint for n odd; the tables fix only the sign relations.
  if (b.kr_dim_base % 2 == 0) {
    if (!b.gamma0) {
      report.add("base_kr.gamma0_present", "gamma_0 exists for even j", 1.0, 0, tolerance);
      return report;
    }
    const auto& g = *b.gamma0;
    report.add("base_kr.j0_gamma0", "j_0 gamma_0 = eps'' gamma_0 j_0",
               interior_deviation(compose(b.j0, g), scale(compose(g, b.j0), signs.eps_double_prime.value_or(1))), 0,
               tolerance);
    report.add("base_kr.gamma0_D0", "gamma_0 D'_0 = -D'_0 gamma_0", interior_norm(commutator(g, dp, 1)), 0,
               tolerance);
    report.add("base_kr.gamma0_square", "gamma_0^2 = 1", interior_deviation(compose(g, g), id), 0, tolerance);
    report.add("base_kr.gamma0_selfadjoint", "gamma_0 = gamma_0^dagger", selfadjoint_defect(g), 0, tolerance);
  }
  return report;
}

std::vector<KRSweepEntry> kr_sweep(int max_dim, int cutoff, std::uint64_t seed, double tolerance) {
  std::vector<KRSweepEntry> out;
  std::mt19937_64 rng(seed);
  for (int j = 0; j < 8; ++j) {
    for (int n = 1; n < 8; ++n) {
      if (j + n > max_dim) continue;
      const auto theta = make_theta(ThetaMatrix::random(j + n, rng, 0.5));
      const auto p = projectable_flat_example(theta, n, j, cutoff, 1, 0, tolerance);
      const auto base = restrict_to_H0(p, 2, seed + static_cast<std::uint64_t>(8 * j + n), tolerance);
      KRSweepEntry e{base.recipe, p.doubled, verify_base_kr(base, tolerance)};
      e.report.append(base.report);
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace ncg
