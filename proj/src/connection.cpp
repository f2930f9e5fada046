#include "ncg/connection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ncg/errors.hpp"
#include "ncg/principal.hpp"

namespace ncg {

using Triplet = Eigen::Triplet<Complex>;

ConnectionFamily ConnectionFamily::canonical(const ThetaPtr& theta, int n, int m) {
  ConnectionFamily f;
  f.n = n;
  f.m = m;
  f.b.assign(static_cast<std::size_t>(n), std::vector<AlgebraElement>(static_cast<std::size_t>(m), AlgebraElement(theta)));
  f.extra.assign(static_cast<std::size_t>(n), {});
  return f;
}

ConnectionFamily ConnectionFamily::constant(const ThetaPtr& theta, int n, int m, const std::vector<double>& c) {
  if (static_cast<int>(c.size()) != n * m) {
    throw std::invalid_argument("constant family needs n * m coefficients");
  }
  auto f = canonical(theta, n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) f.b[i][j] = AlgebraElement::scalar(theta, c[static_cast<std::size_t>(i * m + j)]);
  }
  return f;
}

Presentation ConnectionFamily::presentation(int i, const ThetaPtr& theta) const {
  if (i < 0 || i >= n) throw std::invalid_argument("connection index out of range");
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("connection family has no coefficient rows");
  Presentation p;
  if (vertical_units) {
    const auto u = AlgebraElement::generator(theta, i);
    p.emplace_back(star(u), u);
  }
  for (int j = 0; j < m; ++j) {
    const auto& bij = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (bij.is_zero()) continue;
    const auto u = AlgebraElement::generator(theta, n + j);
    p.emplace_back(bij * star(u), u);
  }
  if (static_cast<std::size_t>(i) < extra.size()) {
    for (const auto& pair : extra[static_cast<std::size_t>(i)]) p.push_back(pair);
  }
  return p;
}

std::vector<OneForm> ConnectionFamily::forms(const TripleData& t) const {
  if (t.n != n || t.m != m) throw std::invalid_argument("connection family does not match the bundle split");
  std::vector<OneForm> out;
  for (int i = 0; i < n; ++i) out.push_back(symbolic_one_form(presentation(i, t.theta), t));
  return out;
}

bool ConnectionFamily::selfadjoint(const TripleData& t, double tolerance) const {
  for (const auto& f : forms(t)) {
    if (!(selfadjoint_defect(realize(f, t.space)) <= tolerance)) return false;
  }
  return true;
}

int ConnectionFamily::degree() const {
  int d = 0;
  for (const auto& row : b) {
    for (const auto& x : row) d = std::max(d, x.degree());
  }
  for (const auto& pres : extra) {
    for (const auto& [p, q] : pres) d = std::max({d, p.degree(), q.degree()});
  }
  return d;
}

namespace {

/// tr(A^dagger X_{s',s}) / tr(A^dagger A): the lattice operator multiplying A in X.
LinearOperator spinor_component(const LinearOperator& x, const Matrix& a) {
  const auto& space = x.space();
  const int n = space.spinor_dim();
  const double norm = (a.adjoint() * a).trace().real();
  const TruncatedSpace lattice(space.k(), space.cutoff(), 1);
  std::vector<Triplet> trips;
  for (Index j = 0; j < x.matrix().outerSize(); ++j) {
    const int c = static_cast<int>(j % n);
    for (SparseMatrix::InnerIterator it(x.matrix(), j); it; ++it) {
      const int r = static_cast<int>(it.row() % n);
      const Complex w = std::conj(a(r, c));
      if (w != Complex{}) trips.emplace_back(it.row() / n, j / n, w * it.value() / norm);
    }
  }
  SparseMatrix m(lattice.total_dim(), lattice.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(lattice, std::move(m), false, x.shift_radius());
}

/// a (x) C for a spinor matrix a and a lattice operator C.
LinearOperator lift(const Matrix& a, const LinearOperator& c, const TruncatedSpace& space) {
  const int n = space.spinor_dim();
  std::vector<Triplet> trips;
  for (Index j = 0; j < c.matrix().outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(c.matrix(), j); it; ++it) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          if (a(r, s) != Complex{}) trips.emplace_back(it.row() * n + r, j * n + s, a(r, s) * it.value());
        }
      }
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m), false, c.shift_radius());
}

MultiIndex homogeneous_degree(const AlgebraElement& a, int n) {
  const auto parts = graded_decompose(a, n);
  if (parts.size() > 1) throw std::invalid_argument("element is not homogeneous");
  return parts.empty() ? MultiIndex(static_cast<std::size_t>(n), 0) : parts.front().degree;
}

/// J X^* J^{-1}
LinearOperator right_action(const LinearOperator& j, const LinearOperator& x) {
  return conjugate_by(j, adjoint(x));
}

/// Norm of `op` on the H_0 columns inside its own interior.
double h0_norm(const LinearOperator& op, int n) {
  const auto& space = op.space();
  std::vector<Index> cols;
  for (Index idx : h0_indices(space, n)) {
    if (space.site_norm(idx / space.spinor_dim()) <= space.cutoff() - op.shift_radius()) cols.push_back(idx);
  }
  return restricted_norm(op, cols);
}

/// eps'_h with J_0 D_h = eps'_h D_h J_0; one-forms act from the right by -eps'_h J_0 eta^* J_0^{-1}.
double horizontal_sign(const LinearOperator& j, const LinearOperator& d_h) {
  const double plus = interior_deviation(compose(j, d_h), compose(d_h, j));
  const double minus = interior_deviation(compose(j, d_h), scale(compose(d_h, j), -1.0));
  return plus <= minus ? 1.0 : -1.0;
}

LinearOperator j_twist_for(const ProjectabilityData& p) {
  const auto recipe = base_triple_recipe(p.triple.m, p.triple.n);
  const auto j0 = recipe.j0 == J0Choice::J ? p.triple.J : compose(p.Gamma, p.triple.J);
  return recipe.d_prime == DPrime::D0 ? j0 : compose(p.Gamma, j0);
}

LinearOperator twist_operator(const ProjectabilityData& p, const std::vector<LinearOperator>& forms,
                              const LinearOperator& j_twist, const LinearOperator& z_prime) {
  const auto& t = p.triple;
  LinearOperator d = t.D;
  for (int i = 0; i < t.n; ++i) {
    d = d + compose(right_action(j_twist, forms[static_cast<std::size_t>(i)]), t.deltas[static_cast<std::size_t>(i)]);
  }
  return d - z_prime;
}

std::vector<LinearOperator> realize_all(const ConnectionFamily& family, const TripleData& t) {
  std::vector<LinearOperator> out;
  for (const auto& f : family.forms(t)) out.push_back(realize(f, t.space));
  return out;
}

}  // namespace

VerificationReport check_strong_connection(const ConnectionFamily& family, const TripleData& t, int samples,
                                           std::uint64_t seed, double tolerance) {
  VerificationReport report;
  if (static_cast<int>(family.b.size()) != t.n) {
    throw std::invalid_argument("connection family lacks a presentation for every omega_i");
  }
  const auto forms = family.forms(t);
  std::vector<LinearOperator> ops;
  for (int i = 0; i < t.n; ++i) {
    const std::string tag = "[" + std::to_string(i + 1) + "]";
    // (i)
    double off_degree = 0.0;
    for (const auto& term : forms[static_cast<std::size_t>(i)]) {
      for (const auto& comp : graded_decompose(term.coefficient, t.n)) {
        if (std::any_of(comp.degree.begin(), comp.degree.end(), [](int v) { return v != 0; })) {
          for (const auto& [k, c] : comp.element.terms()) off_degree = std::max(off_degree, std::abs(c));
        }
      }
    }
    report.add("connection.i.invariant" + tag, "omega_i has coefficients in B", off_degree, 0, tolerance);
    ops.push_back(realize(forms[static_cast<std::size_t>(i)], t.space));
    for (int j = 0; j < t.n; ++j) {
      report.add("connection.i.delta" + tag + "[" + std::to_string(j + 1) + "]", "delta_j(omega_i) = 0",
                 interior_norm(commutator(t.deltas[static_cast<std::size_t>(j)], ops.back())), 0, tolerance);
    }
    // (ii)
    const auto pres = family.presentation(i, t.theta);
    for (int l = 0; l < t.n; ++l) {
      AlgebraElement sum(t.theta);
      for (const auto& [pp, qq] : pres) sum += pp * derivation(l, qq);
      const auto target = AlgebraElement::scalar(t.theta, l == i ? 1.0 : 0.0);
      report.add("connection.ii" + tag + "[" + std::to_string(l + 1) + "]", "sum_j p_j delta_l(q_j) = delta_il",
                 distance(sum, target), 0, tolerance);
    }
    report.add("connection.presentation" + tag, "operator of the presentation equals the stored form",
               interior_deviation(one_form(pres, t), ops.back()), 0, tolerance);
  }
  // (iii)
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-1, 1);
  for (int s = 0; s < samples; ++s) {
    MultiIndex q(static_cast<std::size_t>(t.n));
    for (auto& v : q) v = pick(rng);
    const auto a = random_graded_element(t.theta, rng, q, 1, 3);
    const auto pa = t.pi(a);
    LinearOperator eta = commutator(t.D, pa);
    for (int i = 0; i < t.n; ++i) {
      if (q[i] != 0) eta = eta - scale(compose(pa, ops[static_cast<std::size_t>(i)]), static_cast<double>(q[i]));
    }
    const std::string tag = "[" + std::to_string(s) + "]";
    LinearOperator rebuilt = zero_operator(t.space);
    double vertical = 0.0;
    for (int l = 0; l < t.dim(); ++l) {
      const auto comp = spinor_component(eta, t.dirac_symbols[static_cast<std::size_t>(l)]);
      rebuilt = rebuilt + lift(t.dirac_symbols[static_cast<std::size_t>(l)], comp, t.space);
      if (l < t.n) vertical = std::max(vertical, interior_norm(comp, eta.shift_radius()));
    }
    report.add("connection.iii.vertical" + tag, "da - sum_i delta_i(a) omega_i has no vertical component",
               vertical, eta.shift_radius(), tolerance);
    report.add("connection.iii.span" + tag, "da - sum_i delta_i(a) omega_i lies in the span of the A_j",
               interior_deviation(eta, rebuilt.with_radius(eta.shift_radius())), eta.shift_radius(), tolerance);
  }
  return report;
}

EllConnection connection_from_ell(const MultiIndex& q, const TripleData& t, double tolerance) {
  if (static_cast<int>(q.size()) != t.n) throw std::invalid_argument("degree has wrong length");
  MultiIndex k(static_cast<std::size_t>(t.dim()), 0);
  std::copy(q.begin(), q.end(), k.begin());
  const auto u = AlgebraElement::monomial(t.theta, k);
  const auto pu = t.pi(u);
  const auto form = compose(adjoint(pu), commutator(t.D, pu));
  LinearOperator expected = zero_operator(t.space);
  const auto canonical = realize_all(ConnectionFamily::canonical(t.theta, t.n, t.m), t);
  for (int i = 0; i < t.n; ++i) {
    if (q[i] != 0) expected = expected + scale(canonical[static_cast<std::size_t>(i)], static_cast<double>(q[i]));
  }
  EllConnection out{form, {}};
  out.report.add("ell.form" + format_index(q), "ell(z^q) - eps(z^q) = sum_i q_i omega_i",
                 interior_deviation(form, expected), form.shift_radius(), tolerance);
  return out;
}

OneForm nabla_symbolic(const AlgebraElement& a, const ConnectionFamily& family, const TripleData& t) {
  const MultiIndex q = homogeneous_degree(a, t.n);
  OneForm out;
  for (int j = 0; j < t.dim(); ++j) {
    auto dj = derivation(j, a);
    if (!dj.is_zero()) out.push_back({t.dirac_symbols[static_cast<std::size_t>(j)], std::move(dj)});
  }
  const auto forms = family.forms(t);
  for (int i = 0; i < t.n; ++i) {
    if (q[i] == 0) continue;
    for (const auto& term : forms[static_cast<std::size_t>(i)]) {
      out.push_back({term.spinor, a * term.coefficient * Complex(-q[i])});
    }
  }
  return out;
}

LinearOperator nabla_omega(const AlgebraElement& a, const ConnectionFamily& family, const TripleData& t) {
  return realize(nabla_symbolic(a, family, t), t.space);
}

VerificationReport check_nabla(const ConnectionFamily& family, const BaseTriple& base, const ProjectabilityData& p,
                               const std::vector<MultiIndex>& degrees, int samples, std::uint64_t seed,
                               double tolerance) {
  VerificationReport report;
  const auto& t = p.triple;
  std::mt19937_64 rng(seed);
  const MultiIndex zero(static_cast<std::size_t>(t.n), 0);
  const auto& jt = base.J_twist;
  auto R = [&](const AlgebraElement& x) { return right_action(jt, t.pi(x)); };
  const double form_sign = -horizontal_sign(jt, p.D_h);
  auto Rform = [&](const LinearOperator& eta) { return scale(right_action(jt, eta), form_sign); };

  for (const auto& q : degrees) {
    for (int s = 0; s < samples; ++s) {
      const std::string tag = format_index(q) + "[" + std::to_string(s) + "]";
      const auto a1 = random_graded_element(t.theta, rng, q, 1, 2);
      const auto a2 = random_graded_element(t.theta, rng, q, 1, 2);
      const auto b = random_graded_element(t.theta, rng, zero, 1, 2);

      const auto lhs = nabla_omega(b * a1, family, t);
      const auto rhs = compose(commutator(t.D, t.pi(b)), t.pi(a1)) + compose(t.pi(b), nabla_omega(a1, family, t));
      report.add("nabla.leibniz" + tag, "nabla(b a) = [D, b] a + b nabla(a)", interior_deviation(lhs, rhs), 0,
                 tolerance);

      const auto prod = a2 * star(a1);
      double off = 0.0;
      for (const auto& comp : graded_decompose(prod, t.n)) {
        if (comp.degree != zero) {
          for (const auto& [k, c] : comp.element.terms()) off = std::max(off, std::abs(c));
        }
      }
      report.add("nabla.hermitian_i" + tag, "m_1^dagger m_2 in J B J^-1", off, 0, tolerance);

      const auto n1 = nabla_omega(a1, family, t);
      const auto n2 = nabla_omega(a2, family, t);
      const auto r12 = compose(R(star(a1)), R(a2));
      const auto left = compose(R(star(a1)), Rform(n2)) - compose(adjoint(Rform(n1)), R(a2));
      const auto right = compose(p.D_h, r12) - compose(r12, p.D_h);
      const auto diff = left - right;
      report.add("nabla.hermitian_ii" + tag, "m1^+ nabla(m2) - nabla(m1)^+ m2 = [D_0, m1^+ m2] on H_0",
                 h0_norm(diff, t.n), diff.shift_radius(), tolerance);
    }
  }
  return report;
}

TwistData twisted_dirac(const BaseTriple& base, const ConnectionFamily& family, const ProjectabilityData& p,
                        const std::optional<LinearOperator>& Z_prime, double tolerance) {
  const auto& t = p.triple;
  auto forms = realize_all(family, t);
  VerificationReport sa;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    sa.add("twist.family_selfadjoint[" + std::to_string(i + 1) + "]", "omega_i = omega_i^*",
           selfadjoint_defect(forms[i]), 0, tolerance);
  }
  if (!sa.all_passed()) throw PreconditionError("twisted Dirac operator needs a selfadjoint family", sa);
  const auto z = Z_prime ? *Z_prime : p.Z_prime;
  const auto d_omega = twist_operator(p, forms, base.J_twist, z);
  const std::string used = base.recipe.d_prime == DPrime::D0 ? "j0" : "Gamma j0";
  return TwistData{base.recipe, used, base.J_twist, std::move(forms), d_omega, p.D_v + d_omega};
}

VerificationReport verify_twist(const TwistData& tw, const ConnectionFamily& family, const ProjectabilityData& p,
                                int samples, std::uint64_t seed, double tolerance) {
  VerificationReport report;
  const auto& t = p.triple;
  report.add("twist.selfadjoint", "D_omega = D_omega^*", selfadjoint_defect(tw.D_omega), 0, tolerance);
  report.add("twist.script_selfadjoint", "D_v + D_omega selfadjoint", selfadjoint_defect(tw.script_D_omega), 0,
             tolerance);
  for (int i = 0; i < t.n; ++i) {
    report.add("twist.sectors[" + std::to_string(i + 1) + "]", "D_omega preserves every H_q",
               interior_norm(commutator(t.deltas[static_cast<std::size_t>(i)], tw.D_omega)), 0, tolerance);
  }
  if (t.n % 2 == 0) {
    report.add("twist.reducibility", "[Gamma, D_omega] = 0", interior_norm(commutator(p.Gamma, tw.D_omega)), 0,
               tolerance);
  }
  // Cutoff stability of [D_omega, a] on a fixed reference box.
  const int cutoff = t.space.cutoff();
  const auto wide = rebuild_at(p, cutoff + 2);
  const auto wide_forms = realize_all(family, wide.triple);
  const auto wide_twist = twist_operator(wide, wide_forms, j_twist_for(wide), zero_operator(wide.triple.space));
  const auto narrow_twist = twist_operator(p, tw.forms, tw.J_twist, zero_operator(t.space));
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto a = random_element(t.theta, rng, 1, 3);
    const int r = std::min(1, cutoff - a.degree() - family.degree());
    auto norm_at = [&](const LinearOperator& d, const TruncatedSpace& space) {
      const auto c = commutator(d, represent(a, space));
      if (r < 0) return std::numeric_limits<double>::quiet_NaN();
      return exact_restricted_norm(c, InteriorContract{space.cutoff() - r}.columns(space));
    };
    const double n1 = norm_at(narrow_twist, t.space);
    const double n2 = norm_at(wide_twist, wide.triple.space);
    report.add("twist.bounded[" + std::to_string(s) + "]", "|[D_omega, a]| independent of the cutoff",
               std::abs(n1 - n2), 0, 1e-10);
  }
  return report;
}

double compatibility_deviation(const TwistData& tw, const ProjectabilityData& p) {
  return interior_deviation(tw.D_omega, p.D_h);
}

VerificationReport check_compatibility(const TwistData& tw, const ProjectabilityData& p, double tolerance) {
  VerificationReport report;
  report.add("compatibility.deviation", "D_omega = D_h on the interior", compatibility_deviation(tw, p),
             std::max(tw.D_omega.shift_radius(), p.D_h.shift_radius()), tolerance);
  return report;
}

VerificationReport verify_reprojection(const TwistData& tw, const ProjectabilityData& p, double tolerance) {
  VerificationReport report;
  TripleData t2 = p.triple;
  t2.D = tw.script_D_omega;
  report.add("reprojection.selfadjoint", "D_v + D_omega selfadjoint", selfadjoint_defect(t2.D), 0, tolerance);
  for (int i = 0; i < t2.n; ++i) {
    report.add("reprojection.equivariance[" + std::to_string(i + 1) + "]", "[delta_i, D_v + D_omega] = 0 along the fibres",
               interior_norm(commutator(t2.deltas[static_cast<std::size_t>(i)], t2.D)), 0, tolerance);
  }
  report.append(check_grading(t2, p.Gamma, tolerance), "reprojection.");
  LinearOperator d_h2 = zero_operator(t2.space);
  try {
    d_h2 = horizontal_dirac(t2, p.Gamma, tolerance);
  } catch (const PreconditionError& e) {
    report.add("reprojection.horizontal", "horizontal part of D_v + D_omega = D_omega",
               std::numeric_limits<double>::infinity(), 0, tolerance);
    return report;
  }
  report.add("reprojection.horizontal", "horizontal part of D_v + D_omega = D_omega",
             interior_deviation(d_h2, tw.D_omega), 0, tolerance);
  ProjectabilityData p2{t2, p.Gamma, p.gamma_spinor, p.parity_n, p.gamma_sign, p.doubled,
                        d_h2, p.D_v, p.Z, p.Z_prime};
  report.append(check_isometric_fibres(p2, tolerance), "reprojection.");
  return report;
}

VerificationReport check_sector_equivalence(const TwistData& tw, const ConnectionFamily& family,
                                            const ProjectabilityData& p, const std::vector<MultiIndex>& degrees,
                                            double tolerance) {
  VerificationReport report;
  const auto& t = p.triple;
  const auto& jt = tw.J_twist;
  const double form_sign = -horizontal_sign(jt, p.D_h);
  std::mt19937_64 rng(17);
  for (const auto& q : degrees) {
    MultiIndex k(static_cast<std::size_t>(t.dim()), 0);
    std::copy(q.begin(), q.end(), k.begin());
    const std::vector<AlgebraElement> samples = {AlgebraElement::monomial(t.theta, k),
                                                 random_graded_element(t.theta, rng, q, 1, 2)};
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto& elem = samples[s];
      const auto rp = right_action(jt, t.pi(elem));
      const auto nab = scale(right_action(jt, nabla_omega(elem, family, t)), form_sign);
      const auto lhs = compose(tw.D_omega, rp);
      const auto rhs = compose(rp, p.D_h) + nab;
      const auto diff = lhs - rhs;
      report.add("sector" + format_index(q) + "[" + std::to_string(s) + "]", "D_omega(hp) = (D_h h)p + h nabla(p)",
                 h0_norm(diff, t.n), diff.shift_radius(), tolerance);
    }
  }
  return report;
}

}  // namespace ncg
