#include "ncg/triple.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ncg/principal.hpp"

namespace ncg {

using Triplet = Eigen::Triplet<Complex>;

LinearOperator dirac_from_symbols(const std::vector<Matrix>& symbols, const TruncatedSpace& space) {
  if (static_cast<int>(symbols.size()) != space.k()) {
    throw std::invalid_argument("need one Dirac symbol per lattice direction");
  }
  const int n = space.spinor_dim();
  for (const auto& s : symbols) {
    if (s.rows() != n || s.cols() != n) throw std::invalid_argument("Dirac symbol has wrong size");
  }
  std::vector<Triplet> trips;
  Matrix local(n, n);
  for (Index site = 0; site < space.lattice_size(); ++site) {
    const MultiIndex k = space.site(site);
    local.setZero();
    for (int j = 0; j < space.k(); ++j) {
      if (k[static_cast<std::size_t>(j)] != 0) local += static_cast<double>(k[j]) * symbols[j];
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (local(r, c) != Complex{}) trips.emplace_back(space.index(site, r), space.index(site, c), local(r, c));
      }
    }
  }
  SparseMatrix m(space.total_dim(), space.total_dim());
  m.setFromTriplets(trips.begin(), trips.end());
  return LinearOperator(space, std::move(m));
}

TripleData assemble_triple(const ThetaPtr& theta, int n, int m, int cutoff, const GammaSet& gammas) {
  if (n < 1 || m < 0) throw std::invalid_argument("bundle split needs n >= 1 and m >= 0");
  if (theta->dim() != n + m) throw std::invalid_argument("theta dimension must equal n + m");
  if (gammas.d != n + m) throw std::invalid_argument("gamma set dimension must equal n + m");
  const TruncatedSpace space(n + m, cutoff, gammas.spinor_dim());
  std::vector<LinearOperator> deltas;
  std::vector<AlgebraElement> generators;
  for (int j = 0; j < n + m; ++j) {
    deltas.push_back(derivation_operator(j, space));
    generators.push_back(AlgebraElement::generator(theta, j));
  }
  std::optional<LinearOperator> gamma;
  if (gammas.chirality) gamma = spinor_operator(*gammas.chirality, space);
  return TripleData{theta,
                    n,
                    m,
                    gammas,
                    space,
                    gammas.matrices,
                    std::nullopt,
                    dirac_from_symbols(gammas.matrices, space),
                    tomita_J(space, *theta, gammas.charge_conj),
                    gamma,
                    std::move(deltas),
                    std::move(generators),
                    n + m};
}

TripleData build_flat_triple(const ThetaPtr& theta, int n, int m, int cutoff, int multiplicity) {
  if (multiplicity != 1 && multiplicity != 2) throw std::invalid_argument("multiplicity must be 1 or 2");
  GammaSet g = build_gammas(n + m);
  if (multiplicity == 2) g = doubled(g);
  return assemble_triple(theta, n, m, cutoff, g);
}

TripleData with_dirac_symbols(const TripleData& t, std::vector<Matrix> symbols) {
  TripleData out = t;
  out.D = dirac_from_symbols(symbols, t.space);
  if (t.zero_order) out.D = out.D + *t.zero_order;
  out.dirac_symbols = std::move(symbols);
  return out;
}

TripleData with_zero_order(const TripleData& t, const LinearOperator& z) {
  TripleData out = t;
  out.zero_order = z;
  out.D = dirac_from_symbols(t.dirac_symbols, t.space) + z;
  return out;
}

TripleData with_charge_conj(const TripleData& t, const Matrix& charge_conj) {
  TripleData out = t;
  out.gammas.charge_conj = charge_conj;
  out.J = tomita_J(t.space, *t.theta, charge_conj);
  return out;
}

LinearOperator conjugate_by(const LinearOperator& j, const LinearOperator& x) {
  return compose(compose(j, x), adjoint(j));
}

LinearOperator opposite(const TripleData& t, const AlgebraElement& b) {
  return conjugate_by(t.J, adjoint(t.pi(b)));
}

namespace {

/// Largest number of lattice sites R with (2R+1)^k * N <= 512.
int reference_radius(const TruncatedSpace& space) {
  int r = 0;
  while (true) {
    double cols = space.spinor_dim();
    for (int i = 0; i < space.k(); ++i) cols *= 2 * (r + 1) + 1;
    if (cols > 512) break;
    ++r;
  }
  return r;
}

/// pi(A^{(q)}) H_l in H_{q+l}: size of matrix entries that violate the sector bookkeeping.
double sector_violation(const LinearOperator& op, int n, const MultiIndex& q) {
  const auto& space = op.space();
  double worst = 0.0;
  for (Index j = 0; j < op.matrix().outerSize(); ++j) {
    const MultiIndex from = space.site(j / space.spinor_dim());
    for (SparseMatrix::InnerIterator it(op.matrix(), j); it; ++it) {
      const MultiIndex to = space.site(it.row() / space.spinor_dim());
      for (int i = 0; i < n; ++i) {
        if (to[i] != from[i] + q[i]) {
          worst = std::max(worst, std::abs(it.value()));
          break;
        }
      }
    }
  }
  return worst;
}

}  // namespace

int reference_box(const TripleData& t, const AlgebraElement& a) {
  return std::min(reference_radius(t.space), t.space.cutoff() - a.degree());
}

double reference_commutator_norm(const TripleData& t, const AlgebraElement& a, int cutoff, int r) {
  const TruncatedSpace space(t.space.k(), cutoff, t.space.spinor_dim());
  if (r < 0 || r > cutoff - a.degree()) throw std::invalid_argument("cutoff too small for the sample degree");
  const LinearOperator d = dirac_from_symbols(t.dirac_symbols, space);
  const LinearOperator c = commutator(d, represent(a, space));
  return exact_restricted_norm(c, InteriorContract{cutoff - r}.columns(space));
}

double commutator_bound(const TripleData& t, const AlgebraElement& a) {
  double bound = 0.0;
  const int n = t.space.spinor_dim();
  for (const auto& [q, c] : a.terms()) {
    Matrix s = Matrix::Zero(n, n);
    for (int j = 0; j < t.dim(); ++j) s += static_cast<double>(q[j]) * t.dirac_symbols[j];
    Eigen::JacobiSVD<Matrix> svd(s);
    bound += std::abs(c) * (svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
  }
  return bound;
}

VerificationReport verify_equivariant_real_triple(const TripleData& t, const TripleCheckOptions& options) {
  VerificationReport report;
  const double tol = options.tolerance;
  const KRSigns signs = kr_signs(t.kr_dim);
  std::mt19937_64 rng(options.seed);

  report.add("triple.D.selfadjoint", "D = D^dagger", selfadjoint_defect(t.D), 0, tol);
  report.add("triple.J.antiunitary", "J^dagger J = 1",
             interior_deviation(compose(adjoint(t.J), t.J), identity_operator(t.space)), 0, tol);

  // KR signs
  report.add("triple.kr.J2", "J^2 = eps",
             interior_deviation(compose(t.J, t.J), scale(identity_operator(t.space), signs.eps)), 0, tol);
  report.add("triple.kr.JD", "JD = eps' DJ",
             interior_deviation(compose(t.J, t.D), scale(compose(t.D, t.J), signs.eps_prime)), 0, tol);
  if (t.gamma) {
    const auto& g = *t.gamma;
    const int epp = signs.eps_double_prime.value_or(1);
    report.add("triple.kr.Jgamma", "J gamma = eps'' gamma J",
               interior_deviation(compose(t.J, g), scale(compose(g, t.J), epp)), 0, tol);
    report.add("triple.gamma.square", "gamma^2 = 1",
               interior_deviation(compose(g, g), identity_operator(t.space)), 0, tol);
    report.add("triple.gamma.selfadjoint", "gamma = gamma^dagger", selfadjoint_defect(g), 0, tol);
    report.add("triple.gamma.D", "gamma D = -D gamma", interior_norm(commutator(g, t.D, +1)), 0, tol);
  }

  // Equivariance
  for (int j = 0; j < t.dim(); ++j) {
    const std::string tag = "[" + std::to_string(j + 1) + "]";
    const auto& dj = t.deltas[static_cast<std::size_t>(j)];
    report.add("triple.equivariance.delta_D" + tag, "[delta_j, D] = 0", interior_norm(commutator(dj, t.D)), 0, tol);
    report.add("triple.equivariance.delta_J" + tag, "delta_j J + J delta_j = 0",
               interior_norm(commutator(dj, t.J, +1)), 0, tol);
    if (t.gamma) {
      report.add("triple.equivariance.delta_gamma" + tag, "[delta_j, gamma] = 0",
                 interior_norm(commutator(dj, *t.gamma)), 0, tol);
    }
    for (int i = j + 1; i < t.dim(); ++i) {
      report.add("triple.equivariance.delta_delta" + tag + "[" + std::to_string(i + 1) + "]",
                 "[delta_i, delta_j] = 0", interior_norm(commutator(dj, t.deltas[i])), 0, tol);
    }
  }

  for (int s = 0; s < options.samples; ++s) {
    const std::string tag = "[" + std::to_string(s) + "]";
    const auto a = random_element(t.theta, rng, options.a_degree, options.terms);
    const auto b = random_element(t.theta, rng, options.b_degree, options.terms);
    const auto pa = t.pi(a);
    const auto jb = opposite(t, b);
    const auto da = commutator(t.D, pa);

    report.add("triple.commutant" + tag, "[a, J b^* J^-1] = 0", interior_norm(commutator(pa, jb)),
               pa.shift_radius() + jb.shift_radius(), tol);
    const auto fo = commutator(da, jb);
    report.add("triple.first_order" + tag, "[[D, a], J b^* J^-1] = 0", interior_norm(fo),
               fo.shift_radius(), tol);
    for (int j = 0; j < t.dim(); ++j) {
      const auto& dj = t.deltas[static_cast<std::size_t>(j)];
      const auto lhs = commutator(dj, pa);
      const auto rhs = t.pi(derivation(j, a));
      report.add("triple.equivariance.leibniz" + tag + "[" + std::to_string(j + 1) + "]",
                 "delta_j(a psi) = delta_j(a) psi + a delta_j(psi)", interior_deviation(lhs, rhs),
                 pa.shift_radius(), tol);
    }
    if (t.gamma) {
      report.add("triple.gamma.pi" + tag, "[gamma, a] = 0", interior_norm(commutator(*t.gamma, pa)),
                 pa.shift_radius(), tol);
    }
    for (const auto& comp : graded_decompose(a, t.n)) {
      report.add("triple.grading.sectors" + tag + format_index(comp.degree), "pi(A^(q)) H_l in H_{q+l}",
                 sector_violation(t.pi(comp.element), t.n, comp.degree), 0, tol);
    }
    if (options.boundedness) {
      const int cutoff = t.space.cutoff();
      const int box = reference_box(t, a);
      const double n1 = reference_commutator_norm(t, a, cutoff, box);
      const double n2 = reference_commutator_norm(t, a, cutoff + 2, box);
      report.add("triple.bounded.cutoff_stable" + tag, "|[D, a]| independent of the cutoff",
                 std::abs(n1 - n2), 0, 1e-10);
      const double bound = commutator_bound(t, a);
      report.add("triple.bounded.a_priori" + tag, "|[D, a]| <= sum_q |a_q| |sum_j q_j A_j|",
                 std::max(0.0, n1 - bound), 0, 1e-10 * std::max(1.0, bound));
    }
  }
  return report;
}

LinearOperator one_form(const Presentation& coeffs, const TripleData& t) {
  LinearOperator out = zero_operator(t.space);
  for (const auto& [a, b] : coeffs) out = out + compose(t.pi(a), commutator(t.D, t.pi(b)));
  return out;
}

OneForm symbolic_one_form(const Presentation& coeffs, const TripleData& t) {
  OneForm out;
  for (int j = 0; j < t.dim(); ++j) {
    AlgebraElement x(t.theta);
    for (const auto& [a, b] : coeffs) x += a * derivation(j, b);
    if (!x.is_zero()) out.push_back({t.dirac_symbols[static_cast<std::size_t>(j)], std::move(x)});
  }
  return out;
}

LinearOperator realize(const OneForm& form, const TruncatedSpace& space) {
  LinearOperator out = zero_operator(space);
  for (const auto& term : form) {
    out = out + compose(spinor_operator(term.spinor, space), represent(term.coefficient, space));
  }
  return out;
}

OneForm form_adjoint(const OneForm& form) {
  OneForm out;
  for (const auto& term : form) out.push_back({term.spinor.adjoint(), star(term.coefficient)});
  return out;
}

std::vector<Presentation> generate_syzygies(const TripleData& t, std::mt19937_64& rng, int count) {
  std::vector<Presentation> out;
  const int k = t.dim();
  const auto& theta = t.theta;
  std::uniform_int_distribution<int> pick(-2, 2);

  // Null space of the generator forms: sum_j c_j A_j = 0.
  const int n = t.space.spinor_dim();
  Matrix columns(n * n, k);
  for (int j = 0; j < k; ++j) {
    columns.col(j) = Eigen::Map<const Eigen::VectorXcd>(t.dirac_symbols[j].data(), n * n);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(columns.adjoint() * columns);
  std::vector<Eigen::VectorXcd> kernel;
  for (int j = 0; j < k; ++j) {
    if (solver.eigenvalues()(j) < 1e-10) kernel.push_back(solver.eigenvectors().col(j));
  }

  for (int s = 0; s < count; ++s) {
    const auto left = random_element(theta, rng, 1, 2);
    Presentation p;
    if (!kernel.empty() && s % 2 == 1) {
      const auto& c = kernel[static_cast<std::size_t>(s / 2) % kernel.size()];
      for (int j = 0; j < k; ++j) {
        if (std::abs(c(j)) < 1e-14) continue;
        const auto u = t.generators[static_cast<std::size_t>(j)];
        p.emplace_back(left * star(u) * c(j), u);
      }
    } else {
      MultiIndex q(static_cast<std::size_t>(k));
      for (auto& v : q) v = pick(rng);
      const auto u = AlgebraElement::monomial(theta, q);
      p.emplace_back(left * star(u), u);
      for (int j = 0; j < k; ++j) {
        if (q[j] == 0) continue;
        const auto g = t.generators[static_cast<std::size_t>(j)];
        p.emplace_back(left * star(g) * Complex(-q[j]), g);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

VerificationReport check_calculus_compatibility(const TripleData& t,
                                                const std::vector<Presentation>& samples,
                                                double tolerance) {
  VerificationReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const std::string tag = "[" + std::to_string(s) + "]";
    const auto form = realize(symbolic_one_form(samples[s], t), t.space);
    const double size = interior_norm(form);
    report.add("calculus.syzygy" + tag, "sum_p a_p [D, b_p] = 0", size, form.shift_radius(), tolerance);
    if (!(size <= tolerance)) continue;
    double worst = 0.0;
    for (int i = 0; i < t.n; ++i) {
      AlgebraElement x(t.theta);
      for (const auto& [a, b] : samples[s]) x += a * derivation(i, b);
      for (const auto& [idx, c] : x.terms()) worst = std::max(worst, std::abs(c));
    }
    report.add("calculus.de_rham" + tag, "sum_p a_p delta_i(b_p) = 0", worst, 0, tolerance);
  }
  return report;
}

}  // namespace ncg
