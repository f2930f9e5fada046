#include "ncg/principal.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncg {

void Tensor::add(Key key, Complex c) {
  if (key.size() != legs_.size()) throw std::invalid_argument("tensor key has wrong number of legs");
  auto& slot = terms_[std::move(key)];
  slot += c;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (legs_ != other.legs_) throw std::invalid_argument("tensor leg types differ");
  for (const auto& [k, c] : other.terms_) terms_[k] += c;
  return *this;
}

double distance(const Tensor& a, const Tensor& b) {
  if (a.legs_ != b.legs_) throw std::invalid_argument("tensor leg types differ");
  std::map<Tensor::Key, Complex> diff = a.terms_;
  for (const auto& [k, c] : b.terms_) diff[k] -= c;
  double worst = 0.0;
  for (const auto& [k, c] : diff) worst = std::max(worst, std::abs(c));
  return worst;
}

namespace {

MultiIndex embed(const MultiIndex& q, int dim) {
  MultiIndex k(static_cast<std::size_t>(dim), 0);
  std::copy(q.begin(), q.end(), k.begin());
  return k;
}

MultiIndex negate(MultiIndex q) {
  for (auto& v : q) v = -v;
  return q;
}

/// Delta on H: z^q -> z^q (x) z^q.
Tensor hopf_coproduct(const MultiIndex& q) {
  Tensor t({Leg::Hopf, Leg::Hopf});
  t.add({q, q}, 1.0);
  return t;
}

/// (ell (x) id) applied to a tensor H (x) H.
Tensor ell_tensor_id(const ThetaPtr& theta, int n, const Tensor& hh) {
  Tensor out({Leg::Algebra, Leg::Algebra, Leg::Hopf});
  for (const auto& [key, c] : hh.terms()) {
    const Tensor l = splitting_map(theta, n, key[0]);
    for (const auto& [lk, lc] : l.terms()) out.add({lk[0], lk[1], key[1]}, c * lc);
  }
  return out;
}

/// (S (x) ell) applied to a tensor H (x) H.
Tensor antipode_tensor_ell(const ThetaPtr& theta, int n, const Tensor& hh) {
  Tensor out({Leg::Hopf, Leg::Algebra, Leg::Algebra});
  for (const auto& [key, c] : hh.terms()) {
    const Tensor l = splitting_map(theta, n, key[1]);
    for (const auto& [lk, lc] : l.terms()) out.add({negate(key[0]), lk[0], lk[1]}, c * lc);
  }
  return out;
}

}  // namespace

Tensor splitting_map(const ThetaPtr& theta, int n, const MultiIndex& q) {
  if (static_cast<int>(q.size()) != n) throw std::invalid_argument("degree has wrong length");
  const auto u = AlgebraElement::monomial(theta, embed(q, theta->dim()));
  const auto u_star = star(u);
  Tensor t({Leg::Algebra, Leg::Algebra});
  for (const auto& [k, c] : u_star.terms()) t.add({k, embed(q, theta->dim())}, c);
  return t;
}

Tensor apply_coaction(const Tensor& t, std::size_t leg, int n) {
  if (leg >= t.legs().size() || t.legs()[leg] != Leg::Algebra) {
    throw std::invalid_argument("coaction must be applied to an algebra leg");
  }
  auto legs = t.legs();
  legs.insert(legs.begin() + static_cast<std::ptrdiff_t>(leg) + 1, Leg::Hopf);
  Tensor out(std::move(legs));
  for (const auto& [key, c] : t.terms()) {
    auto k = key;
    k.insert(k.begin() + static_cast<std::ptrdiff_t>(leg) + 1, fibre_degree(key[leg], n));
    out.add(std::move(k), c);
  }
  return out;
}

Tensor swap_legs(const Tensor& t, std::size_t leg) {
  if (leg + 1 >= t.legs().size()) throw std::invalid_argument("no leg to swap with");
  auto legs = t.legs();
  std::swap(legs[leg], legs[leg + 1]);
  Tensor out(std::move(legs));
  for (const auto& [key, c] : t.terms()) {
    auto k = key;
    std::swap(k[leg], k[leg + 1]);
    out.add(std::move(k), c);
  }
  return out;
}

AlgebraElement multiply_legs(const ThetaPtr& theta, const Tensor& t) {
  if (t.legs() != std::vector<Leg>{Leg::Algebra, Leg::Algebra}) {
    throw std::invalid_argument("multiplication needs an A (x) A tensor");
  }
  AlgebraElement out(theta);
  for (const auto& [key, c] : t.terms()) {
    out += AlgebraElement::monomial(theta, key[0], c) * AlgebraElement::monomial(theta, key[1]);
  }
  return out;
}

VerificationReport check_principality(const ThetaPtr& theta, int n,
                                      const std::vector<MultiIndex>& degrees, double tolerance) {
  if (n < 1 || n > theta->dim()) throw std::invalid_argument("fibre rank must satisfy 1 <= n <= dim");
  VerificationReport report;
  const MultiIndex zero_q(static_cast<std::size_t>(n), 0);
  const MultiIndex zero_k(static_cast<std::size_t>(theta->dim()), 0);

  {
    Tensor unit({Leg::Algebra, Leg::Algebra});
    unit.add({zero_k, zero_k}, 1.0);
    report.add("principality.i", "ell(1) = 1 (x) 1", distance(splitting_map(theta, n, zero_q), unit),
               0, tolerance);
  }

  for (const auto& q : degrees) {
    const std::string tag = " q=" + format_index(q);
    const Tensor ell = splitting_map(theta, n, q);

    // (ii) m o ell = eps
    const auto product = multiply_legs(theta, ell);
    report.add("principality.ii" + tag, "m o ell = eps",
               distance(product, AlgebraElement::scalar(theta, 1.0)), 0, tolerance);

    // (iii) (ell (x) id) o Delta = (id (x) Delta_R) o ell
    const Tensor lhs3 = ell_tensor_id(theta, n, hopf_coproduct(q));
    const Tensor rhs3 = apply_coaction(ell, 1, n);
    report.add("principality.iii" + tag, "(ell (x) id) Delta = (id (x) Delta_R) ell",
               distance(lhs3, rhs3), 0, tolerance);

    // (iv) (S (x) ell) o Delta = (switch (x) id) o (Delta_R (x) id) o ell
    const Tensor lhs4 = antipode_tensor_ell(theta, n, hopf_coproduct(q));
    const Tensor rhs4 = swap_legs(apply_coaction(ell, 0, n), 0);
    report.add("principality.iv" + tag, "(S (x) ell) Delta = (switch (x) id)(Delta_R (x) id) ell",
               distance(lhs4, rhs4), 0, tolerance);
  }
  return report;
}

std::vector<MultiIndex> lattice_box(int n, int radius) {
  std::vector<MultiIndex> out;
  MultiIndex q(static_cast<std::size_t>(n), -radius);
  if (n == 0) return {MultiIndex{}};
  while (true) {
    out.push_back(q);
    int i = n - 1;
    while (i >= 0 && q[static_cast<std::size_t>(i)] == radius) {
      q[static_cast<std::size_t>(i)] = -radius;
      --i;
    }
    if (i < 0) break;
    ++q[static_cast<std::size_t>(i)];
  }
  return out;
}

std::string format_index(const MultiIndex& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

}  // namespace ncg
