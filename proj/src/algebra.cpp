#include "ncg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncg {

ThetaMatrix::ThetaMatrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim * dim), 0.0) {
  if (dim < 0) throw std::invalid_argument("theta dimension must be non-negative");
}

ThetaMatrix ThetaMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int dim = static_cast<int>(rows.size());
  ThetaMatrix theta(dim);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(rows[i].size()) != dim) {
      throw std::invalid_argument("theta must be a square matrix");
    }
    for (int j = 0; j < dim; ++j) {
      if (rows[i][j] != -rows[j][i]) {
        throw std::invalid_argument("theta must be antisymmetric: entry (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
      theta.entries_[static_cast<std::size_t>(i * dim + j)] = rows[i][j];
    }
  }
  return theta;
}

ThetaMatrix ThetaMatrix::random(int dim, std::mt19937_64& rng, double scale) {
  ThetaMatrix theta(dim);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) theta.set(i, j, dist(rng));
  }
  return theta;
}

void ThetaMatrix::set(int i, int j, double value) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::out_of_range("theta index");
  if (i == j) {
    if (value != 0.0) throw std::invalid_argument("theta diagonal must vanish");
    return;
  }
  entries_[static_cast<std::size_t>(i * dim_ + j)] = value;
  entries_[static_cast<std::size_t>(j * dim_ + i)] = -value;
}

ThetaMatrix ThetaMatrix::lower_block(int offset) const {
  if (offset < 0 || offset > dim_) throw std::invalid_argument("block offset out of range");
  ThetaMatrix block(dim_ - offset);
  for (int i = offset; i < dim_; ++i) {
    for (int j = offset; j < dim_; ++j) {
      block.entries_[static_cast<std::size_t>((i - offset) * block.dim_ + (j - offset))] =
          (*this)(i, j);
    }
  }
  return block;
}

std::vector<std::vector<double>> ThetaMatrix::rows() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) out[i].push_back((*this)(i, j));
  }
  return out;
}

double ThetaMatrix::pairing(const MultiIndex& k, const MultiIndex& l) const {
  double acc = 0.0;
  for (int i = 1; i < dim_; ++i) {
    if (k[i] == 0) continue;
    for (int j = 0; j < i; ++j) {
      if (l[j] != 0) acc += static_cast<double>(k[i]) * static_cast<double>(l[j]) * (*this)(i, j);
    }
  }
  return acc;
}

Complex unit_phase(double turns) {
  const double r = std::remainder(turns, 1.0);
  // Exact values on the quarter turns keep the common rational cases free of rounding.
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.25) return {0.0, 1.0};
  if (r == -0.25) return {0.0, -1.0};
  if (r == 0.5 || r == -0.5) return {-1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * r);
}

MonomialProduct monomial_product(const MultiIndex& k, const MultiIndex& l, const ThetaMatrix& theta) {
  const auto dim = static_cast<std::size_t>(theta.dim());
  if (k.size() != dim || l.size() != dim) {
    throw std::invalid_argument("monomial index length does not match theta dimension");
  }
  MultiIndex sum(dim);
  for (std::size_t i = 0; i < dim; ++i) sum[i] = k[i] + l[i];
  return {unit_phase(theta.pairing(k, l)), std::move(sum)};
}

AlgebraElement::AlgebraElement(ThetaPtr theta) : theta_(std::move(theta)) {
  if (!theta_) throw std::invalid_argument("algebra element requires a theta matrix");
}

AlgebraElement::AlgebraElement(ThetaPtr theta, Terms terms)
    : theta_(std::move(theta)), terms_(std::move(terms)) {
  if (!theta_) throw std::invalid_argument("algebra element requires a theta matrix");
  for (const auto& [index, c] : terms_) {
    if (static_cast<int>(index.size()) != theta_->dim()) {
      throw std::invalid_argument("monomial index length does not match theta dimension");
    }
  }
  normalize();
}

AlgebraElement AlgebraElement::scalar(ThetaPtr theta, Complex value) {
  const auto dim = static_cast<std::size_t>(theta->dim());
  return AlgebraElement(std::move(theta), Terms{{MultiIndex(dim, 0), value}});
}

AlgebraElement AlgebraElement::monomial(ThetaPtr theta, MultiIndex index, Complex coefficient) {
  Terms t;
  t.emplace(std::move(index), coefficient);
  return AlgebraElement(std::move(theta), std::move(t));
}

AlgebraElement AlgebraElement::generator(ThetaPtr theta, int j) {
  if (j < 0 || j >= theta->dim()) throw std::invalid_argument("generator index out of range");
  MultiIndex index(static_cast<std::size_t>(theta->dim()), 0);
  index[static_cast<std::size_t>(j)] = 1;
  return monomial(std::move(theta), std::move(index));
}

int AlgebraElement::degree() const {
  int deg = 0;
  for (const auto& [index, c] : terms_) {
    for (int v : index) deg = std::max(deg, std::abs(v));
  }
  return deg;
}

Complex AlgebraElement::coefficient(const MultiIndex& index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? Complex{} : it->second;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out = *this;
  for (auto& [index, c] : out.terms_) c = -c;
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_algebra(other);
  for (const auto& [index, c] : other.terms_) terms_[index] += c;
  normalize();
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_algebra(other);
  for (const auto& [index, c] : other.terms_) terms_[index] -= c;
  normalize();
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scale) {
  for (auto& [index, c] : terms_) c *= scale;
  normalize();
  return *this;
}

void AlgebraElement::normalize() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kCoefficientEpsilon; });
}

void AlgebraElement::require_same_algebra(const AlgebraElement& other) const {
  if (!same_algebra(*this, other)) {
    throw std::invalid_argument("algebra elements belong to different theta matrices");
  }
}

bool same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  return a.theta_ptr() == b.theta_ptr() || a.theta() == b.theta();
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (!same_algebra(a, b)) {
    throw std::invalid_argument("algebra elements belong to different theta matrices");
  }
  AlgebraElement::Terms out;
  for (const auto& [k, ck] : a.terms()) {
    for (const auto& [l, cl] : b.terms()) {
      auto [phase, index] = monomial_product(k, l, a.theta());
      out[std::move(index)] += phase * ck * cl;
    }
  }
  return AlgebraElement(a.theta_ptr(), std::move(out));
}

AlgebraElement star(const AlgebraElement& a) {
  AlgebraElement::Terms out;
  for (const auto& [k, c] : a.terms()) {
    MultiIndex neg(k.size());
    std::transform(k.begin(), k.end(), neg.begin(), [](int v) { return -v; });
    // (U^k)^{-1} = exp(2 pi i <k,k>) U^{-k} in normal order.
    out.emplace(std::move(neg), std::conj(c) * unit_phase(a.theta().pairing(k, k)));
  }
  return AlgebraElement(a.theta_ptr(), std::move(out));
}

AlgebraElement derivation(int j, const AlgebraElement& a) {
  if (j < 0 || j >= a.dim()) throw std::invalid_argument("derivation index out of range");
  AlgebraElement::Terms out;
  for (const auto& [k, c] : a.terms()) {
    if (k[static_cast<std::size_t>(j)] != 0) out.emplace(k, c * static_cast<double>(k[j]));
  }
  return AlgebraElement(a.theta_ptr(), std::move(out));
}

Complex trace(const AlgebraElement& a) {
  return a.coefficient(MultiIndex(static_cast<std::size_t>(a.dim()), 0));
}

double distance(const AlgebraElement& a, const AlgebraElement& b) {
  double worst = 0.0;
  const auto diff = a - b;
  for (const auto& [k, c] : diff.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

double coefficient_norm2(const AlgebraElement& a) {
  double acc = 0.0;
  for (const auto& [k, c] : a.terms()) acc += std::norm(c);
  return acc;
}

MultiIndex fibre_degree(const MultiIndex& index, int n) {
  return MultiIndex(index.begin(), index.begin() + n);
}

std::vector<GradedComponent> graded_decompose(const AlgebraElement& a, int n) {
  if (n < 1 || n > a.dim()) throw std::invalid_argument("grading rank must satisfy 1 <= n <= dim");
  std::map<MultiIndex, AlgebraElement::Terms> buckets;
  for (const auto& [k, c] : a.terms()) buckets[fibre_degree(k, n)].emplace(k, c);
  std::vector<GradedComponent> out;
  out.reserve(buckets.size());
  for (auto& [deg, terms] : buckets) {
    out.push_back({deg, AlgebraElement(a.theta_ptr(), std::move(terms))});
  }
  return out;
}

bool is_homogeneous(const AlgebraElement& a, int n, const MultiIndex& degree) {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [&](const auto& kv) { return fibre_degree(kv.first, n) == degree; });
}

namespace {

MultiIndex random_index(std::mt19937_64& rng, int dim, int max_degree) {
  std::uniform_int_distribution<int> pick(-max_degree, max_degree);
  MultiIndex k(static_cast<std::size_t>(dim));
  for (auto& v : k) v = pick(rng);
  return k;
}

Complex random_coefficient(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

AlgebraElement random_element(const ThetaPtr& theta, std::mt19937_64& rng, int max_degree,
                              int terms) {
  AlgebraElement::Terms out;
  for (int t = 0; t < terms; ++t) {
    auto k = random_index(rng, theta->dim(), max_degree);
    out[k] += random_coefficient(rng);
  }
  return AlgebraElement(theta, std::move(out));
}

AlgebraElement random_graded_element(const ThetaPtr& theta, std::mt19937_64& rng,
                                     const MultiIndex& degree, int max_degree, int terms) {
  AlgebraElement::Terms out;
  for (int t = 0; t < terms; ++t) {
    auto k = random_index(rng, theta->dim(), max_degree);
    std::copy(degree.begin(), degree.end(), k.begin());
    out[k] += random_coefficient(rng);
  }
  return AlgebraElement(theta, std::move(out));
}

AlgebraElement random_invariant_selfadjoint(const ThetaPtr& theta, std::mt19937_64& rng, int n,
                                            int max_degree, int terms) {
  const auto b = random_graded_element(theta, rng, MultiIndex(static_cast<std::size_t>(n), 0),
                                       max_degree, terms);
  return (b + star(b)) * Complex(0.5);
}

}  // namespace ncg
