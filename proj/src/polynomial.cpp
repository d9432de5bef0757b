#include "bergman/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bergman {

MultiIndex::MultiIndex(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {
  total_ = std::accumulate(exponents_.begin(), exponents_.end(), std::uint32_t{0});
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t k, std::uint32_t power) {
  if (k >= n) throw DomainError("MultiIndex: variable index out of range");
  std::vector<std::uint32_t> e(n, 0);
  e[k] = power;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_dim(dim(), other.dim(), "MultiIndex");
  std::vector<std::uint32_t> e(exponents_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += other.exponents_[k];
  return MultiIndex(std::move(e));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = total_ <=> other.total_; c != 0) return c;
  return exponents_ <=> other.exponents_;
}

Polynomial::Polynomial(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("Polynomial: dimension must be at least 1");
}

Polynomial Polynomial::constant(std::size_t n, Complex c) {
  Polynomial p(n);
  p.add_term(MultiIndex::zero(n), c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& idx, Complex c) {
  Polynomial p(idx.dim());
  p.add_term(idx, c);
  return p;
}

Polynomial Polynomial::linear_form(std::span<const Complex> b) {
  Polynomial p(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) p.add_term(MultiIndex::unit(b.size(), k), std::conj(b[k]));
  return p;
}

std::uint32_t Polynomial::degree() const {
  // Terms are graded, so the last key carries the maximal degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree();
}

Complex Polynomial::coefficient(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

Complex Polynomial::constant_term() const { return coefficient(MultiIndex::zero(n_)); }

void Polynomial::add_term(const MultiIndex& idx, Complex c) {
  require_same_dim(n_, idx.dim(), "Polynomial");
  if (c == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dim(n_, other.n_, "Polynomial +");
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dim(n_, other.n_, "Polynomial -");
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  if (s == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == Complex{0.0, 0.0}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial Polynomial::times(const Polynomial& other, std::uint32_t max_degree) const {
  require_same_dim(n_, other.n_, "Polynomial *");
  Polynomial out(n_);
  for (const auto& [a, ca] : terms_) {
    if (a.total_degree() > max_degree) break;
    for (const auto& [b, cb] : other.terms_) {
      if (a.total_degree() + b.total_degree() > max_degree) break;
      out.add_term(a + b, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::truncated(std::uint32_t max_degree) const {
  Polynomial out(n_);
  for (const auto& [idx, c] : terms_) {
    if (idx.total_degree() > max_degree) break;
    out.terms_.emplace_hint(out.terms_.end(), idx, c);
  }
  return out;
}

Polynomial Polynomial::homogeneous_part(std::uint32_t k) const {
  Polynomial out(n_);
  for (const auto& [idx, c] : terms_) {
    if (idx.total_degree() == k) out.terms_.emplace_hint(out.terms_.end(), idx, c);
  }
  return out;
}

Polynomial Polynomial::radial_derivative() const {
  Polynomial out(n_);
  for (const auto& [idx, c] : terms_) {
    if (idx.total_degree() == 0) continue;
    out.terms_.emplace_hint(out.terms_.end(), idx, c * static_cast<double>(idx.total_degree()));
  }
  return out;
}

Complex Polynomial::eval(std::span<const Complex> z) const {
  require_same_dim(n_, z.size(), "Polynomial::eval");
  if (terms_.empty()) return {0.0, 0.0};
  if (n_ == 1) {
    // Horner over the (sparse) degree sequence.
    Complex acc{0.0, 0.0};
    std::uint32_t prev = terms_.rbegin()->first.total_degree();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const std::uint32_t d = it->first.total_degree();
      for (std::uint32_t k = d; k < prev; ++k) acc *= z[0];
      acc += it->second;
      prev = d;
    }
    for (std::uint32_t k = 0; k < prev; ++k) acc *= z[0];
    return acc;
  }
  const std::uint32_t deg = degree();
  std::vector<Complex> powers(n_ * (deg + 1));
  for (std::size_t k = 0; k < n_; ++k) {
    Complex* row = &powers[k * (deg + 1)];
    row[0] = 1.0;
    for (std::uint32_t e = 1; e <= deg; ++e) row[e] = row[e - 1] * z[k];
  }
  Complex acc{0.0, 0.0};
  for (const auto& [idx, c] : terms_) {
    Complex m = c;
    for (std::size_t k = 0; k < n_; ++k) {
      if (idx[k] != 0) m *= powers[k * (deg + 1) + idx[k]];
    }
    acc += m;
  }
  return acc;
}

double max_coefficient_difference(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.dim(), b.dim(), "max_coefficient_difference");
  double m = 0.0;
  for (const auto& [idx, c] : a.terms()) m = std::max(m, std::abs(c - b.coefficient(idx)));
  for (const auto& [idx, c] : b.terms()) m = std::max(m, std::abs(c - a.coefficient(idx)));
  return m;
}

}  // namespace bergman
