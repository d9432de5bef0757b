// Sparse multivariate polynomials over C with exact coefficient bookkeeping.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> exponents);
  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<std::uint32_t>(n, 0)); }
  static MultiIndex unit(std::size_t n, std::size_t k, std::uint32_t power = 1);

  std::size_t dim() const { return exponents_.size(); }
  std::uint32_t total_degree() const { return total_; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  std::uint32_t operator[](std::size_t k) const { return exponents_[k]; }

  MultiIndex operator+(const MultiIndex& other) const;

  // Graded order: total degree first, then lexicographic on exponents.
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t total_ = 0;
};

class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex>;

  explicit Polynomial(std::size_t n = 1);
  static Polynomial constant(std::size_t n, Complex c);
  static Polynomial monomial(const MultiIndex& idx, Complex c = 1.0);
  /// The linear form <z, b> = sum_k z_k conj(b_k).
  static Polynomial linear_form(std::span<const Complex> b);

  std::size_t dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total degree; 0 for constants and the zero polynomial.
  std::uint32_t degree() const;
  Complex coefficient(const MultiIndex& idx) const;
  Complex constant_term() const;

  /// Adds c to the coefficient of idx; exact zeros are removed.
  void add_term(const MultiIndex& idx, Complex c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }

  /// Product, optionally discarding every term of total degree above max_degree.
  Polynomial times(const Polynomial& other, std::uint32_t max_degree = UINT32_MAX) const;
  Polynomial truncated(std::uint32_t max_degree) const;
  Polynomial homogeneous_part(std::uint32_t k) const;

  /// R p: every monomial multiplied by its total degree.
  Polynomial radial_derivative() const;

  Complex eval(std::span<const Complex> z) const;
  Complex operator()(const Point& z) const { return eval(z.span()); }

  bool operator==(const Polynomial& other) const = default;

 private:
  std::size_t n_;
  Terms terms_;
};

/// max over the union of supports of |a_m - b_m|.
double max_coefficient_difference(const Polynomial& a, const Polynomial& b);

}  // namespace bergman
