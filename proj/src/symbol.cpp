#include "bergman/symbol.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace bergman {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::invalid_argument("symbol: " + msg + " at position " + std::to_string(pos)), pos_(pos) {}

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::size_t n) : s_(s), n_(n) {}

  HoloFunction parse() {
    HoloFunction h = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return h;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    return end >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[end]));
  }

  HoloFunction constant(Complex c) const { return HoloFunction::constant(n_, c); }

  HoloFunction multiply(const HoloFunction& a, const HoloFunction& b) {
    if (a.is_polynomial() && b.is_polynomial()) return HoloFunction(a.polynomial_part() * b.polynomial_part());
    if (a.is_constant()) return b * a.polynomial_part().constant_term();
    if (b.is_constant()) return a * b.polynomial_part().constant_term();
    fail("closed symbols (ces, pow) may only be multiplied by constants");
  }

  HoloFunction expr() {
    HoloFunction h = term();
    for (;;) {
      if (eat('+')) {
        h += term();
      } else if (eat('-')) {
        h += term() * Complex{-1.0, 0.0};
      } else {
        return h;
      }
    }
  }

  HoloFunction term() {
    HoloFunction h = factor();
    while (eat('*')) h = multiply(h, factor());
    return h;
  }

  unsigned exponent() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const unsigned long v = std::strtoul(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    if (v > 1000) fail("exponent too large");
    return static_cast<unsigned>(v);
  }

  HoloFunction power(const HoloFunction& base) {
    if (!eat('^')) return base;
    const unsigned e = exponent();
    if (!base.is_polynomial()) {
      if (e == 1) return base;
      fail("closed symbols cannot be raised to powers");
    }
    Polynomial acc = Polynomial::constant(n_, 1.0);
    for (unsigned k = 0; k < e; ++k) acc = acc * base.polynomial_part();
    return HoloFunction(acc);
  }

  Complex number() {
    skip();
    char* end = nullptr;
    const std::string tmp(s_.substr(pos_));
    const double v = std::strtod(tmp.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - tmp.c_str());
    if (used == 0) fail("expected a number");
    pos_ += used;
    if (!std::isfinite(v)) fail("non-finite number");
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  Complex constant_expr() {
    const std::size_t at = pos_;
    const HoloFunction h = expr();
    if (!h.is_polynomial() || h.polynomial_part().degree() != 0) {
      pos_ = at;
      fail("expected a constant");
    }
    return h.polynomial_part().constant_term();
  }

  CVec point() {
    CVec p{constant_expr()};
    while (eat(',')) p.push_back(constant_expr());
    if (p.size() != n_) fail("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n_));
    return p;
  }

  HoloFunction factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return factor() * Complex{-1.0, 0.0};
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (c == '(') {
      ++pos_;
      HoloFunction h = expr();
      expect(')');
      return power(h);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return power(constant(number()));
    if (peek_word("i")) {
      ++pos_;
      return constant({0.0, 1.0});
    }
    if (peek_word("ces")) {
      pos_ += 3;
      expect('(');
      CVec b;
      if (eat(')')) {
        b = BoundaryDirection::diagonal(n_).coords();
      } else {
        b = point();
        expect(')');
      }
      return wrap([&] { return HoloFunction::log_kernel(b); });
    }
    if (peek_word("pow")) {
      pos_ += 3;
      expect('(');
      CVec w = point();
      expect(';');
      const Complex s = constant_expr();
      expect(')');
      if (s.imag() != 0.0) fail("pow exponent must be real");
      return wrap([&] { return HoloFunction::power_kernel(w, s.real()); });
    }
    if (c == 'z') {
      ++pos_;
      std::size_t k = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        k = std::strtoul(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr, 10);
        if (k < 1 || k > n_) fail("variable index out of range 1.." + std::to_string(n_));
      } else if (n_ != 1) {
        fail("use z1..z" + std::to_string(n_) + " when n > 1");
      }
      return power(HoloFunction(Polynomial::monomial(MultiIndex::unit(n_, k - 1))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  template <typename F>
  HoloFunction wrap(F&& make) {
    try {
      return make();
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

HoloFunction parse_symbol(std::string_view text, std::size_t n) {
  if (n == 0) throw DomainError("parse_symbol: dimension must be at least 1");
  return Parser(text, n).parse();
}

}  // namespace bergman
