#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorgamma/exactnum.hpp"

namespace mirrorgamma {

/// Exponent vector over the generators (gamma, zeta2, zeta3, ...).
/// Slot 0 is gamma, slot j >= 1 is zeta(j+1). Trailing zeros are trimmed so
/// that equal monomials have equal representations.
class TransMonomial {
 public:
  TransMonomial() = default;
  explicit TransMonomial(std::vector<std::uint32_t> exps);

  static TransMonomial gamma(std::uint32_t power = 1);
  static TransMonomial zeta(unsigned k, std::uint32_t power = 1);

  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint32_t gamma_power() const { return exps_.empty() ? 0 : exps_[0]; }
  /// Exponent of zeta(k), k >= 2.
  std::uint32_t zeta_power(unsigned k) const;
  /// gamma has weight 1, zeta(k) has weight k.
  std::uint64_t weight() const;
  bool is_one() const { return exps_.empty(); }
  /// Largest k such that zeta(k) occurs (0 if none).
  unsigned max_zeta() const;

  TransMonomial operator*(const TransMonomial& o) const;
  /// Whether this monomial is divisible by `o`; if so `quotient` receives this/o.
  bool divisible_by(const TransMonomial& o, TransMonomial& quotient) const;

  friend bool operator==(const TransMonomial&, const TransMonomial&) = default;
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint32_t> exps_;
};

/// Weight-graded lexicographic order on (gamma, zeta2, zeta3, ...); a monomial
/// order, so it is compatible with multiplication.
struct TransMonomialOrder {
  bool operator()(const TransMonomial& a, const TransMonomial& b) const;
};

/// Element of the free commutative ring Q[gamma, zeta2, zeta3, ...].
/// No relations among the generators are imposed: zeta4 and zeta2^2 are
/// independent symbols.
class TransScalar {
 public:
  using TermMap = std::map<TransMonomial, BigRat, TransMonomialOrder>;

  TransScalar() = default;
  TransScalar(const BigRat& c);  // NOLINT(google-explicit-constructor)
  TransScalar(long c) : TransScalar(BigRat(c)) {}  // NOLINT(google-explicit-constructor)
  TransScalar(int c) : TransScalar(BigRat(c)) {}   // NOLINT(google-explicit-constructor)
  TransScalar(const TransMonomial& m, const BigRat& c);

  static TransScalar gamma() { return {TransMonomial::gamma(), BigRat(1)}; }
  /// zeta(k) for k >= 2.
  static TransScalar zeta(unsigned k);

  /// Parses the output of to_string(), e.g. "1/2*zeta2^2 - 1/2*zeta4 + gamma".
  static TransScalar parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  BigRat constant_term() const;
  BigRat coefficient(const TransMonomial& m) const;
  /// Maximum monomial weight (0 for the zero scalar).
  std::uint64_t max_weight() const;
  /// The part of weight exactly w.
  TransScalar weight_part(std::uint64_t w) const;
  bool involves_gamma() const;

  TransScalar& operator+=(const TransScalar& o);
  TransScalar& operator-=(const TransScalar& o);
  TransScalar& operator*=(const TransScalar& o);
  TransScalar& operator*=(const BigRat& c);

  friend TransScalar operator+(TransScalar a, const TransScalar& b) { return a += b; }
  friend TransScalar operator-(TransScalar a, const TransScalar& b) { return a -= b; }
  friend TransScalar operator*(const TransScalar& a, const TransScalar& b);
  friend TransScalar operator*(TransScalar a, const BigRat& c) { return a *= c; }
  friend TransScalar operator*(const BigRat& c, TransScalar a) { return a *= c; }
  TransScalar operator-() const;

  friend bool operator==(const TransScalar& a, const TransScalar& b) { return a.terms_ == b.terms_; }

  TransScalar pow(unsigned n) const;

  std::string to_string() const;

 private:
  void add_term(const TransMonomial& m, const BigRat& c);
  TermMap terms_;
};

/// Exact quotient a / b in Q[gamma, zeta...]; throws PreconditionError when
/// b is zero or does not divide a.
TransScalar exact_div(const TransScalar& a, const TransScalar& b);

std::ostream& operator<<(std::ostream& os, const TransScalar& t);

}  // namespace mirrorgamma
