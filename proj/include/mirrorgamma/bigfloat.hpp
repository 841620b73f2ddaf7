#pragma once

#include <mpfr.h>

#include <string>

#include "mirrorgamma/exactnum.hpp"
#include "mirrorgamma/trans_scalar.hpp"

namespace mirrorgamma {

/// RAII wrapper around an MPFR float with a fixed binary precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits, double v = 0.0);
  BigFloat(mpfr_prec_t bits, const BigRat& v);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat euler_gamma(mpfr_prec_t bits);
  static BigFloat zeta(unsigned k, mpfr_prec_t bits);
  static BigFloat pi(mpfr_prec_t bits);
  /// Gamma function; +inf at poles.
  static BigFloat gamma_fn(const BigFloat& x);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  BigFloat abs() const;
  BigFloat pow(unsigned long n) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Decimal text with `digits` significant digits, trailing zeros dropped.
  std::string to_string(int digits) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

/// Upper limit on the number of significant digits accepted by trans_eval.
inline constexpr int kMaxEvalDigits = 2000;
/// Largest k for which zeta(k) is evaluated numerically.
inline constexpr unsigned kMaxZetaEval = 200;

/// Binary precision used for a request of `digits` decimal digits, with guard bits.
mpfr_prec_t bits_for_digits(int digits);

/// Numeric value of a formal scalar with gamma and zeta(k) substituted.
BigFloat evaluate(const TransScalar& a, mpfr_prec_t bits);

/// Decimal approximation correct to within 10^(1-digits) relatively.
std::string trans_eval(const TransScalar& a, int digits);

}  // namespace mirrorgamma
