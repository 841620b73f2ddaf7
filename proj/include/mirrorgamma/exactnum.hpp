#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mirrorgamma {

using BigInt = mpz_class;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class BigRat {
 public:
  BigRat() = default;
  BigRat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& num, const BigInt& den);

  /// Parses "a", "-a" or "a/b".
  static BigRat parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigRat& operator+=(const BigRat& o) { q_ += o.q_; return *this; }
  BigRat& operator-=(const BigRat& o) { q_ -= o.q_; return *this; }
  BigRat& operator*=(const BigRat& o) { q_ *= o.q_; return *this; }
  BigRat& operator/=(const BigRat& o);

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }
  BigRat operator-() const { BigRat r; r.q_ = -q_; return r; }

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const;
  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const BigRat& r);

BigInt factorial(unsigned long n);
/// Zero when k > n.
BigInt binomial(unsigned long n, unsigned long k);

/// Falling factorial x (x-1) ... (x-k+1); defined for any integer x.
BigInt falling_factorial(const BigInt& x, unsigned long k);

}  // namespace mirrorgamma
