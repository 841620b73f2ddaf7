#include "mirrorgamma/exactnum.hpp"

#include <ostream>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

BigRat::BigRat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("BigRat: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.is_zero()) throw PreconditionError("BigRat: division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

BigInt parse_int(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw ParseError("", "malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9')
      throw ParseError("", "malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(s);
  if (digits.front() == '+') digits.erase(0, 1);
  return BigInt(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

BigRat BigRat::parse(std::string_view text) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return BigRat(parse_int(t, text));
  const BigInt num = parse_int(trim(t.substr(0, slash)), text);
  const BigInt den = parse_int(trim(t.substr(slash + 1)), text);
  if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  return BigRat(num, den);
}

std::string BigRat::to_string() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.to_string(); }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt falling_factorial(const BigInt& x, unsigned long k) {
  BigInt r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= x - static_cast<long>(i);
  return r;
}

}  // namespace mirrorgamma
