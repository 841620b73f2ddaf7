#include "mirrorgamma/bigfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

BigFloat::BigFloat(mpfr_prec_t bits, double v) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(mpfr_prec_t bits, const BigRat& v) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::euler_gamma(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_euler(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::zeta(unsigned k, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_zeta_ui(r.v_, k, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::gamma_fn(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_gamma(r.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow(unsigned long n) const {
  BigFloat r(precision());
  mpfr_pow_ui(r.v_, v_, n, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0.0";
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN), mpfr_free_str);
  std::string mant(raw.get());
  bool negative = false;
  if (!mant.empty() && mant.front() == '-') {
    negative = true;
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  // value = 0.mant * 10^exp10
  std::string out;
  if (exp10 > 0 && exp10 <= 40) {
    const auto e = static_cast<std::size_t>(exp10);
    if (mant.size() <= e) {
      out = mant + std::string(e - mant.size(), '0') + ".0";
    } else {
      out = mant.substr(0, e) + "." + mant.substr(e);
    }
  } else if (exp10 <= 0 && exp10 > -10) {
    out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
  } else {
    out = mant.substr(0, 1) + "." + (mant.size() > 1 ? mant.substr(1) : "0") + "e" +
          std::to_string(static_cast<long>(exp10) - 1);
  }
  return negative ? "-" + out : out;
}

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

BigFloat evaluate(const TransScalar& a, mpfr_prec_t bits) {
  // Extra guard bits absorb cancellation between large rational coefficients.
  const mpfr_prec_t work = bits + 64;
  std::map<unsigned, BigFloat> zetas;
  const BigFloat gamma_value = BigFloat::euler_gamma(work);
  BigFloat sum(work);
  for (const auto& [m, c] : a.terms()) {
    BigFloat term(work, c);
    const auto& e = m.exponents();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (j == 0) {
        term *= gamma_value.pow(e[j]);
        continue;
      }
      const auto k = static_cast<unsigned>(j + 1);
      if (k > kMaxZetaEval)
        throw UnsupportedEvaluation("numeric evaluation of zeta" + std::to_string(k) +
                                    " is not supported (limit zeta" + std::to_string(kMaxZetaEval) + ")");
      auto it = zetas.find(k);
      if (it == zetas.end()) it = zetas.emplace(k, BigFloat::zeta(k, work)).first;
      term *= it->second.pow(e[j]);
    }
    sum += term;
  }
  BigFloat out(bits);
  mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
  return out;
}

std::string trans_eval(const TransScalar& a, int digits) {
  if (digits < 1 || digits > kMaxEvalDigits)
    throw PreconditionError("trans_eval: digits must be in [1, " + std::to_string(kMaxEvalDigits) + "]");
  return evaluate(a, bits_for_digits(digits)).to_string(digits);
}

}  // namespace mirrorgamma
