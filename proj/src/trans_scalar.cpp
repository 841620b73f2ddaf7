#include "mirrorgamma/trans_scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

TransMonomial::TransMonomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

void TransMonomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

TransMonomial TransMonomial::gamma(std::uint32_t power) { return TransMonomial({power}); }

TransMonomial TransMonomial::zeta(unsigned k, std::uint32_t power) {
  if (k < 2) throw PreconditionError("zeta(k) requires k >= 2");
  std::vector<std::uint32_t> e(k, 0);
  e[k - 1] = power;
  return TransMonomial(std::move(e));
}

std::uint32_t TransMonomial::zeta_power(unsigned k) const {
  if (k < 2 || k - 1 >= exps_.size()) return 0;
  return exps_[k - 1];
}

std::uint64_t TransMonomial::weight() const {
  std::uint64_t w = 0;
  for (std::size_t j = 0; j < exps_.size(); ++j) w += static_cast<std::uint64_t>(exps_[j]) * (j == 0 ? 1 : j + 1);
  return w;
}

unsigned TransMonomial::max_zeta() const {
  return exps_.size() >= 2 ? static_cast<unsigned>(exps_.size()) : 0;
}

TransMonomial TransMonomial::operator*(const TransMonomial& o) const {
  std::vector<std::uint32_t> e(std::max(exps_.size(), o.exps_.size()), 0);
  for (std::size_t j = 0; j < exps_.size(); ++j) e[j] += exps_[j];
  for (std::size_t j = 0; j < o.exps_.size(); ++j) e[j] += o.exps_[j];
  return TransMonomial(std::move(e));
}

bool TransMonomial::divisible_by(const TransMonomial& o, TransMonomial& quotient) const {
  if (o.exps_.size() > exps_.size()) return false;
  std::vector<std::uint32_t> e = exps_;
  for (std::size_t j = 0; j < o.exps_.size(); ++j) {
    if (e[j] < o.exps_[j]) return false;
    e[j] -= o.exps_[j];
  }
  quotient = TransMonomial(std::move(e));
  return true;
}

std::string TransMonomial::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (exps_[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += j == 0 ? std::string("gamma") : "zeta" + std::to_string(j + 1);
    if (exps_[j] > 1) out += '^' + std::to_string(exps_[j]);
  }
  return out.empty() ? "1" : out;
}

bool TransMonomialOrder::operator()(const TransMonomial& a, const TransMonomial& b) const {
  const auto wa = a.weight();
  const auto wb = b.weight();
  if (wa != wb) return wa < wb;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  const std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t j = 0; j < n; ++j) {
    const auto x = j < ea.size() ? ea[j] : 0u;
    const auto y = j < eb.size() ? eb[j] : 0u;
    if (x != y) return x < y;
  }
  return false;
}

TransScalar::TransScalar(const BigRat& c) {
  if (!c.is_zero()) terms_.emplace(TransMonomial(), c);
}

TransScalar::TransScalar(const TransMonomial& m, const BigRat& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

TransScalar TransScalar::zeta(unsigned k) { return {TransMonomial::zeta(k), BigRat(1)}; }

bool TransScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

BigRat TransScalar::constant_term() const { return coefficient(TransMonomial()); }

BigRat TransScalar::coefficient(const TransMonomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? BigRat(0) : it->second;
}

std::uint64_t TransScalar::max_weight() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.weight();
}

TransScalar TransScalar::weight_part(std::uint64_t w) const {
  TransScalar r;
  for (const auto& [m, c] : terms_)
    if (m.weight() == w) r.terms_.emplace(m, c);
  return r;
}

bool TransScalar::involves_gamma() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.gamma_power() > 0; });
}

void TransScalar::add_term(const TransMonomial& m, const BigRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TransScalar& TransScalar::operator+=(const TransScalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TransScalar& TransScalar::operator-=(const TransScalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

TransScalar operator*(const TransScalar& a, const TransScalar& b) {
  TransScalar r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

TransScalar& TransScalar::operator*=(const TransScalar& o) { return *this = *this * o; }

TransScalar& TransScalar::operator*=(const BigRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

TransScalar TransScalar::operator-() const {
  TransScalar r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

TransScalar TransScalar::pow(unsigned n) const {
  TransScalar result(1);
  TransScalar base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

std::string TransScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string term;
    if (m.is_one()) {
      term = c.to_string();
    } else if (c == BigRat(1)) {
      term = m.to_string();
    } else if (c == BigRat(-1)) {
      term = "-" + m.to_string();
    } else {
      term = c.to_string() + "*" + m.to_string();
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const TransScalar& t) { return os << t.to_string(); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  TransScalar parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    TransScalar result;
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      bool negative = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negative = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      TransScalar t = term();
      result += negative ? -t : t;
      first = false;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("", why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint32_t exponent() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return static_cast<std::uint32_t>(std::stoul(digits()));
    }
    return 1;
  }

  TransScalar factor() {
    skip_ws();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      BigInt num(digits(), 10);
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        BigInt den(digits(), 10);
        if (den == 0) fail("zero denominator");
        return TransScalar(BigRat(num, den));
      }
      return TransScalar(BigRat(num));
    }
    if (s_.substr(pos_, 5) == "gamma") {
      pos_ += 5;
      return TransScalar(TransMonomial::gamma(exponent()), BigRat(1));
    }
    if (s_.substr(pos_, 4) == "zeta") {
      pos_ += 4;
      const unsigned long k = std::stoul(digits());
      if (k < 2) fail("zeta index must be >= 2");
      return TransScalar(TransMonomial::zeta(static_cast<unsigned>(k), exponent()), BigRat(1));
    }
    fail("expected number, gamma or zetaK");
  }

  TransScalar term() {
    TransScalar t = factor();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        t *= factor();
      } else {
        return t;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TransScalar TransScalar::parse(std::string_view text) { return Parser(text).parse(); }

TransScalar exact_div(const TransScalar& a, const TransScalar& b) {
  if (b.is_zero()) throw PreconditionError("exact_div: division by zero");
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  TransScalar quotient;
  TransScalar rest = a;
  while (!rest.is_zero()) {
    const auto& [m, c] = *rest.terms().rbegin();
    TransMonomial q;
    if (!m.divisible_by(lead_m, q))
      throw PreconditionError("exact_div: " + b.to_string() + " does not divide " + a.to_string());
    const TransScalar step(q, c / lead_c);
    quotient += step;
    rest -= step * b;
  }
  return quotient;
}

}  // namespace mirrorgamma
