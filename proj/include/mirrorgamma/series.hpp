#pragma once

#include <concepts>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/exactnum.hpp"
#include "mirrorgamma/trans_scalar.hpp"

namespace mirrorgamma {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class C>
concept CoefficientRing = requires(C a, C b, BigRat q) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { a * q } -> std::convertible_to<C>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  C(q);
};

/// Integer linear form sum_k a_k * rho_k (no constant term).
struct LinForm {
  std::vector<long> coeffs;
};

/// Multivariate power series truncated at total degree `order`. Only nonzero
/// coefficients with total degree <= order are stored.
template <CoefficientRing C>
class TruncSeries {
 public:
  using TermMap = std::map<Exponents, C, GradedLex>;

  TruncSeries(std::size_t nvars, int order) : nvars_(nvars), order_(order) {
    if (order < 0) throw PreconditionError("TruncSeries: negative truncation order");
  }

  static TruncSeries constant(std::size_t nvars, int order, const C& c) {
    TruncSeries s(nvars, order);
    s.add_term(Exponents(nvars, 0), c);
    return s;
  }
  static TruncSeries one(std::size_t nvars, int order) { return constant(nvars, order, C(BigRat(1))); }
  static TruncSeries variable(std::size_t nvars, int order, std::size_t var) {
    if (var >= nvars) throw PreconditionError("TruncSeries::variable: index out of range");
    TruncSeries s(nvars, order);
    Exponents e(nvars, 0);
    e[var] = 1;
    s.add_term(e, C(BigRat(1)));
    return s;
  }

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Exponents& e) const {
    check_exponents(e);
    const auto it = terms_.find(e);
    return it == terms_.end() ? C(BigRat(0)) : it->second;
  }
  C constant_term() const { return coefficient(Exponents(nvars_, 0)); }

  /// Adds c * x^e; terms beyond the truncation order are dropped.
  void add_term(const Exponents& e, const C& c) {
    check_exponents(e);
    if (c.is_zero() || total_degree(e) > order_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TruncSeries homogeneous_part(int degree) const {
    TruncSeries r(nvars_, order_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == degree) r.terms_.emplace(e, c);
    return r;
  }

  /// Drops terms of total degree > new_order and lowers the carried order.
  TruncSeries truncated(int new_order) const {
    if (new_order > order_) throw PreconditionError("TruncSeries::truncated: cannot raise the order");
    TruncSeries r(nvars_, new_order);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= new_order) r.terms_.emplace(e, c);
    return r;
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    check_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_shape(b);
    TruncSeries r(a.nvars_, a.order_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      const int da = total_degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        // terms are sorted by total degree, so the rest of b is out of range too
        if (da + total_degree(eb) > a.order_) break;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  TruncSeries scaled(const C& c) const {
    TruncSeries r(nvars_, order_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
  }
  TruncSeries scaled(const BigRat& q) const requires(!std::same_as<C, BigRat>) {
    TruncSeries r(nvars_, order_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * q);
    return r;
  }
  TruncSeries operator-() const {
    TruncSeries r(nvars_, order_);
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, -v);
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  /// Applies `f` to every coefficient, e.g. to lift a BigRat series to TransScalar.
  template <CoefficientRing D, class F>
  TruncSeries<D> map_coefficients(F&& f) const {
    TruncSeries<D> r(nvars_, order_);
    for (const auto& [e, v] : terms_) r.add_term(e, f(v));
    return r;
  }

 private:
  void check_exponents(const Exponents& e) const {
    if (e.size() != nvars_) throw PreconditionError("TruncSeries: exponent vector has wrong length");
    for (int x : e)
      if (x < 0) throw PreconditionError("TruncSeries: negative exponent");
  }
  void check_shape(const TruncSeries& o) const {
    if (nvars_ != o.nvars_ || order_ != o.order_)
      throw PreconditionError("TruncSeries: mismatched shapes (" + std::to_string(nvars_) + " vars, order " +
                              std::to_string(order_) + ") vs (" + std::to_string(o.nvars_) + " vars, order " +
                              std::to_string(o.order_) + ")");
  }

  std::size_t nvars_;
  int order_;
  TermMap terms_;
};

namespace detail {

template <CoefficientRing C>
std::vector<TruncSeries<C>> homogeneous_parts(const TruncSeries<C>& a) {
  std::vector<TruncSeries<C>> parts(static_cast<std::size_t>(a.order()) + 1,
                                    TruncSeries<C>(a.nvars(), a.order()));
  for (const auto& [e, c] : a.terms()) parts[static_cast<std::size_t>(total_degree(e))].add_term(e, c);
  return parts;
}

}  // namespace detail

/// exp(a) for a with zero constant term, via n g_n = sum_k k f_k g_{n-k} on
/// homogeneous components.
template <CoefficientRing C>
TruncSeries<C> ts_exp(const TruncSeries<C>& a) {
  if (!a.constant_term().is_zero()) throw PreconditionError("ts_exp: constant term must be zero");
  const int n_max = a.order();
  const auto f = detail::homogeneous_parts(a);
  std::vector<TruncSeries<C>> g(f.size(), TruncSeries<C>(a.nvars(), n_max));
  g[0] = TruncSeries<C>::one(a.nvars(), n_max);
  for (int n = 1; n <= n_max; ++n) {
    TruncSeries<C> acc(a.nvars(), n_max);
    for (int k = 1; k <= n; ++k) {
      if (f[k].is_zero() || g[n - k].is_zero()) continue;
      acc += (f[k] * g[n - k]).scaled(C(BigRat(k)));
    }
    g[n] = acc.scaled(C(BigRat(BigInt(1), BigInt(n))));
  }
  TruncSeries<C> r(a.nvars(), n_max);
  for (const auto& part : g) r += part;
  return r;
}

/// log(a) for a with constant term 1.
template <CoefficientRing C>
TruncSeries<C> ts_log(const TruncSeries<C>& a) {
  if (!(a.constant_term() == C(BigRat(1)))) throw PreconditionError("ts_log: constant term must be one");
  const int n_max = a.order();
  const auto h = detail::homogeneous_parts(a);
  std::vector<TruncSeries<C>> g(h.size(), TruncSeries<C>(a.nvars(), n_max));
  for (int n = 1; n <= n_max; ++n) {
    TruncSeries<C> acc(a.nvars(), n_max);
    for (int k = 1; k < n; ++k) {
      if (g[k].is_zero() || h[n - k].is_zero()) continue;
      acc += (g[k] * h[n - k]).scaled(C(BigRat(k)));
    }
    g[n] = h[n] - acc.scaled(C(BigRat(BigInt(1), BigInt(n))));
  }
  TruncSeries<C> r(a.nvars(), n_max);
  for (int n = 1; n <= n_max; ++n) r += g[n];
  return r;
}

/// Formal partial derivative; the result carries order N - 1.
template <CoefficientRing C>
TruncSeries<C> ts_derive(const TruncSeries<C>& a, std::size_t var) {
  if (var >= a.nvars()) throw PreconditionError("ts_derive: variable index out of range");
  if (a.order() == 0) throw PreconditionError("ts_derive: series of order 0 has no known derivative");
  TruncSeries<C> r(a.nvars(), a.order() - 1);
  for (const auto& [e, c] : a.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * BigRat(e[var]));
  }
  return r;
}

/// The linear form as a series in `nvars` variables truncated at `order`.
template <CoefficientRing C>
TruncSeries<C> linform_series(const LinForm& f, std::size_t nvars, int order) {
  if (f.coeffs.size() > nvars) throw PreconditionError("linform_series: form has more variables than the series");
  TruncSeries<C> s(nvars, order);
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] == 0) continue;
    Exponents e(nvars, 0);
    e[k] = 1;
    s.add_term(e, C(BigRat(f.coeffs[k])));
  }
  return s;
}

/// Substitutes z -> f(rho) into a univariate series and re-expands at the same order.
template <CoefficientRing C>
TruncSeries<C> ts_compose_linform(const TruncSeries<C>& univariate, const LinForm& f, std::size_t nvars) {
  if (univariate.nvars() != 1) throw PreconditionError("ts_compose_linform: input must be univariate");
  const int order = univariate.order();
  const auto lin = linform_series<C>(f, nvars, order);
  TruncSeries<C> r(nvars, order);
  for (int n = order; n >= 0; --n) {
    r = r * lin;
    r += TruncSeries<C>::constant(nvars, order, univariate.coefficient({n}));
  }
  return r;
}

/// Evaluates the polynomial underlying `s` at algebra elements values[i]
/// substituted for variable i. `scale(v, c)` must return v * c.
template <CoefficientRing C, class V, class Scale>
V evaluate_polynomial(const TruncSeries<C>& s, const std::vector<V>& values, const V& one, Scale&& scale) {
  if (values.size() != s.nvars()) throw PreconditionError("evaluate_polynomial: wrong number of values");
  std::vector<std::vector<V>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) powers[i].push_back(one);
  auto power = [&](std::size_t i, int k) -> const V& {
    while (static_cast<int>(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * values[i]);
    return powers[i][static_cast<std::size_t>(k)];
  };
  V acc = scale(one, C(BigRat(0)));
  for (const auto& [e, c] : s.terms()) {
    V term = one;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    acc = acc + scale(term, c);
  }
  return acc;
}

}  // namespace mirrorgamma
