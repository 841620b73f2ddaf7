#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "mirrorgamma/series.hpp"
#include "mirrorgamma/trans_scalar.hpp"

namespace mirrorgamma {

using UniSeries = TruncSeries<TransScalar>;

/// log Gamma(1+z) = -gamma z + sum_{i>=2} (-1)^i zeta(i) z^i / i, truncated at `order`.
UniSeries log_gamma_series(int order);
/// 1/Gamma(1+z).
UniSeries inverse_gamma_series(int order);

/// s_0..s_n defined by 1 - z d/dz log Q(z) = sum_i (-1)^i s_i z^i.
std::vector<TransScalar> s_sequence(const UniSeries& q, int n);

/// Weighted-homogeneous polynomial Q_k(c_1, ..., c_k), deg c_i = i.
/// Exponent vectors have length k and index (c_1, ..., c_k).
struct MultSeqPolynomial {
  int degree = 0;
  std::map<Exponents, TransScalar, GradedLex> terms;

  TransScalar coefficient(const Exponents& e) const;
  /// Coefficient of the lone c_degree monomial.
  TransScalar top_coefficient() const;
  /// Drops every monomial containing c_1.
  MultSeqPolynomial without_c1() const;
  std::string to_string() const;
  friend bool operator==(const MultSeqPolynomial&, const MultSeqPolynomial&) = default;
};

nlohmann::json to_json(const MultSeqPolynomial& p);

/// Q_k of the multiplicative sequence of q (q(0) = 1), by expanding
/// prod_{i=1..k} q(x_i) in k formal Chern roots and rewriting the degree-k
/// symmetric part in elementary symmetric polynomials e_i = c_i.
MultSeqPolynomial mult_seq(const UniSeries& q, int k);

/// mult_seq(1/Gamma(1+z), k) with c_1 = 0. Requires k >= 2.
MultSeqPolynomial gamma_seq_calabi_yau(int k);

/// Closed forms of Q_1..Q_4 for 1/Gamma(1+z) in the commonly tabulated form.
/// The c_1^2 coefficient of Q_2 and the c_1^3 coefficient of Q_3 in that table
/// disagree with the Chern-root expansion.
MultSeqPolynomial tabulated_gamma_sequence(int k);

/// Monomials (as strings like "c1^2") whose coefficients differ between two polynomials.
std::vector<std::string> mismatched_monomials(const MultSeqPolynomial& a, const MultSeqPolynomial& b);

std::string c_monomial_to_string(const Exponents& e);

// --- Chern vectors over a graded algebra --------------------------------------
//
// V is any commutative algebra over Q[gamma, zeta...] supporting +, -, * and the
// free functions scale(v, t), one_like(v) and divide_exact(v, t).

template <class V>
struct ChernVector {
  std::vector<V> c;  // c[0] = c_1
  std::size_t dimension() const { return c.size(); }
};

template <class V>
V evaluate_c_monomials(const std::map<Exponents, TransScalar, GradedLex>& terms, const std::vector<V>& cs,
                       const V& one) {
  V acc = scale(one, TransScalar(0));
  for (const auto& [e, coeff] : terms) {
    V term = one;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (j >= cs.size())
        throw PreconditionError("apply_mult_seq: polynomial needs c_" + std::to_string(j + 1) +
                                " but only " + std::to_string(cs.size()) + " classes are given");
      for (int p = 0; p < e[j]; ++p) term = term * cs[j];
    }
    acc = acc + scale(term, coeff);
  }
  return acc;
}

/// Substitutes the classes of `c` into Q_k.
template <class V>
V apply_mult_seq(const MultSeqPolynomial& q, const ChernVector<V>& c) {
  if (c.c.empty()) throw PreconditionError("apply_mult_seq: empty Chern vector");
  if (static_cast<std::size_t>(q.degree) > c.dimension())
    throw PreconditionError("apply_mult_seq: degree " + std::to_string(q.degree) + " exceeds dimension " +
                            std::to_string(c.dimension()));
  return evaluate_c_monomials(q.terms, c.c, one_like(c.c.front()));
}

/// Recovers c_1..c_d from values[i] = Q_{i+1}(c_1, ..., c_{i+1}); polys[i] must be Q_{i+1}.
/// Throws NonInvertibleSequence when some s_i = 0.
template <class V>
ChernVector<V> chern_from_mult_seq(const std::vector<MultSeqPolynomial>& polys, const std::vector<V>& values) {
  if (polys.size() != values.size()) throw PreconditionError("chern_from_mult_seq: size mismatch");
  ChernVector<V> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& q = polys[i];
    if (q.degree != static_cast<int>(i + 1)) throw PreconditionError("chern_from_mult_seq: polys out of order");
    const TransScalar s = q.top_coefficient();
    if (s.is_zero())
      throw NonInvertibleSequence("multiplicative sequence has s_" + std::to_string(i + 1) + " = 0");
    auto lower = q.terms;
    Exponents top(i + 1, 0);
    top[i] = 1;
    lower.erase(top);
    const V rest = evaluate_c_monomials(lower, out.c, one_like(values[i]));
    out.c.push_back(divide_exact(values[i] - rest, s));
  }
  return out;
}

// Algebra hooks for formal polynomials in Chern symbols.
inline TruncSeries<TransScalar> scale(const TruncSeries<TransScalar>& v, const TransScalar& t) { return v.scaled(t); }
inline TruncSeries<TransScalar> one_like(const TruncSeries<TransScalar>& v) {
  return TruncSeries<TransScalar>::one(v.nvars(), v.order());
}
TruncSeries<TransScalar> divide_exact(const TruncSeries<TransScalar>& v, const TransScalar& t);

}  // namespace mirrorgamma
