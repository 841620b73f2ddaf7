#include "mirrorgamma/periods.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/gammaseq.hpp"

namespace mirrorgamma {

namespace {

void check_basis(const MoriBasis& mb) {
  if (mb.vectors.empty()) throw PreconditionError("Mori basis is empty");
  for (const auto& v : mb.vectors)
    if (v.size() != mb.vectors[0].size() || v.size() < 2)
      throw PreconditionError("Mori basis vectors have inconsistent lengths");
}

std::string vec_str(const std::vector<long>& v) { return point_to_string(v); }

Exponents to_exponents(const std::vector<long>& m) { return Exponents(m.begin(), m.end()); }

}  // namespace

std::vector<std::vector<long>> exponent_vectors(std::size_t n, int order) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rest) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= rest; ++x) {
      cur[pos] = x;
      rec(pos + 1, rest - x);
    }
    cur[pos] = 0;
  };
  rec(0, order);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return GradedLex{}(to_exponents(a), to_exponents(b));
  });
  return out;
}

std::vector<BigInt> gamma_arguments(const MoriBasis& mb, const std::vector<long>& m) {
  check_basis(mb);
  if (m.size() != mb.rank()) throw PreconditionError("gamma_arguments: exponent vector has wrong length");
  const std::size_t len = mb.vectors[0].size();
  std::vector<BigInt> a(len, 0);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t i = 0; i < len; ++i) a[i] += BigInt(m[k]) * mb.vectors[k][i];
  a[0] = -a[0];
  return a;
}

BigInt period_coefficient(const MoriBasis& mb, const std::vector<long>& m) {
  const auto a = gamma_arguments(mb, m);
  for (const auto& x : a)
    if (sgn(x) < 0) return 0;
  BigInt den = 1;
  for (std::size_t i = 1; i < a.size(); ++i) den *= factorial(a[i].get_ui());
  return factorial(a[0].get_ui()) / den;
}

PeriodSeries period_series(const MoriBasis& mb, int order) {
  check_basis(mb);
  if (order < 0) throw PreconditionError("period_series: negative order");
  PeriodSeries p{TruncSeries<BigRat>(mb.rank(), order), mb};
  for (const auto& m : exponent_vectors(mb.rank(), order)) p.series.add_term(to_exponents(m), BigRat(period_coefficient(mb, m)));
  return p;
}

GammaCoeffSeries gamma_coeff_series(const MoriBasis& mb, int order) {
  check_basis(mb);
  if (order < 0) throw PreconditionError("gamma_coeff_series: negative order");
  const std::size_t r = mb.rank();
  const std::size_t len = mb.vectors[0].size();
  const auto lg = log_gamma_series(order);
  TruncSeries<TransScalar> log_c(r, order);
  for (std::size_t i = 0; i < len; ++i) {
    LinForm f;
    for (std::size_t k = 0; k < r; ++k) f.coeffs.push_back(i == 0 ? -mb.vectors[k][0] : mb.vectors[k][i]);
    if (std::all_of(f.coeffs.begin(), f.coeffs.end(), [](long c) { return c == 0; })) continue;
    const auto term = ts_compose_linform(lg, f, r);
    if (i == 0)
      log_c += term;
    else
      log_c -= term;
  }
  return {ts_exp(log_c), mb};
}

BigRat gamma_ratio_at_integer(const MoriBasis& mb, const std::vector<long>& m) {
  const auto a = gamma_arguments(mb, m);
  // numerator Gamma(1 + A_0) has a pole for A_0 < 0; the ratio is only defined there
  // when a denominator pole cancels it, which never happens inside the cone
  if (sgn(a[0]) < 0) throw PreconditionError("gamma_ratio_at_integer: point outside the summation cone");
  for (std::size_t i = 1; i < a.size(); ++i)
    if (sgn(a[i]) < 0) return BigRat(0);
  BigRat r(factorial(a[0].get_ui()));
  for (std::size_t i = 1; i < a.size(); ++i) r /= BigRat(factorial(a[i].get_ui()));
  return r;
}

BigFloat gamma_ratio_numeric(const MoriBasis& mb, const std::vector<BigFloat>& rho, mpfr_prec_t bits) {
  check_basis(mb);
  if (rho.size() != mb.rank()) throw PreconditionError("gamma_ratio_numeric: point has wrong length");
  const std::size_t len = mb.vectors[0].size();
  BigFloat result(bits, 1.0);
  for (std::size_t i = 0; i < len; ++i) {
    BigFloat arg(bits, 1.0);
    for (std::size_t k = 0; k < rho.size(); ++k) {
      const long c = i == 0 ? -mb.vectors[k][0] : mb.vectors[k][i];
      arg += BigFloat(bits, BigRat(c)) * rho[k];
    }
    if (mpfr_integer_p(arg.raw()) && arg.sign() <= 0) {
      if (i == 0) throw PreconditionError("gamma_ratio_numeric: pole of the numerator");
      return BigFloat(bits, 0.0);
    }
    const BigFloat g = BigFloat::gamma_fn(arg);
    if (i == 0)
      result *= g;
    else
      result /= g;
  }
  return result;
}

TransScalar derivative_at_origin(const GammaCoeffSeries& g, const std::vector<std::size_t>& multi_index) {
  const std::size_t r = g.series.nvars();
  if (static_cast<int>(multi_index.size()) > g.series.order())
    throw PreconditionError("derivative_at_origin: derivative order exceeds the series order");
  Exponents alpha(r, 0);
  for (std::size_t j : multi_index) {
    if (j < 1 || j > r)
      throw PreconditionError("derivative_at_origin: index " + std::to_string(j) + " out of range 1.." +
                              std::to_string(r));
    ++alpha[j - 1];
  }
  BigInt mult = 1;
  for (int a : alpha) mult *= factorial(static_cast<unsigned long>(a));
  return g.series.coefficient(alpha) * BigRat(mult);
}

TransScalar coupling_at_mdp(const std::vector<CohClass>& js, const std::vector<std::size_t>& indices) {
  if (js.empty()) throw PreconditionError("coupling_at_mdp: no J classes");
  CohClass prod = CohClass::one(js.front().ring());
  for (std::size_t i : indices) {
    if (i < 1 || i > js.size()) throw PreconditionError("coupling_at_mdp: index " + std::to_string(i) + " out of range");
    prod = prod * js[i - 1];
  }
  return integrate_over_V(prod);
}

BigRat coupling_at_mdp(const FanData& fan, const MoriBasis& mb, const std::vector<std::size_t>& indices) {
  const auto ring = CohomologyRing::create(fan);
  const TransScalar v = coupling_at_mdp(j_classes(ring, mb), indices);
  if (!v.is_rational()) throw ConsistencyError("coupling_at_mdp: non-rational intersection number");
  return v.constant_term();
}

BoxCheckReport gkz_box_check(const PeriodSeries& p, const std::vector<long>& l, const FanData& fan) {
  const MoriBasis& mb = p.basis;
  check_basis(mb);
  const std::size_t len = fan.num_rays() + 1;
  if (l.size() != len || mb.vectors[0].size() != len)
    throw PreconditionError("gkz_box_check: relation vector has wrong length");
  long sum = 0;
  for (std::size_t i = 1; i < len; ++i) sum += l[i];
  for (std::size_t c = 0; c < static_cast<std::size_t>(fan.dimension); ++c) {
    long s = 0;
    for (std::size_t i = 1; i < len; ++i) s += l[i] * fan.rays[i - 1][c];
    if (s != 0) throw PreconditionError("gkz_box_check: " + vec_str(l) + " is not in the relation lattice");
  }
  if (sum + l[0] != 0) throw PreconditionError("gkz_box_check: " + vec_str(l) + " is not in the relation lattice");
  const auto n = mori_coordinates(mb, l);
  if (!n) throw PreconditionError("gkz_box_check: " + vec_str(l) + " is not an integral combination of the Mori basis");

  BoxCheckReport rep;
  rep.relation = l;
  rep.mori_coordinates = *n;
  rep.order = p.series.order();
  long weight = 0;
  for (long x : l) weight += std::labs(x);
  if (rep.order < weight)
    throw InsufficientOrder("insufficient order: box operator of order " + std::to_string(weight) +
                            " needs truncation order >= " + std::to_string(weight) + ", got " +
                            std::to_string(rep.order));
  rep.certified_order = rep.order - static_cast<int>(weight);

  const std::size_t r = mb.rank();
  // exponent of a in the term x^m / a_0
  auto a_exponent = [&](const std::vector<long>& m) {
    std::vector<BigInt> v(len, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < len; ++i) v[i] += BigInt(m[k]) * mb.vectors[k][i];
    v[0] -= 1;
    return v;
  };
  auto a_coefficient = [&](const std::vector<long>& m) {
    long s0 = 0;
    for (std::size_t k = 0; k < r; ++k) s0 += m[k] * mb.vectors[k][0];
    BigRat c = p.series.coefficient(to_exponents(m));
    return (s0 % 2 == 0) ? c : -c;
  };
  auto falling = [&](const std::vector<BigInt>& v, int sgn_sel) {
    BigInt f = 1;
    for (std::size_t i = 0; i < len; ++i) {
      const long e = sgn_sel > 0 ? l[i] : -l[i];
      if (e > 0) f *= falling_factorial(v[i], static_cast<unsigned long>(e));
    }
    return f;
  };
  auto total = [](const std::vector<long>& m) {
    long t = 0;
    for (long x : m) t += x;
    return t;
  };
  auto in_cone = [](const std::vector<long>& m) { return std::all_of(m.begin(), m.end(), [](long x) { return x >= 0; }); };

  // Every output monomial arises from a source m in the positive part and m - n in
  // the negative part; collect each pair once keyed by the positive-part source.
  std::set<std::vector<long>> pairs;
  for (const auto& m : exponent_vectors(r, rep.order)) {
    std::vector<long> plus = m;
    for (std::size_t k = 0; k < r; ++k) plus[k] = m[k] + (*n)[k];
    pairs.insert(m);
    pairs.insert(plus);
  }
  for (const auto& m : pairs) {
    std::vector<long> partner = m;
    for (std::size_t k = 0; k < r; ++k) partner[k] = m[k] - (*n)[k];
    const bool m_inside = in_cone(m);
    const bool partner_inside = in_cone(partner);
    if ((m_inside && total(m) > rep.order) || (partner_inside && total(partner) > rep.order)) continue;
    BigRat value;
    if (m_inside) value += a_coefficient(m) * BigRat(falling(a_exponent(m), +1));
    if (partner_inside) value -= a_coefficient(partner) * BigRat(falling(a_exponent(partner), -1));
    ++rep.checked_terms;
    if (!value.is_zero()) {
      rep.annihilated = false;
      rep.failures.push_back("residual " + value.to_string() + " at x-exponent " + vec_str(m));
    }
  }
  return rep;
}

std::vector<std::string> gkz_euler_check(const PeriodSeries& p, const FanData& fan) {
  const MoriBasis& mb = p.basis;
  check_basis(mb);
  const std::size_t len = fan.num_rays() + 1;
  const auto d = static_cast<std::size_t>(fan.dimension);
  std::vector<std::string> failures;
  for (const auto& [e, c] : p.series.terms()) {
    std::vector<BigInt> v(len, 0);
    for (std::size_t k = 0; k < mb.rank(); ++k)
      for (std::size_t i = 0; i < len; ++i) v[i] += BigInt(e[k]) * mb.vectors[k][i];
    v[0] -= 1;
    // u = (1, 0...0): total degree -1; u = e_j: weighted degree 0
    BigInt deg = 0;
    for (const auto& x : v) deg += x;
    if (deg != -1) failures.push_back("homogeneity weight " + deg.get_str() + " != -1");
    for (std::size_t j = 0; j < d; ++j) {
      BigInt w = 0;
      for (std::size_t i = 1; i < len; ++i) w += v[i] * fan.rays[i - 1][j];
      if (w != 0) failures.push_back("torus weight " + w.get_str() + " != 0 in direction " + std::to_string(j + 1));
    }
  }
  return failures;
}

}  // namespace mirrorgamma
