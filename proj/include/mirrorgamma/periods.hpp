#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mirrorgamma/bigfloat.hpp"
#include "mirrorgamma/cohomology.hpp"
#include "mirrorgamma/exactnum.hpp"
#include "mirrorgamma/series.hpp"
#include "mirrorgamma/toric.hpp"

namespace mirrorgamma {

/// a_0 times the holomorphic period at the maximal degeneracy point, in the
/// canonical coordinates x_1..x_r of the Mori basis.
struct PeriodSeries {
  TruncSeries<BigRat> series{1, 0};
  MoriBasis basis;
};

/// c(rho) = Gamma(1 - sum_k rho_k l_0^(k)) / prod_{i>=1} Gamma(1 + sum_k rho_k l_i^(k)),
/// expanded around rho = 0.
struct GammaCoeffSeries {
  TruncSeries<TransScalar> series{1, 0};
  MoriBasis basis;
};

/// Arguments A_0 = -sum m_k l_0^(k) and A_i = sum m_k l_i^(k) (i >= 1).
std::vector<BigInt> gamma_arguments(const MoriBasis& mb, const std::vector<long>& m);

/// A_0! / prod A_i!, and 0 as soon as some argument is negative.
BigInt period_coefficient(const MoriBasis& mb, const std::vector<long>& m);

PeriodSeries period_series(const MoriBasis& mb, int order);

GammaCoeffSeries gamma_coeff_series(const MoriBasis& mb, int order);

/// Closed Gamma-ratio at an integer point, Gamma(n+1) = n! and 1/Gamma at poles = 0.
BigRat gamma_ratio_at_integer(const MoriBasis& mb, const std::vector<long>& m);

/// Same ratio at a real point through the MPFR Gamma function.
BigFloat gamma_ratio_numeric(const MoriBasis& mb, const std::vector<BigFloat>& rho, mpfr_prec_t bits);

/// Mixed partial derivative of c at rho = 0 along 1-based variable indices.
TransScalar derivative_at_origin(const GammaCoeffSeries& g, const std::vector<std::size_t>& multi_index);

/// Normalized coupling: integral over V of J_{i_1} ... J_{i_{d-1}} (1-based indices).
TransScalar coupling_at_mdp(const std::vector<CohClass>& js, const std::vector<std::size_t>& indices);
BigRat coupling_at_mdp(const FanData& fan, const MoriBasis& mb, const std::vector<std::size_t>& indices);

/// All exponent vectors of length n with entries summing to at most `order`, graded-lex ascending.
std::vector<std::vector<long>> exponent_vectors(std::size_t n, int order);

struct BoxCheckReport {
  std::vector<long> relation;
  std::vector<long> mori_coordinates;
  int order = 0;
  /// order - sum |l_mu|; annihilation is only claimed up to this order.
  int certified_order = 0;
  std::size_t checked_terms = 0;
  bool annihilated = true;
  std::vector<std::string> failures;
};

/// Applies prod_{l_mu>0} d_mu^{l_mu} - prod_{l_mu<0} d_mu^{-l_mu} to the
/// a-variable series (1/a_0) sum_m c(m) x^m, x_k = (-1)^{l_0^(k)} a^{l^(k)}, and
/// checks that every coefficient whose two contributions both lie inside the
/// truncation vanishes. Throws InsufficientOrder when order < sum |l_mu|.
BoxCheckReport gkz_box_check(const PeriodSeries& p, const std::vector<long>& l, const FanData& fan);

/// The Euler (u-)operators: every monomial of the a-series has the right
/// weight under the torus action. Returns the failing descriptions.
std::vector<std::string> gkz_euler_check(const PeriodSeries& p, const FanData& fan);

}  // namespace mirrorgamma
