#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mirrorgamma/gammaseq.hpp"
#include "mirrorgamma/series.hpp"
#include "mirrorgamma/toric.hpp"
#include "mirrorgamma/trans_scalar.hpp"

namespace mirrorgamma {

/// Polynomial in the divisor symbols D_1..D_p, truncated above degree d.
using DivisorPoly = TruncSeries<TransScalar>;

/// H^*(X) = Q[D_1..D_p] / (Stanley-Reisner ideal + linear relations) for a
/// complete regular fan.
///
/// Normal form: the d divisors of the lexicographically first maximal cone are
/// eliminated through the linear relations sum_i <u, mu_i> D_i = 0; in each
/// degree the image of the Stanley-Reisner ideal is kept as a reduced row
/// echelon basis whose pivots are the largest monomials, and polynomials are
/// reduced against it. The remainder is unique.
class CohomologyRing {
 public:
  static std::shared_ptr<const CohomologyRing> create(const FanData& fan);

  const FanData& fan() const { return fan_; }
  int dimension() const { return fan_.dimension; }
  std::size_t num_divisors() const { return fan_.num_rays(); }
  const std::vector<std::size_t>& eliminated() const { return eliminated_; }
  const std::vector<std::size_t>& remaining() const { return remaining_; }
  /// Minimal non-faces of size <= d, as sorted ray-index sets.
  const std::vector<std::vector<std::size_t>>& minimal_nonfaces() const { return nonfaces_; }
  /// Dimension of H^{2k}.
  std::size_t betti(int k) const;

  DivisorPoly zero_poly() const { return DivisorPoly(num_divisors(), dimension()); }
  DivisorPoly reduce(const DivisorPoly& poly) const;
  /// Integral over X of the degree-d part of a polynomial already in normal form.
  TransScalar integrate_normal_form(const DivisorPoly& normal) const;

 private:
  explicit CohomologyRing(FanData fan);
  void build();
  DivisorPoly substitute(const DivisorPoly& poly) const;

  struct DegreeData {
    std::vector<Exponents> monomials;  // degree-k monomials in the remaining variables, descending
    RatMatrix echelon;                 // reduced rows of the ideal in this degree
    std::vector<std::size_t> pivots;
  };

  FanData fan_;
  std::vector<std::size_t> eliminated_;
  std::vector<std::size_t> remaining_;
  std::vector<TruncSeries<BigRat>> images_;  // D_i expressed in remaining divisors
  std::vector<std::vector<std::size_t>> nonfaces_;
  std::vector<DegreeData> degrees_;
  Exponents top_monomial_;
  BigRat top_normalization_;
};

/// Element of H^*(X) with coefficients in Q[gamma, zeta...], kept in normal form.
class CohClass {
 public:
  using RingPtr = std::shared_ptr<const CohomologyRing>;

  CohClass(RingPtr ring, const DivisorPoly& poly);

  static CohClass zero(const RingPtr& ring);
  static CohClass one(const RingPtr& ring);
  /// D_{index+1}.
  static CohClass divisor(const RingPtr& ring, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  const DivisorPoly& normal_form() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  CohClass degree_part(int k) const;
  /// -1 for the zero class.
  int max_degree() const;
  bool is_homogeneous(int k) const;

  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator*(const CohClass& a, const CohClass& b);
  CohClass scaled(const TransScalar& t) const;
  CohClass pow(unsigned n) const;

  friend bool operator==(const CohClass& a, const CohClass& b);

  /// e.g. "10*D5^2"
  std::string to_string() const;

 private:
  void check_ring(const CohClass& o) const;
  RingPtr ring_;
  DivisorPoly poly_;
};

CohClass scale(const CohClass& v, const TransScalar& t);
CohClass one_like(const CohClass& v);
CohClass divide_exact(const CohClass& v, const TransScalar& t);

/// Integral over X of a class of pure degree d; D_{i_1}...D_{i_d} = 1 for a maximal cone.
TransScalar intersection_number(const CohClass& top);

/// D_1 + ... + D_p, the class of the anticanonical hypersurface V.
CohClass anticanonical_class(const CohClass::RingPtr& ring);

/// Integral over V of a class of pure degree d - 1: intersection_number(alpha * (D_1 + ... + D_p)).
TransScalar integrate_over_V(const CohClass& alpha);

/// c_1..c_d of V as ambient classes: the degree <= d part of
/// prod_i (1 + D_i) / (1 + D_1 + ... + D_p). Throws ConsistencyError unless c_1 = 0.
ChernVector<CohClass> chern_class_hypersurface(const CohClass::RingPtr& ring);

/// The classes J_1..J_r dual to the Mori basis, determined by D_i = sum_k l_i^(k) J_k;
/// the relation is re-checked for every divisor.
std::vector<CohClass> j_classes(const CohClass::RingPtr& ring, const MoriBasis& mb);

/// Evaluates a univariate series on a class of positive degree: sum_n f_n alpha^n.
CohClass apply_series(const TruncSeries<TransScalar>& f, const CohClass& alpha);

}  // namespace mirrorgamma
