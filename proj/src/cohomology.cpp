#include "mirrorgamma/cohomology.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/linalg.hpp"

namespace mirrorgamma {

namespace {

// Monomials of degree k in the given variables (exponent vectors of length n), descending.
std::vector<Exponents> monomials_of_degree(std::size_t n, const std::vector<std::size_t>& vars, int k) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rest) {
    if (pos + 1 == vars.size()) {
      e[vars[pos]] = rest;
      out.push_back(e);
      e[vars[pos]] = 0;
      return;
    }
    for (int x = rest; x >= 0; --x) {
      e[vars[pos]] = x;
      rec(pos + 1, rest - x);
    }
    e[vars[pos]] = 0;
  };
  if (vars.empty()) {
    if (k == 0) out.push_back(e);
    return out;
  }
  rec(0, k);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) { return GradedLex{}(b, a); });
  return out;
}

}  // namespace

CohomologyRing::CohomologyRing(FanData fan) : fan_(std::move(fan)) {}

std::shared_ptr<const CohomologyRing> CohomologyRing::create(const FanData& fan) {
  if (fan.cones.empty()) throw PreconditionError("CohomologyRing: fan has no maximal cones");
  if (fan.num_rays() > 62) throw PreconditionError("CohomologyRing: too many rays");
  std::shared_ptr<CohomologyRing> ring(new CohomologyRing(fan));
  ring->build();
  return ring;
}

void CohomologyRing::build() {
  const auto d = static_cast<std::size_t>(fan_.dimension);
  const std::size_t p = fan_.num_rays();
  eliminated_ = fan_.cones.front();
  for (std::size_t i = 0; i < p; ++i)
    if (!std::binary_search(eliminated_.begin(), eliminated_.end(), i)) remaining_.push_back(i);

  // Dual basis u_j of the first cone's rays: rows of B^{-1}, B having the rays as columns.
  RatMatrix b(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b[i][j] = BigRat(fan_.rays[eliminated_[j]][i]);
  const auto binv = inverse(b);
  if (!binv) throw ConsistencyError("CohomologyRing: first maximal cone is degenerate");

  images_.assign(p, TruncSeries<BigRat>(p, fan_.dimension));
  for (std::size_t i : remaining_) images_[i] = TruncSeries<BigRat>::variable(p, fan_.dimension, i);
  for (std::size_t j = 0; j < d; ++j) {
    TruncSeries<BigRat> img(p, fan_.dimension);
    for (std::size_t i : remaining_) {
      BigRat pairing;
      for (std::size_t c = 0; c < d; ++c) pairing += (*binv)[j][c] * BigRat(fan_.rays[i][c]);
      Exponents e(p, 0);
      e[i] = 1;
      img.add_term(e, -pairing);
    }
    images_[eliminated_[j]] = img;
  }

  // Minimal non-faces of size 2..d.
  std::set<std::uint64_t> faces;
  for (const auto& cone : fan_.cones) {
    const std::size_t n = cone.size();
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sub >> j & 1u) mask |= std::uint64_t{1} << cone[j];
      faces.insert(mask);
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    const int bits = __builtin_popcountll(mask);
    if (bits < 2 || bits > fan_.dimension || faces.count(mask)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < p && minimal; ++i)
      if (mask >> i & 1u) minimal = faces.count(mask & ~(std::uint64_t{1} << i)) > 0;
    if (!minimal) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < p; ++i)
      if (mask >> i & 1u) s.push_back(i);
    nonfaces_.push_back(std::move(s));
  }
  std::sort(nonfaces_.begin(), nonfaces_.end());

  std::vector<TruncSeries<BigRat>> generators;
  for (const auto& s : nonfaces_) {
    TruncSeries<BigRat> g = TruncSeries<BigRat>::one(p, fan_.dimension);
    for (std::size_t i : s) g *= images_[i];
    generators.push_back(std::move(g));
  }

  for (int k = 0; k <= fan_.dimension; ++k) {
    DegreeData data;
    data.monomials = monomials_of_degree(p, remaining_, k);
    std::map<Exponents, std::size_t> column;
    for (std::size_t c = 0; c < data.monomials.size(); ++c) column.emplace(data.monomials[c], c);
    RatMatrix rows;
    for (std::size_t gi = 0; gi < nonfaces_.size(); ++gi) {
      const int deg = static_cast<int>(nonfaces_[gi].size());
      if (deg > k) continue;
      for (const auto& m : monomials_of_degree(p, remaining_, k - deg)) {
        RatVec row(data.monomials.size());
        for (const auto& [e, c] : generators[gi].terms()) {
          Exponents prod = e;
          for (std::size_t i = 0; i < p; ++i) prod[i] += m[i];
          row[column.at(prod)] += c;
        }
        rows.push_back(std::move(row));
      }
    }
    data.pivots = rref(rows);
    rows.resize(data.pivots.size());
    data.echelon = std::move(rows);
    degrees_.push_back(std::move(data));
  }

  const auto& top = degrees_.back();
  std::vector<Exponents> standard;
  for (std::size_t c = 0; c < top.monomials.size(); ++c)
    if (!std::binary_search(top.pivots.begin(), top.pivots.end(), c)) standard.push_back(top.monomials[c]);
  if (standard.size() != 1)
    throw ConsistencyError("CohomologyRing: top-degree cohomology has dimension " + std::to_string(standard.size()));
  top_monomial_ = standard.front();

  DivisorPoly cone_monomial = zero_poly();
  Exponents e(p, 0);
  for (std::size_t i : eliminated_) e[i] = 1;
  cone_monomial.add_term(e, TransScalar(1));
  const TransScalar lambda = reduce(cone_monomial).coefficient(top_monomial_);
  if (!lambda.is_rational() || lambda.is_zero())
    throw ConsistencyError("CohomologyRing: maximal cone monomial vanishes in top degree");
  top_normalization_ = lambda.constant_term();
}

std::size_t CohomologyRing::betti(int k) const {
  if (k < 0 || k > dimension()) return 0;
  const auto& data = degrees_[static_cast<std::size_t>(k)];
  return data.monomials.size() - data.pivots.size();
}

DivisorPoly CohomologyRing::substitute(const DivisorPoly& poly) const {
  bool needs = false;
  for (const auto& [e, c] : poly.terms())
    for (std::size_t i : eliminated_)
      if (e[i] > 0) needs = true;
  if (!needs) return poly;
  std::vector<DivisorPoly> values;
  for (const auto& img : images_) values.push_back(img.map_coefficients<TransScalar>([](const BigRat& q) { return TransScalar(q); }));
  return evaluate_polynomial(poly, values, DivisorPoly::one(num_divisors(), dimension()),
                             [](const DivisorPoly& v, const TransScalar& c) { return v.scaled(c); });
}

DivisorPoly CohomologyRing::reduce(const DivisorPoly& poly) const {
  if (poly.nvars() != num_divisors() || poly.order() != dimension())
    throw PreconditionError("CohomologyRing::reduce: polynomial has the wrong shape");
  const DivisorPoly s = substitute(poly);
  DivisorPoly out = zero_poly();
  for (int k = 0; k <= dimension(); ++k) {
    const auto& data = degrees_[static_cast<std::size_t>(k)];
    std::map<Exponents, std::size_t> column;
    for (std::size_t c = 0; c < data.monomials.size(); ++c) column.emplace(data.monomials[c], c);
    std::vector<TransScalar> v(data.monomials.size());
    bool any = false;
    for (const auto& [e, c] : s.terms()) {
      if (total_degree(e) != k) continue;
      v[column.at(e)] += c;
      any = true;
    }
    if (!any) continue;
    for (std::size_t r = 0; r < data.echelon.size(); ++r) {
      const std::size_t pc = data.pivots[r];
      if (v[pc].is_zero()) continue;
      const TransScalar f = v[pc];
      for (std::size_t c = pc; c < v.size(); ++c)
        if (!data.echelon[r][c].is_zero()) v[c] -= f * data.echelon[r][c];
    }
    for (std::size_t c = 0; c < v.size(); ++c) out.add_term(data.monomials[c], v[c]);
  }
  return out;
}

TransScalar CohomologyRing::integrate_normal_form(const DivisorPoly& normal) const {
  return normal.coefficient(top_monomial_) * (BigRat(1) / top_normalization_);
}

CohClass::CohClass(RingPtr ring, const DivisorPoly& poly) : ring_(std::move(ring)), poly_(ring_->reduce(poly)) {}

CohClass CohClass::zero(const RingPtr& ring) { return CohClass(ring, ring->zero_poly()); }

CohClass CohClass::one(const RingPtr& ring) {
  return CohClass(ring, DivisorPoly::one(ring->num_divisors(), ring->dimension()));
}

CohClass CohClass::divisor(const RingPtr& ring, std::size_t index) {
  if (index >= ring->num_divisors()) throw PreconditionError("CohClass::divisor: index out of range");
  return CohClass(ring, DivisorPoly::variable(ring->num_divisors(), ring->dimension(), index));
}

CohClass CohClass::degree_part(int k) const {
  CohClass r = *this;
  r.poly_ = poly_.homogeneous_part(k);
  return r;
}

int CohClass::max_degree() const {
  int m = -1;
  for (const auto& [e, c] : poly_.terms()) m = std::max(m, total_degree(e));
  return m;
}

bool CohClass::is_homogeneous(int k) const {
  return std::all_of(poly_.terms().begin(), poly_.terms().end(),
                     [k](const auto& t) { return total_degree(t.first) == k; });
}

void CohClass::check_ring(const CohClass& o) const {
  if (ring_ != o.ring_) throw PreconditionError("CohClass: classes belong to different rings");
}

CohClass& CohClass::operator+=(const CohClass& o) {
  check_ring(o);
  poly_ += o.poly_;
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  check_ring(o);
  poly_ -= o.poly_;
  return *this;
}

CohClass operator*(const CohClass& a, const CohClass& b) {
  a.check_ring(b);
  return CohClass(a.ring_, a.poly_ * b.poly_);
}

CohClass CohClass::scaled(const TransScalar& t) const {
  CohClass r = *this;
  r.poly_ = poly_.scaled(t);
  return r;
}

CohClass CohClass::pow(unsigned n) const {
  CohClass r = one(ring_);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool operator==(const CohClass& a, const CohClass& b) { return a.ring_ == b.ring_ && a.poly_ == b.poly_; }

std::string CohClass::to_string() const {
  if (poly_.is_zero()) return "0";
  std::string out;
  for (auto it = poly_.terms().rbegin(); it != poly_.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "D" + std::to_string(i + 1);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    const std::string coeff = c.to_string();
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else if (coeff == "-1") {
      term = "-" + mono;
    } else {
      term = (c.terms().size() > 1 ? "(" + coeff + ")" : coeff) + "*" + mono;
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

CohClass scale(const CohClass& v, const TransScalar& t) { return v.scaled(t); }
CohClass one_like(const CohClass& v) { return CohClass::one(v.ring()); }

CohClass divide_exact(const CohClass& v, const TransScalar& t) {
  DivisorPoly q = v.ring()->zero_poly();
  for (const auto& [e, c] : v.normal_form().terms()) q.add_term(e, exact_div(c, t));
  return CohClass(v.ring(), q);
}

TransScalar intersection_number(const CohClass& top) {
  const int d = top.ring()->dimension();
  if (!top.is_homogeneous(d))
    throw PreconditionError("intersection_number: class must have pure degree " + std::to_string(d));
  return top.ring()->integrate_normal_form(top.normal_form());
}

CohClass anticanonical_class(const CohClass::RingPtr& ring) {
  CohClass h = CohClass::zero(ring);
  for (std::size_t i = 0; i < ring->num_divisors(); ++i) h += CohClass::divisor(ring, i);
  return h;
}

TransScalar integrate_over_V(const CohClass& alpha) {
  const int d = alpha.ring()->dimension();
  if (!alpha.is_homogeneous(d - 1))
    throw PreconditionError("integrate_over_V: class must have pure degree " + std::to_string(d - 1));
  return intersection_number(alpha * anticanonical_class(alpha.ring()));
}

ChernVector<CohClass> chern_class_hypersurface(const CohClass::RingPtr& ring) {
  const int d = ring->dimension();
  const CohClass one = CohClass::one(ring);
  CohClass total = one;
  for (std::size_t i = 0; i < ring->num_divisors(); ++i) total = total * (one + CohClass::divisor(ring, i));
  const CohClass h = anticanonical_class(ring);
  // 1 / (1 + H) = sum_j (-H)^j, nilpotent beyond degree d
  CohClass inv = one;
  CohClass power = one;
  for (int j = 1; j <= d; ++j) {
    power = power * h.scaled(TransScalar(-1));
    inv += power;
  }
  const CohClass c = total * inv;
  ChernVector<CohClass> out;
  for (int k = 1; k <= d; ++k) out.c.push_back(c.degree_part(k));
  if (!out.c.front().is_zero())
    throw ConsistencyError("first Chern class of the anticanonical hypersurface does not vanish: " +
                           out.c.front().to_string());
  return out;
}

std::vector<CohClass> j_classes(const CohClass::RingPtr& ring, const MoriBasis& mb) {
  const auto& fan = ring->fan();
  const auto l = divisors_in_J_basis(fan, mb);
  const std::size_t r = mb.rank();
  const auto& rem = ring->remaining();
  if (rem.size() != r) throw ConsistencyError("j_classes: Mori basis rank does not match the Picard rank");
  RatMatrix m(r, RatVec(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t k = 0; k < r; ++k) m[a][k] = BigRat(l[rem[a]][k]);
  const auto minv = inverse(m);
  if (!minv) throw ConsistencyError("j_classes: Mori basis is degenerate on the divisor basis");
  std::vector<CohClass> js;
  for (std::size_t k = 0; k < r; ++k) {
    CohClass j = CohClass::zero(ring);
    for (std::size_t a = 0; a < r; ++a)
      if (!(*minv)[k][a].is_zero()) j += CohClass::divisor(ring, rem[a]).scaled(TransScalar((*minv)[k][a]));
    js.push_back(std::move(j));
  }
  for (std::size_t i = 0; i < ring->num_divisors(); ++i) {
    CohClass rebuilt = CohClass::zero(ring);
    for (std::size_t k = 0; k < r; ++k) rebuilt += js[k].scaled(TransScalar(l[i][k]));
    if (!(rebuilt == CohClass::divisor(ring, i)))
      throw ConsistencyError("D_" + std::to_string(i + 1) + " != sum_k l_i^(k) J_k for the given Mori basis");
  }
  return js;
}

CohClass apply_series(const TruncSeries<TransScalar>& f, const CohClass& alpha) {
  if (f.nvars() != 1) throw PreconditionError("apply_series: series must be univariate");
  const int d = alpha.ring()->dimension();
  if (f.order() < d) throw PreconditionError("apply_series: series order below the ring dimension");
  if (!alpha.degree_part(0).is_zero()) throw PreconditionError("apply_series: class must have no degree-0 part");
  CohClass result = CohClass::zero(alpha.ring());
  CohClass power = CohClass::one(alpha.ring());
  for (int n = 0; n <= d; ++n) {
    result += power.scaled(f.coefficient({n}));
    power = power * alpha;
  }
  return result;
}

}  // namespace mirrorgamma
