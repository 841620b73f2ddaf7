#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/fixture_io.hpp"
#include "mirrorgamma/periods.hpp"
#include "oracles.hpp"
#include "random_cases.hpp"

using namespace mirrorgamma;
using testing_support::kPropertyCases;

namespace {

struct Loaded {
  FanData fan;
  MoriBasis mb;
};

Loaded load(const std::string& name) {
  const auto fx = load_fixture(std::string(MG_FIXTURE_DIR) + "/" + name + ".json");
  Loaded out{fan_from_polytope(fx.polytope), {}};
  out.mb = fx.mori_override ? *fx.mori_override : mori_basis(out.fan);
  return out;
}

const MoriBasis kQuintic{{{-5, 1, 1, 1, 1, 1}}};

TransScalar tz(unsigned k) { return TransScalar::zeta(k); }

// sum_k m_k l^(k)
std::vector<long> assemble(const MoriBasis& mb, const std::vector<long>& m) {
  std::vector<long> l(mb.vectors[0].size(), 0);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t i = 0; i < l.size(); ++i) l[i] += m[k] * mb.vectors[k][i];
  return l;
}

// (l_1 + ... + l_p)! / prod l_i!
BigInt multinomial(const std::vector<long>& l) {
  unsigned long total = 0;
  BigInt den = 1;
  for (std::size_t i = 1; i < l.size(); ++i) {
    total += static_cast<unsigned long>(l[i]);
    den *= oracle::factorial_product(static_cast<unsigned long>(l[i]));
  }
  return oracle::factorial_product(total) / den;
}

BigInt ipow(const BigInt& b, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

void for_each_nonneg(std::size_t n, long bound, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> v(n, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
    if (pos == n) {
      f(v);
      return;
    }
    for (long x = 0; x <= left; ++x) {
      v[pos] = x;
      rec(pos + 1, left - x);
    }
    v[pos] = 0;
  };
  rec(0, bound);
}

MoriBasis random_cy_basis(std::mt19937_64& rng, std::size_t r, std::size_t p) {
  std::uniform_int_distribution<long> entry(-1, 3);
  MoriBasis mb;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<long> l(p + 1, 0);
    long sum = 0;
    for (std::size_t i = 1; i <= p; ++i) sum += (l[i] = entry(rng));
    l[0] = -sum;
    mb.vectors.push_back(l);
  }
  return mb;
}

}  // namespace

TEST_CASE("period coefficients of the quintic") {
  const auto ps = period_series(kQuintic, 3);
  CHECK(ps.series.coefficient({0}) == 1);
  CHECK(ps.series.coefficient({1}) == 120);
  CHECK(ps.series.coefficient({2}) == 113400);
  CHECK(ps.series.coefficient({3}) == 168168000);
  CHECK(period_coefficient(kQuintic, {0}) == 1);
}

TEST_CASE("period coefficients vanish when a Gamma argument is negative") {
  const auto bl = load("blowup_p4");
  // l^(1) has a -1 entry: x1 alone has a negative argument
  CHECK(period_coefficient(bl.mb, {1, 0}) == 0);
  CHECK(period_coefficient(bl.mb, {1, 1}) == 120);
  const auto args = gamma_arguments(bl.mb, {1, 0});
  CHECK(args.front() == 3);
  CHECK(args.back() == -1);
}

TEST_CASE("Gamma coefficient series of the quintic") {
  const auto g = gamma_coeff_series(kQuintic, 3);
  CHECK(g.series.coefficient({0}) == TransScalar(1));
  CHECK(g.series.coefficient({1}).is_zero());
  CHECK(g.series.coefficient({2}) == tz(2) * BigRat(10));
  CHECK(g.series.coefficient({3}) == tz(3) * BigRat(-40));
  CHECK(derivative_at_origin(g, {}) == TransScalar(1));
  CHECK(derivative_at_origin(g, {1, 1}) == tz(2) * BigRat(20));
  CHECK(derivative_at_origin(g, {1, 1, 1}) == tz(3) * BigRat(-240));
  CHECK_THROWS_AS(derivative_at_origin(g, {2}), PreconditionError);
  CHECK_THROWS_AS(derivative_at_origin(g, {1, 1, 1, 1}), PreconditionError);
}

TEST_CASE("mixed derivatives carry the multiplicity factorials") {
  const auto bi = load("p2xp2_bicubic");
  const auto g = gamma_coeff_series(bi.mb, 3);
  CHECK(derivative_at_origin(g, {1, 2}) == g.series.coefficient({1, 1}));
  CHECK(derivative_at_origin(g, {1, 1, 2}) == g.series.coefficient({2, 1}) * BigRat(2));
  CHECK(derivative_at_origin(g, {2, 1, 1}) == derivative_at_origin(g, {1, 1, 2}));
}

TEST_CASE("couplings at the maximal degeneracy point") {
  const auto q = load("p4_quintic");
  CHECK(coupling_at_mdp(q.fan, q.mb, {1, 1, 1}) == 5);
  const auto bi = load("p2xp2_bicubic");
  // the factor carrying the first Mori vector is J1
  CHECK(coupling_at_mdp(bi.fan, bi.mb, {1, 1, 2}) == 3);
  CHECK(coupling_at_mdp(bi.fan, bi.mb, {1, 2, 2}) == 3);
  CHECK(coupling_at_mdp(bi.fan, bi.mb, {1, 1, 1}) == 0);
  const auto s = load("p5_sextic");
  CHECK(coupling_at_mdp(s.fan, s.mb, {1, 1, 1, 1}) == 6);
  CHECK_THROWS_AS(coupling_at_mdp(q.fan, q.mb, {1, 2, 1}), PreconditionError);
  CHECK_THROWS_AS(coupling_at_mdp(q.fan, q.mb, {1, 1}), PreconditionError);
}

TEST_CASE("box operator annihilates the quintic period") {
  const auto q = load("p4_quintic");
  const auto ps = period_series(q.mb, 10);
  const auto rep = gkz_box_check(ps, q.mb.vectors[0], q.fan);
  CHECK(rep.annihilated);
  // sum |l| = 10
  CHECK(rep.certified_order == 0);
  CHECK(gkz_box_check(period_series(q.mb, 14), q.mb.vectors[0], q.fan).certified_order == 4);
  CHECK(rep.checked_terms > 0);
  CHECK(rep.failures.empty());

  auto bad = ps;
  bad.series.add_term({1}, 1);  // 121
  REQUIRE(bad.series.coefficient({1}) == 121);
  const auto broken = gkz_box_check(bad, q.mb.vectors[0], q.fan);
  CHECK_FALSE(broken.annihilated);
  CHECK_FALSE(broken.failures.empty());

  PeriodSeries zero{TruncSeries<BigRat>(1, 10), q.mb};
  CHECK(gkz_box_check(zero, q.mb.vectors[0], q.fan).annihilated);

  CHECK_THROWS_AS(gkz_box_check(period_series(q.mb, 9), q.mb.vectors[0], q.fan), InsufficientOrder);
  CHECK_THROWS_AS(gkz_box_check(ps, {-4, 1, 1, 1, 1, 1}, q.fan), PreconditionError);
}

TEST_CASE("box operators for every Mori vector and wall relation") {
  for (const char* name : {"p2xp2_bicubic", "blowup_p4", "p1xp3", "p1_3_k3", "blowup_p3_k3"}) {
    CAPTURE(name);
    const auto f = load(name);
    std::vector<std::vector<long>> rels = f.mb.vectors;
    for (const auto& w : wall_relations(f.fan)) rels.push_back(w);
    for (const auto& l : rels) {
      long weight = 0;
      for (long x : l) weight += std::abs(x);
      const auto ps = period_series(f.mb, static_cast<int>(weight) + 2);
      const auto rep = gkz_box_check(ps, l, f.fan);
      CHECK(rep.annihilated);
      CHECK(rep.checked_terms > 0);
    }
    // a corrupted coefficient is caught by some operator
    const auto ps = period_series(f.mb, 8);
    auto bad = ps;
    Exponents one_each(f.mb.rank(), 1);
    bad.series.add_term(one_each, 1);
    bool caught = false;
    for (const auto& l : f.mb.vectors) {
      long weight = 0;
      for (long x : l) weight += std::abs(x);
      if (weight > 8) continue;
      caught = caught || !gkz_box_check(bad, l, f.fan).annihilated;
    }
    CHECK(caught);
  }
}

TEST_CASE("Euler operators") {
  for (const char* name : {"p4_quintic", "p2xp2_bicubic", "blowup_p4"}) {
    const auto f = load(name);
    CHECK(gkz_euler_check(period_series(f.mb, 4), f.fan).empty());
  }
}

TEST_CASE("multinomial re-summation over effective relations matches the Mori-cone sum") {
  for (const char* name : {"p4_quintic", "p2xp2_bicubic", "blowup_p4", "p1xp3", "p2", "p1_3_k3"}) {
    CAPTURE(name);
    const auto f = load(name);
    const std::size_t r = f.mb.rank();
    const int order = 4;
    long max_l0 = 0;
    for (const auto& l : f.mb.vectors) max_l0 = std::max(max_l0, -l[0]);
    const long bound = max_l0 * order;

    // relation vectors reachable from a box of Mori coordinates
    std::map<std::vector<long>, std::vector<long>> coords;
    const long box = bound + 2;
    std::vector<long> m(r, -box);
    for (;;) {
      coords[assemble(f.mb, m)] = m;
      std::size_t k = 0;
      while (k < r && m[k] == box) m[k++] = -box;
      if (k == r) break;
      ++m[k];
    }

    const auto ps = period_series(f.mb, order);
    std::map<std::vector<long>, BigInt> resummed;
    for_each_nonneg(f.fan.num_rays(), bound, [&](const std::vector<long>& tail) {
      std::vector<long> l(tail.size() + 1, 0);
      std::vector<long> mu(static_cast<std::size_t>(f.fan.dimension), 0);
      for (std::size_t i = 0; i < tail.size(); ++i) {
        l[i + 1] = tail[i];
        l[0] -= tail[i];
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += tail[i] * f.fan.rays[i][j];
      }
      for (long x : mu)
        if (x != 0) return;
      const auto it = coords.find(l);
      REQUIRE(it != coords.end());
      for (long x : it->second) CHECK(x >= 0);
      long total = 0;
      for (long x : it->second) total += x;
      if (total <= order) resummed[it->second] += multinomial(l);
    });
    for (const auto& mm : exponent_vectors(r, order)) {
      const auto found = resummed.find(mm);
      const BigInt expected = found == resummed.end() ? BigInt(0) : found->second;
      CHECK(ps.series.coefficient(Exponents(mm.begin(), mm.end())) == BigRat(expected));
    }
  }
}

TEST_CASE("integer substitution into the Gamma ratio gives the period coefficients") {
  const mpfr_prec_t bits = 256;
  for (long m = 0; m <= 6; ++m) {
    const BigInt expected = oracle::factorial_product(static_cast<unsigned long>(5 * m)) /
                            ipow(oracle::factorial_product(static_cast<unsigned long>(m)), 5);
    CHECK(gamma_ratio_at_integer(kQuintic, {m}) == BigRat(expected));
    CHECK(period_coefficient(kQuintic, {m}) == expected);
    const BigFloat num = gamma_ratio_numeric(kQuintic, {BigFloat(bits, BigRat(m))}, bits);
    CHECK(oracle::close(num, BigFloat(bits, BigRat(expected)), 1e-60));
  }
  const auto bi = load("p2xp2_bicubic");
  for (const auto& m : exponent_vectors(2, 3)) {
    const BigInt expected = oracle::factorial_product(static_cast<unsigned long>(3 * (m[0] + m[1]))) /
                            (ipow(oracle::factorial_product(static_cast<unsigned long>(m[0])), 3) *
                             ipow(oracle::factorial_product(static_cast<unsigned long>(m[1])), 3));
    CHECK(gamma_ratio_at_integer(bi.mb, m) == BigRat(expected));
    CHECK(period_coefficient(bi.mb, m) == expected);
  }
  const auto bl = load("blowup_p4");
  CHECK(gamma_ratio_at_integer(bl.mb, {1, 0}) == 0);
  CHECK(gamma_ratio_numeric(bl.mb, {BigFloat(bits, BigRat(1)), BigFloat(bits, BigRat(0))}, bits).is_zero());
}

TEST_CASE("truncated Gamma series agrees with the Gamma ratio at small rho") {
  const mpfr_prec_t bits = 200;
  struct Case {
    MoriBasis mb;
    std::vector<BigRat> rho;
  };
  const std::vector<Case> cases{{kQuintic, {BigRat(BigInt(1), BigInt(100))}},
                                {load("p2xp2_bicubic").mb, {BigRat(BigInt(1), BigInt(100)), BigRat(BigInt(-1), BigInt(70))}},
                                {load("blowup_p4").mb, {BigRat(BigInt(1), BigInt(90)), BigRat(BigInt(1), BigInt(120))}}};
  for (const auto& c : cases) {
    const auto g = gamma_coeff_series(c.mb, 9);
    BigFloat sum(bits, 0.0);
    for (const auto& [e, coeff] : g.series.terms()) {
      BigRat mono(1);
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int t = 0; t < e[k]; ++t) mono *= c.rho[k];
      sum += oracle::evaluate(coeff, bits) * BigFloat(bits, mono);
    }
    std::vector<BigFloat> rho;
    for (const auto& x : c.rho) rho.emplace_back(bits, x);
    CHECK(oracle::close(sum, gamma_ratio_numeric(c.mb, rho, bits), 1e-9));
  }
}

TEST_CASE("property: Gamma coefficient series grading, log identity and Calabi-Yau linear part") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < kPropertyCases; ++t) {
    const std::size_t r = 1 + static_cast<std::size_t>(t % 2);
    const std::size_t p = 3 + static_cast<std::size_t>(t % 3);
    const auto mb = random_cy_basis(rng, r, p);
    const int order = 3;
    const auto g = gamma_coeff_series(mb, order);
    CHECK(g.series.coefficient(Exponents(r, 0)) == TransScalar(1));
    for (const auto& [e, c] : g.series.terms()) {
      const auto w = static_cast<std::uint64_t>(total_degree(e));
      CHECK(c.max_weight() <= w);
      if (w == 1) CHECK(c.is_zero());
      CHECK_FALSE(c.weight_part(w).involves_gamma());
    }
    // log c = log Gamma(1 - rho.l_0) - sum log Gamma(1 + rho.l_i)
    const auto lg = log_gamma_series(order);
    TruncSeries<TransScalar> expected(r, order);
    for (std::size_t i = 0; i <= p; ++i) {
      LinForm form;
      for (std::size_t k = 0; k < r; ++k) form.coeffs.push_back(i == 0 ? -mb.vectors[k][0] : mb.vectors[k][i]);
      const auto part = ts_compose_linform(lg, form, r);
      expected = i == 0 ? expected + part : expected - part;
    }
    CHECK(ts_log(g.series) == expected);
  }
}

TEST_CASE("property: period coefficients are nonnegative integers") {
  int cases = 0;
  for (const char* name : {"p4_quintic", "p5_sextic", "p2xp2_bicubic", "blowup_p4", "p1xp3", "p1_4", "p1_3_k3", "blowup_p3_k3", "p3_quartic", "p2", "p1xp1"}) {
    const auto f = load(name);
    const int order = f.mb.rank() == 1 ? 12 : (f.mb.rank() == 2 ? 8 : 4);
    const auto ps = period_series(f.mb, order);
    for (const auto& [e, c] : ps.series.terms()) {
      CHECK(c.is_integer());
      CHECK(c >= BigRat(0));
      ++cases;
    }
  }
  CHECK(cases >= kPropertyCases);
}
