#include <doctest.h>

#include <sstream>

#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/fixture_io.hpp"
#include "mirrorgamma/verify.hpp"
#include "oracles.hpp"

using namespace mirrorgamma;

namespace {

using Poly = std::map<std::vector<int>, BigRat>;

Fixture fixture(const std::string& name) { return load_fixture(std::string(MG_FIXTURE_DIR) + "/" + name + ".json"); }

FanContext context(const std::string& name, int order = -1) {
  const auto fx = fixture(name);
  return FanContext::build(fan_from_polytope(fx.polytope), fx.mori_override, order);
}

TransScalar tz(unsigned k) { return TransScalar::zeta(k); }

// Point blow-up of P^n: classes H^a E^b, HE = 0, H^n = 1, E^n = (-1)^(n-1).
struct BlowupPoint {
  int n;
  Poly mul(const Poly& x, const Poly& y) const {
    Poly r;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) {
        const std::vector<int> e{a[0] + b[0], a[1] + b[1]};
        if ((e[0] > 0 && e[1] > 0) || e[0] + e[1] > n) continue;
        r[e] += ca * cb;
      }
    return r;
  }
  Poly one() const { return {{{0, 0}, BigRat(1)}}; }
  BigRat integrate(const Poly& x) const {
    BigRat out;
    for (const auto& [e, c] : x) {
      if (e == std::vector<int>{n, 0}) out += c;
      if (e == std::vector<int>{0, n}) out += c * BigRat(n % 2 == 1 ? 1 : -1);
    }
    return out;
  }
};

Poly add(Poly x, const Poly& y, const BigRat& s = 1) {
  for (const auto& [e, c] : y) x[e] += c * s;
  return x;
}

template <class Alg>
struct OracleGoldens {
  const Alg& alg;
  std::vector<Poly> divisors;
  std::vector<Poly> js;
  int dim;

  Poly anticanonical() const {
    Poly s;
    for (const auto& d : divisors) s = add(s, d);
    return s;
  }
  std::vector<Poly> chern() const {
    Poly c = alg.one();
    for (const auto& d : divisors) c = alg.mul(c, add(alg.one(), d));
    Poly inv = alg.one(), power = alg.one();
    for (int k = 1; k <= dim; ++k) {
      power = alg.mul(power, anticanonical());
      inv = add(inv, power, BigRat(k % 2 == 0 ? 1 : -1));
    }
    const Poly cv = alg.mul(c, inv);
    std::vector<Poly> out(static_cast<std::size_t>(dim) + 1);
    for (const auto& [e, coeff] : cv) {
      int deg = 0;
      for (int v : e) deg += v;
      out[static_cast<std::size_t>(deg)][e] += coeff;
    }
    return out;
  }
  BigRat over_v(const Poly& x) const { return alg.integrate(alg.mul(x, anticanonical())); }

  // keys like "c2^2", "c3*J1", "J1*J1*J2"
  BigRat evaluate_key(const std::string& key) const {
    const auto c = chern();
    Poly acc = alg.one();
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
      const auto caret = tok.find('^');
      const int idx = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      const int power = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
      const Poly& f = tok[0] == 'c' ? c[static_cast<std::size_t>(idx)] : js[static_cast<std::size_t>(idx - 1)];
      for (int p = 0; p < power; ++p) acc = alg.mul(acc, f);
    }
    return over_v(acc);
  }
};

BigRat parse_rat(const std::string& s) { return BigRat::parse(s); }

std::string coupling_key_to_monomial(const std::string& key) {
  std::string out;
  std::stringstream ss(key);
  std::string tok;
  while (std::getline(ss, tok, ',')) out += (out.empty() ? "J" : "*J") + tok;
  return out;
}

template <class Alg>
void check_goldens_against(const OracleGoldens<Alg>& og, const nlohmann::json& g) {
  for (const auto& [key, value] : g.at("couplings").items()) {
    CAPTURE(key);
    CHECK(parse_rat(value.template get<std::string>()) == og.evaluate_key(coupling_key_to_monomial(key)));
  }
  for (const auto& [key, value] : g.at("chern_integrals").items()) {
    CAPTURE(key);
    CHECK(parse_rat(value.template get<std::string>()) == og.evaluate_key(key));
  }
}

// products: every ray and every Mori vector sits in one factor
void check_product_fixture(const std::string& name, const std::vector<int>& dims, const std::vector<std::size_t>& block_of_ray,
                           const std::vector<std::size_t>& block_of_j) {
  CAPTURE(name);
  const auto ctx = context(name);
  const auto g = compute_goldens(ctx);
  const oracle::ProductSpace ps{dims};
  OracleGoldens<oracle::ProductSpace> og{ps, {}, {}, ps.total_dim()};
  for (auto b : block_of_ray) og.divisors.push_back(ps.h(b));
  for (auto b : block_of_j) og.js.push_back(ps.h(b));
  check_goldens_against(og, g);
  for (const auto& [key, value] : g.at("period_coefficients").items()) {
    std::vector<long> m(dims.size(), 0);
    std::stringstream ss(key);
    std::string tok;
    std::size_t k = 0;
    while (std::getline(ss, tok, ',')) m[block_of_j[k++]] = std::stol(tok);
    CHECK(parse_rat(value.get<std::string>()) == BigRat(ps.period(m)));
  }
  // the frozen fixture values are what the code reproduces
  CHECK(check_goldens(ctx, *fixture(name).expected).all_exact());
}

BigInt pascal_binomial(const std::vector<std::vector<BigInt>>& t, unsigned long n, unsigned long k) { return k > n ? BigInt(0) : t[n][k]; }

}  // namespace

TEST_CASE("theorem examples") {
  const auto q = context("p4_quintic");
  const auto e2 = check_theorem(q, 2, {1});
  CHECK(e2.exact_match);
  CHECK(e2.lhs == (tz(2) * BigRat(50)).to_string());
  CHECK(e2.rhs == e2.lhs);
  const auto e3 = check_theorem(q, 3, {});
  CHECK(e3.exact_match);
  CHECK(e3.lhs == (tz(3) * BigRat(-200)).to_string());
  const auto s = context("p5_sextic");
  const auto e4 = check_theorem(s, 4, {});
  CHECK(e4.exact_match);
  // 1/2 (zeta2^2 - zeta4) * 1350 + zeta4 * 2610
  CHECK(e4.lhs == (tz(2).pow(2) * BigRat(675) + tz(4) * BigRat(1935)).to_string());
  CHECK(e4.numeric_residual == "0.0");
  CHECK_THROWS_AS(check_theorem(q, 1, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(check_theorem(q, 2, {2}), PreconditionError);
  CHECK_THROWS_AS(check_theorem(q, 2, {}), PreconditionError);
}

TEST_CASE("theorem and three-way checks are exact on every fixture") {
  for (const char* name : {"p2", "p1xp1", "p3_quartic", "p1_3_k3", "blowup_p3_k3", "p4_quintic", "p2xp2_bicubic", "p1xp3",
                           "blowup_p4", "p1_4", "p5_sextic"}) {
    CAPTURE(name);
    const auto ctx = context(name);
    const auto th = check_theorem_all(ctx);
    CHECK(th.all_exact());
    CHECK_FALSE(th.entries.empty());
    CHECK_FALSE(th.interpretation.empty());
    const auto tw = check_three_way(ctx);
    CHECK(tw.all_exact());
    CHECK(tw.entries.size() == 2 * (static_cast<std::size_t>(ctx.fan.dimension) + 1));
    for (const auto& e : tw.entries)
      if (e.id.find("degree 1 ") != std::string::npos) CHECK(e.lhs == "0");
  }
}

TEST_CASE("full battery with goldens") {
  for (const char* name : {"p4_quintic", "p2xp2_bicubic", "blowup_p4", "p5_sextic"}) {
    CAPTURE(name);
    const auto fx = fixture(name);
    const auto ctx = FanContext::build(fan_from_polytope(fx.polytope), fx.mori_override);
    REQUIRE(fx.expected.has_value());
    const auto rep = verify_fan(ctx, &*fx.expected);
    CHECK(rep.all_exact());
    for (const auto& e : rep.entries)
      if (e.exact_match && e.numeric_residual.find_first_not_of("0.") != std::string::npos) {
        CAPTURE(e.id);
        CHECK(e.numeric_residual == "0.0");
      }
  }
}

TEST_CASE("product fixtures against the Kunneth oracle") {
  check_product_fixture("p4_quintic", {4}, {0, 0, 0, 0, 0}, {0});
  check_product_fixture("p5_sextic", {5}, {0, 0, 0, 0, 0, 0}, {0});
  check_product_fixture("p3_quartic", {3}, {0, 0, 0, 0}, {0});
  check_product_fixture("p2xp2_bicubic", {2, 2}, {0, 0, 0, 1, 1, 1}, {0, 1});
  check_product_fixture("p1xp3", {1, 3}, {0, 0, 1, 1, 1, 1}, {0, 1});
  check_product_fixture("p1xp1", {1, 1}, {0, 0, 1, 1}, {0, 1});
  check_product_fixture("p1_3_k3", {1, 1, 1}, {0, 0, 1, 1, 2, 2}, {0, 1, 2});
  check_product_fixture("p1_4", {1, 1, 1, 1}, {0, 0, 1, 1, 2, 2, 3, 3}, {0, 1, 2, 3});
}

TEST_CASE("blow-up fixtures against the H, E presentation") {
  for (int n : {3, 4}) {
    const std::string name = n == 4 ? "blowup_p4" : "blowup_p3_k3";
    CAPTURE(name);
    const auto ctx = context(name);
    // rays e_1..e_n, -sum e_i, sum e_i: D = H - E (n times), H, E; J1 = H - E, J2 = H
    std::vector<long> l1(static_cast<std::size_t>(n) + 3, 0), l2(static_cast<std::size_t>(n) + 3, 0);
    l1[0] = -(n - 1);
    for (int i = 1; i <= n; ++i) l1[static_cast<std::size_t>(i)] = 1;
    l1.back() = -1;
    l2[0] = -2;
    l2[static_cast<std::size_t>(n) + 1] = 1;
    l2.back() = 1;
    REQUIRE(ctx.basis.vectors == std::vector<std::vector<long>>{l1, l2});
    const BlowupPoint alg{n};
    const Poly h{{{1, 0}, BigRat(1)}}, e{{{0, 1}, BigRat(1)}};
    OracleGoldens<BlowupPoint> og{alg, {}, {add(h, e, -1), h}, n};
    for (int i = 0; i < n; ++i) og.divisors.push_back(add(h, e, -1));
    og.divisors.push_back(h);
    og.divisors.push_back(e);
    const auto g = compute_goldens(ctx);
    check_goldens_against(og, g);
    CHECK(check_goldens(ctx, *fixture(name).expected).all_exact());
  }
  const auto g4 = compute_goldens(context("blowup_p4"));
  CHECK(g4["chern_integrals"]["c3"] == "-176");
  CHECK(g4["period_coefficients"]["1,1"] == "120");
  CHECK(g4["period_coefficients"]["1,2"] == "2520");
  CHECK_FALSE(g4["period_coefficients"].contains("1,0"));
}

TEST_CASE("P^d example") {
  const auto r4 = check_pd_example(4, 6);
  CHECK(r4.all_exact());
  CHECK(r4.entries.size() == 7);
  CHECK(r4.entries[0].lhs == "1");
  CHECK(r4.entries[1].lhs == "120");
  const auto r5 = check_pd_example(5, 2);
  CHECK(r5.all_exact());
  CHECK(r5.entries[2].lhs == "7484400");
  CHECK(check_pd_example(3, 12).all_exact());
  CHECK_THROWS_AS(check_pd_example(2, 3), PreconditionError);
  CHECK_THROWS_AS(check_pd_example(4, 13), PreconditionError);
}

TEST_CASE("Grassmannian coefficient ratio") {
  const auto rep = grassmannian_ratio_check(25);
  CHECK(rep.all_exact());
  const auto pas = oracle::pascal(75);
  auto fact = [](unsigned long n) { return oracle::factorial_product(n); };
  for (unsigned long m = 0; m <= 25; ++m) {
    BigInt inner = 0;  // sum without the 1/(m!)^5, which cancels in the ratio
    for (unsigned long r = 0; r <= m; ++r)
      for (unsigned long s = 0; s <= m; ++s) {
        const BigInt ms = pascal_binomial(pas, m, s);
        inner += pascal_binomial(pas, m, r) * pascal_binomial(pas, s, r) * ms * ms;
      }
    const BigRat a(fact(3 * m) * fact(m) * fact(m) * inner);
    const BigRat b(fact(m) * fact(2 * m) * fact(2 * m) * inner);
    const BigRat squared(fact(3 * m) * fact(m), fact(2 * m) * fact(2 * m));
    CHECK(a / b == squared);
    const auto& e = rep.entries[m];
    CHECK(e.id == "grassmannian m=" + std::to_string(m));
    CHECK(e.lhs == squared.to_string());
    if (m >= 1) CHECK(squared != BigRat(fact(3 * m) * fact(m), fact(2 * m)));
  }
  CHECK(rep.entries[1].lhs == "3/2");
  CHECK(rep.entries[2].lhs == "5/2");
  const auto small = grassmannian_ratio_check(10);
  std::size_t ratio_rows = 0;
  for (const auto& e : small.entries)
    if (e.id.rfind("grassmannian m=", 0) == 0) ++ratio_rows;
  CHECK(ratio_rows == 11);
  CHECK(small.entries.back().id == "grassmannian candidate");
  CHECK(small.entries.back().lhs == "Gamma(3h+1)Gamma(h+1)/Gamma(2h+1)^2");
  CHECK_THROWS_AS(grassmannian_ratio_check(26), PreconditionError);
}

TEST_CASE("mutations break checks") {
  const auto base = context("p4_quintic");
  const CohClass h = CohClass::divisor(base.ring, 0);

  auto bad_chern = base;
  bad_chern.chern.c[1] += h.pow(2);  // c2 = 11 h^2
  CHECK_FALSE(check_theorem(bad_chern, 2, {1}).exact_match);
  CHECK_FALSE(check_three_way(bad_chern).all_exact());

  auto bad_c3 = base;
  bad_c3.chern.c[2] += h.pow(3);
  CHECK_FALSE(check_theorem(bad_c3, 3, {}).exact_match);

  auto bad_gamma = base;
  bad_gamma.gamma.series.add_term({2}, tz(2));  // 11 zeta2
  CHECK_FALSE(check_theorem(bad_gamma, 2, {1}).exact_match);
  CHECK_FALSE(check_three_way(bad_gamma).all_exact());

  auto expected = *fixture("p4_quintic").expected;
  CHECK(check_goldens(base, expected).all_exact());
  expected["period_coefficients"]["1"] = "121";
  CHECK_FALSE(check_goldens(base, expected).all_exact());
  expected = *fixture("p4_quintic").expected;
  expected["couplings"]["1,1,1"] = "6";
  CHECK_FALSE(check_goldens(base, expected).all_exact());
  expected = *fixture("p4_quintic").expected;
  expected["chern_integrals"]["c3"] = "-201";
  CHECK_FALSE(verify_fan(base, &expected).all_exact());
}

TEST_CASE("reports are deterministic and serialize both ways") {
  const auto a = verify_fan(context("p2xp2_bicubic")).to_json().dump();
  const auto b = verify_fan(context("p2xp2_bicubic")).to_json().dump();
  CHECK(a == b);
  const auto rep = check_theorem_all(context("p4_quintic"));
  const auto j = rep.to_json();
  CHECK(j["all_exact"] == true);
  CHECK(j["checks"].size() == rep.entries.size());
  const auto table = rep.to_table();
  CHECK(table.find("theorem k=2 J1") != std::string::npos);
  CHECK(table.find("all checks exact") != std::string::npos);
  const auto mismatch = make_entry("x", TransScalar(1), tz(2));
  CHECK_FALSE(mismatch.exact_match);
  CHECK(mismatch.numeric_residual.rfind("0.644934066848226436472415166646", 0) == 0);
}
