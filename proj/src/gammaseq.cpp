#include "mirrorgamma/gammaseq.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mirrorgamma/linalg.hpp"

namespace mirrorgamma {

UniSeries log_gamma_series(int order) {
  UniSeries s(1, order);
  if (order >= 1) s.add_term({1}, -TransScalar::gamma());
  for (int i = 2; i <= order; ++i) {
    const BigRat c(BigInt(i % 2 == 0 ? 1 : -1), BigInt(i));
    s.add_term({i}, TransScalar::zeta(static_cast<unsigned>(i)) * c);
  }
  return s;
}

UniSeries inverse_gamma_series(int order) { return ts_exp(-log_gamma_series(order)); }

std::vector<TransScalar> s_sequence(const UniSeries& q, int n) {
  if (q.nvars() != 1) throw PreconditionError("s_sequence: series must be univariate");
  if (q.order() < n) throw PreconditionError("s_sequence: series order below requested n");
  if (!(q.constant_term() == TransScalar(1))) throw PreconditionError("s_sequence: Q(0) must be 1");
  const UniSeries log_q = ts_log(q.truncated(n));
  std::vector<TransScalar> s;
  s.emplace_back(1);
  for (int i = 1; i <= n; ++i) {
    // 1 - z (log Q)' has coefficient -i L_i at z^i, which equals (-1)^i s_i.
    const TransScalar li = log_q.coefficient({i});
    s.push_back(li * BigRat((i % 2 == 1 ? 1 : -1) * i));
  }
  return s;
}

TransScalar MultSeqPolynomial::coefficient(const Exponents& e) const {
  const auto it = terms.find(e);
  return it == terms.end() ? TransScalar() : it->second;
}

TransScalar MultSeqPolynomial::top_coefficient() const {
  if (degree == 0) return coefficient({});
  Exponents e(static_cast<std::size_t>(degree), 0);
  e.back() = 1;
  return coefficient(e);
}

MultSeqPolynomial MultSeqPolynomial::without_c1() const {
  MultSeqPolynomial r{degree, {}};
  for (const auto& [e, c] : terms)
    if (e.empty() || e[0] == 0) r.terms.emplace(e, c);
  return r;
}

std::string c_monomial_to_string(const Exponents& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'c' + std::to_string(j + 1);
    if (e[j] > 1) out += '^' + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

std::string MultSeqPolynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  // monomials with the most factors first, c_k last
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = c.to_string();
    const bool compound = c.terms().size() > 1;
    std::string term;
    if (coeff == "1") {
      term = c_monomial_to_string(e);
    } else if (coeff == "-1") {
      term = "-" + c_monomial_to_string(e);
    } else {
      term = (compound ? "(" + coeff + ")" : coeff) + "*" + c_monomial_to_string(e);
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

nlohmann::json to_json(const MultSeqPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms) terms.push_back({{"exponents", e}, {"coeff", c.to_string()}});
  return {{"degree", p.degree}, {"text", p.to_string()}, {"terms", terms}};
}

namespace {

// Partitions of n as non-increasing part lists.
std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// Coefficient of x^lambda in e_{mu_1} e_{mu_2} ...: the number of 0/1 matrices
// with row sums mu and column sums lambda. Rows are filled one at a time.
BigInt monomial_in_elementary(const std::vector<int>& lambda, const std::vector<int>& mu) {
  std::map<std::pair<std::size_t, std::vector<int>>, BigInt> memo;
  std::function<BigInt(std::size_t, std::vector<int>)> rows = [&](std::size_t row, std::vector<int> cols) -> BigInt {
    if (row == mu.size()) return std::all_of(cols.begin(), cols.end(), [](int c) { return c == 0; }) ? 1 : 0;
    std::sort(cols.begin(), cols.end());
    const auto key = std::make_pair(row, cols);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt total = 0;
    std::vector<int> next = cols;
    std::function<void(std::size_t, int)> pick = [&](std::size_t i, int left) {
      if (left == 0) {
        total += rows(row + 1, next);
        return;
      }
      if (cols.size() - i < static_cast<std::size_t>(left)) return;
      pick(i + 1, left);
      if (cols[i] > 0) {
        --next[i];
        pick(i + 1, left - 1);
        ++next[i];
      }
    };
    pick(0, mu[row]);
    memo.emplace(key, total);
    return total;
  };
  return rows(0, lambda);
}

}  // namespace

MultSeqPolynomial mult_seq(const UniSeries& q, int k) {
  if (q.nvars() != 1) throw PreconditionError("mult_seq: characteristic series must be univariate");
  if (k < 0) throw PreconditionError("mult_seq: negative degree");
  if (q.order() < k) throw PreconditionError("mult_seq: characteristic series order below k");
  if (!(q.constant_term() == TransScalar(1))) throw PreconditionError("mult_seq: Q(0) must be 1");
  MultSeqPolynomial out{k, {}};
  if (k == 0) {
    out.terms.emplace(Exponents{}, TransScalar(1));
    return out;
  }
  const auto nroots = static_cast<std::size_t>(k);

  // Degree-k symmetric part of prod_i Q(x_i) in the monomial basis, indexed by
  // partitions of k; the product factorizes, so x^lambda has coefficient prod q_{lambda_i}.
  const auto parts = partitions(k);
  const std::size_t np = parts.size();
  std::vector<TransScalar> rhs(np, TransScalar(1));
  for (std::size_t a = 0; a < np; ++a)
    for (int part : parts[a]) rhs[a] *= q.coefficient({part});

  // transition matrix: coefficient of x^lambda in e_mu
  RatMatrix transition(np, RatVec(np));
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < np; ++b) transition[a][b] = BigRat(monomial_in_elementary(parts[a], parts[b]));
  const auto inv = inverse(transition);
  if (!inv) throw ConsistencyError("mult_seq: singular monomial/elementary transition matrix");

  for (std::size_t b = 0; b < np; ++b) {
    TransScalar coeff;
    for (std::size_t a = 0; a < np; ++a) coeff += rhs[a] * (*inv)[b][a];
    if (coeff.is_zero()) continue;
    Exponents alpha(nroots, 0);
    for (int part : parts[b]) alpha[static_cast<std::size_t>(part - 1)] += 1;
    out.terms.emplace(alpha, coeff);
  }
  return out;
}

MultSeqPolynomial gamma_seq_calabi_yau(int k) {
  if (k < 2) throw PreconditionError("gamma_seq_calabi_yau: k must be >= 2");
  return mult_seq(inverse_gamma_series(k), k).without_c1();
}

MultSeqPolynomial tabulated_gamma_sequence(int k) {
  auto poly = [k](std::initializer_list<std::pair<Exponents, const char*>> entries) {
    MultSeqPolynomial p{k, {}};
    for (const auto& [e, text] : entries) p.terms.emplace(e, TransScalar::parse(text));
    return p;
  };
  switch (k) {
    case 1:
      return poly({{{1}, "gamma"}});
    case 2:
      return poly({{{2, 0}, "-1/2*zeta2 + gamma^2"}, {{0, 1}, "zeta2"}});
    case 3:
      return poly({{{0, 0, 1}, "zeta3"},
                   {{1, 1, 0}, "-zeta3 + gamma*zeta2"},
                   {{3, 0, 0}, "1/3*zeta3 + 1/6*gamma^3"}});
    case 4:
      return poly({{{0, 0, 0, 1}, "zeta4"},
                   {{0, 2, 0, 0}, "1/2*zeta2^2 - 1/2*zeta4"},
                   {{1, 0, 1, 0}, "-zeta4 + gamma*zeta3"},
                   {{2, 1, 0, 0}, "zeta4 - gamma*zeta3 + 1/2*gamma^2*zeta2 - 1/2*zeta2^2"},
                   {{4, 0, 0, 0}, "-1/4*zeta4 - 1/4*gamma^2*zeta2 + 1/3*gamma*zeta3 + 1/8*zeta2^2 + 1/24*gamma^4"}});
    default:
      throw PreconditionError("tabulated_gamma_sequence: only k = 1..4 are tabulated");
  }
}

std::vector<std::string> mismatched_monomials(const MultSeqPolynomial& a, const MultSeqPolynomial& b) {
  std::vector<std::string> out;
  std::map<Exponents, bool, GradedLex> keys;
  for (const auto& [e, c] : a.terms) keys[e] = true;
  for (const auto& [e, c] : b.terms) keys[e] = true;
  for (const auto& [e, unused] : keys)
    if (!(a.coefficient(e) == b.coefficient(e))) out.push_back(c_monomial_to_string(e));
  return out;
}

TruncSeries<TransScalar> divide_exact(const TruncSeries<TransScalar>& v, const TransScalar& t) {
  TruncSeries<TransScalar> r(v.nvars(), v.order());
  for (const auto& [e, c] : v.terms()) r.add_term(e, exact_div(c, t));
  return r;
}

}  // namespace mirrorgamma
