#include "mirrorgamma/linalg.hpp"

#include <algorithm>
#include <utility>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

IntVec to_int_vec(const std::vector<long>& v) {
  IntVec r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return r;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r;
  r.reserve(m.size());
  for (const auto& row : m) {
    RatVec rr;
    rr.reserve(row.size());
    for (const auto& x : row) rr.emplace_back(x);
    r.push_back(std::move(rr));
  }
  return r;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

BigInt determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input)
    if (row.size() != n) throw PreconditionError("determinant: matrix is not square");
  if (n == 0) return 1;
  IntMatrix a = input;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    const BigRat inv = BigRat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const BigRat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix copy = m;
  return rref(copy).size();
}

namespace {

// Row-reduce the integer block [0, ncols) of `rows` to echelon form using
// unimodular row operations applied to entire rows. Returns the number of
// pivot rows.
std::size_t integer_echelon(IntMatrix& rows, std::size_t ncols, std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    while (true) {
      // smallest nonzero |entry| in column c at or below row r
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) others = true;
      }
      if (!others) {
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
        break;
      }
    }
  }
  return r;
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& a, std::size_t ncols) {
  for (const auto& row : a)
    if (row.size() != ncols) throw PreconditionError("integer_kernel: ragged matrix");
  const std::size_t m = a.size();
  // [A^T | I]
  IntMatrix work(ncols, IntVec(m + ncols, 0));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < m; ++i) work[j][i] = a[i][j];
    work[j][m + j] = 1;
  }
  const std::size_t r = integer_echelon(work, m, nullptr);
  IntMatrix kernel;
  for (std::size_t i = r; i < work.size(); ++i) kernel.emplace_back(work[i].begin() + static_cast<long>(m), work[i].end());
  return hermite_from_right(kernel);
}

IntMatrix hermite_from_right(const IntMatrix& input) {
  if (input.empty()) return {};
  const std::size_t n = input[0].size();
  IntMatrix rows;
  for (const auto& row : input) rows.emplace_back(row.rbegin(), row.rend());
  std::vector<std::size_t> pivots;
  const std::size_t r = integer_echelon(rows, n, &pivots);
  rows.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t c = pivots[k];
    if (rows[k][c] < 0)
      for (auto& x : rows[k]) x = -x;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[k][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[k][j];
    }
  }
  IntMatrix out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) out.emplace_back(it->rbegin(), it->rend());
  return out;
}

std::optional<RatVec> coordinates_in_span(const RatMatrix& basis, const RatVec& v) {
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  // columns = basis vectors, augmented by v
  RatMatrix aug(n, RatVec(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (basis[j].size() != n) throw PreconditionError("coordinates_in_span: dimension mismatch");
      aug[i][j] = basis[j][i];
    }
    aug[i][k] = v[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  if (pivots.size() != k) throw PreconditionError("coordinates_in_span: basis is linearly dependent");
  RatVec coords(k);
  for (std::size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = aug[r][k];
  return coords;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug(n, RatVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw PreconditionError("inverse: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

IntVec primitive(IntVec v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

}  // namespace mirrorgamma
