#pragma once

// Dense matrices over the rationals. Everything here is exact: elimination is
// fraction-free (Bareiss) and no floating point is involved anywhere.

#include "rigidity/combinations.hpp"
#include "rigidity/error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace rigidity {

using Integer = boost::multiprecision::mpz_int;
/// Always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ExactMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    ExactMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in product");
    ExactMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch in difference");
    ExactMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

struct IntegerRows {
  std::vector<std::vector<Integer>> rows;
  Integer scale = 1;  // product of the per-row denominators cleared
};

// Clears denominators row by row so that Bareiss can run over Z.
inline IntegerRows integerize(const ExactMatrix& m) {
  IntegerRows out;
  out.rows.assign(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(m(i, j))));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.rows[i][j] = boost::multiprecision::numerator(m(i, j)) * (l / boost::multiprecision::denominator(m(i, j)));
    }
    out.scale *= l;
  }
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  Integer last_pivot = 1;
  int sign = 1;
};

// Fraction-free elimination; the pivot is the first nonzero entry at or below
// the current row in each column.
inline BareissResult bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols) {
  BareissResult res;
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      res.sign = -res.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

}  // namespace detail

inline std::size_t rank_exact(const ExactMatrix& m) {
  auto ints = detail::integerize(m);
  return detail::bareiss(ints.rows, m.cols()).rank;
}

inline Rational det_exact(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  auto ints = detail::integerize(m);
  const auto res = detail::bareiss(ints.rows, m.cols());
  if (res.rank < m.rows()) return Rational(0);
  return Rational(res.sign * res.last_pivot, ints.scale);
}

inline ExactMatrix invert_exact(const ExactMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix a = m;
  ExactMatrix inv = ExactMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a word-sized prime. Used as a fast pre-check only; exact
// results remain authoritative.

namespace detail {

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

class ModMatrix {
 public:
  ModMatrix(const ExactMatrix& m, std::uint64_t prime) : rows_(m.rows()), cols_(m.cols()), p_(prime), data_(rows_ * cols_) {
    if (prime >= (std::uint64_t{1} << 63) || !detail::is_prime_u64(prime)) {
      throw Error(ErrorCode::BadPrime, std::to_string(prime) + " is not a usable prime");
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Integer num = reduce(boost::multiprecision::numerator(m(i, j)));
        const Integer den = reduce(boost::multiprecision::denominator(m(i, j)));
        if (den == 0) throw Error(ErrorCode::BadPrime, "denominator divisible by the prime");
        data_[i * cols_ + j] = mul(num.convert_to<std::uint64_t>(), inverse(den.convert_to<std::uint64_t>()));
      }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Rank of the submatrix on the given rows and columns.
  std::size_t rank(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    const std::size_t r = row_idx.size(), c = col_idx.size();
    std::vector<std::uint64_t> a(r * c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a[i * c + j] = data_[row_idx[i] * cols_ + col_idx[j]];
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
      std::size_t piv = rank;
      while (piv < r && a[piv * c + col] == 0) ++piv;
      if (piv == r) continue;
      if (piv != rank)
        for (std::size_t j = 0; j < c; ++j) std::swap(a[piv * c + j], a[rank * c + j]);
      const std::uint64_t inv = inverse(a[rank * c + col]);
      for (std::size_t i = rank + 1; i < r; ++i) {
        const std::uint64_t f = mul(a[i * c + col], inv);
        if (f == 0) continue;
        for (std::size_t j = col; j < c; ++j) a[i * c + j] = sub(a[i * c + j], mul(f, a[rank * c + j]));
      }
      ++rank;
    }
    return rank;
  }

  std::size_t rank() const {
    std::vector<std::size_t> ri(rows_), ci(cols_);
    std::iota(ri.begin(), ri.end(), std::size_t{0});
    std::iota(ci.begin(), ci.end(), std::size_t{0});
    return rank(ri, ci);
  }

 private:
  Integer reduce(const Integer& v) const {
    Integer r = v % p_;
    if (r < 0) r += p_;
    return r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  std::size_t rows_, cols_;
  std::uint64_t p_;
  std::vector<std::uint64_t> data_;
};

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Rank of m over GF(prime). Never exceeds rank_exact(m).
inline std::size_t rank_modular(const ExactMatrix& m, std::uint64_t prime) {
  return ModMatrix(m, prime).rank();
}

// ---------------------------------------------------------------------------
// Laplace row split.

namespace detail {

class ExactRankOracle {
 public:
  explicit ExactRankOracle(const ExactMatrix& m) : m_(m) {}
  std::size_t rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    return rank_exact(m_.submatrix(rows, cols));
  }

 private:
  const ExactMatrix& m_;
};

class ModRankOracle {
 public:
  ModRankOracle(const ExactMatrix& m, std::uint64_t prime) : m_(m, prime) {}
  std::size_t rank(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    return m_.rank(rows, cols);
  }

 private:
  ModMatrix m_;
};

// Finds rows R, |R| = |cols|, with x[R, cols] and x[R^c, cols^c] both of full
// rank according to `oracle`. Search order:
//   1. R0 = greedy row basis of x[:, cols], scanning rows in ascending order;
//   2. single-row exchanges (first improving pair, ascending) that keep the
//      first minor nonsingular and raise the rank of the second;
//   3. for n <= 12, every k-subset in lexicographic order;
//   4. otherwise, common basis of the row matroid of x[:, cols] and the dual
//      of the row matroid of x[:, cols^c] via shortest augmenting paths.
template <typename Oracle>
std::optional<std::vector<std::size_t>> search_split(const Oracle& oracle, std::size_t n,
                                                     const std::vector<std::size_t>& cols,
                                                     const std::vector<std::size_t>& other_cols) {
  const std::size_t k = cols.size();
  auto full1 = [&](const std::vector<std::size_t>& r) { return oracle.rank(r, cols) == k; };
  auto rank2 = [&](const std::vector<std::size_t>& rc) { return oracle.rank(rc, other_cols); };

  std::vector<std::size_t> basis;
  for (std::size_t r = 0; r < n && basis.size() < k; ++r) {
    basis.push_back(r);
    if (oracle.rank(basis, cols) != basis.size()) basis.pop_back();
  }
  if (basis.size() != k) return std::nullopt;

  auto rest = complement(basis, n);
  std::size_t current = rank2(rest);
  while (current < n - k) {
    bool improved = false;
    for (std::size_t i = 0; i < basis.size() && !improved; ++i) {
      for (std::size_t j = 0; j < rest.size() && !improved; ++j) {
        auto cand = basis;
        cand[i] = rest[j];
        std::sort(cand.begin(), cand.end());
        if (!full1(cand)) continue;
        auto cand_rest = complement(cand, n);
        const std::size_t r2 = rank2(cand_rest);
        if (r2 > current) {
          basis = std::move(cand);
          rest = std::move(cand_rest);
          current = r2;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  if (current == n - k) return basis;

  if (n <= 12) {
    auto idx = first_combination(k);
    do {
      if (full1(idx) && rank2(complement(idx, n)) == n - k) return idx;
    } while (next_combination(idx, n));
    return std::nullopt;
  }

  // Matroid intersection. M1: rows independent in x[:, cols]. M2: I is
  // independent iff the remaining rows still span x[:, other_cols].
  std::vector<char> in(n, 0);
  auto members = [&](const std::vector<char>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) out.push_back(i);
    return out;
  };
  auto indep1 = [&](const std::vector<char>& mask) {
    auto m = members(mask);
    return oracle.rank(m, cols) == m.size();
  };
  auto indep2 = [&](const std::vector<char>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (!mask[i]) out.push_back(i);
    return oracle.rank(out, other_cols) == n - k;
  };
  for (std::size_t size = 0; size < k; ++size) {
    std::vector<char> is_source(n, 0), is_sink(n, 0);
    std::vector<std::vector<std::size_t>> arcs(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (in[y]) continue;
      auto with = in;
      with[y] = 1;
      is_source[y] = indep1(with);
      is_sink[y] = indep2(with);
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!in[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (in[b]) continue;
        auto swapped = in;
        swapped[a] = 0;
        swapped[b] = 1;
        if (indep1(swapped)) arcs[a].push_back(b);
        if (indep2(swapped)) arcs[b].push_back(a);
      }
    }
    std::vector<std::ptrdiff_t> parent(n, -2);
    std::vector<std::size_t> queue;
    for (std::size_t y = 0; y < n; ++y)
      if (!in[y] && is_source[y]) {
        parent[y] = -1;
        queue.push_back(y);
      }
    std::ptrdiff_t end = -1;
    for (std::size_t head = 0; head < queue.size() && end < 0; ++head) {
      const std::size_t u = queue[head];
      if (!in[u] && is_sink[u]) {
        end = static_cast<std::ptrdiff_t>(u);
        break;
      }
      for (std::size_t w : arcs[u]) {
        if (parent[w] != -2) continue;
        parent[w] = static_cast<std::ptrdiff_t>(u);
        queue.push_back(w);
      }
    }
    if (end < 0) return std::nullopt;
    for (std::ptrdiff_t v = end; v >= 0; v = parent[v]) in[v] = !in[v];
  }
  return members(in);
}

inline bool split_is_valid(const ExactMatrix& x, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols, const std::vector<std::size_t>& other_cols) {
  const auto other_rows = complement(rows, x.rows());
  return det_exact(x.submatrix(rows, cols)) != 0 && det_exact(x.submatrix(other_rows, other_cols)) != 0;
}

}  // namespace detail

/// Given an invertible square x and a column set `cols`, returns a row set R
/// of the same size (sorted) such that x[R, cols] and x[R^c, cols^c] are both
/// invertible. Such R exists by Laplace expansion along `cols`. The search
/// runs modulo 2^61-1 first and repeats over Q if the modular answer does not
/// survive the exact determinant check; the returned split is always checked
/// with exact determinants.
inline std::vector<std::size_t> laplace_split(const ExactMatrix& x, std::vector<std::size_t> cols) {
  if (!x.square()) throw std::invalid_argument("laplace_split needs a square matrix");
  const std::size_t n = x.rows();
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (!cols.empty() && cols.back() >= n) throw std::invalid_argument("column index out of range");
  if (det_exact(x) == 0) throw Error(ErrorCode::Singular, "laplace_split on a singular matrix");
  const auto other_cols = complement(cols, n);

  std::optional<std::vector<std::size_t>> found;
  try {
    found = detail::search_split(detail::ModRankOracle(x, kMersenne61), n, cols, other_cols);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BadPrime) throw;
  }
  if (!found || !detail::split_is_valid(x, *found, cols, other_cols)) {
    found = detail::search_split(detail::ExactRankOracle(x), n, cols, other_cols);
  }
  if (!found || !detail::split_is_valid(x, *found, cols, other_cols)) {
    throw Error(ErrorCode::InternalAssertionFailed, "no Laplace split found for an invertible matrix");
  }
  return *found;
}

}  // namespace rigidity
