#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fitcalc/ideal.hpp"
#include "fitcalc/text.hpp"

namespace fitcalc {

class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw Error("matrix entry count must equal rows x cols");
    for (const auto& e : entries_) require_same_ring(e.ring(), ring_, "matrix entry");
  }

  static PolyMatrix identity(const RingPtr& ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, 1);
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }

  PolyMatrix transposed() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Polynomial> entries_;
};

// Row-per-line bracketed layout, e.g. "[-Z, 0, 2*X*Y]".
inline std::string to_string(const PolyMatrix& m, PolyStyle style = PolyStyle::Caret) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << to_string(m(r, c), style);
    os << "]\n";
  }
  return os.str();
}

namespace detail {

// All k x k minors of the given rows, by Laplace expansion along the rows with
// memoization over column subsets (bit masks).
class MinorTable {
 public:
  MinorTable(const PolyMatrix& m, std::vector<std::size_t> rows) : m_(m), rows_(std::move(rows)) {}

  const Polynomial& det(std::uint32_t colmask) {
    auto it = memo_.find(colmask);
    if (it != memo_.end()) return it->second;
    int depth = __builtin_popcount(colmask);
    std::size_t row = rows_[rows_.size() - std::size_t(depth)];
    Polynomial acc(m_.ring());
    if (depth == 1) {
      acc = m_(row, std::size_t(__builtin_ctz(colmask)));
    } else {
      int sign = 1;
      for (std::size_t c = 0; c < m_.cols(); ++c) {
        if (!(colmask & (1u << c))) continue;
        const Polynomial& a = m_(row, c);
        if (!a.is_zero()) {
          const Polynomial& sub = det(colmask & ~(1u << c));
          if (!sub.is_zero()) acc = sign > 0 ? acc + a * sub : acc - a * sub;
        }
        sign = -sign;
      }
    }
    return memo_.emplace(colmask, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix& m_;
  std::vector<std::size_t> rows_;
  std::unordered_map<std::uint32_t, Polynomial> memo_;
};

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& M) {
  if (M.rows() != M.cols()) throw Error("determinant of a non-square matrix");
  if (M.rows() == 0) return Polynomial::constant(M.ring(), 1);
  if (M.cols() > 31) throw Error("determinant: matrix too large");
  std::vector<std::size_t> rows(M.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  detail::MinorTable t(M, rows);
  return t.det((1u << M.cols()) - 1);
}

// Fraction-free (Bareiss) determinant over the fraction field; exact divisions
// only. Independent of the Laplace route above.
inline Polynomial determinant_bareiss(PolyMatrix A) {
  if (A.rows() != A.cols()) throw Error("determinant of a non-square matrix");
  std::size_t n = A.rows();
  if (n == 0) return Polynomial::constant(A.ring(), 1);
  Polynomial prev = Polynomial::constant(A.ring(), 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && A(p, k).is_zero()) ++p;
      if (p == n) return Polynomial(A.ring());
      for (std::size_t c = 0; c < n; ++c) std::swap(A(k, c), A(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = exact_divide(A(k, k) * A(i, j) - A(i, k) * A(k, j), prev);
    prev = A(k, k);
  }
  return sign > 0 ? A(n - 1, n - 1) : -A(n - 1, n - 1);
}

// Ideal of all k x k minors; k = 0 gives (1), k beyond the shape gives (0).
inline Ideal minors_ideal(const PolyMatrix& M, std::size_t k) {
  if (k == 0) return Ideal::unit(M.ring());
  if (k > std::min(M.rows(), M.cols())) return Ideal::zero(M.ring());
  if (M.cols() > 31) throw Error("minors_ideal: matrix too wide");
  std::vector<Polynomial> gens;
  auto colsets = detail::subsets(M.cols(), k);
  for (const auto& rows : detail::subsets(M.rows(), k)) {
    bool zero_row = false;
    for (std::size_t r : rows) {
      bool all = true;
      for (std::size_t c = 0; c < M.cols() && all; ++c) all = M(r, c).is_zero();
      zero_row = zero_row || all;
    }
    if (zero_row) continue;
    detail::MinorTable t(M, rows);
    for (const auto& cols : colsets) {
      std::uint32_t mask = 0;
      for (std::size_t c : cols) mask |= (1u << c);
      detail::push_unique(gens, t.det(mask));
    }
  }
  return Ideal(M.ring(), std::move(gens));
}

// Rows indexed by the polynomials, columns by the ring's variables.
inline PolyMatrix jacobian_matrix(const std::vector<Polynomial>& polys) {
  if (polys.empty()) throw Error("jacobian_matrix: empty list");
  const RingPtr& R = polys.front().ring();
  PolyMatrix J(R, polys.size(), R->nvars());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    require_same_ring(polys[i].ring(), R, "jacobian_matrix");
    for (std::size_t j = 0; j < R->nvars(); ++j) J(i, j) = derivative(polys[i], j);
  }
  return J;
}

// Ideal of the first partials of h (h itself not adjoined).
inline Ideal hypersurface_jacobian(const Polynomial& h) {
  if (h.is_zero()) throw ComputationError("hypersurface_jacobian of the zero polynomial");
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < h.ring()->nvars(); ++j) gens.push_back(derivative(h, j));
  return Ideal(h.ring(), std::move(gens));
}

// Rank of a matrix of rationals (constant polynomials), by Gaussian elimination.
inline std::size_t constant_rank(const PolyMatrix& M) {
  std::vector<std::vector<Rational>> a(M.rows(), std::vector<Rational>(M.cols()));
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) a[r][c] = M(r, c).constant_term();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < M.cols() && rank < M.rows(); ++c) {
    std::size_t p = rank;
    while (p < M.rows() && a[p][c] == 0) ++p;
    if (p == M.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < M.rows(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < M.cols(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace fitcalc
