#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "ardec/errors.hpp"
#include "ardec/fp.hpp"
#include "ardec/matrix.hpp"
#include "ardec/rational.hpp"

namespace ardec {

// Reduced row echelon form. `rref` holds only the `rank` pivot rows; `pivots`
// are their column indices in increasing order. RREF is unique for a given
// row space, so everything derived from it is deterministic.
template <class K>
struct RowEchelon {
  Mat<K> rref;
  std::vector<Index> pivots;
  Index rank = 0;
};

namespace detail {

// Pivot selection shared by both elimination cores: among candidate rows with
// a nonzero entry in the current column, prefer the sparsest remaining row
// (fewest nonzeros in columns >= col), ties broken by lowest row index. Any
// choice yields the same RREF; sparse rows keep fill-in down on the staircase
// and Kronecker-product systems this library spends its time on.
template <class Row, class IsZero>
int pick_pivot(const std::vector<Row>& rows, const std::vector<int>& order,
               int from, Index col, Index cols, const IsZero& is_zero) {
  int best = -1;
  Index best_nnz = cols + 1;
  for (std::size_t k = from; k < order.size(); ++k) {
    const Row& r = rows[order[k]];
    if (is_zero(r[col])) continue;
    Index nnz = 0;
    for (Index j = col; j < cols; ++j)
      if (!is_zero(r[j])) ++nnz;
    if (nnz < best_nnz) {
      best_nnz = nnz;
      best = static_cast<int>(k);
    }
  }
  return best;
}

// Fraction-free (Bareiss) forward elimination over the integers, then exact
// back-division to a rational RREF. Rows of the input are pre-scaled by the
// lcm of their denominators, which changes neither rank nor kernel.
inline RowEchelon<Rational> rref_rational(const Mat<Rational>& a) {
  const Index rows = a.rows(), cols = a.cols();
  std::vector<std::vector<mpz_class>> w(rows, std::vector<mpz_class>(cols));
  for (Index i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (Index j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den().get_mpz_t());
    mpz_class g = 0;
    for (Index j = 0; j < cols; ++j) {
      w[i][j] = a(i, j).num() * (l / a(i, j).den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i][j].get_mpz_t());
    }
    if (g > 1)
      for (Index j = 0; j < cols; ++j) mpz_divexact(w[i][j].get_mpz_t(), w[i][j].get_mpz_t(), g.get_mpz_t());
  }

  std::vector<int> order(rows);
  for (Index i = 0; i < rows; ++i) order[i] = static_cast<int>(i);
  std::vector<Index> pivots;
  mpz_class prev = 1, t1, t2;
  int pr = 0;
  auto zero = [](const mpz_class& x) { return sgn(x) == 0; };
  for (Index c = 0; c < cols && pr < rows; ++c) {
    const int hit = pick_pivot(w, order, pr, c, cols, zero);
    if (hit < 0) continue;
    std::swap(order[pr], order[hit]);
    auto& prow = w[order[pr]];
    const int scale_kind = mpz_cmp(prow[c].get_mpz_t(), prev.get_mpz_t()) == 0        ? 1
                           : mpz_cmpabs(prow[c].get_mpz_t(), prev.get_mpz_t()) == 0   ? -1
                                                                                      : 0;
    for (Index k = pr + 1; k < rows; ++k) {
      auto& row = w[order[k]];
      if (sgn(row[c]) == 0) {
        // nothing to eliminate: the Bareiss step only rescales by pivot/prev
        if (scale_kind == 1) continue;
        for (Index j = c + 1; j < cols; ++j) {
          if (sgn(row[j]) == 0) continue;
          if (scale_kind == -1) {
            mpz_neg(row[j].get_mpz_t(), row[j].get_mpz_t());
          } else {
            mpz_mul(t1.get_mpz_t(), row[j].get_mpz_t(), prow[c].get_mpz_t());
            mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
          }
        }
        continue;
      }
      for (Index j = c + 1; j < cols; ++j) {
        const bool rj = sgn(row[j]) != 0, pj = sgn(prow[j]) != 0;
        if (!rj && !pj) continue;
        if (!pj) {
          mpz_mul(t1.get_mpz_t(), row[j].get_mpz_t(), prow[c].get_mpz_t());
          mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
          continue;
        }
        if (rj)
          mpz_mul(t1.get_mpz_t(), row[j].get_mpz_t(), prow[c].get_mpz_t());
        else
          t1 = 0;
        mpz_mul(t2.get_mpz_t(), row[c].get_mpz_t(), prow[j].get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = prow[c];
    pivots.push_back(c);
    ++pr;
  }

  RowEchelon<Rational> out;
  out.rank = pr;
  out.pivots = std::move(pivots);
  out.rref = zero_mat<Rational>(pr, cols);
  for (int k = 0; k < pr; ++k) {
    const auto& row = w[order[k]];
    const Rational inv_pivot = Rational(1) / Rational(row[out.pivots[k]]);
    for (Index j = out.pivots[k]; j < cols; ++j)
      out.rref(k, j) = Rational(row[j]) * inv_pivot;
  }
  for (int k = pr - 1; k >= 0; --k)
    for (int i = 0; i < k; ++i) {
      const Rational f = out.rref(i, out.pivots[k]);
      if (f.is_zero()) continue;
      for (Index j = out.pivots[k]; j < cols; ++j)
        out.rref(i, j) -= f * out.rref(k, j);
    }
  return out;
}

// Plain Gauss-Jordan over an arbitrary exact field.
template <class K>
RowEchelon<K> rref_field(const Mat<K>& a) {
  const Index rows = a.rows(), cols = a.cols();
  std::vector<std::vector<K>> w(rows, std::vector<K>(cols));
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) w[i][j] = a(i, j);

  std::vector<int> order(rows);
  for (Index i = 0; i < rows; ++i) order[i] = static_cast<int>(i);
  std::vector<Index> pivots;
  int pr = 0;
  auto zero = [](const K& x) { return x == K(0); };
  for (Index c = 0; c < cols && pr < rows; ++c) {
    const int hit = pick_pivot(w, order, pr, c, cols, zero);
    if (hit < 0) continue;
    std::swap(order[pr], order[hit]);
    auto& prow = w[order[pr]];
    const K inv_pivot = K(1) / prow[c];
    for (Index j = c; j < cols; ++j) prow[j] = prow[j] * inv_pivot;
    for (Index k = 0; k < rows; ++k) {
      if (k == static_cast<Index>(pr)) continue;
      auto& row = w[order[k]];
      const K f = row[c];
      if (zero(f)) continue;
      for (Index j = c; j < cols; ++j) row[j] = row[j] - f * prow[j];
    }
    pivots.push_back(c);
    ++pr;
  }

  RowEchelon<K> out;
  out.rank = pr;
  out.pivots = std::move(pivots);
  out.rref = zero_mat<K>(pr, cols);
  for (int k = 0; k < pr; ++k)
    for (Index j = 0; j < cols; ++j) out.rref(k, j) = w[order[k]][j];
  return out;
}

}  // namespace detail

template <class K>
RowEchelon<K> reduced_row_echelon(const Mat<K>& a) {
  if constexpr (std::is_same_v<K, Rational>)
    return detail::rref_rational(a);
  else
    return detail::rref_field(a);
}

template <class K>
Index rank(const Mat<K>& a) {
  return reduced_row_echelon(a).rank;
}

// Columns form a basis of { x | a x = 0 }; column count = cols - rank.
template <class K>
Mat<K> kernel_basis(const Mat<K>& a) {
  const RowEchelon<K> e = reduced_row_echelon(a);
  const Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Mat<K> out = zero_mat<K>(cols, cols - e.rank);
  Index at = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    out(f, at) = K(1);
    for (Index k = 0; k < e.rank; ++k) out(e.pivots[k], at) = -e.rref(k, f);
    ++at;
  }
  return out;
}

// Exact solution X of A X = B, or nullopt when the system is inconsistent.
// Free variables are set to zero, so the solution is deterministic.
template <class K>
std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row count mismatch");
  const RowEchelon<K> e = reduced_row_echelon(hstack<K>({a, b}, a.rows()));
  for (Index p : e.pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat<K> x = zero_mat<K>(a.cols(), b.cols());
  for (Index k = 0; k < e.rank; ++k)
    for (Index j = 0; j < b.cols(); ++j) x(e.pivots[k], j) = e.rref(k, a.cols() + j);
  return x;
}

template <class K>
Mat<K> invert(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw DimensionError("invert: matrix not square");
  auto x = solve<K>(a, identity_mat<K>(a.rows()));
  if (!x) throw SingularMatrixError("invert: singular matrix");
  return *x;
}

// Basis of the column space: the pivot columns of the input itself.
template <class K>
Mat<K> column_space_basis(const Mat<K>& a) {
  const RowEchelon<K> e = reduced_row_echelon(a);
  Mat<K> out = zero_mat<K>(a.rows(), e.rank);
  for (Index k = 0; k < e.rank; ++k) out.col(k) = a.col(e.pivots[k]);
  return out;
}

// Basis of the sum of the column spaces of all inputs (maps into k^rows).
template <class K>
Mat<K> column_space_sum(const std::vector<Mat<K>>& ms, Index rows) {
  return column_space_basis(hstack<K>(ms, rows));
}

// Basis of the intersection of the kernels of all inputs (maps out of k^cols).
// The empty intersection is the whole space.
template <class K>
Mat<K> subspace_intersection(const std::vector<Mat<K>>& ms, Index cols) {
  if (ms.empty()) return identity_mat<K>(cols);
  return kernel_basis(vstack<K>(ms, cols));
}

template <class K>
bool same_column_space(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) return false;
  const Index ra = rank(a), rb = rank(b);
  return ra == rb && rank(hstack<K>({a, b}, a.rows())) == ra;
}

}  // namespace ardec
