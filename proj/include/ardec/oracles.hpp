#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "ardec/an_persistence.hpp"
#include "ardec/jordan.hpp"

namespace ardec {

// Interval decomposition by explicit basis changes, sweeping the chain from
// the right and splitting bars off greedily (longest-lived rows first).
// Independent of the rank formulas in an_persistence.hpp on purpose; the two
// are cross-checked against each other in the test suites.
//
// Invariant maintained while processing map M_i: each current basis vector of
// the vertex i+1 space carries a death index, and the maps to its right are in
// partial-identity form along those vectors. Row operations are only ever
// performed with a source row that lives at least as long as the target row,
// which is exactly the condition under which the fix-up propagates to the
// right without disturbing the established form.
template <class K>
PersistenceDiagram persistence_reduction(const AnModule<K>& m) {
  const Index n = m.n();
  std::map<std::pair<Index, Index>, Index> bars;
  std::vector<Mat<K>> maps = m.maps;
  std::vector<Index> row_death(static_cast<std::size_t>(m.dims[n - 1]), n);

  for (Index i = n - 1; i >= 1; --i) {
    Mat<K>& a = maps[i - 1];
    const Index rows = a.rows(), cols = a.cols();
    std::vector<Index> order(rows);
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(), [&](Index x, Index y) {
      return row_death[x] > row_death[y] || (row_death[x] == row_death[y] && x < y);
    });

    std::vector<std::pair<Index, Index>> pivots;  // (row, column)
    std::vector<Index> col_death(static_cast<std::size_t>(cols), i);
    for (Index v : order) {
      for (const auto& [p, cp] : pivots) {
        const K f = a(v, cp);
        if (f == K(0)) continue;
        a.row(v) -= f * a.row(p);
      }
      Index j = -1;
      for (Index c = 0; c < cols; ++c)
        if (!(a(v, c) == K(0))) {
          j = c;
          break;
        }
      if (j < 0) {
        ++bars[{i + 1, row_death[v]}];  // not hit from the left: born at i+1
        continue;
      }
      const K piv = a(v, j);
      if (!(piv == K(1))) {
        a.col(j) *= K(1) / piv;
        if (i >= 2) maps[i - 2].row(j) *= piv;
      }
      for (Index c = 0; c < cols; ++c) {
        if (c == j) continue;
        const K f = a(v, c);
        if (f == K(0)) continue;
        a.col(c) -= f * a.col(j);
        if (i >= 2) maps[i - 2].row(j) += f * maps[i - 2].row(c);
      }
      for (Index u = 0; u < rows; ++u) {
        if (u == v) continue;
        const K f = a(u, j);
        if (f == K(0)) continue;
        a.row(u) -= f * a.row(v);
      }
      pivots.emplace_back(v, j);
      col_death[j] = row_death[v];  // the bar extends one vertex to the left
    }
    row_death.assign(col_death.begin(), col_death.end());
  }

  for (Index c = 0; c < m.dims[0]; ++c) ++bars[{1, row_death[c]}];

  PersistenceDiagram pd;
  for (const auto& [bd, mult] : bars) pd.points.push_back({bd.first, bd.second, mult});
  sort_diagram(pd);
  return pd;
}

// Jordan multiplicities from generalized-eigenspace kernel ladders:
//   mult J_i(lambda) = (k_i - k_{i-1}) - (k_{i+1} - k_i),  k_i = dim Ker M_lambda^i.
// Same eigenvalue machinery as jordan_decompose but the block sizes come from
// kernel dimensions rather than the rank-difference formula.
template <class K>
JordanSpectrum<K> jordan_form_oracle(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw DimensionError("jordan_form_oracle: matrix not square");
  JordanSpectrum<K> spec;
  auto [vals, nonsplit] = eigenvalues(m);
  spec.nonsplit = nonsplit;
  for (const K& lambda : vals) {
    Mat<K> shifted = m;
    for (Index i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
    std::vector<Index> k{0};  // k_0 = dim Ker identity = 0
    Mat<K> power = identity_mat<K>(m.rows());
    do {
      power = Mat<K>(power * shifted);
      k.push_back(kernel_basis(power).cols());
    } while (k[k.size() - 1] != k[k.size() - 2]);
    k.push_back(k.back());
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
      const Index mult = (k[i] - k[i - 1]) - (k[i + 1] - k[i]);
      if (mult > 0)
        spec.entries.push_back({lambda, static_cast<Index>(i), mult});
    }
  }
  std::sort(spec.entries.begin(), spec.entries.end(), [](const auto& a, const auto& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && a.size < b.size);
  });
  return spec;
}

}  // namespace ardec
