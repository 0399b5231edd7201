#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "ardec/exact_linalg.hpp"
#include "ardec/polynomial.hpp"

namespace ardec {

// Jordan cell of size n with eigenvalue lambda, ones on the superdiagonal.
template <class K>
Mat<K> jordan_cell(const K& lambda, Index n) {
  Mat<K> j = zero_mat<K>(n, n);
  for (Index i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = K(1);
  }
  return j;
}

template <class K>
struct JordanEntry {
  K lambda;
  Index size;
  Index multiplicity;
  friend bool operator==(const JordanEntry&, const JordanEntry&) = default;
};

// Jordan block multiset of a square matrix over the active field, plus the
// monic characteristic-polynomial factor that has no roots in the field
// (constant 1 when everything splits). Entries are sorted by (lambda, size).
template <class K>
struct JordanSpectrum {
  std::vector<JordanEntry<K>> entries;
  Polynomial<K> nonsplit = Polynomial<K>::one();

  Index multiplicity_of(const K& lambda, Index size) const {
    for (const auto& e : entries)
      if (e.lambda == lambda && e.size == size) return e.multiplicity;
    return 0;
  }
  friend bool operator==(const JordanSpectrum&, const JordanSpectrum&) = default;
};

// Memoized powers of M - lambda E and their ranks; each multiplicity needs
// three consecutive powers, so the work is shared across block sizes.
template <class K>
class ShiftedPowers {
 public:
  ShiftedPowers(const Mat<K>& m, const K& lambda) {
    if (m.rows() != m.cols()) throw DimensionError("ShiftedPowers: matrix not square");
    base_ = m;
    for (Index i = 0; i < m.rows(); ++i) base_(i, i) -= lambda;
    powers_.push_back(identity_mat<K>(m.rows()));
  }

  const Mat<K>& power(Index i) {
    while (static_cast<Index>(powers_.size()) <= i)
      powers_.push_back(Mat<K>(powers_.back() * base_));
    return powers_[i];
  }

  Index rank_of_power(Index i) {
    while (static_cast<Index>(ranks_.size()) <= i)
      ranks_.push_back(rank(power(static_cast<Index>(ranks_.size()))));
    return ranks_[i];
  }

 private:
  Mat<K> base_;
  std::vector<Mat<K>> powers_;
  std::vector<Index> ranks_;
};

// Distinct eigenvalues in the field plus the non-split remainder factor.
template <class K>
std::pair<std::vector<K>, Polynomial<K>> eigenvalues(const Mat<K>& m) {
  if (m.rows() == 0) return {{}, Polynomial<K>::one()};
  const LinearRoots<K> lr = linear_roots(char_poly(m));
  std::vector<K> vals;
  vals.reserve(lr.roots.size());
  for (const auto& [r, mult] : lr.roots) vals.push_back(r);
  return {std::move(vals), lr.nonsplit};
}

// Number of Jordan cells J_i(lambda):
//   rank M_lambda^{i+1} + rank M_lambda^{i-1} - 2 rank M_lambda^i,
// with M_lambda^0 the identity.
template <class K>
Index jordan_multiplicity(const Mat<K>& m, const K& lambda, Index i) {
  if (i < 1) throw DomainError("jordan_multiplicity: block size must be >= 1");
  ShiftedPowers<K> pw(m, lambda);
  return pw.rank_of_power(i + 1) + pw.rank_of_power(i - 1) - 2 * pw.rank_of_power(i);
}

template <class K>
JordanSpectrum<K> jordan_decompose(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw DimensionError("jordan_decompose: matrix not square");
  const Index d = m.rows();
  JordanSpectrum<K> spec;
  auto [vals, nonsplit] = eigenvalues(m);
  spec.nonsplit = nonsplit;
  Index covered = 0;
  for (const K& lambda : vals) {
    ShiftedPowers<K> pw(m, lambda);
    // ranks are non-increasing and stabilize by i = d
    Index stable = 1;
    while (pw.rank_of_power(stable) != pw.rank_of_power(stable - 1)) ++stable;
    for (Index i = 1; i < stable; ++i) {
      const Index mult =
          pw.rank_of_power(i + 1) + pw.rank_of_power(i - 1) - 2 * pw.rank_of_power(i);
      if (mult > 0) spec.entries.push_back({lambda, i, mult});
      covered += mult * i;
    }
  }
  std::sort(spec.entries.begin(), spec.entries.end(), [](const auto& a, const auto& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && a.size < b.size);
  });
  const Index nonsplit_deg = spec.nonsplit.is_one() ? 0 : spec.nonsplit.degree();
  if (covered != d - nonsplit_deg)
    throw ConsistencyError("jordan_decompose: block sizes cover " + std::to_string(covered) +
                           " of " + std::to_string(d - nonsplit_deg) + " split dimensions");
  return spec;
}

// Block-diagonal matrix realizing a Jordan block multiset.
template <class K>
Mat<K> jordan_direct_sum(const std::vector<JordanEntry<K>>& entries) {
  std::vector<Mat<K>> blocks;
  for (const auto& e : entries)
    for (Index i = 0; i < e.multiplicity; ++i) blocks.push_back(jordan_cell<K>(e.lambda, e.size));
  return block_diag<K>(blocks);
}

}  // namespace ardec
