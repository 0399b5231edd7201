#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ardec/an_persistence.hpp"
#include "ardec/jordan.hpp"
#include "ardec/kronecker.hpp"

namespace ardec {

// SplitMix64 (Steele/Lea/Flood): gamma 0x9E3779B97F4A7C15, finalizer constants
// 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31. Pinned here so a
// seed reproduces the same planted instance in any reimplementation. Bounded
// draws reduce the raw 64-bit output modulo the range size.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// Invertible matrix as a product of 3n+2 seeded elementary operations (row
// swaps, row additions with coefficient in [-3,3] \ {0}, row negations). The
// result is unimodular, so planted instances keep integer entries.
template <class K>
Mat<K> random_invertible(Index n, SplitMix64& rng) {
  Mat<K> g = identity_mat<K>(n);
  if (n == 0) return g;
  const Index ops = 3 * n + 2;
  for (Index step = 0; step < ops; ++step) {
    const int kind = n >= 2 ? static_cast<int>(rng.below(3)) : 2;
    if (kind == 0) {
      const Index i = rng.range(0, n - 1);
      Index j = rng.range(0, n - 2);
      if (j >= i) ++j;
      g.row(i).swap(g.row(j));
    } else if (kind == 1) {
      const Index i = rng.range(0, n - 1);
      Index j = rng.range(0, n - 2);
      if (j >= i) ++j;
      long long c = rng.range(1, 3) * (rng.below(2) ? 1 : -1);
      g.row(i) += K(static_cast<int>(c)) * g.row(j);
    } else {
      const Index i = rng.range(0, n - 1);
      g.row(i) *= K(-1);
    }
  }
  return g;
}

template <class K>
Mat<K> random_mat(Index rows, Index cols, SplitMix64& rng, int lo = -3, int hi = 3) {
  Mat<K> m = zero_mat<K>(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = K(static_cast<int>(rng.range(lo, hi)));
  return m;
}

namespace detail {

// Integer-literal matrices over F_p stay "unbound" until they meet bound
// data; planted instances bind them eagerly so elimination never has to
// divide bare integer literals. A hint without a modulus is a no-op, as is
// the rational case.
template <class K>
void bind_like(Mat<K>& m, const K& hint) {
  if constexpr (std::is_same_v<K, Fp>) {
    if (!hint.bound()) return;
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = m(i, j).bind(hint.modulus());
  } else {
    (void)m;
    (void)hint;
  }
}

}  // namespace detail

template <class K>
struct PlantedKronecker {
  KroneckerModule<K> module;
  std::vector<std::pair<IndecLabel<K>, Index>> truth;  // canonically sorted
  std::uint64_t seed;
};

// Direct sum of canonical indecomposables, conjugated at both vertices by
// seeded elementary products. The solver under test must recover `truth`.
// Over F_p pass a bound scalar_hint (or use a bound regular parameter) so the
// instance is reduced into the field up front.
template <class K>
PlantedKronecker<K> plant_kronecker(std::vector<std::pair<IndecLabel<K>, Index>> summands,
                                    std::uint64_t seed, K scalar_hint = K(0)) {
  if constexpr (std::is_same_v<K, Fp>) {
    if (!scalar_hint.bound())
      for (const auto& [label, mult] : summands)
        if (label.family == IndecLabel<K>::Family::R && !label.param.is_inf &&
            label.param.value.bound())
          scalar_hint = label.param.value;
  }
  std::vector<std::pair<KroneckerModule<K>, Index>> parts;
  for (const auto& [label, mult] : summands) {
    if (mult < 1) throw DomainError("plant_kronecker: multiplicity must be >= 1");
    parts.emplace_back(indec_rep<K>(label), mult);
  }
  KroneckerModule<K> sum = kronecker_direct_sum<K>(parts);
  detail::bind_like(sum.alpha, scalar_hint);
  detail::bind_like(sum.beta, scalar_hint);
  SplitMix64 rng(seed);
  Mat<K> g1 = random_invertible<K>(sum.d1(), rng);
  Mat<K> g2 = random_invertible<K>(sum.d2(), rng);
  detail::bind_like(g1, scalar_hint);
  detail::bind_like(g2, scalar_hint);
  KroneckerModule<K> module = kronecker_base_change(sum, g1, g2);
  std::sort(summands.begin(), summands.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<IndecLabel<K>, Index>> truth;
  for (auto& [label, mult] : summands) {
    if (!truth.empty() && truth.back().first == label)
      truth.back().second += mult;
    else
      truth.emplace_back(label, mult);
  }
  return {std::move(module), std::move(truth), seed};
}

template <class K>
struct PlantedJordan {
  Mat<K> module;
  JordanSpectrum<K> truth;
  std::uint64_t seed;
};

template <class K>
PlantedJordan<K> plant_jordan(std::vector<JordanEntry<K>> cells, std::uint64_t seed,
                              K scalar_hint = K(0)) {
  for (const auto& c : cells)
    if (c.size < 1 || c.multiplicity < 1) throw DomainError("plant_jordan: bad cell");
  if constexpr (std::is_same_v<K, Fp>) {
    if (!scalar_hint.bound())
      for (const auto& c : cells)
        if (c.lambda.bound()) scalar_hint = c.lambda;
  }
  Mat<K> sum = jordan_direct_sum<K>(cells);
  detail::bind_like(sum, scalar_hint);
  SplitMix64 rng(seed);
  Mat<K> g = random_invertible<K>(sum.rows(), rng);
  detail::bind_like(g, scalar_hint);
  Mat<K> module = g * sum * invert(g);
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a.lambda < b.lambda || (a.lambda == b.lambda && a.size < b.size);
  });
  JordanSpectrum<K> truth;
  for (auto& c : cells) {
    if (!truth.entries.empty() && truth.entries.back().lambda == c.lambda &&
        truth.entries.back().size == c.size)
      truth.entries.back().multiplicity += c.multiplicity;
    else
      truth.entries.push_back(c);
  }
  return {std::move(module), std::move(truth), seed};
}

template <class K>
struct PlantedAn {
  AnModule<K> module;
  PersistenceDiagram truth;
  std::uint64_t seed;
};

template <class K>
PlantedAn<K> plant_an(Index n, std::vector<DiagramPoint> points, std::uint64_t seed,
                      K scalar_hint = K(0)) {
  std::vector<std::pair<AnModule<K>, Index>> parts;
  for (const auto& p : points) {
    if (p.multiplicity < 1) throw DomainError("plant_an: multiplicity must be >= 1");
    parts.emplace_back(interval_module<K>(n, p.birth, p.death), p.multiplicity);
  }
  AnModule<K> sum = an_direct_sum<K>(n, parts);
  for (auto& m : sum.maps) detail::bind_like(m, scalar_hint);
  SplitMix64 rng(seed);
  std::vector<Mat<K>> gs;
  for (Index v = 0; v < n; ++v) {
    gs.push_back(random_invertible<K>(sum.dims[v], rng));
    detail::bind_like(gs.back(), scalar_hint);
  }
  AnModule<K> module = an_base_change(sum, gs);
  PersistenceDiagram raw;
  raw.points = std::move(points);
  sort_diagram(raw);
  PersistenceDiagram truth;
  for (const auto& p : raw.points) {
    if (!truth.points.empty() && truth.points.back().birth == p.birth &&
        truth.points.back().death == p.death)
      truth.points.back().multiplicity += p.multiplicity;
    else
      truth.points.push_back(p);
  }
  return {std::move(module), std::move(truth), seed};
}

}  // namespace ardec
