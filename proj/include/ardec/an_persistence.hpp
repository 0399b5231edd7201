#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "ardec/exact_linalg.hpp"
#include "ardec/matrix.hpp"

namespace ardec {

// Representation of the equioriented A_n quiver 1 -> 2 -> ... -> n: dims a_1..a_n
// and maps M_1..M_{n-1} with M_i of shape a_{i+1} x a_i (all indices 1-based in
// the API, matching the birth/death labels). The boundary conventions are
// M_0 = 0 and M_n = 0.
template <class K>
struct AnModule {
  DimVec dims;
  std::vector<Mat<K>> maps;

  AnModule(DimVec d, std::vector<Mat<K>> m) : dims(std::move(d)), maps(std::move(m)) {
    if (dims.empty()) throw DimensionError("AnModule: n must be >= 1");
    if (maps.size() + 1 != dims.size())
      throw DimensionError("AnModule: expected n-1 maps");
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps[i].rows() != dims[i + 1] || maps[i].cols() != dims[i])
        throw DimensionError("AnModule: map " + std::to_string(i + 1) + " has wrong shape");
  }

  Index n() const { return static_cast<Index>(dims.size()); }
  Index dim_at(Index v) const { return dims[v - 1]; }          // 1-based
  const Mat<K>& map_at(Index i) const { return maps[i - 1]; }  // 1-based, 1 <= i <= n-1
};

struct DiagramPoint {
  Index birth;
  Index death;
  Index multiplicity;
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// Multiset of intervals; points sorted by (birth, death).
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;

  Index multiplicity_of(Index b, Index d) const {
    for (const auto& p : points)
      if (p.birth == b && p.death == d) return p.multiplicity;
    return 0;
  }
  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

inline void sort_diagram(PersistenceDiagram& pd) {
  std::sort(pd.points.begin(), pd.points.end(), [](const auto& a, const auto& b) {
    return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
  });
}

// Triangular cache of the composites M_hi * ... * M_lo and their ranks, built
// by extending shorter products. rk(lo, hi) carries the boundary conventions:
// zero when lo = 0 or hi = n (the product meets M_0 or M_n), and the full
// a_lo when the range is empty (identity product).
template <class K>
class AnRankTable {
 public:
  explicit AnRankTable(const AnModule<K>& m) : m_(m) {}

  Index rk(Index lo, Index hi) {
    if (lo == hi + 1) {
      if (lo < 1 || lo > m_.n()) throw DomainError("AnRankTable: range out of bounds");
      return m_.dim_at(lo);
    }
    if (lo > hi + 1 || lo < 0 || hi > m_.n())
      throw DomainError("AnRankTable: range out of bounds");
    if (lo == 0 || hi == m_.n()) return 0;
    auto key = std::make_pair(lo, hi);
    auto it = ranks_.find(key);
    if (it != ranks_.end()) return it->second;
    const Index r = rank(product(lo, hi));
    ranks_.emplace(key, r);
    return r;
  }

  // M_hi * ... * M_lo for 1 <= lo <= hi <= n-1
  const Mat<K>& product(Index lo, Index hi) {
    auto key = std::make_pair(lo, hi);
    auto it = prods_.find(key);
    if (it != prods_.end()) return it->second;
    Mat<K> p = (lo == hi) ? m_.map_at(lo) : Mat<K>(m_.map_at(hi) * product(lo, hi - 1));
    return prods_.emplace(key, std::move(p)).first->second;
  }

 private:
  const AnModule<K>& m_;
  std::map<std::pair<Index, Index>, Mat<K>> prods_;
  std::map<std::pair<Index, Index>, Index> ranks_;
};

namespace detail {

template <class K>
void check_interval(const AnModule<K>& m, Index b, Index d) {
  if (b < 1 || d < b || d > m.n())
    throw DomainError("interval (b,d) out of range: b=" + std::to_string(b) +
                      " d=" + std::to_string(d));
}

template <class K>
Index an_multiplicity_cached(const AnModule<K>& m, AnRankTable<K>& t, Index b, Index d) {
  check_interval(m, b, d);
  return t.rk(b - 1, d) + t.rk(b, d - 1) - t.rk(b - 1, d - 1) - t.rk(b, d);
}

}  // namespace detail

// dim Hom(I(b,d), M) = a_b - rank(M_d M_{d-1} ... M_b); for d = n the product
// hits M_n = 0 and the dimension is the full a_b (projective case).
template <class K>
Index interval_hom_dim(const AnModule<K>& m, Index b, Index d) {
  detail::check_interval(m, b, d);
  AnRankTable<K> t(m);
  return m.dim_at(b) - t.rk(b, d);
}

// Multiplicity of the interval I(b,d), as the double rank difference
// R(b-1,d) - R(b,d) with R(b,d) = rank(M_d...M_b) - rank(M_{d-1}...M_b).
template <class K>
Index an_multiplicity(const AnModule<K>& m, Index b, Index d) {
  AnRankTable<K> t(m);
  return detail::an_multiplicity_cached(m, t, b, d);
}

// All interval multiplicities over the triangle 1 <= b <= d <= n; verifies
// that the multiset conserves the dimension vector.
template <class K>
PersistenceDiagram an_diagram(const AnModule<K>& m) {
  AnRankTable<K> t(m);
  PersistenceDiagram pd;
  DimVec covered = dims_zero(m.dims.size());
  for (Index b = 1; b <= m.n(); ++b)
    for (Index d = b; d <= m.n(); ++d) {
      const Index mult = detail::an_multiplicity_cached(m, t, b, d);
      if (mult < 0)
        throw ConsistencyError("an_diagram: negative multiplicity at (" + std::to_string(b) +
                               "," + std::to_string(d) + ")");
      if (mult == 0) continue;
      pd.points.push_back({b, d, mult});
      for (Index v = b; v <= d; ++v) covered[v - 1] += mult;
    }
  if (!dims_equal(covered, m.dims))
    throw ConsistencyError("an_diagram: interval multiset covers " + dims_str(covered) +
                           " but the module has " + dims_str(m.dims));
  sort_diagram(pd);
  return pd;
}

// The interval module I(b,d) inside an ambient A_n.
template <class K>
AnModule<K> interval_module(Index n, Index b, Index d) {
  if (b < 1 || d < b || d > n) throw DomainError("interval_module: bad (b,d)");
  DimVec dims(n, 0);
  for (Index v = b; v <= d; ++v) dims[v - 1] = 1;
  std::vector<Mat<K>> maps;
  for (Index i = 1; i < n; ++i) {
    Mat<K> f = zero_mat<K>(dims[i], dims[i - 1]);
    if (b <= i && i + 1 <= d) f(0, 0) = K(1);
    maps.push_back(std::move(f));
  }
  return AnModule<K>(std::move(dims), std::move(maps));
}

template <class K>
AnModule<K> an_direct_sum(Index n, const std::vector<std::pair<AnModule<K>, Index>>& parts) {
  DimVec dims(n, 0);
  for (const auto& [p, mult] : parts) {
    if (p.n() != n) throw DimensionError("an_direct_sum: mixed n");
    for (Index v = 0; v < n; ++v) dims[v] += mult * p.dims[v];
  }
  std::vector<Mat<K>> maps;
  for (Index i = 0; i + 1 < n; ++i) {
    std::vector<Mat<K>> blocks;
    for (const auto& [p, mult] : parts)
      for (Index c = 0; c < mult; ++c) blocks.push_back(p.maps[i]);
    maps.push_back(block_diag<K>(blocks));
  }
  return AnModule<K>(std::move(dims), std::move(maps));
}

template <class K>
AnModule<K> an_base_change(const AnModule<K>& m, const std::vector<Mat<K>>& gs) {
  if (static_cast<Index>(gs.size()) != m.n())
    throw DimensionError("an_base_change: one matrix per vertex required");
  std::vector<Mat<K>> maps;
  for (Index i = 0; i + 1 < m.n(); ++i)
    maps.push_back(gs[i + 1] * m.maps[i] * invert(gs[i]));
  return AnModule<K>(m.dims, std::move(maps));
}

}  // namespace ardec
