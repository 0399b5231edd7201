#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ardec/exact_linalg.hpp"
#include "ardec/matrix.hpp"

namespace ardec {

struct Arrow {
  int id;
  Index src;
  Index dst;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Finite quiver with 0-based vertices. Relations are not supported: every
// algebra handled here is a (hereditary) path algebra.
class Quiver {
 public:
  Quiver(Index vertex_count, std::vector<Arrow> arrows)
      : nv_(vertex_count), arrows_(std::move(arrows)) {
    if (nv_ < 0) throw DomainError("Quiver: negative vertex count");
    std::set<int> ids;
    for (const Arrow& a : arrows_) {
      if (a.src < 0 || a.src >= nv_ || a.dst < 0 || a.dst >= nv_)
        throw DomainError("Quiver: arrow endpoint out of range");
      if (!ids.insert(a.id).second) throw DomainError("Quiver: duplicate arrow id");
    }
  }

  Index vertex_count() const { return nv_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  friend bool operator==(const Quiver&, const Quiver&) = default;

  // 1 ->(alpha) 2, 1 ->(beta) 2
  static Quiver kronecker() { return Quiver(2, {{0, 0, 1}, {1, 0, 1}}); }
  // single vertex with a loop; its path algebra acts like k[x]
  static Quiver loop() { return Quiver(1, {{0, 0, 0}}); }
  // equioriented A_n: 1 -> 2 -> ... -> n
  static Quiver a_n(Index n) {
    std::vector<Arrow> arrows;
    for (Index i = 0; i + 1 < n; ++i) arrows.push_back({static_cast<int>(i), i, i + 1});
    return Quiver(n, std::move(arrows));
  }

 private:
  Index nv_;
  std::vector<Arrow> arrows_;
};

// Representation of a quiver: a dimension per vertex and a matrix per arrow,
// mats[a] of shape dims[dst] x dims[src].
template <class K>
struct QuiverRep {
  Quiver quiver;
  DimVec dims;
  std::vector<Mat<K>> mats;

  QuiverRep(Quiver q, DimVec d, std::vector<Mat<K>> m)
      : quiver(std::move(q)), dims(std::move(d)), mats(std::move(m)) {
    if (static_cast<Index>(dims.size()) != quiver.vertex_count())
      throw DimensionError("QuiverRep: dims size != vertex count");
    if (mats.size() != quiver.arrows().size())
      throw DimensionError("QuiverRep: one matrix per arrow required");
    for (std::size_t a = 0; a < mats.size(); ++a) {
      const Arrow& ar = quiver.arrows()[a];
      if (mats[a].rows() != dims[ar.dst] || mats[a].cols() != dims[ar.src])
        throw DimensionError("QuiverRep: matrix shape mismatch on arrow " + std::to_string(ar.id));
    }
  }

  static QuiverRep zero(const Quiver& q) {
    std::vector<Mat<K>> m(q.arrows().size(), Mat<K>(0, 0));
    for (std::size_t a = 0; a < m.size(); ++a) m[a] = zero_mat<K>(0, 0);
    return QuiverRep(q, DimVec(q.vertex_count(), 0), std::move(m));
  }

  Index total_dim() const {
    Index t = 0;
    for (Index d : dims) t += d;
    return t;
  }
};

// One morphism between representations: a matrix per vertex.
template <class K>
using Morphism = std::vector<Mat<K>>;

namespace detail {

template <class K>
void require_same_quiver(const QuiverRep<K>& a, const QuiverRep<K>& b) {
  if (!(a.quiver == b.quiver))
    throw DomainError("representations live over different quivers");
}

}  // namespace detail

// Coefficient matrix B of the homogeneous system M(a) f_i - f_j H(a) = 0.
// Unknowns: the f_i flattened column-major, vertices in ascending order, so B
// is bit-for-bit reproducible. Hom(H, M) = ker B and dim Hom = N - rank B.
template <class K>
Mat<K> hom_system(const QuiverRep<K>& h, const QuiverRep<K>& m) {
  detail::require_same_quiver(h, m);
  const Index nv = h.quiver.vertex_count();
  std::vector<Index> col_off(nv + 1, 0);
  for (Index v = 0; v < nv; ++v) col_off[v + 1] = col_off[v] + h.dims[v] * m.dims[v];
  Index rows = 0;
  for (const Arrow& a : h.quiver.arrows()) rows += m.dims[a.dst] * h.dims[a.src];

  Mat<K> b = zero_mat<K>(rows, col_off[nv]);
  Index row_at = 0;
  for (std::size_t a = 0; a < h.quiver.arrows().size(); ++a) {
    const Arrow& ar = h.quiver.arrows()[a];
    const Index block_rows = m.dims[ar.dst] * h.dims[ar.src];
    if (block_rows > 0) {
      // vec(M(a) f_i) = (I tensor M(a)) vec(f_i)
      if (col_off[ar.src + 1] > col_off[ar.src])
        b.block(row_at, col_off[ar.src], block_rows, h.dims[ar.src] * m.dims[ar.src]) +=
            kron<K>(identity_mat<K>(h.dims[ar.src]), m.mats[a]);
      // vec(f_j H(a)) = (H(a)^T tensor I) vec(f_j)
      if (col_off[ar.dst + 1] > col_off[ar.dst])
        b.block(row_at, col_off[ar.dst], block_rows, h.dims[ar.dst] * m.dims[ar.dst]) -=
            kron<K>(h.mats[a].transpose(), identity_mat<K>(m.dims[ar.dst]));
    }
    row_at += block_rows;
  }
  return b;
}

template <class K>
Index hom_dim(const QuiverRep<K>& h, const QuiverRep<K>& m) {
  detail::require_same_quiver(h, m);
  Index n = 0;
  for (Index v = 0; v < h.quiver.vertex_count(); ++v) n += h.dims[v] * m.dims[v];
  if (n == 0) return 0;
  return n - rank(hom_system(h, m));
}

template <class K>
std::vector<Morphism<K>> hom_basis(const QuiverRep<K>& h, const QuiverRep<K>& m) {
  detail::require_same_quiver(h, m);
  const Index nv = h.quiver.vertex_count();
  std::vector<Index> col_off(nv + 1, 0);
  for (Index v = 0; v < nv; ++v) col_off[v + 1] = col_off[v] + h.dims[v] * m.dims[v];
  const Mat<K> ker = kernel_basis(hom_system(h, m));
  std::vector<Morphism<K>> basis;
  basis.reserve(ker.cols());
  for (Index c = 0; c < ker.cols(); ++c) {
    Morphism<K> f(nv);
    for (Index v = 0; v < nv; ++v) {
      f[v] = zero_mat<K>(m.dims[v], h.dims[v]);
      for (Index j = 0; j < h.dims[v]; ++j)
        for (Index i = 0; i < m.dims[v]; ++i)
          f[v](i, j) = ker(col_off[v] + j * m.dims[v] + i, c);
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

// Verifies all commuting squares M(a) f_i = f_j H(a).
template <class K>
bool is_morphism(const QuiverRep<K>& h, const QuiverRep<K>& m, const Morphism<K>& f) {
  for (std::size_t a = 0; a < h.quiver.arrows().size(); ++a) {
    const Arrow& ar = h.quiver.arrows()[a];
    if (!mat_equal<K>(m.mats[a] * f[ar.src], f[ar.dst] * h.mats[a])) return false;
  }
  return true;
}

template <class K>
QuiverRep<K> direct_sum(const Quiver& q, const std::vector<std::pair<QuiverRep<K>, Index>>& parts) {
  DimVec dims(q.vertex_count(), 0);
  for (const auto& [rep, mult] : parts) {
    if (!(rep.quiver == q)) throw DomainError("direct_sum: quiver mismatch");
    if (mult < 0) throw DomainError("direct_sum: negative multiplicity");
    for (Index v = 0; v < q.vertex_count(); ++v) dims[v] += mult * rep.dims[v];
  }
  std::vector<Mat<K>> mats;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::vector<Mat<K>> blocks;
    for (const auto& [rep, mult] : parts)
      for (Index i = 0; i < mult; ++i) blocks.push_back(rep.mats[a]);
    mats.push_back(block_diag<K>(blocks));
  }
  return QuiverRep<K>(q, std::move(dims), std::move(mats));
}

// Conjugation by per-vertex invertible matrices: arrow a: i -> j becomes
// g_j M(a) g_i^{-1}. The result is isomorphic to the input.
template <class K>
QuiverRep<K> base_change(const QuiverRep<K>& m, const std::vector<Mat<K>>& gs) {
  if (static_cast<Index>(gs.size()) != m.quiver.vertex_count())
    throw DimensionError("base_change: one matrix per vertex required");
  std::vector<Mat<K>> inv(gs.size());
  for (std::size_t v = 0; v < gs.size(); ++v) {
    if (gs[v].rows() != m.dims[v] || gs[v].cols() != m.dims[v])
      throw DimensionError("base_change: g has wrong size at vertex " + std::to_string(v));
    inv[v] = invert(gs[v]);
  }
  std::vector<Mat<K>> mats(m.mats.size());
  for (std::size_t a = 0; a < m.mats.size(); ++a) {
    const Arrow& ar = m.quiver.arrows()[a];
    mats[a] = gs[ar.dst] * m.mats[a] * inv[ar.src];
  }
  return QuiverRep<K>(m.quiver, m.dims, std::move(mats));
}

template <class K>
struct SubQuotient {
  QuiverRep<K> sub;
  QuiverRep<K> quotient;
};

// Induced representations on an arrow-stable subspace and its quotient. The
// sub basis columns must be linearly independent at every vertex; the quotient
// coordinates extend the sub basis by unit vectors, chosen by elimination with
// leftmost-pivot preference, so the output is deterministic.
template <class K>
SubQuotient<K> sub_quotient(const QuiverRep<K>& m, const std::vector<Mat<K>>& sub_basis) {
  if (static_cast<Index>(sub_basis.size()) != m.quiver.vertex_count())
    throw DimensionError("sub_quotient: one basis matrix per vertex required");
  const Index nv = m.quiver.vertex_count();
  DimVec sdims(nv), qdims(nv);
  std::vector<Mat<K>> to_full(nv), to_coords(nv);
  for (Index v = 0; v < nv; ++v) {
    const Mat<K>& s = sub_basis[v];
    if (s.rows() != m.dims[v]) throw DimensionError("sub_quotient: basis row count mismatch");
    if (rank(s) != s.cols()) throw DomainError("sub_quotient: basis columns not independent");
    sdims[v] = s.cols();
    qdims[v] = m.dims[v] - s.cols();
    const RowEchelon<K> ext = reduced_row_echelon(hstack<K>({s, identity_mat<K>(m.dims[v])}, m.dims[v]));
    Mat<K> full = zero_mat<K>(m.dims[v], m.dims[v]);
    full.block(0, 0, m.dims[v], s.cols()) = s;
    Index at = s.cols();
    for (Index p : ext.pivots)
      if (p >= s.cols()) full.col(at++) = identity_mat<K>(m.dims[v]).col(p - s.cols());
    to_full[v] = std::move(full);
    to_coords[v] = invert(to_full[v]);
  }
  std::vector<Mat<K>> smats, qmats;
  for (std::size_t a = 0; a < m.mats.size(); ++a) {
    const Arrow& ar = m.quiver.arrows()[a];
    const Mat<K> g = to_coords[ar.dst] * m.mats[a] * to_full[ar.src];
    if (!is_zero_mat<K>(Mat<K>(g.block(sdims[ar.dst], 0, qdims[ar.dst], sdims[ar.src]))))
      throw StabilityError("sub_quotient: subspace not stable under arrow " +
                               std::to_string(ar.id),
                           ar.id);
    smats.push_back(g.block(0, 0, sdims[ar.dst], sdims[ar.src]));
    qmats.push_back(g.block(sdims[ar.dst], sdims[ar.src], qdims[ar.dst], qdims[ar.src]));
  }
  return {QuiverRep<K>(m.quiver, sdims, std::move(smats)),
          QuiverRep<K>(m.quiver, qdims, std::move(qmats))};
}

// Trace of u in m: per vertex, a basis of the sum of the images of all
// morphisms u -> m. Arrow-stable by construction.
template <class K>
std::vector<Mat<K>> trace(const QuiverRep<K>& m, const QuiverRep<K>& u) {
  const auto fs = hom_basis(u, m);
  std::vector<Mat<K>> out(m.quiver.vertex_count());
  for (Index v = 0; v < m.quiver.vertex_count(); ++v) {
    std::vector<Mat<K>> imgs;
    for (const auto& f : fs) imgs.push_back(f[v]);
    out[v] = column_space_sum<K>(imgs, m.dims[v]);
  }
  return out;
}

// Reject of u in m: per vertex, a basis of the intersection of the kernels of
// all morphisms m -> u. Arrow-stable by construction.
template <class K>
std::vector<Mat<K>> reject(const QuiverRep<K>& m, const QuiverRep<K>& u) {
  const auto fs = hom_basis(m, u);
  std::vector<Mat<K>> out(m.quiver.vertex_count());
  for (Index v = 0; v < m.quiver.vertex_count(); ++v) {
    std::vector<Mat<K>> maps;
    for (const auto& f : fs) maps.push_back(f[v]);
    out[v] = subspace_intersection<K>(maps, m.dims[v]);
  }
  return out;
}

}  // namespace ardec
