#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ardec/quiver.hpp"
#include "ardec/util.hpp"

namespace ardec {

// One almost split sequence 0 -> L -> sum X^(a(X)) -> tau^{-1}L -> 0, or the
// sink map L -> L/soc L when L is injective (no target; empty middle when L is
// simple injective). Mesh data is caller-supplied: this engine validates the
// bookkeeping but never computes almost split sequences itself.
template <class K>
struct ARMesh {
  std::string label;
  QuiverRep<K> source;
  std::vector<std::pair<QuiverRep<K>, Index>> middle;
  std::optional<QuiverRep<K>> target;
};

template <class K>
void validate_mesh(const ARMesh<K>& mesh) {
  for (const auto& [x, a] : mesh.middle) {
    detail::require_same_quiver(mesh.source, x);
    if (a < 1) throw InvalidMeshError("mesh '" + mesh.label + "': middle multiplicity < 1");
  }
  if (mesh.target) {
    detail::require_same_quiver(mesh.source, *mesh.target);
    // short exact sequence bookkeeping: dims(L) + dims(tau^{-1}L) = sum a(X) dims(X)
    DimVec lhs = mesh.source.dims;
    dims_axpy(lhs, 1, mesh.target->dims);
    DimVec rhs = dims_zero(lhs.size());
    for (const auto& [x, a] : mesh.middle) dims_axpy(rhs, a, x.dims);
    if (!dims_equal(lhs, rhs))
      throw InvalidMeshError("mesh '" + mesh.label + "': dimension bookkeeping " +
                             dims_str(lhs) + " != " + dims_str(rhs));
  }
}

// d_M(L) = dim Hom(L, M) - sum a(X) dim Hom(X, M) + dim Hom(tau^{-1}L, M),
// the last term dropped when L is injective. Negative output means the mesh
// is not an almost split sequence for this algebra.
template <class K>
Index multiplicity(const QuiverRep<K>& m, const ARMesh<K>& mesh) {
  detail::require_same_quiver(mesh.source, m);
  validate_mesh(mesh);
  Index d = hom_dim(mesh.source, m);
  for (const auto& [x, a] : mesh.middle) d -= a * hom_dim(x, m);
  if (mesh.target) d += hom_dim(*mesh.target, m);
  if (d < 0)
    throw InvalidMeshError("mesh '" + mesh.label + "': negative multiplicity " +
                           std::to_string(d));
  return d;
}

template <class K>
struct DecompositionEntry {
  std::string label;
  QuiverRep<K> rep;
  Index multiplicity;
};

// Indecomposable decomposition as a labeled multiset. Entries with zero
// multiplicity are dropped; when the reps are known the multiplicities
// conserve the dimension vector of the decomposed module.
template <class K>
struct Decomposition {
  std::vector<DecompositionEntry<K>> entries;

  Index multiplicity_of(const std::string& label) const {
    for (const auto& e : entries)
      if (e.label == label) return e.multiplicity;
    return 0;
  }
};

// Evaluates the multiplicity formula mesh by mesh over a caller-supplied
// candidate set. Raises CoverageError when the candidates missed summands,
// reporting the per-vertex dimension deficit; that distinguishes "candidate
// set too small" from a wrong formula, which would surface as a negative
// multiplicity or a negative deficit instead.
template <class K>
Decomposition<K> decompose_with_ar(const QuiverRep<K>& m, const std::vector<ARMesh<K>>& meshes,
                                   int jobs = 1) {
  std::vector<Index> mult(meshes.size(), 0);
  detail::parallel_for(static_cast<std::ptrdiff_t>(meshes.size()), jobs,
                       [&](std::ptrdiff_t i) { mult[i] = multiplicity(m, meshes[i]); });
  Decomposition<K> out;
  DimVec covered = dims_zero(m.dims.size());
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (mult[i] == 0) continue;
    dims_axpy(covered, mult[i], meshes[i].source.dims);
    out.entries.push_back({meshes[i].label, meshes[i].source, mult[i]});
  }
  if (!dims_equal(covered, m.dims)) {
    std::vector<long long> deficit;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
      deficit.push_back(static_cast<long long>(m.dims[v] - covered[v]));
    throw CoverageError("decompose_with_ar: candidate set does not cover the module, deficit " +
                            dims_str(DimVec(deficit.begin(), deficit.end())),
                        std::move(deficit));
  }
  return out;
}

}  // namespace ardec
