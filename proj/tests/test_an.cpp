#include <doctest.h>

#include "ardec/an_persistence.hpp"
#include "ardec/ar_engine.hpp"
#include "ardec/io.hpp"
#include "ardec/oracles.hpp"
#include "ardec/planted.hpp"
#include "test_helpers.hpp"

using namespace ardec;
using ardec::testing::an_to_rep;
using ardec::testing::q;
using ardec::testing::qmat;

namespace {

AnModule<Rational> one_dim_chain() {
  // k -1-> k -0-> k
  return AnModule<Rational>({1, 1, 1}, {qmat({{1}}), qmat({{0}})});
}

AnModule<Rational> random_an(Index n, std::uint64_t seed, Index max_dim = 4) {
  SplitMix64 rng(seed);
  DimVec dims;
  for (Index v = 0; v < n; ++v) dims.push_back(rng.range(0, max_dim));
  std::vector<Mat<Rational>> maps;
  for (Index i = 0; i + 1 < n; ++i)
    maps.push_back(random_mat<Rational>(dims[i + 1], dims[i], rng));
  return AnModule<Rational>(std::move(dims), std::move(maps));
}

// Almost split meshes of the equioriented A_n quiver: for b >= 2
//   0 -> I(b,d) -> I(b-1,d) + I(b,d-1) -> I(b-1,d-1) -> 0
// and for the injectives I(1,d) the sink map I(1,d) -> I(1,d-1).
ARMesh<Rational> an_mesh(Index n, Index b, Index d) {
  auto rep = [&](Index bb, Index dd) { return an_to_rep(interval_module<Rational>(n, bb, dd)); };
  ARMesh<Rational> mesh{"I(" + std::to_string(b) + "," + std::to_string(d) + ")", rep(b, d),
                        {}, std::nullopt};
  if (b >= 2) {
    mesh.middle.emplace_back(rep(b - 1, d), 1);
    if (d > b) mesh.middle.emplace_back(rep(b, d - 1), 1);
    mesh.target = rep(b - 1, d - 1);
  } else if (d >= 2) {
    mesh.middle.emplace_back(rep(1, d - 1), 1);
  }
  return mesh;
}

}  // namespace

TEST_CASE("interval hom dimensions") {
  const AnModule<Rational> m({1, 1}, {qmat({{1}})});
  CHECK(interval_hom_dim(m, 1, 2) == 1);
  CHECK(interval_hom_dim(m, 1, 1) == 0);  // a_1 - rank(M_1)
  CHECK_THROWS_AS(interval_hom_dim(m, 2, 1), DomainError);
  CHECK_THROWS_AS(interval_hom_dim(m, 1, 3), DomainError);
}

TEST_CASE("projective intervals see the full fiber") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_an(5, seed);
    for (Index b = 1; b <= 5; ++b) CHECK(interval_hom_dim(m, b, 5) == m.dim_at(b));
  }
}

TEST_CASE("interval hom agrees with the generic linear-system computation") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_an(4, 40 + seed);
    const auto m_rep = an_to_rep(m);
    for (Index b = 1; b <= 4; ++b)
      for (Index d = b; d <= 4; ++d)
        CHECK(interval_hom_dim(m, b, d) ==
              hom_dim(an_to_rep(interval_module<Rational>(4, b, d)), m_rep));
  }
}

TEST_CASE("multiplicities of the one-dimensional chain") {
  const auto m = one_dim_chain();
  CHECK(an_multiplicity(m, 1, 2) == 1);
  CHECK(an_multiplicity(m, 3, 3) == 1);
  for (Index b = 1; b <= 3; ++b)
    for (Index d = b; d <= 3; ++d)
      if (!((b == 1 && d == 2) || (b == 3 && d == 3))) CHECK(an_multiplicity(m, b, d) == 0);
}

TEST_CASE("zero maps decompose into simples") {
  const AnModule<Rational> m({2, 3, 1},
                             {zero_mat<Rational>(3, 2), zero_mat<Rational>(1, 3)});
  const auto pd = an_diagram(m);
  REQUIRE(pd.points.size() == 3);
  CHECK(pd.multiplicity_of(1, 1) == 2);
  CHECK(pd.multiplicity_of(2, 2) == 3);
  CHECK(pd.multiplicity_of(3, 3) == 1);
}

TEST_CASE("an interval is its own diagram") {
  const auto m = interval_module<Rational>(5, 2, 4);
  const auto pd = an_diagram(m);
  REQUIRE(pd.points.size() == 1);
  CHECK(pd.points[0] == DiagramPoint{2, 4, 1});
}

TEST_CASE("planted intervals are recovered after base change") {
  const auto planted = plant_an<Rational>(3, {{1, 3, 1}, {2, 2, 1}}, 77);
  CHECK(an_diagram(planted.module) == planted.truth);
  CHECK(an_diagram(AnModule<Rational>({0, 0}, {zero_mat<Rational>(0, 0)})).points.empty());
}

TEST_CASE("random modules agree with the reduction oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_an(1 + static_cast<Index>(seed % 6), 1000 + seed);
    const auto pd = an_diagram(m);
    CHECK(pd == persistence_reduction(m));
  }
}

TEST_CASE("diagram is invariant under base change") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m = random_an(5, 2000 + seed);
    SplitMix64 rng(3000 + seed);
    std::vector<Mat<Rational>> gs;
    for (Index v = 0; v < 5; ++v) gs.push_back(random_invertible<Rational>(m.dims[v], rng));
    CHECK(an_diagram(an_base_change(m, gs)) == an_diagram(m));
  }
}

TEST_CASE("diagram agrees with the generic AR engine on the A_n meshes") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 3);
    const auto m = random_an(n, 4000 + seed, 3);
    std::vector<ARMesh<Rational>> meshes;
    for (Index b = 1; b <= n; ++b)
      for (Index d = b; d <= n; ++d) meshes.push_back(an_mesh(n, b, d));
    const auto viaAr = decompose_with_ar(an_to_rep(m), meshes);
    const auto pd = an_diagram(m);
    Index total = 0;
    for (const auto& p : pd.points) {
      CHECK(viaAr.multiplicity_of(interval_label(p)) == p.multiplicity);
      ++total;
    }
    CHECK(static_cast<Index>(viaAr.entries.size()) == total);
  }
}

TEST_CASE("cached composite ranks equal from-scratch ranks") {
  const auto m = random_an(6, 5150);
  AnRankTable<Rational> table(m);
  for (Index lo = 1; lo <= 5; ++lo)
    for (Index hi = lo; hi <= 5; ++hi) {
      Mat<Rational> prod = m.map_at(lo);
      for (Index k = lo + 1; k <= hi; ++k) prod = Mat<Rational>(m.map_at(k) * prod);
      CHECK(table.rk(lo, hi) == rank(prod));
    }
}

TEST_CASE("diagram conserves the dimension vector") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = random_an(6, 6000 + seed);
    const auto pd = an_diagram(m);
    DimVec covered(6, 0);
    for (const auto& p : pd.points)
      for (Index v = p.birth; v <= p.death; ++v) covered[v - 1] += p.multiplicity;
    CHECK(covered == m.dims);
  }
}
