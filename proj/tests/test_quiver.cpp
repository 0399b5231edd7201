#include <doctest.h>

#include "ardec/kronecker.hpp"
#include "ardec/quiver.hpp"
#include "test_helpers.hpp"

using namespace ardec;
using ardec::testing::q;
using ardec::testing::qmat;

namespace {

using LQ = IndecLabel<Rational>;

QuiverRep<Rational> worked_example_module() {
  // (alpha, beta) = ([[0,0],[1,0]], 0) of dimension vector (2,2)
  return to_rep(KroneckerModule<Rational>(qmat({{0, 0}, {1, 0}}), qmat({{0, 0}, {0, 0}})));
}

QuiverRep<Rational> krep(const LQ& label) { return to_rep(indec_rep<Rational>(label)); }

QuiverRep<Rational> random_kronecker_rep(Index d1, Index d2, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return to_rep(KroneckerModule<Rational>(random_mat<Rational>(d2, d1, rng),
                                          random_mat<Rational>(d2, d1, rng)));
}

}  // namespace

TEST_CASE("quiver validation") {
  CHECK_THROWS_AS(Quiver(2, {{0, 0, 2}}), DomainError);
  CHECK_THROWS_AS(Quiver(2, {{0, 0, 1}, {0, 1, 0}}), DomainError);
  CHECK(Quiver::kronecker().arrows().size() == 2);
  CHECK(Quiver::a_n(4).arrows().size() == 3);
  CHECK(Quiver::loop().arrows()[0].src == Quiver::loop().arrows()[0].dst);
}

TEST_CASE("hom dimensions over the kronecker quiver") {
  CHECK(hom_dim(krep(LQ::preprojective(3)), krep(LQ::preprojective(3))) == 1);
  CHECK(hom_dim(krep(LQ::preinjective(1)), krep(LQ::preinjective(1))) == 1);
  const auto r0 = krep(LQ::regular(1, RegParam<Rational>::finite(q(0))));
  const auto r1 = krep(LQ::regular(1, RegParam<Rational>::finite(q(1))));
  CHECK(hom_dim(r0, r1) == 0);
  CHECK(hom_dim(r0, r0) == 1);
  CHECK_THROWS_AS(hom_dim(krep(LQ::preprojective(1)),
                          QuiverRep<Rational>::zero(Quiver::loop())),
                  DomainError);
}

TEST_CASE("hom basis matches the worked trace/reject example") {
  // every morphism into P_2 kills vertex 1 and has second column zero at vertex 2
  const auto basis = hom_basis(worked_example_module(), krep(LQ::preprojective(2)));
  REQUIRE(basis.size() == 2);
  for (const auto& f : basis) {
    CHECK(is_zero_mat<Rational>(f[0]));
    CHECK(f[1](0, 1).is_zero());
    CHECK(f[1](1, 1).is_zero());
    CHECK(is_morphism(worked_example_module(), krep(LQ::preprojective(2)), f));
  }
}

TEST_CASE("hom basis of the zero representation is empty") {
  const auto zero = QuiverRep<Rational>::zero(Quiver::kronecker());
  CHECK(hom_basis(zero, worked_example_module()).empty());
  CHECK(hom_dim(zero, worked_example_module()) == 0);
}

TEST_CASE("hom basis elements satisfy all commuting squares") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto h = random_kronecker_rep(2, 2, seed);
    const auto m = random_kronecker_rep(3, 2, 50 + seed);
    for (const auto& f : hom_basis(h, m)) CHECK(is_morphism(h, m, f));
  }
}

TEST_CASE("direct sums add dimension vectors blockwise") {
  const auto s = direct_sum<Rational>(
      Quiver::kronecker(),
      {{krep(LQ::preprojective(1)), 1},
       {krep(LQ::regular(1, RegParam<Rational>::finite(q(0)))), 1},
       {krep(LQ::preinjective(1)), 1}});
  CHECK(s.dims == DimVec{2, 2});
  const auto single = direct_sum<Rational>(Quiver::kronecker(), {{worked_example_module(), 1}});
  CHECK(mat_equal<Rational>(single.mats[0], worked_example_module().mats[0]));
  const auto tripled = direct_sum<Rational>(Quiver::kronecker(), {{worked_example_module(), 3}});
  CHECK(tripled.dims == DimVec{6, 6});
}

TEST_CASE("base change preserves hom dimensions") {
  const auto m = worked_example_module();
  CHECK(mat_equal<Rational>(
      base_change(m, {identity_mat<Rational>(2), identity_mat<Rational>(2)}).mats[0],
      m.mats[0]));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::vector<Mat<Rational>> gs{
        ardec::testing::random_invertible_seeded<Rational>(2, seed),
        ardec::testing::random_invertible_seeded<Rational>(2, 40 + seed)};
    const auto conj = base_change(m, gs);
    const auto h = krep(LQ::preprojective(2));
    CHECK(hom_dim(h, conj) == hom_dim(h, m));
    CHECK(hom_dim(conj, h) == hom_dim(m, h));
  }
  CHECK_THROWS_AS(base_change(m, {qmat({{1, 1}, {1, 1}}), identity_mat<Rational>(2)}),
                  SingularMatrixError);
}

TEST_CASE("sub_quotient splits dimensions and rejects unstable subspaces") {
  const auto m = worked_example_module();
  SUBCASE("full and zero subspaces") {
    const auto full = sub_quotient(m, {identity_mat<Rational>(2), identity_mat<Rational>(2)});
    CHECK(full.sub.dims == m.dims);
    CHECK(full.quotient.dims == DimVec{0, 0});
    const auto none = sub_quotient(m, {zero_mat<Rational>(2, 0), zero_mat<Rational>(2, 0)});
    CHECK(none.sub.dims == DimVec{0, 0});
    CHECK(none.quotient.dims == m.dims);
  }
  SUBCASE("dimension additivity on the reject") {
    const auto rej = reject(m, krep(LQ::preprojective(2)));
    const auto sq = sub_quotient(m, rej);
    for (Index v = 0; v < 2; ++v)
      CHECK(sq.sub.dims[v] + sq.quotient.dims[v] == m.dims[v]);
  }
  SUBCASE("non-stable subspace reports the offending arrow") {
    // span(e1) at vertex 1 maps to e2 under alpha, not into span(e1) at vertex 2
    const std::vector<Mat<Rational>> bad{qmat({{1}, {0}}), qmat({{1}, {0}})};
    CHECK_THROWS_AS(sub_quotient(m, bad), StabilityError);
    try {
      sub_quotient(m, bad);
    } catch (const StabilityError& e) {
      CHECK(e.arrow_id == 0);
    }
  }
  CHECK_THROWS_AS(sub_quotient(m, {qmat({{1, 1}, {1, 1}}), identity_mat<Rational>(2)}),
                  DomainError);
}

TEST_CASE("trace and reject on the worked example") {
  const auto m = worked_example_module();
  const auto rej = reject(m, krep(LQ::preprojective(2)));
  CHECK(rej[0].cols() == 2);
  CHECK(rej[1].cols() == 1);
  const auto sub = sub_quotient(m, rej).sub;
  const auto tr = trace(sub, krep(LQ::preinjective(2)));
  CHECK(tr[0].cols() == 1);
  CHECK(tr[1].cols() == 0);
}

TEST_CASE("trace of a module with no incoming morphisms is zero") {
  const auto p1 = krep(LQ::preprojective(1));
  const auto i1 = krep(LQ::preinjective(1));
  CHECK(hom_dim(i1, p1) == 0);
  const auto tr = trace(p1, i1);
  CHECK(tr[0].cols() == 0);
  CHECK(tr[1].cols() == 0);
  const auto rej = reject(p1, i1);  // no morphisms out either
  CHECK(rej[0].cols() == p1.dims[0]);
  CHECK(rej[1].cols() == p1.dims[1]);
}

TEST_CASE("trace is everything mapped from u, stable under recomputation") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto m = random_kronecker_rep(3, 3, 70 + seed);
    const auto u = krep(LQ::preinjective(2));
    const auto tr = trace(m, u);
    const auto sub = sub_quotient(m, tr).sub;
    const auto again = trace(sub, u);
    CHECK(again[0].cols() == sub.dims[0]);
    CHECK(again[1].cols() == sub.dims[1]);
  }
}

TEST_CASE("reject lands in the kernel of every basis morphism") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_kronecker_rep(3, 2, 150 + seed);
    const auto u = krep(LQ::preprojective(2));
    const auto rej = reject(m, u);
    for (const auto& f : hom_basis(m, u))
      for (Index v = 0; v < 2; ++v)
        CHECK(is_zero_mat<Rational>(Mat<Rational>(f[v] * rej[v])));
  }
}

TEST_CASE("hom is additive in the second argument") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = krep(LQ::preprojective(2));
    const auto m1 = random_kronecker_rep(2, 2, 80 + seed);
    const auto m2 = random_kronecker_rep(1, 2, 90 + seed);
    const auto s = direct_sum<Rational>(Quiver::kronecker(), {{m1, 1}, {m2, 1}});
    CHECK(hom_dim(h, s) == hom_dim(h, m1) + hom_dim(h, m2));
  }
}

TEST_CASE("trace and reject distribute over direct sums (dimension vectors)") {
  const auto u = krep(LQ::preinjective(2));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto m1 = random_kronecker_rep(2, 2, 110 + seed);
    const auto m2 = random_kronecker_rep(2, 1, 120 + seed);
    const auto s = direct_sum<Rational>(Quiver::kronecker(), {{m1, 1}, {m2, 1}});
    const auto t1 = trace(m1, u), t2 = trace(m2, u), ts = trace(s, u);
    const auto r1 = reject(m1, u), r2 = reject(m2, u), rs = reject(s, u);
    for (Index v = 0; v < 2; ++v) {
      CHECK(ts[v].cols() == t1[v].cols() + t2[v].cols());
      CHECK(rs[v].cols() == r1[v].cols() + r2[v].cols());
    }
  }
}
