#include <doctest.h>

#include "ardec/io.hpp"
#include "test_helpers.hpp"

using namespace ardec;
using ardec::testing::q;
using ardec::testing::qmat;

namespace {
const FieldSpec kQ{};
const FieldSpec kF7{false, 7};
}  // namespace

TEST_CASE("field specs") {
  CHECK(FieldSpec::parse("q").rational);
  CHECK(FieldSpec::parse("fp:7").p == 7);
  CHECK(FieldSpec::parse("fp:7").str() == "fp:7");
  CHECK_THROWS_AS(FieldSpec::parse("fp:6"), ParseError);
  CHECK_THROWS_AS(FieldSpec::parse("fp:x"), ParseError);
  CHECK_THROWS_AS(FieldSpec::parse("r"), ParseError);
}

TEST_CASE("scalar parsing honours the field") {
  CHECK(parse_scalar<Rational>(json("-1/2"), kQ, "t") == q(-1, 2));
  CHECK(parse_scalar<Rational>(json(5), kQ, "t") == q(5));
  CHECK(parse_scalar<Fp>(json("1/2"), kF7, "t").value() == 4);  // inverse of 2 mod 7
  CHECK(parse_scalar<Fp>(json("-1"), kF7, "t").value() == 6);
  CHECK_THROWS_AS(parse_scalar<Fp>(json("1/7"), kF7, "t"), ParseError);
  CHECK_THROWS_AS(parse_scalar<Rational>(json(1.5), kQ, "t"), ParseError);
  CHECK_THROWS_AS(parse_scalar<Rational>(json("x"), kQ, "t"), ParseError);
}

TEST_CASE("matrix parsing reports the offending row and column") {
  const json good = json::parse(R"([["1","2"],["3","-1/2"]])");
  const Mat<Rational> m = parse_matrix<Rational>(good, kQ, "m");
  CHECK(m(1, 1) == q(-1, 2));
  const json ragged = json::parse(R"([["1","2"],["3"]])");
  try {
    parse_matrix<Rational>(ragged, kQ, "m");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  const json badcell = json::parse(R"([["1","zz"]])");
  try {
    parse_matrix<Rational>(badcell, kQ, "m");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 1") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_matrix<Rational>(json::parse("[[]]"), kQ, "m", 1, 2), ParseError);
  CHECK_THROWS_AS(parse_matrix<Rational>(json::parse("[]"), kQ, "m"), ParseError);
  CHECK(parse_matrix<Rational>(json::parse("[]"), kQ, "m", 0, 3).cols() == 3);
}

TEST_CASE("matrices render canonically and round trip") {
  const Mat<Rational> m = qmat({{1, -2}, {0, 7}});
  const json j = matrix_json(m);
  CHECK(j.dump() == R"([["1","-2"],["0","7"]])");
  CHECK(mat_equal<Rational>(parse_matrix<Rational>(j, kQ, "m"), m));
  CHECK(j.dump() == matrix_json(parse_matrix<Rational>(j, kQ, "m")).dump());
}

TEST_CASE("kronecker input") {
  const json j = json::parse(R"({"alpha": [["0","0"],["1","0"]], "beta": [["0","0"],["0","0"]]})");
  const auto m = parse_kronecker<Rational>(j, kQ);
  CHECK(m.d1() == 2);
  CHECK(m.d2() == 2);
  const json empty = json::parse(R"({"alpha": [], "beta": [], "dims": [3, 0]})");
  const auto e = parse_kronecker<Rational>(empty, kQ);
  CHECK(e.d1() == 3);
  CHECK(e.d2() == 0);
  CHECK_THROWS_AS(parse_kronecker<Rational>(json::parse(R"({"alpha": []})"), kQ), ParseError);
}

TEST_CASE("an input infers the dimension chain") {
  const json j = json::parse(R"({"maps": [[["1"]], [["0"]]]})");
  const auto m = parse_an<Rational>(j, kQ);
  CHECK(m.dims == DimVec{1, 1, 1});
  const json with_dims = json::parse(R"({"maps": [[], []], "dims": [0, 0, 0]})");
  CHECK(parse_an<Rational>(with_dims, kQ).n() == 3);
  const json single = json::parse(R"({"maps": [], "dims": [4]})");
  CHECK(parse_an<Rational>(single, kQ).dims == DimVec{4});
  CHECK_THROWS_AS(parse_an<Rational>(json::parse(R"({"maps": []})"), kQ), ParseError);
  const json mismatched = json::parse(R"({"maps": [[["1"]], [["0","0"]]]})");
  CHECK_THROWS_AS(parse_an<Rational>(mismatched, kQ), ParseError);
}

TEST_CASE("jordan input must be square") {
  CHECK(parse_jordan<Rational>(json::parse(R"({"matrix": [["1"]]})"), kQ)(0, 0) == q(1));
  CHECK(parse_jordan<Rational>(json::parse(R"({"matrix": []})"), kQ).rows() == 0);
  CHECK_THROWS_AS(parse_jordan<Rational>(json::parse(R"({"matrix": [["1","2"]]})"), kQ),
                  ParseError);
}

TEST_CASE("generic-ar input round trips through 1-based vertices") {
  const json j = json::parse(R"({
    "quiver": {"vertices": 2, "arrows": [{"id": 1, "src": 1, "dst": 2}, {"id": 2, "src": 1, "dst": 2}]},
    "module": {"dims": [1, 1], "mats": {"1": [["1"]], "2": [["0"]]}},
    "meshes": [
      {"label": "S2", "source": {"dims": [0, 1]}, "middle": [{"rep": {"dims": [1, 1], "mats": {"1": [["1"]], "2": [["0"]]}}, "mult": 1}]}
    ]
  })");
  const auto in = parse_generic_ar<Rational>(j, kQ);
  CHECK(in.quiver.vertex_count() == 2);
  CHECK(in.module.dims == DimVec{1, 1});
  REQUIRE(in.meshes.size() == 1);
  CHECK(in.meshes[0].label == "S2");
  CHECK(in.meshes[0].source.dims == DimVec{0, 1});
  CHECK(!in.meshes[0].target);
  const json missing = json::parse(R"({
    "quiver": {"vertices": 2, "arrows": [{"id": 1, "src": 1, "dst": 2}]},
    "module": {"dims": [1, 1]},
    "meshes": []
  })");
  CHECK_THROWS_AS(parse_generic_ar<Rational>(missing, kQ), ParseError);
}

TEST_CASE("kronecker label grammar") {
  CHECK(parse_indec_label<Rational>("P3", kQ) == IndecLabel<Rational>::preprojective(3));
  CHECK(parse_indec_label<Rational>("I12", kQ) == IndecLabel<Rational>::preinjective(12));
  CHECK(parse_indec_label<Rational>("R2(1/2)", kQ) ==
        IndecLabel<Rational>::regular(2, RegParam<Rational>::finite(q(1, 2))));
  CHECK(parse_indec_label<Rational>("R1(inf)", kQ) ==
        IndecLabel<Rational>::regular(1, RegParam<Rational>::infinity()));
  for (const auto* bad : {"P0", "Q1", "R1", "R1()", "R(1)", "P", "P3x", "I-1"})
    CHECK_THROWS_AS(parse_indec_label<Rational>(bad, kQ), ParseError);
  // round trip through str()
  for (const auto* s : {"P1", "P7", "I1", "R3(-4/3)", "R2(inf)"})
    CHECK(parse_indec_label<Rational>(s, kQ).str() == s);
}

TEST_CASE("jordan and interval labels") {
  const auto e = parse_jordan_label<Rational>("J3(-1/2)", kQ);
  CHECK(e.size == 3);
  CHECK(e.lambda == q(-1, 2));
  CHECK(jordan_label(e) == "J3(-1/2)");
  const auto p = parse_interval_label("I(2,4)");
  CHECK(p.birth == 2);
  CHECK(p.death == 4);
  CHECK(interval_label(p) == "I(2,4)");
  CHECK_THROWS_AS(parse_jordan_label<Rational>("J0(1)", kQ), ParseError);
  CHECK_THROWS_AS(parse_interval_label("I(4,2)"), ParseError);
  CHECK_THROWS_AS(parse_interval_label("I(2)"), ParseError);
}

TEST_CASE("result documents are byte-stable") {
  const KroneckerModule<Rational> m(qmat({{0, 0}, {1, 0}}), qmat({{0, 0}, {0, 0}}));
  const auto dec = decompose(m, DecomposeMode::Split);
  const auto sup = support_set(m);
  const json a = kronecker_result_json(m, dec, std::optional<SupportSet<Rational>>(sup), kQ);
  const json b = kronecker_result_json(m, dec, std::optional<SupportSet<Rational>>(sup), kQ);
  CHECK(a.dump(2) == b.dump(2));
  CHECK(a.at("checks").at("dimension_conservation").get<bool>());
  CHECK(a.at("decomposition").size() == 3);
  CHECK(a.at("support_set").size() == 5);
}

TEST_CASE("plot data") {
  PersistenceDiagram pd;
  pd.points = {{1, 2, 1}, {3, 3, 2}};
  CHECK(plot_tsv(pd) == "birth\tdeath\tmultiplicity\n1\t2\t1\n3\t3\t2\n");
}
