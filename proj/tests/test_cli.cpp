#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ardec/io.hpp"
#include "test_helpers.hpp"

using namespace ardec;

namespace {

const std::string kCli = ARDEC_CLI_PATH;

struct RunResult {
  int status;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string tmp_path(const std::string& name) {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/ardec_cli_XXXXXX";
    return std::string(mkdtemp(tmpl));
  }();
  return dir + "/" + name;
}

RunResult run(const std::string& args) {
  const std::string out_path = tmp_path("stdout.txt");
  const int rc = std::system((kCli + " " + args + " > " + out_path + " 2>/dev/null").c_str());
  return {WEXITSTATUS(rc), slurp(out_path)};
}

}  // namespace

TEST_CASE("decompose the preprojective fixture and read back the rank table") {
  const std::string in = tmp_path("p3.json");
  spit(in, R"({"alpha": [["1","0"],["0","1"],["0","0"]],
               "beta":  [["0","0"],["1","0"],["0","1"]]})");
  const auto res = run("decompose " + in + " --solver kronecker --mode direct");
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc.at("decomposition").size() == 1);
  CHECK(doc.at("decomposition")[0].at("label") == "P3");
  CHECK(doc.at("decomposition")[0].at("multiplicity") == 1);
  CHECK(doc.at("checks").at("dimension_conservation").get<bool>());
  const auto& p = doc.at("rank_tables").at("p");
  CHECK(p.at("1") == 0);
  CHECK(p.at("2") == 3);
  CHECK(p.at("3") == 6);
  CHECK(p.at("4") == 8);
  CHECK(p.at("5") == 10);
}

TEST_CASE("decompose and support on the trace/reject worked example") {
  const std::string in = tmp_path("worked.json");
  spit(in, R"({"alpha": [["0","0"],["1","0"]], "beta": [["0","0"],["0","0"]]})");
  const auto res = run("decompose " + in + " --verify");
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  CHECK(doc.at("support_set") == json::parse(R"js(["P1","P2","I1","I2","R1(0)"])js"));
  REQUIRE(doc.at("decomposition").size() == 3);
  CHECK(doc.at("decomposition")[0].at("label") == "P1");
  CHECK(doc.at("decomposition")[1].at("label") == "I1");
  CHECK(doc.at("decomposition")[2].at("label") == "R1(0)");
  const auto sup = run("support " + in);
  REQUIRE(sup.status == 0);
  CHECK(json::parse(sup.out).at("support_set").size() == 5);
}

TEST_CASE("malformed rows exit with code 2 and a located diagnostic") {
  const std::string in = tmp_path("ragged.json");
  spit(in, R"({"alpha": [["1","0"],["0"]], "beta": [["0","0"],["0","0"]]})");
  const std::string err_path = tmp_path("stderr.txt");
  const int rc = std::system(
      (kCli + " decompose " + in + " > /dev/null 2> " + err_path).c_str());
  CHECK(WEXITSTATUS(rc) == 2);
  const std::string err = slurp(err_path);
  CHECK(err.find("row 2") != std::string::npos);
}

TEST_CASE("non-split module: warning by default, exit 4 under --require-split") {
  const std::string in = tmp_path("nonsplit.json");
  spit(in, R"({"alpha": [["1","0"],["0","1"]], "beta": [["0","2"],["1","0"]]})");
  const auto res = run("decompose " + in);
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc.at("warnings").size() == 1);
  CHECK(doc.at("warnings")[0].at("code") == "non_split_regular_part");
  CHECK(doc.at("warnings")[0].at("nonsplit") == json::parse(R"(["-2","0","1"])"));
  CHECK(doc.at("decomposition").empty());
  CHECK(doc.at("checks").at("dimension_conservation").get<bool>());
  CHECK(run("decompose " + in + " --require-split").status == 4);
  const auto sup = run("support " + in);
  REQUIRE(sup.status == 0);
  CHECK(json::parse(sup.out).at("warnings").size() == 1);
  // the same module splits over F_7
  const auto res7 = run("decompose " + in + " --field fp:7");
  REQUIRE(res7.status == 0);
  const json doc7 = json::parse(res7.out);
  CHECK(doc7.at("warnings").empty());
  REQUIRE(doc7.at("decomposition").size() == 2);
  CHECK(doc7.at("decomposition")[0].at("label") == "R1(3)");
  CHECK(doc7.at("decomposition")[1].at("label") == "R1(4)");
}

TEST_CASE("plant then decompose recovers the summands") {
  const std::string fix = tmp_path("fixture.json");
  REQUIRE(run("plant kronecker \"P2:1,R1(-1):2,I1:1\" --seed 9 -o " + fix).status == 0);
  const auto res = run("decompose " + fix + " --mode split");
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  json got = json::object();
  for (const auto& e : doc.at("decomposition"))
    got[e.at("label").get<std::string>()] = e.at("multiplicity");
  CHECK(got == json::parse(R"js({"P2": 1, "R1(-1)": 2, "I1": 1})js"));
}

TEST_CASE("jordan solver through the CLI") {
  const std::string fix = tmp_path("jordan.json");
  REQUIRE(run("plant jordan \"J2(0):1,J1(3):2\" --seed 4 -o " + fix).status == 0);
  const auto res = run("decompose " + fix + " --solver jordan");
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  json got = json::object();
  for (const auto& e : doc.at("decomposition"))
    got[e.at("label").get<std::string>()] = e.at("multiplicity");
  CHECK(got == json::parse(R"js({"J2(0)": 1, "J1(3)": 2})js"));
}

TEST_CASE("an solver emits plot data") {
  const std::string fix = tmp_path("an.json");
  REQUIRE(run("plant an \"I(1,2):1,I(3,3):1\" --n 3 --seed 5 -o " + fix).status == 0);
  const std::string plot = tmp_path("plot.tsv");
  const std::string out = tmp_path("an_out.json");
  const auto res = run("decompose " + fix + " -o " + out + " --emit-plot " + plot + " --verify");
  REQUIRE(res.status == 0);
  CHECK(slurp(plot) == "birth\tdeath\tmultiplicity\n1\t2\t1\n3\t3\t1\n");
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("solver") == "an");
  CHECK(doc.at("decomposition").size() == 2);
}

TEST_CASE("generic-ar solver on a caller-supplied mesh file") {
  // the worked example with the five candidate meshes, all as explicit data
  const FieldSpec field{};
  const KroneckerModule<Rational> m(ardec::testing::qmat({{0, 0}, {1, 0}}),
                                    ardec::testing::qmat({{0, 0}, {0, 0}}));
  json doc;
  doc["quiver"] = {{"vertices", 2},
                   {"arrows", json::array({{{"id", 1}, {"src", 1}, {"dst", 2}},
                                           {{"id", 2}, {"src", 1}, {"dst", 2}}})}};
  auto rep_json = [&](const QuiverRep<Rational>& r) {
    json out;
    out["dims"] = r.dims;
    json mats = json::object();
    mats["1"] = matrix_json(r.mats[0]);
    mats["2"] = matrix_json(r.mats[1]);
    out["mats"] = std::move(mats);
    return out;
  };
  doc["module"] = rep_json(to_rep(m));
  json meshes = json::array();
  using LQ = IndecLabel<Rational>;
  for (const auto& label : {LQ::preprojective(1), LQ::preprojective(2), LQ::preinjective(1),
                            LQ::preinjective(2),
                            LQ::regular(1, RegParam<Rational>::finite(Rational(0)))}) {
    const auto mesh = kronecker_mesh<Rational>(label);
    json mj;
    mj["label"] = mesh.label;
    mj["source"] = rep_json(mesh.source);
    json middle = json::array();
    for (const auto& [x, a] : mesh.middle)
      middle.push_back(json{{"rep", rep_json(x)}, {"mult", a}});
    mj["middle"] = std::move(middle);
    if (mesh.target) mj["target"] = rep_json(*mesh.target);
    meshes.push_back(std::move(mj));
  }
  doc["meshes"] = std::move(meshes);
  const std::string in = tmp_path("generic.json");
  spit(in, doc.dump(2));
  const auto res = run("decompose " + in + " --solver generic-ar");
  REQUIRE(res.status == 0);
  const json out = json::parse(res.out);
  json got = json::object();
  for (const auto& e : out.at("decomposition"))
    got[e.at("label").get<std::string>()] = e.at("multiplicity");
  CHECK(got == json::parse(R"js({"P1": 1, "I1": 1, "R1(0)": 1})js"));
}

TEST_CASE("output is byte-stable and independent of the job count") {
  const std::string in = tmp_path("stable.json");
  spit(in, R"({"alpha": [["0","0"],["1","0"]], "beta": [["0","0"],["0","0"]]})");
  const auto once = run("decompose " + in + " --mode direct");
  const auto twice = run("decompose " + in + " --mode direct");
  const auto threaded = run("decompose " + in + " --mode direct --jobs 3");
  REQUIRE(once.status == 0);
  CHECK(once.out == twice.out);
  CHECK(once.out == threaded.out);
}

TEST_CASE("split witnesses are exported on request") {
  const std::string in = tmp_path("wit.json");
  spit(in, R"({"alpha": [["0","0"],["1","0"]], "beta": [["0","0"],["0","0"]]})");
  const auto res = run("decompose " + in + " --emit-witnesses");
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc.contains("witnesses"));
  const auto& w = doc.at("witnesses");
  CHECK(w.at("reject_basis").size() == 2);
  CHECK(w.at("reject_basis")[0].size() == 2);  // 2x2 basis matrix at vertex 1
  CHECK(w.at("hom_counts").at("M_to_P") == 2);
}

TEST_CASE("jordan non-split factors warn and honour --require-split") {
  const std::string in = tmp_path("jns.json");
  spit(in, R"({"matrix": [["0","2"],["1","0"]]})");
  const auto res = run("decompose " + in);
  REQUIRE(res.status == 0);
  const json doc = json::parse(res.out);
  CHECK(doc.at("decomposition").empty());
  REQUIRE(doc.at("warnings").size() == 1);
  CHECK(doc.at("warnings")[0].at("code") == "non_split_factor");
  CHECK(doc.at("checks").at("dimension_conservation").get<bool>());
  CHECK(run("decompose " + in + " --require-split").status == 4);
  // and over F_2 the same matrix is a nilpotent square: (x-0)^2... x^2-2 = x^2 mod 2
  const auto res2 = run("decompose " + in + " --field fp:2");
  REQUIRE(res2.status == 0);
  CHECK(json::parse(res2.out).at("decomposition").size() == 1);
}

TEST_CASE("verify subcommand checks results against inputs") {
  const std::string in = tmp_path("verify_in.json");
  spit(in, R"({"alpha": [["0","0"],["1","0"]], "beta": [["0","0"],["0","0"]]})");
  const std::string out = tmp_path("verify_out.json");
  REQUIRE(run("decompose " + in + " -o " + out).status == 0);
  CHECK(run("verify " + out + " --against " + in).status == 0);
  // tamper with a multiplicity: the re-summed dimensions no longer match
  json doc = json::parse(slurp(out));
  doc["decomposition"][0]["multiplicity"] = 5;
  spit(out, doc.dump(2));
  CHECK(run("verify " + out + " --against " + in).status == 3);
}

TEST_CASE("diagnostics go to stderr when DECOMP_LOG is set") {
  const std::string in = tmp_path("log_in.json");
  spit(in, R"({"matrix": [["1"]]})");
  const std::string err_path = tmp_path("log_err.txt");
  const int rc = std::system(
      ("DECOMP_LOG=1 " + kCli + " decompose " + in + " > /dev/null 2> " + err_path).c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(slurp(err_path).find("[ardec]") != std::string::npos);
}

TEST_CASE("unknown input shape exits 2") {
  const std::string in = tmp_path("unknown.json");
  spit(in, R"({"foo": 1})");
  CHECK(run("decompose " + in).status == 2);
  spit(in, "{not json");
  CHECK(run("decompose " + in).status == 2);
  CHECK(run("decompose /nonexistent/file.json").status == 2);
}
