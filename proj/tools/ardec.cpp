// Batch interface: read a module file, run the requested solver, emit the
// decomposition (and support set / plot data) as machine-readable JSON.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ardec/io.hpp"
#include "ardec/planted.hpp"
#include "ardec/util.hpp"

namespace {

using namespace ardec;

struct JobConfig {
  std::string input_path;
  std::string output_path;  // empty = stdout
  std::string solver = "auto";
  std::string field = "q";
  std::string mode = "split";
  int jobs = 1;
  bool verify = false;
  bool require_split = false;
  bool emit_witnesses = false;
  std::string emit_plot;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << data;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string detect_solver(const json& j) {
  if (j.contains("alpha") && j.contains("beta")) return "kronecker";
  if (j.contains("maps")) return "an";
  if (j.contains("matrix")) return "jordan";
  if (j.contains("quiver")) return "generic-ar";
  throw ParseError("cannot detect solver from input keys (expected alpha/beta, maps, matrix, or quiver)");
}

void emit(const JobConfig& cfg, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output_path.empty())
    std::cout << text;
  else
    write_file(cfg.output_path, text);
}

// Re-reads the emitted document and checks that the decomposition, together
// with any non-split deficit, re-sums to the input's dimension vector.
void verify_doc(const json& doc) {
  const DimVec input_dims = doc.at("input_dims").get<DimVec>();
  DimVec covered(input_dims.size(), 0);
  for (const auto& e : doc.at("decomposition")) {
    const DimVec d = e.at("dims").get<DimVec>();
    const Index mult = e.at("multiplicity").get<Index>();
    if (d.size() == 1 && input_dims.size() == 1) {
      covered[0] += mult * d[0];
    } else {
      if (d.size() != input_dims.size())
        throw ConsistencyError("verify: entry dimension vector has wrong length");
      for (std::size_t v = 0; v < d.size(); ++v) covered[v] += mult * d[v];
    }
  }
  for (const auto& w : doc.at("warnings")) {
    if (!w.contains("deficit")) continue;
    const DimVec d = w.at("deficit").get<DimVec>();
    if (d.size() != input_dims.size())
      throw ConsistencyError("verify: warning deficit has wrong length");
    for (std::size_t v = 0; v < d.size(); ++v) covered[v] += d[v];
  }
  if (!dims_equal(covered, input_dims))
    throw ConsistencyError("verify: decomposition sums to " + dims_str(covered) +
                           " but the input has " + dims_str(input_dims));
}

template <class K>
json split_witnesses_json(const SplitWitnesses<K>& w) {
  auto bases = [](const std::vector<Mat<K>>& bs) {
    json out = json::array();
    for (const auto& b : bs) out.push_back(matrix_json(b));
    return out;
  };
  json out;
  out["reject_basis"] = bases(w.reject_basis);
  out["trace_basis"] = bases(w.trace_basis);
  out["rinf_basis"] = bases(w.rinf_basis);
  out["rprime_basis"] = bases(w.rprime_basis);
  out["hom_counts"] = {{"M_to_P", w.hom_M_to_P},
                       {"I_to_RI", w.hom_I_to_RI},
                       {"Rinf_to_R", w.hom_Rinf_to_R},
                       {"R_to_Rinf", w.hom_R_to_Rinf}};
  return out;
}

template <class K>
json run_decompose_typed(const JobConfig& cfg, const json& input, const FieldSpec& field,
                         const std::string& solver) {
  if (solver == "kronecker") {
    const KroneckerModule<K> m = parse_kronecker<K>(input, field);
    const SupportSet<K> support = support_set(m);
    const KroneckerDecomposition<K> dec =
        cfg.mode == "direct" ? decompose_direct(m, cfg.jobs) : decompose_split(m);
    json doc = kronecker_result_json(m, dec, std::optional<SupportSet<K>>(support), field);
    if (cfg.emit_witnesses) doc["witnesses"] = split_witnesses_json(split_parts(m).witnesses);
    return doc;
  }
  if (solver == "jordan") {
    const Mat<K> m = parse_jordan<K>(input, field);
    return jordan_result_json(m, jordan_decompose(m), field);
  }
  if (solver == "an") {
    const AnModule<K> m = parse_an<K>(input, field);
    const PersistenceDiagram pd = an_diagram(m);
    json doc = an_result_json(m, pd, field);
    if (!cfg.emit_plot.empty()) write_file(cfg.emit_plot, plot_tsv(pd));
    return doc;
  }
  if (solver == "generic-ar") {
    GenericArInput<K> in = parse_generic_ar<K>(input, field);
    const Decomposition<K> dec = decompose_with_ar(in.module, in.meshes, cfg.jobs);
    return generic_ar_result_json(in.module, dec, field);
  }
  throw ParseError("unknown solver '" + solver + "'");
}

int run_decompose(const JobConfig& cfg) {
  const FieldSpec field = FieldSpec::parse(cfg.field);
  const json input = parse_json(read_file(cfg.input_path), cfg.input_path);
  const std::string solver = cfg.solver == "auto" ? detect_solver(input) : cfg.solver;
  if (!cfg.emit_plot.empty() && solver != "an")
    throw ParseError("--emit-plot is only meaningful for the an solver");
  log_note(1, "solver=" + solver + " field=" + field.str() + " mode=" + cfg.mode);

  json doc = field.rational ? run_decompose_typed<Rational>(cfg, input, field, solver)
                            : run_decompose_typed<Fp>(cfg, input, field, solver);

  if (cfg.require_split && !doc.at("warnings").empty()) {
    for (const auto& w : doc.at("warnings"))
      if (w.at("code").get<std::string>().rfind("non_split", 0) == 0) {
        std::cerr << "error: " << w.at("message").get<std::string>() << "\n";
        emit(cfg, doc);
        return 4;
      }
  }
  emit(cfg, doc);
  if (cfg.verify) {
    const json reread = cfg.output_path.empty()
                            ? doc
                            : parse_json(read_file(cfg.output_path), cfg.output_path);
    verify_doc(reread);
    log_note(1, "round-trip verification passed");
  }
  return 0;
}

template <class K>
json run_support_typed(const json& input, const FieldSpec& field) {
  const KroneckerModule<K> m = parse_kronecker<K>(input, field);
  const SupportSet<K> support = support_set(m);
  json doc;
  doc["solver"] = "kronecker";
  doc["field"] = field.str();
  doc["input_dims"] = m.dims();
  json labels = json::array();
  for (const auto& l : support.labels) labels.push_back(l.str());
  doc["support_set"] = std::move(labels);
  json warnings = json::array();
  if (!support.nonsplit.is_one()) {
    const Index gap = support.nonsplit.degree();
    warnings.push_back(
        nonsplit_warning_json(support.nonsplit, DimVec{gap, gap}, "non_split_regular_part"));
  }
  doc["warnings"] = std::move(warnings);
  return doc;
}

int run_support(const JobConfig& cfg) {
  const FieldSpec field = FieldSpec::parse(cfg.field);
  const json input = parse_json(read_file(cfg.input_path), cfg.input_path);
  emit(cfg, field.rational ? run_support_typed<Rational>(input, field)
                           : run_support_typed<Fp>(input, field));
  return 0;
}

struct PlantConfig {
  std::string solver;
  std::string summands;
  std::string output_path;
  std::string field = "q";
  std::uint64_t seed = 0;
  Index n = 0;  // ambient n for an
};

std::vector<std::pair<std::string, Index>> parse_summands(const std::string& s) {
  std::vector<std::pair<std::string, Index>> out;
  std::vector<std::string> items;
  std::string item;
  int depth = 0;
  for (const char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  items.push_back(item);
  for (std::string& raw : items) {
    item = raw;
    if (item.empty()) continue;
    const auto colon = item.rfind(':');
    Index mult = 1;
    std::string label = item;
    if (colon != std::string::npos && item.find('(', colon) == std::string::npos) {
      label = item.substr(0, colon);
      try {
        mult = std::stol(item.substr(colon + 1));
      } catch (...) {
        throw ParseError("bad multiplicity in '" + item + "'");
      }
      if (mult < 1) throw ParseError("multiplicity must be >= 1 in '" + item + "'");
    }
    out.emplace_back(label, mult);
  }
  if (out.empty()) throw ParseError("empty summand list");
  return out;
}

template <class K>
json run_plant_typed(const PlantConfig& cfg, const FieldSpec& field) {
  const auto items = parse_summands(cfg.summands);
  K hint(0);
  if constexpr (std::is_same_v<K, Fp>) hint = K(0, field.p);
  json planted;
  planted["seed"] = cfg.seed;
  json names = json::array();
  for (const auto& [label, mult] : items) names.push_back(label + ":" + std::to_string(mult));
  planted["summands"] = std::move(names);

  json doc;
  if (cfg.solver == "kronecker") {
    std::vector<std::pair<IndecLabel<K>, Index>> labels;
    for (const auto& [s, mult] : items)
      labels.emplace_back(parse_indec_label<K>(s, field), mult);
    auto pl = plant_kronecker<K>(labels, cfg.seed, hint);
    doc["alpha"] = matrix_json(pl.module.alpha);
    doc["beta"] = matrix_json(pl.module.beta);
    doc["dims"] = pl.module.dims();
  } else if (cfg.solver == "jordan") {
    std::vector<JordanEntry<K>> cells;
    for (const auto& [s, mult] : items) {
      JordanEntry<K> e = parse_jordan_label<K>(s, field);
      e.multiplicity = mult;
      cells.push_back(std::move(e));
    }
    auto pl = plant_jordan<K>(cells, cfg.seed, hint);
    doc["matrix"] = matrix_json(pl.module);
  } else if (cfg.solver == "an") {
    std::vector<DiagramPoint> points;
    Index max_d = 1;
    for (const auto& [s, mult] : items) {
      DiagramPoint p = parse_interval_label(s);
      p.multiplicity = mult;
      max_d = std::max(max_d, p.death);
      points.push_back(p);
    }
    const Index n = cfg.n > 0 ? cfg.n : max_d;
    if (n < max_d) throw ParseError("--n smaller than the largest death index");
    auto pl = plant_an<K>(n, points, cfg.seed, hint);
    json maps = json::array();
    for (const auto& m : pl.module.maps) maps.push_back(matrix_json(m));
    doc["maps"] = std::move(maps);
    doc["dims"] = pl.module.dims;
  } else {
    throw ParseError("plant supports solvers kronecker, jordan, an");
  }
  doc["planted"] = std::move(planted);
  return doc;
}

int run_plant(const PlantConfig& cfg) {
  const FieldSpec field = FieldSpec::parse(cfg.field);
  const json doc = field.rational ? run_plant_typed<Rational>(cfg, field)
                                  : run_plant_typed<Fp>(cfg, field);
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output_path.empty())
    std::cout << text;
  else
    write_file(cfg.output_path, text);
  return 0;
}

struct VerifyConfig {
  std::string result_path;
  std::string against_path;
  std::string field = "q";
  std::string solver = "auto";
};

template <class K>
DimVec input_dims_typed(const json& input, const FieldSpec& field, const std::string& solver) {
  if (solver == "kronecker") return parse_kronecker<K>(input, field).dims();
  if (solver == "jordan") return DimVec{parse_jordan<K>(input, field).rows()};
  if (solver == "an") return parse_an<K>(input, field).dims;
  if (solver == "generic-ar") return parse_generic_ar<K>(input, field).module.dims;
  throw ParseError("unknown solver '" + solver + "'");
}

int run_verify(const VerifyConfig& cfg) {
  const FieldSpec field = FieldSpec::parse(cfg.field);
  const json result = parse_json(read_file(cfg.result_path), cfg.result_path);
  verify_doc(result);
  if (!cfg.against_path.empty()) {
    const json input = parse_json(read_file(cfg.against_path), cfg.against_path);
    const std::string solver = cfg.solver == "auto" ? detect_solver(input) : cfg.solver;
    const DimVec dims = field.rational ? input_dims_typed<Rational>(input, field, solver)
                                       : input_dims_typed<Fp>(input, field, solver);
    const DimVec recorded = result.at("input_dims").get<DimVec>();
    if (!dims_equal(dims, recorded))
      throw ConsistencyError("verify: result records input dims " + dims_str(recorded) +
                             " but the input file has " + dims_str(dims));
  }
  std::cout << "ok\n";
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact indecomposable decomposition of quiver representations"};
  app.require_subcommand(1);

  JobConfig dc;
  CLI::App* dec = app.add_subcommand("decompose", "decompose a module into indecomposables");
  dec->add_option("input", dc.input_path, "input JSON file")->required();
  dec->add_option("-o,--output", dc.output_path, "output path (default: stdout)");
  dec->add_option("--solver", dc.solver, "auto|jordan|an|kronecker|generic-ar")
      ->check(CLI::IsMember({"auto", "jordan", "an", "kronecker", "generic-ar"}));
  dec->add_option("--field", dc.field, "q or fp:<p>");
  dec->add_option("--mode", dc.mode, "kronecker evaluation mode")
      ->check(CLI::IsMember({"split", "direct"}));
  dec->add_option("--jobs", dc.jobs, "parallel rank jobs");
  dec->add_flag("--verify", dc.verify, "re-read the output and re-check dimension conservation");
  dec->add_flag("--require-split", dc.require_split,
                "fail (exit 4) when the regular part does not split over the field");
  dec->add_flag("--emit-witnesses", dc.emit_witnesses,
                "include the trace/reject bases used by the kronecker split");
  dec->add_option("--emit-plot", dc.emit_plot, "write birth/death/multiplicity TSV (an only)");

  JobConfig sc;
  CLI::App* sup = app.add_subcommand("support", "finite support candidate set (kronecker)");
  sup->add_option("input", sc.input_path, "input JSON file")->required();
  sup->add_option("-o,--output", sc.output_path, "output path (default: stdout)");
  sup->add_option("--field", sc.field, "q or fp:<p>");

  PlantConfig pc;
  CLI::App* plant = app.add_subcommand("plant", "generate a seeded planted fixture");
  plant->add_option("solver", pc.solver, "kronecker|jordan|an")->required();
  plant->add_option("summands", pc.summands, "e.g. \"P3:1,R1(0):2,I2:1\"")->required();
  plant->add_option("--seed", pc.seed, "PRNG seed");
  plant->add_option("--n", pc.n, "ambient chain length for an");
  plant->add_option("-o,--output", pc.output_path, "output path (default: stdout)");
  plant->add_option("--field", pc.field, "q or fp:<p>");

  VerifyConfig vc;
  CLI::App* ver = app.add_subcommand("verify", "re-check a result document");
  ver->add_option("result", vc.result_path, "result JSON file")->required();
  ver->add_option("--against", vc.against_path, "original input file");
  ver->add_option("--field", vc.field, "q or fp:<p>");
  ver->add_option("--solver", vc.solver, "solver for the input file");

  CLI11_PARSE(app, argc, argv);

  if (dec->parsed()) return run_decompose(dc);
  if (sup->parsed()) return run_support(sc);
  if (plant->parsed()) return run_plant(pc);
  return run_verify(vc);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ardec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ardec::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 3;
  } catch (const ardec::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 3;
  } catch (const ardec::CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << "\n";
    return 3;
  } catch (const ardec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
