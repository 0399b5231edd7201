#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ardec/an_persistence.hpp"
#include "ardec/jordan.hpp"
#include "ardec/kronecker.hpp"
#include "ardec/quiver.hpp"

// JSON input/output. One self-describing container serves all four solvers:
// matrices are arrays of arrays of rational strings ("3", "-1/2"; bare JSON
// integers are accepted too), Kronecker input uses keys "alpha"/"beta", A_n
// uses "maps", k[x] uses "matrix", and the generic AR solver uses
// "quiver"/"module"/"meshes". Rationals render canonically as "p/q" with
// q > 0 ("p" when q = 1) and the infinite parameter renders as "inf".

namespace ardec {

using nlohmann::json;

struct FieldSpec {
  bool rational = true;
  unsigned long p = 0;

  static FieldSpec parse(const std::string& s) {
    if (s == "q") return {};
    if (s.rfind("fp:", 0) == 0) {
      unsigned long p = 0;
      try {
        p = std::stoul(s.substr(3));
      } catch (...) {
        throw ParseError("bad field spec '" + s + "'");
      }
      if (!is_prime_modulus(p))
        throw ParseError("field spec '" + s + "': modulus must be a prime < 2^31");
      return {false, p};
    }
    throw ParseError("bad field spec '" + s + "' (expected q or fp:<p>)");
  }

  std::string str() const { return rational ? "q" : "fp:" + std::to_string(p); }
};

namespace detail {

inline Rational parse_rational_token(const std::string& tok, const std::string& where) {
  auto r = Rational::parse(tok);
  if (!r) throw ParseError(where + ": bad rational literal '" + tok + "'");
  return *r;
}

}  // namespace detail

template <class K>
K parse_scalar(const json& j, const FieldSpec& field, const std::string& where) {
  std::string tok;
  if (j.is_string())
    tok = j.get<std::string>();
  else if (j.is_number_integer())
    tok = std::to_string(j.get<long long>());
  else
    throw ParseError(where + ": expected a rational string or integer");
  const Rational q = detail::parse_rational_token(tok, where);
  if constexpr (std::is_same_v<K, Rational>) {
    (void)field;
    return q;
  } else {
    const unsigned long p = field.p;
    const long long num = static_cast<long long>(mpz_fdiv_ui(q.num().get_mpz_t(), p));
    const long long den = static_cast<long long>(mpz_fdiv_ui(q.den().get_mpz_t(), p));
    if (den == 0)
      throw ParseError(where + ": denominator of '" + tok + "' vanishes mod " + std::to_string(p));
    return K(num, p) / K(den, p);
  }
}

template <class K>
std::string scalar_str(const K& x) {
  return x.str();
}

// rows/cols < 0 mean "infer from the data"; an empty matrix needs both hints.
template <class K>
Mat<K> parse_matrix(const json& j, const FieldSpec& field, const std::string& where,
                    Index rows = -1, Index cols = -1) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  const Index nrows = static_cast<Index>(j.size());
  if (rows >= 0 && nrows != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows, found " +
                     std::to_string(nrows));
  Index ncols = cols;
  if (nrows > 0) {
    if (!j[0].is_array()) throw ParseError(where + ": row 1 is not an array");
    const Index c0 = static_cast<Index>(j[0].size());
    if (ncols >= 0 && c0 != ncols)
      throw ParseError(where + ": row 1 has " + std::to_string(c0) + " entries, expected " +
                       std::to_string(ncols));
    ncols = c0;
  }
  if (ncols < 0) {
    if (nrows == 0) throw ParseError(where + ": empty matrix needs explicit dims");
    ncols = 0;
  }
  Mat<K> m = zero_mat<K>(nrows, ncols);
  for (Index i = 0; i < nrows; ++i) {
    if (!j[i].is_array())
      throw ParseError(where + ": row " + std::to_string(i + 1) + " is not an array");
    if (static_cast<Index>(j[i].size()) != ncols)
      throw ParseError(where + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(j[i].size()) + " entries, expected " +
                       std::to_string(ncols));
    for (Index c = 0; c < ncols; ++c)
      m(i, c) = parse_scalar<K>(j[i][c], field,
                                where + ", row " + std::to_string(i + 1) + " column " +
                                    std::to_string(c + 1));
  }
  return m;
}

template <class K>
json matrix_json(const Mat<K>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(scalar_str(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- solver inputs --------------------------------------------------------

template <class K>
KroneckerModule<K> parse_kronecker(const json& j, const FieldSpec& field) {
  if (!j.contains("alpha") || !j.contains("beta"))
    throw ParseError("kronecker input needs 'alpha' and 'beta'");
  Index d1 = -1, d2 = -1;
  if (j.contains("dims")) {
    const auto& d = j.at("dims");
    if (!d.is_array() || d.size() != 2) throw ParseError("'dims' must be [d1, d2]");
    d1 = d[0].get<Index>();
    d2 = d[1].get<Index>();
  }
  Mat<K> alpha = parse_matrix<K>(j.at("alpha"), field, "alpha", d2, d1);
  Mat<K> beta = parse_matrix<K>(j.at("beta"), field, "beta", alpha.rows(), alpha.cols());
  return KroneckerModule<K>(std::move(alpha), std::move(beta));
}

template <class K>
AnModule<K> parse_an(const json& j, const FieldSpec& field) {
  if (!j.contains("maps")) throw ParseError("a_n input needs 'maps'");
  const auto& maps_j = j.at("maps");
  if (!maps_j.is_array()) throw ParseError("'maps' must be an array of matrices");
  DimVec dims;
  if (j.contains("dims")) {
    const auto& d = j.at("dims");
    if (!d.is_array() || d.empty()) throw ParseError("'dims' must be a nonempty array");
    for (const auto& x : d) dims.push_back(x.get<Index>());
    if (dims.size() != maps_j.size() + 1)
      throw ParseError("'dims' length must be one more than the number of maps");
  }
  std::vector<Mat<K>> maps;
  for (std::size_t i = 0; i < maps_j.size(); ++i) {
    const Index r = dims.empty() ? -1 : dims[i + 1];
    const Index c = dims.empty() ? (maps.empty() ? -1 : maps.back().rows()) : dims[i];
    maps.push_back(parse_matrix<K>(maps_j[i], field, "maps[" + std::to_string(i + 1) + "]", r, c));
  }
  if (dims.empty()) {
    if (maps.empty()) throw ParseError("a_n input with no maps needs explicit 'dims'");
    dims.push_back(maps[0].cols());
    for (const auto& m : maps) dims.push_back(m.rows());
  }
  return AnModule<K>(std::move(dims), std::move(maps));
}

template <class K>
Mat<K> parse_jordan(const json& j, const FieldSpec& field) {
  if (!j.contains("matrix")) throw ParseError("jordan input needs 'matrix'");
  if (j.at("matrix").is_array() && j.at("matrix").empty()) return zero_mat<K>(0, 0);
  Mat<K> m = parse_matrix<K>(j.at("matrix"), field, "matrix", -1, -1);
  if (m.cols() != m.rows()) throw ParseError("jordan 'matrix' must be square");
  return m;
}

// ---- generic AR input -----------------------------------------------------

inline Quiver parse_quiver(const json& j) {
  if (!j.contains("vertices") || !j.contains("arrows"))
    throw ParseError("'quiver' needs 'vertices' and 'arrows'");
  const Index nv = j.at("vertices").get<Index>();
  std::vector<Arrow> arrows;
  for (const auto& a : j.at("arrows")) {
    if (!a.contains("id") || !a.contains("src") || !a.contains("dst"))
      throw ParseError("each arrow needs 'id', 'src', 'dst'");
    const Index src = a.at("src").get<Index>(), dst = a.at("dst").get<Index>();
    if (src < 1 || src > nv || dst < 1 || dst > nv)
      throw ParseError("arrow endpoints must be in [1, vertices]");
    arrows.push_back({a.at("id").get<int>(), src - 1, dst - 1});
  }
  try {
    return Quiver(nv, std::move(arrows));
  } catch (const Error& e) {
    throw ParseError(std::string("bad quiver: ") + e.what());
  }
}

template <class K>
QuiverRep<K> parse_rep(const json& j, const Quiver& q, const FieldSpec& field,
                       const std::string& where) {
  if (!j.contains("dims")) throw ParseError(where + ": representation needs 'dims'");
  DimVec dims;
  for (const auto& x : j.at("dims")) dims.push_back(x.get<Index>());
  if (static_cast<Index>(dims.size()) != q.vertex_count())
    throw ParseError(where + ": 'dims' length must equal the vertex count");
  std::vector<Mat<K>> mats;
  const json mats_j = j.contains("mats") ? j.at("mats") : json::object();
  for (const Arrow& a : q.arrows()) {
    const std::string key = std::to_string(a.id);
    const Index r = dims[a.dst], c = dims[a.src];
    if (mats_j.contains(key)) {
      mats.push_back(parse_matrix<K>(mats_j.at(key), field, where + ", arrow " + key, r, c));
    } else if (r == 0 || c == 0) {
      mats.push_back(zero_mat<K>(r, c));
    } else {
      throw ParseError(where + ": missing matrix for arrow " + key);
    }
  }
  try {
    return QuiverRep<K>(q, std::move(dims), std::move(mats));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

template <class K>
struct GenericArInput {
  Quiver quiver;
  QuiverRep<K> module;
  std::vector<ARMesh<K>> meshes;
};

template <class K>
GenericArInput<K> parse_generic_ar(const json& j, const FieldSpec& field) {
  if (!j.contains("quiver") || !j.contains("module") || !j.contains("meshes"))
    throw ParseError("generic-ar input needs 'quiver', 'module' and 'meshes'");
  Quiver q = parse_quiver(j.at("quiver"));
  QuiverRep<K> module = parse_rep<K>(j.at("module"), q, field, "module");
  std::vector<ARMesh<K>> meshes;
  const auto& meshes_j = j.at("meshes");
  if (!meshes_j.is_array()) throw ParseError("'meshes' must be an array");
  for (std::size_t i = 0; i < meshes_j.size(); ++i) {
    const auto& mj = meshes_j[i];
    const std::string where = "meshes[" + std::to_string(i + 1) + "]";
    if (!mj.contains("source")) throw ParseError(where + ": needs 'source'");
    ARMesh<K> mesh{mj.contains("label") ? mj.at("label").get<std::string>()
                                        : "L" + std::to_string(i + 1),
                   parse_rep<K>(mj.at("source"), q, field, where + ".source"),
                   {},
                   std::nullopt};
    if (mj.contains("middle")) {
      for (const auto& xm : mj.at("middle")) {
        if (!xm.contains("rep")) throw ParseError(where + ": middle term needs 'rep'");
        const Index mult = xm.contains("mult") ? xm.at("mult").get<Index>() : 1;
        mesh.middle.emplace_back(parse_rep<K>(xm.at("rep"), q, field, where + ".middle"), mult);
      }
    }
    if (mj.contains("target"))
      mesh.target = parse_rep<K>(mj.at("target"), q, field, where + ".target");
    meshes.push_back(std::move(mesh));
  }
  return GenericArInput<K>{std::move(q), std::move(module), std::move(meshes)};
}

// ---- label grammar --------------------------------------------------------

// "P3" | "I4" | "R2(1/2)" | "R1(inf)" for Kronecker labels.
template <class K>
IndecLabel<K> parse_indec_label(const std::string& s, const FieldSpec& field) {
  auto bad = [&]() -> IndecLabel<K> {
    throw ParseError("bad indecomposable label '" + s + "'");
  };
  if (s.size() < 2) return bad();
  const char fam = s[0];
  if (fam == 'P' || fam == 'I') {
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(s.substr(1), &pos);
    } catch (...) {
      return bad();
    }
    if (pos + 1 != s.size() || n < 1) return bad();
    return fam == 'P' ? IndecLabel<K>::preprojective(n) : IndecLabel<K>::preinjective(n);
  }
  if (fam == 'R') {
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return bad();
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(s.substr(1, open - 1), &pos);
      if (pos != open - 1) return bad();
    } catch (...) {
      return bad();
    }
    if (n < 1) return bad();
    const std::string param = s.substr(open + 1, s.size() - open - 2);
    if (param == "inf") return IndecLabel<K>::regular(n, RegParam<K>::infinity());
    return IndecLabel<K>::regular(
        n, RegParam<K>::finite(parse_scalar<K>(json(param), field, "label '" + s + "'")));
  }
  return bad();
}

// "J3(0)" -> (lambda, size)
template <class K>
JordanEntry<K> parse_jordan_label(const std::string& s, const FieldSpec& field) {
  const auto open = s.find('(');
  if (s.size() < 4 || s[0] != 'J' || open == std::string::npos || s.back() != ')')
    throw ParseError("bad jordan label '" + s + "'");
  int size = 0;
  try {
    std::size_t pos = 0;
    size = std::stoi(s.substr(1, open - 1), &pos);
    if (pos != open - 1) throw ParseError("");
  } catch (...) {
    throw ParseError("bad jordan label '" + s + "'");
  }
  if (size < 1) throw ParseError("bad jordan label '" + s + "'");
  const std::string param = s.substr(open + 1, s.size() - open - 2);
  return {parse_scalar<K>(json(param), field, "label '" + s + "'"), size, 1};
}

// "I(2,4)" -> interval point
inline DiagramPoint parse_interval_label(const std::string& s) {
  if (s.size() < 6 || s.rfind("I(", 0) != 0 || s.back() != ')')
    throw ParseError("bad interval label '" + s + "'");
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("bad interval label '" + s + "'");
  try {
    const Index b = std::stol(s.substr(2, comma - 2));
    const Index d = std::stol(s.substr(comma + 1, s.size() - comma - 2));
    if (b < 1 || d < b) throw ParseError("");
    return {b, d, 1};
  } catch (const ParseError&) {
    throw ParseError("bad interval label '" + s + "'");
  } catch (...) {
    throw ParseError("bad interval label '" + s + "'");
  }
}

template <class K>
std::string jordan_label(const JordanEntry<K>& e) {
  return "J" + std::to_string(e.size) + "(" + scalar_str(e.lambda) + ")";
}

inline std::string interval_label(const DiagramPoint& p) {
  return "I(" + std::to_string(p.birth) + "," + std::to_string(p.death) + ")";
}

// ---- result documents -----------------------------------------------------

template <class K>
json nonsplit_warning_json(const Polynomial<K>& nonsplit, const DimVec& deficit,
                           const std::string& code) {
  json coeffs = json::array();
  for (const auto& c : nonsplit.coeffs()) coeffs.push_back(scalar_str(c));
  json w;
  w["code"] = code;
  w["message"] = "characteristic factor " + nonsplit.str() +
                 " has no roots in the active field; the corresponding summands are not listed";
  w["nonsplit"] = std::move(coeffs);
  w["deficit"] = deficit;
  return w;
}

template <class K>
json kronecker_result_json(const KroneckerModule<K>& m, const KroneckerDecomposition<K>& dec,
                           const std::optional<SupportSet<K>>& support, const FieldSpec& field) {
  json out;
  out["solver"] = "kronecker";
  out["field"] = field.str();
  out["input_dims"] = m.dims();
  json entries = json::array();
  for (const auto& [label, mult] : dec.entries) {
    json e;
    e["label"] = label.str();
    e["kind"] = label.family == IndecLabel<K>::Family::P   ? "P"
                : label.family == IndecLabel<K>::Family::I ? "I"
                                                           : "R";
    e["n"] = label.n;
    if (label.family == IndecLabel<K>::Family::R) e["lambda"] = label.param.str();
    e["multiplicity"] = mult;
    e["dims"] = label.dims();
    entries.push_back(std::move(e));
  }
  out["decomposition"] = std::move(entries);
  if (support) {
    json labels = json::array();
    for (const auto& l : support->labels) labels.push_back(l.str());
    out["support_set"] = std::move(labels);
  }
  if (dec.rank_tables) {
    json tables;
    json p = json::object(), i = json::object();
    for (const auto& [n, v] : dec.rank_tables->p) p[std::to_string(n)] = v;
    for (const auto& [n, v] : dec.rank_tables->i) i[std::to_string(n)] = v;
    tables["p"] = std::move(p);
    tables["i"] = std::move(i);
    json r = json::object();
    for (const auto& [param, row] : dec.rank_tables->r) {
      json jrow = json::object();
      for (const auto& [n, v] : row) jrow[std::to_string(n)] = v;
      r[param.str()] = std::move(jrow);
    }
    tables["r"] = std::move(r);
    out["rank_tables"] = std::move(tables);
  }
  json warnings = json::array();
  const Index gap = dec.nonsplit.is_one() ? 0 : dec.nonsplit.degree();
  if (gap > 0)
    warnings.push_back(
        nonsplit_warning_json(dec.nonsplit, DimVec{gap, gap}, "non_split_regular_part"));
  out["warnings"] = std::move(warnings);
  DimVec covered = dec.covered_dims();
  covered[0] += gap;
  covered[1] += gap;
  out["checks"]["dimension_conservation"] = dims_equal(covered, m.dims());
  return out;
}

template <class K>
json jordan_result_json(const Mat<K>& m, const JordanSpectrum<K>& spec, const FieldSpec& field) {
  json out;
  out["solver"] = "jordan";
  out["field"] = field.str();
  out["input_dims"] = DimVec{m.rows()};
  json entries = json::array();
  Index covered = 0;
  for (const auto& e : spec.entries) {
    json je;
    je["label"] = jordan_label(e);
    je["lambda"] = scalar_str(e.lambda);
    je["size"] = e.size;
    je["multiplicity"] = e.multiplicity;
    je["dims"] = DimVec{e.size};
    covered += e.size * e.multiplicity;
    entries.push_back(std::move(je));
  }
  out["decomposition"] = std::move(entries);
  json warnings = json::array();
  const Index gap = spec.nonsplit.is_one() ? 0 : spec.nonsplit.degree();
  if (gap > 0) warnings.push_back(nonsplit_warning_json(spec.nonsplit, DimVec{gap}, "non_split_factor"));
  out["warnings"] = std::move(warnings);
  out["checks"]["dimension_conservation"] = (covered + gap == m.rows());
  return out;
}

template <class K>
json an_result_json(const AnModule<K>& m, const PersistenceDiagram& pd, const FieldSpec& field) {
  json out;
  out["solver"] = "an";
  out["field"] = field.str();
  out["input_dims"] = m.dims;
  json entries = json::array();
  DimVec covered = dims_zero(m.dims.size());
  for (const auto& p : pd.points) {
    json e;
    e["label"] = interval_label(p);
    e["b"] = p.birth;
    e["d"] = p.death;
    e["multiplicity"] = p.multiplicity;
    DimVec dims(m.dims.size(), 0);
    for (Index v = p.birth; v <= p.death; ++v) {
      dims[v - 1] = 1;
      covered[v - 1] += p.multiplicity;
    }
    e["dims"] = dims;
    entries.push_back(std::move(e));
  }
  out["decomposition"] = std::move(entries);
  out["warnings"] = json::array();
  out["checks"]["dimension_conservation"] = dims_equal(covered, m.dims);
  return out;
}

template <class K>
json generic_ar_result_json(const QuiverRep<K>& m, const Decomposition<K>& dec,
                            const FieldSpec& field) {
  json out;
  out["solver"] = "generic-ar";
  out["field"] = field.str();
  out["input_dims"] = m.dims;
  json entries = json::array();
  DimVec covered = dims_zero(m.dims.size());
  for (const auto& e : dec.entries) {
    json je;
    je["label"] = e.label;
    je["multiplicity"] = e.multiplicity;
    je["dims"] = e.rep.dims;
    dims_axpy(covered, e.multiplicity, e.rep.dims);
    entries.push_back(std::move(je));
  }
  out["decomposition"] = std::move(entries);
  out["warnings"] = json::array();
  out["checks"]["dimension_conservation"] = dims_equal(covered, m.dims);
  return out;
}

inline std::string plot_tsv(const PersistenceDiagram& pd) {
  std::string out = "birth\tdeath\tmultiplicity\n";
  for (const auto& p : pd.points)
    out += std::to_string(p.birth) + "\t" + std::to_string(p.death) + "\t" +
           std::to_string(p.multiplicity) + "\n";
  return out;
}

}  // namespace ardec
