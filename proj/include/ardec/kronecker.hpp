#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ardec/ar_engine.hpp"
#include "ardec/exact_linalg.hpp"
#include "ardec/polynomial.hpp"
#include "ardec/quiver.hpp"
#include "ardec/util.hpp"

namespace ardec {

// Representation of the Kronecker quiver 1 => 2 as the matrix pair
// (alpha, beta), both of shape d2 x d1.
template <class K>
struct KroneckerModule {
  Mat<K> alpha, beta;

  KroneckerModule(Mat<K> a, Mat<K> b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha.rows() != beta.rows() || alpha.cols() != beta.cols())
      throw DimensionError("KroneckerModule: alpha and beta must have equal shapes");
  }

  Index d1() const { return alpha.cols(); }
  Index d2() const { return alpha.rows(); }
  DimVec dims() const { return {d1(), d2()}; }
};

// A point of the projective line: a field element or infinity.
template <class K>
struct RegParam {
  bool is_inf = false;
  K value = K(0);

  static RegParam infinity() { return {true, K(0)}; }
  static RegParam finite(K v) { return {false, std::move(v)}; }

  std::string str() const {
    if (is_inf) return "inf";
    std::ostringstream os;
    os << value;
    return os.str();
  }

  friend bool operator==(const RegParam& a, const RegParam& b) {
    return a.is_inf == b.is_inf && (a.is_inf || a.value == b.value);
  }
  // finite values in field order, infinity last
  friend bool operator<(const RegParam& a, const RegParam& b) {
    if (a.is_inf != b.is_inf) return !a.is_inf;
    return !a.is_inf && a.value < b.value;
  }
};

// Label of a Kronecker indecomposable: P_n (dims (n-1, n)), I_n (dims
// (n, n-1)), or R_n(lambda) (dims (n, n)) with lambda in k or infinity.
template <class K>
struct IndecLabel {
  enum class Family { P, I, R };
  Family family;
  Index n;
  RegParam<K> param;  // meaningful only for family R

  static IndecLabel preprojective(Index n) { return {Family::P, n, {}}; }
  static IndecLabel preinjective(Index n) { return {Family::I, n, {}}; }
  static IndecLabel regular(Index n, RegParam<K> p) { return {Family::R, n, std::move(p)}; }

  DimVec dims() const {
    switch (family) {
      case Family::P: return {n - 1, n};
      case Family::I: return {n, n - 1};
      default: return {n, n};
    }
  }

  std::string str() const {
    switch (family) {
      case Family::P: return "P" + std::to_string(n);
      case Family::I: return "I" + std::to_string(n);
      default: return "R" + std::to_string(n) + "(" + param.str() + ")";
    }
  }

  friend bool operator==(const IndecLabel& a, const IndecLabel& b) {
    if (a.family != b.family || a.n != b.n) return false;
    return a.family != Family::R || a.param == b.param;
  }
  // canonical order: all P by n, then all I by n, then R by (lambda, n)
  friend bool operator<(const IndecLabel& a, const IndecLabel& b) {
    if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family);
    if (a.family == Family::R) {
      if (!(a.param == b.param)) return a.param < b.param;
    }
    return a.n < b.n;
  }
};

namespace detail {

template <class K>
Mat<K> shift_matrix(Index n) {  // J_n(0), ones on the superdiagonal
  Mat<K> j = zero_mat<K>(n, n);
  for (Index i = 0; i + 1 < n; ++i) j(i, i + 1) = K(1);
  return j;
}

}  // namespace detail

// Canonical matrices of the indecomposables:
//   P_n = ([E_{n-1}; 0], [0; E_{n-1}]),  I_n = ([E_{n-1} 0], [0 E_{n-1}]),
//   R_n(lambda) = (E_n, J_n(lambda)),    R_n(inf) = (J_n(0), E_n).
template <class K>
KroneckerModule<K> indec_rep(const IndecLabel<K>& label) {
  const Index n = label.n;
  if (n < 1) throw DomainError("indec_rep: n must be >= 1");
  switch (label.family) {
    case IndecLabel<K>::Family::P: {
      Mat<K> a = zero_mat<K>(n, n - 1), b = zero_mat<K>(n, n - 1);
      a.topRows(n - 1) = identity_mat<K>(n - 1);
      b.bottomRows(n - 1) = identity_mat<K>(n - 1);
      return {std::move(a), std::move(b)};
    }
    case IndecLabel<K>::Family::I: {
      Mat<K> a = zero_mat<K>(n - 1, n), b = zero_mat<K>(n - 1, n);
      a.leftCols(n - 1) = identity_mat<K>(n - 1);
      b.rightCols(n - 1) = identity_mat<K>(n - 1);
      return {std::move(a), std::move(b)};
    }
    default: {
      if (label.param.is_inf) return {detail::shift_matrix<K>(n), identity_mat<K>(n)};
      Mat<K> j = detail::shift_matrix<K>(n);
      for (Index i = 0; i < n; ++i) j(i, i) = label.param.value;
      return {identity_mat<K>(n), std::move(j)};
    }
  }
}

// Staircase block matrix P_n(M): n-1 block rows, n block columns, with M(beta)
// on the diagonal and M(alpha) to its right.
template <class K>
Mat<K> p_block(const KroneckerModule<K>& m, Index n) {
  if (n < 1) throw DomainError("p_block: n must be >= 1");
  Mat<K> out = zero_mat<K>((n - 1) * m.d2(), n * m.d1());
  for (Index r = 0; r + 1 < n; ++r) {
    out.block(r * m.d2(), r * m.d1(), m.d2(), m.d1()) = m.beta;
    out.block(r * m.d2(), (r + 1) * m.d1(), m.d2(), m.d1()) = m.alpha;
  }
  return out;
}

// Staircase block matrix I_n(M): n+1 block rows, n block columns, with M(beta)
// on the diagonal and M(alpha) below it.
template <class K>
Mat<K> i_block(const KroneckerModule<K>& m, Index n) {
  if (n < 0) throw DomainError("i_block: n must be >= 0");
  Mat<K> out = zero_mat<K>((n + 1) * m.d2(), n * m.d1());
  for (Index c = 0; c < n; ++c) {
    out.block(c * m.d2(), c * m.d1(), m.d2(), m.d1()) = m.beta;
    out.block((c + 1) * m.d2(), c * m.d1(), m.d2(), m.d1()) = m.alpha;
  }
  return out;
}

// Lower block bidiagonal R_n(lambda, M): lambda*M(alpha) - M(beta) on the
// diagonal with M(alpha) below; for lambda = inf, M(alpha) on the diagonal
// with -M(beta) below.
template <class K>
Mat<K> r_block(const KroneckerModule<K>& m, const RegParam<K>& lambda, Index n) {
  if (n < 1) throw DomainError("r_block: n must be >= 1");
  const Mat<K> diag =
      lambda.is_inf ? m.alpha : Mat<K>(lambda.value * m.alpha - m.beta);
  const Mat<K> sub = lambda.is_inf ? Mat<K>(-m.beta) : m.alpha;
  Mat<K> out = zero_mat<K>(n * m.d2(), n * m.d1());
  for (Index r = 0; r < n; ++r) {
    out.block(r * m.d2(), r * m.d1(), m.d2(), m.d1()) = diag;
    if (r > 0) out.block(r * m.d2(), (r - 1) * m.d1(), m.d2(), m.d1()) = sub;
  }
  return out;
}

// p_1 = 0 and p_n = rank P_n(M) for n >= 2.
template <class K>
Index block_rank_p(const KroneckerModule<K>& m, Index n) {
  if (n < 1) throw DomainError("block_rank_p: n must be >= 1");
  return n == 1 ? 0 : rank(p_block(m, n));
}

// i_0 = 0 and i_n = rank I_n(M) for n >= 1.
template <class K>
Index block_rank_i(const KroneckerModule<K>& m, Index n) {
  if (n < 0) throw DomainError("block_rank_i: n must be >= 0");
  return n == 0 ? 0 : rank(i_block(m, n));
}

// r_n(lambda) = rank R_n(lambda, M) for n >= 1; r_0 = 0.
template <class K>
Index block_rank_r(const KroneckerModule<K>& m, const RegParam<K>& lambda, Index n) {
  if (n < 0) throw DomainError("block_rank_r: n must be >= 0");
  return n == 0 ? 0 : rank(r_block(m, lambda, n));
}

// Memoizes the three block-rank families for one module; the multiplicity
// formulas touch each rank up to three times.
template <class K>
class KroneckerRankCache {
 public:
  explicit KroneckerRankCache(const KroneckerModule<K>& m) : m_(m) {}

  Index p(Index n) { return memo(p_, n, [&] { return block_rank_p(m_, n); }); }
  Index i(Index n) { return memo(i_, n, [&] { return block_rank_i(m_, n); }); }
  Index r(const RegParam<K>& lambda, Index n) {
    auto key = std::make_pair(lambda, n);
    auto it = r_.find(key);
    if (it != r_.end()) return it->second;
    const Index v = block_rank_r(m_, lambda, n);
    r_.emplace(key, v);
    return v;
  }

  const KroneckerModule<K>& module() const { return m_; }

 private:
  template <class F>
  static Index memo(std::map<Index, Index>& cache, Index n, const F& f) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const Index v = f();
    cache.emplace(n, v);
    return v;
  }

  const KroneckerModule<K>& m_;
  std::map<Index, Index> p_, i_;
  std::map<std::pair<RegParam<K>, Index>, Index> r_;
};

// Closed forms for dim Hom(L, M):
//   P_n: (n-1) d1 - p_{n-1}  (d2 for n = 1)
//   I_n: n d1 - i_n
//   R_n(lambda): n d1 - r_n(lambda)
template <class K>
Index hom_dim_fast(KroneckerRankCache<K>& cache, const IndecLabel<K>& label) {
  const KroneckerModule<K>& m = cache.module();
  switch (label.family) {
    case IndecLabel<K>::Family::P:
      return label.n == 1 ? m.d2() : (label.n - 1) * m.d1() - cache.p(label.n - 1);
    case IndecLabel<K>::Family::I:
      return label.n * m.d1() - cache.i(label.n);
    default:
      return label.n * m.d1() - cache.r(label.param, label.n);
  }
}

template <class K>
Index hom_dim_fast(const KroneckerModule<K>& m, const IndecLabel<K>& label) {
  KroneckerRankCache<K> cache(m);
  return hom_dim_fast(cache, label);
}

// The multiplicity formulas:
//   d_M(P_n) = 2 p_n - p_{n-1} - p_{n+1}        (d2 - p_2 for n = 1)
//   d_M(I_n) = 2 i_{n-1} - i_n - i_{n-2}        (d1 - i_1 for n = 1)
//   d_M(R_n(lambda)) = r_{n-1} + r_{n+1} - 2 r_n  (r_2 - 2 r_1 for n = 1)
template <class K>
Index kronecker_multiplicity(KroneckerRankCache<K>& cache, const IndecLabel<K>& label) {
  const KroneckerModule<K>& m = cache.module();
  if (label.n < 1) throw DomainError("kronecker_multiplicity: n must be >= 1");
  Index d = 0;
  switch (label.family) {
    case IndecLabel<K>::Family::P:
      d = label.n == 1 ? m.d2() - cache.p(2)
                       : 2 * cache.p(label.n) - cache.p(label.n - 1) - cache.p(label.n + 1);
      break;
    case IndecLabel<K>::Family::I:
      d = label.n == 1 ? m.d1() - cache.i(1)
                       : 2 * cache.i(label.n - 1) - cache.i(label.n) - cache.i(label.n - 2);
      break;
    default:
      d = label.n == 1
              ? cache.r(label.param, 2) - 2 * cache.r(label.param, 1)
              : cache.r(label.param, label.n - 1) + cache.r(label.param, label.n + 1) -
                    2 * cache.r(label.param, label.n);
      break;
  }
  if (d < 0)
    throw ConsistencyError("kronecker_multiplicity: negative multiplicity for " + label.str());
  return d;
}

template <class K>
Index kronecker_multiplicity(const KroneckerModule<K>& m, const IndecLabel<K>& label) {
  KroneckerRankCache<K> cache(m);
  return kronecker_multiplicity(cache, label);
}

template <class K>
QuiverRep<K> to_rep(const KroneckerModule<K>& m) {
  return QuiverRep<K>(Quiver::kronecker(), {m.d1(), m.d2()}, {m.alpha, m.beta});
}

template <class K>
KroneckerModule<K> from_rep(const QuiverRep<K>& rep) {
  if (!(rep.quiver == Quiver::kronecker()))
    throw DomainError("from_rep: not a Kronecker representation");
  return KroneckerModule<K>(rep.mats[0], rep.mats[1]);
}

template <class K>
KroneckerModule<K> kronecker_direct_sum(
    const std::vector<std::pair<KroneckerModule<K>, Index>>& parts) {
  std::vector<Mat<K>> as, bs;
  for (const auto& [p, mult] : parts)
    for (Index i = 0; i < mult; ++i) {
      as.push_back(p.alpha);
      bs.push_back(p.beta);
    }
  return KroneckerModule<K>(block_diag<K>(as), block_diag<K>(bs));
}

template <class K>
KroneckerModule<K> kronecker_base_change(const KroneckerModule<K>& m, const Mat<K>& g1,
                                         const Mat<K>& g2) {
  const Mat<K> g1inv = invert(g1);
  return KroneckerModule<K>(Mat<K>(g2 * m.alpha * g1inv), Mat<K>(g2 * m.beta * g1inv));
}

// Bases and morphism counts recorded while splitting, for audit output.
template <class K>
struct SplitWitnesses {
  std::vector<Mat<K>> reject_basis;   // R + I inside M
  std::vector<Mat<K>> trace_basis;    // I_M inside R + I
  std::vector<Mat<K>> rinf_basis;     // R(inf) inside R_M
  std::vector<Mat<K>> rprime_basis;   // R' inside R_M
  Index hom_M_to_P = 0, hom_I_to_RI = 0, hom_Rinf_to_R = 0, hom_R_to_Rinf = 0;
};

// M = P_M + R'_M + R(inf)_M + I_M, computed by three trace/reject stages:
//   R + I = Rej_M(P_{d2}),  I_M = Tr_{R+I}(I_{d1}),  R_M = (R+I)/I_M,
//   R(inf) = Tr_{R_M}(R_d(inf)),  R' = Rej_{R_M}(R_d(inf))  (d = size of R_M).
template <class K>
struct KroneckerSplit {
  KroneckerModule<K> p_part, r_prime_part, r_inf_part, i_part;
  SplitWitnesses<K> witnesses;
};

template <class K>
KroneckerSplit<K> split_parts(const KroneckerModule<K>& m) {
  const Index d1 = m.d1(), d2 = m.d2();
  if (d1 + d2 == 0)
    return {KroneckerModule<K>(Mat<K>(0, 0), Mat<K>(0, 0)),
            KroneckerModule<K>(Mat<K>(0, 0), Mat<K>(0, 0)),
            KroneckerModule<K>(Mat<K>(0, 0), Mat<K>(0, 0)),
            KroneckerModule<K>(Mat<K>(0, 0), Mat<K>(0, 0)),
            {}};
  const QuiverRep<K> rep = to_rep(m);
  SplitWitnesses<K> wit;

  // stage 1: reject the largest preprojective that could embed
  std::vector<Mat<K>> rej{identity_mat<K>(d1), identity_mat<K>(d2)};
  if (d2 > 0) {
    const QuiverRep<K> proj = to_rep(indec_rep<K>(IndecLabel<K>::preprojective(d2)));
    const auto fs = hom_basis(rep, proj);
    wit.hom_M_to_P = static_cast<Index>(fs.size());
    for (Index v = 0; v < 2; ++v) {
      std::vector<Mat<K>> maps;
      for (const auto& f : fs) maps.push_back(f[v]);
      rej[v] = subspace_intersection<K>(maps, rep.dims[v]);
    }
  }
  wit.reject_basis = rej;
  auto stage1 = sub_quotient(rep, rej);
  const QuiverRep<K>& ri_rep = stage1.sub;
  const QuiverRep<K>& p_rep = stage1.quotient;

  // stage 2: trace of the largest preinjective inside R + I
  std::vector<Mat<K>> tr{zero_mat<K>(ri_rep.dims[0], 0), zero_mat<K>(ri_rep.dims[1], 0)};
  if (d1 > 0) {
    const QuiverRep<K> inj = to_rep(indec_rep<K>(IndecLabel<K>::preinjective(d1)));
    const auto gs = hom_basis(inj, ri_rep);
    wit.hom_I_to_RI = static_cast<Index>(gs.size());
    for (Index v = 0; v < 2; ++v) {
      std::vector<Mat<K>> imgs;
      for (const auto& g : gs) imgs.push_back(g[v]);
      tr[v] = column_space_sum<K>(imgs, ri_rep.dims[v]);
    }
  }
  wit.trace_basis = tr;
  auto stage2 = sub_quotient(ri_rep, tr);
  const QuiverRep<K>& i_rep = stage2.sub;
  const QuiverRep<K>& r_rep = stage2.quotient;

  if (r_rep.dims[0] != r_rep.dims[1])
    throw ConsistencyError("split_parts: regular part is not square, dims " +
                           dims_str(r_rep.dims));
  const Index dreg = r_rep.dims[0];

  // stages 3 and 4: peel the infinity tube off the regular part
  QuiverRep<K> rinf_rep = QuiverRep<K>::zero(Quiver::kronecker());
  QuiverRep<K> rprime_rep = QuiverRep<K>::zero(Quiver::kronecker());
  if (dreg > 0) {
    const QuiverRep<K> tube =
        to_rep(indec_rep<K>(IndecLabel<K>::regular(dreg, RegParam<K>::infinity())));
    const auto into = hom_basis(tube, r_rep);
    wit.hom_Rinf_to_R = static_cast<Index>(into.size());
    std::vector<Mat<K>> rinf(2), rprime(2);
    for (Index v = 0; v < 2; ++v) {
      std::vector<Mat<K>> imgs;
      for (const auto& f : into) imgs.push_back(f[v]);
      rinf[v] = column_space_sum<K>(imgs, r_rep.dims[v]);
    }
    const auto out_of = hom_basis(r_rep, tube);
    wit.hom_R_to_Rinf = static_cast<Index>(out_of.size());
    for (Index v = 0; v < 2; ++v) {
      std::vector<Mat<K>> maps;
      for (const auto& f : out_of) maps.push_back(f[v]);
      rprime[v] = subspace_intersection<K>(maps, r_rep.dims[v]);
    }
    wit.rinf_basis = rinf;
    wit.rprime_basis = rprime;
    rinf_rep = sub_quotient(r_rep, rinf).sub;
    rprime_rep = sub_quotient(r_rep, rprime).sub;
    if (rinf_rep.dims[0] + rprime_rep.dims[0] != dreg ||
        rinf_rep.dims[1] + rprime_rep.dims[1] != dreg)
      throw ConsistencyError("split_parts: R(inf) and R' do not fill the regular part");
  }

  return {from_rep(p_rep), from_rep(rprime_rep), from_rep(rinf_rep), from_rep(i_rep),
          std::move(wit)};
}

template <class K>
struct RegularParams {
  std::vector<K> lambdas;              // distinct, canonically sorted
  Polynomial<K> nonsplit = Polynomial<K>::one();
};

// Parameters of the regular-without-infinity part: R' is isomorphic to
// (E_l, C) with C = alpha^{-1} beta, and the parameter set is the set of
// eigenvalues of C in the field. A non-split characteristic factor is
// reported, never factored numerically.
template <class K>
RegularParams<K> regular_params(const KroneckerModule<K>& r_prime) {
  if (r_prime.d1() != r_prime.d2())
    throw InvalidRegularPartError("regular_params: part is not square");
  if (r_prime.d1() == 0) return {};
  Mat<K> c;
  try {
    c = invert(r_prime.alpha) * r_prime.beta;
  } catch (const SingularMatrixError&) {
    throw InvalidRegularPartError("regular_params: alpha of R' is singular");
  }
  const LinearRoots<K> lr = linear_roots(char_poly(Mat<K>(c)));
  RegularParams<K> out;
  for (const auto& [root, mult] : lr.roots) out.lambdas.push_back(root);
  out.nonsplit = lr.nonsplit;
  return out;
}

// Finite candidate list guaranteed to contain the support of d_M:
//   { P_i, I_j, R_k(lambda) | i <= d2, j <= d1, k <= d, lambda in L or inf },
// with d the size of the regular part; infinity is omitted when R(inf) = 0.
// A non-split factor is attached as a partial-result warning.
template <class K>
struct SupportSet {
  std::vector<IndecLabel<K>> labels;
  Polynomial<K> nonsplit = Polynomial<K>::one();

  bool contains(const IndecLabel<K>& l) const {
    return std::find(labels.begin(), labels.end(), l) != labels.end();
  }
};

template <class K>
SupportSet<K> support_set_from_split(const KroneckerModule<K>& m, const KroneckerSplit<K>& split) {
  SupportSet<K> out;
  const RegularParams<K> params = regular_params(split.r_prime_part);
  out.nonsplit = params.nonsplit;
  const Index dreg = split.r_prime_part.d1() + split.r_inf_part.d1();
  for (Index i = 1; i <= m.d2(); ++i) out.labels.push_back(IndecLabel<K>::preprojective(i));
  for (Index j = 1; j <= m.d1(); ++j) out.labels.push_back(IndecLabel<K>::preinjective(j));
  std::vector<RegParam<K>> lambdas;
  for (const K& l : params.lambdas) lambdas.push_back(RegParam<K>::finite(l));
  if (split.r_inf_part.d1() > 0) lambdas.push_back(RegParam<K>::infinity());
  for (const RegParam<K>& l : lambdas)
    for (Index k = 1; k <= dreg; ++k) out.labels.push_back(IndecLabel<K>::regular(k, l));
  return out;
}

template <class K>
SupportSet<K> support_set(const KroneckerModule<K>& m) {
  return support_set_from_split(m, split_parts(m));
}

enum class DecomposeMode { Direct, Split };

// The block-rank values of the input module, as computed in direct mode:
// p_1..p_{d2+2}, i_0..i_{d1+1}, and r_n(lambda) for every candidate parameter.
template <class K>
struct KroneckerRankTables {
  std::map<Index, Index> p, i;
  std::vector<std::pair<RegParam<K>, std::map<Index, Index>>> r;
};

// Result of a Kronecker decomposition. When the regular part has a non-split
// characteristic factor q over the active field, the entries omit the
// corresponding summands and `nonsplit` records q; the missing dimensions are
// exactly (deg q, deg q).
template <class K>
struct KroneckerDecomposition {
  std::vector<std::pair<IndecLabel<K>, Index>> entries;
  Polynomial<K> nonsplit = Polynomial<K>::one();
  std::optional<KroneckerRankTables<K>> rank_tables;

  Index multiplicity_of(const IndecLabel<K>& l) const {
    for (const auto& [label, mult] : entries)
      if (label == l) return mult;
    return 0;
  }
  DimVec covered_dims() const {
    DimVec d{0, 0};
    for (const auto& [label, mult] : entries) dims_axpy(d, mult, label.dims());
    return d;
  }
};

namespace detail {

template <class K>
void check_kronecker_conservation(const KroneckerDecomposition<K>& dec, const DimVec& dims,
                                  const std::string& where) {
  DimVec covered = dec.covered_dims();
  const Index gap = dec.nonsplit.is_one() ? 0 : dec.nonsplit.degree();
  covered[0] += gap;
  covered[1] += gap;
  if (!dims_equal(covered, dims))
    throw ConsistencyError(where + ": decomposition covers " + dims_str(covered) +
                           " of " + dims_str(dims));
}

template <class K>
void sort_entries(KroneckerDecomposition<K>& dec) {
  std::sort(dec.entries.begin(), dec.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

// Scans candidates in the given order, skipping the tail once the recovered
// dimensions account for everything the scan can still find.
template <class K>
void scan_part(const KroneckerModule<K>& part, const std::vector<IndecLabel<K>>& candidates,
               const DimVec& stop_at, KroneckerDecomposition<K>& into,
               const std::string& where) {
  KroneckerRankCache<K> cache(part);
  DimVec covered{0, 0};
  for (const auto& label : candidates) {
    if (dims_equal(covered, stop_at)) break;
    const Index mult = kronecker_multiplicity(cache, label);
    if (mult == 0) continue;
    dims_axpy(covered, mult, label.dims());
    into.entries.emplace_back(label, mult);
  }
  if (!dims_equal(covered, stop_at))
    throw ConsistencyError(where + ": recovered " + dims_str(covered) + " of " +
                           dims_str(stop_at));
}

}  // namespace detail

namespace detail {

template <class K>
KroneckerRankTables<K> build_rank_tables(KroneckerRankCache<K>& cache,
                                         const SupportSet<K>& support) {
  const KroneckerModule<K>& m = cache.module();
  KroneckerRankTables<K> tables;
  for (Index n = 1; n <= m.d2() + 2; ++n) tables.p[n] = cache.p(n);
  for (Index n = 0; n <= m.d1() + 1; ++n) tables.i[n] = cache.i(n);
  Index dreg = 0;
  std::vector<RegParam<K>> params;
  for (const auto& l : support.labels) {
    if (l.family != IndecLabel<K>::Family::R) continue;
    dreg = std::max(dreg, l.n);
    if (params.empty() || !(params.back() == l.param)) params.push_back(l.param);
  }
  for (const auto& p : params) {
    std::map<Index, Index> row;
    for (Index n = 1; n <= dreg + 1; ++n) row[n] = cache.r(p, n);
    tables.r.emplace_back(p, std::move(row));
  }
  return tables;
}

}  // namespace detail

// Direct mode: evaluate the rank formulas for every label of S_M on M itself.
template <class K>
KroneckerDecomposition<K> decompose_direct(const KroneckerModule<K>& m, int jobs = 1) {
  const SupportSet<K> support = support_set(m);
  KroneckerDecomposition<K> out;
  out.nonsplit = support.nonsplit;
  std::vector<Index> mults(support.labels.size(), 0);
  KroneckerRankCache<K> cache(m);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < support.labels.size(); ++i)
      mults[i] = kronecker_multiplicity(cache, support.labels[i]);
  } else {
    detail::parallel_for(static_cast<std::ptrdiff_t>(support.labels.size()), jobs,
                         [&](std::ptrdiff_t i) {
                           mults[i] = kronecker_multiplicity(m, support.labels[i]);
                         });
  }
  for (std::size_t i = 0; i < support.labels.size(); ++i)
    if (mults[i] > 0) out.entries.emplace_back(support.labels[i], mults[i]);
  out.rank_tables = detail::build_rank_tables(cache, support);
  detail::sort_entries(out);
  detail::check_kronecker_conservation(out, m.dims(), "decompose (direct)");
  return out;
}

// Split mode: decompose each of P_M, R'_M, R(inf)_M, I_M separately; every
// part is strictly smaller than M, which keeps the block matrices small.
template <class K>
KroneckerDecomposition<K> decompose_split(const KroneckerModule<K>& m) {
  const KroneckerSplit<K> split = split_parts(m);
  KroneckerDecomposition<K> out;

  std::vector<IndecLabel<K>> cand;
  for (Index n = 1; n <= split.p_part.d2(); ++n)
    cand.push_back(IndecLabel<K>::preprojective(n));
  detail::scan_part(split.p_part, cand, split.p_part.dims(), out, "decompose (split, P)");

  cand.clear();
  for (Index n = 1; n <= split.i_part.d1(); ++n)
    cand.push_back(IndecLabel<K>::preinjective(n));
  detail::scan_part(split.i_part, cand, split.i_part.dims(), out, "decompose (split, I)");

  cand.clear();
  for (Index n = 1; n <= split.r_inf_part.d1(); ++n)
    cand.push_back(IndecLabel<K>::regular(n, RegParam<K>::infinity()));
  detail::scan_part(split.r_inf_part, cand, split.r_inf_part.dims(), out,
                    "decompose (split, R(inf))");

  const RegularParams<K> params = regular_params(split.r_prime_part);
  out.nonsplit = params.nonsplit;
  cand.clear();
  for (const K& l : params.lambdas)
    for (Index n = 1; n <= split.r_prime_part.d1(); ++n)
      cand.push_back(IndecLabel<K>::regular(n, RegParam<K>::finite(l)));
  const Index gap = params.nonsplit.is_one() ? 0 : params.nonsplit.degree();
  DimVec stop_at = split.r_prime_part.dims();
  stop_at[0] -= gap;
  stop_at[1] -= gap;
  detail::scan_part(split.r_prime_part, cand, stop_at, out, "decompose (split, R')");

  detail::sort_entries(out);
  detail::check_kronecker_conservation(out, m.dims(), "decompose (split)");
  return out;
}

template <class K>
KroneckerDecomposition<K> decompose(const KroneckerModule<K>& m,
                                    DecomposeMode mode = DecomposeMode::Split, int jobs = 1) {
  return mode == DecomposeMode::Direct ? decompose_direct(m, jobs) : decompose_split(m);
}

// Mesh of the almost split sequence starting at a Kronecker indecomposable:
//   0 -> P_n -> P_{n+1}^2 -> P_{n+2} -> 0
//   0 -> R_n(l) -> R_{n-1}(l) + R_{n+1}(l) -> R_n(l) -> 0   (tau-periodic)
//   0 -> I_n -> I_{n-1}^2 -> I_{n-2} -> 0 for n >= 3; I_1, I_2 are injective
// with sink maps I_2 -> I_1^2 and I_1 -> 0.
template <class K>
ARMesh<K> kronecker_mesh(const IndecLabel<K>& label) {
  using Fam = typename IndecLabel<K>::Family;
  auto rep = [](const IndecLabel<K>& l) { return to_rep(indec_rep<K>(l)); };
  ARMesh<K> mesh{label.str(), rep(label), {}, std::nullopt};
  switch (label.family) {
    case Fam::P:
      mesh.middle.emplace_back(rep(IndecLabel<K>::preprojective(label.n + 1)), 2);
      mesh.target = rep(IndecLabel<K>::preprojective(label.n + 2));
      break;
    case Fam::I:
      if (label.n >= 2) mesh.middle.emplace_back(rep(IndecLabel<K>::preinjective(label.n - 1)), 2);
      if (label.n >= 3) mesh.target = rep(IndecLabel<K>::preinjective(label.n - 2));
      break;
    default:
      if (label.n >= 2)
        mesh.middle.emplace_back(rep(IndecLabel<K>::regular(label.n - 1, label.param)), 1);
      mesh.middle.emplace_back(rep(IndecLabel<K>::regular(label.n + 1, label.param)), 1);
      mesh.target = rep(IndecLabel<K>::regular(label.n, label.param));
      break;
  }
  return mesh;
}

}  // namespace ardec
