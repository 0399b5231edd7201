#pragma once

#include <Eigen/Core>
#include <initializer_list>
#include <string>
#include <vector>

#include "ardec/errors.hpp"

namespace ardec {

using Index = Eigen::Index;

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

// Per-vertex dimension vector of a representation.
using DimVec = std::vector<Index>;

template <class K>
Mat<K> zero_mat(Index rows, Index cols) {
  return Mat<K>::Zero(rows, cols);
}

template <class K>
Mat<K> identity_mat(Index n) {
  return Mat<K>::Identity(n, n);
}

template <class K>
bool is_zero_mat(const Mat<K>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == K(0))) return false;
  return true;
}

template <class K>
bool mat_equal(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

// [a | b | ...] with a shared row count.
template <class K>
Mat<K> hstack(const std::vector<Mat<K>>& parts, Index rows) {
  Index cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionError("hstack: row count mismatch");
    cols += p.cols();
  }
  Mat<K> out = zero_mat<K>(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    out.block(0, at, rows, p.cols()) = p;
    at += p.cols();
  }
  return out;
}

// [a; b; ...] with a shared column count.
template <class K>
Mat<K> vstack(const std::vector<Mat<K>>& parts, Index cols) {
  Index rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionError("vstack: column count mismatch");
    rows += p.rows();
  }
  Mat<K> out = zero_mat<K>(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    out.block(at, 0, p.rows(), cols) = p;
    at += p.rows();
  }
  return out;
}

// Kronecker product, block (i,j) = a(i,j) * b.
template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> out = zero_mat<K>(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == K(0)) continue;
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  return out;
}

template <class K>
Mat<K> block_diag(const std::vector<Mat<K>>& parts) {
  Index rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  Mat<K> out = zero_mat<K>(rows, cols);
  Index r = 0, c = 0;
  for (const auto& p : parts) {
    out.block(r, c, p.rows(), p.cols()) = p;
    r += p.rows();
    c += p.cols();
  }
  return out;
}

inline bool dims_equal(const DimVec& a, const DimVec& b) { return a == b; }

inline DimVec dims_zero(std::size_t n) { return DimVec(n, 0); }

inline void dims_axpy(DimVec& acc, Index mult, const DimVec& d) {
  if (acc.size() != d.size()) throw DimensionError("dimension vectors of different length");
  for (std::size_t i = 0; i < d.size(); ++i) acc[i] += mult * d[i];
}

inline std::string dims_str(const DimVec& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

}  // namespace ardec
