#pragma once

// Exact integer dense linear algebra: Eigen matrices over GMP integers.
// All downstream arithmetic (Smith forms, presentations, cohomology) runs on
// these types; fixed-width integer matrices are never used.

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50,
  };
};

// Allow plain integer literals in scalar-matrix expressions.
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, long, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<long, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<mpz_class, int, BinaryOp> {
  typedef mpz_class ReturnType;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<int, mpz_class, BinaryOp> {
  typedef mpz_class ReturnType;
};

}  // namespace Eigen

namespace cohomforge {

using Int = mpz_class;
using Index = Eigen::Index;

template <typename Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = DenseMat<Int>;
using IntVec = DenseVec<Int>;

inline bool is_zero(const Int& x) { return mpz_sgn(x.get_mpz_t()) == 0; }

// Quotient with remainder of minimal absolute value, |a - q*b| <= |b|/2.
inline Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int twice_r = 2 * abs(r);
  if (twice_r > abs(b)) q += (sgn(a) == sgn(b)) ? 1 : -1;
  return q;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

// True when A has at most one nonzero entry per row and per column.  Relation
// matrices of this shape (free, Z/k, mixed diagonal) admit O(size) solves and
// products, which the presentation layer exploits heavily.
template <typename Derived>
bool is_generalized_diagonal(const Eigen::MatrixBase<Derived>& A) {
  std::vector<bool> col_used(static_cast<std::size_t>(A.cols()), false);
  for (Index i = 0; i < A.rows(); ++i) {
    bool row_used = false;
    for (Index j = 0; j < A.cols(); ++j) {
      if (is_zero(A(i, j))) continue;
      if (row_used || col_used[static_cast<std::size_t>(j)]) return false;
      row_used = true;
      col_used[static_cast<std::size_t>(j)] = true;
    }
  }
  return true;
}

}  // namespace cohomforge
