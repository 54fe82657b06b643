#pragma once

// Smith normal form over the integers and the linear-system machinery built
// on it (exact solves, integer kernels, preimage lattices).  The elimination
// strategy: pick the entry of smallest nonzero absolute value as pivot, clear
// its row and column, and force the pivot to divide the remaining submatrix
// before moving on.  This keeps coefficient growth tame without modular
// arithmetic.

#include <optional>
#include <stdexcept>
#include <vector>

#include "cohomforge/intmat.hpp"

namespace cohomforge {

template <typename Scalar>
struct SmithForm {
  DenseMat<Scalar> u;  // rows x rows, unimodular
  DenseMat<Scalar> d;  // rows x cols, diagonal, d1 | d2 | ... >= 0
  DenseMat<Scalar> v;  // cols x cols, unimodular
  Index rank = 0;

  DenseVec<Scalar> diagonal() const {
    Index n = std::min(d.rows(), d.cols());
    DenseVec<Scalar> out(n);
    for (Index i = 0; i < n; ++i) out(i) = d(i, i);
    return out;
  }
};

struct SmithOptions {
  bool want_u = true;
  bool want_v = true;
};

namespace detail {

// row_i -= q * row_t, skipping zero source entries
inline void row_axpy(IntMat& m, Index i, Index t, const Int& q) {
  for (Index k = 0; k < m.cols(); ++k) {
    const Int& src = m(t, k);
    if (mpz_sgn(src.get_mpz_t()) == 0) continue;
    mpz_submul(m(i, k).get_mpz_t(), q.get_mpz_t(), src.get_mpz_t());
  }
}

inline void col_axpy(IntMat& m, Index j, Index t, const Int& q) {
  for (Index k = 0; k < m.rows(); ++k) {
    const Int& src = m(k, t);
    if (mpz_sgn(src.get_mpz_t()) == 0) continue;
    mpz_submul(m(k, j).get_mpz_t(), q.get_mpz_t(), src.get_mpz_t());
  }
}

}  // namespace detail

inline SmithForm<Int> smith_normal_form(const IntMat& a, SmithOptions opts = {}) {
  SmithForm<Int> s;
  s.d = a;
  const Index rows = s.d.rows(), cols = s.d.cols();
  if (opts.want_u) s.u = IntMat::Identity(rows, rows);
  if (opts.want_v) s.v = IntMat::Identity(cols, cols);
  IntMat& d = s.d;

  Index t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero |entry| in the trailing submatrix; |1| ends the search
    Index pi = -1, pj = -1;
    for (Index i = t; i < rows && pj < 0; ++i) {
      for (Index j = t; j < cols; ++j) {
        if (mpz_sgn(d(i, j).get_mpz_t()) == 0) continue;
        if (pi < 0 || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          if (mpz_cmpabs_ui(d(i, j).get_mpz_t(), 1) == 0) break;
        }
      }
      if (pi >= 0 && mpz_cmpabs_ui(d(pi, pj).get_mpz_t(), 1) == 0) break;
    }
    if (pi < 0) break;
    if (pi != t) {
      d.row(t).swap(d.row(pi));
      if (opts.want_u) s.u.row(t).swap(s.u.row(pi));
    }
    if (pj != t) {
      d.col(t).swap(d.col(pj));
      if (opts.want_v) s.v.col(t).swap(s.v.col(pj));
    }

    bool clean = false;
    while (!clean) {
      clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (is_zero(d(i, t))) continue;
        Int q = round_div(d(i, t), d(t, t));
        if (!is_zero(q)) {
          detail::row_axpy(d, i, t, q);
          if (opts.want_u) detail::row_axpy(s.u, i, t, q);
        }
        if (!is_zero(d(i, t))) {
          // remainder beats the pivot; promote it
          d.row(t).swap(d.row(i));
          if (opts.want_u) s.u.row(t).swap(s.u.row(i));
          clean = false;
        }
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (is_zero(d(t, j))) continue;
        Int q = round_div(d(t, j), d(t, t));
        if (!is_zero(q)) {
          detail::col_axpy(d, j, t, q);
          if (opts.want_v) detail::col_axpy(s.v, j, t, q);
        }
        if (!is_zero(d(t, j))) {
          d.col(t).swap(d.col(j));
          if (opts.want_v) s.v.col(t).swap(s.v.col(j));
          clean = false;
        }
      }
      if (clean && mpz_cmpabs_ui(d(t, t).get_mpz_t(), 1) != 0) {
        // pivot must divide every remaining entry; if not, fold the
        // offending row in and keep reducing
        for (Index i = t + 1; i < rows && clean; ++i) {
          for (Index j = t + 1; j < cols; ++j) {
            if (is_zero(d(i, j)) ||
                mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t()))
              continue;
            detail::row_axpy(d, t, i, Int(-1));
            if (opts.want_u) detail::row_axpy(s.u, t, i, Int(-1));
            clean = false;
            break;
          }
        }
      }
    }
    ++t;
  }
  s.rank = t;
  for (Index i = 0; i < s.rank; ++i) {
    if (sgn(d(i, i)) < 0) {
      d(i, i) = -d(i, i);
      if (opts.want_u) s.u.row(i) = -s.u.row(i);
    }
  }
  return s;
}

// Exact solver for A * X = B over Z, reusable across right-hand sides.
// Generalized-diagonal matrices bypass the Smith form entirely.
class LinearSolver {
 public:
  explicit LinearSolver(IntMat a) : a_(std::move(a)) {
    diag_ = is_generalized_diagonal(a_);
    if (diag_) {
      row_pivot_.assign(static_cast<std::size_t>(a_.rows()), -1);
      for (Index i = 0; i < a_.rows(); ++i)
        for (Index j = 0; j < a_.cols(); ++j)
          if (!is_zero(a_(i, j))) row_pivot_[static_cast<std::size_t>(i)] = j;
    } else {
      smith_ = smith_normal_form(a_);
    }
  }

  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }

  // One solution of A x = b, or nullopt when none exists.
  std::optional<IntVec> solve(const IntVec& b) const {
    if (b.size() != a_.rows()) throw std::invalid_argument("solve: bad rhs size");
    if (diag_) return solve_diagonal(b);
    IntVec ub = smith_->u * b;
    IntVec y = IntVec::Zero(a_.cols());
    for (Index i = 0; i < a_.rows(); ++i) {
      if (i < smith_->rank) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub(i).get_mpz_t(),
                    smith_->d(i, i).get_mpz_t());
        if (!is_zero(r)) return std::nullopt;
        y(i) = q;
      } else if (!is_zero(ub(i))) {
        return std::nullopt;
      }
    }
    return smith_->v * y;
  }

  std::optional<IntMat> solve(const IntMat& b) const {
    IntMat x(a_.cols(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
      auto col = solve(IntVec(b.col(j)));
      if (!col) return std::nullopt;
      x.col(j) = *col;
    }
    return x;
  }

  bool solvable(const IntMat& b) const { return solve(b).has_value(); }

 private:
  std::optional<IntVec> solve_diagonal(const IntVec& b) const {
    IntVec x = IntVec::Zero(a_.cols());
    for (Index i = 0; i < a_.rows(); ++i) {
      Index j = row_pivot_[static_cast<std::size_t>(i)];
      if (j < 0) {
        if (!is_zero(b(i))) return std::nullopt;
        continue;
      }
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), b(i).get_mpz_t(),
                  a_(i, j).get_mpz_t());
      if (!is_zero(r)) return std::nullopt;
      x(j) = q;
    }
    return x;
  }

  IntMat a_;
  bool diag_ = false;
  std::vector<Index> row_pivot_;
  std::optional<SmithForm<Int>> smith_;
};

// Basis of { x : A x = 0 }, one column per basis vector.
inline IntMat lattice_kernel(const IntMat& a) {
  if (is_generalized_diagonal(a)) {
    std::vector<bool> pinned(static_cast<std::size_t>(a.cols()), false);
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        if (!is_zero(a(i, j))) pinned[static_cast<std::size_t>(j)] = true;
    std::vector<Index> free_cols;
    for (Index j = 0; j < a.cols(); ++j)
      if (!pinned[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    IntMat k = IntMat::Zero(a.cols(), static_cast<Index>(free_cols.size()));
    for (std::size_t c = 0; c < free_cols.size(); ++c)
      k(free_cols[c], static_cast<Index>(c)) = 1;
    return k;
  }
  auto s = smith_normal_form(a, {.want_u = false, .want_v = true});
  return s.v.rightCols(a.cols() - s.rank);
}

// representative of x mod k in (-k/2, k/2]
inline Int mod_sym(const Int& x, const Int& k) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  if (2 * r > k) r -= k;
  return r;
}

namespace detail {

inline void reduce_mod(IntMat& m, const Int& k) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) m(i, j) = mod_sym(m(i, j), k);
}

}  // namespace detail

// Columns spanning { x : A x = 0 mod k } together with k Z^cols, k > 0.
// Everything is reduced mod k after each elimination step, so entries stay
// single precision no matter how the integer Smith form would have swollen.
// The result omits the k*identity block; callers that need the full lattice
// append it (preimage_lattice_mod does).
inline IntMat preimage_kernel_mod(const IntMat& a, const Int& k) {
  if (sgn(k) <= 0) throw std::invalid_argument("preimage_kernel_mod: modulus must be positive");
  IntMat d = a;
  detail::reduce_mod(d, k);
  const Index rows = d.rows(), cols = d.cols();
  IntMat v = IntMat::Identity(cols, cols);

  Index t = 0;
  while (t < rows && t < cols) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < rows && pj < 0; ++i) {
      for (Index j = t; j < cols; ++j) {
        if (mpz_sgn(d(i, j).get_mpz_t()) == 0) continue;
        if (pi < 0 || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          if (mpz_cmpabs_ui(d(i, j).get_mpz_t(), 1) == 0) break;
        }
      }
      if (pi >= 0 && mpz_cmpabs_ui(d(pi, pj).get_mpz_t(), 1) == 0) break;
    }
    if (pi < 0) break;
    if (pi != t) d.row(t).swap(d.row(pi));
    if (pj != t) {
      d.col(t).swap(d.col(pj));
      v.col(t).swap(v.col(pj));
    }

    bool clean = false;
    while (!clean) {
      clean = true;
      for (Index i = t + 1; i < rows; ++i) {
        if (is_zero(d(i, t))) continue;
        Int q = round_div(d(i, t), d(t, t));
        if (!is_zero(q)) {
          detail::row_axpy(d, i, t, q);
          for (Index c = t; c < cols; ++c)
            if (!is_zero(d(i, c))) d(i, c) = mod_sym(d(i, c), k);
        }
        if (!is_zero(d(i, t))) {
          d.row(t).swap(d.row(i));
          clean = false;
        }
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (is_zero(d(t, j))) continue;
        Int q = round_div(d(t, j), d(t, t));
        if (!is_zero(q)) {
          detail::col_axpy(d, j, t, q);
          detail::col_axpy(v, j, t, q);
          for (Index r = 0; r < rows; ++r)
            if (!is_zero(d(r, j))) d(r, j) = mod_sym(d(r, j), k);
          for (Index r = 0; r < cols; ++r)
            if (!is_zero(v(r, j))) v(r, j) = mod_sym(v(r, j), k);
        }
        if (!is_zero(d(t, j))) {
          d.col(t).swap(d.col(j));
          v.col(t).swap(v.col(j));
          clean = false;
        }
      }
    }
    ++t;
  }

  std::vector<Index> keep;
  std::vector<Int> scale;
  for (Index j = 0; j < cols; ++j) {
    Int dj = j < t ? abs(d(j, j)) : Int(0);
    Int g;
    mpz_gcd(g.get_mpz_t(), dj.get_mpz_t(), k.get_mpz_t());
    Int s = k / g;  // gcd(0, k) = k, so unconstrained columns get scale 1
    if (s == k) continue;  // k * column lies in k Z^cols already
    keep.push_back(j);
    scale.push_back(std::move(s));
  }
  IntMat out = IntMat::Zero(cols, static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    bool nonzero = false;
    for (Index r = 0; r < cols; ++r) {
      Int entry = mod_sym(Int(v(r, keep[c]) * scale[c]), k);
      if (!is_zero(entry)) nonzero = true;
      out(r, static_cast<Index>(c)) = std::move(entry);
    }
    if (!nonzero) out.col(static_cast<Index>(c)).setZero();
  }
  // drop columns that reduced to zero
  Index nz = 0;
  for (Index c = 0; c < out.cols(); ++c)
    if (!out.col(c).isZero()) {
      if (nz != c) out.col(nz) = out.col(c);
      ++nz;
    }
  return out.leftCols(nz);
}

// Generators of { x : A x = 0 mod k } for uniform modulus k >= 0
// (k = 0 is the plain kernel).
inline IntMat preimage_lattice_mod(const IntMat& a, const Int& k) {
  if (is_zero(k)) return lattice_kernel(a);
  IntMat kernel_part = preimage_kernel_mod(a, k);
  IntMat gens(a.cols(), kernel_part.cols() + a.cols());
  gens.leftCols(kernel_part.cols()) = kernel_part;
  gens.rightCols(a.cols()) = IntMat(k * IntMat::Identity(a.cols(), a.cols()));
  return gens;
}

// C = A * B walking only the nonzero entries of B; dense Eigen products over
// bignum scalars would touch every triple.
inline IntMat sparse_product(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("sparse_product: shape");
  IntMat c = IntMat::Zero(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index k = 0; k < b.rows(); ++k) {
      const Int& w = b(k, j);
      if (is_zero(w)) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        const Int& src = a(i, k);
        if (is_zero(src)) continue;
        mpz_addmul(c(i, j).get_mpz_t(), w.get_mpz_t(), src.get_mpz_t());
      }
    }
  }
  return c;
}

}  // namespace cohomforge
