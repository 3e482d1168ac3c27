#ifndef NT_MATRIX_HPP
#define NT_MATRIX_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace nt {

/// Dense matrix over Z with arbitrary-precision entries, row-major.
/// All arithmetic is exact; there is no overflow anywhere in this module.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix diagonal(const std::vector<mpz_class>& d);
  static IntMatrix from_row(const std::vector<mpz_class>& row);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<mpz_class> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<mpz_class>& r);

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix add(const IntMatrix& o) const;
  IntMatrix sub(const IntMatrix& o) const;
  IntMatrix negated() const;

  /// Stack o below this (column counts must match).
  IntMatrix vstack(const IntMatrix& o) const;

  bool operator==(const IntMatrix& o) const = default;
  bool is_zero() const;

  // In-place elementary operations (used by the normal-form algorithms).
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  /// Exact determinant by fraction-free (Bareiss) elimination. Square only.
  mpz_class determinant() const;

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  std::vector<mpz_class> e_;
};

std::vector<mpz_class> mul_row_vec(const std::vector<mpz_class>& x, const IntMatrix& m);

struct HnfResult {
  IntMatrix h;  // row Hermite normal form: pivots positive, entries above reduced into [0, pivot)
  IntMatrix u;  // unimodular, u * m = h
};

HnfResult hnf(const IntMatrix& m);

/// u * m * v = diag(d); d nonnegative, d[i] | d[i+1] among nonzero entries,
/// zeros trailing. u_inv/v_inv are tracked during the reduction so callers
/// never invert a matrix.
struct SmithDecomposition {
  std::vector<mpz_class> d;
  IntMatrix u, u_inv, v, v_inv;
  IntMatrix diagonal(std::size_t rows, std::size_t cols) const;
  std::size_t rank() const;
};

SmithDecomposition snf(const IntMatrix& m);

/// Solve m*x = b over Z (column convention). Absence of a solution is a value.
std::optional<std::vector<mpz_class>> solve_right(const IntMatrix& m, const std::vector<mpz_class>& b);
/// Solve x*m = b over Z (row convention).
std::optional<std::vector<mpz_class>> solve_left(const IntMatrix& m, const std::vector<mpz_class>& b);

/// Basis of {x : m*x = 0}, one kernel vector per returned column.
IntMatrix right_kernel(const IntMatrix& m);
/// Basis of {x : x*m = 0}, one kernel vector per returned row.
IntMatrix left_kernel(const IntMatrix& m);

// Exact rational solves (change of basis between integral bases lives here).
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

QMat qmat(std::size_t rows, std::size_t cols);
QMat qmat_identity(std::size_t n);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qvec_mul(const QVec& x, const QMat& m);
mpq_class qmat_det(QMat a);
/// Inverse of a nonsingular rational matrix; throws on singular input.
QMat qmat_inverse(QMat a);
/// Solve x*m = b over Q; nullopt when the system is inconsistent.
std::optional<QVec> qsolve_left(const QMat& m, const QVec& b);

}  // namespace nt

#endif
