#include "nt/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "nt/error.hpp"

namespace nt {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  e_.resize(rows_ * cols_);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(errc::internal, "ragged initializer");
    std::size_t j = 0;
    for (long v : r) at(i, j++) = v;
    ++i;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<mpz_class>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_row(const std::vector<mpz_class>& row) {
  IntMatrix m(1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) m.at(0, j) = row[j];
  return m;
}

std::vector<mpz_class> IntMatrix::row(std::size_t i) const {
  return std::vector<mpz_class>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

void IntMatrix::set_row(std::size_t i, const std::vector<mpz_class>& r) {
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = r[j];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols_ != o.rows_) fail(errc::internal, "matrix dim mismatch in mul");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::add(const IntMatrix& o) const {
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

IntMatrix IntMatrix::sub(const IntMatrix& o) const {
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

IntMatrix IntMatrix::negated() const {
  IntMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
  return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const {
  if (cols_ != o.cols_ && rows_ != 0 && o.rows_ != 0) fail(errc::internal, "vstack dim mismatch");
  std::size_t c = rows_ == 0 ? o.cols_ : cols_;
  IntMatrix r(rows_ + o.rows_, c);
  r.e_ = e_;
  r.e_.insert(r.e_.end(), o.e_.begin(), o.e_.end());
  return r;
}

bool IntMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const mpz_class& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) at(dst, j) += k * at(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += k * at(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) fail(errc::internal, "determinant of non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a(*this);
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<mpz_class> mul_row_vec(const std::vector<mpz_class>& x, const IntMatrix& m) {
  if (x.size() != m.rows()) fail(errc::internal, "row-vector dim mismatch");
  std::vector<mpz_class> r(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += x[i] * m.at(i, j);
  }
  return r;
}

namespace {

// Smallest-|entry| pivot in column c among rows [from, rows).
std::size_t pick_pivot_row(const IntMatrix& m, std::size_t c, std::size_t from) {
  std::size_t best = m.rows();
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (m.at(i, c) == 0) continue;
    if (best == m.rows() || mpz_cmpabs(m.at(i, c).get_mpz_t(), m.at(best, c).get_mpz_t()) < 0) best = i;
  }
  return best;
}

mpz_class fdiv_q(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  IntMatrix h(m);
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // Euclidean elimination below row r until column c has a lone pivot.
    for (;;) {
      std::size_t p = pick_pivot_row(h, c, r);
      if (p == m.rows()) break;
      h.swap_rows(r, p);
      u.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        mpz_class q = fdiv_q(h.at(i, c), h.at(r, c));
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) {
        if (h.at(r, c) < 0) {
          h.negate_row(r);
          u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
          mpz_class q = fdiv_q(h.at(i, c), h.at(r, c));
          h.add_row_multiple(i, r, -q);
          u.add_row_multiple(i, r, -q);
        }
        ++r;
        break;
      }
    }
  }
  return {std::move(h), std::move(u)};
}

IntMatrix SmithDecomposition::diagonal(std::size_t rows, std::size_t cols) const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m.at(i, i) = d[i];
  return m;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& x : d)
    if (x != 0) ++r;
  return r;
}

SmithDecomposition snf(const IntMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  IntMatrix a(m);
  SmithDecomposition s;
  s.u = IntMatrix::identity(nr);
  s.u_inv = IntMatrix::identity(nr);
  s.v = IntMatrix::identity(nc);
  s.v_inv = IntMatrix::identity(nc);

  // Row op on a: mirror on u (and inverse op on u_inv columns).
  auto row_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
    a.add_row_multiple(dst, src, k);
    s.u.add_row_multiple(dst, src, k);
    s.u_inv.add_col_multiple(src, dst, -k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
    a.add_col_multiple(dst, src, k);
    s.v.add_col_multiple(dst, src, k);
    s.v_inv.add_row_multiple(src, dst, -k);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    s.u.swap_rows(i, j);
    s.u_inv.swap_cols(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    s.v.swap_cols(i, j);
    s.v_inv.swap_rows(i, j);
  };
  auto row_negate = [&](std::size_t i) {
    a.negate_row(i);
    s.u.negate_row(i);
    s.u_inv.negate_col(i);
  };

  const std::size_t nmin = std::min(nr, nc);
  for (std::size_t k = 0; k < nmin; ++k) {
    for (;;) {
      // Locate smallest nonzero |entry| in the trailing submatrix.
      std::size_t pi = nr, pj = nc;
      for (std::size_t i = k; i < nr; ++i)
        for (std::size_t j = k; j < nc; ++j) {
          if (a.at(i, j) == 0) continue;
          if (pi == nr || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == nr) break;  // trailing submatrix is zero
      row_swap(k, pi);
      col_swap(k, pj);
      bool reduced = true;
      for (std::size_t i = k + 1; i < nr; ++i) {
        if (a.at(i, k) == 0) continue;
        mpz_class q = fdiv_q(a.at(i, k), a.at(k, k));
        row_add(i, k, -q);
        if (a.at(i, k) != 0) reduced = false;
      }
      for (std::size_t j = k + 1; j < nc; ++j) {
        if (a.at(k, j) == 0) continue;
        mpz_class q = fdiv_q(a.at(k, j), a.at(k, k));
        col_add(j, k, -q);
        if (a.at(k, j) != 0) reduced = false;
      }
      if (!reduced) continue;
      // Pivot divides every remaining entry, or pull a bad row up and retry.
      std::size_t bi = nr, bj = nc;
      for (std::size_t i = k + 1; i < nr && bi == nr; ++i)
        for (std::size_t j = k + 1; j < nc; ++j)
          if (a.at(i, j) % a.at(k, k) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == nr) {
        if (a.at(k, k) < 0) row_negate(k);
        break;
      }
      (void)bj;
      row_add(k, bi, 1);
    }
  }
  s.d.resize(nmin);
  for (std::size_t i = 0; i < nmin; ++i) s.d[i] = a.at(i, i);
  return s;
}

std::optional<std::vector<mpz_class>> solve_right(const IntMatrix& m, const std::vector<mpz_class>& b) {
  if (b.size() != m.rows()) fail(errc::internal, "solve_right: b size mismatch");
  SmithDecomposition s = snf(m);
  // m x = b  <=>  D (v^-1 x) = u b.
  std::vector<mpz_class> ub(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) ub[i] += s.u.at(i, j) * b[j];
  std::vector<mpz_class> y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class di = i < s.d.size() ? s.d[i] : mpz_class(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % di != 0) return std::nullopt;
      if (i < m.cols()) y[i] = ub[i] / di;
    }
  }
  std::vector<mpz_class> x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i] += s.v.at(i, j) * y[j];
  return x;
}

std::optional<std::vector<mpz_class>> solve_left(const IntMatrix& m, const std::vector<mpz_class>& b) {
  return solve_right(m.transpose(), b);
}

IntMatrix right_kernel(const IntMatrix& m) {
  SmithDecomposition s = snf(m);
  std::size_t rank = s.rank();
  std::size_t dim = m.cols() - rank;
  IntMatrix k(m.cols(), dim);
  for (std::size_t t = 0; t < dim; ++t)
    for (std::size_t i = 0; i < m.cols(); ++i) k.at(i, t) = s.v.at(i, rank + t);
  return k;
}

IntMatrix left_kernel(const IntMatrix& m) {
  SmithDecomposition s = snf(m);
  std::size_t rank = s.rank();
  std::size_t dim = m.rows() - rank;
  IntMatrix k(dim, m.rows());
  for (std::size_t t = 0; t < dim; ++t)
    for (std::size_t j = 0; j < m.rows(); ++j) k.at(t, j) = s.u.at(rank + t, j);
  return k;
}

QMat qmat(std::size_t rows, std::size_t cols) { return QMat(rows, QVec(cols)); }

QMat qmat_identity(std::size_t n) {
  QMat m = qmat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  QMat r = qmat(n, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

QVec qvec_mul(const QVec& x, const QMat& m) {
  std::size_t c = m.empty() ? 0 : m[0].size();
  QVec r(c);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < c; ++j) r[j] += x[i] * m[i][j];
  }
  return r;
}

mpq_class qmat_det(QMat a) {
  std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

QMat qmat_inverse(QMat a) {
  std::size_t n = a.size();
  QMat inv = qmat_identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) fail(errc::internal, "qmat_inverse: singular matrix");
    std::swap(a[p], a[k]);
    std::swap(inv[p], inv[k]);
    mpq_class piv = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= piv;
      inv[k][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      mpq_class f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

std::optional<QVec> qsolve_left(const QMat& m, const QVec& b) {
  // x * m = b: eliminate on the transpose, tracking the combination.
  std::size_t rows = m.size(), cols = m.empty() ? b.size() : m[0].size();
  QMat a = qmat(cols, rows + 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[j][i] = m[i][j];
  for (std::size_t j = 0; j < cols; ++j) a[j][rows] = b[j];
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < rows && r < cols; ++c) {
    std::size_t p = r;
    while (p < cols && a[p][c] == 0) ++p;
    if (p == cols) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < cols; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j <= rows; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  QVec x(rows);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = a[i][rows] / a[i][pivots[i]];
  for (std::size_t i = r; i < cols; ++i)
    if (a[i][rows] != 0) return std::nullopt;
  return x;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::reducible_polynomial: return "ReduciblePolynomial";
    case errc::not_a_ring: return "NotARing";
    case errc::missing_basis: return "MissingBasis";
    case errc::not_maximal: return "NotMaximal";
    case errc::index_divisor: return "IndexDivisor";
    case errc::zero_element: return "ZeroElement";
    case errc::zero_ideal: return "ZeroIdeal";
    case errc::uncertified_result: return "UncertifiedResult";
    case errc::units_unavailable: return "UnitsUnavailable";
    case errc::bad_supplied_unit: return "BadSuppliedUnit";
    case errc::witness_not_found: return "WitnessNotFound";
    case errc::not_an_embedding: return "NotAnEmbedding";
    case errc::not_an_automorphism: return "NotAnAutomorphism";
    case errc::not_cyclic_over_base: return "NotCyclicOverBase";
    case errc::ill_formed_hom: return "IllFormedHom";
    case errc::infinite_cohomology: return "InfiniteCohomology";
    case errc::resolvent_exhausted: return "ResolventExhausted";
    case errc::unsupported_place: return "UnsupportedPlace";
    case errc::unsupported_local_degree: return "UnsupportedLocalDegree";
    case errc::parse_error: return "ParseError";
    case errc::verification_error: return "VerificationError";
    case errc::io_error: return "IOError";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace nt
