#include "nt/numberfield.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "nt/error.hpp"

namespace nt {

namespace {

QVec pad(QVec v, std::size_t n) {
  v.resize(n);
  return v;
}

// Extended Euclid over Q[x]: returns (g, s) with s*a ≡ g mod b, g = gcd.
std::pair<QPoly, QPoly> qxgcd_mod(const QPoly& a, const QPoly& b) {
  QPoly r0 = b, r1 = a;  // invariant: r_i ≡ s_i * a (mod b)
  QPoly s0 = {}, s1 = {mpq_class(1)};
  while (!r1.empty()) {
    auto [q, r] = qdivmod(r0, r1);
    QPoly s2 = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

mpz_class lcm_denoms(const QVec& v) {
  mpz_class l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

bool qvec_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

std::vector<mpz_class> qvec_to_z(const QVec& v) {
  std::vector<mpz_class> z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = v[i].get_num();
  return z;
}

QVec zvec_to_q(const std::vector<mpz_class>& v) {
  QVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = v[i];
  return q;
}

// Is x in the lattice spanned by the rows of an upper-triangular HNF basis?
bool in_hnf_lattice(const IntMatrix& h, std::vector<mpz_class> x) {
  std::size_t n = h.rows();
  for (std::size_t jj = n; jj-- > 0;) {
    if (x[jj] == 0) continue;
    if (h.at(jj, jj) == 0 || x[jj] % h.at(jj, jj) != 0) return false;
    mpz_class c = x[jj] / h.at(jj, jj);
    for (std::size_t k = 0; k <= jj; ++k) x[k] -= c * h.at(jj, k);
  }
  return std::all_of(x.begin(), x.end(), [](const mpz_class& v) { return v == 0; });
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  auto push = [&](const mpz_class& p) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  };
  while (n % 2 == 0) {
    push(2);
    n /= 2;
  }
  for (mpz_class d = 3; d * d <= n; d += 2)
    while (n % d == 0) {
      push(d);
      n /= d;
    }
  if (n > 1) push(n);
  return out;
}

bool is_prime(const mpz_class& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) return 0;
  mpz_class m = n < 0 ? mpz_class(-1) : mpz_class(1);
  for (const auto& [p, e] : factor_integer(n))
    if (e % 2 == 1) m *= p;
  return m;
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(FieldPtr field, QVec coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (coords_.size() != field_->degree()) fail(errc::internal, "element coordinate length mismatch");
}

FieldElem FieldElem::from_rational(const FieldPtr& field, const mpq_class& c) {
  QVec v(field->degree());
  v[0] = c;
  return FieldElem(field, std::move(v));
}

FieldElem FieldElem::gen(const FieldPtr& field) {
  QVec v(field->degree());
  if (field->degree() == 1) {
    // theta is the root of the degree-1 polynomial.
    v[0] = mpq_class(-field->min_poly()[0]);
  } else {
    v[1] = 1;
  }
  return FieldElem(field, std::move(v));
}

FieldElem FieldElem::from_basis(const FieldPtr& field, const std::vector<mpz_class>& z) {
  return FieldElem(field, qvec_mul(zvec_to_q(z), field->basis_matrix()));
}

bool FieldElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const mpq_class& q) { return q == 0; });
}

bool FieldElem::operator==(const FieldElem& o) const { return coords_ == o.coords_; }

FieldElem FieldElem::operator+(const FieldElem& o) const {
  QVec r(coords_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] + o.coords_[i];
  return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  QVec r(coords_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] - o.coords_[i];
  return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator-() const {
  QVec r(coords_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -coords_[i];
  return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  QPoly prod = qmul(qtrim(coords_), qtrim(o.coords_));
  QPoly red = qdivmod(prod, to_qpoly(field_->min_poly())).second;
  return FieldElem(field_, pad(std::move(red), field_->degree()));
}

FieldElem FieldElem::scale(const mpq_class& c) const {
  QVec r(coords_);
  for (auto& x : r) x *= c;
  return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(errc::zero_element, "inverse of zero");
  auto [g, s] = qxgcd_mod(qtrim(coords_), to_qpoly(field_->min_poly()));
  if (degree(g) != 0) fail(errc::internal, "gcd with irreducible min_poly is nontrivial");
  QPoly inv = qscale(s, mpq_class(1) / g[0]);
  inv = qdivmod(inv, to_qpoly(field_->min_poly())).second;
  return FieldElem(field_, pad(std::move(inv), field_->degree()));
}

FieldElem FieldElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem r = from_rational(field_, 1), b = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

namespace {

// Multiplication-by-x matrix in the power basis; row k = coords of theta^k * x.
QMat mult_matrix(const FieldElem& x) {
  std::size_t n = x.field()->degree();
  QMat m = qmat(n, n);
  QPoly cur = qtrim(x.coords());
  QPoly f = to_qpoly(x.field()->min_poly());
  for (std::size_t k = 0; k < n; ++k) {
    QVec row = pad(cur, n);
    m[k] = row;
    // multiply by theta
    cur.insert(cur.begin(), mpq_class(0));
    cur = qdivmod(qtrim(std::move(cur)), f).second;
  }
  return m;
}

}  // namespace

mpq_class FieldElem::norm_q() const { return qmat_det(mult_matrix(*this)); }

mpq_class FieldElem::trace_q() const {
  QMat m = mult_matrix(*this);
  mpq_class t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

mpq_class FieldElem::norm_resultant() const {
  // Nm(g(theta)) = Res(f, g) for monic f.
  return resultant(to_qpoly(field_->min_poly()), qtrim(coords_));
}

QVec FieldElem::basis_coords() const { return qvec_mul(coords_, field_->basis_inverse()); }

bool FieldElem::is_integral() const { return qvec_integral(basis_coords()); }

std::pair<std::vector<mpz_class>, mpz_class> FieldElem::integral_split() const {
  QVec bc = basis_coords();
  mpz_class d = lcm_denoms(bc);
  std::vector<mpz_class> y(bc.size());
  for (std::size_t i = 0; i < bc.size(); ++i) {
    mpq_class t = bc[i] * d;
    y[i] = t.get_num();
  }
  return {std::move(y), std::move(d)};
}

std::string FieldElem::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// FracIdeal

FracIdeal FracIdeal::unit_ideal(const FieldPtr& field) {
  FracIdeal id;
  id.field_ = field;
  id.basis_ = IntMatrix::identity(field->degree());
  id.denom_ = 1;
  return id;
}

void FracIdeal::normalize() {
  std::size_t n = field_->degree();
  HnfResult h = hnf(basis_);
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.at(i, j) = h.h.at(i, j);
  for (std::size_t i = 0; i < n; ++i)
    if (b.at(i, i) == 0) fail(errc::zero_ideal, "lattice has rank below the field degree");
  mpz_class g = denom_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.at(i, j).get_mpz_t());
  if (g > 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b.at(i, j) /= g;
    denom_ /= g;
  }
  basis_ = std::move(b);
}

FracIdeal FracIdeal::from_lattice(const FieldPtr& field, IntMatrix rows, mpz_class denom) {
  if (denom <= 0) fail(errc::internal, "ideal denominator must be positive");
  FracIdeal id;
  id.field_ = field;
  id.basis_ = std::move(rows);
  id.denom_ = std::move(denom);
  id.normalize();
  return id;
}

FracIdeal FracIdeal::from_generators(const FieldPtr& field, const std::vector<FieldElem>& gens) {
  std::size_t n = field->degree();
  std::vector<QVec> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    QVec gb = g.basis_coords();
    // g * omega_j for each basis element
    for (std::size_t j = 0; j < n; ++j) {
      QVec prod(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (gb[i] == 0) continue;
        const auto& t = field->mult_table(i, j);
        for (std::size_t k = 0; k < n; ++k) prod[k] += gb[i] * t[k];
      }
      rows.push_back(std::move(prod));
    }
  }
  if (rows.empty()) fail(errc::zero_ideal, "ideal generated by zero");
  mpz_class d = 1;
  for (const auto& r : rows) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), lcm_denoms(r).get_mpz_t());
  IntMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class t = rows[i][j] * d;
      m.at(i, j) = t.get_num();
    }
  return from_lattice(field, std::move(m), d);
}

FracIdeal FracIdeal::principal(const FieldElem& x) { return from_generators(x.field(), {x}); }

FracIdeal FracIdeal::mul(const FracIdeal& o) const {
  std::size_t n = field_->degree();
  IntMatrix rows(n * n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // product of basis row a of this and row b of o, via the mult table
      for (std::size_t i = 0; i < n; ++i) {
        if (basis_.at(a, i) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (o.basis_.at(b, j) == 0) continue;
          mpz_class c = basis_.at(a, i) * o.basis_.at(b, j);
          const auto& t = field_->mult_table(i, j);
          for (std::size_t k = 0; k < n; ++k) rows.at(a * n + b, k) += c * t[k];
        }
      }
    }
  return from_lattice(field_, std::move(rows), denom_ * o.denom_);
}

FracIdeal FracIdeal::inverse() const {
  std::size_t n = field_->degree();
  // Integral part J = lattice(basis); J^{-1} = {y : yJ ⊆ (N)} / N, N = |det basis|.
  mpz_class nrm = abs(basis_.determinant());
  if (nrm == 0) fail(errc::zero_ideal, "inverse of the zero ideal");
  IntMatrix c(n, n * n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      // coords of omega_i * (row b), placed in block b
      for (std::size_t j = 0; j < n; ++j) {
        if (basis_.at(b, j) == 0) continue;
        const auto& t = field_->mult_table(i, j);
        for (std::size_t k = 0; k < n; ++k) c.at(i, b * n + k) += basis_.at(b, j) * t[k];
      }
    }
  IntMatrix scaled(n * n, n * n);
  for (std::size_t i = 0; i < n * n; ++i) scaled.at(i, i) = nrm;
  IntMatrix ker = left_kernel(c.vstack(scaled));
  IntMatrix kk(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) kk.at(i, j) = ker.at(i, j);
  FracIdeal inv = from_lattice(field_, std::move(kk), nrm);
  // restore the denominator: (L/d)^{-1} = d * L^{-1}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.basis_.at(i, j) *= denom_;
  inv.normalize();
  FracIdeal check = inv.mul(*this);
  if (!(check == unit_ideal(field_))) fail(errc::internal, "ideal inverse verification failed");
  return inv;
}

FracIdeal FracIdeal::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FracIdeal r = unit_ideal(field_), b = *this;
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r.mul(b);
    b = b.mul(b);
    k >>= 1;
  }
  return r;
}

FracIdeal FracIdeal::sum(const FracIdeal& o) const {
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), denom_.get_mpz_t(), o.denom_.get_mpz_t());
  IntMatrix rows(2 * field_->degree(), field_->degree());
  mpz_class s1 = d / denom_, s2 = d / o.denom_;
  for (std::size_t i = 0; i < field_->degree(); ++i)
    for (std::size_t j = 0; j < field_->degree(); ++j) {
      rows.at(i, j) = basis_.at(i, j) * s1;
      rows.at(field_->degree() + i, j) = o.basis_.at(i, j) * s2;
    }
  return from_lattice(field_, std::move(rows), d);
}

mpq_class FracIdeal::norm() const {
  mpz_class dn;
  mpz_pow_ui(dn.get_mpz_t(), denom_.get_mpz_t(), static_cast<unsigned long>(field_->degree()));
  mpq_class r(abs(basis_.determinant()), dn);
  r.canonicalize();
  return r;
}

bool FracIdeal::contains(const FieldElem& x) const {
  auto [y, d] = x.integral_split();
  // x in L/denom  <=>  denom*x in L; denom*x has basis coords denom*y/d.
  std::vector<mpz_class> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    mpz_class t = denom_ * y[i];
    if (t % d != 0) return false;
    v[i] = t / d;
  }
  return in_hnf_lattice(basis_, v);
}

bool FracIdeal::contains_lattice(const FracIdeal& o) const {
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), denom_.get_mpz_t(), o.denom_.get_mpz_t());
  mpz_class s1 = d / denom_, s2 = d / o.denom_;
  IntMatrix mine = basis_;
  for (std::size_t i = 0; i < mine.rows(); ++i)
    for (std::size_t j = 0; j < mine.cols(); ++j) mine.at(i, j) *= s1;
  for (std::size_t i = 0; i < o.basis_.rows(); ++i) {
    std::vector<mpz_class> row = o.basis_.row(i);
    for (auto& x : row) x *= s2;
    if (!in_hnf_lattice(mine, row)) return false;
  }
  return true;
}

bool FracIdeal::operator==(const FracIdeal& o) const {
  return denom_ == o.denom_ && basis_ == o.basis_;
}

std::vector<FieldElem> FracIdeal::generators() const {
  std::vector<FieldElem> g;
  mpq_class inv_d(1, denom_);
  inv_d.canonicalize();
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    g.push_back(FieldElem::from_basis(field_, basis_.row(i)).scale(inv_d));
  return g;
}

std::string FracIdeal::str() const {
  std::ostringstream os;
  os << basis_.str();
  if (denom_ != 1) os << "/" << denom_;
  return os.str();
}

// ---------------------------------------------------------------------------
// PrimeIdeal

mpz_class PrimeIdeal::norm() const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), f_);
  return r;
}

bool PrimeIdeal::less(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_;
  if (a.f_ != b.f_) return a.f_ < b.f_;
  if (a.e_ != b.e_) return a.e_ < b.e_;
  const IntMatrix &x = a.ideal_.basis(), &y = b.ideal_.basis();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x.at(i, j) != y.at(i, j)) return x.at(i, j) < y.at(i, j);
  return false;
}

std::string PrimeIdeal::str() const {
  std::ostringstream os;
  os << "(" << p_ << ", " << gen_.str() << ") [e=" << e_ << ",f=" << f_ << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// NumberField

FieldPtr NumberField::create(const ZPoly& min_poly, const std::optional<QMat>& integral_basis) {
  ZPoly f = ztrim(min_poly);
  int n = degree(f);
  if (n < 1) fail(errc::parse_error, "min_poly must be nonconstant");
  if (f.back() != 1) fail(errc::parse_error, "min_poly must be monic");
  if (!is_irreducible_over_q(f)) fail(errc::reducible_polynomial, poly_str(f));

  auto field = std::shared_ptr<NumberField>(new NumberField());
  field->f_ = f;
  field->n_ = static_cast<std::size_t>(n);

  if (n == 1) {
    field->w_ = qmat_identity(1);
  } else if (n == 2) {
    // f = x^2 + bx + c; disc_poly = b^2 - 4c = m s^2 with m squarefree.
    mpz_class b = f[1], c = f[0];
    mpz_class dpoly = b * b - 4 * c;
    mpz_class m = squarefree_part(dpoly);
    mpz_class s2 = dpoly / m;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
    assert(s * s == s2);
    field->w_ = qmat(2, 2);
    field->w_[0][0] = 1;
    mpz_class mm;
    mpz_fdiv_r(mm.get_mpz_t(), m.get_mpz_t(), mpz_class(4).get_mpz_t());
    if (mm == 1) {
      // omega = (1 + sqrt(m))/2, sqrt(m) = (2*theta + b)/s
      field->w_[1][0] = mpq_class(s + b, 2 * s);
      field->w_[1][1] = mpq_class(1, s);
    } else {
      // omega = sqrt(m)
      field->w_[1][0] = mpq_class(b, s);
      field->w_[1][1] = mpq_class(2, s);
    }
    field->w_[1][0].canonicalize();
    field->w_[1][1].canonicalize();
  } else {
    if (!integral_basis) fail(errc::missing_basis, "degree >= 3 requires a supplied integral basis");
    field->w_ = *integral_basis;
    if (field->w_.size() != field->n_) fail(errc::parse_error, "integral basis has wrong size");
  }

  if (qmat_det(field->w_) == 0) fail(errc::not_a_ring, "integral basis is singular");
  field->winv_ = qmat_inverse(field->w_);
  for (const auto& row : field->winv_)
    if (!qvec_integral(row)) fail(errc::not_a_ring, "supplied lattice does not contain Z[theta]");
  {
    mpq_class dw = qmat_det(field->w_);
    mpq_class idx = 1 / abs(dw);
    if (idx.get_den() != 1) fail(errc::not_a_ring, "lattice index is not integral");
    field->index_ = idx.get_num();
  }

  field->build_tables();

  // disc = det(Tr(w_i w_j)); exact integer.
  {
    std::size_t nn = field->n_;
    QVec basis_traces(nn);
    for (std::size_t k = 0; k < nn; ++k)
      basis_traces[k] = FieldElem(field, pad(field->w_[k], nn)).trace_q();
    QMat gram = qmat(nn, nn);
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nn; ++j) {
        const auto& t = field->mult_table(i, j);
        for (std::size_t k = 0; k < nn; ++k) gram[i][j] += mpq_class(t[k]) * basis_traces[k];
      }
    mpq_class d = qmat_det(gram);
    if (d.get_den() != 1) fail(errc::internal, "trace form determinant is not integral");
    field->disc_ = d.get_num();
  }

  if (n == 1 && field->disc_ != 1) fail(errc::internal, "disc of Q must be 1");
  if (n == 2) {
    mpz_class m = squarefree_part(f[1] * f[1] - 4 * f[0]);
    mpz_class mm;
    mpz_fdiv_r(mm.get_mpz_t(), m.get_mpz_t(), mpz_class(4).get_mpz_t());
    mpz_class expected = (mm == 1) ? m : 4 * m;
    if (field->disc_ != expected) fail(errc::internal, "quadratic disc mismatch");
  }

  // Dedekind falsification at primes whose square divides the disc.
  if (n >= 3) {
    for (const auto& [p, e] : factor_integer(field->disc_)) {
      if (e < 2) continue;
      auto factors = factor_mod_p(f, p);
      ZPoly gstar{1}, hstar{1};
      for (const auto& fac : factors) {
        gstar = pmod_mul(gstar, fac.factor, {}, p);
        for (unsigned t = 1; t < fac.multiplicity; ++t) hstar = pmod_mul(hstar, fac.factor, {}, p);
      }
      // F = (g* h* - f)/p over Z, with the monic lifts reduced into [0,p).
      ZPoly prod(gstar.size() + hstar.size() - 1);
      for (std::size_t i = 0; i < gstar.size(); ++i)
        for (std::size_t j = 0; j < hstar.size(); ++j) prod[i + j] += gstar[i] * hstar[j];
      ZPoly bigf(std::max(prod.size(), f.size()));
      for (std::size_t i = 0; i < prod.size(); ++i) bigf[i] += prod[i];
      for (std::size_t i = 0; i < f.size(); ++i) bigf[i] -= f[i];
      for (auto& cc : bigf) {
        assert(cc % p == 0);
        cc /= p;
      }
      ZPoly dbar = pmod_gcd(pmod_gcd(gstar, hstar, p), ztrim(std::move(bigf)), p);
      if (degree(dbar) == 0) {
        if (field->index_ % p == 0)
          fail(errc::not_maximal, "Z[theta] is p-maximal but p divides the lattice index");
        continue;
      }
      // Z[theta] is not p-maximal; the enlargement U(theta) theta^j / p must
      // already lie in the supplied lattice, otherwise it is provably not
      // the maximal order.
      ZPoly fbar = pmod_reduce(f, p);
      ZPoly ubar = pmod_divmod(fbar, dbar, p).first;
      for (int j = 0; j < degree(dbar); ++j) {
        QPoly u = to_qpoly(ubar);
        for (int t = 0; t < j; ++t) u.insert(u.begin(), mpq_class(0));
        u = qdivmod(u, to_qpoly(f)).second;
        u = qscale(u, mpq_class(1, p));
        FieldElem el(field, pad(std::move(u), field->n_));
        if (!el.is_integral())
          fail(errc::not_maximal,
               "Dedekind enlargement at p=" + p.get_str() + " is not contained in the supplied basis");
      }
    }
  }

  // Signature by Sturm root counting.
  {
    SturmIsolator iso(to_qpoly(f));
    field->r1_ = iso.count();
    field->r2_ = (field->n_ - field->r1_) / 2;
    field->sturm_.emplace(std::move(iso));
  }
  return field;
}

void NumberField::build_tables() {
  table_.assign(n_ * n_, {});
  QPoly f = to_qpoly(f_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      QPoly prod = qdivmod(qmul(qtrim(w_[i]), qtrim(w_[j])), f).second;
      QVec coords = qvec_mul(pad(std::move(prod), n_), winv_);
      if (!qvec_integral(coords))
        fail(errc::not_a_ring, "basis product is not integral: the lattice is not a ring");
      table_[i * n_ + j] = qvec_to_z(coords);
      table_[j * n_ + i] = table_[i * n_ + j];
    }
}

std::vector<PrimeIdeal> NumberField::decompose_prime(const mpz_class& p) const {
  if (!is_prime(p)) fail(errc::parse_error, "decompose_prime expects a prime");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = prime_cache_.find(p);
  if (it != prime_cache_.end()) return it->second;
  auto primes = decompose_uncached(p);
  prime_cache_[p] = primes;
  return primes;
}

std::vector<PrimeIdeal> NumberField::decompose_uncached(const mpz_class& p) const {
  FieldPtr self = shared_from_this();
  std::vector<PrimeIdeal> out;
  FieldElem pe = FieldElem::from_rational(self, mpq_class(p));
  FracIdeal p_ideal = FracIdeal::principal(pe);

  auto verify = [&](std::vector<PrimeIdeal>& primes) {
    unsigned efsum = 0;
    FracIdeal prod = FracIdeal::unit_ideal(self);
    for (const auto& P : primes) {
      efsum += P.ramification_e() * P.residue_f();
      if (P.ideal().norm() != P.norm()) fail(errc::verification_error, "prime norm mismatch");
      prod = prod.mul(P.ideal().pow(P.ramification_e()));
    }
    if (efsum != n_) fail(errc::verification_error, "sum of e*f != degree");
    if (!(prod == p_ideal)) fail(errc::verification_error, "product of prime powers != (p)");
    std::sort(primes.begin(), primes.end(), PrimeIdeal::less);
  };

  if (index_ % p == 0) {
    auto sit = supplied_.find(p);
    if (sit == supplied_.end())
      fail(errc::index_divisor, "p=" + p.get_str() + " divides the index; supply a decomposition");
    for (const auto& sp : sit->second) {
      FieldElem g(self, sp.second_gen_coords);
      FracIdeal id = FracIdeal::from_generators(self, {pe, g});
      // The quotient O/P must be a field: every nonzero residue invertible.
      mpz_class q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), sp.f);
      if (id.norm() != q) fail(errc::verification_error, "supplied prime has wrong norm");
      out.emplace_back(p, g, sp.e, sp.f, id);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[i].ideal() == out[j].ideal()) fail(errc::verification_error, "duplicate supplied prime");
    verify(out);
    return out;
  }

  for (const auto& fac : factor_mod_p(f_, p)) {
    QPoly gq = to_qpoly(fac.factor);
    FieldElem g(self, pad(qdivmod(gq, to_qpoly(f_)).second, n_));
    FracIdeal id = FracIdeal::from_generators(self, {pe, g});
    out.emplace_back(p, g, fac.multiplicity, static_cast<unsigned>(degree(fac.factor)), id);
  }
  verify(out);
  return out;
}

void NumberField::supply_decomposition(const mpz_class& p, const std::vector<SuppliedPrime>& data) const {
  std::lock_guard<std::mutex> lock(mu_);
  supplied_[p] = data;
  prime_cache_.erase(p);
}

long NumberField::valuation(const FracIdeal& I, const PrimeIdeal& P) {
  const FieldPtr& field = I.field();
  // Split I = L / d; val = val(L) - e(P) * v_p(d).
  long dval = 0;
  mpz_class d = I.denom();
  while (d % P.p() == 0) {
    d /= P.p();
    ++dval;
  }
  FracIdeal L = FracIdeal::from_lattice(field, I.basis(), 1);
  long v = 0;
  FracIdeal power = P.ideal();
  while (power.contains_lattice(L)) {
    ++v;
    power = power.mul(P.ideal());
  }
  return v - static_cast<long>(P.ramification_e()) * dval;
}

long NumberField::valuation(const FieldElem& x, const PrimeIdeal& P) {
  if (x.is_zero()) fail(errc::zero_element, "valuation of zero");
  return valuation(FracIdeal::principal(x), P);
}

int NumberField::sign_at_real_place(const FieldElem& x, std::size_t k) const {
  if (x.is_zero()) fail(errc::zero_element, "sign of zero");
  std::lock_guard<std::mutex> lock(mu_);
  return sturm_->sign_at_root(k, qtrim(x.coords()));
}

std::pair<mpq_class, mpq_class> NumberField::real_root_interval(std::size_t k, const mpq_class& eps) const {
  std::lock_guard<std::mutex> lock(mu_);
  sturm_->refine(k, eps);
  return sturm_->interval(k);
}

mpq_class NumberField::minkowski_bound() const {
  mpz_class fact = 1, npow = 1;
  for (std::size_t i = 2; i <= n_; ++i) fact *= static_cast<unsigned long>(i);
  for (std::size_t i = 0; i < n_; ++i) npow *= static_cast<unsigned long>(n_);
  mpz_class s;
  mpz_class ad = abs(disc_);
  mpz_sqrt(s.get_mpz_t(), ad.get_mpz_t());
  if (s * s != ad) s += 1;  // ceil
  mpq_class bound(fact * s, npow);
  // 4/pi < 12733/10000
  for (std::size_t i = 0; i < r2_; ++i) bound *= mpq_class(12733, 10000);
  bound.canonicalize();
  return bound;
}

std::string NumberField::str() const {
  std::ostringstream os;
  os << "Q[x]/(" << poly_str(f_) << ")";
  return os.str();
}

}  // namespace nt
