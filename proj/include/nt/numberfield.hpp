#ifndef NT_NUMBERFIELD_HPP
#define NT_NUMBERFIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nt/matrix.hpp"
#include "nt/poly.hpp"

namespace nt {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field, exact rational coordinates in the power basis
/// 1, theta, ..., theta^(n-1).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr field, QVec coords);

  static FieldElem from_rational(const FieldPtr& field, const mpq_class& c);
  static FieldElem gen(const FieldPtr& field);  // theta
  /// From integer coordinates over the integral basis.
  static FieldElem from_basis(const FieldPtr& field, const std::vector<mpz_class>& z);

  const FieldPtr& field() const { return field_; }
  const QVec& coords() const { return coords_; }

  bool is_zero() const;
  bool operator==(const FieldElem& o) const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(const mpz_class& e) const;
  FieldElem scale(const mpq_class& c) const;

  mpq_class norm_q() const;   // det of the multiplication matrix
  mpq_class trace_q() const;  // its trace
  /// Independent route to the norm: Res(min_poly, elem-poly).
  mpq_class norm_resultant() const;

  /// Coordinates over the integral basis (rational in general).
  QVec basis_coords() const;
  bool is_integral() const;
  /// x = y / d with y integral (basis coordinates) and d > 0 minimal.
  std::pair<std::vector<mpz_class>, mpz_class> integral_split() const;

  std::string str() const;

 private:
  FieldPtr field_;
  QVec coords_;
};

class PrimeIdeal;

/// Fractional ideal as lattice(basis rows)/denom over the integral basis;
/// basis is a nonsingular n x n HNF matrix, gcd(content, denom) = 1.
class FracIdeal {
 public:
  FracIdeal() = default;

  static FracIdeal unit_ideal(const FieldPtr& field);
  static FracIdeal from_generators(const FieldPtr& field, const std::vector<FieldElem>& gens);
  static FracIdeal principal(const FieldElem& x);
  /// Lattice with the given integral-basis rows (will be HNF-normalized).
  static FracIdeal from_lattice(const FieldPtr& field, IntMatrix rows, mpz_class denom);

  const FieldPtr& field() const { return field_; }
  const IntMatrix& basis() const { return basis_; }
  const mpz_class& denom() const { return denom_; }

  FracIdeal mul(const FracIdeal& o) const;
  FracIdeal inverse() const;
  FracIdeal pow(const mpz_class& e) const;
  FracIdeal sum(const FracIdeal& o) const;  // I + J
  mpq_class norm() const;                   // absolute norm, positive
  bool contains(const FieldElem& x) const;
  bool contains_lattice(const FracIdeal& o) const;  // o ⊆ this
  bool is_integral() const { return denom_ == 1; }
  bool operator==(const FracIdeal& o) const;

  /// The n generators corresponding to the basis rows, as field elements.
  std::vector<FieldElem> generators() const;

  std::string str() const;

 private:
  FieldPtr field_;
  IntMatrix basis_;
  mpz_class denom_ = 1;
  void normalize();
};

/// Prime ideal with its two-element form (p, second_gen) and local data.
class PrimeIdeal {
 public:
  PrimeIdeal() = default;
  PrimeIdeal(mpz_class p, FieldElem second_gen, unsigned e, unsigned f, FracIdeal id)
      : p_(std::move(p)), gen_(std::move(second_gen)), e_(e), f_(f), ideal_(std::move(id)) {}

  const mpz_class& p() const { return p_; }
  const FieldElem& second_gen() const { return gen_; }
  unsigned ramification_e() const { return e_; }
  unsigned residue_f() const { return f_; }
  const FracIdeal& ideal() const { return ideal_; }
  mpz_class norm() const;

  bool operator==(const PrimeIdeal& o) const { return ideal_ == o.ideal_; }
  /// Deterministic order: (p, f, e, basis entries).
  static bool less(const PrimeIdeal& a, const PrimeIdeal& b);

  std::string str() const;

 private:
  mpz_class p_;
  FieldElem gen_;
  unsigned e_ = 0, f_ = 0;
  FracIdeal ideal_;
};

/// Supplied decomposition datum for primes dividing the index.
struct SuppliedPrime {
  QVec second_gen_coords;  // power-basis coordinates
  unsigned e, f;
};

/// Absolute number field Q[x]/(f) with a verified integral basis.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// Degree <= 2 computes the maximal order analytically; degree >= 3
  /// requires basis rows (power-basis coordinates of each basis element).
  static FieldPtr create(const ZPoly& min_poly, const std::optional<QMat>& integral_basis = std::nullopt);

  const ZPoly& min_poly() const { return f_; }
  std::size_t degree() const { return n_; }
  const QMat& basis_matrix() const { return w_; }       // rows: basis in power coords
  const QMat& basis_inverse() const { return winv_; }   // power -> basis
  const mpz_class& disc() const { return disc_; }
  const mpz_class& index() const { return index_; }     // [O : Z[theta]]
  std::size_t real_places() const { return r1_; }
  std::size_t complex_places() const { return r2_; }

  /// omega_i * omega_j in integral-basis coordinates.
  const std::vector<mpz_class>& mult_table(std::size_t i, std::size_t j) const {
    return table_[i * n_ + j];
  }

  /// All primes above p, canonically ordered. Throws IndexDivisor when p
  /// divides [O : Z[theta]] and no supplied decomposition is registered.
  std::vector<PrimeIdeal> decompose_prime(const mpz_class& p) const;
  /// Register a fixture-supplied decomposition (verified on first use).
  void supply_decomposition(const mpz_class& p, const std::vector<SuppliedPrime>& data) const;

  /// Exact P-adic valuation; throws ZeroElement / ZeroIdeal on zero input.
  static long valuation(const FieldElem& x, const PrimeIdeal& P);
  static long valuation(const FracIdeal& I, const PrimeIdeal& P);

  int sign_at_real_place(const FieldElem& x, std::size_t k) const;
  std::pair<mpq_class, mpq_class> real_root_interval(std::size_t k, const mpq_class& eps) const;

  /// Rational upper bound for the Minkowski constant.
  mpq_class minkowski_bound() const;

  std::string str() const;

 private:
  NumberField() = default;
  friend class FieldElem;

  ZPoly f_;
  std::size_t n_ = 0;
  QMat w_, winv_;
  std::vector<std::vector<mpz_class>> table_;
  mpz_class disc_, index_;
  std::size_t r1_ = 0, r2_ = 0;

  mutable std::mutex mu_;
  mutable std::optional<SturmIsolator> sturm_;
  mutable std::map<mpz_class, std::vector<PrimeIdeal>> prime_cache_;
  mutable std::map<mpz_class, std::vector<SuppliedPrime>> supplied_;

  void build_tables();
  std::vector<PrimeIdeal> decompose_uncached(const mpz_class& p) const;
};

/// Trial-division factorization (desk scale), smallest prime first.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n);
bool is_prime(const mpz_class& p);
/// n = squarefree_part * square; returns the (signed) squarefree part.
mpz_class squarefree_part(const mpz_class& n);

}  // namespace nt

#endif
