#ifndef NT_POLY_HPP
#define NT_POLY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nt {

// Polynomials are coefficient vectors, lowest degree first, trailing zeros
// stripped; the zero polynomial is the empty vector.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

int degree(const ZPoly& f);
int degree(const QPoly& f);
ZPoly ztrim(ZPoly f);
QPoly qtrim(QPoly f);
QPoly to_qpoly(const ZPoly& f);

QPoly qadd(const QPoly& a, const QPoly& b);
QPoly qsub(const QPoly& a, const QPoly& b);
QPoly qmul(const QPoly& a, const QPoly& b);
QPoly qscale(const QPoly& a, const mpq_class& c);
/// Division with remainder over Q; divisor must be nonzero.
std::pair<QPoly, QPoly> qdivmod(const QPoly& a, const QPoly& b);
QPoly qderivative(const QPoly& f);
mpq_class qeval(const QPoly& f, const mpq_class& x);
QPoly qmonic(QPoly f);
QPoly qgcd(QPoly a, QPoly b);

mpz_class zeval(const ZPoly& f, const mpz_class& x);

/// Resultant via the Sylvester matrix (exact).
mpq_class resultant(const QPoly& f, const QPoly& g);
/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
mpq_class poly_discriminant(const QPoly& f);

/// Monic integer polynomials only. Complete decision procedure:
/// a mod-p certificate when one exists cheaply, otherwise Kronecker
/// interpolation over divisor tuples for factor degrees up to deg/2.
bool is_irreducible_over_q(const ZPoly& f);

/// Factorization of a monic polynomial over F_p: map factor -> multiplicity.
/// Factors are monic with coefficients reduced into [0, p).
struct PModFactor {
  ZPoly factor;
  unsigned multiplicity;
};
std::vector<PModFactor> factor_mod_p(const ZPoly& f, const mpz_class& p);

ZPoly pmod_reduce(const ZPoly& f, const mpz_class& p);
ZPoly pmod_mul(const ZPoly& a, const ZPoly& b, const ZPoly& mod, const mpz_class& p);
ZPoly pmod_gcd(ZPoly a, ZPoly b, const mpz_class& p);
std::pair<ZPoly, ZPoly> pmod_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& p);

/// Real root isolation by Sturm sequences; exact rational endpoints.
/// Intervals are (lo, hi) with one simple root each and f(lo), f(hi) != 0.
class SturmIsolator {
 public:
  explicit SturmIsolator(QPoly squarefree);
  std::size_t count() const { return roots_.size(); }
  std::pair<mpq_class, mpq_class> interval(std::size_t i) const { return roots_[i]; }
  /// Halve interval i until its width is below eps.
  void refine(std::size_t i, const mpq_class& eps);
  /// Sign of g at the i-th root (g must not vanish there).
  int sign_at_root(std::size_t i, const QPoly& g);

 private:
  int variations(const mpq_class& x) const;
  std::size_t count_in(const mpq_class& lo, const mpq_class& hi) const;
  QPoly f_;
  std::vector<QPoly> chain_;
  std::vector<std::pair<mpq_class, mpq_class>> roots_;  // sorted ascending
};

/// Evaluate f over the box [lo, hi] by interval Horner; returns value bounds.
std::pair<mpq_class, mpq_class> interval_eval(const QPoly& f, const mpq_class& lo, const mpq_class& hi);

std::string poly_str(const ZPoly& f);

}  // namespace nt

#endif
