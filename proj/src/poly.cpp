#include "nt/poly.hpp"

#include <algorithm>
#include <sstream>

#include "nt/error.hpp"
#include "nt/matrix.hpp"

namespace nt {

int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly ztrim(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

QPoly qtrim(QPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

QPoly to_qpoly(const ZPoly& f) {
  QPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i];
  return g;
}

QPoly qadd(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return qtrim(std::move(r));
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return qtrim(std::move(r));
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return qtrim(std::move(r));
}

QPoly qscale(const QPoly& a, const mpq_class& c) {
  if (c == 0) return {};
  QPoly r(a);
  for (auto& x : r) x *= c;
  return r;
}

std::pair<QPoly, QPoly> qdivmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(errc::internal, "polynomial division by zero");
  QPoly rem = a, quo;
  int db = degree(b);
  if (degree(a) >= db) quo.resize(a.size() - b.size() + 1);
  while (degree(rem) >= db) {
    int dr = degree(rem);
    mpq_class c = rem.back() / b.back();
    quo[dr - db] = c;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= c * b[i];
    rem = qtrim(std::move(rem));
  }
  return {qtrim(std::move(quo)), std::move(rem)};
}

QPoly qderivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * mpq_class(static_cast<long>(i));
  return qtrim(std::move(d));
}

mpq_class qeval(const QPoly& f, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

QPoly qmonic(QPoly f) {
  if (f.empty()) return f;
  mpq_class lc = f.back();
  for (auto& c : f) c /= lc;
  return f;
}

QPoly qgcd(QPoly a, QPoly b) {
  a = qtrim(std::move(a));
  b = qtrim(std::move(b));
  while (!b.empty()) {
    auto [q, r] = qdivmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : qmonic(std::move(a));
}

mpz_class zeval(const ZPoly& f, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

mpq_class resultant(const QPoly& f, const QPoly& g) {
  int m = degree(f), n = degree(g);
  if (m < 0 || n < 0) return 0;
  if (m == 0) {
    mpq_class r = 1;
    for (int i = 0; i < n; ++i) r *= f[0];
    return r;
  }
  if (n == 0) {
    mpq_class r = 1;
    for (int i = 0; i < m; ++i) r *= g[0];
    return r;
  }
  QMat s = qmat(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
  return qmat_det(s);
}

mpq_class poly_discriminant(const QPoly& f) {
  int n = degree(f);
  if (n < 1) fail(errc::internal, "discriminant of a constant");
  mpq_class res = resultant(f, qderivative(f));
  mpq_class d = res / f.back();
  if (((static_cast<long>(n) * (n - 1)) / 2) % 2 == 1) d = -d;
  return d;
}

// ---------------------------------------------------------------------------
// Arithmetic mod p.

namespace {

mpz_class mod_p(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    fail(errc::internal, "non-invertible residue");
  return r;
}

}  // namespace

ZPoly pmod_reduce(const ZPoly& f, const mpz_class& p) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_p(f[i], p);
  return ztrim(std::move(r));
}

std::pair<ZPoly, ZPoly> pmod_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  ZPoly rem = pmod_reduce(a, p), bb = pmod_reduce(b, p);
  if (bb.empty()) fail(errc::internal, "pmod division by zero");
  int db = degree(bb);
  mpz_class lcinv = inv_mod(bb.back(), p);
  ZPoly quo(degree(rem) >= db ? rem.size() - bb.size() + 1 : 0);
  while (degree(rem) >= db) {
    int dr = degree(rem);
    mpz_class c = mod_p(rem.back() * lcinv, p);
    quo[dr - db] = c;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] = mod_p(rem[dr - db + i] - c * bb[i], p);
    rem = ztrim(std::move(rem));
  }
  return {ztrim(std::move(quo)), std::move(rem)};
}

ZPoly pmod_mul(const ZPoly& a, const ZPoly& b, const ZPoly& mod, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  r = pmod_reduce(r, p);
  if (!mod.empty()) r = pmod_divmod(r, mod, p).second;
  return r;
}

ZPoly pmod_gcd(ZPoly a, ZPoly b, const mpz_class& p) {
  a = pmod_reduce(a, p);
  b = pmod_reduce(b, p);
  while (!b.empty()) {
    ZPoly r = pmod_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpz_class lcinv = inv_mod(a.back(), p);
    for (auto& c : a) c = mod_p(c * lcinv, p);
  }
  return a;
}

namespace {

ZPoly pmod_derivative(const ZPoly& f, const mpz_class& p) {
  if (f.size() <= 1) return {};
  ZPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mod_p(f[i] * mpz_class(static_cast<long>(i)), p);
  return ztrim(std::move(d));
}

ZPoly pmod_pow(ZPoly base, mpz_class e, const ZPoly& mod, const mpz_class& p) {
  ZPoly r{1};
  base = pmod_divmod(base, mod, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmod_mul(r, base, mod, p);
    base = pmod_mul(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

// f(x) = g(x^p) -> g; valid over F_p where Frobenius fixes coefficients.
ZPoly pmod_pth_root(const ZPoly& f, const mpz_class& p) {
  unsigned long pl = mpz_get_ui(p.get_mpz_t());
  ZPoly g((f.size() + pl - 1) / pl);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    if (i % pl != 0) fail(errc::internal, "pth_root: not a p-th power");
    g[i / pl] = f[i];
  }
  return ztrim(std::move(g));
}

ZPoly pmod_add(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return pmod_reduce(r, p);
}

// n-th polynomial over F_p in base-p digit order; sweeps all of F_p[x].
ZPoly nth_poly(mpz_class n, const mpz_class& p) {
  ZPoly r;
  while (n > 0) {
    r.push_back(n % p);
    n /= p;
  }
  return ztrim(std::move(r));
}

// Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus
// with a deterministic sweep over all test polynomials).
void equal_degree_split(const ZPoly& u, int d, const mpz_class& p, std::vector<ZPoly>& out) {
  if (degree(u) == d) {
    out.push_back(u);
    return;
  }
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), d);
  for (mpz_class attempt = p;; ++attempt) {
    ZPoly r = nth_poly(attempt, p);
    ZPoly g;
    if (p == 2) {
      // Trace map: r + r^2 + r^4 + ... + r^(2^(d-1)).
      ZPoly t = pmod_divmod(r, u, p).second;
      ZPoly acc = t;
      for (int i = 1; i < d; ++i) {
        t = pmod_mul(t, t, u, p);
        acc = pmod_divmod(pmod_add(acc, t, p), u, p).second;
      }
      g = pmod_gcd(acc, u, p);
    } else {
      ZPoly e = pmod_pow(r, (q - 1) / 2, u, p);
      if (e.empty())
        g = pmod_gcd(r, u, p);
      else {
        e[0] = mod_p(e[0] - 1, p);
        g = pmod_gcd(ztrim(std::move(e)), u, p);
      }
    }
    if (!g.empty() && degree(g) > 0 && degree(g) < degree(u)) {
      equal_degree_split(g, d, p, out);
      equal_degree_split(pmod_divmod(u, g, p).first, d, p, out);
      return;
    }
  }
}

}  // namespace

std::vector<PModFactor> factor_mod_p(const ZPoly& f0, const mpz_class& p) {
  ZPoly f = pmod_reduce(f0, p);
  if (f.empty()) fail(errc::internal, "factor_mod_p: zero polynomial");
  {
    mpz_class lcinv = inv_mod(f.back(), p);
    for (auto& c : f) c = mod_p(c * lcinv, p);
  }
  std::map<ZPoly, unsigned> found;
  unsigned power_multiplier = 1;
  while (degree(f) > 0) {
    ZPoly df = pmod_derivative(f, p);
    if (df.empty()) {
      f = pmod_pth_root(f, p);
      power_multiplier *= static_cast<unsigned>(mpz_get_ui(p.get_mpz_t()));
      continue;
    }
    ZPoly g = pmod_gcd(f, df, p);
    ZPoly s = g.size() <= 1 ? f : pmod_divmod(f, g, p).first;  // squarefree part

    // Distinct-degree factorization of s, then equal-degree splitting.
    std::vector<ZPoly> irreducibles;
    ZPoly rem = s;
    ZPoly h{0, 1};  // x
    for (int d = 1; degree(rem) >= 2 * d; ++d) {
      h = pmod_pow(h, p, rem, p);
      ZPoly hx = h;
      if (hx.size() < 2) hx.resize(2);
      hx[1] = mod_p(hx[1] - 1, p);
      ZPoly gd = pmod_gcd(ztrim(std::move(hx)), rem, p);
      if (degree(gd) > 0) {
        equal_degree_split(gd, d, p, irreducibles);
        rem = pmod_divmod(rem, gd, p).first;
        h = pmod_divmod(h, rem, p).second;
      }
    }
    if (degree(rem) > 0) irreducibles.push_back(rem);

    for (const auto& q : irreducibles) {
      unsigned e = 0;
      while (true) {
        auto [quo, r] = pmod_divmod(f, q, p);
        if (!r.empty()) break;
        f = quo;
        ++e;
      }
      found[q] += e * power_multiplier;
    }
  }
  std::vector<PModFactor> out;
  for (auto& [q, e] : found) out.push_back({q, e});
  return out;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q.

namespace {

std::vector<mpz_class> signed_divisors(const mpz_class& n) {
  std::vector<mpz_class> ds;
  mpz_class a = abs(n);
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    ds.push_back(d);
    ds.push_back(-d);
    if (d * d != a) {
      ds.push_back(a / d);
      ds.push_back(-a / d);
    }
  }
  return ds;
}

bool divides_exactly(const ZPoly& f, const QPoly& g) {
  auto [q, r] = qdivmod(to_qpoly(f), g);
  (void)q;
  return r.empty();
}

// Kronecker search for a monic integer factor of degree k. Complete: a true
// factor g satisfies g(m) | f(m) at every integer point, so it appears among
// the interpolants of divisor tuples.
bool has_monic_factor_of_degree(const ZPoly& f, int k) {
  std::vector<mpz_class> pts;
  for (long t = 0; static_cast<int>(pts.size()) < k + 1; ++t) {
    pts.push_back(t);
    if (t > 0 && static_cast<int>(pts.size()) < k + 1) pts.push_back(-t);
  }
  std::vector<std::vector<mpz_class>> divisor_sets;
  for (const auto& m : pts) {
    mpz_class v = zeval(f, m);
    if (v == 0) return true;  // integer root
    divisor_sets.push_back(signed_divisors(v));
  }
  // Lagrange basis over the chosen points.
  std::vector<QPoly> lagrange;
  for (int i = 0; i <= k; ++i) {
    QPoly li{1};
    for (int j = 0; j <= k; ++j) {
      if (i == j) continue;
      QPoly lin{mpq_class(-pts[j]), 1};
      li = qmul(li, lin);
      li = qscale(li, mpq_class(1) / mpq_class(pts[i] - pts[j]));
    }
    lagrange.push_back(li);
  }
  std::vector<std::size_t> idx(k + 1, 0);
  for (;;) {
    QPoly g;
    for (int i = 0; i <= k; ++i) g = qadd(g, qscale(lagrange[i], mpq_class(divisor_sets[i][idx[i]])));
    if (degree(g) == k && g.back() == 1) {
      bool integral = true;
      for (const auto& c : g)
        if (c.get_den() != 1) {
          integral = false;
          break;
        }
      if (integral && divides_exactly(f, g)) return true;
    }
    int pos = 0;
    while (pos <= k) {
      if (++idx[pos] < divisor_sets[pos].size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos > k) break;
  }
  return false;
}

}  // namespace

bool is_irreducible_over_q(const ZPoly& f0) {
  ZPoly f = ztrim(f0);
  int n = degree(f);
  if (n <= 0) return false;
  if (f.back() != 1) fail(errc::internal, "irreducibility test expects a monic polynomial");
  if (n == 1) return true;
  if (f[0] == 0) return false;  // x divides

  // Cheap certificate: irreducible mod p (p not dividing disc) implies
  // irreducible over Q.
  static const long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  for (long pl : small_primes) {
    mpz_class p(pl);
    ZPoly fp = pmod_reduce(f, p);
    if (degree(fp) != n) continue;
    ZPoly d = pmod_gcd(fp, pmod_derivative(fp, p), p);
    if (degree(d) != 0) continue;  // not squarefree mod p
    auto factors = factor_mod_p(f, p);
    if (factors.size() == 1 && factors[0].multiplicity == 1) return true;
  }
  // Complete fallback.
  for (int k = 1; k <= n / 2; ++k)
    if (has_monic_factor_of_degree(f, k)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sturm sequences and real root isolation.

namespace {

int qsign(const mpq_class& x) { return sgn(x); }

}  // namespace

SturmIsolator::SturmIsolator(QPoly f) : f_(qtrim(std::move(f))) {
  if (f_.empty()) fail(errc::internal, "Sturm chain of the zero polynomial");
  chain_.push_back(f_);
  QPoly d = qderivative(f_);
  if (!d.empty()) chain_.push_back(d);
  while (chain_.size() >= 2 && !chain_.back().empty()) {
    QPoly r = qdivmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain_.push_back(std::move(r));
  }
  if (degree(f_) < 1) return;
  // Cauchy bound, then bisect down to isolating intervals.
  mpq_class bound = 1;
  for (std::size_t i = 0; i + 1 < f_.size(); ++i) {
    mpq_class t = abs(f_[i] / f_.back());
    if (t > bound) bound = t;
  }
  bound += 1;
  std::vector<std::pair<mpq_class, mpq_class>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    std::size_t c = count_in(lo, hi);
    if (c == 0) continue;
    if (c == 1) {
      roots_.push_back({lo, hi});
      continue;
    }
    mpq_class mid = (lo + hi) / 2;
    while (qeval(f_, mid) == 0) mid = (lo + mid) / 2;  // nudge off a root
    work.push_back({lo, mid});
    work.push_back({mid, hi});
  }
  std::sort(roots_.begin(), roots_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

int SturmIsolator::variations(const mpq_class& x) const {
  int v = 0, last = 0;
  for (const auto& g : chain_) {
    int s = qsign(qeval(g, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t SturmIsolator::count_in(const mpq_class& lo, const mpq_class& hi) const {
  return static_cast<std::size_t>(variations(lo) - variations(hi));
}

void SturmIsolator::refine(std::size_t i, const mpq_class& eps) {
  auto& [lo, hi] = roots_[i];
  while (hi - lo >= eps) {
    mpq_class mid = (lo + hi) / 2;
    if (qeval(f_, mid) == 0) mid = (lo + mid) / 2;
    if (count_in(lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
}

int SturmIsolator::sign_at_root(std::size_t i, const QPoly& g) {
  for (;;) {
    auto [lo, hi] = roots_[i];
    auto [vlo, vhi] = interval_eval(g, lo, hi);
    if (vlo > 0) return 1;
    if (vhi < 0) return -1;
    mpq_class w = (hi - lo) / 2;
    refine(i, w);
  }
}

std::pair<mpq_class, mpq_class> interval_eval(const QPoly& f, const mpq_class& lo, const mpq_class& hi) {
  mpq_class a = 0, b = 0;  // running interval [a, b]
  for (std::size_t i = f.size(); i-- > 0;) {
    // [a,b] * [lo,hi]
    mpq_class c1 = a * lo, c2 = a * hi, c3 = b * lo, c4 = b * hi;
    mpq_class mn = std::min(std::min(c1, c2), std::min(c3, c4));
    mpq_class mx = std::max(std::max(c1, c2), std::max(c3, c4));
    a = mn + f[i];
    b = mx + f[i];
  }
  return {a, b};
}

std::string poly_str(const ZPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0 && f.size() > 1) continue;
    if (!first) os << (f[i] > 0 ? " + " : " - ");
    mpz_class a = first ? mpz_class(f[i]) : mpz_class(abs(f[i]));
    first = false;
    if (i == 0 || a != 1) os << a;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace nt
