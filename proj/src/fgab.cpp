#include "nt/fgab.hpp"

#include <sstream>

#include "nt/error.hpp"

namespace nt {

FgAbGroup::FgAbGroup(std::vector<mpz_class> torsion, std::size_t free_rank)
    : torsion_(std::move(torsion)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) fail(errc::internal, "invariant factor < 2");
    if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0)
      fail(errc::internal, "invariant factors do not form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::cyclic(const mpz_class& n) {
  if (n == 1) return trivial();
  return FgAbGroup({n}, 0);
}

std::optional<mpz_class> FgAbGroup::order() const {
  if (!is_finite()) return std::nullopt;
  mpz_class o = 1;
  for (const auto& t : torsion_) o *= t;
  return o;
}

IntMatrix FgAbGroup::relation_rows() const {
  IntMatrix r(torsion_.size(), ngens());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r.at(i, i) = torsion_[i];
  return r;
}

std::vector<mpz_class> FgAbGroup::reduce(std::vector<mpz_class> coords) const {
  if (coords.size() != ngens()) fail(errc::internal, "coordinate length mismatch");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), coords[i].get_mpz_t(), torsion_[i].get_mpz_t());
    coords[i] = r;
  }
  return coords;
}

bool FgAbGroup::is_identity(const std::vector<mpz_class>& coords) const {
  auto r = reduce(coords);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool FgAbGroup::same_element(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const {
  return reduce(a) == reduce(b);
}

std::optional<mpz_class> FgAbGroup::element_order(const std::vector<mpz_class>& coords) const {
  auto r = reduce(coords);
  for (std::size_t i = torsion_.size(); i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  mpz_class ord = 1;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (r[i] == 0) continue;
    mpz_class g, o;
    mpz_gcd(g.get_mpz_t(), r[i].get_mpz_t(), torsion_[i].get_mpz_t());
    o = torsion_[i] / g;
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
  }
  return ord;
}

void FgAbGroup::for_each_element(const std::function<void(const std::vector<mpz_class>&)>& fn) const {
  if (!is_finite()) fail(errc::internal, "cannot enumerate an infinite group");
  std::vector<mpz_class> cur(ngens());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == torsion_.size()) {
      fn(cur);
      return;
    }
    for (cur[i] = 0; cur[i] < torsion_[i]; ++cur[i]) rec(i + 1);
    cur[i] = 0;
  };
  rec(0);
}

std::string FgAbGroup::str() const {
  std::ostringstream os;
  if (is_trivial()) return "1";
  bool first = true;
  for (const auto& t : torsion_) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
  }
  return os.str();
}

std::vector<mpz_class> Presentation::to_canonical(const std::vector<mpz_class>& orig_coords) const {
  return group.reduce(mul_row_vec(orig_coords, gen_images));
}

std::vector<mpz_class> Presentation::lift(const std::vector<mpz_class>& canon_coords) const {
  return mul_row_vec(canon_coords, lifts);
}

Presentation present(std::size_t ngens, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != ngens)
    fail(errc::internal, "relation width != generator count");
  IntMatrix rel = relations.rows() ? relations : IntMatrix(0, ngens);
  SmithDecomposition s = snf(rel);
  // Coordinates z = x v diagonalize the relation lattice to d_i Z.
  std::vector<std::size_t> keep;  // canonical coordinates that survive (d != 1)
  std::vector<mpz_class> torsion;
  std::size_t free_rank = 0;
  for (std::size_t j = 0; j < ngens; ++j) {
    mpz_class dj = j < s.d.size() ? s.d[j] : mpz_class(0);
    if (dj == 1) continue;
    keep.push_back(j);
    if (dj != 0)
      torsion.push_back(dj);
    else
      ++free_rank;
  }
  Presentation p;
  p.group = FgAbGroup(std::move(torsion), free_rank);
  p.gen_images = IntMatrix(ngens, keep.size());
  for (std::size_t i = 0; i < ngens; ++i)
    for (std::size_t t = 0; t < keep.size(); ++t) p.gen_images.at(i, t) = s.v.at(i, keep[t]);
  p.lifts = IntMatrix(keep.size(), ngens);
  for (std::size_t t = 0; t < keep.size(); ++t)
    for (std::size_t j = 0; j < ngens; ++j) p.lifts.at(t, j) = s.v_inv.at(keep[t], j);
  return p;
}

GroupHom::GroupHom(FgAbGroup src, FgAbGroup dst, IntMatrix matrix)
    : src_(std::move(src)), dst_(std::move(dst)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != src_.ngens() || matrix_.cols() != dst_.ngens())
    fail(errc::ill_formed_hom, "matrix shape does not match generator counts");
  // t_i * (image of generator i) must vanish in dst.
  const auto& t = src_.invariant_factors();
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<mpz_class> im = matrix_.row(i);
    for (auto& x : im) x *= t[i];
    if (!dst_.is_identity(im)) fail(errc::ill_formed_hom, "relations do not map into the target lattice");
  }
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.ngens())); }

GroupHom GroupHom::zero(const FgAbGroup& src, const FgAbGroup& dst) {
  return GroupHom(src, dst, IntMatrix::zero(src.ngens(), dst.ngens()));
}

std::vector<mpz_class> GroupHom::apply(const std::vector<mpz_class>& x) const {
  return dst_.reduce(mul_row_vec(x, matrix_));
}

GroupHom GroupHom::compose(const GroupHom& then) const {
  if (!(dst_ == then.src_)) fail(errc::internal, "hom composition mismatch");
  return GroupHom(src_, then.dst_, matrix_.mul(then.matrix_));
}

GroupHom GroupHom::add(const GroupHom& o) const { return GroupHom(src_, dst_, matrix_.add(o.matrix_)); }
GroupHom GroupHom::sub(const GroupHom& o) const { return GroupHom(src_, dst_, matrix_.sub(o.matrix_)); }

bool GroupHom::is_zero_hom() const {
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    if (!dst_.is_identity(matrix_.row(i))) return false;
  return true;
}

bool GroupHom::equals(const GroupHom& o) const {
  if (!(src_ == o.src_) || !(dst_ == o.dst_)) return false;
  return sub(o).is_zero_hom();
}

namespace {

// Generators (rows) of {x in Z^n : x*M in L} where L is spanned by the rows
// of lat. Projection of the left kernel of [M; lat] onto the first block.
IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& lat) {
  IntMatrix stacked = m.vstack(lat);
  IntMatrix ker = left_kernel(stacked);
  IntMatrix out(ker.rows(), m.rows());
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) out.at(i, j) = ker.at(i, j);
  return out;
}

}  // namespace

IntMatrix kernel_lattice(const GroupHom& h) {
  return preimage_lattice(h.matrix(), h.dst().relation_rows());
}

Subquotient subquotient(const FgAbGroup& ambient, const IntMatrix& gen_rows, const IntMatrix& mod_rows) {
  IntMatrix denom = mod_rows.rows() ? mod_rows.vstack(ambient.relation_rows()) : ambient.relation_rows();
  IntMatrix rel = preimage_lattice(gen_rows, denom);
  Presentation p = present(gen_rows.rows(), rel);
  Subquotient sq;
  sq.group = p.group;
  sq.rep_rows = p.lifts.mul(gen_rows);
  return sq;
}

HomParts hom_parts(const GroupHom& h) {
  HomParts parts;
  IntMatrix ker = kernel_lattice(h);
  Subquotient k = subquotient(h.src(), ker, IntMatrix(0, h.src().ngens()));
  parts.kernel = k.group;
  parts.kernel_gens = k.rep_rows;

  Subquotient im = subquotient(h.dst(), h.matrix(), IntMatrix(0, h.dst().ngens()));
  parts.image = im.group;
  parts.image_gens = im.rep_rows;

  Presentation cp = present(h.dst().ngens(), h.dst().relation_rows().vstack(h.matrix()));
  parts.cokernel = cp.group;
  parts.cokernel_proj = GroupHom(h.dst(), cp.group, cp.gen_images);
  return parts;
}

bool in_subgroup(const FgAbGroup& ambient, const IntMatrix& gens, const std::vector<mpz_class>& elem) {
  IntMatrix stacked = gens.vstack(ambient.relation_rows());
  return solve_left(stacked, elem).has_value();
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
  if (!f.compose(g).is_zero_hom()) return false;  // im f ⊆ ker g
  IntMatrix ker = kernel_lattice(g);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    if (!in_subgroup(f.dst(), f.matrix(), ker.row(i))) return false;  // ker g ⊆ im f
  return true;
}

}  // namespace nt
