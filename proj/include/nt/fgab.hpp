#ifndef NT_FGAB_HPP
#define NT_FGAB_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nt/matrix.hpp"

namespace nt {

/// Finitely generated abelian group in canonical (invariant-factor) form:
/// Z/t1 + ... + Z/tk + Z^free_rank with 2 <= t1 | t2 | ... | tk.
/// Elements are coordinate vectors of length ngens(); torsion coordinates
/// live mod their factor, free coordinates are plain integers. Constructed
/// through present(); every other representation in the library is reduced
/// to this one, so element equality is always an SNF-coordinate comparison.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::vector<mpz_class> torsion, std::size_t free_rank);

  static FgAbGroup trivial() { return FgAbGroup({}, 0); }
  static FgAbGroup cyclic(const mpz_class& n);
  static FgAbGroup free_abelian(std::size_t rank) { return FgAbGroup({}, rank); }

  const std::vector<mpz_class>& invariant_factors() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  std::size_t ngens() const { return torsion_.size() + free_rank_; }

  bool is_finite() const { return free_rank_ == 0; }
  /// nullopt means infinite.
  std::optional<mpz_class> order() const;
  bool is_trivial() const { return ngens() == 0; }

  /// Rows t_i * e_i for the torsion generators; the relation lattice.
  IntMatrix relation_rows() const;

  std::vector<mpz_class> reduce(std::vector<mpz_class> coords) const;
  bool is_identity(const std::vector<mpz_class>& coords) const;
  bool same_element(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) const;
  /// Order of an element; nullopt when infinite.
  std::optional<mpz_class> element_order(const std::vector<mpz_class>& coords) const;

  /// Visit every element of a finite group (coordinates in reduced form).
  void for_each_element(const std::function<void(const std::vector<mpz_class>&)>& fn) const;

  bool operator==(const FgAbGroup& o) const = default;
  std::string str() const;

 private:
  std::vector<mpz_class> torsion_;  // each >= 2, divisibility chain
  std::size_t free_rank_ = 0;
};

/// Result of canonicalizing a generators/relations presentation.
/// gen_images: row i = canonical coordinates of original generator i.
/// lifts:      row j = expression of canonical generator j over the
///             original generators (a section of gen_images).
struct Presentation {
  FgAbGroup group;
  IntMatrix gen_images;
  IntMatrix lifts;

  std::vector<mpz_class> to_canonical(const std::vector<mpz_class>& orig_coords) const;
  std::vector<mpz_class> lift(const std::vector<mpz_class>& canon_coords) const;
};

/// Relations rows live in Z^ngens; the group is Z^ngens / row-span.
Presentation present(std::size_t ngens, const IntMatrix& relations);

/// Homomorphism between canonical groups; row i of matrix = image of the
/// i-th generator of src in dst coordinates. Well-definedness (torsion
/// orders map compatibly) is checked at construction.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FgAbGroup src, FgAbGroup dst, IntMatrix matrix);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& src, const FgAbGroup& dst);

  const FgAbGroup& src() const { return src_; }
  const FgAbGroup& dst() const { return dst_; }
  const IntMatrix& matrix() const { return matrix_; }

  std::vector<mpz_class> apply(const std::vector<mpz_class>& x) const;
  GroupHom compose(const GroupHom& then) const;  // x -> then(this(x))
  GroupHom add(const GroupHom& o) const;
  GroupHom sub(const GroupHom& o) const;
  bool is_zero_hom() const;
  bool equals(const GroupHom& o) const;

 private:
  FgAbGroup src_, dst_;
  IntMatrix matrix_;
};

/// Kernel/image/cokernel with the maps that embed/project them.
struct HomParts {
  FgAbGroup kernel;
  IntMatrix kernel_gens;  // rows: generators of the kernel in src coordinates
  FgAbGroup image;
  IntMatrix image_gens;  // rows: generators of the image in dst coordinates
  FgAbGroup cokernel;
  GroupHom cokernel_proj;  // dst ->> cokernel
};

HomParts hom_parts(const GroupHom& h);

/// Presentation of the subquotient (<gens> + L)/(<mods> + L) of an ambient
/// group with relation lattice L; rep_rows lifts each canonical generator
/// to ambient coordinates.
struct Subquotient {
  FgAbGroup group;
  IntMatrix rep_rows;
};

Subquotient subquotient(const FgAbGroup& ambient, const IntMatrix& gen_rows, const IntMatrix& mod_rows);

/// Generators (rows, in src coordinates) of {x : h(x) = 0}, as a lattice in Z^ngens(src).
IntMatrix kernel_lattice(const GroupHom& h);

/// Is elem in the subgroup of ambient generated by the rows of gens?
bool in_subgroup(const FgAbGroup& ambient, const IntMatrix& gens, const std::vector<mpz_class>& elem);

/// Exactness of A --f--> B --g--> C at B: g∘f = 0 and ker g ⊆ im f.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

}  // namespace nt

#endif
