#pragma once

// Explicit finite groups given by multiplication tables, plus the
// subgroup-lattice machinery (bitset subgroups over at most 64 elements)
// used by the fusion and locality layers.

#include <cstdint>
#include <memory>
#include <vector>

#include "ploc/errors.hpp"
#include "ploc/word.hpp"

namespace ploc {

using Mask = std::uint64_t;

inline int mask_size(Mask m) { return __builtin_popcountll(m); }
inline bool mask_has(Mask m, int i) { return (m >> i) & 1u; }
inline Mask mask_bit(int i) { return Mask{1} << i; }

std::vector<int> mask_elements(Mask m);

class SmallGroup {
 public:
  SmallGroup() = default;

  /// Validates that `table` (row-major, n*n) is a group table.
  static SmallGroup from_table(std::vector<Element> table);
  static SmallGroup trivial();
  static SmallGroup cyclic(int m);
  static SmallGroup klein4();
  /// Dihedral group of the given order (order = 2m, m >= 1).
  static SmallGroup dihedral(int order);
  static SmallGroup quaternion8();
  /// Closure of permutation generators; composition is (a*b)(i) = a(b(i)).
  static SmallGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens);
  static SmallGroup symmetric(int m);  // m <= 4
  static SmallGroup alternating4();
  static SmallGroup direct_product(const SmallGroup& a, const SmallGroup& b);

  int size() const { return n_; }
  Element unit() const { return unit_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inv(Element a) const { return inv_[static_cast<std::size_t>(a)]; }
  const std::vector<Element>& table() const { return table_; }
  int order_of(Element a) const;
  bool is_p_group(int p) const;
  bool abelian() const;

  /// g^-1 a g
  Element conj(Element a, Element g) const { return mul(mul(inv(g), a), g); }
  /// g a g^-1
  Element left_conj(Element a, Element g) const { return mul(mul(g, a), inv(g)); }

  // ---- bitset subgroups (requires size() <= 64) ----
  Mask all_mask() const;
  Mask closure(Mask seed) const;
  bool is_subgroup_mask(Mask m) const;
  Mask conj_mask(Mask m, Element g) const;       // m^g
  Mask left_conj_mask(Mask m, Element g) const;  // g m g^-1
  Mask normalizer(Mask h, Mask within) const;    // {g in within : h^g = h}
  Mask centralizer(Mask h, Mask within) const;
  Mask center_mask() const;
  bool is_normal_in(Mask h, Mask g) const;

  /// Every subgroup, sorted by (order, mask value). Cached.
  const std::vector<Mask>& subgroups() const;
  std::vector<Mask> subgroups_of(Mask h) const;

  static int p_part(int n, int p);
  std::vector<Mask> sylow_subgroups(int p) const;
  Mask first_sylow(int p) const;
  /// O_p: the intersection of all Sylow p-subgroups.
  Mask op_core(int p) const;
  /// Deterministic Sylow p-subgroup of `within` containing the p-subgroup `seed`.
  Mask sylow_above(Mask seed, Mask within, int p) const;

  /// Group structure on a subgroup, re-indexed 0..k-1 (ascending element order).
  SmallGroup subgroup_group(Mask h, std::vector<Element>* elements = nullptr) const;
  /// Quotient by a normal subgroup; coset_of[g] gives the quotient index of g.
  SmallGroup quotient(Mask normal, std::vector<int>* coset_of = nullptr) const;

  /// The permutation realization if this group was built from permutations.
  const std::vector<std::vector<int>>& permutations() const { return perms_; }
  int degree() const { return degree_; }

 private:
  void finish();  // compute unit_, inv_, validate

  int n_ = 0;
  Element unit_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<std::vector<int>> perms_;  // optional
  int degree_ = 0;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace ploc
