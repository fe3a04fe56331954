#pragma once

// The reduced simplicial-set view of a partial group: an n-simplex is an
// accepted word of length n, faces multiply adjacent letters, degeneracies
// insert the unit. Front/back/enumerating/product operators and morphism
// validation live here.

#include <functional>
#include <optional>

#include "ploc/partial_group.hpp"

namespace ploc {

struct Simplex {
  PartialGroup owner;
  Word word;  // accepted by owner

  int dimension() const { return static_cast<int>(word.size()); }
  bool degenerate() const;
};

Simplex make_simplex(const PartialGroup& owner, Word word);

Simplex face(const Simplex& s, int i);
Simplex degeneracy(const Simplex& s, int i);

/// F_r keeps the first r letters.
Simplex front_face(const Simplex& s, int r);
/// B_s keeps the last s letters.
Simplex back_face(const Simplex& s, int r);
/// Pi as the operator X_n -> X_1 (dimension >= 1).
Element product_op(const Simplex& s);
/// Pi_{r,s}: X_n -> X_2, the two-letter word (Pi(front_r), Pi(back_s)).
Simplex product_op_rs(const Simplex& s, int r);

/// E via the front/back operator composite (F_{n-1}, B_1) o ...; equals the
/// letter sequence on these simplicial sets, which is what makes them
/// N-simplicial.
Word enumerate_edges(const Simplex& s);
/// The alternative factorization (Id x (F_1, B_1)) route.
Word enumerate_edges_alt(const Simplex& s);

/// nu: reverse and invert the letters.
Simplex anti_involution(const Simplex& s);

struct PartialGroupMorphism {
  PartialGroup source;
  PartialGroup target;
  std::vector<Element> on_elements;  // size = source carrier

  Element operator()(Element x) const { return on_elements[static_cast<std::size_t>(x)]; }
  Word map_word(std::span<const Element> w) const;
  bool is_bijective() const;
};

/// Checks unit/inversion compatibility and, for every accepted source word up
/// to the bound, acceptance of the image with matching products.
PartialGroupMorphism validate_morphism(std::vector<Element> on_elements, const PartialGroup& source,
                                       const PartialGroup& target, int bound = 4,
                                       kernels::Mode mode = kernels::Mode::Parallel);

/// Non-throwing variant; returns the offending word instead.
std::optional<Word> morphism_violation(const std::vector<Element>& on_elements, const PartialGroup& source,
                                       const PartialGroup& target, int bound = 4,
                                       kernels::Mode mode = kernels::Mode::Parallel);

PartialGroupMorphism identity_morphism(const PartialGroup& m);
PartialGroupMorphism compose(const PartialGroupMorphism& f, const PartialGroupMorphism& g);  // f after g

/// Kernel of a morphism: {x : f(x) = 1'}, flagged partial normal.
PartialSubgroup kernel(const PartialGroupMorphism& f);

}  // namespace ploc
