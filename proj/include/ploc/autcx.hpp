#pragma once

// Automorphisms and the homotopy structure of a partial group: N(M), Z(M),
// Aut/Inn/Out, and the monoidal category A(M) whose morphisms are homotopies
// labelled by normalizer elements.

#include "ploc/simplicial.hpp"

namespace ploc {

/// N(M): elements whose left conjugation extends to an automorphism and whose
/// unit-insertion words all accept with equal products (checked up to the
/// recorded bound; exact for total domains).
struct Normalizer {
  PartialGroup owner;
  std::vector<Element> members;                // sorted
  std::vector<std::vector<Element>> action;    // left-conjugation map per member
  int bound = 4;

  bool contains(Element x) const;
  const std::vector<Element>& action_of(Element x) const;
};

Normalizer compute_normalizer(const PartialGroup& m, int bound = 4,
                              kernels::Mode mode = kernels::Mode::Parallel);

struct Center {
  PartialGroup owner;
  std::vector<Element> members;  // sorted
  int bound = 4;
  bool contains(Element x) const;
};

Center compute_center(const PartialGroup& m, int bound = 4, kernels::Mode mode = kernels::Mode::Parallel);
Center compute_center(const Normalizer& n);

struct AutGroup {
  PartialGroup owner;
  std::vector<std::vector<Element>> autos;     // sorted lexicographically
  std::vector<int> inner;                      // indices of Inn members, sorted
  std::vector<std::vector<int>> outer_classes; // partition of 0..autos-1, deterministic
  int bound = 4;

  int order() const { return static_cast<int>(autos.size()); }
  int identity_index() const;
  int index_of(const std::vector<Element>& map) const;  // -1 if absent
  int compose(int f, int g) const;                      // f after g
  int invert(int f) const;
  int outer_class_of(int f) const;
  SmallGroup as_group() const;  // composition table of the automorphisms
};

/// Brute-force automorphism enumeration (backtracking over carrier
/// bijections, pruned by unit/inversion/pair-product compatibility, final
/// word-level validation up to the bound). Throws BudgetExceeded when the
/// carrier exceeds the budget.
AutGroup enumerate_automorphisms(const PartialGroup& m, int budget = 24, int bound = 4,
                                 kernels::Mode mode = kernels::Mode::Parallel);

/// Isomorphism search between partial groups, same machinery; nullopt when
/// none exists.
std::optional<std::vector<Element>> find_isomorphism(const PartialGroup& a, const PartialGroup& b,
                                                     int budget = 64, int bound = 4);

/// Exactness data for {1} -> Z -> N -> Aut -> Out -> {1}.
struct ExactSequenceReport {
  long n_order = 0, z_order = 0, aut_order = 0, inn_order = 0, out_order = 0;
  bool kernel_is_center = false;     // ker(N -> Aut) = Z
  bool image_is_inner = false;       // im(N -> Aut) = Inn
  bool orders_multiply = false;      // |Aut| = |Inn| |Out|
  bool inn_iso_n_mod_z = false;      // Inn ≅ N/Z by the explicit map
  bool ok() const { return kernel_is_center && image_is_inner && orders_multiply && inn_iso_n_mod_z; }
};

ExactSequenceReport verify_exact_sequence(const PartialGroup& m, const Normalizer& n, const Center& z,
                                          const AutGroup& aut);

// ---- the category A(M) ----------------------------------------------------

/// A morphism (phi <-eta- psi): phi equals left-conjugation-by-eta composed
/// with psi. Objects are AutGroup indices.
struct AutMorphism {
  int phi = 0;
  int psi = 0;
  Element eta = 0;
};

struct HomotopyCategory {
  PartialGroup owner;
  AutGroup aut;
  Normalizer norm;

  bool is_morphism(const AutMorphism& f) const;
  std::vector<AutMorphism> morphisms(int phi, int psi) const;
  AutMorphism compose(const AutMorphism& f, const AutMorphism& g) const;  // f o g, g.phi == f.psi
  /// Monoidal product; asserts the two label formulas agree.
  AutMorphism tensor(const AutMorphism& f, const AutMorphism& g) const;
  AutMorphism inverse(const AutMorphism& f) const;
  AutMorphism identity() const;
};

HomotopyCategory make_homotopy_category(const PartialGroup& m, int bound = 4);
HomotopyCategory make_homotopy_category(const PartialGroup& m, AutGroup aut, Normalizer norm);

using MorphismChain = std::vector<AutMorphism>;  // chain[i].psi == chain[i+1].phi

bool chain_composable(const HomotopyCategory& cat, const MorphismChain& c);
/// (inversen): labels of the inverse chain.
MorphismChain chain_inverse(const HomotopyCategory& cat, const MorphismChain& c);
/// Nerve face/degeneracy of a chain.
MorphismChain chain_face(const HomotopyCategory& cat, const MorphismChain& c, int i);
MorphismChain chain_degeneracy(const HomotopyCategory& cat, const MorphismChain& c, int i);
/// Pointwise tensor of chains of equal length.
MorphismChain chain_tensor(const HomotopyCategory& cat, const MorphismChain& a, const MorphismChain& b);

/// (actionn): the action of a chain on an n-simplex; both the left- and
/// right-twisted expansions are computed and must agree.
Word homotopy_action(const HomotopyCategory& cat, const MorphismChain& chain, const Word& simplex);

// ---- localities-flavoured variant -----------------------------------------

/// Aut(M; S): automorphisms preserving a subgroup S setwise; inner part is the
/// image of the S-normalizer N_M(S) under left conjugation.
struct RestrictedAut {
  AutGroup aut;                        // autos = Aut(M;S)
  std::vector<Element> normalizer_S;   // N_M(S)
  std::vector<Element> center;         // Z(M) (definorm center)
  ExactSequenceReport sequence;        // for Z -> N_M(S) -> Aut(M;S) -> Out(M;S)
};

RestrictedAut restricted_aut(const PartialGroup& m, const std::vector<Element>& s_members, int budget = 24,
                             int bound = 4, kernels::Mode mode = kernels::Mode::Parallel);

}  // namespace ploc
