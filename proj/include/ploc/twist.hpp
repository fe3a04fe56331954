#pragma once

// Twisting pairs (t, eta), the induced twisting functions, and the extension
// construction: the total partial group on fibre x base pairs with the
// twisted product and inversion formulas.

#include "ploc/autcx.hpp"
#include "ploc/axioms.hpp"

namespace ploc {

struct TwistingPair {
  PartialGroup fibre;  // M'
  PartialGroup base;   // M''
  AutGroup fibre_aut;  // automorphism universe for t
  Normalizer fibre_norm;
  std::vector<int> t;        // base element -> index into fibre_aut
  std::vector<Element> eta;  // base.size()^2, -1 where the base pair is rejected

  Element eta_at(Element g, Element h) const;
  const std::vector<Element>& psi(Element g) const;  // the map of t[g]
  int psi_index(Element g) const { return t[static_cast<std::size_t>(g)]; }
};

/// Assemble a pair; eta_map lists (g, h, value) on accepted base pairs, with
/// unit-normalized entries filled in automatically.
TwistingPair make_twisting_pair(const PartialGroup& fibre, const PartialGroup& base, AutGroup fibre_aut,
                                Normalizer fibre_norm, std::vector<int> t,
                                const std::vector<std::array<Element, 3>>& eta_map);

struct CocycleCertificate {
  bool valid = false;
  bool normalized = false;        // t(1) = Id, eta(1,g) = 1 = eta(g,1)
  bool values_in_normalizer = false;
  bool conjugation_compatible = false;  // eta(g,h) Psi_gh eta(g,h)^-1 = Psi_g Psi_h
  bool cocycle = false;                 // Psi_g(eta(h,k)) eta(g,hk) = eta(g,h) eta(gh,k)
  long triples_checked = 0;
  Word witness;  // offending base word
  std::string detail;
};

CocycleCertificate validate_twisting_pair(const TwistingPair& p);

/// Chain of the twisting function on a base word: objects alpha_0..alpha_{n-1}
/// (AutGroup indices) and labels eta_1..eta_{n-1}.
struct TwistChain {
  std::vector<int> objects;
  std::vector<Element> labels;
  MorphismChain as_morphisms() const;
};

/// (T1)/(T2).
TwistChain twisting_function(const TwistingPair& p, std::span<const Element> base_word);
/// The explicit inverse-chain formula, for cross-checking against the
/// generic chain inverse.
TwistChain twisting_function_inverse(const TwistingPair& p, std::span<const Element> base_word);

// ---- the total partial group ----------------------------------------------

/// Builds the Twisted-representation partial group (validates the pair).
PartialGroup build_extension(const TwistingPair& p);

const TwistingPair& extension_pair(const PartialGroup& ext);
Element pair_encode(const PartialGroup& ext, Element x, Element g);
std::pair<Element, Element> pair_decode(const PartialGroup& ext, Element e);

/// tau: ext -> base.
PartialGroupMorphism extension_projection(const PartialGroup& ext);
/// iota: fibre -> ext.
PartialGroupMorphism extension_inclusion(const PartialGroup& ext);

/// The fibre word of the membership condition (TCP picture), letters
/// y_k = Psi_{g_1..g_{k-1}}(x_k) . eta(g_1..g_{k-1}, g_k).
Word twisted_fibre_word(const PartialGroup& ext, std::span<const Element> w);
/// The untwisted condition: letters (Psi_{g_1} o ... o Psi_{g_{k-1}})(x_k).
Word untwisted_fibre_word(const PartialGroup& ext, std::span<const Element> w);

struct TheoremAReport {
  AxiomReport axioms;
  bool enumerating_injective = false;  // alpha_n bijects onto (fibre word, base word) pairs
  bool edge_formula = false;           // z_k = Psi^-1(y_k eta^-1) recovers the letters
  bool inversion_ok = false;           // nu is an inversion of the total space
  Word witness;
  bool pass() const { return axioms.all_pass() && enumerating_injective && edge_formula && inversion_ok; }
};

TheoremAReport check_theorem_A(const PartialGroup& ext, int bound = 4,
                               kernels::Mode mode = kernels::Mode::Parallel);

/// Strong equivalence of two extensions of the same (fibre, base): a carrier
/// bijection commuting with iota, tau and all products. Returns the map on
/// carriers if one exists.
std::optional<std::vector<Element>> strong_equivalence(const PartialGroup& ext_a, const PartialGroup& ext_b,
                                                       int bound = 4);

}  // namespace ploc
