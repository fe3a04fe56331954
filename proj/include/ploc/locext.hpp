#pragma once

// Extensions of localities: isotypical data, the induced locality
// (T, Delta, S) inside the total space, sections, rigidity/admissibility,
// goodness, and the passage from group extensions.

#include "ploc/cohomology.hpp"
#include "ploc/locality.hpp"
#include "ploc/twist.hpp"

namespace ploc {

struct IsotypicalExtension {
  Locality fibre;  // (L', Delta', S')
  Locality base;   // (L'', Delta'', S'')
  TwistingPair pair;
  PartialGroup total;
  RestrictedAut fibre_raut;  // Aut(L';S') with inner = image of N_{L'}(S')
};

/// Validates the isotypicality conditions: t valued in Aut(L';S'), eta valued
/// in N_{L'}(S') (and in the homotopy normalizer), Delta' invariant under
/// Aut(L';S'), and the twisting-pair axioms.
IsotypicalExtension make_isotypical_extension(Locality fibre, Locality base, std::vector<int> t,
                                              const std::vector<std::array<Element, 3>>& eta,
                                              int budget = 24);

/// iota(x) and sigma_0(g) as total-space elements.
Element iota_element(const IsotypicalExtension& ext, Element fibre_elt);
Element sigma0_element(const IsotypicalExtension& ext, Element base_elt);

struct InducedLocality {
  IsotypicalExtension ext;
  SmallGroup n_group;               // N = pairs over N_{L'}(S') x N_{L''}(S'')
  std::vector<Element> n_elements;  // total indices behind n_group
  std::vector<Element> s_total;     // total indices of S, ascending
  Locality T;                       // (T, Delta, S), ambient = total
};

InducedLocality build_sylow_and_delta(const IsotypicalExtension& ext);

struct TvsLReport {
  bool carriers_equal = false;
  bool oracles_agree = false;
  std::optional<Element> missing_element;  // total element outside T
  Word witness;                            // word where the oracles disagree
  bool equal() const { return carriers_equal && oracles_agree; }
};

/// Direct comparison of T with the full total space.
TvsLReport compare_T_vs_L(const InducedLocality& ind, int bound = 3);
/// The two worked examples: requires a p-group fibre or an all-subgroups
/// group base (PreconditionNotMet otherwise); expected true there.
TvsLReport verify_examples_T_equals_L(const InducedLocality& ind, int bound = 3);

/// (L(H''), Delta(H''), S(H'')) for a base subgroup H'' with
/// H'' ∩ S'' Sylow in H'' (SylowConditionFails otherwise).
Locality pullback_sub_locality(const InducedLocality& ind, const std::vector<Element>& h_base);

struct SectionReport {
  std::vector<Element> values;   // total element per base element
  bool lands_in_T = false;
  bool conjugation_isotypical = false;  // left conjugation restricts to Aut(L';S')
  bool words_accepted = false;          // property (iii)/(iv)
  Word witness;
  bool ok() const { return conjugation_isotypical && words_accepted; }
};

SectionReport section_sigma0(const IsotypicalExtension& ext, int bound = 3);
/// The T-valued section; SearchFailed when the search cannot complete.
SectionReport section_sigma(const InducedLocality& ind, int bound = 3);

struct RigidityReport {
  std::vector<int> s0;  // S'' indices in the kernel of S'' -> Out(L';S')
  std::vector<int> s1;  // kernel of S'' -> Out_fus(S')
  bool rigid = false;
  bool admissible = false;
};

RigidityReport check_rigid_admissible(const IsotypicalExtension& ext);

struct GoodnessReport {
  bool fibre_in_T = false;
  bool fibre_partial_normal = false;
  bool delta_has_centric_radicals = false;
  bool t_fusion_saturated = false;
  NormalSubsystemReport fibre_normal;
  bool good() const { return fibre_in_T && fibre_partial_normal && delta_has_centric_radicals; }
};

GoodnessReport check_good(const InducedLocality& ind, int budget = 64);

/// Prop aux4 as an implication over Delta: every centric-radical P in Delta
/// has P' F'-centric and C_{S1''}(P'') <= P''.
struct Aux4Report {
  bool holds = true;
  Mask witness = 0;
  long checked = 0;
  bool all_centric_radicals_in_delta = true;
};
Aux4Report check_aux4(const InducedLocality& ind);

struct GroupExtensionData {
  IsotypicalExtension ext;
  SmallGroup group;          // G
  Mask kernel_mask;          // K inside G
  SmallGroup quotient;       // Q = G/K
  std::vector<int> coset_of;  // G -> Q
  std::vector<Element> section;  // Q -> G, values in N_G(S_K)
};

/// Corollary E input: a finite group extension K -> G -> Q realized as an
/// isotypical extension of localities at p.
GroupExtensionData group_extension_to_locality_extension(const SmallGroup& g, Mask kernel, int p);

}  // namespace ploc
