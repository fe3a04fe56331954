#pragma once

// Objective partial groups and localities: the carrier of words conjugating
// chains of subgroups in a collection Delta, with R_w / L_w, the associated
// fusion system, and construction from a finite group.

#include "ploc/fusion.hpp"
#include "ploc/partial_group.hpp"

namespace ploc {

struct Locality {
  PartialGroup pg;  // Objective representation
  int p = 2;
  std::vector<Element> s_elements;  // pg-local indices of S, ascending
  SmallGroup s_group;               // indexed like s_elements
  std::vector<Mask> delta;          // sorted masks over the S indexing
  Mask s_mask = 0;

  int s_local(Element pg_element) const;
  bool delta_contains(Mask m) const;
};

/// Build a locality (ambient partial group, the ambient elements of S, Delta
/// as masks over the ascending S indexing). Validates that S is a p-subgroup,
/// S is in Delta, and Delta is closed under overgroups in S and under
/// carrier conjugation (DeltaNotClosed otherwise).
Locality make_locality(const PartialGroup& ambient, const std::vector<Element>& s_ambient,
                       std::vector<Mask> delta, int p);

/// Ambient element behind a locality carrier index.
Element locality_ambient_of(const Locality& loc, Element local);
int locality_local_of(const Locality& loc, Element ambient);
const PartialGroup& locality_ambient(const Locality& loc);

enum class DeltaPolicy { AllSubgroups, Centric, CentricRadical, Custom };

Locality locality_from_group(const SmallGroup& g, int p, DeltaPolicy policy,
                             const std::vector<Mask>& custom = {});

/// R_w and L_w as masks over the S indexing; optionally verifies the splitting
/// identity R_{uv} = R_u ∩ (L_u ∩ R_v)^{u^-1} for every split.
struct RwLw {
  Mask r = 0;
  Mask l = 0;
  bool split_identity = true;
};
RwLw compute_Rw_Lw(const Locality& loc, std::span<const Element> w, bool verify_splits = true);

/// The fusion system F_Delta(L): closure of the conjugation maps c_u on their
/// maximal domains R_(u).
FusionSystem fusion_system(const Locality& loc);

/// N_L(S) as pg-local elements.
std::vector<Element> normalizer_of_S(const Locality& loc);

struct LocalityReport {
  bool o1 = true;          // acceptance == existence of a Delta chain, R/L agree
  bool o2 = true;          // Delta closed under conjugation into S
  bool words_in_ambient = true;  // D_Delta ⊆ ambient domain
  bool s_maximal = true;   // S maximal among p-subgroups of the carrier
  bool axioms = true;      // partial-group axioms of the carrier
  Word witness;
  bool ok() const { return o1 && o2 && words_in_ambient && s_maximal && axioms; }
};

LocalityReport verify_locality(const Locality& loc, int bound = 4,
                               kernels::Mode mode = kernels::Mode::Parallel);

/// The (S,S)-biset property: appending or prepending N_L(S) letters preserves
/// acceptance. Returns an offending word if any.
std::optional<Word> biset_violation(const Locality& loc, int bound = 3);

}  // namespace ploc
