#pragma once

// Fusion systems over a finite p-group S: hom-sets of injective group
// homomorphisms between subgroups of S, with the subgroup classifiers and the
// saturation / normal-subsystem checkers.

#include <map>
#include <set>

#include "ploc/smallgroup.hpp"

namespace ploc {

/// An injective homomorphism P -> S, stored as images of the ascending
/// element list of P.
struct HomMap {
  Mask dom = 0;
  std::vector<Element> img;  // img[i] = image of the i-th element of dom

  Mask image_mask() const;
  Element apply(Element x) const;
  bool operator<(const HomMap& o) const { return std::tie(dom, img) < std::tie(o.dom, o.img); }
  bool operator==(const HomMap& o) const { return dom == o.dom && img == o.img; }
};

class FusionSystem {
 public:
  FusionSystem() = default;
  FusionSystem(SmallGroup s, int p);

  const SmallGroup& S() const { return s_; }
  int prime() const { return p_; }
  const std::vector<Mask>& lattice() const { return lattice_; }
  int lattice_index(Mask m) const;

  void add_hom(HomMap h);  // no closure
  /// Close under restriction and composition.
  void close();

  const std::vector<HomMap>& homs_from(Mask p) const;
  std::vector<HomMap> homs(Mask p, Mask q) const;  // image inside q
  std::vector<HomMap> isos(Mask p, Mask q) const;  // image exactly q
  std::vector<HomMap> auts(Mask p) const;

  /// The F-conjugates of P (including P).
  std::vector<Mask> conjugates(Mask p) const;
  std::vector<std::vector<Mask>> conjugacy_classes() const;

  bool fully_centralized(Mask p) const;
  bool fully_normalized(Mask p) const;
  bool is_centric(Mask p) const;
  bool is_radical(Mask p) const;
  bool weakly_closed(Mask p) const;
  bool strongly_closed(Mask p) const;
  bool is_normal(Mask p) const;   // F-normal
  bool is_central(Mask p) const;  // F-central
  Mask center() const;            // Z(F)

  /// Aut_F(P) as an abstract group, with the image of Inn(P) flagged.
  SmallGroup aut_group(Mask p, Mask* inn_image = nullptr, std::vector<HomMap>* elements = nullptr) const;
  /// Out_F(P) and the image of Out_S(P) inside it.
  SmallGroup out_group(Mask p, Mask* out_s_image = nullptr) const;

  bool same_homs(const FusionSystem& other) const;
  /// this ⊆ other, elementwise on hom sets.
  bool subsystem_of(const FusionSystem& other) const;

 private:
  SmallGroup s_;
  int p_ = 2;
  std::vector<Mask> lattice_;
  std::map<Mask, int> lattice_pos_;
  std::vector<std::set<HomMap>> homs_;          // by lattice index of dom
  mutable std::vector<std::vector<HomMap>> homs_flat_;  // rebuilt on close()
  void rebuild_flat() const;
};

/// The fusion system of a group: homs are conjugations c_g : x -> g^-1 x g
/// between subgroups of S, for every g in G.
FusionSystem group_fusion(const SmallGroup& g, Mask s, int p);

struct SubgroupInfo {
  Mask subgroup = 0;
  bool fully_centralized = false;
  bool fully_normalized = false;
  bool centric = false;
  bool radical = false;
  bool weakly_closed = false;
  bool strongly_closed = false;
  bool normal = false;
  bool central = false;
};

struct ClassifierReport {
  std::vector<SubgroupInfo> info;  // per lattice entry
  Mask center = 0;                 // Z(F)
};

ClassifierReport subgroup_classifiers(const FusionSystem& f, int budget = 64);

struct SaturationReport {
  bool axiom_I = true;
  bool axiom_II = true;
  Mask witness_I = 0;
  Mask witness_II = 0;
  bool saturated() const { return axiom_I && axiom_II; }
};

SaturationReport check_saturation(const FusionSystem& f, int budget = 64);

struct NormalSubsystemReport {
  bool n1 = false;  // E saturated
  bool n2 = false;  // R strongly F-closed
  bool n3 = false;  // conjugation-invariance of E-homs
  bool n4 = false;  // extension of Aut_E(R) to R C_S(R) with [f~, C_S(R)] <= Z(R)
  bool contained = false;  // E ⊆ F
  bool normal() const { return contained && n1 && n2 && n3 && n4; }
};

/// E is a fusion system over R (its own S() is the subgroup group of R);
/// `r_mask` locates R inside F's p-group and `r_elements` aligns E's local
/// element indices with F's.
NormalSubsystemReport check_normal_subsystem(const FusionSystem& e, const std::vector<Element>& r_elements,
                                             const FusionSystem& f, int budget = 64);

}  // namespace ploc
