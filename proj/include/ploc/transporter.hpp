#pragma once

// Transporter systems and the bridge back to localities: axiom checking, the
// nerve quotient by the inclusion poset, and maximal representatives of
// composable isomorphism chains.

#include "ploc/locality.hpp"

namespace ploc {

/// A transporter system backed by a locality: objects are the Delta
/// subgroups, Mor(P, Q) = {u : u P u^-1 <= Q}, composition is the partial
/// product. Morphisms can be deleted to build negative tests; all checks go
/// through the categorical interface (compose / eps / rho).
class TransporterSystem {
 public:
  struct Mor {
    Element u = -1;  // pg-local carrier element
    int dom = -1;    // object indices
    int cod = -1;
    bool operator<(const Mor& o) const { return std::tie(dom, cod, u) < std::tie(o.dom, o.cod, o.u); }
    bool operator==(const Mor& o) const { return u == o.u && dom == o.dom && cod == o.cod; }
  };

  explicit TransporterSystem(Locality loc);

  const Locality& locality() const { return loc_; }
  const std::vector<Mask>& objects() const { return objects_; }
  int object_index(Mask m) const;
  int mor_count() const { return static_cast<int>(mors_.size()); }
  const Mor& mor(int id) const { return mors_[static_cast<std::size_t>(id)]; }
  int mor_id(Element u, int dom, int cod) const;  // -1 if absent
  std::vector<int> mor_set(int dom, int cod) const;

  /// f o g for g: A -> B, f: B -> C; -1 when undefined or deleted.
  int compose(int f, int g) const;
  /// eps_{P,Q}(s) for s in N_S(P, Q); -1 when undefined.
  int eps(int dom, int cod, Element s_local) const;
  int inclusion(int dom, int cod) const;  // eps(dom, cod, 1)
  /// rho: the induced group homomorphism on S-local indices (left conjugation).
  HomMap rho(int f) const;
  bool is_iso(int f) const;
  int invert_iso(int f) const;  // -1 when not an isomorphism

  /// Restriction of f to a smaller domain object (always exists here).
  int restrict_domain(int f, int smaller_dom) const;
  /// The same morphism with its codomain cut down to `tighter_cod` (must
  /// contain the image); -1 if no such morphism exists.
  int tighten_codomain(int f, int tighter_cod) const;

  void remove_morphism(int id);
  bool removed(int id) const;

 private:
  Locality loc_;
  std::vector<Mask> objects_;
  std::vector<Mor> mors_;
  std::map<std::tuple<Element, int, int>, int> index_;
  std::set<int> removed_;
};

TransporterSystem transporter_of_locality(const Locality& loc);

struct TransporterReport {
  bool a1_functors = true;   // eps/rho functorial, rho surjective
  bool a2_free_orbit = true; // E(P) acts freely, rho is the orbit map
  bool b_injective = true;   // eps injective with rho o eps = conjugation
  bool c_naturality = true;
  bool i_sylow = true;
  bool ii_extension = true;
  std::string detail;
  bool ok() const { return a1_functors && a2_free_orbit && b_injective && c_naturality && i_sylow && ii_extension; }
};

TransporterReport check_transporter_axioms(const TransporterSystem& t);

/// A composable chain of isomorphisms (P_0 <- P_1 <- ... <- P_n), stored as
/// morphism ids with mor[i]: P_{i+1} -> P_i.
using IsoChain = std::vector<int>;

/// Lemma-style maximal extension: the unique chain of which the input is a
/// restriction and which restricts onto every other extension.
IsoChain maximal_representative(const TransporterSystem& t, const IsoChain& chain);

struct QuotientResult {
  PartialGroup pg;                // carrier = morphism classes
  Locality loc;                   // (quotient, objects, S-classes)
  std::vector<int> class_of_mor;  // morphism id -> carrier index
  std::vector<Element> s_class;   // S-local index -> carrier index
};

/// N(T)/P: identify morphisms through inclusion squares, compose classes via
/// maximal representatives.
QuotientResult quotient_to_locality(const TransporterSystem& t);

}  // namespace ploc
