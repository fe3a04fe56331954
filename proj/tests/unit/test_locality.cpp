#include <doctest.h>

#include <cmath>
#include <set>

#include "ploc/locality.hpp"

using namespace ploc;

namespace {

Mask mask_of(const std::vector<int>& bits) {
  Mask m = 0;
  for (int b : bits) m |= mask_bit(b);
  return m;
}

}  // namespace

TEST_CASE("locality of S3 at p = 3: A3 normal means everything is accepted") {
  Locality loc = locality_from_group(SmallGroup::symmetric(3), 3, DeltaPolicy::Centric);
  CHECK(loc.s_elements.size() == 3);
  CHECK(loc.pg.size() == 6);  // N_{S3}(A3) = S3
  CHECK(verify_locality(loc, 4).ok());
  CHECK(!biset_violation(loc, 2).has_value());
}

TEST_CASE("locality of S4 at p = 2 over the centrics") {
  Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::Centric);
  CHECK(loc.s_elements.size() == 8);
  CHECK(loc.pg.size() == 24);  // the normal Klein group is centric
  CHECK(verify_locality(loc, 3).ok());

  // R_w, L_w and the splitting identity on every word of length <= 3
  for (int k = 1; k <= 3; ++k)
    for (const Word& w : loc.pg.words(k)) {
      auto rl = compute_Rw_Lw(loc, w);
      CHECK(rl.split_identity);
      CHECK(loc.s_group.is_subgroup_mask(rl.r));
      CHECK(loc.s_group.is_subgroup_mask(rl.l));
      // accepted => R_w <= R_{Pi(w)}
      auto single = compute_Rw_Lw(loc, Word{loc.pg.product(w)}, false);
      CHECK((rl.r & ~single.r) == 0);
    }
}

TEST_CASE("R_w for a single letter outside S") {
  // S3 at p = 2, all subgroups of S: Delta contains the trivial group
  Locality loc = locality_from_group(SmallGroup::symmetric(3), 2, DeltaPolicy::AllSubgroups);
  CHECK(loc.pg.size() == 6);
  CHECK(loc.s_elements.size() == 2);
  int nontrivial = 0;
  for (Element u = 0; u < loc.pg.size(); ++u) {
    auto rl = compute_Rw_Lw(loc, Word{u}, false);
    if (rl.r == mask_bit(0)) ++nontrivial;  // R = {1}
  }
  CHECK(nontrivial == 4);  // the four elements not normalizing S
  // w = (s) for s in S gives R = L = S
  for (Element s : loc.s_elements) {
    auto rl = compute_Rw_Lw(loc, Word{s}, false);
    CHECK(rl.r == loc.s_mask);
    CHECK(rl.l == loc.s_mask);
  }
}

TEST_CASE("for a p-group, the locality is all of BS") {
  Locality loc = locality_from_group(SmallGroup::dihedral(8), 2, DeltaPolicy::AllSubgroups);
  CHECK(loc.pg.size() == 8);
  for (int k = 1; k <= 4; ++k) CHECK(loc.pg.words(k).size() == static_cast<std::size_t>(std::pow(8, k)));
}

TEST_CASE("fusion system of a locality equals the group fusion system") {
  for (auto policy : {DeltaPolicy::AllSubgroups, DeltaPolicy::Centric, DeltaPolicy::CentricRadical}) {
    Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, policy);
    FusionSystem f_loc = fusion_system(loc);
    FusionSystem f_grp = group_fusion(SmallGroup::symmetric(4), group_of(locality_ambient(loc)).first_sylow(2), 2);
    CHECK(f_loc.same_homs(f_grp));
  }
}

TEST_CASE("subgroup classifiers on F_{D8}(S4)") {
  Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::AllSubgroups);
  FusionSystem f = fusion_system(loc);
  auto rep = subgroup_classifiers(f);

  // the normal Klein group: centric and radical with Out_F = S3
  const SmallGroup& s4 = group_of(locality_ambient(loc));
  Mask v_mask = 0;
  for (Element i = 0; i < static_cast<Element>(loc.s_elements.size()); ++i) {
    Element g = locality_ambient_of(loc, loc.s_elements[static_cast<std::size_t>(i)]);
    if (s4.order_of(g) == 1 || (s4.order_of(g) == 2 && s4.permutations()[static_cast<std::size_t>(g)][0] != 0 &&
                                s4.permutations()[static_cast<std::size_t>(g)][1] != 1 &&
                                s4.permutations()[static_cast<std::size_t>(g)][2] != 2 &&
                                s4.permutations()[static_cast<std::size_t>(g)][3] != 3))
      v_mask |= mask_bit(i);
  }
  REQUIRE(mask_size(v_mask) == 4);  // identity + the three double transpositions
  REQUIRE(f.S().is_subgroup_mask(v_mask));
  CHECK(f.is_centric(v_mask));
  CHECK(f.is_radical(v_mask));
  Mask outs = 0;
  SmallGroup out = f.out_group(v_mask, &outs);
  CHECK(out.size() == 6);  // Out_F(V) = S3

  // Z(D8) is not centric: its centralizer is all of D8
  Mask z = f.S().center_mask();
  CHECK(!f.is_centric(z));

  // implications: normal => strongly closed => weakly closed
  for (const auto& i : rep.info) {
    if (i.normal) CHECK(i.strongly_closed);
    if (i.strongly_closed) CHECK(i.weakly_closed);
    if (i.weakly_closed) CHECK(f.S().is_normal_in(i.subgroup, f.S().all_mask()));
  }
}

TEST_CASE("saturation of group fusion systems, and a constructed failure") {
  {
    Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::AllSubgroups);
    CHECK(check_saturation(fusion_system(loc)).saturated());
  }
  {
    Locality loc = locality_from_group(SmallGroup::dihedral(8), 2, DeltaPolicy::AllSubgroups);
    CHECK(check_saturation(fusion_system(loc)).saturated());
  }
  {
    // adjoin a single swap on the Klein group without its consequences
    FusionSystem f(SmallGroup::klein4(), 2);
    for (Element g = 0; g < 4; ++g) {
      // inner fusion: conjugation is trivial, i.e. inclusions only
      for (Mask p : f.lattice()) {
        HomMap h;
        h.dom = p;
        for (Element x : mask_elements(p)) h.img.push_back(x);
        f.add_hom(std::move(h));
      }
    }
    HomMap swap;
    swap.dom = mask_of({0, 1, 2, 3});
    swap.img = {0, 2, 1, 3};
    f.add_hom(swap);
    f.close();
    auto rep = check_saturation(f);
    CHECK(!rep.axiom_I);
    CHECK(!rep.saturated());
  }
}

TEST_CASE("normal subsystems") {
  // F_{A3}(A3) inside F(S3) at p = 3
  {
    Locality big = locality_from_group(SmallGroup::symmetric(3), 3, DeltaPolicy::AllSubgroups);
    FusionSystem f = fusion_system(big);
    Locality small = locality_from_group(SmallGroup::cyclic(3), 3, DeltaPolicy::AllSubgroups);
    FusionSystem e = fusion_system(small);
    // R = the full Sylow of F
    std::vector<Element> r_elements;
    for (std::size_t i = 0; i < big.s_elements.size(); ++i) r_elements.push_back(static_cast<Element>(i));
    auto rep = check_normal_subsystem(e, r_elements, f);
    CHECK(rep.contained);
    CHECK(rep.normal());
  }
  // reflexivity: F normal in F
  {
    Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::AllSubgroups);
    FusionSystem f = fusion_system(loc);
    std::vector<Element> r_elements;
    for (int i = 0; i < f.S().size(); ++i) r_elements.push_back(i);
    auto rep = check_normal_subsystem(f, r_elements, f);
    CHECK(rep.normal());
  }
  // a non-strongly-closed R fails N2
  {
    Locality loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::AllSubgroups);
    FusionSystem f = fusion_system(loc);
    // R = a non-central order-2 subgroup generated by a transposition-like element
    Mask r = 0;
    for (Mask m : f.S().subgroups())
      if (mask_size(m) == 2 && !f.strongly_closed(m)) {
        r = m;
        break;
      }
    REQUIRE(r != 0);
    std::vector<Element> r_elements = mask_elements(r);
    std::vector<Element> relems(r_elements.begin(), r_elements.end());
    FusionSystem e(f.S().subgroup_group(r), 2);
    for (Mask p : e.lattice()) {
      HomMap h;
      h.dom = p;
      for (Element x : mask_elements(p)) h.img.push_back(x);
      e.add_hom(std::move(h));
    }
    e.close();
    auto rep = check_normal_subsystem(e, relems, f);
    CHECK(!rep.n2);
    CHECK(!rep.normal());
  }
}

TEST_CASE("Z(F) of inner fusion is the full center") {
  Locality loc = locality_from_group(SmallGroup::dihedral(8), 2, DeltaPolicy::AllSubgroups);
  FusionSystem f = fusion_system(loc);
  CHECK(f.center() == f.S().center_mask());
}

TEST_CASE("custom Delta validation") {
  SmallGroup s3 = SmallGroup::symmetric(3);
  CHECK_THROWS_AS(locality_from_group(s3, 3, DeltaPolicy::Custom, {}), EmptyDelta);
  // a Delta violating overgroup closure: only the trivial subgroup
  CHECK_THROWS_AS(locality_from_group(s3, 3, DeltaPolicy::Custom, {Mask{1}}), DeltaNotClosed);
}
