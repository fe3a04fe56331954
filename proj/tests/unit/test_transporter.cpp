#include <doctest.h>

#include <random>
#include <set>

#include "ploc/transporter.hpp"

using namespace ploc;

namespace {

TransporterSystem s4_centric() {
  return transporter_of_locality(locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::Centric));
}

IsoChain random_chain(const TransporterSystem& t, std::mt19937& rng, int maxlen) {
  std::vector<int> isos;
  for (int f = 0; f < t.mor_count(); ++f)
    if (!t.removed(f) && t.is_iso(f)) isos.push_back(f);
  std::uniform_int_distribution<std::size_t> pick(0, isos.size() - 1);
  IsoChain chain{isos[pick(rng)]};
  std::uniform_int_distribution<int> len(1, maxlen);
  int want = len(rng);
  while (static_cast<int>(chain.size()) < want) {
    // extend on the right with an iso into the current domain
    std::vector<int> nexts;
    for (int f : isos)
      if (t.mor(f).cod == t.mor(chain.back()).dom) nexts.push_back(f);
    if (nexts.empty()) break;
    std::uniform_int_distribution<std::size_t> pn(0, nexts.size() - 1);
    chain.push_back(nexts[pn(rng)]);
  }
  return chain;
}

}  // namespace

TEST_CASE("transporter category of a single object") {
  // S3 at p = 3 with Delta = {A3}: one object, morphisms N_{S3}(A3) = S3
  auto t = transporter_of_locality(locality_from_group(SmallGroup::symmetric(3), 3, DeltaPolicy::Centric));
  CHECK(t.objects().size() == 1);
  CHECK(t.mor_count() == 6);
  CHECK(check_transporter_axioms(t).ok());
}

TEST_CASE("transporter axioms for S4 over the centrics") {
  auto t = s4_centric();
  CHECK(t.objects().size() >= 4);
  auto rep = check_transporter_axioms(t);
  CHECK(rep.ok());
}

TEST_CASE("deleting a morphism breaks the axioms with a witness") {
  auto t = s4_centric();
  // delete a non-inclusion isomorphism
  int victim = -1;
  for (int f = 0; f < t.mor_count(); ++f)
    if (t.is_iso(f) && t.mor(f).dom != t.mor(f).cod) {
      victim = f;
      break;
    }
  REQUIRE(victim >= 0);
  t.remove_morphism(victim);
  auto rep = check_transporter_axioms(t);
  CHECK(!rep.ok());
  CHECK(!rep.detail.empty());
}

TEST_CASE("maximal representatives: unique, idempotent, restriction-compatible") {
  auto t = s4_centric();
  std::mt19937 rng(0xC0FFEE);
  for (int trial = 0; trial < 500; ++trial) {
    IsoChain chain = random_chain(t, rng, 3);
    IsoChain maxc = maximal_representative(t, chain);
    REQUIRE(maxc.size() == chain.size());
    // idempotent
    IsoChain again = maximal_representative(t, maxc);
    CHECK(again == maxc);
    // the input is a restriction of the maximum: domains/codomains contained
    for (std::size_t i = 0; i < chain.size(); ++i) {
      Mask small_dom = t.objects()[static_cast<std::size_t>(t.mor(chain[i]).dom)];
      Mask big_dom = t.objects()[static_cast<std::size_t>(t.mor(maxc[i]).dom)];
      CHECK((small_dom & ~big_dom) == 0);
    }
    // and restricting the maximum along the left object recovers the chain
    // (uniqueness of restrictions)
    IsoChain back;
    int want_cod = t.mor(chain.front()).cod;
    for (std::size_t i = 0; i < maxc.size(); ++i) {
      HomMap r = t.rho(maxc[i]);
      Mask want = t.objects()[static_cast<std::size_t>(want_cod)];
      Mask pre = 0;
      for (Element x : mask_elements(r.dom))
        if (mask_has(want, r.apply(x))) pre |= mask_bit(static_cast<int>(x));
      int pre_obj = t.object_index(pre & t.objects()[static_cast<std::size_t>(t.mor(chain[i]).dom)]);
      (void)pre_obj;
      int g = t.tighten_codomain(t.restrict_domain(maxc[i], t.mor(chain[i]).dom), t.mor(chain[i]).cod);
      REQUIRE(g >= 0);
      back.push_back(g);
      want_cod = t.mor(chain[i]).dom;
    }
    CHECK(back == chain);
  }
}

TEST_CASE("quotient of the S4 transporter is the centric locality back again") {
  auto loc = locality_from_group(SmallGroup::symmetric(4), 2, DeltaPolicy::Centric);
  auto t = transporter_of_locality(loc);
  auto q = quotient_to_locality(t);
  CHECK(q.pg.size() == loc.pg.size());

  // inclusion morphisms all collapse to the unit class
  for (int d = 0; d < static_cast<int>(t.objects().size()); ++d)
    for (int c = 0; c < static_cast<int>(t.objects().size()); ++c) {
      int inc = t.inclusion(d, c);
      if (inc >= 0) CHECK(q.class_of_mor[static_cast<std::size_t>(inc)] == q.pg.unit());
    }

  // two morphisms of the group transporter category are identified exactly
  // when they carry the same group element
  for (int f = 0; f < t.mor_count(); ++f)
    for (int g = 0; g < t.mor_count(); ++g) {
      bool same_class = q.class_of_mor[static_cast<std::size_t>(f)] == q.class_of_mor[static_cast<std::size_t>(g)];
      CHECK(same_class == (t.mor(f).u == t.mor(g).u));
    }

  // round-trip isomorphism of partial groups, via the canonical map
  std::vector<Element> iso(static_cast<std::size_t>(loc.pg.size()), -1);
  for (int f = 0; f < t.mor_count(); ++f)
    iso[static_cast<std::size_t>(t.mor(f).u)] = q.class_of_mor[static_cast<std::size_t>(f)];
  for (Element x : iso) REQUIRE(x >= 0);
  CHECK(!morphism_violation(iso, loc.pg, q.pg, 3));
  CHECK(verify_locality(q.loc, 3).ok());

  // and by blind search as well
  CHECK(find_isomorphism(q.pg, loc.pg).has_value());
}

TEST_CASE("quotient products come from maximal-representative composition") {
  auto loc = locality_from_group(SmallGroup::symmetric(3), 3, DeltaPolicy::Centric);
  auto t = transporter_of_locality(loc);
  auto q = quotient_to_locality(t);
  REQUIRE(q.pg.size() == 6);
  // products of classes equal classes of composites (functoriality of tau)
  std::vector<Element> iso(static_cast<std::size_t>(loc.pg.size()), -1);
  for (int f = 0; f < t.mor_count(); ++f)
    iso[static_cast<std::size_t>(t.mor(f).u)] = q.class_of_mor[static_cast<std::size_t>(f)];
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b)
      CHECK(q.pg.prod2(iso[static_cast<std::size_t>(a)], iso[static_cast<std::size_t>(b)]) ==
            iso[static_cast<std::size_t>(loc.pg.prod2(a, b))]);
}
