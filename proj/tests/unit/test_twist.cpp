#include <doctest.h>

#include <set>

#include "ploc/twist.hpp"

using namespace ploc;

namespace {

TwistingPair trivial_pair(const PartialGroup& fibre, const PartialGroup& base) {
  auto aut = enumerate_automorphisms(fibre);
  auto norm = compute_normalizer(fibre);
  std::vector<int> t(static_cast<std::size_t>(base.size()), aut.identity_index());
  return make_twisting_pair(fibre, base, aut, norm, std::move(t), {});
}

// Z/2 fibre, Z/2 base, eta(a,a) = z.
TwistingPair z4_pair() {
  auto z2f = make_cyclic(2);
  auto z2b = make_cyclic(2);
  auto aut = enumerate_automorphisms(z2f);
  auto norm = compute_normalizer(z2f);
  std::vector<int> t(2, aut.identity_index());
  return make_twisting_pair(z2f, z2b, aut, norm, std::move(t), {{1, 1, 1}});
}

// Classical 2-cocycle group extension oracle: multiplication on K x Q.
struct GroupExtOracle {
  const SmallGroup& k;
  const SmallGroup& q;
  std::function<Element(Element, Element)> act;  // action of q on k
  std::function<Element(Element, Element)> coc;  // eta(q, q')
  std::pair<Element, Element> mul(std::pair<Element, Element> a, std::pair<Element, Element> b) const {
    return {k.mul(k.mul(a.first, act(a.second, b.first)), coc(a.second, b.second)),
            q.mul(a.second, b.second)};
  }
};

}  // namespace

TEST_CASE("trivial twisting pair validates and gives the direct product") {
  auto f = make_symmetric(3);
  auto b = make_cyclic(2);
  auto p = trivial_pair(f, b);
  auto cert = validate_twisting_pair(p);
  CHECK(cert.valid);

  auto ext = build_extension(p);
  CHECK(ext.size() == 12);
  for (Element x1 = 0; x1 < f.size(); ++x1)
    for (Element g1 = 0; g1 < b.size(); ++g1)
      for (Element x2 = 0; x2 < f.size(); ++x2)
        for (Element g2 = 0; g2 < b.size(); ++g2) {
          Element e = ext.prod2(pair_encode(ext, x1, g1), pair_encode(ext, x2, g2));
          auto [x, g] = pair_decode(ext, e);
          CHECK(x == f.prod2(x1, x2));
          CHECK(g == b.prod2(g1, g2));
        }
}

TEST_CASE("the Z/4 twisting of Z/2 by Z/2") {
  auto p = z4_pair();
  auto cert = validate_twisting_pair(p);
  CHECK(cert.valid);

  auto ext = build_extension(p);
  // (1, a) has order 4
  Element v = pair_encode(ext, 0, 1);
  Element v2 = ext.prod2(v, v);
  CHECK(pair_decode(ext, v2) == std::pair<Element, Element>{1, 0});  // (z, 1)
  CHECK(ext.prod2(v2, v2) == ext.unit());
  // inversion formula on fibre elements: [(x,1)]^-1 = [(x^-1, 1)]
  Element zf = pair_encode(ext, 1, 0);
  CHECK(ext.inv(zf) == zf);

  auto rep = check_theorem_A(ext, 4);
  CHECK(rep.pass());
}

TEST_CASE("perturbed eta fails the cocycle check") {
  auto z4f = make_cyclic(4);
  auto z2b = make_cyclic(2);
  auto aut = enumerate_automorphisms(z4f);
  auto norm = compute_normalizer(z4f);
  std::vector<int> t(2, aut.identity_index());
  // eta(a,a) = a has Psi_a(eta) = eta but breaks the triple identity? No:
  // with trivial action every eta is a cocycle here, so instead break
  // normalization-compatibility via a nontrivial action with bad eta.
  std::vector<Element> invmap{0, 3, 2, 1};
  int invidx = aut.index_of(invmap);
  REQUIRE(invidx >= 0);
  std::vector<int> t2{aut.identity_index(), invidx};
  auto p = make_twisting_pair(z4f, z2b, aut, norm, std::move(t2), {{1, 1, 1}});
  auto cert = validate_twisting_pair(p);
  CHECK(!cert.valid);
  CHECK(cert.witness == Word{1, 1, 1});
  CHECK_THROWS_AS(build_extension(p), InvalidTwistingPair);
}

TEST_CASE("twisting function chains satisfy the tau conditions") {
  auto p = z4_pair();
  auto cat = make_homotopy_category(p.fibre, p.fibre_aut, p.fibre_norm);
  const auto& B = p.base;

  for (int len = 2; len <= 4; ++len) {
    for (const Word& w : B.words(len)) {
      auto chain = twisting_function(p, w).as_morphisms();
      REQUIRE(chain_composable(cat, chain));

      // (tau1): phi_{n-1}(d_i w) = d_{i-1}(phi_n w) for 2 <= i <= n-1
      for (int i = 2; i <= len - 1; ++i) {
        Word dw(w);
        dw[static_cast<std::size_t>(i - 1)] = B.prod2(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
        dw.erase(dw.begin() + i);
        auto lhs = twisting_function(p, dw).as_morphisms();
        auto rhs = chain_face(cat, chain, i - 1);
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t j = 0; j < lhs.size(); ++j) {
          CHECK(lhs[j].phi == rhs[j].phi);
          CHECK(lhs[j].eta == rhs[j].eta);
        }
      }

      // (tau2): phi_{n-1}(d_1 w) = d_0(phi_n w) (x) phi_{n-1}(d_0 w)
      {
        Word d1(w);
        d1[0] = B.prod2(w[0], w[1]);
        d1.erase(d1.begin() + 1);
        Word d0(w.begin() + 1, w.end());
        auto lhs = twisting_function(p, d1).as_morphisms();
        auto rhs = chain_tensor(cat, chain_face(cat, chain, 0), twisting_function(p, d0).as_morphisms());
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t j = 0; j < lhs.size(); ++j) {
          CHECK(lhs[j].phi == rhs[j].phi);
          CHECK(lhs[j].eta == rhs[j].eta);
        }
      }

      // inverse chain formula agrees with the generic inverse
      auto inv_explicit = twisting_function_inverse(p, w);
      auto inv_generic = chain_inverse(cat, chain);
      auto as_m = inv_explicit.as_morphisms();
      REQUIRE(as_m.size() == inv_generic.size());
      for (std::size_t j = 0; j < as_m.size(); ++j) {
        CHECK(as_m[j].phi == inv_generic[j].phi);
        CHECK(as_m[j].psi == inv_generic[j].psi);
        CHECK(as_m[j].eta == inv_generic[j].eta);
      }
    }
  }
}

TEST_CASE("tau3/tau4: degeneracies of the twisting function") {
  auto p = z4_pair();
  auto cat = make_homotopy_category(p.fibre, p.fibre_aut, p.fibre_norm);
  const auto& B = p.base;
  for (const Word& w : B.words(2)) {
    auto chain = twisting_function(p, w).as_morphisms();
    // phi_{n+1}(s_i b) = s_{i-1}(phi_n b) for i >= 1
    for (std::size_t i = 1; i <= w.size(); ++i) {
      Word sw(w);
      sw.insert(sw.begin() + static_cast<long>(i), B.unit());
      auto lhs = twisting_function(p, sw).as_morphisms();
      auto rhs = chain_degeneracy(cat, chain, static_cast<int>(i) - 1);
      REQUIRE(lhs.size() == rhs.size());
      for (std::size_t j = 0; j < lhs.size(); ++j) {
        CHECK(lhs[j].phi == rhs[j].phi);
        CHECK(lhs[j].eta == rhs[j].eta);
      }
    }
    // phi(s_0 b): first morphism is the identity morphism
    Word s0(w);
    s0.insert(s0.begin(), B.unit());
    auto c0 = twisting_function(p, s0);
    CHECK(c0.objects[0] == p.fibre_aut.identity_index());
    CHECK(c0.labels[0] == p.fibre.unit());
  }
}

TEST_CASE("membership equivalence: twisted vs untwisted fibre words") {
  auto p = z4_pair();
  auto ext = build_extension(p);
  for (int len = 2; len <= 4; ++len)
    for (const Word& w : ext.words(len)) {
      Word tw = twisted_fibre_word(ext, w);
      Word uw = untwisted_fibre_word(ext, w);
      CHECK(p.fibre.accepts(tw));
      CHECK(p.fibre.accepts(uw));
    }
}

TEST_CASE("projection and inclusion are morphisms; kernel of tau is the fibre") {
  auto p = z4_pair();
  auto ext = build_extension(p);
  auto tau = extension_projection(ext);
  auto iota = extension_inclusion(ext);
  CHECK(!morphism_violation(tau.on_elements, ext, p.base));
  CHECK(!morphism_violation(iota.on_elements, p.fibre, ext));

  auto k = kernel(tau);
  CHECK(k.is_normal);
  std::set<Element> expected;
  for (Element x = 0; x < p.fibre.size(); ++x) expected.insert(pair_encode(ext, x, p.base.unit()));
  CHECK(std::set<Element>(k.members.begin(), k.members.end()) == expected);

  // tau o iota collapses the fibre to the unit
  for (Element x = 0; x < p.fibre.size(); ++x) CHECK(tau(iota(x)) == p.base.unit());
}

TEST_CASE("group extensions match the classical 2-cocycle oracle") {
  // D8 = Z/4 twisted by Z/2 with inversion action, eta trivial
  auto z4f = make_cyclic(4);
  auto z2b = make_cyclic(2);
  auto aut = enumerate_automorphisms(z4f);
  auto norm = compute_normalizer(z4f);
  std::vector<Element> invmap{0, 3, 2, 1};
  int invidx = aut.index_of(invmap);
  std::vector<int> t{aut.identity_index(), invidx};
  auto p = make_twisting_pair(z4f, z2b, aut, norm, t, {});
  auto ext = build_extension(p);
  CHECK(check_theorem_A(ext, 4).pass());

  GroupExtOracle oracle{group_of(z4f), group_of(z2b),
                        [&](Element g, Element x) { return g == 1 ? invmap[static_cast<std::size_t>(x)] : x; },
                        [](Element, Element) { return 0; }};
  for (Element x1 = 0; x1 < 4; ++x1)
    for (Element g1 = 0; g1 < 2; ++g1)
      for (Element x2 = 0; x2 < 4; ++x2)
        for (Element g2 = 0; g2 < 2; ++g2) {
          auto [x, g] = oracle.mul({x1, g1}, {x2, g2});
          CHECK(pair_decode(ext, ext.prod2(pair_encode(ext, x1, g1), pair_encode(ext, x2, g2))) ==
                std::pair<Element, Element>{x, g});
        }
  // and it is D8: 2 elements of order 4, 5 involutions... via subgroup count of order 2
  int involutions = 0;
  for (Element e = 0; e < ext.size(); ++e)
    if (e != ext.unit() && ext.prod2(e, e) == ext.unit()) ++involutions;
  CHECK(involutions == 5);
}

TEST_CASE("strong equivalence distinguishes the two Z/2-by-Z/2 extensions") {
  auto p_klein = [] {
    auto z2f = make_cyclic(2);
    auto z2b = make_cyclic(2);
    auto aut = enumerate_automorphisms(z2f);
    auto norm = compute_normalizer(z2f);
    std::vector<int> t(2, aut.identity_index());
    return make_twisting_pair(z2f, z2b, aut, norm, std::move(t), {});
  }();
  auto a = build_extension(z4_pair());
  auto b = build_extension(p_klein);
  CHECK(!strong_equivalence(a, b).has_value());
  CHECK(strong_equivalence(a, a).has_value());
  CHECK(strong_equivalence(b, b).has_value());
}
