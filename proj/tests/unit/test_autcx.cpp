#include <doctest.h>

#include <set>

#include "ploc/autcx.hpp"

using namespace ploc;

TEST_CASE("normalizer and center of groups") {
  auto s3 = make_symmetric(3);
  auto n = compute_normalizer(s3);
  CHECK(n.members.size() == 6);  // N(BG) = G
  auto z = compute_center(n);
  CHECK(z.members == std::vector<Element>{s3.unit()});

  auto v4 = make_klein4();
  CHECK(compute_center(v4).members.size() == 4);

  auto d8 = make_dihedral8();
  auto zd8 = compute_center(d8);
  CHECK(zd8.members.size() == 2);  // {1, r^2}
  CHECK(compute_normalizer(d8).contains(d8.unit()));
}

TEST_CASE("automorphism groups of small groups") {
  auto s3 = make_symmetric(3);
  auto a = enumerate_automorphisms(s3);
  CHECK(a.order() == 6);
  CHECK(a.inner.size() == 6);
  CHECK(a.outer_classes.size() == 1);  // S3 is complete

  auto z3 = make_cyclic(3);
  auto a3 = enumerate_automorphisms(z3);
  CHECK(a3.order() == 2);
  CHECK(a3.inner.size() == 1);
  CHECK(a3.outer_classes.size() == 2);

  CHECK(a.identity_index() >= 0);
  CHECK_THROWS_AS(enumerate_automorphisms(make_symmetric(4), /*budget=*/10), BudgetExceeded);
}

TEST_CASE("exact sequence 1 -> Z -> N -> Aut -> Out -> 1") {
  for (auto m : {make_symmetric(3), make_cyclic(3), make_dihedral8(), make_quaternion8()}) {
    auto n = compute_normalizer(m);
    auto z = compute_center(n);
    auto a = enumerate_automorphisms(m);
    auto r = verify_exact_sequence(m, n, z, a);
    CHECK(r.ok());
  }
  // frozen orders for B S3 and B Z/3
  {
    auto m = make_symmetric(3);
    auto r = verify_exact_sequence(m, compute_normalizer(m), compute_center(m), enumerate_automorphisms(m));
    CHECK(r.n_order == 6);
    CHECK(r.z_order == 1);
    CHECK(r.aut_order == 6);
    CHECK(r.out_order == 1);
  }
  {
    auto m = make_cyclic(3);
    auto r = verify_exact_sequence(m, compute_normalizer(m), compute_center(m), enumerate_automorphisms(m));
    CHECK(r.n_order == 3);
    CHECK(r.z_order == 3);
    CHECK(r.aut_order == 2);
    CHECK(r.out_order == 2);
  }
}

TEST_CASE("N(M) is closed under products and inversion") {
  for (auto m : {make_symmetric(3), make_dihedral8()}) {
    auto n = compute_normalizer(m);
    for (Element a : n.members) {
      CHECK(n.contains(m.inv(a)));
      for (Element b : n.members) {
        REQUIRE(m.defined2(a, b));
        CHECK(n.contains(m.prod2(a, b)));
      }
    }
  }
}

TEST_CASE("Psi(eta) stays in N(M) with conjugated action") {
  auto d8 = make_dihedral8();
  auto n = compute_normalizer(d8);
  auto a = enumerate_automorphisms(d8);
  for (int f = 0; f < a.order(); ++f) {
    const auto& psi = a.autos[static_cast<std::size_t>(f)];
    for (Element eta : n.members) {
      Element img = psi[static_cast<std::size_t>(eta)];
      CHECK(n.contains(img));
      const auto& lhs = n.action_of(img);
      const auto& mid = n.action_of(eta);
      for (Element x = 0; x < d8.size(); ++x) {
        Element pre = a.autos[static_cast<std::size_t>(a.invert(f))][static_cast<std::size_t>(x)];
        CHECK(lhs[static_cast<std::size_t>(x)] == psi[static_cast<std::size_t>(mid[static_cast<std::size_t>(pre)])]);
      }
    }
  }
}

TEST_CASE("homotopy category: composition, tensor, inverse") {
  auto d8 = make_dihedral8();
  auto cat = make_homotopy_category(d8);
  auto id = cat.identity();
  CHECK(cat.is_morphism(id));

  // every morphism passes is_morphism; tensor unit and inverse laws
  for (int phi = 0; phi < cat.aut.order(); ++phi)
    for (int psi = 0; psi < cat.aut.order(); ++psi)
      for (const auto& f : cat.morphisms(phi, psi)) {
        CHECK(cat.is_morphism(f));
        auto c1 = cat.compose(f, AutMorphism{f.psi, f.psi, d8.unit()});
        CHECK(c1.eta == f.eta);
        auto inv = cat.inverse(f);
        CHECK(cat.is_morphism(inv));
        auto t = cat.tensor(f, inv);  // monoidal inverse: f (x) f^-1 = identity
        CHECK(t.phi == cat.aut.identity_index());
        CHECK(t.psi == cat.aut.identity_index());
        CHECK(t.eta == d8.unit());
        auto u = cat.tensor(f, cat.identity());
        CHECK(u.phi == f.phi);
        CHECK(u.eta == f.eta);
      }
}

TEST_CASE("homotopy action, dimension 1 and the dihedral example") {
  auto d8 = make_dihedral8();
  auto cat = make_homotopy_category(d8);

  // identity chain with unit label leaves simplices unchanged
  for (const Word& w : d8.words(2)) {
    MorphismChain chain{cat.identity(), cat.identity()};
    CHECK(homotopy_action(cat, chain, w) == w);
  }

  // single morphism on [x]: [Psi0(x) . eta] = [eta . Psi1(x)]
  for (int phi = 0; phi < cat.aut.order(); ++phi)
    for (const auto& f : cat.morphisms(phi, cat.aut.identity_index()))
      for (const Word& w : d8.words(1)) {
        Word img = homotopy_action(cat, {f}, w);
        const auto& a = cat.aut.autos[static_cast<std::size_t>(f.phi)];
        CHECK(img[0] == d8.product({a[static_cast<std::size_t>(w[0])], f.eta}));
      }

  // eta = r^2 central: conjugation by r^2 is trivial, action multiplies by r^2
  Element r2 = -1;
  {
    auto z = compute_center(d8);
    for (Element x : z.members)
      if (x != d8.unit()) r2 = x;
  }
  REQUIRE(r2 >= 0);
  int id = cat.aut.identity_index();
  AutMorphism f{id, id, r2};
  REQUIRE(cat.is_morphism(f));
  for (const Word& w : d8.words(1)) CHECK(homotopy_action(cat, {f}, w)[0] == d8.prod2(w[0], r2));
}

TEST_CASE("chain inverse matches the generic inverse formula") {
  auto d8 = make_dihedral8();
  auto cat = make_homotopy_category(d8);
  // build 2-chains from inner morphisms
  auto n = compute_normalizer(d8);
  int tested = 0;
  for (Element e1 : n.members)
    for (Element e2 : n.members) {
      int psi1 = cat.aut.index_of(n.action_of(e1));
      int psi2 = cat.aut.index_of(n.action_of(e2));
      int id = cat.aut.identity_index();
      AutMorphism m2{psi2, id, e2};
      AutMorphism m1{cat.aut.compose(psi1, psi2), psi2, e1};
      if (!cat.is_morphism(m1) || !cat.is_morphism(m2)) continue;
      MorphismChain c{m1, m2};
      REQUIRE(chain_composable(cat, c));
      auto inv = chain_inverse(cat, c);
      CHECK(chain_composable(cat, inv));
      // pointwise tensor with the inverse is the identity chain
      auto t = chain_tensor(cat, c, inv);
      for (const auto& f : t) {
        CHECK(f.phi == cat.aut.identity_index());
        CHECK(f.eta == d8.unit());
      }
      ++tested;
    }
  CHECK(tested > 0);
}

TEST_CASE("restricted automorphisms of B S for a p-group equal Aut(S)") {
  auto d8 = make_dihedral8();
  std::vector<Element> s(static_cast<std::size_t>(d8.size()));
  for (Element i = 0; i < d8.size(); ++i) s[static_cast<std::size_t>(i)] = i;
  auto r = restricted_aut(d8, s);
  CHECK(r.aut.order() == enumerate_automorphisms(d8).order());
  CHECK(r.sequence.ok());
}
