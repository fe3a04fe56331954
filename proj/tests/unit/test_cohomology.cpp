#include <doctest.h>

#include <algorithm>
#include <set>

#include "ploc/cohomology.hpp"

using namespace ploc;

namespace {

// Independent classical oracle: normalized bar-complex cohomology of a finite
// group acting on a finite abelian group, orders computed by enumeration.
struct BarOracle {
  SmallGroup g;                              // the group
  SmallGroup a;                              // abelian coefficients
  std::vector<std::vector<Element>> action;  // g -> automorphism of a

  std::vector<Word> basis(int deg) const {
    std::vector<Word> words{Word{}};
    for (int i = 0; i < deg; ++i) {
      std::vector<Word> next;
      for (const Word& w : words)
        for (Element x = 0; x < g.size(); ++x)
          if (x != g.unit()) {
            Word v(w);
            v.push_back(x);
            next.push_back(v);
          }
      words = std::move(next);
    }
    return words;
  }

  Element eval(int deg, const std::vector<Element>& c, const Word& w) const {
    for (Element x : w)
      if (x == g.unit()) return a.unit();
    const auto b = basis(deg);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] == w) return c[i];
    throw Error("bar oracle: missing basis word");
  }

  std::vector<Element> d(int deg, const std::vector<Element>& c) const {
    auto words = basis(deg + 1);
    std::vector<Element> out(words.size(), a.unit());
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      const Word& w = words[wi];
      Element acc = action[static_cast<std::size_t>(w[0])][static_cast<std::size_t>(
          eval(deg, c, Word(w.begin() + 1, w.end())))];
      for (std::size_t i = 1; i < w.size(); ++i) {
        Word m(w);
        m[i - 1] = g.mul(w[i - 1], w[i]);
        m.erase(m.begin() + static_cast<long>(i));
        Element v = eval(deg, c, m);
        if (i % 2) v = a.inv(v);
        acc = a.mul(acc, v);
      }
      Element v = eval(deg, c, Word(w.begin(), w.end() - 1));
      if (w.size() % 2) v = a.inv(v);
      out[wi] = a.mul(acc, v);
    }
    return out;
  }

  long h(int deg) const {
    auto bs = basis(deg);
    long total = 1;
    for (std::size_t i = 0; i < bs.size(); ++i) total *= a.size();
    long zc = 0;
    std::set<std::vector<Element>> bd;
    for (long n = 0; n < total; ++n) {
      std::vector<Element> c(bs.size());
      long v = n;
      for (auto& x : c) {
        x = static_cast<Element>(v % a.size());
        v /= a.size();
      }
      auto dc = d(deg, c);
      if (std::all_of(dc.begin(), dc.end(), [&](Element x) { return x == a.unit(); })) ++zc;
    }
    long lower_total = 1;
    for (std::size_t i = 0; i < basis(deg - 1).size(); ++i) lower_total *= a.size();
    for (long n = 0; n < lower_total; ++n) {
      std::vector<Element> c(basis(deg - 1).size());
      long v = n;
      for (auto& x : c) {
        x = static_cast<Element>(v % a.size());
        v /= a.size();
      }
      bd.insert(d(deg - 1, c));
    }
    return zc / static_cast<long>(bd.size());
  }
};

std::vector<std::vector<Element>> trivial_action(const SmallGroup& g, const SmallGroup& a) {
  std::vector<Element> id(static_cast<std::size_t>(a.size()));
  for (Element x = 0; x < a.size(); ++x) id[static_cast<std::size_t>(x)] = x;
  return std::vector<std::vector<Element>>(static_cast<std::size_t>(g.size()), id);
}

}  // namespace

TEST_CASE("d o d = 0 exhaustively over Z/2 with Z/2 coefficients") {
  auto base = make_cyclic(2);
  auto cc = make_cochain_complex(base, SmallGroup::cyclic(2),
                                 trivial_action(SmallGroup::cyclic(2), SmallGroup::cyclic(2)), 4);
  for (const Cochain& c : all_cochains(cc, 1)) {
    auto dc = differential(cc, 1, c);
    CHECK(differential(cc, 2, dc) == zero_cochain(cc, 3));
  }
  for (const Cochain& c : all_cochains(cc, 2)) {
    auto dc = differential(cc, 2, c);
    CHECK(differential(cc, 3, dc) == zero_cochain(cc, 4));
  }
}

TEST_CASE("the Z/2 two-cocycle eta(a,a) = z is not a coboundary") {
  auto base = make_cyclic(2);
  auto cc = make_cochain_complex(base, SmallGroup::cyclic(2),
                                 trivial_action(SmallGroup::cyclic(2), SmallGroup::cyclic(2)), 4);
  REQUIRE(cc.dim(2) == 1);
  Cochain eta{1};
  CHECK(is_cocycle(cc, 2, eta));
  CHECK(!coboundary_preimage(cc, 2, eta).has_value());
  for (const Cochain& c : all_cochains(cc, 1)) CHECK(differential(cc, 1, c) == Cochain{0});
}

TEST_CASE("H^2 orders match the classical bar oracle") {
  struct Case {
    PartialGroup base;
    SmallGroup coeff;
    long expected;
  };
  std::vector<Case> cases;
  cases.push_back({make_cyclic(2), SmallGroup::cyclic(2), 2});
  cases.push_back({make_cyclic(3), SmallGroup::cyclic(3), 3});
  cases.push_back({make_cyclic(2), SmallGroup::cyclic(3), 1});

  for (auto& k : cases) {
    auto act = trivial_action(group_of(k.base), k.coeff);
    auto cc = make_cochain_complex(k.base, k.coeff, act, 3);
    long ours = cohomology_order(cc, 2);
    BarOracle oracle{group_of(k.base), k.coeff, act};
    CHECK(ours == oracle.h(2));
    CHECK(ours == k.expected);
  }
}

TEST_CASE("twisted coefficients: Z/2 on Z/4 by inversion") {
  auto base = make_cyclic(2);
  SmallGroup z4 = SmallGroup::cyclic(4);
  std::vector<std::vector<Element>> act = trivial_action(group_of(base), z4);
  act[1] = {0, 3, 2, 1};
  auto cc = make_cochain_complex(base, z4, act, 3);
  CHECK(cohomology_order(cc, 2) == 2);
  BarOracle oracle{group_of(base), z4, act};
  CHECK(oracle.h(2) == 2);
}

TEST_CASE("obstruction classes of realizable outer actions vanish") {
  {
    auto act = trivial_outer_action(make_cyclic(2), make_cyclic(2));
    auto ob = obstruction_class(act);
    CHECK(ob.is_cocycle);
    CHECK(ob.is_coboundary);
  }
  {
    auto fibre = make_cyclic(4);
    auto base = make_cyclic(2);
    auto aut = enumerate_automorphisms(fibre);
    std::vector<Element> invmap{0, 3, 2, 1};
    int cls = aut.outer_class_of(aut.index_of(invmap));
    int idc = aut.outer_class_of(aut.identity_index());
    auto act = make_outer_action(fibre, base, {idc, cls});
    auto ob = obstruction_class(act);
    CHECK(ob.is_cocycle);
    CHECK(ob.is_coboundary);
    for (unsigned pert = 1; pert < 4; ++pert) {
      auto ob2 = obstruction_class(act, pert);
      CHECK(ob2.is_cocycle);
      CHECK(ob2.is_coboundary == ob.is_coboundary);
    }
  }
  {
    // a complete fibre: S3 has trivial center, so kappa is forced to vanish
    auto act = trivial_outer_action(make_symmetric(3), make_cyclic(2));
    auto ob = obstruction_class(act);
    CHECK(ob.is_cocycle);
    CHECK(ob.is_coboundary);
  }
}

TEST_CASE("classification counts: the Corollary B instances") {
  {
    auto rep = classify_extensions(trivial_outer_action(make_cyclic(2), make_cyclic(2)));
    CHECK(rep.classes.size() == 2);
    CHECK(rep.h2 == 2);
    CHECK(rep.counts_match);
  }
  {
    auto rep = classify_extensions(trivial_outer_action(make_cyclic(3), make_cyclic(3)));
    CHECK(rep.classes.size() == 3);
    CHECK(rep.h2 == 3);
    CHECK(rep.counts_match);
  }
  {
    auto rep = classify_extensions(trivial_outer_action(make_cyclic(3), make_cyclic(2)));
    CHECK(rep.classes.size() == 1);
    CHECK(rep.h2 == 1);
    CHECK(rep.counts_match);
  }
  {
    auto fibre = make_cyclic(4);
    auto base = make_cyclic(2);
    auto aut = enumerate_automorphisms(fibre);
    std::vector<Element> invmap{0, 3, 2, 1};
    int cls = aut.outer_class_of(aut.index_of(invmap));
    int idc = aut.outer_class_of(aut.identity_index());
    auto act = make_outer_action(fibre, base, {idc, cls});
    auto rep = classify_extensions(act);
    CHECK(rep.classes.size() == 2);  // D8 and Q8
    CHECK(rep.h2 == 2);
    CHECK(rep.counts_match);
  }
}

TEST_CASE("shifting eta by a cocycle keeps validity; by a coboundary keeps the class") {
  auto act = trivial_outer_action(make_cyclic(3), make_cyclic(3));
  auto rep = classify_extensions(act);
  REQUIRE(!rep.valid_pairs.empty());

  CenterCoefficients zc = center_coefficients(act);
  auto cc = make_cochain_complex(act.base, zc.coeff, zc.action, 3);
  auto zs = cocycles(cc, 2);
  auto bs = coboundaries(cc, 2);

  const TwistingPair& p0 = rep.valid_pairs.front();
  auto shift = [&](const Cochain& c) {
    std::vector<std::array<Element, 3>> eta_map;
    for (std::size_t wi = 0; wi < cc.basis[2].size(); ++wi) {
      const Word& w = cc.basis[2][wi];
      Element shifted =
          act.fibre.product({p0.eta_at(w[0], w[1]), zc.center_elements[static_cast<std::size_t>(c[wi])]});
      eta_map.push_back({w[0], w[1], shifted});
    }
    return make_twisting_pair(p0.fibre, p0.base, p0.fibre_aut, p0.fibre_norm, p0.t, eta_map);
  };

  for (const Cochain& z : zs) CHECK(validate_twisting_pair(shift(z)).valid);
  auto e0 = build_extension(p0);
  for (const Cochain& b : bs) {
    auto pb = shift(b);
    REQUIRE(validate_twisting_pair(pb).valid);
    CHECK(strong_equivalence(e0, build_extension(pb)).has_value());
  }
}
