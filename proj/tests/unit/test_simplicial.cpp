#include <doctest.h>

#include <set>
#include "ploc/simplicial.hpp"

using namespace ploc;

namespace {

std::vector<Simplex> all_simplices(const PartialGroup& m, int dim) {
  std::vector<Simplex> out;
  for (const Word& w : m.words(dim)) out.push_back(make_simplex(m, w));
  return out;
}

}  // namespace

TEST_CASE("face and degeneracy formulas") {
  auto z4 = make_cyclic(4);
  auto s = make_simplex(z4, {1, 1});
  CHECK(face(s, 1).word == Word{2});  // d1[a|a] = [a^2]

  auto one = make_simplex(z4, {1});
  CHECK(degeneracy(one, 0).word == Word{0, 1});      // s0[a] = [1|a]
  CHECK(face(degeneracy(one, 0), 0).word == Word{1});  // d0 s0 = id
}

TEST_CASE("simplicial identities on all corpus simplices up to dimension 3") {
  for (auto m : {make_cyclic(4), make_klein4(), make_symmetric(3), make_dihedral8()}) {
    for (int dim = 2; dim <= 3; ++dim) {
      for (const auto& s : all_simplices(m, dim)) {
        // d_i d_j = d_{j-1} d_i for i < j
        for (int j = 1; j <= dim; ++j)
          for (int i = 0; i < j; ++i)
            CHECK(face(face(s, j), i).word == face(face(s, i), j - 1).word);
        // d_i s_j relations
        for (int j = 0; j <= dim; ++j) {
          auto sj = degeneracy(s, j);
          for (int i = 0; i <= dim + 1; ++i) {
            if (i < j)
              CHECK(face(sj, i).word == degeneracy(face(s, i), j - 1).word);
            else if (i == j || i == j + 1)
              CHECK(face(sj, i).word == s.word);
            else
              CHECK(face(sj, i).word == degeneracy(face(s, i - 1), j).word);
          }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for (int i = 0; i <= dim; ++i)
          for (int j = i; j <= dim; ++j)
            CHECK(degeneracy(degeneracy(s, j), i).word == degeneracy(degeneracy(s, i), j + 1).word);
      }
    }
  }
}

TEST_CASE("enumerating operator unwinds to the letters, via both factorizations") {
  auto s3 = make_symmetric(3);
  for (const auto& s : all_simplices(s3, 3)) {
    CHECK(enumerate_edges(s) == s.word);
    CHECK(enumerate_edges_alt(s) == s.word);
  }
  // injectivity of E per dimension: words are their own edge lists
  for (int dim = 1; dim <= 3; ++dim) {
    std::set<Word> seen;
    for (const auto& s : all_simplices(s3, dim)) CHECK(seen.insert(enumerate_edges(s)).second);
  }
}

TEST_CASE("E commutes with degeneracies (propE (i)) on D8 words") {
  auto d8 = make_dihedral8();
  for (int dim = 1; dim <= 3; ++dim)
    for (const auto& s : all_simplices(d8, dim))
      for (int i = 0; i <= dim; ++i) {
        Word expect = s.word;
        expect.insert(expect.begin() + i, d8.unit());
        CHECK(enumerate_edges(degeneracy(s, i)) == expect);
      }
}

TEST_CASE("front/back operators and the product factorization") {
  auto s3 = make_symmetric(3);
  auto s = make_simplex(s3, {1, 2, 3});
  CHECK(front_face(s, 2).word == Word{1, 2});
  CHECK(back_face(s, 1).word == Word{3});

  // F_{n-j} = d_n^j and B_{n-j} = d_0^j (ident1 (i))
  for (const auto& w : all_simplices(s3, 3)) {
    Simplex top = w, bot = w;
    for (int j = 1; j <= 3; ++j) {
      top = face(top, top.dimension());
      bot = face(bot, 0);
      CHECK(front_face(w, 3 - j).word == top.word);
      CHECK(back_face(w, 3 - j).word == bot.word);
    }
  }

  // ident1 (ii), k = i = 1: F_1(d_1) = d_1(F_2) on D8 words
  auto d8 = make_dihedral8();
  for (const auto& w : all_simplices(d8, 3))
    CHECK(front_face(face(w, 1), 1).word == face(front_face(w, 2), 1).word);

  // simprop: Pi = Pi o Pi_{r,s}, checked through every split
  for (const auto& w : all_simplices(s3, 3))
    for (int r = 0; r <= 3; ++r) CHECK(product_op(product_op_rs(w, r)) == product_op(w));
}

TEST_CASE("anti-involution") {
  auto s3 = make_symmetric(3);
  for (const auto& s : all_simplices(s3, 2)) {
    auto nu = anti_involution(s);
    CHECK(nu.word == Word{s3.inv(s.word[1]), s3.inv(s.word[0])});
    CHECK(anti_involution(nu).word == s.word);
    // [nu(x) | x] accepted with product 1
    Word l = concat(nu.word, s.word);
    CHECK(s3.accepts(l));
    CHECK(s3.product(l) == s3.unit());
  }
  auto d8 = make_dihedral8();
  for (int dim = 1; dim <= 3; ++dim)
    for (const auto& s : all_simplices(d8, dim)) CHECK(anti_involution(anti_involution(s)).word == s.word);
}

TEST_CASE("morphism validation") {
  auto s3 = make_symmetric(3);
  auto z2 = make_cyclic(2);
  auto z4 = make_cyclic(4);

  CHECK(!morphism_violation(identity_morphism(s3).on_elements, s3, s3));

  const auto& g = group_of(s3);
  std::vector<Element> sgn(6);
  for (Element x = 0; x < 6; ++x) sgn[static_cast<std::size_t>(x)] = g.order_of(x) == 2 ? 1 : 0;
  CHECK(!morphism_violation(sgn, s3, z2));

  // Z/4 -> Z/2 sending a to the generator and a^2 to the generator: not a morphism
  std::vector<Element> bad{0, 1, 1, 1};
  auto viol = morphism_violation(bad, z4, z2);
  REQUIRE(viol.has_value());
  CHECK(*viol == Word{1, 1});
}
