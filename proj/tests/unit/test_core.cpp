#include <doctest.h>

#include "ploc/axioms.hpp"
#include "ploc/partial_group.hpp"
#include "ploc/simplicial.hpp"

using namespace ploc;

namespace {

// Independent permutation oracle: composition (a*b)(i) = a(b(i)).
std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

Element perm_index(const SmallGroup& g, const std::vector<int>& p) {
  for (Element i = 0; i < g.size(); ++i)
    if (g.permutations()[static_cast<std::size_t>(i)] == p) return i;
  return -1;
}

// The Z/4 presented as the twisted extension of Z/2 by Z/2 with eta(a,a) = z:
// carrier {(1,1), (z,1), (1,a), (z,a)} as an explicit table.
PartialGroup z4_as_explicit_extension() {
  // index = x*2 + g with x, g in {0, 1}
  ExplicitTableSpec s;
  s.size = 4;
  s.unit = 0;
  // index = x*2 + g; (1,a)^-1 = (z,a): 1 <-> 3, (z,1) is its own inverse
  s.inv = {0, 3, 2, 1};
  auto mul = [](Element e1, Element e2) {
    int x1 = e1 / 2, g1 = e1 % 2, x2 = e2 / 2, g2 = e2 % 2;
    int x = (x1 + x2 + (g1 && g2 ? 1 : 0)) % 2;  // eta(a,a) = z
    return static_cast<Element>(x * 2 + ((g1 + g2) % 2));
  };
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) s.prod.push_back({a, b, mul(a, b)});
  // all words up to length 4 accepted (it is a group)
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b)
      for (Element c = 0; c < 4; ++c) {
        s.accepted.push_back({a, b, c});
        for (Element d = 0; d < 4; ++d) s.accepted.push_back({a, b, c, d});
      }
  return make_explicit_table(std::move(s));
}

}  // namespace

TEST_CASE("order-2 element squares to the unit") {
  auto z2 = make_cyclic(2);
  CHECK(z2.product({1, 1}) == 0);
  CHECK(z2.product(std::span<const Element>{}) == z2.unit());
}

TEST_CASE("S3 products match the permutation oracle on all short words") {
  auto s3 = make_symmetric(3);
  const auto& g = group_of(s3);
  // spot value fixed by the oracle: [(12)|(13)]
  std::vector<int> t12{1, 0, 2}, t13{2, 1, 0};
  Element a = perm_index(g, t12), b = perm_index(g, t13);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK(s3.product({a, b}) == perm_index(g, compose_perm(t12, t13)));

  for (Element x = 0; x < 6; ++x)
    for (Element y = 0; y < 6; ++y)
      for (Element z = 0; z < 6; ++z) {
        auto direct = compose_perm(compose_perm(g.permutations()[static_cast<std::size_t>(x)],
                                                g.permutations()[static_cast<std::size_t>(y)]),
                                   g.permutations()[static_cast<std::size_t>(z)]);
        CHECK(s3.product({x, y, z}) == perm_index(g, direct));
      }
}

TEST_CASE("check_axioms passes on the group corpus") {
  for (auto m : {make_cyclic(2), make_cyclic(3), make_cyclic(4), make_klein4(), make_symmetric(3)}) {
    auto rep = check_axioms(m, 4);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("check_axioms passes on the explicit-table Z/4 extension") {
  auto rep = check_axioms(z4_as_explicit_extension(), 4);
  CHECK(rep.all_pass());
  // (1,a) has order 4: it is the cyclic group, not Klein
  auto m = z4_as_explicit_extension();
  Element v = 1;  // (1, a)
  CHECK(m.product({v, v}) == 2);  // (z, 1)
  CHECK(m.product({v, v, v, v}) == 0);
}

TEST_CASE("a table missing (a^-1, a) fails I1 with that witness") {
  ExplicitTableSpec s;
  s.size = 2;
  s.unit = 0;
  s.inv = {0, 1};
  s.prod = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};  // (1,1) = aa missing
  auto m = make_explicit_table(std::move(s));
  auto rep = check_axioms(m, 3);
  CHECK(!rep.all_pass());
  CHECK(!rep[Law::I1Inverse].pass);
  CHECK(rep[Law::I1Inverse].witness == Word{1});
}

TEST_CASE("conjugation conventions and bijection D(u) -> D(u^-1)") {
  auto s3 = make_symmetric(3);
  const auto& g = group_of(s3);
  Element t12 = perm_index(g, {1, 0, 2});
  Element c123 = perm_index(g, {1, 2, 0});  // the 3-cycle 0->1->2
  // right conjugation x^u = u^-1 x u; for u = x = (12), (123): value by oracle
  auto direct = compose_perm(compose_perm(g.permutations()[static_cast<std::size_t>(g.inv(t12))],
                                          g.permutations()[static_cast<std::size_t>(c123)]),
                             g.permutations()[static_cast<std::size_t>(t12)]);
  CHECK(s3.conjugate(t12, c123) == perm_index(g, direct));

  // unit conjugates trivially and D(1) = M
  for (Element x = 0; x < s3.size(); ++x) {
    CHECK(s3.conj_defined(s3.unit(), x));
    CHECK(s3.conjugate(s3.unit(), x) == x);
  }
  // c_{u^-1} inverts c_u
  for (Element u = 0; u < s3.size(); ++u)
    for (Element x : s3.conj_domain(u)) CHECK(s3.conjugate(s3.inv(u), s3.conjugate(u, x)) == x);
}

TEST_CASE("partial normality in S3") {
  auto s3 = make_symmetric(3);
  const auto& g = group_of(s3);
  std::vector<Element> a3;
  for (Element x = 0; x < 6; ++x)
    if (g.order_of(x) != 2) a3.push_back(x);
  auto n = make_partial_subgroup(s3, a3);
  CHECK(n.is_subgroup);
  CHECK(is_partial_normal(s3, n));

  Element t12 = perm_index(g, {1, 0, 2});
  auto h = make_partial_subgroup(s3, {s3.unit(), t12});
  CHECK(h.is_subgroup);
  CHECK(!is_partial_normal(s3, h));

  auto triv = make_partial_subgroup(s3, {s3.unit()});
  CHECK(is_partial_normal(s3, triv));
}

TEST_CASE("kernel of the sign map is A3 and is partial normal") {
  auto s3 = make_symmetric(3);
  auto z2 = make_cyclic(2);
  const auto& g = group_of(s3);
  std::vector<Element> sgn(6);
  for (Element x = 0; x < 6; ++x) sgn[static_cast<std::size_t>(x)] = g.order_of(x) == 2 ? 1 : 0;
  auto f = validate_morphism(sgn, s3, z2);
  auto k = kernel(f);
  CHECK(k.members.size() == 3);
  CHECK(k.is_normal);

  auto idk = kernel(identity_morphism(s3));
  CHECK(idk.members == std::vector<Element>{s3.unit()});
}

TEST_CASE("enumerate_subgroups finds the subgroup lattice of S3") {
  auto s3 = make_symmetric(3);
  auto subs = enumerate_subgroups(s3);
  CHECK(subs.size() == 6);  // 1, three C2, A3, S3
}
