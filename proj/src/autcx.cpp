#include "ploc/autcx.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ploc {

namespace {

bool sorted_contains(const std::vector<Element>& v, Element x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

bool Normalizer::contains(Element x) const { return sorted_contains(members, x); }

const std::vector<Element>& Normalizer::action_of(Element x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  if (it == members.end() || *it != x) throw Error("element not in N(M)");
  return action[static_cast<std::size_t>(it - members.begin())];
}

Normalizer compute_normalizer(const PartialGroup& m, int bound, kernels::Mode mode) {
  Normalizer out;
  out.owner = m;
  out.bound = bound;
  const int n = m.size();
  for (Element eta = 0; eta < n; ++eta) {
    // (i) left conjugation by eta is total and extends to an automorphism
    std::vector<Element> act(static_cast<std::size_t>(n));
    bool total = true;
    for (Element x = 0; x < n && total; ++x) {
      if (!m.left_conj_defined(eta, x)) {
        total = false;
        break;
      }
      act[static_cast<std::size_t>(x)] = m.left_conjugate(eta, x);
    }
    if (!total) continue;
    {
      std::vector<char> hit(static_cast<std::size_t>(n), 0);
      bool bij = true;
      for (Element y : act) {
        if (hit[static_cast<std::size_t>(y)]) {
          bij = false;
          break;
        }
        hit[static_cast<std::size_t>(y)] = 1;
      }
      if (!bij) continue;
    }
    if (morphism_violation(act, m, m, bound, mode)) continue;
    {
      std::vector<Element> inv_act(static_cast<std::size_t>(n));
      for (Element x = 0; x < n; ++x) inv_act[static_cast<std::size_t>(act[static_cast<std::size_t>(x)])] = x;
      if (morphism_violation(inv_act, m, m, bound, mode)) continue;
    }

    // (ii) every unit-insertion conjugated word accepts with equal products,
    // checked independently of (i)
    bool cond2 = true;
    for (int k = 1; k < bound && cond2; ++k) {
      const auto& level = m.words(k);
      long bad = kernels::first_index(
          static_cast<long>(level.size()),
          [&](long wi) {
            const Word& w = level[static_cast<std::size_t>(wi)];
            std::optional<Element> common;
            for (std::size_t i = 0; i <= w.size(); ++i) {
              Word v;
              v.reserve(w.size() + 1);
              for (std::size_t j = 0; j < i; ++j) v.push_back(act[static_cast<std::size_t>(w[j])]);
              v.push_back(eta);
              for (std::size_t j = i; j < w.size(); ++j) v.push_back(w[j]);
              auto p = m.try_product(v);
              if (!p) return true;
              if (common && *common != *p) return true;
              common = p;
            }
            return false;
          },
          mode);
      cond2 = bad < 0;
    }
    if (!cond2) continue;

    out.members.push_back(eta);
    out.action.push_back(std::move(act));
  }
  return out;
}

bool Center::contains(Element x) const { return sorted_contains(members, x); }

Center compute_center(const Normalizer& n) {
  Center z;
  z.owner = n.owner;
  z.bound = n.bound;
  for (std::size_t i = 0; i < n.members.size(); ++i) {
    bool trivial = true;
    for (Element x = 0; x < n.owner.size(); ++x)
      if (n.action[i][static_cast<std::size_t>(x)] != x) {
        trivial = false;
        break;
      }
    if (trivial) z.members.push_back(n.members[i]);
  }
  return z;
}

Center compute_center(const PartialGroup& m, int bound, kernels::Mode mode) {
  return compute_center(compute_normalizer(m, bound, mode));
}

int AutGroup::identity_index() const {
  std::vector<Element> id(static_cast<std::size_t>(owner.size()));
  for (Element x = 0; x < owner.size(); ++x) id[static_cast<std::size_t>(x)] = x;
  int i = index_of(id);
  if (i < 0) throw Error("identity automorphism missing");
  return i;
}

int AutGroup::index_of(const std::vector<Element>& map) const {
  auto it = std::lower_bound(autos.begin(), autos.end(), map);
  if (it == autos.end() || *it != map) return -1;
  return static_cast<int>(it - autos.begin());
}

int AutGroup::compose(int f, int g) const {
  const auto& a = autos[static_cast<std::size_t>(f)];
  const auto& b = autos[static_cast<std::size_t>(g)];
  std::vector<Element> c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  int idx = index_of(c);
  if (idx < 0) throw Error("automorphism set not closed under composition");
  return idx;
}

int AutGroup::invert(int f) const {
  const auto& a = autos[static_cast<std::size_t>(f)];
  std::vector<Element> c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[static_cast<std::size_t>(a[i])] = static_cast<Element>(i);
  int idx = index_of(c);
  if (idx < 0) throw Error("automorphism set not closed under inversion");
  return idx;
}

int AutGroup::outer_class_of(int f) const {
  for (std::size_t c = 0; c < outer_classes.size(); ++c)
    if (std::binary_search(outer_classes[c].begin(), outer_classes[c].end(), f)) return static_cast<int>(c);
  throw Error("automorphism not in any outer class");
}

SmallGroup AutGroup::as_group() const {
  const int k = order();
  std::vector<Element> table(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) table[static_cast<std::size_t>(a) * k + b] = compose(a, b);
  return SmallGroup::from_table(std::move(table));
}

namespace {

// Backtracking bijection search between two partial groups, pruned by
// unit/inversion/pair-product structure, then validated at word level.
struct BijectionSearch {
  const PartialGroup& src;
  const PartialGroup& dst;
  int bound;
  bool find_all;
  std::vector<std::vector<Element>> found;

  int n = 0;
  std::vector<int> pdef_src, pdef_dst;
  std::vector<Element> prod_src, prod_dst;
  std::vector<long> sig_src, sig_dst;

  BijectionSearch(const PartialGroup& s, const PartialGroup& d, int bound_, bool all)
      : src(s), dst(d), bound(bound_), find_all(all) {
    n = src.size();
    auto fill = [&](const PartialGroup& m, std::vector<int>& def, std::vector<Element>& prod) {
      def.assign(static_cast<std::size_t>(n) * n, 0);
      prod.assign(static_cast<std::size_t>(n) * n, -1);
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          if (m.defined2(a, b)) {
            def[static_cast<std::size_t>(a) * n + b] = 1;
            prod[static_cast<std::size_t>(a) * n + b] = m.prod2(a, b);
          }
    };
    fill(src, pdef_src, prod_src);
    fill(dst, pdef_dst, prod_dst);
    sig_src = signatures(src, pdef_src, prod_src);
    sig_dst = signatures(dst, pdef_dst, prod_dst);
  }

  std::vector<long> signatures(const PartialGroup& m, const std::vector<int>& def,
                               const std::vector<Element>& prod) {
    std::vector<long> sig(static_cast<std::size_t>(n));
    for (Element x = 0; x < n; ++x) {
      long row = 0, col = 0, unitrow = 0;
      for (Element y = 0; y < n; ++y) {
        row += def[static_cast<std::size_t>(x) * n + y];
        col += def[static_cast<std::size_t>(y) * n + x];
        if (def[static_cast<std::size_t>(x) * n + y] && prod[static_cast<std::size_t>(x) * n + y] == m.unit())
          ++unitrow;
      }
      long order = 0;  // first k <= 8 with x^k = 1 along defined powers
      Element acc = x;
      for (int k = 1; k <= 8; ++k) {
        if (acc == m.unit()) {
          order = k;
          break;
        }
        if (!def[static_cast<std::size_t>(acc) * n + x]) break;
        acc = prod[static_cast<std::size_t>(acc) * n + x];
      }
      long selfinv = m.inv(x) == x ? 1 : 0;
      sig[static_cast<std::size_t>(x)] = (((row * 97 + col) * 97 + unitrow) * 13 + order) * 2 + selfinv;
    }
    return sig;
  }

  bool propagate(std::vector<Element>& f, std::vector<Element>& finv, std::vector<Element>& work) {
    while (!work.empty()) {
      Element x = work.back();
      work.pop_back();
      Element y = f[static_cast<std::size_t>(x)];
      Element xi = src.inv(x), yi = dst.inv(y);
      if (f[static_cast<std::size_t>(xi)] >= 0) {
        if (f[static_cast<std::size_t>(xi)] != yi) return false;
      } else {
        if (finv[static_cast<std::size_t>(yi)] >= 0) return false;
        f[static_cast<std::size_t>(xi)] = yi;
        finv[static_cast<std::size_t>(yi)] = xi;
        work.push_back(xi);
      }
      for (Element a = 0; a < n; ++a) {
        Element fa = f[static_cast<std::size_t>(a)];
        if (fa < 0) continue;
        for (int side = 0; side < 2; ++side) {
          Element l = side ? a : x, r = side ? x : a;
          Element fl = side ? fa : y, fr = side ? y : fa;
          bool ds = pdef_src[static_cast<std::size_t>(l) * n + r];
          bool dd = pdef_dst[static_cast<std::size_t>(fl) * n + fr];
          if (ds != dd) return false;
          if (!ds) continue;
          Element c = prod_src[static_cast<std::size_t>(l) * n + r];
          Element fc = prod_dst[static_cast<std::size_t>(fl) * n + fr];
          if (f[static_cast<std::size_t>(c)] >= 0) {
            if (f[static_cast<std::size_t>(c)] != fc) return false;
          } else {
            if (finv[static_cast<std::size_t>(fc)] >= 0) return false;
            f[static_cast<std::size_t>(c)] = fc;
            finv[static_cast<std::size_t>(fc)] = c;
            work.push_back(c);
          }
        }
      }
    }
    return true;
  }

  bool word_level_ok(const std::vector<Element>& f) {
    // a table-preserving bijection between total domains is an isomorphism
    if (src.kind() == RepKind::GroupLike && dst.kind() == RepKind::GroupLike) return true;
    if (morphism_violation(f, src, dst, bound, kernels::Mode::Serial)) return false;
    std::vector<Element> finv(static_cast<std::size_t>(n));
    for (Element x = 0; x < n; ++x) finv[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])] = x;
    return !morphism_violation(finv, dst, src, bound, kernels::Mode::Serial);
  }

  bool recurse(std::vector<Element>& f, std::vector<Element>& finv) {
    Element x = -1;
    for (Element i = 0; i < n; ++i)
      if (f[static_cast<std::size_t>(i)] < 0) {
        x = i;
        break;
      }
    if (x < 0) {
      if (word_level_ok(f)) {
        found.push_back(f);
        return !find_all;
      }
      return false;
    }
    for (Element y = 0; y < n; ++y) {
      if (finv[static_cast<std::size_t>(y)] >= 0) continue;
      if (sig_src[static_cast<std::size_t>(x)] != sig_dst[static_cast<std::size_t>(y)]) continue;
      auto f2 = f;
      auto finv2 = finv;
      f2[static_cast<std::size_t>(x)] = y;
      finv2[static_cast<std::size_t>(y)] = x;
      std::vector<Element> work{x};
      if (propagate(f2, finv2, work) && recurse(f2, finv2)) return true;
    }
    return false;
  }

  void run() {
    if (src.size() != dst.size()) return;
    std::vector<Element> f(static_cast<std::size_t>(n), -1);
    std::vector<Element> finv(static_cast<std::size_t>(n), -1);
    f[static_cast<std::size_t>(src.unit())] = dst.unit();
    finv[static_cast<std::size_t>(dst.unit())] = src.unit();
    std::vector<Element> work{src.unit()};
    if (!propagate(f, finv, work)) return;
    recurse(f, finv);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
  }
};

void fill_outer_classes(AutGroup& g) {
  std::vector<char> assigned(g.autos.size(), 0);
  for (int f = 0; f < g.order(); ++f) {
    if (assigned[static_cast<std::size_t>(f)]) continue;
    std::vector<int> cls;
    for (int i : g.inner) {
      int h = g.compose(i, f);
      if (!assigned[static_cast<std::size_t>(h)]) {
        assigned[static_cast<std::size_t>(h)] = 1;
        cls.push_back(h);
      }
    }
    if (cls.empty()) {  // inner part may be empty only in degenerate data
      assigned[static_cast<std::size_t>(f)] = 1;
      cls.push_back(f);
    }
    std::sort(cls.begin(), cls.end());
    g.outer_classes.push_back(std::move(cls));
  }
}

}  // namespace

AutGroup enumerate_automorphisms(const PartialGroup& m, int budget, int bound, kernels::Mode mode) {
  if (m.size() > budget) throw BudgetExceeded("carrier larger than the automorphism search budget");
  BijectionSearch search(m, m, bound, /*find_all=*/true);
  search.run();

  AutGroup out;
  out.owner = m;
  out.bound = bound;
  out.autos = std::move(search.found);

  Normalizer norm = compute_normalizer(m, bound, mode);
  std::set<int> inner;
  for (const auto& act : norm.action) {
    int idx = out.index_of(act);
    if (idx < 0) throw Error("normalizer conjugation is not among the automorphisms");
    inner.insert(idx);
  }
  out.inner.assign(inner.begin(), inner.end());
  fill_outer_classes(out);
  return out;
}

std::optional<std::vector<Element>> find_isomorphism(const PartialGroup& a, const PartialGroup& b,
                                                     int budget, int bound) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() > budget) throw BudgetExceeded("carrier larger than the isomorphism search budget");
  BijectionSearch search(a, b, bound, /*find_all=*/false);
  search.run();
  if (search.found.empty()) return std::nullopt;
  return search.found.front();
}

ExactSequenceReport verify_exact_sequence(const PartialGroup& m, const Normalizer& n, const Center& z,
                                          const AutGroup& aut) {
  ExactSequenceReport r;
  r.n_order = static_cast<long>(n.members.size());
  r.z_order = static_cast<long>(z.members.size());
  r.aut_order = aut.order();
  r.inn_order = static_cast<long>(aut.inner.size());
  r.out_order = static_cast<long>(aut.outer_classes.size());

  std::vector<Element> ker;
  for (std::size_t i = 0; i < n.members.size(); ++i) {
    bool trivial = true;
    for (Element x = 0; x < m.size(); ++x)
      if (n.action[i][static_cast<std::size_t>(x)] != x) {
        trivial = false;
        break;
      }
    if (trivial) ker.push_back(n.members[i]);
  }
  r.kernel_is_center = ker == z.members;

  std::set<int> image;
  for (const auto& act : n.action) image.insert(aut.index_of(act));
  r.image_is_inner = std::vector<int>(image.begin(), image.end()) == aut.inner;

  r.orders_multiply = r.aut_order == r.inn_order * r.out_order;

  // Inn ≅ N/Z through the explicit conjugation map
  bool hom = true;
  for (std::size_t i = 0; i < n.members.size() && hom; ++i)
    for (std::size_t j = 0; j < n.members.size() && hom; ++j) {
      if (!m.defined2(n.members[i], n.members[j])) {
        hom = false;
        break;
      }
      Element p = m.prod2(n.members[i], n.members[j]);
      if (!n.contains(p)) {
        hom = false;
        break;
      }
      const auto& ai = n.action[i];
      const auto& aj = n.action[j];
      const auto& ap = n.action_of(p);
      for (Element x = 0; x < m.size(); ++x)
        if (ap[static_cast<std::size_t>(x)] !=
            ai[static_cast<std::size_t>(aj[static_cast<std::size_t>(x)])]) {
          hom = false;
          break;
        }
    }
  r.inn_iso_n_mod_z =
      hom && r.z_order > 0 && r.n_order % r.z_order == 0 && r.n_order / r.z_order == r.inn_order;
  return r;
}

// ---- category A(M) ---------------------------------------------------------

bool HomotopyCategory::is_morphism(const AutMorphism& f) const {
  if (f.phi < 0 || f.phi >= aut.order() || f.psi < 0 || f.psi >= aut.order()) return false;
  if (!norm.contains(f.eta)) return false;
  const auto& act = norm.action_of(f.eta);
  const auto& phi = aut.autos[static_cast<std::size_t>(f.phi)];
  const auto& psi = aut.autos[static_cast<std::size_t>(f.psi)];
  for (Element x = 0; x < owner.size(); ++x)
    if (phi[static_cast<std::size_t>(x)] != act[static_cast<std::size_t>(psi[static_cast<std::size_t>(x)])])
      return false;
  return true;
}

std::vector<AutMorphism> HomotopyCategory::morphisms(int phi, int psi) const {
  std::vector<AutMorphism> out;
  for (Element eta : norm.members) {
    AutMorphism f{phi, psi, eta};
    if (is_morphism(f)) out.push_back(f);
  }
  return out;
}

AutMorphism HomotopyCategory::compose(const AutMorphism& f, const AutMorphism& g) const {
  if (f.psi != g.phi) throw Error("homotopy morphisms not composable");
  return AutMorphism{f.phi, g.psi, owner.product({f.eta, g.eta})};
}

AutMorphism HomotopyCategory::tensor(const AutMorphism& f, const AutMorphism& g) const {
  const auto& phi0 = aut.autos[static_cast<std::size_t>(f.phi)];
  const auto& phi1 = aut.autos[static_cast<std::size_t>(f.psi)];
  Element label = owner.product({phi0[static_cast<std::size_t>(g.eta)], f.eta});
  Element label2 = owner.product({f.eta, phi1[static_cast<std::size_t>(g.eta)]});
  if (label != label2) throw Error("tensor label formulas disagree");
  return AutMorphism{aut.compose(f.phi, g.phi), aut.compose(f.psi, g.psi), label};
}

AutMorphism HomotopyCategory::inverse(const AutMorphism& f) const {
  int phi_inv = aut.invert(f.phi);
  int psi_inv = aut.invert(f.psi);
  Element e1 = aut.autos[static_cast<std::size_t>(phi_inv)][static_cast<std::size_t>(owner.inv(f.eta))];
  Element e2 = aut.autos[static_cast<std::size_t>(psi_inv)][static_cast<std::size_t>(owner.inv(f.eta))];
  if (e1 != e2) throw Error("inverse label formulas disagree");
  return AutMorphism{phi_inv, psi_inv, e1};
}

AutMorphism HomotopyCategory::identity() const {
  int id = aut.identity_index();
  return AutMorphism{id, id, owner.unit()};
}

HomotopyCategory make_homotopy_category(const PartialGroup& m, int bound) {
  return HomotopyCategory{m, enumerate_automorphisms(m, 64, bound), compute_normalizer(m, bound)};
}

HomotopyCategory make_homotopy_category(const PartialGroup& m, AutGroup aut, Normalizer norm) {
  return HomotopyCategory{m, std::move(aut), std::move(norm)};
}

bool chain_composable(const HomotopyCategory& cat, const MorphismChain& c) {
  for (const auto& f : c)
    if (!cat.is_morphism(f)) return false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].psi != c[i + 1].phi) return false;
  return true;
}

MorphismChain chain_inverse(const HomotopyCategory& cat, const MorphismChain& c) {
  MorphismChain out;
  out.reserve(c.size());
  for (const auto& f : c) out.push_back(cat.inverse(f));
  return out;
}

MorphismChain chain_face(const HomotopyCategory& cat, const MorphismChain& c, int i) {
  const int n = static_cast<int>(c.size());
  if (i < 0 || i > n) throw IndexOutOfRange("chain face out of range");
  MorphismChain out;
  if (i == 0) {
    out.assign(c.begin() + 1, c.end());
  } else if (i == n) {
    out.assign(c.begin(), c.end() - 1);
  } else {
    out.assign(c.begin(), c.begin() + i - 1);
    out.push_back(cat.compose(c[static_cast<std::size_t>(i - 1)], c[static_cast<std::size_t>(i)]));
    out.insert(out.end(), c.begin() + i + 1, c.end());
  }
  return out;
}

MorphismChain chain_degeneracy(const HomotopyCategory& cat, const MorphismChain& c, int i) {
  const int n = static_cast<int>(c.size());
  if (i < 0 || i > n) throw IndexOutOfRange("chain degeneracy out of range");
  int obj = i == n ? (n ? c.back().psi : cat.aut.identity_index()) : c[static_cast<std::size_t>(i)].phi;
  MorphismChain out(c);
  out.insert(out.begin() + i, AutMorphism{obj, obj, cat.owner.unit()});
  return out;
}

MorphismChain chain_tensor(const HomotopyCategory& cat, const MorphismChain& a, const MorphismChain& b) {
  if (a.size() != b.size()) throw Error("chains of different lengths");
  MorphismChain out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(cat.tensor(a[i], b[i]));
  return out;
}

Word homotopy_action(const HomotopyCategory& cat, const MorphismChain& chain, const Word& simplex) {
  if (chain.size() != simplex.size()) throw Error("chain length must match simplex dimension");
  const PartialGroup& m = cat.owner;
  Word out(simplex.size()), alt(simplex.size());
  for (std::size_t j = 0; j < simplex.size(); ++j) {
    const auto& phi = cat.aut.autos[static_cast<std::size_t>(chain[j].phi)];
    const auto& psi = cat.aut.autos[static_cast<std::size_t>(chain[j].psi)];
    out[j] = m.product({phi[static_cast<std::size_t>(simplex[j])], chain[j].eta});
    alt[j] = m.product({chain[j].eta, psi[static_cast<std::size_t>(simplex[j])]});
  }
  if (out != alt) throw Error("left- and right-twisted expansions disagree");
  if (!m.accepts(out)) throw DomainViolation("twisted image word rejected");
  return out;
}

RestrictedAut restricted_aut(const PartialGroup& m, const std::vector<Element>& s_members, int budget,
                             int bound, kernels::Mode mode) {
  AutGroup full = enumerate_automorphisms(m, budget, bound, mode);
  std::vector<Element> s(s_members);
  std::sort(s.begin(), s.end());

  RestrictedAut out;
  out.normalizer_S = normalizer_elements(m, s);
  out.center = compute_center(m, bound, mode).members;

  AutGroup res;
  res.owner = m;
  res.bound = bound;
  for (const auto& f : full.autos) {
    std::set<Element> img;
    for (Element x : s) img.insert(f[static_cast<std::size_t>(x)]);
    if (std::vector<Element>(img.begin(), img.end()) == s) res.autos.push_back(f);
  }

  std::set<int> inner;
  bool image_ok = true;
  for (Element u : out.normalizer_S) {
    std::vector<Element> act(static_cast<std::size_t>(m.size()));
    bool total = true;
    for (Element x = 0; x < m.size() && total; ++x) {
      if (!m.left_conj_defined(u, x))
        total = false;
      else
        act[static_cast<std::size_t>(x)] = m.left_conjugate(u, x);
    }
    int idx = total ? res.index_of(act) : -1;
    if (idx < 0) {
      image_ok = false;
      continue;
    }
    inner.insert(idx);
  }
  res.inner.assign(inner.begin(), inner.end());
  fill_outer_classes(res);

  ExactSequenceReport seq;
  seq.n_order = static_cast<long>(out.normalizer_S.size());
  seq.z_order = static_cast<long>(out.center.size());
  seq.aut_order = res.order();
  seq.inn_order = static_cast<long>(res.inner.size());
  seq.out_order = static_cast<long>(res.outer_classes.size());
  std::vector<Element> ker;
  for (Element u : out.normalizer_S) {
    bool trivial = true;
    for (Element x = 0; x < m.size() && trivial; ++x)
      trivial = m.left_conj_defined(u, x) && m.left_conjugate(u, x) == x;
    if (trivial) ker.push_back(u);
  }
  seq.kernel_is_center = ker == out.center;
  seq.image_is_inner = image_ok;
  seq.orders_multiply = seq.aut_order == seq.inn_order * seq.out_order;
  seq.inn_iso_n_mod_z =
      seq.z_order > 0 && seq.n_order % seq.z_order == 0 && seq.n_order / seq.z_order == seq.inn_order;
  out.sequence = seq;
  out.aut = std::move(res);
  return out;
}

}  // namespace ploc
