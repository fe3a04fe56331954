#include "ploc/transporter.hpp"

#include <algorithm>
#include <numeric>

namespace ploc {

TransporterSystem::TransporterSystem(Locality loc) : loc_(std::move(loc)) {
  objects_ = loc_.delta;
  const PartialGroup& pg = loc_.pg;
  for (int d = 0; d < static_cast<int>(objects_.size()); ++d)
    for (int c = 0; c < static_cast<int>(objects_.size()); ++c)
      for (Element u = 0; u < pg.size(); ++u) {
        bool ok = true;
        for (int i : mask_elements(objects_[static_cast<std::size_t>(d)])) {
          Element s = loc_.s_elements[static_cast<std::size_t>(i)];
          if (!pg.left_conj_defined(u, s)) {
            ok = false;
            break;
          }
          int j = loc_.s_local(pg.left_conjugate(u, s));
          if (j < 0 || !mask_has(objects_[static_cast<std::size_t>(c)], j)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          index_[{u, d, c}] = static_cast<int>(mors_.size());
          mors_.push_back(Mor{u, d, c});
        }
      }
}

TransporterSystem transporter_of_locality(const Locality& loc) { return TransporterSystem(loc); }

int TransporterSystem::object_index(Mask m) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), m);
  if (it == objects_.end() || *it != m) return -1;
  return static_cast<int>(it - objects_.begin());
}

int TransporterSystem::mor_id(Element u, int dom, int cod) const {
  auto it = index_.find({u, dom, cod});
  if (it == index_.end() || removed_.count(it->second)) return -1;
  return it->second;
}

std::vector<int> TransporterSystem::mor_set(int dom, int cod) const {
  std::vector<int> out;
  for (int id = 0; id < mor_count(); ++id)
    if (!removed_.count(id) && mors_[static_cast<std::size_t>(id)].dom == dom &&
        mors_[static_cast<std::size_t>(id)].cod == cod)
      out.push_back(id);
  return out;
}

int TransporterSystem::compose(int f, int g) const {
  const Mor& mf = mors_[static_cast<std::size_t>(f)];
  const Mor& mg = mors_[static_cast<std::size_t>(g)];
  if (mg.cod != mf.dom) return -1;
  auto p = loc_.pg.try_product({mf.u, mg.u});
  if (!p) return -1;
  return mor_id(*p, mg.dom, mf.cod);
}

int TransporterSystem::eps(int dom, int cod, Element s_local) const {
  return mor_id(loc_.s_elements[static_cast<std::size_t>(s_local)], dom, cod);
}

int TransporterSystem::inclusion(int dom, int cod) const {
  Element unit_local = -1;
  for (std::size_t i = 0; i < loc_.s_elements.size(); ++i)
    if (loc_.s_elements[i] == loc_.pg.unit()) unit_local = static_cast<Element>(i);
  return eps(dom, cod, unit_local);
}

HomMap TransporterSystem::rho(int f) const {
  const Mor& m = mors_[static_cast<std::size_t>(f)];
  HomMap h;
  h.dom = objects_[static_cast<std::size_t>(m.dom)];
  for (int i : mask_elements(h.dom)) {
    Element s = loc_.s_elements[static_cast<std::size_t>(i)];
    h.img.push_back(loc_.s_local(loc_.pg.left_conjugate(m.u, s)));
  }
  return h;
}

bool TransporterSystem::is_iso(int f) const {
  const Mor& m = mors_[static_cast<std::size_t>(f)];
  return rho(f).image_mask() == objects_[static_cast<std::size_t>(m.cod)];
}

int TransporterSystem::invert_iso(int f) const {
  if (!is_iso(f)) return -1;
  const Mor& m = mors_[static_cast<std::size_t>(f)];
  return mor_id(loc_.pg.inv(m.u), m.cod, m.dom);
}

int TransporterSystem::restrict_domain(int f, int smaller_dom) const {
  const Mor& m = mors_[static_cast<std::size_t>(f)];
  int inc = inclusion(smaller_dom, m.dom);
  if (inc < 0) return -1;
  return compose(f, inc);
}

int TransporterSystem::tighten_codomain(int f, int tighter_cod) const {
  const Mor& m = mors_[static_cast<std::size_t>(f)];
  Mask img = rho(f).image_mask();
  if ((img & ~objects_[static_cast<std::size_t>(tighter_cod)]) != 0) return -1;
  // the unique morphism r with incl o r = f
  for (int r : mor_set(m.dom, tighter_cod)) {
    int lifted = compose(inclusion(tighter_cod, m.cod), r);
    if (lifted == f) return r;
  }
  return -1;
}

void TransporterSystem::remove_morphism(int id) { removed_.insert(id); }
bool TransporterSystem::removed(int id) const { return removed_.count(id) > 0; }

// ---- axioms -----------------------------------------------------------------

TransporterReport check_transporter_axioms(const TransporterSystem& t) {
  TransporterReport rep;
  const Locality& loc = t.locality();
  const int nobj = static_cast<int>(t.objects().size());
  FusionSystem fus = fusion_system(loc);

  // (A1): composition closure, rho functorial and surjective onto Hom_F
  for (int f = 0; f < t.mor_count() && rep.a1_functors; ++f) {
    if (t.removed(f)) continue;
    for (int g = 0; g < t.mor_count(); ++g) {
      if (t.removed(g)) continue;
      if (t.mor(g).cod != t.mor(f).dom) continue;
      int c = t.compose(f, g);
      if (c < 0) {
        rep.a1_functors = false;
        rep.detail = "composition not closed";
        break;
      }
      HomMap lhs = t.rho(c);
      HomMap rf = t.rho(f), rg = t.rho(g);
      HomMap rhs;
      rhs.dom = rg.dom;
      for (Element x : mask_elements(rg.dom)) rhs.img.push_back(rf.apply(rg.apply(x)));
      if (!(lhs == rhs)) {
        rep.a1_functors = false;
        rep.detail = "rho not functorial";
        break;
      }
    }
  }
  for (int d = 0; d < nobj && rep.a1_functors; ++d)
    for (int c = 0; c < nobj && rep.a1_functors; ++c) {
      std::set<HomMap> images;
      for (int f : t.mor_set(d, c)) images.insert(t.rho(f));
      auto homset = fus.homs(t.objects()[static_cast<std::size_t>(d)], t.objects()[static_cast<std::size_t>(c)]);
      std::set<HomMap> expected(homset.begin(), homset.end());
      if (images != expected) {
        rep.a1_functors = false;
        rep.detail = "rho not surjective onto Hom_F";
      }
    }

  // (A2): E(P) acts freely on the right with rho the orbit map; E(Q) freely on the left
  for (int d = 0; d < nobj && rep.a2_free_orbit; ++d) {
    std::vector<int> ep;
    for (int e : t.mor_set(d, d)) {
      HomMap r = t.rho(e);
      bool ident = true;
      for (Element x : mask_elements(r.dom))
        if (r.apply(x) != x) {
          ident = false;
          break;
        }
      if (ident) ep.push_back(e);
    }
    for (int c = 0; c < nobj && rep.a2_free_orbit; ++c) {
      auto morset = t.mor_set(d, c);
      for (int u : morset) {
        std::set<int> orbit;
        for (int e : ep) {
          int ue = t.compose(u, e);
          if (ue < 0 || !orbit.insert(ue).second) {
            rep.a2_free_orbit = false;
            rep.detail = "E(P) does not act freely";
            break;
          }
        }
        if (!rep.a2_free_orbit) break;
        for (int v : morset) {
          bool same_rho = t.rho(u) == t.rho(v);
          bool in_orbit = orbit.count(v) > 0;
          if (same_rho != in_orbit) {
            rep.a2_free_orbit = false;
            rep.detail = "rho is not the E(P)-orbit map";
            break;
          }
        }
      }
    }
  }

  // (B): eps injective with rho o eps = conjugation
  for (int d = 0; d < nobj && rep.b_injective; ++d)
    for (int c = 0; c < nobj && rep.b_injective; ++c) {
      std::set<int> seen;
      for (std::size_t i = 0; i < loc.s_elements.size(); ++i) {
        int f = t.eps(d, c, static_cast<Element>(i));
        if (f < 0) continue;
        // defined exactly when s conjugates d into c; injectivity:
        if (!seen.insert(f).second) {
          rep.b_injective = false;
          rep.detail = "eps not injective";
          break;
        }
        HomMap r = t.rho(f);
        for (Element x : mask_elements(r.dom)) {
          Element sx = loc.s_group.left_conj(x, static_cast<Element>(i));
          if (r.apply(x) != sx) {
            rep.b_injective = false;
            rep.detail = "rho o eps is not conjugation";
            break;
          }
        }
      }
    }

  // (C): naturality squares
  for (int f = 0; f < t.mor_count() && rep.c_naturality; ++f) {
    if (t.removed(f)) continue;
    const auto& m = t.mor(f);
    HomMap r = t.rho(f);
    for (Element x : mask_elements(t.objects()[static_cast<std::size_t>(m.dom)])) {
      int left = t.compose(f, t.eps(m.dom, m.dom, x));
      int right = t.compose(t.eps(m.cod, m.cod, r.apply(x)), f);
      if (left < 0 || left != right) {
        rep.c_naturality = false;
        rep.detail = "naturality square fails";
        break;
      }
    }
  }

  // (I): some fully object in each class has eps(N_S(P)) Sylow in Aut_T(P)
  {
    std::set<int> done;
    for (int d = 0; d < nobj && rep.i_sylow; ++d) {
      if (done.count(d)) continue;
      std::vector<int> cls;
      for (Mask q : fus.conjugates(t.objects()[static_cast<std::size_t>(d)])) {
        int qi = t.object_index(q);
        if (qi >= 0) {
          cls.push_back(qi);
          done.insert(qi);
        }
      }
      bool found = false;
      for (int qi : cls) {
        auto auts = t.mor_set(qi, qi);
        Mask ns = loc.s_group.normalizer(t.objects()[static_cast<std::size_t>(qi)], loc.s_group.all_mask());
        long eps_count = 0;
        for (int i : mask_elements(ns))
          if (t.eps(qi, qi, i) >= 0) ++eps_count;
        if (eps_count == SmallGroup::p_part(static_cast<int>(auts.size()), loc.p)) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.i_sylow = false;
        rep.detail = "axiom (I) fails";
      }
    }
  }

  // (II): extension axiom
  for (int f = 0; f < t.mor_count() && rep.ii_extension; ++f) {
    if (t.removed(f) || !t.is_iso(f)) continue;
    const auto& m = t.mor(f);
    Mask p = t.objects()[static_cast<std::size_t>(m.dom)];
    Mask q = t.objects()[static_cast<std::size_t>(m.cod)];
    int finv = t.invert_iso(f);
    if (finv < 0) {
      rep.ii_extension = false;
      rep.detail = "iso without inverse";
      break;
    }
    for (Mask pt : loc.s_group.subgroups()) {
      if ((p & ~pt) != 0 || !loc.s_group.is_normal_in(p, pt)) continue;
      if ((pt & ~loc.s_group.normalizer(p, loc.s_group.all_mask())) != 0) continue;
      for (Mask qt : loc.s_group.subgroups()) {
        if ((q & ~qt) != 0 || !loc.s_group.is_normal_in(q, qt)) continue;
        // condition: f eps_P(x) f^-1 in eps_Q(Qt) for all x in Pt
        bool cond = true;
        for (int x : mask_elements(pt)) {
          int ex = t.eps(m.dom, m.dom, x);
          if (ex < 0) {
            cond = false;
            break;
          }
          int conj = t.compose(t.compose(f, ex), finv);
          bool hit = false;
          for (int y : mask_elements(qt)) {
            if (t.eps(m.cod, m.cod, y) == conj) {
              hit = true;
              break;
            }
          }
          if (!hit) {
            cond = false;
            break;
          }
        }
        if (!cond) continue;
        int pt_obj = t.object_index(pt);
        int qt_obj = t.object_index(qt);
        if (pt_obj < 0 || qt_obj < 0) continue;  // objects are overgroup-closed, defensive
        bool extended = false;
        for (int cand : t.mor_set(pt_obj, qt_obj)) {
          if (t.compose(cand, t.inclusion(m.dom, pt_obj)) ==
              t.compose(t.inclusion(m.cod, qt_obj), f)) {
            extended = true;
            break;
          }
        }
        if (!extended) {
          rep.ii_extension = false;
          rep.detail = "axiom (II) extension missing";
          break;
        }
      }
      if (!rep.ii_extension) break;
    }
  }
  return rep;
}

// ---- maximal representatives -------------------------------------------------

namespace {

int iso_part(const TransporterSystem& t, int f) {
  Mask img = t.rho(f).image_mask();
  int obj = t.object_index(img);
  if (obj < 0) throw Error("morphism image is not an object");
  int r = t.tighten_codomain(f, obj);
  if (r < 0) throw Error("morphism has no isomorphism part");
  return r;
}

int max_ext_iso(const TransporterSystem& t, int f) {
  int best = f;
  int best_size = mask_size(t.rho(f).dom);
  for (int g = 0; g < t.mor_count(); ++g) {
    if (t.removed(g) || !t.is_iso(g)) continue;
    const auto& mg = t.mor(g);
    const auto& mf = t.mor(f);
    Mask dg = t.objects()[static_cast<std::size_t>(mg.dom)];
    Mask df = t.objects()[static_cast<std::size_t>(mf.dom)];
    Mask cg = t.objects()[static_cast<std::size_t>(mg.cod)];
    Mask cf = t.objects()[static_cast<std::size_t>(mf.cod)];
    if ((df & ~dg) != 0 || (cf & ~cg) != 0) continue;
    if (t.compose(g, t.inclusion(mf.dom, mg.dom)) != t.compose(t.inclusion(mf.cod, mg.cod), f)) continue;
    if (mask_size(dg) > best_size) {
      best = g;
      best_size = mask_size(dg);
    }
  }
  return best;
}

// restrict a maximal chain so that the codomain of its first morphism becomes
// `target` (a subobject of the current codomain); cascades to the right
IsoChain restrict_chain_to(const TransporterSystem& t, const IsoChain& chain, int target_obj) {
  IsoChain out;
  int want_cod = target_obj;
  for (int f : chain) {
    HomMap r = t.rho(f);
    Mask want = t.objects()[static_cast<std::size_t>(want_cod)];
    Mask pre = 0;
    for (Element x : mask_elements(r.dom))
      if (mask_has(want, r.apply(x))) pre |= mask_bit(static_cast<int>(x));
    int pre_obj = t.object_index(pre);
    if (pre_obj < 0) throw Error("restricted domain is not an object");
    int g = t.tighten_codomain(t.restrict_domain(f, pre_obj), want_cod);
    if (g < 0) throw Error("chain restriction failed");
    out.push_back(g);
    want_cod = pre_obj;
  }
  return out;
}

}  // namespace

IsoChain maximal_representative(const TransporterSystem& t, const IsoChain& chain) {
  if (chain.empty()) return chain;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (t.mor(chain[i]).dom != t.mor(chain[i + 1]).cod) throw Error("chain not composable");

  if (chain.size() == 1) return {max_ext_iso(t, chain[0])};

  IsoChain tail(chain.begin() + 1, chain.end());
  IsoChain max_tail = maximal_representative(t, tail);
  int max_head = max_ext_iso(t, chain[0]);

  Mask y1 = t.objects()[static_cast<std::size_t>(t.mor(max_head).dom)];
  Mask x1 = t.objects()[static_cast<std::size_t>(t.mor(max_tail[0]).cod)];
  Mask r1 = y1 & x1;
  int r1_obj = t.object_index(r1);
  if (r1_obj < 0) throw Error("intersection of maximal domains is not an object");

  int head = iso_part(t, t.restrict_domain(max_head, r1_obj));
  IsoChain rest = restrict_chain_to(t, max_tail, r1_obj);

  IsoChain out{head};
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// ---- the quotient ------------------------------------------------------------

namespace detail {

struct QuotientRep final : Rep {
  std::shared_ptr<const TransporterSystem> t;
  std::vector<int> class_of_mor;  // -1 for removed
  std::vector<int> rep_of_class;  // maximal iso representative
  std::vector<HomMap> rep_rho;
  Element unit_class;
  std::vector<Element> inv_class;
  int nclasses = 0;

  int size() const override { return nclasses; }
  Element unit() const override { return unit_class; }
  Element inv(Element x) const override { return inv_class[static_cast<std::size_t>(x)]; }
  RepKind kind() const override { return RepKind::Objective; }

  // left-chain propagation: the maximal subgroup M with a Delta chain over w
  std::optional<Mask> chain_mask(std::span<const Element> w) const {
    const auto& objs = t->objects();
    Mask m = t->locality().s_mask;
    for (Element c : w) {
      const HomMap& r = rep_rho[static_cast<std::size_t>(c)];
      Mask pre = 0;
      for (Element x : mask_elements(r.dom))
        if (mask_has(m, r.apply(x))) pre |= mask_bit(static_cast<int>(x));
      m = pre;
    }
    // accepted iff the final mask contains an object, i.e. is an object
    // (objects are closed under overgroups)
    if (std::binary_search(objs.begin(), objs.end(), m)) return m;
    return std::nullopt;
  }

  bool accepts(std::span<const Element> w) const override {
    if (w.size() <= 1) return true;
    return chain_mask(w).has_value();
  }

  Element pair_product(Element c1, Element c2) const override {
    const Element w[2] = {c1, c2};
    auto m2 = chain_mask(std::span<const Element>(w, 2));
    if (!m2) throw DomainViolation("class pair rejected");
    int m2_obj = t->object_index(*m2);
    const HomMap& r2 = rep_rho[static_cast<std::size_t>(c2)];
    Mask image = 0;
    for (Element x : mask_elements(*m2)) image |= mask_bit(r2.apply(x));
    int img_obj = t->object_index(image);
    if (m2_obj < 0 || img_obj < 0) throw Error("quotient product: masks are not objects");

    int rest2 = t->tighten_codomain(t->restrict_domain(rep_of_class[static_cast<std::size_t>(c2)], m2_obj), img_obj);
    int rest1 = t->restrict_domain(rep_of_class[static_cast<std::size_t>(c1)], img_obj);
    if (rest2 < 0 || rest1 < 0) throw Error("quotient product: restriction failed");
    int comp = t->compose(rest1, rest2);
    if (comp < 0) throw Error("quotient product: composite missing");
    return class_of_mor[static_cast<std::size_t>(comp)];
  }
};

}  // namespace detail

QuotientResult quotient_to_locality(const TransporterSystem& t_in) {
  auto t = std::make_shared<TransporterSystem>(t_in);
  const int n = t->mor_count();

  // union-find over morphisms, generated by inclusion squares
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

  const int nobj = static_cast<int>(t->objects().size());
  for (int f = 0; f < n; ++f) {
    if (t->removed(f)) continue;
    const auto& m = t->mor(f);
    for (int d0 = 0; d0 < nobj; ++d0) {
      if ((t->objects()[static_cast<std::size_t>(d0)] & ~t->objects()[static_cast<std::size_t>(m.dom)]) != 0)
        continue;
      int r = t->restrict_domain(f, d0);
      if (r < 0) continue;
      unite(f, r);
      for (int c0 = 0; c0 < nobj; ++c0) {
        if ((t->objects()[static_cast<std::size_t>(c0)] & ~t->objects()[static_cast<std::size_t>(m.cod)]) != 0)
          continue;
        int tr = t->tighten_codomain(r, c0);
        if (tr >= 0) unite(f, tr);
      }
    }
  }

  QuotientResult out;
  out.class_of_mor.assign(static_cast<std::size_t>(n), -1);
  std::map<int, int> root_to_class;
  for (int f = 0; f < n; ++f) {
    if (t->removed(f)) continue;
    int r = find(f);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) it = root_to_class.emplace(r, static_cast<int>(root_to_class.size())).first;
    out.class_of_mor[static_cast<std::size_t>(f)] = it->second;
  }
  const int nclasses = static_cast<int>(root_to_class.size());

  auto rep = std::make_shared<detail::QuotientRep>();
  rep->t = t;
  rep->class_of_mor = out.class_of_mor;
  rep->nclasses = nclasses;
  rep->rep_of_class.assign(static_cast<std::size_t>(nclasses), -1);
  for (int f = 0; f < n; ++f) {
    int c = out.class_of_mor[static_cast<std::size_t>(f)];
    if (c < 0 || rep->rep_of_class[static_cast<std::size_t>(c)] >= 0) continue;
    IsoChain one{iso_part(*t, f)};
    rep->rep_of_class[static_cast<std::size_t>(c)] = maximal_representative(*t, one)[0];
  }
  for (int c = 0; c < nclasses; ++c)
    rep->rep_rho.push_back(t->rho(rep->rep_of_class[static_cast<std::size_t>(c)]));

  // unit and inverses
  const Locality& loc = t->locality();
  int s_obj = t->object_index(loc.s_mask);
  if (s_obj < 0) throw Error("S is not an object");
  Element unit_s = -1;
  for (std::size_t i = 0; i < loc.s_elements.size(); ++i)
    if (loc.s_elements[i] == loc.pg.unit()) unit_s = static_cast<Element>(i);
  rep->unit_class = out.class_of_mor[static_cast<std::size_t>(t->eps(s_obj, s_obj, unit_s))];
  rep->inv_class.resize(static_cast<std::size_t>(nclasses));
  for (int c = 0; c < nclasses; ++c) {
    int inv = t->invert_iso(rep->rep_of_class[static_cast<std::size_t>(c)]);
    if (inv < 0) throw Error("maximal representative is not invertible");
    rep->inv_class[static_cast<std::size_t>(c)] = out.class_of_mor[static_cast<std::size_t>(inv)];
  }

  out.pg = PartialGroup(rep);

  // S inside the quotient and Delta over its indexing
  std::vector<Element> s_classes;
  for (std::size_t i = 0; i < loc.s_elements.size(); ++i) {
    int f = t->eps(s_obj, s_obj, static_cast<Element>(i));
    s_classes.push_back(out.class_of_mor[static_cast<std::size_t>(f)]);
  }
  out.s_class = s_classes;
  std::vector<Element> s_sorted(s_classes);
  std::sort(s_sorted.begin(), s_sorted.end());
  std::vector<int> pos_of_class(static_cast<std::size_t>(nclasses), -1);
  for (std::size_t i = 0; i < s_sorted.size(); ++i)
    pos_of_class[static_cast<std::size_t>(s_sorted[i])] = static_cast<int>(i);
  std::vector<Mask> delta;
  for (Mask m : t->objects()) {
    Mask q = 0;
    for (int i : mask_elements(m))
      q |= mask_bit(pos_of_class[static_cast<std::size_t>(s_classes[static_cast<std::size_t>(i)])]);
    delta.push_back(q);
  }
  out.loc = make_locality(out.pg, s_sorted, std::move(delta), loc.p);
  return out;
}

}  // namespace ploc
