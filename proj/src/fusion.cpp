#include "ploc/fusion.hpp"

#include <algorithm>

namespace ploc {

Mask HomMap::image_mask() const {
  Mask m = 0;
  for (Element y : img) m |= mask_bit(y);
  return m;
}

Element HomMap::apply(Element x) const {
  int pos = mask_size(dom & (mask_bit(x) - 1));
  if (!mask_has(dom, x)) throw Error("hom applied outside its domain");
  return img[static_cast<std::size_t>(pos)];
}

FusionSystem::FusionSystem(SmallGroup s, int p) : s_(std::move(s)), p_(p) {
  lattice_ = s_.subgroups();
  for (std::size_t i = 0; i < lattice_.size(); ++i) lattice_pos_[lattice_[i]] = static_cast<int>(i);
  homs_.resize(lattice_.size());
  homs_flat_.resize(lattice_.size());
}

int FusionSystem::lattice_index(Mask m) const {
  auto it = lattice_pos_.find(m);
  if (it == lattice_pos_.end()) throw NotASubgroup("mask is not a subgroup of S");
  return it->second;
}

void FusionSystem::add_hom(HomMap h) {
  // validate: injective homomorphism on the subgroup
  auto elems = mask_elements(h.dom);
  if (elems.size() != h.img.size()) throw Error("hom image list has wrong size");
  std::set<Element> img_set(h.img.begin(), h.img.end());
  if (img_set.size() != h.img.size()) throw Error("hom not injective");
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      Element xy = s_.mul(elems[i], elems[j]);
      if (h.apply(xy) != s_.mul(h.img[i], h.img[j])) throw Error("hom not multiplicative");
    }
  int li = lattice_index(h.dom);
  homs_[static_cast<std::size_t>(li)].insert(std::move(h));
}

void FusionSystem::rebuild_flat() const {
  homs_flat_.assign(homs_.size(), {});
  for (std::size_t i = 0; i < homs_.size(); ++i)
    homs_flat_[i].assign(homs_[i].begin(), homs_[i].end());
}

void FusionSystem::close() {
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t li = 0; li < lattice_.size(); ++li) {
      std::vector<HomMap> cur(homs_[li].begin(), homs_[li].end());
      for (const HomMap& h : cur) {
        // restrictions to proper subgroups
        for (Mask sub : s_.subgroups_of(h.dom)) {
          if (sub == h.dom) continue;
          HomMap r;
          r.dom = sub;
          for (Element x : mask_elements(sub)) r.img.push_back(h.apply(x));
          if (homs_[static_cast<std::size_t>(lattice_index(sub))].insert(r).second) grew = true;
        }
        // compositions with homs defined on the exact image
        Mask q = h.image_mask();
        auto qit = lattice_pos_.find(q);
        if (qit == lattice_pos_.end()) throw Error("hom image is not a subgroup");
        for (const HomMap& k : homs_[static_cast<std::size_t>(qit->second)]) {
          HomMap c;
          c.dom = h.dom;
          c.img.reserve(h.img.size());
          for (Element y : h.img) c.img.push_back(k.apply(y));
          if (homs_[li].insert(std::move(c)).second) grew = true;
        }
      }
    }
  }
  rebuild_flat();
}

const std::vector<HomMap>& FusionSystem::homs_from(Mask p) const {
  int li = lattice_index(p);
  if (homs_flat_.size() != homs_.size() ||
      homs_flat_[static_cast<std::size_t>(li)].size() != homs_[static_cast<std::size_t>(li)].size())
    rebuild_flat();
  return homs_flat_[static_cast<std::size_t>(li)];
}

std::vector<HomMap> FusionSystem::homs(Mask p, Mask q) const {
  std::vector<HomMap> out;
  for (const HomMap& h : homs_from(p))
    if ((h.image_mask() & ~q) == 0) out.push_back(h);
  return out;
}

std::vector<HomMap> FusionSystem::isos(Mask p, Mask q) const {
  std::vector<HomMap> out;
  for (const HomMap& h : homs_from(p))
    if (h.image_mask() == q) out.push_back(h);
  return out;
}

std::vector<HomMap> FusionSystem::auts(Mask p) const { return isos(p, p); }

std::vector<Mask> FusionSystem::conjugates(Mask p) const {
  std::set<Mask> out{p};
  for (const HomMap& h : homs_from(p)) out.insert(h.image_mask());
  return std::vector<Mask>(out.begin(), out.end());
}

std::vector<std::vector<Mask>> FusionSystem::conjugacy_classes() const {
  std::set<Mask> seen;
  std::vector<std::vector<Mask>> out;
  for (Mask p : lattice_) {
    if (seen.count(p)) continue;
    auto cls = conjugates(p);
    for (Mask q : cls) seen.insert(q);
    out.push_back(cls);
  }
  return out;
}

bool FusionSystem::fully_centralized(Mask p) const {
  Mask all = s_.all_mask();
  int mine = mask_size(s_.centralizer(p, all));
  for (Mask q : conjugates(p))
    if (mask_size(s_.centralizer(q, all)) > mine) return false;
  return true;
}

bool FusionSystem::fully_normalized(Mask p) const {
  Mask all = s_.all_mask();
  int mine = mask_size(s_.normalizer(p, all));
  for (Mask q : conjugates(p))
    if (mask_size(s_.normalizer(q, all)) > mine) return false;
  return true;
}

bool FusionSystem::is_centric(Mask p) const {
  for (Mask q : conjugates(p))
    if ((s_.centralizer(q, s_.all_mask()) & ~q) != 0) return false;
  return true;
}

SmallGroup FusionSystem::aut_group(Mask p, Mask* inn_image, std::vector<HomMap>* elements) const {
  auto a = auts(p);
  if (a.size() > 64) throw BudgetExceeded("Aut_F(P) too large for mask bookkeeping");
  auto index_of = [&](const HomMap& h) {
    auto it = std::lower_bound(a.begin(), a.end(), h);
    if (it == a.end() || !(*it == h)) throw Error("automorphism set not closed");
    return static_cast<int>(it - a.begin());
  };
  const int k = static_cast<int>(a.size());
  std::vector<Element> table(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      HomMap c;
      c.dom = p;
      for (Element x : mask_elements(p)) c.img.push_back(a[static_cast<std::size_t>(i)].apply(
          a[static_cast<std::size_t>(j)].apply(x)));
      table[static_cast<std::size_t>(i) * k + j] = index_of(c);
    }
  if (inn_image) {
    *inn_image = 0;
    for (Element x : mask_elements(p)) {
      HomMap c;
      c.dom = p;
      for (Element y : mask_elements(p)) c.img.push_back(s_.conj(y, x));
      *inn_image |= mask_bit(index_of(c));
    }
  }
  if (elements) *elements = a;
  return SmallGroup::from_table(std::move(table));
}

SmallGroup FusionSystem::out_group(Mask p, Mask* out_s_image) const {
  Mask inn = 0;
  std::vector<HomMap> elems;
  SmallGroup autg = aut_group(p, &inn, &elems);
  std::vector<int> coset;
  SmallGroup out = autg.quotient(inn, &coset);
  if (out_s_image) {
    *out_s_image = 0;
    auto index_of = [&](const HomMap& h) {
      auto it = std::lower_bound(elems.begin(), elems.end(), h);
      if (it == elems.end() || !(*it == h)) throw Error("Aut_S(P) not inside Aut_F(P)");
      return static_cast<int>(it - elems.begin());
    };
    for (Element g : mask_elements(s_.normalizer(p, s_.all_mask()))) {
      HomMap c;
      c.dom = p;
      for (Element y : mask_elements(p)) c.img.push_back(s_.conj(y, g));
      *out_s_image |= mask_bit(coset[static_cast<std::size_t>(index_of(c))]);
    }
  }
  return out;
}

bool FusionSystem::is_radical(Mask p) const {
  SmallGroup out = out_group(p);
  return mask_size(out.op_core(p_)) == 1;
}

bool FusionSystem::weakly_closed(Mask p) const {
  for (const HomMap& h : homs_from(p))
    if (h.image_mask() != p) return false;
  return true;
}

bool FusionSystem::strongly_closed(Mask a) const {
  for (Mask p : lattice_)
    for (const HomMap& h : homs_from(p)) {
      Mask pa = p & a;
      for (Element x : mask_elements(pa))
        if (!mask_has(a, h.apply(x))) return false;
    }
  return true;
}

bool FusionSystem::is_normal(Mask a) const {
  if (!s_.is_normal_in(a, s_.all_mask())) return false;
  for (Mask p : lattice_)
    for (const HomMap& f : homs_from(p)) {
      Mask pa = s_.closure(p | a);
      bool found = false;
      for (const HomMap& g : homs_from(pa)) {
        bool restricts = true;
        for (Element x : mask_elements(p))
          if (g.apply(x) != f.apply(x)) {
            restricts = false;
            break;
          }
        if (!restricts) continue;
        // g restricted to A must be an F-automorphism of A
        Mask img_a = 0;
        for (Element x : mask_elements(a)) img_a |= mask_bit(g.apply(x));
        if (img_a == a) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

bool FusionSystem::is_central(Mask a) const {
  if (!is_normal(a)) return false;
  return auts(a).size() == 1;
}

Mask FusionSystem::center() const {
  Mask zs = s_.center_mask();
  Mask best = mask_bit(s_.unit());
  for (Mask a : s_.subgroups_of(zs))
    if (is_central(a) && mask_size(a) > mask_size(best)) best = a;
  return best;
}

bool FusionSystem::same_homs(const FusionSystem& other) const {
  if (lattice_ != other.lattice_) return false;
  return homs_ == other.homs_;
}

bool FusionSystem::subsystem_of(const FusionSystem& other) const {
  for (std::size_t i = 0; i < homs_.size(); ++i)
    for (const HomMap& h : homs_[i]) {
      int oi = other.lattice_index(lattice_[i]);
      if (!other.homs_[static_cast<std::size_t>(oi)].count(h)) return false;
    }
  return true;
}

FusionSystem group_fusion(const SmallGroup& g, Mask s, int p) {
  std::vector<Element> s_elems;
  SmallGroup s_group = g.subgroup_group(s, &s_elems);
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < s_elems.size(); ++i)
    local[static_cast<std::size_t>(s_elems[i])] = static_cast<int>(i);

  FusionSystem f(s_group, p);
  for (Mask p_loc : f.lattice()) {
    auto elems = mask_elements(p_loc);
    for (Element x = 0; x < g.size(); ++x) {
      HomMap h;
      h.dom = p_loc;
      bool ok = true;
      for (int e : elems) {
        Element img = g.conj(s_elems[static_cast<std::size_t>(e)], x);
        int li = img < g.size() ? local[static_cast<std::size_t>(img)] : -1;
        if (li < 0) {
          ok = false;
          break;
        }
        h.img.push_back(li);
      }
      if (ok) f.add_hom(std::move(h));
    }
  }
  f.close();
  return f;
}

ClassifierReport subgroup_classifiers(const FusionSystem& f, int budget) {
  if (f.S().size() > budget) throw BudgetExceeded("p-group larger than the classifier budget");
  ClassifierReport rep;
  for (Mask p : f.lattice()) {
    SubgroupInfo i;
    i.subgroup = p;
    i.fully_centralized = f.fully_centralized(p);
    i.fully_normalized = f.fully_normalized(p);
    i.centric = f.is_centric(p);
    i.radical = f.is_radical(p);
    i.weakly_closed = f.weakly_closed(p);
    i.strongly_closed = f.strongly_closed(p);
    i.normal = f.is_normal(p);
    i.central = f.is_central(p);
    rep.info.push_back(i);
  }
  rep.center = f.center();
  return rep;
}

SaturationReport check_saturation(const FusionSystem& f, int budget) {
  if (f.S().size() > budget) throw BudgetExceeded("p-group larger than the saturation budget");
  SaturationReport rep;
  const SmallGroup& s = f.S();

  for (Mask p : f.lattice()) {
    if (!f.fully_normalized(p)) continue;
    Mask out_s = 0;
    SmallGroup out = f.out_group(p, &out_s);
    bool sylow = mask_size(out_s) == SmallGroup::p_part(out.size(), f.prime());
    if (!f.fully_centralized(p) || !sylow) {
      rep.axiom_I = false;
      rep.witness_I = p;
      break;
    }
  }

  for (Mask p : f.lattice()) {
    for (const HomMap& h : f.homs_from(p)) {
      Mask q = h.image_mask();
      if (!f.fully_centralized(q)) continue;
      // N_h = {g in N_S(P) : h c_g h^-1 in Aut_S(Q)}
      Mask nh = 0;
      Mask ns = s.normalizer(p, s.all_mask());
      Mask nq = s.normalizer(q, s.all_mask());
      for (Element g : mask_elements(ns)) {
        bool in_auts = false;
        for (Element t : mask_elements(nq)) {
          bool match = true;
          for (Element x : mask_elements(p))
            if (h.apply(s.conj(x, g)) != s.conj(h.apply(x), t)) {
              match = false;
              break;
            }
          if (match) {
            in_auts = true;
            break;
          }
        }
        if (in_auts) nh |= mask_bit(g);
      }
      if (!s.is_subgroup_mask(nh)) nh = s.closure(nh);  // defensive; N_h is a group
      bool extended = false;
      for (const HomMap& e : f.homs_from(nh)) {
        bool restricts = true;
        for (Element x : mask_elements(p))
          if (e.apply(x) != h.apply(x)) {
            restricts = false;
            break;
          }
        if (restricts) {
          extended = true;
          break;
        }
      }
      if (!extended) {
        rep.axiom_II = false;
        rep.witness_II = p;
        return rep;
      }
    }
  }
  return rep;
}

NormalSubsystemReport check_normal_subsystem(const FusionSystem& e, const std::vector<Element>& r_elements,
                                             const FusionSystem& f, int budget) {
  NormalSubsystemReport rep;
  const SmallGroup& s = f.S();
  Mask r = 0;
  for (Element x : r_elements) r |= mask_bit(x);
  if (!s.is_subgroup_mask(r)) throw NotASubgroup("R is not a subgroup of S");

  // map an E-hom (local indices) into F's world
  auto lift = [&](const HomMap& h) {
    HomMap out;
    for (Element x : mask_elements(h.dom)) out.dom |= mask_bit(r_elements[static_cast<std::size_t>(x)]);
    auto dom_elems = mask_elements(out.dom);
    out.img.resize(dom_elems.size());
    auto local_of = [&](Element global) {
      for (std::size_t i = 0; i < r_elements.size(); ++i)
        if (r_elements[i] == global) return static_cast<Element>(i);
      throw Error("element not in R");
    };
    for (std::size_t i = 0; i < dom_elems.size(); ++i)
      out.img[i] = r_elements[static_cast<std::size_t>(h.apply(local_of(dom_elems[i])))];
    return out;
  };

  // E-homs between two F-masks inside R
  auto e_homs = [&](Mask p, Mask q) {
    std::vector<HomMap> out;
    Mask p_loc = 0;
    for (std::size_t i = 0; i < r_elements.size(); ++i)
      if (mask_has(p, static_cast<int>(r_elements[i]))) p_loc |= mask_bit(static_cast<int>(i));
    for (const HomMap& h : e.homs_from(p_loc)) {
      HomMap l = lift(h);
      if ((l.image_mask() & ~q) == 0) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  rep.contained = true;
  for (Mask p_loc : e.lattice())
    for (const HomMap& h : e.homs_from(p_loc)) {
      HomMap l = lift(h);
      const auto& fh = f.homs_from(l.dom);
      if (!std::binary_search(fh.begin(), fh.end(), l)) rep.contained = false;
    }

  rep.n1 = check_saturation(e, budget).saturated();
  rep.n2 = f.strongly_closed(r);

  // N3
  rep.n3 = true;
  for (Mask q : f.lattice()) {
    if ((q & ~r) != 0) continue;
    for (Mask p : s.subgroups_of(q)) {
      for (const HomMap& gamma : f.homs_from(q)) {
        Mask gp = 0, gq = gamma.image_mask();
        for (Element x : mask_elements(p)) gp |= mask_bit(gamma.apply(x));
        if ((gq & ~r) != 0) continue;  // handled by N2 failure if it happens
        auto lhs = e_homs(p, q);
        for (auto& h : lhs) {
          // conjugate: gamma o h o gamma^-1 : gp -> gq
          HomMap c;
          c.dom = gp;
          for (Element y : mask_elements(gp)) {
            // gamma^-1(y)
            Element x = -1;
            for (Element cand : mask_elements(q))
              if (gamma.apply(cand) == y) {
                x = cand;
                break;
              }
            c.img.push_back(gamma.apply(h.apply(x)));
          }
          h = c;
        }
        std::sort(lhs.begin(), lhs.end());
        auto rhs = e_homs(gp, gq);
        if (lhs != rhs) {
          rep.n3 = false;
          break;
        }
      }
      if (!rep.n3) break;
    }
    if (!rep.n3) break;
  }

  // N4
  rep.n4 = true;
  Mask csr = s.centralizer(r, s.all_mask());
  Mask rc = s.closure(r | csr);
  Mask zr = s.centralizer(r, r);
  for (const HomMap& faut : e_homs(r, r)) {
    if (faut.image_mask() != r) continue;
    bool found = false;
    for (const HomMap& ext : f.homs_from(rc)) {
      if (ext.image_mask() != rc) continue;
      bool restricts = true;
      for (Element x : mask_elements(r))
        if (ext.apply(x) != faut.apply(x)) {
          restricts = false;
          break;
        }
      if (!restricts) continue;
      bool commutator_central = true;
      for (Element x : mask_elements(csr)) {
        Element c = s.mul(ext.apply(x), s.inv(x));
        if (!mask_has(zr, c)) {
          commutator_central = false;
          break;
        }
      }
      if (commutator_central) {
        found = true;
        break;
      }
    }
    if (!found) {
      rep.n4 = false;
      break;
    }
  }
  return rep;
}

}  // namespace ploc
