#include "ploc/locality.hpp"

#include <algorithm>
#include <set>

#include "ploc/axioms.hpp"

namespace ploc {

namespace detail {

struct ObjectiveRep final : Rep {
  PartialGroup ambient;
  std::vector<Element> members;      // ambient indices, ascending
  std::vector<int> member_index;     // ambient -> local
  std::vector<Element> s_ambient;    // ambient indices of S, ascending
  std::vector<int> s_index;          // ambient -> S position
  std::vector<Mask> delta;           // sorted
  Element unit_local;
  std::vector<Element> inv_local;
  std::vector<std::vector<int>> s_conj;  // per local member: S position -> S position or -1

  ObjectiveRep(PartialGroup amb, std::vector<Element> mem, std::vector<Element> s_amb,
               std::vector<Mask> d)
      : ambient(std::move(amb)), members(std::move(mem)), s_ambient(std::move(s_amb)), delta(std::move(d)) {
    member_index.assign(static_cast<std::size_t>(ambient.size()), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
      member_index[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    s_index.assign(static_cast<std::size_t>(ambient.size()), -1);
    for (std::size_t i = 0; i < s_ambient.size(); ++i)
      s_index[static_cast<std::size_t>(s_ambient[i])] = static_cast<int>(i);
    unit_local = member_index[static_cast<std::size_t>(ambient.unit())];
    if (unit_local < 0) throw Error("carrier misses the unit");
    inv_local.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      int li = member_index[static_cast<std::size_t>(ambient.inv(members[i]))];
      if (li < 0) throw Error("carrier not closed under inversion");
      inv_local[i] = li;
    }
    s_conj.reserve(members.size());
    for (std::size_t u = 0; u < members.size(); ++u) {
      std::vector<int> row(s_ambient.size(), -1);
      for (std::size_t i = 0; i < s_ambient.size(); ++i) {
        if (!ambient.conj_defined(members[u], s_ambient[i])) continue;
        Element img = ambient.conjugate(members[u], s_ambient[i]);
        row[i] = s_index[static_cast<std::size_t>(img)];
      }
      s_conj.push_back(std::move(row));
    }
  }

  bool delta_contains(Mask m) const { return std::binary_search(delta.begin(), delta.end(), m); }

  Mask r_mask(std::span<const Element> w) const {
    Mask out = 0;
    for (std::size_t i = 0; i < s_ambient.size(); ++i) {
      int cur = static_cast<int>(i);
      for (Element u : w) {
        cur = s_conj[static_cast<std::size_t>(u)][static_cast<std::size_t>(cur)];
        if (cur < 0) break;
      }
      if (cur >= 0) out |= mask_bit(static_cast<int>(i));
    }
    return out;
  }

  Mask l_mask(std::span<const Element> w) const {
    Mask out = 0;
    for (std::size_t i = 0; i < s_ambient.size(); ++i) {
      int cur = static_cast<int>(i);
      for (Element u : w) {
        cur = s_conj[static_cast<std::size_t>(u)][static_cast<std::size_t>(cur)];
        if (cur < 0) break;
      }
      if (cur >= 0) out |= mask_bit(cur);
    }
    return out;
  }

  int size() const override { return static_cast<int>(members.size()); }
  Element unit() const override { return unit_local; }
  Element inv(Element x) const override { return inv_local[static_cast<std::size_t>(x)]; }
  RepKind kind() const override { return RepKind::Objective; }

  bool accepts(std::span<const Element> w) const override {
    if (w.size() <= 1) return true;  // carrier elements conjugate some member of Delta
    return delta_contains(r_mask(w));
  }

  Element pair_product(Element a, Element b) const override {
    Element pa = members[static_cast<std::size_t>(a)];
    Element pb = members[static_cast<std::size_t>(b)];
    Element c = ambient.prod2(pa, pb);
    int lc = member_index[static_cast<std::size_t>(c)];
    if (lc < 0) throw DomainViolation("product leaves the Delta carrier");
    return lc;
  }
};

}  // namespace detail

namespace {

const detail::ObjectiveRep& objective_rep(const PartialGroup& pg) {
  auto* r = dynamic_cast<const detail::ObjectiveRep*>(&pg.rep());
  if (!r) throw Error("not an objective partial group");
  return *r;
}

}  // namespace

int Locality::s_local(Element pg_element) const {
  const auto& r = objective_rep(pg);
  return r.s_index[static_cast<std::size_t>(r.members[static_cast<std::size_t>(pg_element)])];
}

bool Locality::delta_contains(Mask m) const { return std::binary_search(delta.begin(), delta.end(), m); }

Element locality_ambient_of(const Locality& loc, Element local) {
  return objective_rep(loc.pg).members[static_cast<std::size_t>(local)];
}

int locality_local_of(const Locality& loc, Element ambient) {
  return objective_rep(loc.pg).member_index[static_cast<std::size_t>(ambient)];
}

const PartialGroup& locality_ambient(const Locality& loc) { return objective_rep(loc.pg).ambient; }

Locality make_locality(const PartialGroup& ambient, const std::vector<Element>& s_ambient,
                       std::vector<Mask> delta, int p) {
  std::vector<Element> s(s_ambient);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() > 64) throw BudgetExceeded("S larger than 64 elements");

  SmallGroup s_group = subgroup_as_group(ambient, s);
  if (!s_group.is_p_group(p)) throw Error("S is not a p-group");

  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  if (delta.empty()) throw EmptyDelta("Delta is empty");
  Mask full = s.size() == 64 ? ~Mask{0} : (mask_bit(static_cast<int>(s.size())) - 1);
  if (!std::binary_search(delta.begin(), delta.end(), full)) throw DeltaNotClosed("S itself must be in Delta");
  for (Mask m : delta)
    if (!s_group.is_subgroup_mask(m)) throw DeltaNotClosed("Delta member is not a subgroup of S");
  // overgroup closure inside S
  for (Mask m : delta)
    for (Mask o : s_group.subgroups())
      if ((m & ~o) == 0 && !std::binary_search(delta.begin(), delta.end(), o))
        throw DeltaNotClosed("Delta not closed under overgroups");

  // carrier: ambient elements whose R_(u) is in Delta
  std::vector<Element> members;
  for (Element u = 0; u < ambient.size(); ++u) {
    Mask r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!ambient.conj_defined(u, s[i])) continue;
      Element img = ambient.conjugate(u, s[i]);
      auto it = std::lower_bound(s.begin(), s.end(), img);
      if (it != s.end() && *it == img) r |= mask_bit(static_cast<int>(i));
    }
    if (std::binary_search(delta.begin(), delta.end(), r)) members.push_back(u);
  }

  Locality loc;
  loc.pg = PartialGroup(std::make_shared<detail::ObjectiveRep>(ambient, members, s, delta));
  loc.p = p;
  loc.s_group = std::move(s_group);
  loc.delta = std::move(delta);
  loc.s_mask = full;
  const auto& rep = objective_rep(loc.pg);
  for (Element a : s) {
    int li = rep.member_index[static_cast<std::size_t>(a)];
    if (li < 0) throw Error("S not contained in the Delta carrier");
    loc.s_elements.push_back(li);
  }

  // (O2)-closure of Delta under carrier conjugation into S
  for (Mask m : loc.delta)
    for (Element u = 0; u < loc.pg.size(); ++u) {
      Mask img = 0;
      bool alive = true;
      for (int i : mask_elements(m)) {
        int j = rep.s_conj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
        if (j < 0) {
          alive = false;
          break;
        }
        img |= mask_bit(j);
      }
      if (alive && !loc.delta_contains(img))
        throw DeltaNotClosed("Delta not closed under carrier conjugation");
    }
  return loc;
}

Locality locality_from_group(const SmallGroup& g, int p, DeltaPolicy policy, const std::vector<Mask>& custom) {
  Mask s_mask = g.first_sylow(p);
  FusionSystem f = group_fusion(g, s_mask, p);
  std::vector<Mask> delta;
  switch (policy) {
    case DeltaPolicy::AllSubgroups:
      delta = f.lattice();
      break;
    case DeltaPolicy::Centric:
      for (Mask m : f.lattice())
        if (f.is_centric(m)) delta.push_back(m);
      break;
    case DeltaPolicy::CentricRadical: {
      std::set<Mask> seed;
      for (Mask m : f.lattice())
        if (f.is_centric(m) && f.is_radical(m)) seed.insert(m);
      // close upward (conjugates of centric radicals are centric radicals)
      std::set<Mask> closed;
      for (Mask m : f.lattice())
        for (Mask q : seed)
          if ((q & ~m) == 0) closed.insert(m);
      delta.assign(closed.begin(), closed.end());
      break;
    }
    case DeltaPolicy::Custom:
      delta = custom;
      break;
  }
  if (delta.empty()) throw EmptyDelta("policy produced no subgroups");

  std::vector<Element> s_elems = mask_elements(s_mask);
  std::vector<Element> s_amb(s_elems.begin(), s_elems.end());
  return make_locality(make_group_like(g), s_amb, std::move(delta), p);
}

RwLw compute_Rw_Lw(const Locality& loc, std::span<const Element> w, bool verify_splits) {
  const auto& rep = objective_rep(loc.pg);
  RwLw out;
  out.r = rep.r_mask(w);
  out.l = rep.l_mask(w);
  if (verify_splits) {
    // L_w = R_{w^-1}
    Word winv = loc.pg.inverse_word(w);
    if (out.l != rep.r_mask(winv)) out.split_identity = false;
    // R_{uv} = R_u ∩ (L_u ∩ R_v)^{u^-1}
    for (std::size_t cut = 1; cut < w.size() && out.split_identity; ++cut) {
      std::span<const Element> u = w.subspan(0, cut), v = w.subspan(cut);
      Mask lu = rep.l_mask(u), rv = rep.r_mask(v);
      Mask meet = lu & rv;
      // conjugate meet backwards through u
      Word uinv = loc.pg.inverse_word(u);
      Mask back = 0;
      for (int i : mask_elements(meet)) {
        int cur = i;
        for (Element x : uinv) {
          cur = rep.s_conj[static_cast<std::size_t>(x)][static_cast<std::size_t>(cur)];
          if (cur < 0) break;
        }
        if (cur >= 0) back |= mask_bit(cur);
      }
      if ((rep.r_mask(u) & back) != out.r) out.split_identity = false;
    }
  }
  return out;
}

FusionSystem fusion_system(const Locality& loc) {
  const auto& rep = objective_rep(loc.pg);
  FusionSystem f(loc.s_group, loc.p);
  for (Element u = 0; u < loc.pg.size(); ++u) {
    HomMap h;
    for (std::size_t i = 0; i < loc.s_elements.size(); ++i)
      if (rep.s_conj[static_cast<std::size_t>(u)][i] >= 0) h.dom |= mask_bit(static_cast<int>(i));
    // the maximal domain R_(u) must be a subgroup for c_u to be a generator
    for (int i : mask_elements(h.dom)) h.img.push_back(rep.s_conj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)]);
    // restrict to the part that lands inside S
    f.add_hom(std::move(h));
  }
  f.close();
  return f;
}

std::vector<Element> normalizer_of_S(const Locality& loc) {
  return normalizer_elements(loc.pg, loc.s_elements);
}

LocalityReport verify_locality(const Locality& loc, int bound, kernels::Mode mode) {
  const auto& rep = objective_rep(loc.pg);
  LocalityReport out;

  // S maximal among the p-subgroups of the carrier
  for (const auto& h : enumerate_subgroups(loc.pg)) {
    SmallGroup hg = subgroup_as_group(loc.pg, h);
    if (!hg.is_p_group(loc.p) || hg.size() == 1) continue;
    if (static_cast<int>(h.size()) > static_cast<int>(loc.s_elements.size())) out.s_maximal = false;
  }

  // acceptance == R_w and L_w in Delta; accepted words live in the ambient domain
  for (int k = 2; k <= bound && out.o1 && out.words_in_ambient; ++k) {
    const auto& level = loc.pg.words(k);
    long bad = kernels::first_index(
        static_cast<long>(level.size()),
        [&](long i) {
          const Word& w = level[static_cast<std::size_t>(i)];
          Mask r = rep.r_mask(w), l = rep.l_mask(w);
          if (!rep.delta_contains(r) || !rep.delta_contains(l)) return true;
          Word amb(w.size());
          for (std::size_t j = 0; j < w.size(); ++j) amb[j] = rep.members[static_cast<std::size_t>(w[j])];
          return !rep.ambient.accepts(amb);
        },
        mode);
    if (bad >= 0) {
      out.o1 = false;
      out.words_in_ambient = false;
      out.witness = level[static_cast<std::size_t>(bad)];
    }
    // conversely: rejected extensions of accepted words must have R outside Delta
    // (acceptance is literally defined that way, nothing extra to check)
  }

  out.axioms = check_axioms(loc.pg, bound, mode).all_pass();
  return out;
}

std::optional<Word> biset_violation(const Locality& loc, int bound) {
  auto ns = normalizer_of_S(loc);
  for (int k = 1; k <= bound; ++k)
    for (const Word& w : loc.pg.words(k))
      for (Element s1 : ns) {
        Word app(w);
        app.push_back(s1);
        if (!loc.pg.accepts(app)) return app;
        Word pre;
        pre.push_back(s1);
        pre.insert(pre.end(), w.begin(), w.end());
        if (!loc.pg.accepts(pre)) return pre;
      }
  return std::nullopt;
}

}  // namespace ploc
