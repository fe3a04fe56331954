#include "ploc/locext.hpp"

#include <algorithm>
#include <set>

namespace ploc {

namespace {

// S'-member set of the fibre as pg-local elements
const std::vector<Element>& fibre_S(const Locality& fibre) { return fibre.s_elements; }

}  // namespace

IsotypicalExtension make_isotypical_extension(Locality fibre, Locality base, std::vector<int> t,
                                              const std::vector<std::array<Element, 3>>& eta, int budget) {
  IsotypicalExtension ext;
  ext.fibre_raut = restricted_aut(fibre.pg, fibre.s_elements, budget);
  const AutGroup& A = ext.fibre_raut.aut;

  // t indices live in Aut(L';S')
  for (int idx : t)
    if (idx < 0 || idx >= A.order()) throw Error("t index outside Aut(L';S')");

  // Delta' invariant under Aut(L';S')
  for (const auto& psi : A.autos) {
    for (Mask m : fibre.delta) {
      Mask img = 0;
      for (int i : mask_elements(m)) {
        Element x = fibre.s_elements[static_cast<std::size_t>(i)];
        int j = fibre.s_local(psi[static_cast<std::size_t>(x)]);
        if (j < 0) throw Error("Aut(L';S') does not preserve S'");
        img |= mask_bit(j);
      }
      if (!fibre.delta_contains(img))
        throw Error("Delta' not invariant under Aut(L';S'): extension is not isotypical");
    }
  }

  Normalizer fibre_norm = compute_normalizer(fibre.pg);
  TwistingPair pair = make_twisting_pair(fibre.pg, base.pg, A, fibre_norm, std::move(t), eta);

  // eta valued in N_{L'}(S')
  auto ns = normalizer_of_S(fibre);
  for (Element g = 0; g < base.pg.size(); ++g)
    for (Element h = 0; h < base.pg.size(); ++h)
      if (base.pg.defined2(g, h) &&
          !std::binary_search(ns.begin(), ns.end(), pair.eta_at(g, h)))
        throw Error("eta value outside N_{L'}(S')");

  auto cert = validate_twisting_pair(pair);
  if (!cert.valid) throw InvalidTwistingPair("twisting pair invalid: " + cert.detail);

  ext.total = build_extension(pair);
  ext.pair = std::move(pair);
  ext.fibre = std::move(fibre);
  ext.base = std::move(base);
  return ext;
}

Element iota_element(const IsotypicalExtension& ext, Element fibre_elt) {
  return pair_encode(ext.total, fibre_elt, ext.base.pg.unit());
}

Element sigma0_element(const IsotypicalExtension& ext, Element base_elt) {
  return pair_encode(ext.total, ext.fibre.pg.unit(), base_elt);
}

InducedLocality build_sylow_and_delta(const IsotypicalExtension& ext) {
  InducedLocality ind;
  ind.ext = ext;
  const PartialGroup& total = ext.total;
  const PartialGroup& B = ext.base.pg;

  auto n_fibre = normalizer_of_S(ext.fibre);
  auto n_base = normalizer_of_S(ext.base);
  for (Element x : n_fibre)
    for (Element g : n_base) ind.n_elements.push_back(pair_encode(total, x, g));
  std::sort(ind.n_elements.begin(), ind.n_elements.end());
  try {
    ind.n_group = subgroup_as_group(total, ind.n_elements);
  } catch (const NotASubgroup&) {
    throw NotAGroup("N = pairs over the S-normalizers is not a group (broken twisting data)");
  }

  // Nhat: pairs with base part in S''
  Mask nhat = 0;
  for (std::size_t i = 0; i < ind.n_elements.size(); ++i) {
    auto [x, g] = pair_decode(total, ind.n_elements[i]);
    if (ext.base.s_local(g) >= 0) nhat |= mask_bit(static_cast<int>(i));
  }
  // seed: iota(S')
  Mask seed = 0;
  for (Element i : fibre_S(ext.fibre)) {
    Element e = iota_element(ext, i);
    auto it = std::lower_bound(ind.n_elements.begin(), ind.n_elements.end(), e);
    if (it == ind.n_elements.end() || *it != e) throw Error("iota(S') not inside N");
    seed |= mask_bit(static_cast<int>(it - ind.n_elements.begin()));
  }
  Mask s_in_n = ind.n_group.sylow_above(seed, nhat, ext.fibre.p);
  for (int i : mask_elements(s_in_n)) ind.s_total.push_back(ind.n_elements[static_cast<std::size_t>(i)]);
  std::sort(ind.s_total.begin(), ind.s_total.end());

  // tau(S) must be S''
  {
    std::set<Element> tau_img;
    for (Element e : ind.s_total) tau_img.insert(pair_decode(total, e).second);
    std::set<Element> s2;
    for (Element i : ext.base.s_elements) s2.insert(i);
    if (tau_img != s2) throw NoCompatibleSylow("Sylow choice does not project onto S''");
  }

  // Delta over the S indexing
  std::vector<Element> s_elems;
  SmallGroup s_group = subgroup_as_group(total, ind.s_total, &s_elems);
  std::vector<Mask> delta;
  for (Mask p : s_group.subgroups()) {
    // P' = P ∩ iota(L') as a Delta' mask
    Mask p_fibre = 0;
    bool fibre_ok = true;
    Mask p_base = 0;
    for (int i : mask_elements(p)) {
      auto [x, g] = pair_decode(total, s_elems[static_cast<std::size_t>(i)]);
      if (g == B.unit()) {
        int j = ext.fibre.s_local(x);
        if (j < 0) {
          fibre_ok = false;
          break;
        }
        p_fibre |= mask_bit(j);
      }
      int bj = ext.base.s_local(g);
      if (bj < 0) {
        fibre_ok = false;
        break;
      }
      p_base |= mask_bit(bj);
    }
    if (!fibre_ok) continue;
    if (ext.fibre.delta_contains(p_fibre) && ext.base.delta_contains(p_base)) delta.push_back(p);
  }
  if (delta.empty()) throw EmptyDelta("no subgroup of S satisfies the Delta conditions");

  ind.T = make_locality(total, ind.s_total, std::move(delta), ext.fibre.p);
  return ind;
}

TvsLReport compare_T_vs_L(const InducedLocality& ind, int bound) {
  TvsLReport rep;
  const PartialGroup& total = ind.ext.total;
  const PartialGroup& tpg = ind.T.pg;

  rep.carriers_equal = tpg.size() == total.size();
  if (!rep.carriers_equal) {
    for (Element e = 0; e < total.size(); ++e)
      if (locality_local_of(ind.T, e) < 0) {
        rep.missing_element = e;
        break;
      }
    return rep;
  }
  // with equal carriers the local indexing is the identity
  rep.oracles_agree = true;
  for (int k = 2; k <= bound && rep.oracles_agree; ++k) {
    const auto& level = total.words(k);
    for (const Word& w : level)
      if (!tpg.accepts(w)) {
        rep.oracles_agree = false;
        rep.witness = w;
        break;
      }
    // T-accepted words are total-accepted by construction checks elsewhere
  }
  return rep;
}

TvsLReport verify_examples_T_equals_L(const InducedLocality& ind, int bound) {
  bool fibre_is_p_group = ind.ext.fibre.pg.size() == static_cast<int>(ind.ext.fibre.s_elements.size());
  bool base_all_subgroups =
      ind.ext.base.delta.size() == ind.ext.base.s_group.subgroups().size() &&
      ind.ext.base.pg.kind() == RepKind::Objective;
  // the base must also be a group: every word accepted
  if (base_all_subgroups) {
    Mask trivial = mask_bit(ind.ext.base.s_group.unit());
    base_all_subgroups = ind.ext.base.delta_contains(trivial);
  }
  if (!fibre_is_p_group && !base_all_subgroups)
    throw PreconditionNotMet("neither a p-group fibre nor an all-subgroups group base");
  return compare_T_vs_L(ind, bound);
}

Locality pullback_sub_locality(const InducedLocality& ind, const std::vector<Element>& h_base) {
  const IsotypicalExtension& ext = ind.ext;
  const PartialGroup& total = ext.total;

  SmallGroup h_group = subgroup_as_group(ext.base.pg, h_base);
  int p = ext.fibre.p;
  int sylow_order = SmallGroup::p_part(h_group.size(), p);
  long meet = 0;
  for (Element g : h_base)
    if (ext.base.s_local(g) >= 0) ++meet;
  if (meet != sylow_order) throw SylowConditionFails("H'' ∩ S'' is not a Sylow p-subgroup of H''");

  // carrier: all pairs over H''
  std::set<Element> hset(h_base.begin(), h_base.end());
  std::vector<Element> members;
  for (Element e = 0; e < total.size(); ++e)
    if (hset.count(pair_decode(total, e).second)) members.push_back(e);
  PartialGroup restricted = restrict_to(total, members);

  // S(H'') = L(H'') ∩ S, as restricted-local elements
  std::vector<Element> s_sub;
  for (Element e : ind.s_total)
    if (hset.count(pair_decode(total, e).second)) {
      auto it = std::lower_bound(members.begin(), members.end(), e);
      s_sub.push_back(static_cast<Element>(it - members.begin()));
    }

  // Delta(H'') = {P <= S(H'') : P ∩ S' in Delta'}
  SmallGroup s_sub_group = subgroup_as_group(restricted, s_sub);
  std::vector<Mask> delta;
  for (Mask p_mask : s_sub_group.subgroups()) {
    Mask p_fibre = 0;
    bool ok = true;
    for (int i : mask_elements(p_mask)) {
      Element e = members[static_cast<std::size_t>(s_sub[static_cast<std::size_t>(i)])];
      auto [x, g] = pair_decode(total, e);
      if (g != ext.base.pg.unit()) continue;
      int j = ext.fibre.s_local(x);
      if (j < 0) {
        ok = false;
        break;
      }
      p_fibre |= mask_bit(j);
    }
    if (ok && ext.fibre.delta_contains(p_fibre)) delta.push_back(p_mask);
  }
  return make_locality(restricted, s_sub, std::move(delta), p);
}

namespace {

// left conjugation by a total element, restricted to iota(L'); nullopt when
// some conjugate is undefined or falls outside the fibre
std::optional<std::vector<Element>> fibre_conjugation(const IsotypicalExtension& ext, Element u) {
  const PartialGroup& total = ext.total;
  std::vector<Element> map(static_cast<std::size_t>(ext.fibre.pg.size()));
  for (Element x = 0; x < ext.fibre.pg.size(); ++x) {
    Element e = iota_element(ext, x);
    if (!total.left_conj_defined(u, e)) return std::nullopt;
    auto [y, g] = pair_decode(total, total.left_conjugate(u, e));
    if (g != ext.base.pg.unit()) return std::nullopt;
    map[static_cast<std::size_t>(x)] = y;
  }
  return map;
}

SectionReport finish_section(const IsotypicalExtension& ext, const InducedLocality* ind,
                             std::vector<Element> values, int bound) {
  SectionReport rep;
  rep.values = std::move(values);
  const PartialGroup& total = ext.total;

  rep.lands_in_T = ind != nullptr;
  if (ind)
    for (Element v : rep.values)
      if (locality_local_of(ind->T, v) < 0) rep.lands_in_T = false;

  rep.conjugation_isotypical = true;
  for (Element v : rep.values) {
    auto map = fibre_conjugation(ext, v);
    if (!map || ext.fibre_raut.aut.index_of(*map) < 0) {
      rep.conjugation_isotypical = false;
      break;
    }
  }

  rep.words_accepted = true;
  for (int k = 1; k <= bound && rep.words_accepted; ++k)
    for (const Word& bw : ext.base.pg.words(k)) {
      Word lifted(bw.size());
      for (std::size_t i = 0; i < bw.size(); ++i) lifted[i] = rep.values[static_cast<std::size_t>(bw[i])];
      if (!total.accepts(lifted)) {
        rep.words_accepted = false;
        rep.witness = bw;
        break;
      }
    }
  return rep;
}

}  // namespace

SectionReport section_sigma0(const IsotypicalExtension& ext, int bound) {
  std::vector<Element> values(static_cast<std::size_t>(ext.base.pg.size()));
  for (Element g = 0; g < ext.base.pg.size(); ++g)
    values[static_cast<std::size_t>(g)] = sigma0_element(ext, g);
  return finish_section(ext, nullptr, std::move(values), bound);
}

SectionReport section_sigma(const InducedLocality& ind, int bound) {
  const IsotypicalExtension& ext = ind.ext;
  const PartialGroup& total = ext.total;
  const PartialGroup& B = ext.base.pg;

  std::vector<Element> values(static_cast<std::size_t>(B.size()));
  values[static_cast<std::size_t>(B.unit())] = total.unit();

  // S(Q'') for a base-side subgroup mask over S''
  auto s_of = [&](Mask q_base) {
    std::vector<Element> out;
    for (Element e : ind.s_total) {
      Element g = pair_decode(total, e).second;
      int j = ext.base.s_local(g);
      if (j >= 0 && mask_has(q_base, j)) out.push_back(e);
    }
    return out;
  };

  for (Element g = 0; g < B.size(); ++g) {
    if (g == B.unit()) continue;
    Word w{g};
    auto rl = compute_Rw_Lw(ext.base, w, false);
    Mask q2 = rl.r, p2 = rl.l;
    auto s_p = s_of(p2);
    auto s_q = s_of(q2);

    // X = sigma0(g) (S(P'')) sigma0(g)^-1
    Element s0 = sigma0_element(ext, g);
    std::set<Element> x_set;
    for (Element e : s_p) {
      if (!total.left_conj_defined(s0, e)) throw SearchFailed("sigma0 conjugation undefined");
      x_set.insert(total.left_conjugate(s0, e));
    }
    std::set<Element> target(s_q.begin(), s_q.end());

    // find [(y,h)] with base part in Q'' conjugating X onto S(Q'')
    Element m = -1;
    for (Element cand = 0; cand < total.size() && m < 0; ++cand) {
      Element h = pair_decode(total, cand).second;
      int j = ext.base.s_local(h);
      if (j < 0 || !mask_has(q2, j)) continue;
      std::set<Element> img;
      bool ok = true;
      for (Element e : x_set) {
        if (!total.left_conj_defined(cand, e)) {
          ok = false;
          break;
        }
        img.insert(total.left_conjugate(cand, e));
      }
      if (ok && img == target) m = total.prod2(cand, s0);
    }
    if (m < 0) throw SearchFailed("no conjugating element found (broken locality data)");

    // strip the S-part: first [(z,h)] in S over the same base letter
    Element h = pair_decode(total, m).second;
    Element z = -1;
    for (Element e : ind.s_total)
      if (pair_decode(total, e).second == h) {
        z = e;
        break;
      }
    if (z < 0) throw SearchFailed("no S-preimage of the base letter");
    values[static_cast<std::size_t>(g)] = total.prod2(total.inv(z), m);
  }
  return finish_section(ext, &ind, std::move(values), bound);
}

RigidityReport check_rigid_admissible(const IsotypicalExtension& ext) {
  RigidityReport rep;
  const auto& A = ext.fibre_raut.aut;
  FusionSystem f_fibre = fusion_system(ext.fibre);
  Mask s_full = ext.fibre.s_mask;
  auto fus_auts = f_fibre.auts(s_full);

  const int ns2 = static_cast<int>(ext.base.s_elements.size());
  for (int i = 0; i < ns2; ++i) {
    Element g = ext.base.s_elements[static_cast<std::size_t>(i)];  // pg-local base element
    int psi = ext.pair.psi_index(g);
    if (std::binary_search(A.inner.begin(), A.inner.end(), psi)) rep.s0.push_back(i);
    // restriction of Psi_g to S' as a fusion automorphism?
    HomMap h;
    h.dom = s_full;
    for (Element sx : ext.fibre.s_elements) {
      int j = ext.fibre.s_local(A.autos[static_cast<std::size_t>(psi)][static_cast<std::size_t>(sx)]);
      if (j < 0) throw Error("Psi does not preserve S'");
      h.img.push_back(j);
    }
    if (std::binary_search(fus_auts.begin(), fus_auts.end(), h)) rep.s1.push_back(i);
  }

  Mask s0_mask = 0, s1_mask = 0;
  for (int i : rep.s0) s0_mask |= mask_bit(i);
  for (int i : rep.s1) s1_mask |= mask_bit(i);
  rep.rigid = ext.base.delta_contains(s0_mask);

  FusionSystem f_base = fusion_system(ext.base);
  rep.admissible = true;
  for (Mask p2 : ext.base.s_group.subgroups()) {
    if (!f_base.fully_centralized(p2)) continue;
    Mask c = ext.base.s_group.centralizer(p2, s1_mask);
    if ((c & ~p2) != 0) continue;  // C_{S1''}(P'') not inside P''
    if (!ext.base.delta_contains(p2)) {
      rep.admissible = false;
      break;
    }
  }
  return rep;
}

GoodnessReport check_good(const InducedLocality& ind, int budget) {
  GoodnessReport rep;
  const IsotypicalExtension& ext = ind.ext;

  rep.fibre_in_T = true;
  std::vector<Element> fibre_in_t;
  for (Element x = 0; x < ext.fibre.pg.size(); ++x) {
    int li = locality_local_of(ind.T, iota_element(ext, x));
    if (li < 0) {
      rep.fibre_in_T = false;
      break;
    }
    fibre_in_t.push_back(li);
  }

  if (rep.fibre_in_T) {
    auto sub = make_partial_subgroup(ind.T.pg, fibre_in_t);
    rep.fibre_partial_normal = is_partial_normal(ind.T.pg, sub);
  }

  FusionSystem f_t = fusion_system(ind.T);
  rep.delta_has_centric_radicals = true;
  for (Mask p : f_t.lattice())
    if (f_t.is_centric(p) && f_t.is_radical(p) && !ind.T.delta_contains(p))
      rep.delta_has_centric_radicals = false;

  rep.t_fusion_saturated = check_saturation(f_t, budget).saturated();

  if (rep.fibre_in_T) {
    // F' as a subsystem over iota(S') inside T's S
    FusionSystem e = fusion_system(ext.fibre);
    std::vector<Element> r_elements;
    for (std::size_t i = 0; i < ext.fibre.s_elements.size(); ++i) {
      Element tot = iota_element(ext, ext.fibre.s_elements[i]);
      int tl = ind.T.s_local(locality_local_of(ind.T, tot));
      if (tl < 0) throw Error("iota(S') not inside T's Sylow");
      r_elements.push_back(tl);
    }
    rep.fibre_normal = check_normal_subsystem(e, r_elements, f_t, budget);
  }
  return rep;
}

Aux4Report check_aux4(const InducedLocality& ind) {
  Aux4Report rep;
  const IsotypicalExtension& ext = ind.ext;
  FusionSystem f_t = fusion_system(ind.T);
  FusionSystem f_fibre = fusion_system(ext.fibre);
  RigidityReport rig = check_rigid_admissible(ext);
  Mask s1_mask = 0;
  for (int i : rig.s1) s1_mask |= mask_bit(i);

  const PartialGroup& total = ext.total;
  std::vector<Element> s_elems;
  subgroup_as_group(total, ind.s_total, &s_elems);

  for (Mask p : f_t.lattice()) {
    if (!f_t.is_centric(p) || !f_t.is_radical(p)) continue;
    if (!ind.T.delta_contains(p)) {
      rep.all_centric_radicals_in_delta = false;
      continue;
    }
    ++rep.checked;
    // P' = P ∩ iota(L'), as a fibre-S mask; P'' = tau(P), as a base-S mask
    Mask p_fibre = 0, p_base = 0;
    for (int i : mask_elements(p)) {
      auto [x, g] = pair_decode(total, s_elems[static_cast<std::size_t>(i)]);
      if (g == ext.base.pg.unit()) p_fibre |= mask_bit(ext.fibre.s_local(x));
      p_base |= mask_bit(ext.base.s_local(g));
    }
    bool centric = f_fibre.is_centric(p_fibre);
    Mask c = ext.base.s_group.centralizer(p_base, s1_mask);
    bool central_ok = (c & ~p_base) == 0;
    if (!centric || !central_ok) {
      rep.holds = false;
      rep.witness = p;
    }
  }
  return rep;
}

GroupExtensionData group_extension_to_locality_extension(const SmallGroup& g, Mask kernel, int p) {
  GroupExtensionData data;
  data.group = g;
  data.kernel_mask = kernel;
  if (!g.is_subgroup_mask(kernel) || !g.is_normal_in(kernel, g.all_mask()))
    throw NotAGroup("kernel is not a normal subgroup");
  data.quotient = g.quotient(kernel, &data.coset_of);

  // Sylows: S_G with S_K = S_G ∩ K automatically Sylow in K
  Mask s_g = g.first_sylow(p);
  Mask s_k = s_g & kernel;
  if (mask_size(s_k) != SmallGroup::p_part(mask_size(kernel), p))
    throw NoCompatibleSylow("S_G ∩ K is not a Sylow p-subgroup of K");

  // the fibre locality: K over its F_K-centric collection
  std::vector<Element> k_elems;
  SmallGroup k_group = g.subgroup_group(kernel, &k_elems);
  std::vector<int> k_local(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < k_elems.size(); ++i)
    k_local[static_cast<std::size_t>(k_elems[i])] = static_cast<int>(i);
  Locality fibre = locality_from_group(k_group, p, DeltaPolicy::Centric);

  // base: Q with every subgroup of S_Q
  Locality base = locality_from_group(data.quotient, p, DeltaPolicy::AllSubgroups);

  // section values in N_G(S_K) (Frattini argument guarantees one per coset)
  Mask n_g_sk = g.normalizer(s_k, g.all_mask());
  data.section.assign(static_cast<std::size_t>(data.quotient.size()), -1);
  data.section[static_cast<std::size_t>(data.quotient.unit())] = g.unit();
  for (Element x : mask_elements(n_g_sk)) {
    int q = data.coset_of[static_cast<std::size_t>(x)];
    if (data.section[static_cast<std::size_t>(q)] < 0) data.section[static_cast<std::size_t>(q)] = x;
  }
  for (Element v : data.section)
    if (v < 0) throw NoCompatibleSylow("some coset misses N_G(S_K)");

  // twisting data: Psi_q = left conjugation by s(q), eta = section cocycle
  auto fibre_raut = restricted_aut(fibre.pg, fibre.s_elements);
  std::vector<int> t(static_cast<std::size_t>(base.pg.size()), fibre_raut.aut.identity_index());
  for (Element q_loc = 0; q_loc < base.pg.size(); ++q_loc) {
    Element q = locality_ambient_of(base, q_loc);
    Element sq = data.section[static_cast<std::size_t>(q)];
    std::vector<Element> map(static_cast<std::size_t>(fibre.pg.size()));
    for (Element x_loc = 0; x_loc < fibre.pg.size(); ++x_loc) {
      Element x_k = k_elems[static_cast<std::size_t>(locality_ambient_of(fibre, x_loc))];
      Element img = g.left_conj(x_k, sq);
      int img_k = k_local[static_cast<std::size_t>(img)];
      if (img_k < 0) throw Error("conjugation leaves the kernel");
      int img_loc = locality_local_of(fibre, img_k);
      if (img_loc < 0) throw Error("conjugation leaves the fibre carrier");
      map[static_cast<std::size_t>(x_loc)] = img_loc;
    }
    int idx = fibre_raut.aut.index_of(map);
    if (idx < 0) throw Error("section conjugation is not an automorphism of the fibre locality");
    t[static_cast<std::size_t>(q_loc)] = idx;
  }

  std::vector<std::array<Element, 3>> eta;
  for (Element q1 = 0; q1 < base.pg.size(); ++q1)
    for (Element q2 = 0; q2 < base.pg.size(); ++q2) {
      if (q1 == base.pg.unit() || q2 == base.pg.unit()) continue;
      Element a = data.section[static_cast<std::size_t>(locality_ambient_of(base, q1))];
      Element b = data.section[static_cast<std::size_t>(locality_ambient_of(base, q2))];
      Element q12 = base.pg.prod2(q1, q2);
      Element c = data.section[static_cast<std::size_t>(locality_ambient_of(base, q12))];
      Element v = g.mul(g.mul(a, b), g.inv(c));
      int v_k = k_local[static_cast<std::size_t>(v)];
      if (v_k < 0) throw Error("section cocycle leaves the kernel");
      int v_loc = locality_local_of(fibre, v_k);
      if (v_loc < 0) throw Error("section cocycle leaves the fibre carrier");
      eta.push_back({q1, q2, static_cast<Element>(v_loc)});
    }

  data.ext = make_isotypical_extension(fibre, base, std::move(t), eta);
  return data;
}

}  // namespace ploc
