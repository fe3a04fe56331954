#include "ploc/twist.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ploc {

Element TwistingPair::eta_at(Element g, Element h) const {
  Element v = eta[static_cast<std::size_t>(g) * base.size() + h];
  if (v < 0) throw DomainViolation("eta looked up outside the accepted base pairs");
  return v;
}

const std::vector<Element>& TwistingPair::psi(Element g) const {
  return fibre_aut.autos[static_cast<std::size_t>(t[static_cast<std::size_t>(g)])];
}

TwistingPair make_twisting_pair(const PartialGroup& fibre, const PartialGroup& base, AutGroup fibre_aut,
                                Normalizer fibre_norm, std::vector<int> t,
                                const std::vector<std::array<Element, 3>>& eta_map) {
  TwistingPair p;
  p.fibre = fibre;
  p.base = base;
  p.fibre_aut = std::move(fibre_aut);
  p.fibre_norm = std::move(fibre_norm);
  p.t = std::move(t);
  if (static_cast<int>(p.t.size()) != base.size()) throw Error("t has wrong size");
  // accepted pairs default to the trivial correction; entries override
  p.eta.assign(static_cast<std::size_t>(base.size()) * base.size(), -1);
  for (Element g = 0; g < base.size(); ++g)
    for (Element h = 0; h < base.size(); ++h)
      if (base.defined2(g, h)) p.eta[static_cast<std::size_t>(g) * base.size() + h] = fibre.unit();
  for (auto [g, h, v] : eta_map) {
    if (!p.base.defined2(g, h)) throw DomainViolation("eta entry on a rejected base pair");
    p.eta[static_cast<std::size_t>(g) * base.size() + h] = v;
  }
  return p;
}

CocycleCertificate validate_twisting_pair(const TwistingPair& p) {
  CocycleCertificate cert;
  const PartialGroup& F = p.fibre;
  const PartialGroup& B = p.base;
  const Element e1 = F.unit(), eb = B.unit();

  cert.normalized = p.t[static_cast<std::size_t>(eb)] == p.fibre_aut.identity_index();
  for (Element g = 0; g < B.size() && cert.normalized; ++g) {
    if (B.defined2(eb, g) && p.eta_at(eb, g) != e1) cert.normalized = false;
    if (B.defined2(g, eb) && p.eta_at(g, eb) != e1) cert.normalized = false;
  }
  if (!cert.normalized) {
    cert.detail = "normalization fails";
    return cert;
  }

  cert.values_in_normalizer = true;
  for (Element g = 0; g < B.size() && cert.values_in_normalizer; ++g)
    for (Element h = 0; h < B.size() && cert.values_in_normalizer; ++h)
      if (B.defined2(g, h) && !p.fibre_norm.contains(p.eta_at(g, h))) {
        cert.values_in_normalizer = false;
        cert.witness = {g, h};
        cert.detail = "eta value outside N(M')";
      }
  if (!cert.values_in_normalizer) return cert;

  // eta(g,h) conjugates Psi_gh to Psi_g o Psi_h
  cert.conjugation_compatible = true;
  for (Element g = 0; g < B.size() && cert.conjugation_compatible; ++g)
    for (Element h = 0; h < B.size() && cert.conjugation_compatible; ++h) {
      if (!B.defined2(g, h)) continue;
      const auto& act = p.fibre_norm.action_of(p.eta_at(g, h));
      const auto& pg = p.psi(g);
      const auto& ph = p.psi(h);
      const auto& pgh = p.psi(B.prod2(g, h));
      for (Element x = 0; x < F.size(); ++x)
        if (act[static_cast<std::size_t>(pgh[static_cast<std::size_t>(x)])] !=
            pg[static_cast<std::size_t>(ph[static_cast<std::size_t>(x)])]) {
          cert.conjugation_compatible = false;
          cert.witness = {g, h};
          cert.detail = "eta does not intertwine Psi_g Psi_h with Psi_gh";
          break;
        }
    }
  if (!cert.conjugation_compatible) return cert;

  cert.cocycle = true;
  const auto& triples = B.words(3);
  for (const Word& w : triples) {
    Element g = w[0], h = w[1], k = w[2];
    Element hk = B.prod2(h, k), gh = B.prod2(g, h);
    Element lhs = F.product({p.psi(g)[static_cast<std::size_t>(p.eta_at(h, k))], p.eta_at(g, hk)});
    Element rhs = F.product({p.eta_at(g, h), p.eta_at(gh, k)});
    ++cert.triples_checked;
    if (lhs != rhs) {
      cert.cocycle = false;
      cert.witness = w;
      cert.detail = "cocycle formula fails";
      break;
    }
  }
  cert.valid = cert.cocycle;
  return cert;
}

MorphismChain TwistChain::as_morphisms() const {
  MorphismChain out;
  for (std::size_t j = 0; j + 1 < objects.size(); ++j)
    out.push_back(AutMorphism{objects[j], objects[j + 1], labels[j]});
  return out;
}

TwistChain twisting_function(const TwistingPair& p, std::span<const Element> base_word) {
  if (!p.base.accepts(base_word)) throw DomainViolation("base word rejected");
  const int n = static_cast<int>(base_word.size());
  if (n < 1) throw DomainViolation("twisting function needs dimension >= 1");
  TwistChain c;
  c.objects.push_back(p.psi_index(base_word[0]));
  // prefix products g_1..g_j and g_2..g_j
  for (int j = 2; j <= n; ++j) {
    Element full = p.base.product(base_word.subspan(0, static_cast<std::size_t>(j)));
    Element tail = p.base.product(base_word.subspan(1, static_cast<std::size_t>(j - 1)));
    c.objects.push_back(p.fibre_aut.compose(p.psi_index(full), p.fibre_aut.invert(p.psi_index(tail))));
  }
  if (n >= 2) c.labels.push_back(p.eta_at(base_word[0], base_word[1]));
  for (int k = 2; k <= n - 1; ++k) {
    Element mid = p.base.product(base_word.subspan(1, static_cast<std::size_t>(k - 1)));
    Element mid1 = p.base.product(base_word.subspan(1, static_cast<std::size_t>(k)));
    c.labels.push_back(
        p.fibre.product({p.fibre.inv(p.eta_at(base_word[0], mid)), p.eta_at(base_word[0], mid1)}));
  }
  return c;
}

TwistChain twisting_function_inverse(const TwistingPair& p, std::span<const Element> base_word) {
  TwistChain fwd = twisting_function(p, base_word);
  TwistChain c;
  for (int obj : fwd.objects) c.objects.push_back(p.fibre_aut.invert(obj));
  const int n = static_cast<int>(base_word.size());
  if (n >= 2) {
    const auto& phi1_inv = p.fibre_aut.autos[static_cast<std::size_t>(c.objects[0])];
    c.labels.push_back(phi1_inv[static_cast<std::size_t>(p.fibre.inv(p.eta_at(base_word[0], base_word[1])))]);
  }
  for (int k = 2; k <= n - 1; ++k) {
    // omega_{k,k+1} = phi_k^-1(eta(g_1..g_k, g_{k+1})^-1) . eta(g_2..g_k, g_{k+1})
    Element head = p.base.product(base_word.subspan(0, static_cast<std::size_t>(k)));
    Element tail = p.base.product(base_word.subspan(1, static_cast<std::size_t>(k - 1)));
    const auto& phik_inv = p.fibre_aut.autos[static_cast<std::size_t>(c.objects[static_cast<std::size_t>(k - 1)])];
    Element a = phik_inv[static_cast<std::size_t>(p.fibre.inv(p.eta_at(head, base_word[static_cast<std::size_t>(k)])))];
    c.labels.push_back(p.fibre.product({a, p.eta_at(tail, base_word[static_cast<std::size_t>(k)])}));
  }
  return c;
}

// ---- Twisted representation ------------------------------------------------

namespace detail {

struct TwistedRep final : Rep {
  TwistingPair pair;
  int nf, nb;
  bool total;  // both fibre and base have total domains
  std::vector<std::vector<Element>> psi_maps;      // per base element
  std::vector<std::vector<Element>> psi_inv_maps;  // inverse map per base element

  explicit TwistedRep(TwistingPair p) : pair(std::move(p)) {
    nf = pair.fibre.size();
    nb = pair.base.size();
    total = pair.fibre.kind() == RepKind::GroupLike && pair.base.kind() == RepKind::GroupLike;
    for (Element g = 0; g < nb; ++g) {
      psi_maps.push_back(pair.psi(g));
      psi_inv_maps.push_back(
          pair.fibre_aut.autos[static_cast<std::size_t>(pair.fibre_aut.invert(pair.psi_index(g)))]);
    }
  }

  Element encode(Element x, Element g) const { return x * nb + g; }
  Element xpart(Element e) const { return e / nb; }
  Element gpart(Element e) const { return e % nb; }

  int size() const override { return nf * nb; }
  Element unit() const override { return encode(pair.fibre.unit(), pair.base.unit()); }
  RepKind kind() const override { return RepKind::Twisted; }

  Element inv(Element e) const override {
    Element x = xpart(e), g = gpart(e);
    Element gi = pair.base.inv(g);
    Element a = pair.fibre.inv(pair.eta_at(gi, g));
    Element b = psi_maps[static_cast<std::size_t>(gi)][static_cast<std::size_t>(pair.fibre.inv(x))];
    return encode(pair.fibre.product({a, b}), gi);
  }

  bool accepts(std::span<const Element> w) const override {
    if (total) return true;
    if (w.size() <= 1) return true;
    Word gw, fw;
    gw.reserve(w.size());
    fw.reserve(w.size());
    for (Element e : w) gw.push_back(gpart(e));
    if (!pair.base.accepts(gw)) return false;
    // untwisted membership: letters (Psi_{g_1} o .. o Psi_{g_{k-1}})(x_k)
    std::vector<Element> comp(static_cast<std::size_t>(nf));
    for (Element x = 0; x < nf; ++x) comp[static_cast<std::size_t>(x)] = x;
    for (std::size_t k = 0; k < w.size(); ++k) {
      fw.push_back(comp[static_cast<std::size_t>(xpart(w[k]))]);
      if (k + 1 < w.size()) {
        const auto& pg = psi_maps[static_cast<std::size_t>(gw[k])];
        std::vector<Element> next(static_cast<std::size_t>(nf));
        for (Element x = 0; x < nf; ++x)
          next[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(pg[static_cast<std::size_t>(x)])];
        comp.swap(next);
      }
    }
    return pair.fibre.accepts(fw);
  }

  Element pair_product(Element e1, Element e2) const override {
    Element x1 = xpart(e1), g1 = gpart(e1);
    Element x2 = xpart(e2), g2 = gpart(e2);
    Element a = psi_maps[static_cast<std::size_t>(g1)][static_cast<std::size_t>(x2)];
    Element fx = pair.fibre.product({x1, a, pair.eta_at(g1, g2)});
    return encode(fx, pair.base.prod2(g1, g2));
  }
};

}  // namespace detail

PartialGroup build_extension(const TwistingPair& p) {
  auto cert = validate_twisting_pair(p);
  if (!cert.valid) throw InvalidTwistingPair("twisting pair invalid: " + cert.detail);
  return PartialGroup(std::make_shared<detail::TwistedRep>(p));
}

namespace {
const detail::TwistedRep& twisted_rep(const PartialGroup& ext) {
  auto* r = dynamic_cast<const detail::TwistedRep*>(&ext.rep());
  if (!r) throw Error("not a twisted extension");
  return *r;
}
}  // namespace

const TwistingPair& extension_pair(const PartialGroup& ext) { return twisted_rep(ext).pair; }

Element pair_encode(const PartialGroup& ext, Element x, Element g) { return twisted_rep(ext).encode(x, g); }

std::pair<Element, Element> pair_decode(const PartialGroup& ext, Element e) {
  const auto& r = twisted_rep(ext);
  return {r.xpart(e), r.gpart(e)};
}

PartialGroupMorphism extension_projection(const PartialGroup& ext) {
  const auto& r = twisted_rep(ext);
  std::vector<Element> f(static_cast<std::size_t>(ext.size()));
  for (Element e = 0; e < ext.size(); ++e) f[static_cast<std::size_t>(e)] = r.gpart(e);
  return PartialGroupMorphism{ext, r.pair.base, std::move(f)};
}

PartialGroupMorphism extension_inclusion(const PartialGroup& ext) {
  const auto& r = twisted_rep(ext);
  std::vector<Element> f(static_cast<std::size_t>(r.nf));
  for (Element x = 0; x < r.nf; ++x) f[static_cast<std::size_t>(x)] = r.encode(x, r.pair.base.unit());
  return PartialGroupMorphism{r.pair.fibre, ext, std::move(f)};
}

Word twisted_fibre_word(const PartialGroup& ext, std::span<const Element> w) {
  const auto& r = twisted_rep(ext);
  const auto& p = r.pair;
  Word out;
  out.reserve(w.size());
  Element prefix = p.base.unit();  // g_1 .. g_{k-1}
  for (std::size_t k = 0; k < w.size(); ++k) {
    Element x = r.xpart(w[k]), g = r.gpart(w[k]);
    Element a = p.psi(prefix)[static_cast<std::size_t>(x)];
    out.push_back(k == 0 ? x : p.fibre.product({a, p.eta_at(prefix, g)}));
    prefix = p.base.prod2(prefix, g);
  }
  return out;
}

Word untwisted_fibre_word(const PartialGroup& ext, std::span<const Element> w) {
  const auto& r = twisted_rep(ext);
  Word out;
  out.reserve(w.size());
  std::vector<Element> comp(static_cast<std::size_t>(r.nf));
  for (Element x = 0; x < r.nf; ++x) comp[static_cast<std::size_t>(x)] = x;
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.push_back(comp[static_cast<std::size_t>(r.xpart(w[k]))]);
    const auto& pg = r.psi_maps[static_cast<std::size_t>(r.gpart(w[k]))];
    std::vector<Element> next(static_cast<std::size_t>(r.nf));
    for (Element x = 0; x < r.nf; ++x)
      next[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(pg[static_cast<std::size_t>(x)])];
    comp.swap(next);
  }
  return out;
}

TheoremAReport check_theorem_A(const PartialGroup& ext, int bound, kernels::Mode mode) {
  const auto& r = twisted_rep(ext);
  const auto& p = r.pair;
  TheoremAReport rep;
  rep.axioms = check_axioms(ext, bound, mode);

  rep.enumerating_injective = true;
  rep.edge_formula = true;
  rep.inversion_ok = true;
  for (int k = 1; k <= bound; ++k) {
    const auto& level = ext.words(k);
    std::set<std::pair<Word, Word>> images;
    for (const Word& w : level) {
      Word fib = twisted_fibre_word(ext, w);
      Word gw(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) gw[i] = r.gpart(w[i]);
      if (!p.fibre.accepts(fib)) {
        rep.enumerating_injective = false;
        rep.witness = w;
        break;
      }
      if (!images.insert({fib, gw}).second) {
        rep.enumerating_injective = false;  // alpha_n not injective
        rep.witness = w;
        break;
      }
      // z_k = Psi_{g_1..g_{k-1}}^-1 (y_k . eta(g_1..g_{k-1}, g_k)^-1)
      Element prefix = p.base.unit();
      for (std::size_t i = 0; i < w.size(); ++i) {
        Element y = fib[i];
        Element z =
            i == 0 ? y
                   : r.psi_inv_maps[static_cast<std::size_t>(
                         prefix)][static_cast<std::size_t>(p.fibre.product(
                         {y, p.fibre.inv(p.eta_at(prefix, gw[i]))}))];
        if (z != r.xpart(w[i])) {
          rep.edge_formula = false;
          rep.witness = w;
          break;
        }
        prefix = p.base.prod2(prefix, gw[i]);
      }
      if (!rep.edge_formula) break;

      // inversion: nu(w) accepted, involutive, and [nu(w) | w] multiplies to 1
      Word nu = ext.inverse_word(w);
      if (!ext.accepts(nu)) {
        rep.inversion_ok = false;
        rep.witness = w;
        break;
      }
      Word lw = concat(nu, w);
      auto prod = ext.try_product(lw);
      if (!prod || *prod != ext.unit()) {
        rep.inversion_ok = false;
        rep.witness = w;
        break;
      }
    }
    if (!rep.enumerating_injective || !rep.edge_formula || !rep.inversion_ok) break;
  }
  return rep;
}

std::optional<std::vector<Element>> strong_equivalence(const PartialGroup& ext_a, const PartialGroup& ext_b,
                                                       int bound) {
  const auto& ra = twisted_rep(ext_a);
  const auto& rb = twisted_rep(ext_b);
  const PartialGroup& F = ra.pair.fibre;
  const PartialGroup& B = ra.pair.base;
  if (!F.same_object(rb.pair.fibre) || !B.same_object(rb.pair.base)) return std::nullopt;

  // Candidate section values: s(g) must left-conjugate Psi^B_g to Psi^A_g.
  const int nb = B.size();
  std::vector<std::vector<Element>> candidates(static_cast<std::size_t>(nb));
  candidates[static_cast<std::size_t>(B.unit())] = {F.unit()};
  for (Element g = 0; g < nb; ++g) {
    if (g == B.unit()) continue;
    const auto& pa = ra.psi_maps[static_cast<std::size_t>(g)];
    const auto& pb = rb.psi_maps[static_cast<std::size_t>(g)];
    for (Element s = 0; s < F.size(); ++s) {
      bool ok = true;
      for (Element x = 0; x < F.size() && ok; ++x) {
        if (!F.left_conj_defined(s, pb[static_cast<std::size_t>(x)])) {
          ok = false;
          break;
        }
        ok = F.left_conjugate(s, pb[static_cast<std::size_t>(x)]) == pa[static_cast<std::size_t>(x)];
      }
      if (ok) candidates[static_cast<std::size_t>(g)].push_back(s);
    }
    if (candidates[static_cast<std::size_t>(g)].empty()) return std::nullopt;
  }

  std::vector<Element> section(static_cast<std::size_t>(nb), -1);
  section[static_cast<std::size_t>(B.unit())] = F.unit();

  // eta compatibility on a pair (g, h) once both values are chosen:
  // s(g) . Psi^B_g(s(h)) . eta_B(g,h) = eta_A(g,h) . s(gh)
  auto pair_ok = [&](Element g, Element h) {
    if (!B.defined2(g, h)) return true;
    if (section[static_cast<std::size_t>(g)] < 0 || section[static_cast<std::size_t>(h)] < 0) return true;
    Element gh = B.prod2(g, h);
    if (section[static_cast<std::size_t>(gh)] < 0) return true;  // checked later
    auto lhs = F.try_product(
        {section[static_cast<std::size_t>(g)],
         rb.psi_maps[static_cast<std::size_t>(g)][static_cast<std::size_t>(section[static_cast<std::size_t>(h)])],
         rb.pair.eta_at(g, h)});
    auto rhs = F.try_product({ra.pair.eta_at(g, h), section[static_cast<std::size_t>(gh)]});
    return lhs && rhs && *lhs == *rhs;
  };

  std::vector<Element> order;
  for (Element g = 0; g < nb; ++g)
    if (g != B.unit()) order.push_back(g);

  std::function<bool(std::size_t)> search = [&](std::size_t at) -> bool {
    if (at == order.size()) {
      // full check of every accepted pair
      for (Element g = 0; g < nb; ++g)
        for (Element h = 0; h < nb; ++h)
          if (B.defined2(g, h) && !pair_ok(g, h)) return false;
      return true;
    }
    Element g = order[at];
    for (Element s : candidates[static_cast<std::size_t>(g)]) {
      section[static_cast<std::size_t>(g)] = s;
      bool consistent = true;
      for (Element h = 0; h < nb && consistent; ++h) {
        if (section[static_cast<std::size_t>(h)] < 0) continue;
        consistent = pair_ok(g, h) && pair_ok(h, g);
      }
      if (consistent && search(at + 1)) return true;
      section[static_cast<std::size_t>(g)] = -1;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;

  // F[(x, g)] = [(x . s(g), g)]
  std::vector<Element> f(static_cast<std::size_t>(ext_a.size()));
  for (Element e = 0; e < ext_a.size(); ++e) {
    Element x = ra.xpart(e), g = ra.gpart(e);
    auto xs = F.try_product({x, section[static_cast<std::size_t>(g)]});
    if (!xs) return std::nullopt;
    f[static_cast<std::size_t>(e)] = rb.encode(*xs, g);
  }
  PartialGroupMorphism cand{ext_a, ext_b, f};
  if (!cand.is_bijective()) return std::nullopt;
  if (morphism_violation(f, ext_a, ext_b, bound)) return std::nullopt;
  std::vector<Element> finv(f.size());
  for (Element e = 0; e < ext_a.size(); ++e) finv[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])] = e;
  if (morphism_violation(finv, ext_b, ext_a, bound)) return std::nullopt;
  return f;
}

}  // namespace ploc
