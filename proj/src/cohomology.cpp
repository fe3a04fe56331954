#include "ploc/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ploc {

double CochainComplex::cochain_count(int degree) const {
  return std::pow(static_cast<double>(coeff.size()), static_cast<double>(dim(degree)));
}

CochainComplex make_cochain_complex(const PartialGroup& base, SmallGroup coeff,
                                    std::vector<std::vector<Element>> action, int max_degree) {
  if (!coeff.abelian()) throw Error("coefficients must be abelian");
  CochainComplex cc;
  cc.base = base;
  cc.coeff = std::move(coeff);
  cc.action = std::move(action);
  cc.max_degree = max_degree;
  if (static_cast<int>(cc.action.size()) != base.size()) throw Error("action has wrong size");
  cc.basis.resize(static_cast<std::size_t>(max_degree) + 1);
  cc.index.resize(static_cast<std::size_t>(max_degree) + 1);
  cc.basis[0] = {Word{}};
  cc.index[0][Word{}] = 0;
  for (int n = 1; n <= max_degree; ++n) {
    for (const Word& w : base.words(n)) {
      bool nondeg = true;
      for (Element x : w)
        if (x == base.unit()) {
          nondeg = false;
          break;
        }
      if (!nondeg) continue;
      cc.index[static_cast<std::size_t>(n)][w] = static_cast<int>(cc.basis[static_cast<std::size_t>(n)].size());
      cc.basis[static_cast<std::size_t>(n)].push_back(w);
    }
  }
  return cc;
}

namespace {

// value of a normalized cochain on an arbitrary accepted word
Element eval(const CochainComplex& cc, int degree, const Cochain& c, const Word& w) {
  for (Element x : w)
    if (x == cc.base.unit()) return cc.coeff.unit();
  auto it = cc.index[static_cast<std::size_t>(degree)].find(w);
  if (it == cc.index[static_cast<std::size_t>(degree)].end()) throw Error("cochain evaluated off its basis");
  return c[static_cast<std::size_t>(it->second)];
}

}  // namespace

Cochain zero_cochain(const CochainComplex& cc, int degree) {
  return Cochain(static_cast<std::size_t>(cc.dim(degree)), cc.coeff.unit());
}

Cochain differential(const CochainComplex& cc, int degree, const Cochain& c) {
  if (degree < 0 || degree + 1 > cc.max_degree) throw DegreeOutOfRange("differential degree out of range");
  if (static_cast<long>(c.size()) != cc.dim(degree)) throw Error("cochain has wrong dimension");
  const auto& words = cc.basis[static_cast<std::size_t>(degree) + 1];
  Cochain out(words.size(), cc.coeff.unit());
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words[wi];
    const int n1 = static_cast<int>(w.size());  // = degree + 1
    Element acc = cc.coeff.unit();
    {
      Word d0(w.begin() + 1, w.end());
      Element v = eval(cc, degree, c, d0);
      acc = cc.coeff.mul(acc, cc.action[static_cast<std::size_t>(w[0])][static_cast<std::size_t>(v)]);
    }
    for (int i = 1; i < n1; ++i) {
      Word di(w);
      di[static_cast<std::size_t>(i - 1)] =
          cc.base.prod2(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
      di.erase(di.begin() + i);
      Element v = eval(cc, degree, c, di);
      if (i % 2) v = cc.coeff.inv(v);
      acc = cc.coeff.mul(acc, v);
    }
    {
      Word dn(w.begin(), w.end() - 1);
      Element v = eval(cc, degree, c, dn);
      if (n1 % 2) v = cc.coeff.inv(v);
      acc = cc.coeff.mul(acc, v);
    }
    out[wi] = acc;
  }
  return out;
}

bool is_cocycle(const CochainComplex& cc, int degree, const Cochain& c) {
  Cochain d = differential(cc, degree, c);
  return d == zero_cochain(cc, degree + 1);
}

namespace {

Cochain nth_cochain(const CochainComplex& cc, int degree, long n) {
  Cochain c(static_cast<std::size_t>(cc.dim(degree)));
  const long k = cc.coeff.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<Element>(n % k);
    n /= k;
  }
  return c;
}

long space_size_guarded(const CochainComplex& cc, int degree, long budget) {
  double total = cc.cochain_count(degree);
  if (total > static_cast<double>(budget))
    throw BudgetExceeded("cochain space larger than the enumeration budget");
  return static_cast<long>(total);
}

}  // namespace

std::vector<Cochain> all_cochains(const CochainComplex& cc, int degree, long budget) {
  long total = space_size_guarded(cc, degree, budget);
  std::vector<Cochain> out;
  out.reserve(static_cast<std::size_t>(total));
  for (long i = 0; i < total; ++i) out.push_back(nth_cochain(cc, degree, i));
  return out;
}

long count_cocycles(const CochainComplex& cc, int degree, long budget, kernels::Mode mode) {
  long total = space_size_guarded(cc, degree, budget);
  return kernels::count_matching(
      total, [&](long i) { return is_cocycle(cc, degree, nth_cochain(cc, degree, i)); }, mode);
}

std::vector<Cochain> cocycles(const CochainComplex& cc, int degree, long budget, kernels::Mode mode) {
  long total = space_size_guarded(cc, degree, budget);
  auto idx = kernels::filter_indices(
      total, [&](long i) { return is_cocycle(cc, degree, nth_cochain(cc, degree, i)); }, mode);
  std::vector<Cochain> out;
  out.reserve(idx.size());
  for (long i : idx) out.push_back(nth_cochain(cc, degree, i));
  return out;
}

std::set<Cochain> coboundaries(const CochainComplex& cc, int degree, long budget) {
  long total = space_size_guarded(cc, degree - 1, budget);
  std::set<Cochain> out;
  for (long i = 0; i < total; ++i) out.insert(differential(cc, degree - 1, nth_cochain(cc, degree - 1, i)));
  return out;
}

long cohomology_order(const CochainComplex& cc, int degree, long budget, kernels::Mode mode) {
  long z = count_cocycles(cc, degree, budget, mode);
  long b = static_cast<long>(coboundaries(cc, degree, budget).size());
  if (b == 0 || z % b) throw Error("cocycle count not divisible by coboundary count");
  return z / b;
}

std::optional<Cochain> coboundary_preimage(const CochainComplex& cc, int degree, const Cochain& target,
                                           long budget, kernels::Mode mode) {
  long total = space_size_guarded(cc, degree - 1, budget);
  long hit = kernels::first_index(
      total, [&](long i) { return differential(cc, degree - 1, nth_cochain(cc, degree - 1, i)) == target; },
      mode);
  if (hit < 0) return std::nullopt;
  return nth_cochain(cc, degree - 1, hit);
}

// ---- outer actions ----------------------------------------------------------

OuterAction make_outer_action(const PartialGroup& fibre, const PartialGroup& base, std::vector<int> eps) {
  OuterAction a;
  a.fibre = fibre;
  a.base = base;
  a.fibre_aut = enumerate_automorphisms(fibre);
  a.fibre_norm = compute_normalizer(fibre);
  a.eps = std::move(eps);
  if (static_cast<int>(a.eps.size()) != base.size()) throw Error("outer action has wrong size");
  const int classes = static_cast<int>(a.fibre_aut.outer_classes.size());
  for (int c : a.eps)
    if (c < 0 || c >= classes) throw NoLiftExists("outer class index out of range");

  int id_class = a.fibre_aut.outer_class_of(a.fibre_aut.identity_index());
  if (a.eps[static_cast<std::size_t>(base.unit())] != id_class)
    throw Error("outer action does not send the unit to the trivial class");
  for (Element g = 0; g < base.size(); ++g)
    for (Element h = 0; h < base.size(); ++h) {
      if (!base.defined2(g, h)) continue;
      int rg = a.fibre_aut.outer_classes[static_cast<std::size_t>(a.eps[static_cast<std::size_t>(g)])][0];
      int rh = a.fibre_aut.outer_classes[static_cast<std::size_t>(a.eps[static_cast<std::size_t>(h)])][0];
      int comp_class = a.fibre_aut.outer_class_of(a.fibre_aut.compose(rg, rh));
      if (comp_class != a.eps[static_cast<std::size_t>(base.prod2(g, h))])
        throw Error("outer action is not a morphism into Out");
    }
  return a;
}

OuterAction trivial_outer_action(const PartialGroup& fibre, const PartialGroup& base) {
  auto aut = enumerate_automorphisms(fibre);
  int id_class = aut.outer_class_of(aut.identity_index());
  return make_outer_action(fibre, base, std::vector<int>(static_cast<std::size_t>(base.size()), id_class));
}

CenterCoefficients center_coefficients(const OuterAction& act) {
  CenterCoefficients out;
  Center z = compute_center(act.fibre_norm);
  out.center_elements = z.members;
  out.coeff = subgroup_as_group(act.fibre, z.members);
  out.fibre_to_coeff.assign(static_cast<std::size_t>(act.fibre.size()), -1);
  for (std::size_t i = 0; i < z.members.size(); ++i)
    out.fibre_to_coeff[static_cast<std::size_t>(z.members[i])] = static_cast<int>(i);

  // inner automorphisms must act trivially on the center (checked, not assumed)
  for (int i : act.fibre_aut.inner) {
    const auto& f = act.fibre_aut.autos[static_cast<std::size_t>(i)];
    for (Element zc : z.members)
      if (f[static_cast<std::size_t>(zc)] != zc) throw Error("inner automorphism moves the center");
  }

  for (Element g = 0; g < act.base.size(); ++g) {
    int rep = act.fibre_aut.outer_classes[static_cast<std::size_t>(act.eps[static_cast<std::size_t>(g)])][0];
    const auto& f = act.fibre_aut.autos[static_cast<std::size_t>(rep)];
    std::vector<Element> a(z.members.size());
    for (std::size_t i = 0; i < z.members.size(); ++i) {
      Element img = f[static_cast<std::size_t>(z.members[i])];
      int ci = out.fibre_to_coeff[static_cast<std::size_t>(img)];
      if (ci < 0) throw Error("automorphism does not preserve the center");
      a[i] = ci;
    }
    out.action.push_back(std::move(a));
  }
  return out;
}

namespace {

std::optional<Element> find_conjugator(const Normalizer& n, const std::vector<Element>& target,
                                       unsigned rotate) {
  std::vector<Element> hits;
  for (std::size_t i = 0; i < n.members.size(); ++i)
    if (n.action[i] == target) hits.push_back(n.members[i]);
  if (hits.empty()) return std::nullopt;
  return hits[rotate % hits.size()];
}

}  // namespace

Obstruction obstruction_class(const OuterAction& act, unsigned perturbation, long budget) {
  const PartialGroup& F = act.fibre;
  const PartialGroup& B = act.base;
  const auto& A = act.fibre_aut;

  Obstruction out;
  out.lifts.assign(static_cast<std::size_t>(B.size()), A.identity_index());
  for (Element g = 0; g < B.size(); ++g) {
    if (g == B.unit()) continue;
    const auto& cls = A.outer_classes[static_cast<std::size_t>(act.eps[static_cast<std::size_t>(g)])];
    out.lifts[static_cast<std::size_t>(g)] = cls[perturbation % cls.size()];
  }

  out.eta.assign(static_cast<std::size_t>(B.size()) * B.size(), -1);
  for (Element g = 0; g < B.size(); ++g)
    for (Element h = 0; h < B.size(); ++h) {
      if (!B.defined2(g, h)) continue;
      if (g == B.unit() || h == B.unit()) {
        out.eta[static_cast<std::size_t>(g) * B.size() + h] = F.unit();
        continue;
      }
      int comp = A.compose(out.lifts[static_cast<std::size_t>(g)], out.lifts[static_cast<std::size_t>(h)]);
      int target = A.compose(comp, A.invert(out.lifts[static_cast<std::size_t>(B.prod2(g, h))]));
      auto eta = find_conjugator(act.fibre_norm, A.autos[static_cast<std::size_t>(target)], perturbation / 7);
      if (!eta) throw Error("inner discrepancy has no conjugator in N(M')");
      out.eta[static_cast<std::size_t>(g) * B.size() + h] = *eta;
    }

  CenterCoefficients zc = center_coefficients(act);
  out.complex = make_cochain_complex(B, zc.coeff, zc.action, 4);
  out.kappa = zero_cochain(out.complex, 3);
  auto eta_at = [&](Element g, Element h) { return out.eta[static_cast<std::size_t>(g) * B.size() + h]; };
  const auto& words3 = out.complex.basis[3];
  for (std::size_t wi = 0; wi < words3.size(); ++wi) {
    const Word& w = words3[wi];
    Element g = w[0], h = w[1], k = w[2];
    Element gh = B.prod2(g, h), hk = B.prod2(h, k);
    const auto& psi_g = A.autos[static_cast<std::size_t>(out.lifts[static_cast<std::size_t>(g)])];
    Element lhs = F.product({psi_g[static_cast<std::size_t>(eta_at(h, k))], eta_at(g, hk)});
    Element rhs = F.product({eta_at(g, h), eta_at(gh, k)});
    Element diff = F.product({lhs, F.inv(rhs)});
    int ci = zc.fibre_to_coeff[static_cast<std::size_t>(diff)];
    if (ci < 0) throw Error("obstruction value lies outside the center");
    out.kappa[wi] = static_cast<Element>(ci);
  }
  out.is_cocycle = is_cocycle(out.complex, 3, out.kappa);
  out.is_coboundary = coboundary_preimage(out.complex, 3, out.kappa, budget).has_value();
  return out;
}

ClassificationReport classify_extensions(const OuterAction& act, long budget, kernels::Mode mode) {
  const PartialGroup& F = act.fibre;
  const PartialGroup& B = act.base;
  const auto& A = act.fibre_aut;
  ClassificationReport report;

  std::vector<std::vector<int>> lift_cands(static_cast<std::size_t>(B.size()));
  lift_cands[static_cast<std::size_t>(B.unit())] = {A.identity_index()};
  double lift_total = 1;
  for (Element g = 0; g < B.size(); ++g) {
    if (g == B.unit()) continue;
    lift_cands[static_cast<std::size_t>(g)] =
        A.outer_classes[static_cast<std::size_t>(act.eps[static_cast<std::size_t>(g)])];
    lift_total *= static_cast<double>(lift_cands[static_cast<std::size_t>(g)].size());
  }

  std::vector<std::pair<Element, Element>> pairs;
  for (Element g = 0; g < B.size(); ++g)
    for (Element h = 0; h < B.size(); ++h)
      if (g != B.unit() && h != B.unit() && B.defined2(g, h)) pairs.push_back({g, h});

  Center z = compute_center(act.fibre_norm);
  double eta_total = std::pow(static_cast<double>(z.members.size()), static_cast<double>(pairs.size()));
  if (lift_total * eta_total > static_cast<double>(budget))
    throw BudgetExceeded("twisting-pair search space larger than the budget");

  std::vector<int> lifts(static_cast<std::size_t>(B.size()), A.identity_index());
  std::vector<PartialGroup> extensions;

  std::function<void(std::size_t)> enum_lifts = [&](std::size_t at) {
    if (at == lift_cands.size()) {
      std::vector<std::vector<Element>> eta_cands;
      for (auto [g, h] : pairs) {
        int comp = A.compose(lifts[static_cast<std::size_t>(g)], lifts[static_cast<std::size_t>(h)]);
        int target = A.compose(comp, A.invert(lifts[static_cast<std::size_t>(B.prod2(g, h))]));
        std::vector<Element> cands;
        for (std::size_t i = 0; i < act.fibre_norm.members.size(); ++i)
          if (act.fibre_norm.action[i] == A.autos[static_cast<std::size_t>(target)])
            cands.push_back(act.fibre_norm.members[i]);
        if (cands.empty()) return;  // this lift family realizes no pair
        eta_cands.push_back(std::move(cands));
      }
      std::vector<std::size_t> pick(pairs.size(), 0);
      while (true) {
        ++report.candidates_examined;
        std::vector<std::array<Element, 3>> eta_map;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          eta_map.push_back({pairs[i].first, pairs[i].second, eta_cands[i][pick[i]]});
        TwistingPair p = make_twisting_pair(F, B, A, act.fibre_norm,
                                            std::vector<int>(lifts.begin(), lifts.end()), eta_map);
        auto cert = validate_twisting_pair(p);
        if (cert.valid) {
          report.valid_pairs.push_back(p);
          extensions.push_back(build_extension(p));
        }
        std::size_t d = 0;
        while (d < pick.size() && ++pick[d] == eta_cands[d].size()) {
          pick[d] = 0;
          ++d;
        }
        if (pick.empty() || d == pick.size()) break;
      }
      return;
    }
    for (int cand : lift_cands[at]) {
      lifts[at] = cand;
      enum_lifts(at + 1);
    }
  };
  enum_lifts(0);

  std::vector<int> cls(extensions.size(), -1);
  for (std::size_t i = 0; i < extensions.size(); ++i) {
    if (cls[i] >= 0) continue;
    int id = static_cast<int>(report.classes.size());
    cls[i] = id;
    report.classes.push_back({static_cast<int>(i)});
    for (std::size_t j = i + 1; j < extensions.size(); ++j) {
      if (cls[j] >= 0) continue;
      if (strong_equivalence(extensions[i], extensions[j]).has_value()) {
        cls[j] = id;
        report.classes.back().push_back(static_cast<int>(j));
      }
    }
  }

  CenterCoefficients zc = center_coefficients(act);
  auto cc = make_cochain_complex(B, zc.coeff, zc.action, 3);
  report.h2 = cohomology_order(cc, 2, budget, mode);
  report.counts_match = report.h2 == static_cast<long>(report.classes.size());
  return report;
}

}  // namespace ploc
