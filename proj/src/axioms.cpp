#include "ploc/axioms.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace ploc {

const char* law_name(Law law) {
  switch (law) {
    case Law::DomainLength1: return "domain.length1";
    case Law::DomainSubword: return "domain.subword-closure";
    case Law::P1Identity: return "P1.identity-on-elements";
    case Law::P1UnitEmpty: return "P1.unit-of-empty-word";
    case Law::P2Contraction: return "P2.contraction";
    case Law::I1Inverse: return "I1.left-inverse";
    case Law::ChMultiplicative: return "law.multiplicative";
    case Law::ChAssociative: return "law.associative";
    case Law::ChUnitInsertion: return "law.unit-insertion";
    case Law::ChInvAbsorb: return "law.inverse-absorption";
    case Law::ChLeftCancel: return "law.left-cancellation";
    case Law::ChRightCancel: return "law.right-cancellation";
    case Law::ChInversion: return "law.inversion";
    case Law::ChLeftUncancel: return "law.left-uncancellation";
    case Law::ChRightUncancel: return "law.right-uncancellation";
    case Law::FoldIndependence: return "law.fold-independence";
    case Law::InvolutiveInverse: return "law.involutive-inverse";
  }
  return "?";
}

const LawResult& AxiomReport::operator[](Law law) const {
  for (const auto& l : laws)
    if (l.law == law) return l;
  throw Error("law missing from report");
}

namespace {

// Evaluate every full bracketing of w; nullopt if some bracketing is
// undefined, otherwise the common value (or nullopt on disagreement, with
// *ok = false).
std::optional<Element> all_bracketings(const PartialGroup& m, std::span<const Element> w, bool* ok) {
  *ok = true;
  if (w.size() == 1) return w[0];
  std::optional<Element> value;
  for (std::size_t split = 1; split < w.size(); ++split) {
    bool okl = true, okr = true;
    auto l = all_bracketings(m, w.subspan(0, split), &okl);
    auto r = all_bracketings(m, w.subspan(split), &okr);
    if (!okl || !okr) {
      *ok = false;
      return std::nullopt;
    }
    if (!l || !r || !m.defined2(*l, *r)) {
      *ok = false;
      return std::nullopt;
    }
    Element v = m.prod2(*l, *r);
    if (value && *value != v) {
      *ok = false;
      return std::nullopt;
    }
    value = v;
  }
  return value;
}

struct Sweeper {
  const PartialGroup& m;
  int bound;
  kernels::Mode mode;
  AxiomReport& report;

  // Runs pred over every accepted word of length lo..hi; pred returns an
  // empty string on success and a failure note otherwise.
  template <class Check>
  void per_word(Law law, int lo, int hi, Check&& check) {
    LawResult res;
    res.law = law;
    for (int k = lo; k <= hi && res.pass; ++k) {
      const auto& level = m.words(k);
      const long n = static_cast<long>(level.size());
      res.checked += n;
      long bad = kernels::first_index(
          n, [&](long i) { return !check(level[static_cast<std::size_t>(i)]).empty(); }, mode);
      if (bad >= 0) {
        res.pass = false;
        res.witness = level[static_cast<std::size_t>(bad)];
        res.detail = check(res.witness);
      }
    }
    report.laws.push_back(std::move(res));
  }
};

std::string fmt_fail(const char* what, std::span<const Element> w) {
  return std::string(what) + " at " + word_to_string(w);
}

}  // namespace

AxiomReport check_axioms(const PartialGroup& m, int bound, kernels::Mode mode) {
  AxiomReport report;
  report.bound = bound;
  Sweeper sweep{m, bound, mode, report};
  const Element e = m.unit();
  const int n = m.size();

  {  // DomainLength1
    LawResult res;
    res.law = Law::DomainLength1;
    res.checked = n + 1;
    if (!m.accepts(std::span<const Element>{})) {
      res.pass = false;
      res.detail = "empty word rejected";
    }
    for (Element x = 0; x < n && res.pass; ++x)
      if (!m.accepts({x})) {
        res.pass = false;
        res.witness = {x};
        res.detail = "length-1 word rejected";
      }
    report.laws.push_back(std::move(res));
  }

  {  // InvolutiveInverse
    LawResult res;
    res.law = Law::InvolutiveInverse;
    res.checked = n;
    for (Element x = 0; x < n && res.pass; ++x)
      if (m.inv(m.inv(x)) != x) {
        res.pass = false;
        res.witness = {x};
        res.detail = "inversion not involutive";
      }
    report.laws.push_back(std::move(res));
  }

  {  // DomainSubword: oracle(w) implies every contiguous factor accepted.
    LawResult res;
    res.law = Law::DomainSubword;
    if (m.kind() == RepKind::GroupLike) {
      res.detail = "total domain";
      res.checked = 0;
    } else {
      for (int k = 2; k <= bound && res.pass; ++k) {
        // full scan of carrier^k so that words missed by prefix-extension
        // (an oracle accepting w but not a factor of w) are caught too
        double space = 1;
        for (int i = 0; i < k; ++i) space *= n;
        if (space > 8e6) continue;  // larger reps are covered per accepted word below
        const long total = static_cast<long>(space);
        res.checked += total;
        long bad = kernels::first_index(
            total,
            [&](long idx) {
              Word w(static_cast<std::size_t>(k));
              long v = idx;
              for (int i = k - 1; i >= 0; --i) {
                w[static_cast<std::size_t>(i)] = static_cast<Element>(v % n);
                v /= n;
              }
              if (!m.accepts(w)) return false;
              for (int len = 1; len < k; ++len)
                for (int at = 0; at + len <= k; ++at)
                  if (!m.accepts(std::span<const Element>(w.data() + at, static_cast<std::size_t>(len))))
                    return true;
              return false;
            },
            mode);
        if (bad >= 0) {
          Word w(static_cast<std::size_t>(k));
          long v = bad;
          for (int i = k - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<Element>(v % n);
            v /= n;
          }
          res.pass = false;
          res.witness = w;
          res.detail = "accepted word has a rejected factor";
        }
      }
    }
    report.laws.push_back(std::move(res));
  }

  {  // P1
    LawResult res;
    res.law = Law::P1Identity;
    res.checked = n;
    for (Element x = 0; x < n && res.pass; ++x) {
      auto p = m.try_product(std::initializer_list<Element>{x});
      if (!p || *p != x) {
        res.pass = false;
        res.witness = {x};
        res.detail = "Pi does not restrict to the identity";
      }
    }
    report.laws.push_back(std::move(res));

    LawResult res2;
    res2.law = Law::P1UnitEmpty;
    res2.checked = 1;
    auto p = m.try_product(std::span<const Element>{});
    if (!p || *p != e) {
      res2.pass = false;
      res2.detail = "Pi(empty) != unit";
    }
    report.laws.push_back(std::move(res2));
  }

  // P2: contract any inner factor to its product.
  sweep.per_word(Law::P2Contraction, 2, bound, [&](const Word& w) -> std::string {
    const int k = static_cast<int>(w.size());
    for (int i = 0; i < k; ++i)
      for (int j = i + 2; j <= k; ++j) {
        auto mid = m.try_product(std::span<const Element>(w.data() + i, static_cast<std::size_t>(j - i)));
        if (!mid) return fmt_fail("inner factor product undefined", w);
        Word c;
        c.reserve(static_cast<std::size_t>(k - (j - i) + 1));
        c.insert(c.end(), w.begin(), w.begin() + i);
        c.push_back(*mid);
        c.insert(c.end(), w.begin() + j, w.end());
        auto pc = m.try_product(c);
        auto pw = m.try_product(w);
        if (!pc) return fmt_fail("contracted word rejected", w);
        if (!pw || *pc != *pw) return fmt_fail("contracted product differs", w);
      }
    return {};
  });

  // I1: (u^-1, u) accepted with product 1.
  sweep.per_word(Law::I1Inverse, 1, bound, [&](const Word& w) -> std::string {
    Word v = m.inverse_word(w);
    v.insert(v.end(), w.begin(), w.end());
    auto p = m.try_product(v);
    if (!p) return fmt_fail("(u^-1, u) rejected", w);
    if (*p != e) return fmt_fail("Pi(u^-1, u) != 1", w);
    return {};
  });

  // 2.2 (i)
  sweep.per_word(Law::ChMultiplicative, 2, bound, [&](const Word& w) -> std::string {
    const int k = static_cast<int>(w.size());
    auto pw = m.try_product(w);
    if (!pw) return fmt_fail("product undefined", w);
    for (int i = 1; i < k; ++i) {
      auto a = m.try_product(std::span<const Element>(w.data(), static_cast<std::size_t>(i)));
      auto b = m.try_product(std::span<const Element>(w.data() + i, static_cast<std::size_t>(k - i)));
      if (!a || !b) return fmt_fail("factor product undefined", w);
      if (!m.defined2(*a, *b)) return fmt_fail("(Pi(u), Pi(v)) rejected", w);
      if (m.prod2(*a, *b) != *pw) return fmt_fail("Pi(u v) != Pi(Pi(u) Pi(v))", w);
    }
    return {};
  });

  // 2.2 (ii)
  sweep.per_word(Law::ChAssociative, 3, bound, [&](const Word& w) -> std::string {
    const int k = static_cast<int>(w.size());
    for (int i = 1; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        auto x = m.try_product(std::span<const Element>(w.data(), static_cast<std::size_t>(i)));
        auto y = m.try_product(std::span<const Element>(w.data() + i, static_cast<std::size_t>(j - i)));
        auto z = m.try_product(std::span<const Element>(w.data() + j, static_cast<std::size_t>(k - j)));
        if (!x || !y || !z) return fmt_fail("factor product undefined", w);
        if (!m.defined2(*x, *y) || !m.defined2(*y, *z)) return fmt_fail("pair product undefined", w);
        Element xy = m.prod2(*x, *y), yz = m.prod2(*y, *z);
        if (!m.defined2(xy, *z) || !m.defined2(*x, yz)) return fmt_fail("pair product undefined", w);
        if (m.prod2(xy, *z) != m.prod2(*x, yz)) return fmt_fail("associativity fails", w);
      }
    return {};
  });

  // 2.2 (iii)
  sweep.per_word(Law::ChUnitInsertion, 1, bound, [&](const Word& w) -> std::string {
    auto pw = m.try_product(w);
    if (!pw) return fmt_fail("product undefined", w);
    for (std::size_t at = 0; at <= w.size(); ++at) {
      Word v(w);
      v.insert(v.begin() + static_cast<long>(at), e);
      auto pv = m.try_product(v);
      if (!pv) return fmt_fail("unit insertion rejected", w);
      if (*pv != *pw) return fmt_fail("unit insertion changes product", w);
    }
    return {};
  });

  // 2.2 (iv)
  sweep.per_word(Law::ChInvAbsorb, 2, bound, [&](const Word& w) -> std::string {
    const int k = static_cast<int>(w.size());
    for (int i = 1; i < k; ++i) {
      std::span<const Element> u(w.data(), static_cast<std::size_t>(i));
      std::span<const Element> v(w.data() + i, static_cast<std::size_t>(k - i));
      Word left = m.inverse_word(u);
      left.insert(left.end(), w.begin(), w.end());  // u^-1 u v
      auto pl = m.try_product(left);
      auto pv = m.try_product(v);
      if (!pl || !pv || *pl != *pv) return fmt_fail("u^-1 u v absorption fails", w);
      Word right(w);
      Word vin = m.inverse_word(v);
      right.insert(right.end(), vin.begin(), vin.end());  // u v v^-1
      auto pr = m.try_product(right);
      auto pu = m.try_product(u);
      if (!pr || !pu || *pr != *pu) return fmt_fail("u v v^-1 absorption fails", w);
    }
    return {};
  });

  // 2.2 (vi)
  sweep.per_word(Law::ChInversion, 1, bound, [&](const Word& w) -> std::string {
    Word v = m.inverse_word(w);
    auto pv = m.try_product(v);
    auto pw = m.try_product(w);
    if (!pv) return fmt_fail("inverse word rejected", w);
    if (!pw || *pv != m.inv(*pw)) return fmt_fail("Pi(u^-1) != Pi(u)^-1", w);
    return {};
  });

  // fold independence
  sweep.per_word(Law::FoldIndependence, 2, bound, [&](const Word& w) -> std::string {
    bool ok = true;
    auto v = all_bracketings(m, w, &ok);
    if (!ok || !v) return fmt_fail("bracketings disagree or are undefined", w);
    auto pw = m.try_product(w);
    if (!pw || *v != *pw) return fmt_fail("bracketing differs from left fold", w);
    return {};
  });

  // cancellation / uncancellation via (prefix, value) buckets
  {
    auto run_buckets = [&](Law law, bool prefix_side, bool cancellation) {
      LawResult res;
      res.law = law;
      std::map<std::pair<Word, Element>, Element> buckets;
      for (int k = 2; k <= bound && res.pass; ++k) {
        for (const Word& w : m.words(k)) {
          auto pw = m.try_product(w);
          if (!pw) continue;  // reported elsewhere
          for (int i = 1; i < k && res.pass; ++i) {
            std::span<const Element> uu(w.data(), static_cast<std::size_t>(i));
            std::span<const Element> vv(w.data() + i, static_cast<std::size_t>(k - i));
            auto u = prefix_side ? uu : vv;  // the shared side
            auto v = prefix_side ? vv : uu;  // the compared side
            auto pv = m.try_product(v);
            if (!pv) continue;
            Word key(u.begin(), u.end());
            ++res.checked;
            if (cancellation) {
              // Pi(u v) = Pi(u w) => Pi(v) = Pi(w): bucket on (u, total)
              auto [it, fresh] = buckets.try_emplace(std::make_pair(std::move(key), *pw), *pv);
              if (!fresh && it->second != *pv) {
                res.pass = false;
                res.witness = w;
                res.detail = fmt_fail("cancellation fails", w);
              }
            } else {
              // Pi(v) = Pi(w) => Pi(u v) = Pi(u w): bucket on (u, Pi(v))
              auto [it, fresh] = buckets.try_emplace(std::make_pair(std::move(key), *pv), *pw);
              if (!fresh && it->second != *pw) {
                res.pass = false;
                res.witness = w;
                res.detail = fmt_fail("uncancellation fails", w);
              }
            }
          }
        }
      }
      report.laws.push_back(std::move(res));
    };
    run_buckets(Law::ChLeftCancel, true, true);
    run_buckets(Law::ChRightCancel, false, true);
    run_buckets(Law::ChLeftUncancel, true, false);
    run_buckets(Law::ChRightUncancel, false, false);
  }

  return report;
}

std::string format_report(const AxiomReport& r) {
  std::ostringstream os;
  for (const auto& l : r.laws) {
    os << (l.pass ? "pass " : "FAIL ") << law_name(l.law) << " checked=" << l.checked;
    if (!l.pass) os << " witness=" << word_to_string(l.witness) << " (" << l.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace ploc
