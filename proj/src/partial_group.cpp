#include "ploc/partial_group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ploc {

std::string word_to_string(std::span<const Element> w) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << "|";
    os << w[i];
  }
  os << "]";
  return os.str();
}

namespace detail {

struct GroupLikeRep final : Rep {
  SmallGroup g;
  explicit GroupLikeRep(SmallGroup g_) : g(std::move(g_)) {}
  int size() const override { return g.size(); }
  Element unit() const override { return g.unit(); }
  Element inv(Element x) const override { return g.inv(x); }
  RepKind kind() const override { return RepKind::GroupLike; }
  bool accepts(std::span<const Element>) const override { return true; }
  Element pair_product(Element a, Element b) const override { return g.mul(a, b); }
};

struct ExplicitTableRep final : Rep {
  int n;
  Element e;
  std::vector<Element> invs;
  std::vector<Element> pairs;  // n*n, -1 where undefined
  std::unordered_set<Word, WordHash> longer;
  int max_len;

  explicit ExplicitTableRep(ExplicitTableSpec s) : n(s.size), e(s.unit), invs(std::move(s.inv)), max_len(s.max_len) {
    if (static_cast<int>(invs.size()) != n) throw Error("explicit table: bad inversion list");
    for (Element x = 0; x < n; ++x)
      if (invs[static_cast<std::size_t>(invs[static_cast<std::size_t>(x)])] != x)
        throw Error("explicit table: inversion is not involutive");
    pairs.assign(static_cast<std::size_t>(n) * n, -1);
    for (auto [a, b, c] : s.prod) pairs[static_cast<std::size_t>(a) * n + b] = c;
    for (auto& w : s.accepted) {
      if (static_cast<int>(w.size()) < 3) throw Error("explicit table: accepted block must have length >= 3");
      longer.insert(w);
    }
  }
  int size() const override { return n; }
  Element unit() const override { return e; }
  Element inv(Element x) const override { return invs[static_cast<std::size_t>(x)]; }
  RepKind kind() const override { return RepKind::ExplicitTable; }
  bool accepts(std::span<const Element> w) const override {
    if (w.size() <= 1) return true;
    if (w.size() == 2) return pairs[static_cast<std::size_t>(w[0]) * n + w[1]] >= 0;
    if (static_cast<int>(w.size()) <= max_len) return longer.count(Word(w.begin(), w.end())) > 0;
    // beyond the table's degree: the maximal subword-closed completion
    // (every window of table length must be accepted)
    for (std::size_t at = 0; at + static_cast<std::size_t>(max_len) <= w.size(); ++at)
      if (!accepts(w.subspan(at, static_cast<std::size_t>(max_len)))) return false;
    return true;
  }
  Element pair_product(Element a, Element b) const override {
    Element c = pairs[static_cast<std::size_t>(a) * n + b];
    if (c < 0) throw DomainViolation("pair not in explicit table");
    return c;
  }
};

}  // namespace detail

struct WordListBuf {
  int len = 0;
  std::vector<Element> flat;
  long count = 0;
};

struct PartialGroup::Impl {
  std::shared_ptr<const detail::Rep> rep;
  bool total_domain = false;
  mutable std::mutex mu;
  mutable std::vector<std::shared_ptr<const std::vector<Word>>> word_cache;  // by length
};

PartialGroup::PartialGroup(std::shared_ptr<const detail::Rep> rep) {
  impl_ = std::make_shared<Impl>();
  impl_->rep = std::move(rep);
  rep_ = impl_->rep.get();
  // A domain is total when the oracle is constant-true by construction.
  impl_->total_domain = rep_->kind() == RepKind::GroupLike;
}

int PartialGroup::size() const { return rep_->size(); }
Element PartialGroup::unit() const { return rep_->unit(); }
Element PartialGroup::inv(Element x) const {
  if (x < 0 || x >= size()) throw IndexOutOfRange("element out of range");
  return rep_->inv(x);
}
RepKind PartialGroup::kind() const { return rep_->kind(); }

bool PartialGroup::accepts(std::span<const Element> w) const {
  for (Element x : w)
    if (x < 0 || x >= size()) return false;
  return rep_->accepts(w);
}
bool PartialGroup::accepts(std::initializer_list<Element> w) const {
  return accepts(std::span<const Element>(w.begin(), w.size()));
}
bool PartialGroup::defined2(Element a, Element b) const {
  const Element w[2] = {a, b};
  return accepts(std::span<const Element>(w, 2));
}

Element PartialGroup::prod2(Element a, Element b) const {
  if (!defined2(a, b)) throw DomainViolation("length-2 word rejected by the oracle");
  return rep_->pair_product(a, b);
}

std::optional<Element> PartialGroup::try_product(std::span<const Element> w) const {
  if (!accepts(w)) return std::nullopt;
  if (w.empty()) return unit();
  Element acc = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!defined2(acc, w[i])) return std::nullopt;  // P2 violation in a broken table
    acc = rep_->pair_product(acc, w[i]);
  }
  return acc;
}

Element PartialGroup::product(std::span<const Element> w) const {
  if (!accepts(w)) throw DomainViolation("word rejected by the oracle: " + word_to_string(w));
  auto r = try_product(w);
  if (!r) throw DomainViolation("left fold undefined on accepted word (broken table): " + word_to_string(w));
  return *r;
}
Element PartialGroup::product(std::initializer_list<Element> w) const {
  return product(std::span<const Element>(w.begin(), w.size()));
}
std::optional<Element> PartialGroup::try_product(std::initializer_list<Element> w) const {
  return try_product(std::span<const Element>(w.begin(), w.size()));
}

Word PartialGroup::inverse_word(std::span<const Element> w) const {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = inv(w[w.size() - 1 - i]);
  return out;
}

bool PartialGroup::conj_defined(Element u, Element x) const {
  return accepts({inv(u), x, u});
}
Element PartialGroup::conjugate(Element u, Element x) const {
  if (!conj_defined(u, x)) throw DomainViolation("x not in D(u)");
  return product({inv(u), x, u});
}
bool PartialGroup::left_conj_defined(Element u, Element x) const {
  return accepts({u, x, inv(u)});
}
Element PartialGroup::left_conjugate(Element u, Element x) const {
  if (!left_conj_defined(u, x)) throw DomainViolation("x not in left domain of u");
  return product({u, x, inv(u)});
}
std::vector<Element> PartialGroup::conj_domain(Element u) const {
  std::vector<Element> out;
  for (Element x = 0; x < size(); ++x)
    if (conj_defined(u, x)) out.push_back(x);
  return out;
}

const std::vector<Word>& PartialGroup::words(int len) const {
  if (len < 0) throw IndexOutOfRange("negative word length");
  {
    std::lock_guard<std::mutex> lk(impl_->mu);
    if (static_cast<int>(impl_->word_cache.size()) > len && impl_->word_cache[static_cast<std::size_t>(len)])
      return *impl_->word_cache[static_cast<std::size_t>(len)];
  }
  // build levels 0..len outside the lock (idempotent work)
  auto lists = std::vector<std::shared_ptr<const std::vector<Word>>>();
  {
    std::lock_guard<std::mutex> lk(impl_->mu);
    lists = impl_->word_cache;
  }
  lists.resize(static_cast<std::size_t>(len) + 1);
  const int n = size();
  if (!lists[0]) lists[0] = std::make_shared<const std::vector<Word>>(std::vector<Word>{Word{}});
  for (int k = 1; k <= len; ++k) {
    if (lists[static_cast<std::size_t>(k)]) continue;
    const auto& prev = *lists[static_cast<std::size_t>(k - 1)];
    std::vector<Word> cur;
    Word cand(static_cast<std::size_t>(k));
    if (impl_->total_domain) {
      cur.reserve(prev.size() * static_cast<std::size_t>(n));
      for (const Word& p : prev)
        for (Element x = 0; x < n; ++x) {
          std::copy(p.begin(), p.end(), cand.begin());
          cand.back() = x;
          cur.push_back(cand);
        }
    } else {
      const long total = static_cast<long>(prev.size()) * n;
      auto hits = kernels::filter_indices(
          total,
          [&](long i) {
            const Word& p = prev[static_cast<std::size_t>(i / n)];
            Element last = static_cast<Element>(i % n);
            Word w(p);
            w.push_back(last);
            return rep_->accepts(w);
          },
          kernels::Mode::Parallel);
      cur.reserve(hits.size());
      for (long i : hits) {
        const Word& p = prev[static_cast<std::size_t>(i / n)];
        std::copy(p.begin(), p.end(), cand.begin());
        cand.back() = static_cast<Element>(i % n);
        cur.push_back(cand);
      }
    }
    lists[static_cast<std::size_t>(k)] = std::make_shared<const std::vector<Word>>(std::move(cur));
  }
  {
    std::lock_guard<std::mutex> lk(impl_->mu);
    if (impl_->word_cache.size() < lists.size()) impl_->word_cache.resize(lists.size());
    for (std::size_t k = 0; k < lists.size(); ++k)
      if (!impl_->word_cache[k] && lists[k]) impl_->word_cache[k] = lists[k];
    return *impl_->word_cache[static_cast<std::size_t>(len)];
  }
}

std::vector<Word> PartialGroup::words_up_to(int maxlen) const {
  std::vector<Word> out;
  for (int k = 1; k <= maxlen; ++k) {
    const auto& lvl = words(k);
    out.insert(out.end(), lvl.begin(), lvl.end());
  }
  return out;
}

// ---- constructors -------------------------------------------------------

PartialGroup make_group_like(const SmallGroup& g) {
  return PartialGroup(std::make_shared<detail::GroupLikeRep>(g));
}

const SmallGroup& group_of(const PartialGroup& m) {
  auto* r = dynamic_cast<const detail::GroupLikeRep*>(&m.rep());
  if (!r) throw Error("not a GroupLike partial group");
  return r->g;
}

PartialGroup make_explicit_table(ExplicitTableSpec spec) {
  return PartialGroup(std::make_shared<detail::ExplicitTableRep>(std::move(spec)));
}

PartialGroup make_cyclic(int m) { return make_group_like(SmallGroup::cyclic(m)); }
PartialGroup make_klein4() { return make_group_like(SmallGroup::klein4()); }
PartialGroup make_dihedral8() { return make_group_like(SmallGroup::dihedral(8)); }
PartialGroup make_quaternion8() { return make_group_like(SmallGroup::quaternion8()); }
PartialGroup make_symmetric(int m) { return make_group_like(SmallGroup::symmetric(m)); }
PartialGroup make_alternating4() { return make_group_like(SmallGroup::alternating4()); }
PartialGroup make_from_permutations(int degree, const std::vector<std::vector<int>>& gens) {
  return make_group_like(SmallGroup::from_permutations(degree, gens));
}

// ---- subgroup helpers ----------------------------------------------------

PartialSubgroup make_partial_subgroup(const PartialGroup& m, std::vector<Element> members, int bound) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<char> in(static_cast<std::size_t>(m.size()), 0);
  for (Element x : members) {
    if (x < 0 || x >= m.size()) throw IndexOutOfRange("member out of range");
    in[static_cast<std::size_t>(x)] = 1;
  }
  for (Element x : members)
    if (!in[static_cast<std::size_t>(m.inv(x))]) throw NotASubgroup("member set not closed under inversion");

  PartialSubgroup h;
  h.parent = m;
  h.members = members;
  h.bound = bound;

  // products of accepted words over members stay in the set; D(H) = W(H)
  // means every word over the members is accepted.
  bool all_words = true;
  std::vector<Word> level{Word{}};
  for (int k = 1; k <= bound && (all_words || k <= 2); ++k) {
    std::vector<Word> next;
    for (const Word& p : level)
      for (Element x : members) {
        Word w(p);
        w.push_back(x);
        if (m.accepts(w)) {
          auto prod = m.try_product(w);
          if (!prod || !in[static_cast<std::size_t>(*prod)])
            throw NotASubgroup("member set not closed under products");
          next.push_back(std::move(w));
        } else {
          all_words = false;
        }
      }
    level = std::move(next);
  }
  h.is_subgroup = all_words;
  return h;
}

bool is_partial_normal(const PartialGroup& m, const PartialSubgroup& n) {
  if (!m.same_object(n.parent)) throw Error("subgroup belongs to a different partial group");
  std::vector<char> in(static_cast<std::size_t>(m.size()), 0);
  for (Element x : n.members) in[static_cast<std::size_t>(x)] = 1;
  for (Element g = 0; g < m.size(); ++g)
    for (Element x : n.members)
      if (m.conj_defined(g, x) && !in[static_cast<std::size_t>(m.conjugate(g, x))]) return false;
  return true;
}

SmallGroup subgroup_as_group(const PartialGroup& m, const std::vector<Element>& members,
                             std::vector<Element>* elements) {
  std::vector<Element> elems(members);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<int> local(static_cast<std::size_t>(m.size()), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);
  const int k = static_cast<int>(elems.size());
  std::vector<Element> table(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (!m.defined2(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]))
        throw NotASubgroup("pair product undefined inside claimed subgroup");
      Element c = m.prod2(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)]);
      if (local[static_cast<std::size_t>(c)] < 0) throw NotASubgroup("claimed subgroup not closed");
      table[static_cast<std::size_t>(a) * k + b] = local[static_cast<std::size_t>(c)];
    }
  if (elements) *elements = elems;
  return SmallGroup::from_table(std::move(table));
}

std::vector<std::vector<Element>> enumerate_subgroups(const PartialGroup& m) {
  // BFS closure like the group case, but products may be undefined; a set is
  // kept only if every pair product is defined and stays inside.
  auto try_close = [&](std::set<Element> seed) -> std::optional<std::set<Element>> {
    seed.insert(m.unit());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Element> cur(seed.begin(), seed.end());
      for (Element a : cur) {
        if (seed.insert(m.inv(a)).second) grew = true;
        for (Element b : cur) {
          if (!m.defined2(a, b)) return std::nullopt;
          if (seed.insert(m.prod2(a, b)).second) grew = true;
        }
      }
      if (seed.size() > 64) return std::nullopt;  // out of scope for this artifact
    }
    return seed;
  };
  std::set<std::set<Element>> seen;
  std::vector<std::set<Element>> work;
  if (auto t = try_close({})) {
    seen.insert(*t);
    work.push_back(*t);
  }
  while (!work.empty()) {
    auto h = work.back();
    work.pop_back();
    for (Element g = 0; g < m.size(); ++g) {
      if (h.count(g)) continue;
      auto bigger = h;
      bigger.insert(g);
      if (auto c = try_close(bigger))
        if (seen.insert(*c).second) work.push_back(*c);
    }
  }
  std::vector<std::vector<Element>> out;
  for (const auto& s : seen) out.emplace_back(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace detail {

struct RestrictionRep final : Rep {
  PartialGroup ambient;
  std::vector<Element> members;   // ambient indices, ascending
  std::vector<int> member_index;  // ambient -> local
  Element unit_local;
  std::vector<Element> inv_local;

  RestrictionRep(PartialGroup amb, std::vector<Element> mem)
      : ambient(std::move(amb)), members(std::move(mem)) {
    member_index.assign(static_cast<std::size_t>(ambient.size()), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
      member_index[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    unit_local = member_index[static_cast<std::size_t>(ambient.unit())];
    if (unit_local < 0) throw Error("restriction misses the unit");
    for (Element x : members) {
      int li = member_index[static_cast<std::size_t>(ambient.inv(x))];
      if (li < 0) throw NotASubgroup("member set not closed under inversion");
      inv_local.push_back(li);
    }
  }
  int size() const override { return static_cast<int>(members.size()); }
  Element unit() const override { return unit_local; }
  Element inv(Element x) const override { return inv_local[static_cast<std::size_t>(x)]; }
  RepKind kind() const override { return ambient.kind(); }
  bool accepts(std::span<const Element> w) const override {
    Word amb(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) amb[i] = members[static_cast<std::size_t>(w[i])];
    return ambient.accepts(amb);
  }
  Element pair_product(Element a, Element b) const override {
    Element c = ambient.prod2(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
    int li = member_index[static_cast<std::size_t>(c)];
    if (li < 0) throw DomainViolation("product leaves the restricted carrier");
    return li;
  }
};

}  // namespace detail

PartialGroup restrict_to(const PartialGroup& m, const std::vector<Element>& members) {
  std::vector<Element> mem(members);
  std::sort(mem.begin(), mem.end());
  mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
  return PartialGroup(std::make_shared<detail::RestrictionRep>(m, std::move(mem)));
}

Element restriction_ambient_of(const PartialGroup& m, Element local) {
  if (auto* r = dynamic_cast<const detail::RestrictionRep*>(&m.rep()))
    return r->members[static_cast<std::size_t>(local)];
  return local;
}

std::vector<Element> transporter_elements(const PartialGroup& m, const std::vector<Element>& a,
                                          const std::vector<Element>& b) {
  std::vector<char> in_b(static_cast<std::size_t>(m.size()), 0);
  for (Element x : b) in_b[static_cast<std::size_t>(x)] = 1;
  std::vector<Element> out;
  for (Element u = 0; u < m.size(); ++u) {
    bool ok = true;
    for (Element x : a) {
      if (!m.conj_defined(u, x) || !in_b[static_cast<std::size_t>(m.conjugate(u, x))]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(u);
  }
  return out;
}

std::vector<Element> normalizer_elements(const PartialGroup& m, const std::vector<Element>& s) {
  std::vector<Element> out;
  for (Element u : transporter_elements(m, s, s)) {
    // image must be all of s (bijectivity is automatic on a finite set)
    std::set<Element> img;
    for (Element x : s) img.insert(m.conjugate(u, x));
    if (img.size() == s.size()) out.push_back(u);
  }
  return out;
}

std::vector<Element> centralizer_elements(const PartialGroup& m, const std::vector<Element>& s) {
  std::vector<Element> out;
  for (Element u = 0; u < m.size(); ++u) {
    bool ok = true;
    for (Element x : s)
      if (!m.conj_defined(u, x) || m.conjugate(u, x) != x) {
        ok = false;
        break;
      }
    if (ok) out.push_back(u);
  }
  return out;
}

}  // namespace ploc
