#include "ploc/smallgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace ploc {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (mask_has(m, i)) out.push_back(i);
  return out;
}

struct SmallGroup::Cache {
  std::once_flag subgroups_once;
  std::vector<Mask> subgroups;
};

void SmallGroup::finish() {
  if (n_ <= 0 || table_.size() != static_cast<std::size_t>(n_) * n_)
    throw Error("group table has wrong size");
  for (Element x : table_)
    if (x < 0 || x >= n_) throw Error("group table entry out of range");

  // locate the two-sided unit
  unit_ = -1;
  for (Element e = 0; e < n_; ++e) {
    bool ok = true;
    for (Element a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      unit_ = e;
      break;
    }
  }
  if (unit_ < 0) throw NotAGroup("table has no unit");

  inv_.assign(static_cast<std::size_t>(n_), -1);
  for (Element a = 0; a < n_; ++a) {
    for (Element b = 0; b < n_; ++b)
      if (mul(a, b) == unit_ && mul(b, a) == unit_) {
        inv_[static_cast<std::size_t>(a)] = b;
        break;
      }
    if (inv_[static_cast<std::size_t>(a)] < 0) throw NotAGroup("table element has no inverse");
  }

  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b)
      for (Element c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw NotAGroup("table is not associative");

  cache_ = std::make_shared<Cache>();
}

SmallGroup SmallGroup::from_table(std::vector<Element> table) {
  SmallGroup g;
  std::size_t n = 0;
  while (n * n < table.size()) ++n;
  if (n * n != table.size()) throw Error("group table is not square");
  g.n_ = static_cast<int>(n);
  g.table_ = std::move(table);
  g.finish();
  return g;
}

SmallGroup SmallGroup::trivial() { return cyclic(1); }

SmallGroup SmallGroup::cyclic(int m) {
  SmallGroup g;
  g.n_ = m;
  g.table_.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g.table_[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
  g.finish();
  return g;
}

SmallGroup SmallGroup::klein4() {
  // indices: 0 = 1, 1/2/3 the involutions; xor table
  SmallGroup g;
  g.n_ = 4;
  g.table_.resize(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) g.table_[static_cast<std::size_t>(a) * 4 + b] = a ^ b;
  g.finish();
  return g;
}

SmallGroup SmallGroup::dihedral(int order) {
  if (order < 2 || order % 2) throw Error("dihedral order must be even");
  int m = order / 2;
  // element a*m + r encodes s^a r^r with r^m = 1, s^2 = 1, r s = s r^-1
  auto idx = [m](int a, int r) { return a * m + r; };
  SmallGroup g;
  g.n_ = order;
  g.table_.resize(static_cast<std::size_t>(order) * order);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int r1 = 0; r1 < m; ++r1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int r2 = 0; r2 < m; ++r2) {
          // (s^a1 r^r1)(s^a2 r^r2) = s^(a1+a2) r^(±r1 + r2)
          int a = (a1 + a2) % 2;
          int r = ((a2 ? m - r1 : r1) + r2) % m;
          g.table_[static_cast<std::size_t>(idx(a1, r1)) * order + idx(a2, r2)] = idx(a, r);
        }
  g.finish();
  return g;
}

SmallGroup SmallGroup::quaternion8() {
  // 0..7 = 1, -1, i, -i, j, -j, k, -k
  auto enc = [](int sign, int axis) { return axis * 2 + (sign < 0 ? 1 : 0); };
  auto mulq = [&](int x, int y) {
    int sx = (x % 2) ? -1 : 1, ax = x / 2;
    int sy = (y % 2) ? -1 : 1, ay = y / 2;
    // axes: 0 = 1, 1 = i, 2 = j, 3 = k
    static const int atab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int stab[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return enc(sx * sy * stab[ax][ay], atab[ax][ay]);
  };
  SmallGroup g;
  g.n_ = 8;
  g.table_.resize(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) g.table_[static_cast<std::size_t>(a) * 8 + b] = mulq(a, b);
  g.finish();
  return g;
}

SmallGroup SmallGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) throw Error("permutation has wrong degree");
    std::vector<char> seen(static_cast<std::size_t>(degree), 0);
    for (int i : p) {
      if (i < 0 || i >= degree || seen[static_cast<std::size_t>(i)]) throw Error("not a permutation");
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
  std::vector<int> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  auto compose = [degree](const std::vector<int>& a, const std::vector<int>& b) {
    // (a*b)(i) = a(b(i))
    std::vector<int> c(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(b[(std::size_t)i])];
    return c;
  };
  std::set<std::vector<int>> members{id};
  for (const auto& p : gens) members.insert(p);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(members.begin(), members.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (members.insert(compose(a, b)).second) grew = true;
  }
  std::vector<std::vector<int>> elems(members.begin(), members.end());  // sorted => deterministic
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  SmallGroup g;
  g.n_ = static_cast<int>(elems.size());
  g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
  for (int a = 0; a < g.n_; ++a)
    for (int b = 0; b < g.n_; ++b)
      g.table_[static_cast<std::size_t>(a) * g.n_ + b] =
          index[compose(elems[static_cast<std::size_t>(a)], elems[static_cast<std::size_t>(b)])];
  g.perms_ = std::move(elems);
  g.degree_ = degree;
  g.finish();
  return g;
}

SmallGroup SmallGroup::symmetric(int m) {
  if (m < 1 || m > 4) throw Error("symmetric(m) supported for m <= 4");
  if (m == 1) return trivial();
  std::vector<int> swap01(static_cast<std::size_t>(m));
  std::iota(swap01.begin(), swap01.end(), 0);
  std::swap(swap01[0], swap01[1]);
  std::vector<int> cyc(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % m;
  return from_permutations(m, {swap01, cyc});
}

SmallGroup SmallGroup::alternating4() {
  return from_permutations(4, {{1, 0, 3, 2}, {1, 2, 0, 3}});
}

SmallGroup SmallGroup::direct_product(const SmallGroup& a, const SmallGroup& b) {
  SmallGroup g;
  g.n_ = a.size() * b.size();
  g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
  auto enc = [&](Element x, Element y) { return x * b.size() + y; };
  for (Element x1 = 0; x1 < a.size(); ++x1)
    for (Element y1 = 0; y1 < b.size(); ++y1)
      for (Element x2 = 0; x2 < a.size(); ++x2)
        for (Element y2 = 0; y2 < b.size(); ++y2)
          g.table_[static_cast<std::size_t>(enc(x1, y1)) * g.n_ + enc(x2, y2)] =
              enc(a.mul(x1, x2), b.mul(y1, y2));
  g.finish();
  return g;
}

int SmallGroup::order_of(Element a) const {
  int k = 1;
  Element x = a;
  while (x != unit_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool SmallGroup::is_p_group(int p) const {
  int m = n_;
  while (m % p == 0) m /= p;
  return m == 1;
}

bool SmallGroup::abelian() const {
  for (Element a = 0; a < n_; ++a)
    for (Element b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Mask SmallGroup::all_mask() const {
  if (n_ > 64) throw Error("mask operations need at most 64 elements");
  return n_ == 64 ? ~Mask{0} : (mask_bit(n_) - 1);
}

Mask SmallGroup::closure(Mask seed) const {
  Mask m = seed | mask_bit(unit_);
  bool grew = true;
  while (grew) {
    grew = false;
    auto elems = mask_elements(m);
    for (int a : elems)
      for (int b : elems) {
        Element c = mul(a, b);
        if (!mask_has(m, c)) {
          m |= mask_bit(c);
          grew = true;
        }
      }
  }
  return m;
}

bool SmallGroup::is_subgroup_mask(Mask m) const {
  if (!mask_has(m, unit_)) return false;
  auto elems = mask_elements(m);
  for (int a : elems)
    for (int b : elems)
      if (!mask_has(m, mul(a, b))) return false;
  return true;
}

Mask SmallGroup::conj_mask(Mask m, Element g) const {
  Mask out = 0;
  for (int a : mask_elements(m)) out |= mask_bit(conj(a, g));
  return out;
}

Mask SmallGroup::left_conj_mask(Mask m, Element g) const { return conj_mask(m, inv(g)); }

Mask SmallGroup::normalizer(Mask h, Mask within) const {
  Mask out = 0;
  for (int g : mask_elements(within))
    if (conj_mask(h, g) == h) out |= mask_bit(g);
  return out;
}

Mask SmallGroup::centralizer(Mask h, Mask within) const {
  Mask out = 0;
  for (int g : mask_elements(within)) {
    bool central = true;
    for (int a : mask_elements(h))
      if (conj(a, g) != a) {
        central = false;
        break;
      }
    if (central) out |= mask_bit(g);
  }
  return out;
}

Mask SmallGroup::center_mask() const { return centralizer(all_mask(), all_mask()); }

bool SmallGroup::is_normal_in(Mask h, Mask g) const { return normalizer(h, g) == g; }

const std::vector<Mask>& SmallGroup::subgroups() const {
  std::call_once(cache_->subgroups_once, [this] {
    std::set<Mask> seen;
    std::vector<Mask> work{closure(0)};
    seen.insert(work[0]);
    while (!work.empty()) {
      Mask h = work.back();
      work.pop_back();
      for (Element g = 0; g < n_; ++g) {
        if (mask_has(h, g)) continue;
        Mask bigger = closure(h | mask_bit(g));
        if (seen.insert(bigger).second) work.push_back(bigger);
      }
    }
    cache_->subgroups.assign(seen.begin(), seen.end());
    std::sort(cache_->subgroups.begin(), cache_->subgroups.end(), [](Mask a, Mask b) {
      int pa = mask_size(a), pb = mask_size(b);
      return pa != pb ? pa < pb : a < b;
    });
  });
  return cache_->subgroups;
}

std::vector<Mask> SmallGroup::subgroups_of(Mask h) const {
  std::vector<Mask> out;
  for (Mask m : subgroups())
    if ((m & ~h) == 0) out.push_back(m);
  return out;
}

int SmallGroup::p_part(int n, int p) {
  int q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

std::vector<Mask> SmallGroup::sylow_subgroups(int p) const {
  int target = p_part(n_, p);
  std::vector<Mask> out;
  for (Mask m : subgroups())
    if (mask_size(m) == target) out.push_back(m);
  return out;
}

Mask SmallGroup::first_sylow(int p) const {
  auto syl = sylow_subgroups(p);
  if (syl.empty()) throw Error("no Sylow subgroup found");
  return syl.front();
}

Mask SmallGroup::op_core(int p) const {
  Mask acc = all_mask();
  for (Mask m : sylow_subgroups(p)) acc &= m;
  return acc;
}

Mask SmallGroup::sylow_above(Mask seed, Mask within, int p) const {
  int target = p_part(mask_size(closure(within)), p);
  Mask cur = closure(seed);
  if (mask_size(cur) != p_part(mask_size(cur), p)) throw Error("sylow_above: seed is not a p-group");
  while (mask_size(cur) < target) {
    Mask nw = normalizer(cur, within);
    bool grew = false;
    for (int g : mask_elements(nw)) {
      if (mask_has(cur, g)) continue;
      if (order_of(g) != p_part(order_of(g), p)) continue;
      Mask cand = closure(cur | mask_bit(g));
      if (mask_size(cand) == p_part(mask_size(cand), p)) {
        cur = cand;
        grew = true;
        break;
      }
    }
    if (!grew) throw Error("sylow_above: cannot grow p-subgroup");
  }
  return cur;
}

SmallGroup SmallGroup::subgroup_group(Mask h, std::vector<Element>* elements) const {
  if (!is_subgroup_mask(h)) throw NotASubgroup("mask is not a subgroup");
  auto elems = mask_elements(h);
  std::vector<int> local(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);
  SmallGroup g;
  g.n_ = static_cast<int>(elems.size());
  g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      g.table_[a * elems.size() + b] = local[static_cast<std::size_t>(mul(elems[a], elems[b]))];
  g.finish();
  if (elements) {
    elements->assign(elems.begin(), elems.end());
  }
  return g;
}

SmallGroup SmallGroup::quotient(Mask normal, std::vector<int>* coset_of) const {
  if (!is_subgroup_mask(normal) || !is_normal_in(normal, all_mask()))
    throw NotAGroup("quotient needs a normal subgroup");
  std::vector<int> coset(static_cast<std::size_t>(n_), -1);
  std::vector<Element> reps;
  for (Element g = 0; g < n_; ++g) {
    if (coset[static_cast<std::size_t>(g)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : mask_elements(normal)) coset[static_cast<std::size_t>(mul(g, x))] = id;
  }
  SmallGroup q;
  q.n_ = static_cast<int>(reps.size());
  q.table_.resize(static_cast<std::size_t>(q.n_) * q.n_);
  for (int a = 0; a < q.n_; ++a)
    for (int b = 0; b < q.n_; ++b)
      q.table_[static_cast<std::size_t>(a) * q.n_ + b] =
          coset[static_cast<std::size_t>(mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
  q.finish();
  if (coset_of) *coset_of = std::move(coset);
  return q;
}

}  // namespace ploc
