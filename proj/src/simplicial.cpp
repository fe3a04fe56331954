#include "ploc/simplicial.hpp"

#include <algorithm>

namespace ploc {

bool Simplex::degenerate() const {
  for (Element x : word)
    if (x == owner.unit()) return true;
  return false;
}

Simplex make_simplex(const PartialGroup& owner, Word word) {
  if (!owner.accepts(word)) throw DomainViolation("word rejected by the oracle: " + word_to_string(word));
  return Simplex{owner, std::move(word)};
}

Simplex face(const Simplex& s, int i) {
  const int n = s.dimension();
  if (n < 1 || i < 0 || i > n) throw IndexOutOfRange("face index out of range");
  Word w;
  w.reserve(static_cast<std::size_t>(n) - 1);
  if (i == 0) {
    w.assign(s.word.begin() + 1, s.word.end());
  } else if (i == n) {
    w.assign(s.word.begin(), s.word.end() - 1);
  } else {
    w.assign(s.word.begin(), s.word.begin() + i - 1 + 1);
    w.back() = s.owner.product({s.word[static_cast<std::size_t>(i - 1)], s.word[static_cast<std::size_t>(i)]});
    w.insert(w.end(), s.word.begin() + i + 1, s.word.end());
  }
  return make_simplex(s.owner, std::move(w));
}

Simplex degeneracy(const Simplex& s, int i) {
  const int n = s.dimension();
  if (i < 0 || i > n) throw IndexOutOfRange("degeneracy index out of range");
  Word w(s.word);
  w.insert(w.begin() + i, s.owner.unit());
  return make_simplex(s.owner, std::move(w));
}

Simplex front_face(const Simplex& s, int r) {
  if (r < 0 || r > s.dimension()) throw IndexOutOfRange("front-face index out of range");
  return make_simplex(s.owner, Word(s.word.begin(), s.word.begin() + r));
}

Simplex back_face(const Simplex& s, int r) {
  if (r < 0 || r > s.dimension()) throw IndexOutOfRange("back-face index out of range");
  return make_simplex(s.owner, Word(s.word.end() - r, s.word.end()));
}

Element product_op(const Simplex& s) { return s.owner.product(s.word); }

Simplex product_op_rs(const Simplex& s, int r) {
  const int n = s.dimension();
  if (r < 0 || r > n) throw IndexOutOfRange("split out of range");
  Element a = s.owner.product(std::span<const Element>(s.word.data(), static_cast<std::size_t>(r)));
  Element b = s.owner.product(std::span<const Element>(s.word.data() + r, static_cast<std::size_t>(n - r)));
  return make_simplex(s.owner, Word{a, b});
}

Word enumerate_edges(const Simplex& s) {
  // E_n = ((F_{n-1}, B_1), then recurse on the front part)
  Word out(static_cast<std::size_t>(s.dimension()));
  Simplex cur = s;
  for (int k = s.dimension(); k >= 1; --k) {
    out[static_cast<std::size_t>(k - 1)] = back_face(cur, 1).word[0];
    cur = front_face(cur, k - 1);
  }
  return out;
}

Word enumerate_edges_alt(const Simplex& s) {
  // the (F_1, B_{n-1}) route of the same operator
  Word out;
  out.reserve(static_cast<std::size_t>(s.dimension()));
  Simplex cur = s;
  for (int k = s.dimension(); k >= 1; --k) {
    out.push_back(front_face(cur, 1).word[0]);
    cur = back_face(cur, k - 1);
  }
  return out;
}

Simplex anti_involution(const Simplex& s) {
  return make_simplex(s.owner, s.owner.inverse_word(s.word));
}

Word PartialGroupMorphism::map_word(std::span<const Element> w) const {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = on_elements[static_cast<std::size_t>(w[i])];
  return out;
}

bool PartialGroupMorphism::is_bijective() const {
  if (source.size() != target.size()) return false;
  std::vector<char> hit(static_cast<std::size_t>(target.size()), 0);
  for (Element y : on_elements) {
    if (hit[static_cast<std::size_t>(y)]) return false;
    hit[static_cast<std::size_t>(y)] = 1;
  }
  return true;
}

std::optional<Word> morphism_violation(const std::vector<Element>& f, const PartialGroup& source,
                                       const PartialGroup& target, int bound, kernels::Mode mode) {
  if (static_cast<int>(f.size()) != source.size()) throw Error("morphism map has wrong size");
  for (Element y : f)
    if (y < 0 || y >= target.size()) throw IndexOutOfRange("morphism image out of range");
  if (f[static_cast<std::size_t>(source.unit())] != target.unit()) return Word{source.unit()};
  for (Element x = 0; x < source.size(); ++x)
    if (f[static_cast<std::size_t>(source.inv(x))] != target.inv(f[static_cast<std::size_t>(x)]))
      return Word{x};

  for (int k = 2; k <= bound; ++k) {
    const auto& level = source.words(k);
    long bad = kernels::first_index(
        static_cast<long>(level.size()),
        [&](long i) {
          const Word& w = level[static_cast<std::size_t>(i)];
          Word img(w.size());
          for (std::size_t j = 0; j < w.size(); ++j) img[j] = f[static_cast<std::size_t>(w[j])];
          if (!target.accepts(img)) return true;
          auto pw = source.try_product(w);
          auto pi = target.try_product(img);
          if (!pw || !pi) return true;
          return f[static_cast<std::size_t>(*pw)] != *pi;
        },
        mode);
    if (bad >= 0) return level[static_cast<std::size_t>(bad)];
  }
  return std::nullopt;
}

PartialGroupMorphism validate_morphism(std::vector<Element> on_elements, const PartialGroup& source,
                                       const PartialGroup& target, int bound, kernels::Mode mode) {
  if (auto w = morphism_violation(on_elements, source, target, bound, mode))
    throw InvalidMorphism("not a morphism of partial groups, witness " + word_to_string(*w));
  return PartialGroupMorphism{source, target, std::move(on_elements)};
}

PartialGroupMorphism identity_morphism(const PartialGroup& m) {
  std::vector<Element> id(static_cast<std::size_t>(m.size()));
  for (Element x = 0; x < m.size(); ++x) id[static_cast<std::size_t>(x)] = x;
  return PartialGroupMorphism{m, m, std::move(id)};
}

PartialGroupMorphism compose(const PartialGroupMorphism& f, const PartialGroupMorphism& g) {
  if (!g.target.same_object(f.source)) throw Error("morphisms not composable");
  std::vector<Element> h(g.on_elements.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = f.on_elements[static_cast<std::size_t>(g.on_elements[i])];
  return PartialGroupMorphism{g.source, f.target, std::move(h)};
}

PartialSubgroup kernel(const PartialGroupMorphism& f) {
  std::vector<Element> members;
  for (Element x = 0; x < f.source.size(); ++x)
    if (f(x) == f.target.unit()) members.push_back(x);
  PartialSubgroup k = make_partial_subgroup(f.source, std::move(members));
  k.is_normal = is_partial_normal(f.source, k);
  return k;
}

}  // namespace ploc
