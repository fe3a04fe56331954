#pragma once

// Finite partial groups: a carrier with unit, involutive inversion, a binary
// partial product, and a word-domain membership oracle. Four representation
// kinds share this interface; the word calculus on top (products as left
// folds, conjugation, normalizers) lives here as free functions and methods.

#include <array>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ploc/errors.hpp"
#include "ploc/kernels.hpp"
#include "ploc/smallgroup.hpp"
#include "ploc/word.hpp"

namespace ploc {

enum class RepKind { GroupLike, Objective, Twisted, ExplicitTable };

namespace detail {

struct Rep {
  virtual ~Rep() = default;
  virtual int size() const = 0;
  virtual Element unit() const = 0;
  virtual Element inv(Element x) const = 0;
  virtual RepKind kind() const = 0;
  /// Full word-domain oracle.
  virtual bool accepts(std::span<const Element> w) const = 0;
  /// Product of a length-2 word; called only when accepts({a,b}).
  virtual Element pair_product(Element a, Element b) const = 0;
};

}  // namespace detail

class PartialGroup {
 public:
  PartialGroup() = default;
  explicit PartialGroup(std::shared_ptr<const detail::Rep> rep);

  bool valid() const { return impl_ != nullptr; }
  int size() const;
  Element unit() const;
  Element inv(Element x) const;
  RepKind kind() const;

  bool accepts(std::span<const Element> w) const;
  bool accepts(std::initializer_list<Element> w) const;
  bool defined2(Element a, Element b) const;

  /// Product of an accepted length-2 word; DomainViolation otherwise.
  Element prod2(Element a, Element b) const;
  /// Pi(w): left fold of prod2 over an oracle-accepted word.
  Element product(std::span<const Element> w) const;
  Element product(std::initializer_list<Element> w) const;
  std::optional<Element> try_product(std::span<const Element> w) const;
  std::optional<Element> try_product(std::initializer_list<Element> w) const;

  /// (x_1,...,x_n) -> (x_n^-1,...,x_1^-1)
  Word inverse_word(std::span<const Element> w) const;

  // Conjugation. Right: x^u = Pi(u^-1, x, u). Left: ux u^-1 = Pi(u, x, u^-1).
  bool conj_defined(Element u, Element x) const;
  Element conjugate(Element u, Element x) const;
  bool left_conj_defined(Element u, Element x) const;
  Element left_conjugate(Element u, Element x) const;
  /// D(u) = {x : (u^-1, x, u) accepted}
  std::vector<Element> conj_domain(Element u) const;

  /// All accepted words of exactly this length, lexicographic. Cached.
  const std::vector<Word>& words(int len) const;
  /// Accepted words of length 1..maxlen concatenated, lexicographic per length.
  std::vector<Word> words_up_to(int maxlen) const;

  const detail::Rep& rep() const { return *rep_; }
  bool same_object(const PartialGroup& other) const { return impl_ == other.impl_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  const detail::Rep* rep_ = nullptr;  // borrowed from impl_
};

// ---- constructors -------------------------------------------------------

/// A finite group as a partial group: every word is accepted.
PartialGroup make_group_like(const SmallGroup& g);
/// Access the group table behind a GroupLike partial group.
const SmallGroup& group_of(const PartialGroup& m);

struct ExplicitTableSpec {
  int size = 0;
  Element unit = 0;
  std::vector<Element> inv;                 // involution
  std::vector<std::array<Element, 3>> prod; // accepted pairs (a, b, ab)
  std::vector<Word> accepted;               // accepted words of length >= 3
  int max_len = 4;                          // words longer than this are rejected
};

/// Bounded-degree explicit table, for synthetic and negative tests.
PartialGroup make_explicit_table(ExplicitTableSpec spec);

// Built-in corpus.
PartialGroup make_cyclic(int m);
PartialGroup make_klein4();
PartialGroup make_dihedral8();
PartialGroup make_quaternion8();
PartialGroup make_symmetric(int m);
PartialGroup make_alternating4();
PartialGroup make_from_permutations(int degree, const std::vector<std::vector<int>>& gens);

// ---- word-calculus helpers ----------------------------------------------

/// Subset flags of a candidate partial subgroup.
struct PartialSubgroup {
  PartialGroup parent;
  std::vector<Element> members;  // sorted
  bool is_subgroup = false;      // D(H) = W(H), checked up to a bound
  bool is_normal = false;
  int bound = 0;
};

/// Closure checks for a member set: inversion, products of accepted words.
PartialSubgroup make_partial_subgroup(const PartialGroup& m, std::vector<Element> members, int bound = 4);

/// Def npg: x^g in N whenever x in N and x in D(g).
bool is_partial_normal(const PartialGroup& m, const PartialSubgroup& n);

/// Subgroups H (D(H) = W(H)) of a finite partial group, as sorted member lists.
std::vector<std::vector<Element>> enumerate_subgroups(const PartialGroup& m);

/// Group structure on a subgroup of a partial group (throws NotASubgroup).
SmallGroup subgroup_as_group(const PartialGroup& m, const std::vector<Element>& members,
                             std::vector<Element>* elements = nullptr);

/// The sub-partial-group on a member subset: domain is the ambient domain
/// restricted to words over the members. Products must stay inside.
PartialGroup restrict_to(const PartialGroup& m, const std::vector<Element>& members);
/// The ambient element behind a restricted carrier index (identity if the
/// partial group is not a restriction).
Element restriction_ambient_of(const PartialGroup& m, Element local);

/// N_M(A, B) = {u : A ⊆ D(u), A^u ⊆ B} for element sets A, B.
std::vector<Element> transporter_elements(const PartialGroup& m, const std::vector<Element>& a,
                                          const std::vector<Element>& b);
/// N_M(S) = {u : S^u = S}.
std::vector<Element> normalizer_elements(const PartialGroup& m, const std::vector<Element>& s);
/// C_M(S) = {u : x^u = x for all x in S}.
std::vector<Element> centralizer_elements(const PartialGroup& m, const std::vector<Element>& s);

}  // namespace ploc
