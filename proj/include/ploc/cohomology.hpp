#pragma once

// Normalized twisted cochains of a finite partial group in degrees <= 4,
// the obstruction 3-cocycle of an outer action, and the H^2 classification
// count for extensions.

#include <map>
#include <set>

#include "ploc/twist.hpp"

namespace ploc {

/// C^n = functions on the accepted degree-n words with no unit letters,
/// valued in a finite abelian group, extended by zero to degenerate words.
struct CochainComplex {
  PartialGroup base;
  SmallGroup coeff;                          // abelian, written additively
  std::vector<std::vector<Element>> action;  // per base element, automorphism of coeff
  int max_degree = 4;
  std::vector<std::vector<Word>> basis;      // degree -> sorted nondegenerate words
  std::vector<std::map<Word, int>> index;

  long dim(int degree) const { return static_cast<long>(basis[static_cast<std::size_t>(degree)].size()); }
  double cochain_count(int degree) const;
};

using Cochain = std::vector<Element>;

CochainComplex make_cochain_complex(const PartialGroup& base, SmallGroup coeff,
                                    std::vector<std::vector<Element>> action, int max_degree = 4);

/// Twisted simplicial differential:
/// (dc)(x_0..x_n) = x_0 . c(x_1..x_n) + sum (-1)^i c(..x_{i-1} x_i..) + (-1)^{n+1} c(x_0..x_{n-1}).
Cochain differential(const CochainComplex& cc, int degree, const Cochain& c);

Cochain zero_cochain(const CochainComplex& cc, int degree);
bool is_cocycle(const CochainComplex& cc, int degree, const Cochain& c);

/// All cochains of a degree in mixed-radix order; throws BudgetExceeded when
/// the space is larger than the budget.
std::vector<Cochain> all_cochains(const CochainComplex& cc, int degree, long budget = 1 << 22);
std::vector<Cochain> cocycles(const CochainComplex& cc, int degree, long budget = 1 << 22,
                              kernels::Mode mode = kernels::Mode::Parallel);
std::set<Cochain> coboundaries(const CochainComplex& cc, int degree, long budget = 1 << 22);

long count_cocycles(const CochainComplex& cc, int degree, long budget = 1 << 22,
                    kernels::Mode mode = kernels::Mode::Parallel);
/// |H^degree| = |Z| / |B| by exhaustive enumeration.
long cohomology_order(const CochainComplex& cc, int degree, long budget = 1 << 22,
                      kernels::Mode mode = kernels::Mode::Parallel);

/// Whether target = dc for some c one degree down; the witness is returned.
std::optional<Cochain> coboundary_preimage(const CochainComplex& cc, int degree, const Cochain& target,
                                           long budget = 1 << 22, kernels::Mode mode = kernels::Mode::Parallel);

// ---- outer actions and obstructions ----------------------------------------

/// An outer action of the base on the fibre: base element -> outer class
/// index in the fibre automorphism data. Must be a morphism into Out.
struct OuterAction {
  PartialGroup fibre;
  PartialGroup base;
  AutGroup fibre_aut;
  Normalizer fibre_norm;
  std::vector<int> eps;  // per base element, an outer class index
};

OuterAction make_outer_action(const PartialGroup& fibre, const PartialGroup& base, std::vector<int> eps);
OuterAction trivial_outer_action(const PartialGroup& fibre, const PartialGroup& base);

/// Center of the fibre as an abelian coefficient group, plus the eps-induced
/// action on it (inner automorphisms are checked to act trivially).
struct CenterCoefficients {
  SmallGroup coeff;
  std::vector<Element> center_elements;       // fibre elements, index-aligned with coeff
  std::vector<std::vector<Element>> action;   // per base element
  std::vector<int> fibre_to_coeff;            // -1 outside the center
};

CenterCoefficients center_coefficients(const OuterAction& act);

struct Obstruction {
  Cochain kappa;
  CochainComplex complex;  // degree-3 home of kappa
  bool is_cocycle = false;
  bool is_coboundary = false;
  // the chosen lifts, kept for reproducibility
  std::vector<int> lifts;                 // automorphism index per base element
  std::vector<Element> eta;               // chosen eta per base pair, -1 off-domain
};

/// Steps (1)-(3): choose lifts, choose eta realizing the inner discrepancy,
/// read off the failure of the cocycle formula as a Z(M')-valued 3-cochain.
/// `perturbation` deterministically permutes the choices (0 = canonical).
Obstruction obstruction_class(const OuterAction& act, unsigned perturbation = 0, long budget = 1 << 22);

struct ClassificationReport {
  std::vector<TwistingPair> valid_pairs;
  std::vector<std::vector<int>> classes;  // partition of valid pair indices
  long h2 = -1;
  bool counts_match = false;
  long candidates_examined = 0;
};

/// Exhaustive search over twisting pairs realizing the outer action, grouped
/// into strong-equivalence classes, with the H^2 count alongside.
ClassificationReport classify_extensions(const OuterAction& act, long budget = 1 << 22,
                                         kernels::Mode mode = kernels::Mode::Parallel);

}  // namespace ploc
