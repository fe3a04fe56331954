#pragma once

// Exhaustive verification of the partial-group axioms and the derived word
// laws, on all accepted words up to a length bound. Failures are report
// entries with a counterexample word, never exceptions.

#include <string>
#include <vector>

#include "ploc/kernels.hpp"
#include "ploc/partial_group.hpp"

namespace ploc {

enum class Law {
  DomainLength1,      // every word of length <= 1 is accepted
  DomainSubword,      // accepted words are closed under contiguous subwords
  P1Identity,         // Pi restricts to the identity on length-1 words
  P1UnitEmpty,        // Pi(empty) = unit and unit is a two-sided identity
  P2Contraction,      // u v w accepted => u Pi(v) w accepted with equal product
  I1Inverse,          // u accepted => (u^-1, u) accepted with product 1
  ChMultiplicative,   // 2.2 (i)
  ChAssociative,      // 2.2 (ii)
  ChUnitInsertion,    // 2.2 (iii)
  ChInvAbsorb,        // 2.2 (iv)
  ChLeftCancel,       // 2.2 (v)
  ChRightCancel,      // 2.2 (v), mirrored
  ChInversion,        // 2.2 (vi)
  ChLeftUncancel,     // 2.2 (vii)
  ChRightUncancel,    // 2.2 (vii), mirrored
  FoldIndependence,   // every bracketing of an accepted word agrees
  InvolutiveInverse,  // (x^-1)^-1 = x
};

const char* law_name(Law law);

struct LawResult {
  Law law;
  bool pass = true;
  Word witness;        // offending word (empty if pass)
  std::string detail;  // human-readable failure note
  long checked = 0;    // number of instances examined
};

struct AxiomReport {
  int bound = 4;
  std::vector<LawResult> laws;
  bool all_pass() const {
    for (const auto& l : laws)
      if (!l.pass) return false;
    return true;
  }
  const LawResult& operator[](Law law) const;
};

AxiomReport check_axioms(const PartialGroup& m, int bound = 4,
                         kernels::Mode mode = kernels::Mode::Parallel);

std::string format_report(const AxiomReport& r);

}  // namespace ploc
