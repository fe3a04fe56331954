#pragma once

// Input parsing, the command-line surface, and report emission. Machine
// output is line-oriented "key value" records; identical inputs and flags
// give byte-identical reports.

#include <iosfwd>
#include <string>

#include "ploc/locality.hpp"

namespace ploc {

inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { Text, Kv };

struct Job {
  std::string verb;                // e.g. "check-axioms", "locality from-group"
  std::vector<std::string> args;   // positional inputs
  int bound = 4;
  long budget = 1 << 22;
  int aut_budget = 24;
  unsigned seed = 1;
  OutputFormat format = OutputFormat::Text;
  std::string action = "trivial";  // classify/obstruction flag
  int prime = 2;
  std::string out_path;            // for artifacts like derived pair files
};

/// Exit status: 0 = success, 1 = a check failed (witnesses printed),
/// 2 = input error.
int run(const Job& job, std::ostream& out, std::ostream& err);

// ---- parsing ---------------------------------------------------------------

/// A partial group from a builtin name (z2, z3, z4, z6, klein, s3, s4, a4,
/// d8, q8) or a file in the `group permutation`, `group table`, or
/// `partial table` grammar.
PartialGroup parse_partial_group(const std::string& ref);

/// A locality reference "<group-ref>:<p>:<policy>" with policy one of
/// all | centric | centric-radical.
Locality parse_locality(const std::string& ref);

/// Twisting-pair file: `pair <fibre-ref> <base-ref>` then `t <g> <aut-index>`
/// and `eta <g> <h> <element>` lines. Automorphism indices refer to the
/// deterministic enumeration printed by `invariants`.
struct ParsedPair {
  PartialGroup fibre;
  PartialGroup base;
  std::string fibre_ref;
  std::string base_ref;
  std::vector<int> t;
  std::vector<std::array<Element, 3>> eta;
};
ParsedPair parse_pair_file(const std::string& path);

std::string fnv1a_digest(const std::string& bytes);

}  // namespace ploc
