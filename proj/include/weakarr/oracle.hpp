#pragma once

// Brute-force ground truth for small instances: finite-model enumeration,
// model evaluation and random formula generation.  Shares nothing with the
// solver beyond the term and model representations.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "weakarr/model.hpp"
#include "weakarr/term.hpp"

namespace weakarr::oracle {

/// Instance exceeds the enumeration caps.
class CapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Caps {
  unsigned arrays = 4;         // array variables
  unsigned index_terms = 4;    // distinct terms of index sorts
  unsigned element_terms = 3;  // element variables and applications
  unsigned stores = 4;         // distinct store terms
  std::uint64_t max_interpretations = 50'000'000;
};

struct Bounds {
  std::uint32_t index_carrier = 0;
  std::uint32_t element_carrier = 0;
};

struct CheckResult {
  bool sat = false;
  /// Satisfying interpretation, present iff sat.
  std::optional<Model> witness;
  std::uint64_t interpretations = 0;
  Bounds bounds;
};

/// Carrier bounds: index sorts get #index terms + #array vars + 1 elements,
/// element sorts get #element terms (selects included) + #array vars + 2.
Bounds carrier_bounds(const TermStore& store, TermId phi);

/// Decides φ by enumerating interpretations over carriers up to
/// `carrier_bounds`.  Arrays are total maps; positions that no index term
/// denotes are enumerated up to which array variables agree on them.
/// Throws CapError past `caps`.
CheckResult check(const TermStore& store, TermId phi, const Caps& caps = {});

/// Truth value of Boolean φ under `m`.  Array equality is extensional over an
/// unbounded index sort.  Throws std::invalid_argument on an unassigned symbol.
bool evaluate(const TermStore& store, const Model& m, TermId phi);

enum class Profile : std::uint8_t { Tiny, Commute, Swap, ExtChain };

std::string_view profile_name(Profile p);
std::optional<Profile> parse_profile(std::string_view name);

/// Random conjunction of 3-8 literals over at most 3 arrays, 3 indices,
/// 2 elements and 4 stores nested at most 3 deep, optionally with a unary
/// function on indices.  Deterministic in `seed`.
TermId generate(TermStore& store, std::uint64_t seed);

struct FamilyInstance {
  TermId formula;
  bool expect_sat = false;
};

/// Benchmark family instance of size n (nested stores for commute, swaps for
/// swap, chain length for ext-chain).  `valid` gives the negated validity
/// (unsat); otherwise a guard is dropped and the instance is sat.
FamilyInstance family(TermStore& store, Profile p, unsigned n, bool valid = true);

}  // namespace weakarr::oracle
