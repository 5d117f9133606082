#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radfact/lattice.hpp"
#include "radfact/parallel.hpp"

namespace radfact {

// Which list of equivalent conditions to evaluate: the abstract lattice version, the integral
// domain version (adds the representation condition), or the monoid ideal-system version.
enum class Flavor { Lattice, Domain, Monoid };

std::string to_string(Flavor f);
// Accepts "lattice", "domain", "monoid", optionally followed by "-<suffix>".
Flavor parse_flavor(std::string_view text);

// True: proven on the whole carrier. WindowVerified: held on every window element.
// False: a concrete counterexample. Inconclusive: neither within the budgets.
enum class Verdict { True, WindowVerified, False, Inconclusive };
std::string to_string(Verdict v);

struct ConditionResult {
  int number = 0;
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ElemRef> witness;
  std::string detail;

  bool holds() const { return verdict == Verdict::True || verdict == Verdict::WindowVerified; }
};

struct ConditionReport {
  std::string lattice;
  Flavor flavor = Flavor::Lattice;
  std::vector<ConditionResult> conditions;
  bool agreement = false;  // every evaluated (non-inconclusive) condition has the same truth value
  std::string window_note;
  std::vector<std::string> notes;

  bool all_hold() const;
  bool all_fail() const;
};

struct SpOptions {
  std::size_t window = 60;
  std::size_t inner = 40;  // quantifier domain for the element predicates
  std::uint64_t seed = 1;
  unsigned max_steps = 64;
  std::size_t uniqueness_bound = 6;
  Exec exec = Exec::Parallel;
};

// HypothesisViolated when the lattice is not (window-verified) a principally generated
// C-lattice domain, or the flavor does not match where the lattice comes from.
ConditionReport check_sp_conditions(const LatticeHandle& lattice, Flavor flavor,
                                    const SpOptions& opt = {});

nlohmann::json condition_report_to_json(const Lattice& lattice, const ConditionReport& report);

}  // namespace radfact
