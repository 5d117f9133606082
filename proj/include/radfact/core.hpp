#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radfact/lattice.hpp"
#include "radfact/parallel.hpp"

namespace radfact {

// Finite tables at or below this size are quantified exhaustively.
inline constexpr std::size_t kExhaustiveLimit = 64;

// A finite sample of a lattice used to quantify "for all" statements.
// Infinite backends seed it and close it under mul/join/meet until the budget is hit.
struct TestWindow {
  std::vector<ElemRef> sample;
  bool exhaustive = false;
  std::string note;

  // The first n elements (seeds come first), used for inner quantifiers.
  std::span<const ElemRef> head(std::size_t n) const {
    return {sample.data(), std::min(n, sample.size())};
  }
};

TestWindow make_window(const Lattice& lattice, std::size_t budget, std::uint64_t seed);
// All elements for small finite lattices, otherwise make_window.
TestWindow default_window(const Lattice& lattice, std::size_t budget = 200,
                          std::uint64_t seed = 1);

ElemRef join_all(const Lattice& lattice, std::span<const ElemRef> xs);
ElemRef meet_all(const Lattice& lattice, std::span<const ElemRef> xs);

// Definitional forms, quantified over a domain.
ElemRef residual_by_definition(const Lattice& lattice, const ElemRef& y, const ElemRef& x,
                               std::span<const ElemRef> domain);
ElemRef radical_by_powers(const Lattice& lattice, const ElemRef& x,
                          std::span<const ElemRef> domain, unsigned max_power = 64);
ElemRef radical_by_primes(const Lattice& lattice, const ElemRef& x,
                          std::span<const ElemRef> primes);
ElemRef localize_by_definition(const Lattice& lattice, const ElemRef& x, const ElemRef& p,
                               std::span<const ElemRef> domain);
// Whether some y^n <= x with n <= max_power (powers are decreasing, so this stops early).
bool some_power_below(const Lattice& lattice, const ElemRef& y, const ElemRef& x,
                      unsigned max_power = 64);

struct Flag {
  bool value = true;
  std::vector<ElemRef> witness;  // filled when value is false
};

struct PredicateRecord {
  Flag cancellative;
  Flag weak_meet_principal;
  Flag meet_principal;
  Flag weak_join_principal;
  Flag join_principal;
  Flag ell_principal;
  Flag ell_invertible;
  Flag compact;
  Flag ell_radical;
  Flag ell_prime;
  Flag maximal;
  bool window_verified = false;
};

PredicateRecord element_predicates(const Lattice& lattice, const ElemRef& x,
                                   std::span<const ElemRef> domain, bool exhaustive);
// Exhaustive on finite lattices; CapabilityMissing otherwise.
PredicateRecord element_predicates(const Lattice& lattice, const ElemRef& x);

struct LatticePredicates {
  Flag modular;
  Flag domain;
  Flag principally_generated;
  bool window_verified = false;
};

LatticePredicates lattice_predicates(const Lattice& lattice, std::span<const ElemRef> domain,
                                     bool exhaustive);
LatticePredicates lattice_predicates(const Lattice& lattice);

// Longest chain of primes (as a list, smallest first) and its length minus one.
std::vector<ElemRef> longest_prime_chain(const Lattice& lattice,
                                         std::span<const ElemRef> context = {});
int dimension(const Lattice& lattice, std::span<const ElemRef> context = {});

// Primes above x that are minimal among the primes above x.
std::vector<ElemRef> minimal_primes_over(const Lattice& lattice, const ElemRef& x,
                                         std::span<const ElemRef> context = {});

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;
};

struct SuiteOptions {
  std::size_t inner = 48;   // size of the inner quantifier domain; 0 means the whole domain
  std::size_t pairs = 10;   // elements used for the product-closure checks
  unsigned max_power = 8;   // how many powers of a maximal element to test
  bool exhaustive = false;  // the domain is the whole carrier
  Exec exec = Exec::Parallel;
};

// Property suites; each check quantifies over the given domain.
CheckResult check_residual_adjunction(const Lattice& lattice, std::span<const ElemRef> domain,
                                      const SuiteOptions& opt = {});
CheckResult check_bottom_annihilates(const Lattice& lattice, std::span<const ElemRef> domain);
CheckResult check_radical_forms(const Lattice& lattice, std::span<const ElemRef> domain,
                                const SuiteOptions& opt = {});
std::vector<CheckResult> check_localization_laws(const Lattice& lattice,
                                                 std::span<const ElemRef> domain,
                                                 const SuiteOptions& opt = {});
CheckResult check_minimal_prime_localization(const Lattice& lattice,
                                             std::span<const ElemRef> domain);
std::vector<CheckResult> check_principal_closure(const Lattice& lattice,
                                                 std::span<const ElemRef> domain,
                                                 const SuiteOptions& opt = {});
CheckResult check_modular_invertibility(const Lattice& lattice, std::span<const ElemRef> domain,
                                        const SuiteOptions& opt = {});

std::vector<CheckResult> run_core_suite(const Lattice& lattice, const TestWindow& window,
                                        const SuiteOptions& opt = {});

}  // namespace radfact
