#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "radfact/core.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/ideal_systems.hpp"
#include "radfact/parallel.hpp"

namespace radfact {

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // seconds; 0 means no limit
};

struct PropsOptions {
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
};

inline constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int number, const PropsOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const PropsOptions& opt = {});

// One suite per module, each over the shipped instances.
std::vector<SuiteResult> run_module_suites(const PropsOptions& opt = {});

// Sampled lattice and monoid axioms for backends without tables: commutativity, associativity,
// identity, distributivity over joins, absorption and order compatibility.
std::vector<CheckResult> check_axioms_on_window(const Lattice& lattice, const TestWindow& window,
                                                std::size_t inner = 30);

// Single-entry corruptions that a validator must catch.
struct TableMutation {
  LatticeTables tables;
  std::string description;
};
// Cycles through: an asymmetric mul entry, a reversed strict leq entry, a cleared diagonal entry.
TableMutation mutate_tables(const LatticeTables& valid, std::size_t kind, std::mt19937_64& rng);

struct ClosureMutation {
  std::vector<Subset> table;
  std::string description;
};
// kind 0 drops an element of X from X_r (breaks (A)); kind 1 adds a point outside X_r to the
// closure of a non-closed X (breaks (B) against Y = X_r).
ClosureMutation mutate_closure(const WeakIdealSystem& valid, std::size_t kind, std::mt19937_64& rng);

// Whether the ideals of Z/n under the d-system match materialize_from_divisors(n) once every
// ideal is named by the gcd of its elements with n; explains the first mismatch otherwise.
bool matches_divisor_lattice(const IdealLattice& ideals, std::int64_t n, std::string* why = nullptr);

}  // namespace radfact
