#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radfact/core.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/parallel.hpp"

namespace radfact {

// A subset of a finite monoid as a bitmask over element indices.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxMonoidSize = 64;
// Closure maps are materialised (and validated exhaustively) up to this size.
inline constexpr std::size_t kMaterializeLimit = 12;

struct MonoidReport {
  std::vector<AxiomResult> axioms;  // size, commutative, associative, identity
  bool ok() const;
  const AxiomResult* first_failure() const;
};

class FiniteMonoid {
 public:
  FiniteMonoid(std::string name, std::vector<std::string> labels,
               std::vector<std::vector<int>> cayley,
               std::optional<std::vector<std::vector<int>>> addition = std::nullopt);

  static FiniteMonoid from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
  // Z/n under multiplication; with_addition also records the ring addition (for d).
  static FiniteMonoid zmod(std::size_t n, bool with_addition);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return cayley_[a][b]; }
  bool has_addition() const { return addition_.has_value(); }
  std::size_t add(std::size_t a, std::size_t b) const { return (*addition_)[a][b]; }
  // Valid only after validate() passed.
  std::size_t identity() const { return identity_; }
  Subset all() const { return size() == 64 ? ~Subset{0} : (Subset{1} << size()) - 1; }
  Subset zeros() const { return zeros_; }
  std::size_t additive_zero() const;

  Subset product(Subset x, Subset y) const;   // XY
  Subset scale(std::size_t c, Subset x) const;  // cX
  bool is_cancellative(std::size_t x) const;
  std::string format(Subset x) const;

  MonoidReport validate() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> cayley_;
  std::optional<std::vector<std::vector<int>>> addition_;
  std::size_t identity_ = 0;
  Subset zeros_ = 0;
};

enum class SystemKind { S, DRing, Explicit };

class WeakIdealSystem {
 public:
  static WeakIdealSystem s(FiniteMonoid h);
  // InvalidArgument without an addition table.
  static WeakIdealSystem d_ring(FiniteMonoid h);
  // table[X] = X_r for every mask X < 2^|H|; TooLarge beyond kMaterializeLimit.
  static WeakIdealSystem explicit_table(FiniteMonoid h, std::vector<Subset> table);

  const FiniteMonoid& monoid() const { return monoid_; }
  SystemKind kind() const { return kind_; }
  std::string name() const;
  Subset closure(Subset x) const;
  // X_r for every subset (TooLarge beyond kMaterializeLimit).
  std::vector<Subset> materialize(Exec exec = Exec::Parallel) const;

 private:
  WeakIdealSystem(FiniteMonoid h, SystemKind kind) : monoid_(std::move(h)), kind_(kind) {}

  FiniteMonoid monoid_;
  SystemKind kind_;
  std::vector<Subset> table_;
};

struct SystemReport {
  std::vector<AxiomResult> axioms;  // (A), (B), (C); witnesses are subset masks or elements
  AxiomResult ideal_system;         // cX_r = (cX)_r
  AxiomResult finitary;             // every {x}_r compact in I_r(H)
  AxiomResult modular;
  bool ok() const;  // (A)-(C) hold
  const AxiomResult* first_failure() const;
  friend bool operator==(const SystemReport&, const SystemReport&) = default;
};

// TooLarge beyond kMaterializeLimit elements.
SystemReport validate_system(const WeakIdealSystem& r, Exec exec = Exec::Parallel);

// All r-ideals (fixed points of the closure), ordered by size then mask. Beyond the
// materialisation limit they are generated from the principal closures {x}_r, which is
// complete for the s and d systems; TooLarge past kMaxIdeals.
inline constexpr std::size_t kMaxIdeals = 4096;
std::vector<Subset> r_ideals(const WeakIdealSystem& r);
// Cancellative x with (xA)_r = x A_r for every A.
std::vector<std::size_t> regular_elements(const WeakIdealSystem& r);

struct IdealLattice {
  FiniteLatticeHandle lattice;
  std::vector<Subset> ideals;  // ideals[i] is lattice element i
  std::size_t index_of(Subset ideal) const;
};

// I_r(H), or its regular part (regular r-ideals plus the closure of the empty set).
// AxiomViolation if the tables fail validation; EmptyRegularCarrier for a one-element carrier.
IdealLattice build_ideal_lattice(const WeakIdealSystem& r, bool regular_only);

struct Invertibility {
  bool invertible = false;
  Subset j = 0;  // witness: (I J)_r = y H
  std::size_t y = 0;
};
// Searches every r-ideal J and regular y.
Invertibility r_invertible(const WeakIdealSystem& r, Subset ideal);

// The invertibility bridge between r-invertible ideals and the lattice predicates, the
// finitary equivalences and principal generation of the regular part.
std::vector<CheckResult> check_bridge(const WeakIdealSystem& r, Exec exec = Exec::Parallel);

// Builtins: s-system:zmod-mult:N and d-system:zmod:N.
bool is_system_selector(std::string_view selector);
WeakIdealSystem make_builtin_system(std::string_view selector);
// Monoid document plus "builtin": "s" | "d-ring" or "closure": {"<mask>": mask, ...}.
// Without either, the s-system is used.
WeakIdealSystem parse_system_document(const nlohmann::json& doc);
bool is_monoid_document(const nlohmann::json& doc);
nlohmann::json system_to_json(const WeakIdealSystem& r);
nlohmann::json system_report_to_json(const WeakIdealSystem& r, const SystemReport& report);

}  // namespace radfact
