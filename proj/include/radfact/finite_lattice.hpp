#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radfact/lattice.hpp"
#include "radfact/parallel.hpp"

namespace radfact {

// Raw table document: leq[i][j] = 1 means element i is below element j.
struct LatticeTables {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> leq;
  std::vector<std::vector<int>> mul;

  std::size_t size() const { return labels.size(); }
  friend bool operator==(const LatticeTables&, const LatticeTables&) = default;
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  bool skipped = false;
  std::vector<std::size_t> witness;  // element indices
  std::string detail;
  friend bool operator==(const AxiomResult&, const AxiomResult&) = default;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;  // order, lattice and monoid axioms, in a fixed order
  AxiomResult modular;
  AxiomResult domain;
  bool c_lattice = true;  // every element of a finite lattice is compact

  bool order_ok() const;
  bool ok() const;
  const AxiomResult* first_failure() const;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Shape checks only (square matrices, indices in range); throws ParseError.
LatticeTables parse_tables(const nlohmann::json& doc);
LatticeTables parse_tables(std::string_view text);
nlohmann::json tables_to_json(const LatticeTables& tables);
// Canonical serialisation: one matrix row per line.
std::string dump_tables(const LatticeTables& tables);

ValidationReport validate_tables(const LatticeTables& tables, Exec exec = Exec::Parallel);

class FiniteMultLattice final : public Lattice {
 public:
  // Validates; order-axiom failures raise ParseError, the rest AxiomViolation.
  static std::shared_ptr<const FiniteMultLattice> from_tables(LatticeTables tables,
                                                              std::string origin_note = {},
                                                              Origin origin = Origin::Abstract);
  static std::shared_ptr<const FiniteMultLattice> load(std::string_view text);
  static std::shared_ptr<const FiniteMultLattice> load_file(const std::filesystem::path& path);
  std::string save() const { return dump_tables(tables_); }

  std::string name() const override { return tables_.name; }
  Capabilities capabilities() const override;
  std::optional<std::size_t> element_count() const override { return n_; }
  Origin origin() const override { return origin_; }

  std::size_t size() const { return n_; }
  const LatticeTables& tables() const { return tables_; }
  const ValidationReport& validation() const { return report_; }
  ElemRef at(std::size_t i) const { return wrap(Key{static_cast<std::int64_t>(i)}); }
  std::size_t index_of(const ElemRef& x) const;
  std::optional<std::size_t> find_label(std::string_view label) const;

  std::size_t top_index() const { return top_; }
  std::size_t bottom_index() const { return bottom_; }
  bool leq_i(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
  std::size_t mul_i(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::size_t join_i(std::size_t a, std::size_t b) const { return join_[a * n_ + b]; }
  std::size_t meet_i(std::size_t a, std::size_t b) const { return meet_[a * n_ + b]; }
  std::size_t residual_i(std::size_t y, std::size_t x) const { return residual_[y * n_ + x]; }
  std::size_t radical_i(std::size_t x) const { return radical_[x]; }
  std::size_t localize_i(std::size_t x, std::size_t p) const;
  const std::vector<std::size_t>& primes_i() const { return primes_; }
  const std::vector<std::size_t>& maximals_i() const { return maximals_; }
  const std::vector<std::size_t>& radicals_i() const { return radicals_; }
  bool is_prime_i(std::size_t p) const;
  const std::string& origin_note() const { return origin_note_; }

 protected:
  Key do_top() const override { return {static_cast<std::int64_t>(top_)}; }
  Key do_bottom() const override { return {static_cast<std::int64_t>(bottom_)}; }
  bool do_leq(const Key& a, const Key& b) const override { return leq_i(ix(a), ix(b)); }
  Key do_mul(const Key& a, const Key& b) const override { return k(mul_i(ix(a), ix(b))); }
  Key do_join(const Key& a, const Key& b) const override { return k(join_i(ix(a), ix(b))); }
  Key do_meet(const Key& a, const Key& b) const override { return k(meet_i(ix(a), ix(b))); }
  Key do_residual(const Key& y, const Key& x) const override {
    return k(residual_i(ix(y), ix(x)));
  }
  Key do_radical(const Key& x) const override { return k(radical_i(ix(x))); }
  Key do_localize(const Key& x, const Key& p) const override {
    return k(localize_i(ix(x), ix(p)));
  }
  bool do_is_compact(const Key&) const override { return true; }
  std::vector<Key> do_elements() const override;
  std::vector<Key> do_primes(std::span<const Key>) const override { return keys(primes_); }
  std::vector<Key> do_maximals(std::span<const Key>) const override { return keys(maximals_); }
  std::optional<std::vector<Key>> do_radical_catalog() const override { return keys(radicals_); }
  std::vector<Key> do_window_seeds(std::uint64_t seed) const override;
  std::string do_format(const Key& x) const override { return tables_.labels[ix(x)]; }
  Key do_parse(std::string_view text) const override;

 private:
  struct Private {};

 public:
  FiniteMultLattice(Private, LatticeTables tables, ValidationReport report, std::string note,
                    Origin origin);

 private:
  static std::size_t ix(const Key& k) { return static_cast<std::size_t>(k.at(0)); }
  static Key k(std::size_t i) { return {static_cast<std::int64_t>(i)}; }
  std::vector<Key> keys(const std::vector<std::size_t>& idx) const;
  std::size_t localize_compute(std::size_t x, std::size_t p) const;

  LatticeTables tables_;
  ValidationReport report_;
  std::string origin_note_;
  Origin origin_;
  std::size_t n_ = 0;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::size_t> mul_, join_, meet_, residual_;
  std::vector<std::size_t> radical_;
  std::vector<std::size_t> primes_, maximals_, radicals_;
  std::vector<char> prime_flag_;
  std::vector<std::size_t> localized_;  // [x * |primes| + k] when precomputed
};

using FiniteLatticeHandle = std::shared_ptr<const FiniteMultLattice>;

// Ideals of Z/n as divisors of n: d <= e iff e | d, d * e = gcd(de, n). InvalidModulus for n < 2.
FiniteLatticeHandle materialize_from_divisors(std::int64_t n);
// A k-element chain. nilpotent = false multiplies by meet; nilpotent = true adds the
// distances from the top, truncated at the bottom (so for k = 3 the middle element squares to 0).
FiniteLatticeHandle chain_lattice(std::size_t k, bool nilpotent);

// Exhaustive per-element predicates from the index tables.
struct IndexPredicates {
  bool cancellative = true;
  bool weak_meet_principal = true;
  bool meet_principal = true;
  bool weak_join_principal = true;
  bool join_principal = true;
  bool ell_prime = false;
  bool maximal = false;
  bool ell_radical = false;
  bool ell_principal() const { return meet_principal && join_principal; }
  bool ell_invertible() const { return ell_principal() && cancellative; }
  friend bool operator==(const IndexPredicates&, const IndexPredicates&) = default;
};

std::vector<IndexPredicates> all_predicates(const FiniteMultLattice& lattice,
                                            Exec exec = Exec::Parallel);

}  // namespace radfact
