#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radfact/lattice.hpp"

namespace radfact {

// The i-th rational prime (0-based: 2, 3, 5, ...).
std::int64_t nth_prime(std::size_t i);

// Ideals of a Dedekind domain as exponent vectors over a fixed list of primes, plus the zero
// ideal. Key: {-1} for zero, otherwise the exponent vector with trailing zeros dropped.
// The order is reverse componentwise (v <= w iff v >= w), mul adds, join takes minima.
// An optional support restricts the carrier to vectors supported inside it.
class ExponentLattice final : public Lattice {
 public:
  struct Config {
    std::optional<std::size_t> primes;  // nullopt: unbounded, primes materialised on demand
    std::optional<std::vector<char>> support;  // allowed prime indices
    std::string name;
    Origin origin = Origin::RingIdeals;
  };
  explicit ExponentLattice(Config config);

  std::string name() const override { return config_.name; }
  Capabilities capabilities() const override;
  std::optional<std::size_t> element_count() const override { return std::nullopt; }
  Origin origin() const override { return config_.origin; }
  std::optional<int> dimension_closed_form() const override;
  std::optional<std::uint64_t> spectrum_point(const ElemRef& m) const override;
  std::optional<ElemRef> maximal_at(std::uint64_t point) const override;
  std::optional<std::vector<ElemRef>> principal_candidates(const ElemRef& x) const override {
    return std::vector<ElemRef>{x};
  }

  bool bounded() const { return config_.primes.has_value(); }
  std::size_t prime_count() const { return config_.primes.value_or(0); }
  std::vector<std::size_t> allowed_indices() const;
  ElemRef zero() const { return wrap({-1}); }
  ElemRef from_exponents(std::vector<std::int64_t> exps) const;
  // nullopt for the zero ideal.
  std::optional<std::vector<std::int64_t>> exponents(const ElemRef& x) const;
  ElemRef unit(std::size_t prime_index) const;

 protected:
  Key do_top() const override { return {}; }
  Key do_bottom() const override { return {-1}; }
  bool do_leq(const Key& a, const Key& b) const override;
  Key do_mul(const Key& a, const Key& b) const override;
  Key do_join(const Key& a, const Key& b) const override;
  Key do_meet(const Key& a, const Key& b) const override;
  Key do_residual(const Key& y, const Key& x) const override;
  Key do_radical(const Key& x) const override;
  Key do_localize(const Key& x, const Key& p) const override;
  bool do_is_compact(const Key&) const override { return true; }
  std::vector<Key> do_primes(std::span<const Key> context) const override;
  std::vector<Key> do_maximals(std::span<const Key> context) const override;
  std::optional<std::vector<Key>> do_radical_catalog() const override;
  std::optional<std::uint64_t> do_valuation(const Key& x, const Key& m) const override;
  std::vector<Key> do_window_seeds(std::uint64_t seed) const override;
  std::string do_format(const Key& x) const override;
  Key do_parse(std::string_view text) const override;
  nlohmann::json do_to_json(const Key& x) const override;

 private:
  bool allowed(std::size_t i) const;
  Key checked(Key k) const;
  std::vector<std::size_t> spectrum_indices(std::span<const Key> context) const;

  Config config_;
};

using ExponentHandle = std::shared_ptr<const ExponentLattice>;

// Dedekind domain with k primes (labelled 2, 3, 5, ...), or unbounded when k is nullopt.
ExponentHandle dedekind(std::optional<std::size_t> k);
// Sub-lattice of elements supported in supp(J) for a squarefree J; NotRadical otherwise.
ExponentHandle power_of_j(const std::vector<std::int64_t>& j);
// The same from a squarefree integer, over the primes up to its largest prime factor.
ExponentHandle power_of_j(std::int64_t n);

// s-ideals of H = {(a, b) in Z^2 : a > 0, or a = 0 and b >= 0} under lexicographic order.
// Key: {0} Empty, {1, a, b} Principal(a, b) = (a, b) + H, {2, a} Limit(a) = {(x, y) : x > a}.
class Rank2ValuationLattice final : public Lattice {
 public:
  Rank2ValuationLattice();
  std::string name() const override { return "rank2"; }
  Capabilities capabilities() const override;
  std::optional<std::size_t> element_count() const override { return std::nullopt; }
  Origin origin() const override { return Origin::MonoidIdeals; }
  std::optional<int> dimension_closed_form() const override { return 2; }
  std::optional<bool> product_of_radicals_closed_form(const ElemRef& x) const override;
  std::optional<std::vector<ElemRef>> principal_candidates(const ElemRef& x) const override {
    return std::vector<ElemRef>{x};
  }

  ElemRef principal(std::int64_t a, std::int64_t b) const;
  ElemRef limit(std::int64_t a) const;
  ElemRef empty() const { return wrap({0}); }

 protected:
  Key do_top() const override { return {1, 0, 0}; }
  Key do_bottom() const override { return {0}; }
  bool do_leq(const Key& a, const Key& b) const override;
  Key do_mul(const Key& a, const Key& b) const override;
  Key do_join(const Key& a, const Key& b) const override;
  Key do_meet(const Key& a, const Key& b) const override;
  Key do_residual(const Key& y, const Key& x) const override;
  Key do_radical(const Key& x) const override;
  Key do_localize(const Key& x, const Key& p) const override;
  bool do_is_compact(const Key& x) const override { return x[0] != 2; }
  std::vector<Key> do_primes(std::span<const Key>) const override;
  std::vector<Key> do_maximals(std::span<const Key>) const override;
  std::optional<std::vector<Key>> do_radical_catalog() const override;
  std::optional<std::uint64_t> do_valuation(const Key& x, const Key& m) const override;
  std::vector<Key> do_window_seeds(std::uint64_t seed) const override;
  std::string do_format(const Key& x) const override;
  Key do_parse(std::string_view text) const override;
};

// s-ideals of a numerical monoid H = <g_1, ..., g_k> (gcd 1). A nonempty ideal is cofinite;
// Key: {-1} for the empty ideal, else {c, members below c...} with c the least integer such
// that every n >= c lies in the ideal.
class NumericalMonoidLattice final : public Lattice {
 public:
  explicit NumericalMonoidLattice(std::vector<std::int64_t> generators);
  std::string name() const override;
  Capabilities capabilities() const override;
  std::optional<std::size_t> element_count() const override { return std::nullopt; }
  Origin origin() const override { return Origin::MonoidIdeals; }
  std::optional<int> dimension_closed_form() const override { return 1; }
  // The principal ideals g + H over the minimal generators g.
  std::optional<std::vector<ElemRef>> principal_candidates(const ElemRef& x) const override;

  const std::vector<std::int64_t>& generators() const { return gens_; }
  std::int64_t frobenius() const { return frobenius_; }
  bool in_monoid(std::int64_t n) const;
  // The s-closure S + H of a finite set of monoid elements.
  ElemRef closure(const std::vector<std::int64_t>& set) const;
  ElemRef maximal_ideal() const;
  bool contains(const ElemRef& ideal, std::int64_t n) const;
  std::vector<std::int64_t> minimal_generators(const ElemRef& ideal) const;
  // Every ideal whose conductor is at most bound, plus the empty ideal.
  std::vector<ElemRef> enumerate_ideals(std::int64_t bound) const;
  // Search J and y with I + J = y + H among ideals with conductor <= bound, y < 2 * bound.
  std::optional<std::pair<ElemRef, std::int64_t>> s_invertible(const ElemRef& ideal,
                                                               std::int64_t bound) const;

 protected:
  Key do_top() const override;
  Key do_bottom() const override { return {-1}; }
  bool do_leq(const Key& a, const Key& b) const override;
  Key do_mul(const Key& a, const Key& b) const override;
  Key do_join(const Key& a, const Key& b) const override;
  Key do_meet(const Key& a, const Key& b) const override;
  Key do_residual(const Key& y, const Key& x) const override;
  Key do_radical(const Key& x) const override;
  Key do_localize(const Key& x, const Key& p) const override;
  bool do_is_compact(const Key&) const override { return true; }
  std::vector<Key> do_primes(std::span<const Key>) const override;
  std::vector<Key> do_maximals(std::span<const Key>) const override;
  std::optional<std::vector<Key>> do_radical_catalog() const override;
  std::vector<Key> do_window_seeds(std::uint64_t seed) const override;
  std::string do_format(const Key& x) const override;
  Key do_parse(std::string_view text) const override;

 private:
  Key closure_key(const std::vector<std::int64_t>& set) const;
  Key maximal_key() const;

  std::vector<std::int64_t> gens_;
  std::int64_t min_gen_ = 1;
  std::vector<std::int64_t> apery_;  // least element of H in each residue class mod min_gen_
  std::int64_t frobenius_ = -1;
};

using Rank2Handle = std::shared_ptr<const Rank2ValuationLattice>;
using NumericalHandle = std::shared_ptr<const NumericalMonoidLattice>;

Rank2Handle rank2_valuation();
// InvalidGenerators unless the generators are positive with gcd 1.
NumericalHandle numerical_monoid(std::vector<std::int64_t> generators);

// Builtin selector: zmod:N, dedekind:K | dedekind:unbounded, rank2, numerical:a,b,...,
// power-of-j:N, chain:K, nilchain:K. ParseError for anything else.
LatticeHandle make_builtin(std::string_view selector);

}  // namespace radfact
