#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radfact/error.hpp"

namespace radfact {

// Backend-specific payload of an element. Each backend documents its own encoding.
using Key = std::vector<std::int64_t>;

struct LatticeId {
  std::uint32_t value = 0;
  friend bool operator==(LatticeId, LatticeId) = default;
  friend auto operator<=>(LatticeId, LatticeId) = default;
};

class ElemRef {
 public:
  ElemRef() = default;
  ElemRef(LatticeId lattice, Key key) : lattice_(lattice), key_(std::move(key)) {}

  LatticeId lattice() const noexcept { return lattice_; }
  const Key& key() const noexcept { return key_; }

  friend bool operator==(const ElemRef& a, const ElemRef& b) {
    return a.lattice_ == b.lattice_ && a.key_ == b.key_;
  }
  friend bool operator<(const ElemRef& a, const ElemRef& b) {
    if (a.lattice_ != b.lattice_) return a.lattice_ < b.lattice_;
    return a.key_ < b.key_;
  }

 private:
  LatticeId lattice_;
  Key key_;
};

struct ElemRefHash {
  std::size_t operator()(const ElemRef& e) const noexcept;
};

struct Capabilities {
  bool finite_enumerable = false;
  bool primes_enumerable = false;
  bool maximals_enumerable = false;
  bool domain_declared = false;
  bool modular_declared = false;
  bool c_lattice_declared = false;
  // Justification for the declared flags that cannot be decided exactly.
  std::string note;
};

// Where a lattice comes from; selects which factoriality flavours apply.
enum class Origin { Abstract, RingIdeals, MonoidIdeals };

class Lattice {
 public:
  virtual ~Lattice() = default;
  Lattice(const Lattice&) = delete;
  Lattice& operator=(const Lattice&) = delete;

  LatticeId id() const noexcept { return id_; }
  virtual std::string name() const = 0;
  virtual Capabilities capabilities() const = 0;
  // nullopt for infinite carriers.
  virtual std::optional<std::size_t> element_count() const = 0;
  virtual Origin origin() const { return Origin::Abstract; }

  ElemRef top() const { return wrap(do_top()); }
  ElemRef bottom() const { return wrap(do_bottom()); }
  bool leq(const ElemRef& a, const ElemRef& b) const;
  bool is_top(const ElemRef& a) const { return a == top(); }
  bool is_bottom(const ElemRef& a) const { return a == bottom(); }
  ElemRef mul(const ElemRef& a, const ElemRef& b) const;
  ElemRef join(const ElemRef& a, const ElemRef& b) const;
  ElemRef meet(const ElemRef& a, const ElemRef& b) const;
  ElemRef power(const ElemRef& x, unsigned n) const;
  // (y : x), the largest a with a*x <= y.
  ElemRef residual(const ElemRef& y, const ElemRef& x) const;
  ElemRef radical(const ElemRef& x) const;
  // Throws NotPrime when the prime catalogue is enumerable and p is not in it.
  ElemRef localize(const ElemRef& x, const ElemRef& p) const;
  bool is_compact(const ElemRef& x) const;

  // CapabilityMissing unless finite_enumerable.
  std::vector<ElemRef> elements() const;
  // For unbounded catalogues the context picks which primes are materialised.
  std::vector<ElemRef> primes(std::span<const ElemRef> context = {}) const;
  std::vector<ElemRef> maximals(std::span<const ElemRef> context = {}) const;
  bool is_prime(const ElemRef& p, std::span<const ElemRef> context = {}) const;
  bool is_maximal(const ElemRef& m, std::span<const ElemRef> context = {}) const;

  virtual std::optional<int> dimension_closed_form() const { return std::nullopt; }
  // Exact membership in the multiplicative closure of the radical elements, when known.
  virtual std::optional<bool> product_of_radicals_closed_form(const ElemRef&) const {
    return std::nullopt;
  }
  // Candidate l-principal generators of a compact element, when the backend knows them.
  virtual std::optional<std::vector<ElemRef>> principal_candidates(const ElemRef&) const {
    return std::nullopt;
  }
  // All l-radical elements, when that set is finite and known.
  std::optional<std::vector<ElemRef>> radical_catalog() const;
  std::optional<std::uint64_t> valuation_closed_form(const ElemRef& x, const ElemRef& m) const;
  // Spectrum coordinates: a maximal element <-> a point index.
  virtual std::optional<std::uint64_t> spectrum_point(const ElemRef& m) const;
  virtual std::optional<ElemRef> maximal_at(std::uint64_t point) const;

  std::vector<ElemRef> window_seeds(std::uint64_t seed) const;
  std::string format(const ElemRef& x) const;
  ElemRef parse(std::string_view text) const;
  nlohmann::json to_json(const ElemRef& x) const;

  ElemRef wrap(Key key) const { return ElemRef(id_, std::move(key)); }
  void check(const ElemRef& x) const;

 protected:
  Lattice();

  virtual Key do_top() const = 0;
  virtual Key do_bottom() const = 0;
  virtual bool do_leq(const Key& a, const Key& b) const = 0;
  virtual Key do_mul(const Key& a, const Key& b) const = 0;
  virtual Key do_join(const Key& a, const Key& b) const = 0;
  virtual Key do_meet(const Key& a, const Key& b) const = 0;
  virtual Key do_residual(const Key& y, const Key& x) const = 0;
  virtual Key do_radical(const Key& x) const = 0;
  virtual Key do_localize(const Key& x, const Key& p) const = 0;
  virtual bool do_is_compact(const Key& x) const = 0;
  virtual std::vector<Key> do_elements() const;
  virtual std::vector<Key> do_primes(std::span<const Key> context) const = 0;
  virtual std::vector<Key> do_maximals(std::span<const Key> context) const = 0;
  virtual std::optional<std::vector<Key>> do_radical_catalog() const { return std::nullopt; }
  virtual std::optional<std::uint64_t> do_valuation(const Key&, const Key&) const {
    return std::nullopt;
  }
  virtual std::vector<Key> do_window_seeds(std::uint64_t seed) const = 0;
  virtual std::string do_format(const Key& x) const = 0;
  virtual Key do_parse(std::string_view text) const = 0;
  virtual nlohmann::json do_to_json(const Key& x) const { return do_format(x); }

 private:
  std::vector<Key> unwrap(std::span<const ElemRef> xs) const;
  std::vector<ElemRef> wrap_all(std::vector<Key> keys) const;

  LatticeId id_;
};

using LatticeHandle = std::shared_ptr<const Lattice>;

std::string format_list(const Lattice& lattice, std::span<const ElemRef> xs);

}  // namespace radfact
