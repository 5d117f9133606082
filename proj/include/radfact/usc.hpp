#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "radfact/error.hpp"

namespace radfact {

enum class SpaceKind { FiniteDiscrete, CountableDiscrete, OnePointCompactified };

// Points are natural numbers; OnePointCompactified adds a point at infinity that is
// addressed separately.
struct Space {
  SpaceKind kind = SpaceKind::FiniteDiscrete;
  std::uint64_t points = 0;  // FiniteDiscrete only

  static Space finite_discrete(std::uint64_t n) { return {SpaceKind::FiniteDiscrete, n}; }
  static Space countable_discrete() { return {SpaceKind::CountableDiscrete, 0}; }
  static Space one_point() { return {SpaceKind::OnePointCompactified, 0}; }

  bool discrete() const { return kind != SpaceKind::OnePointCompactified; }
  std::string describe() const;
  nlohmann::json to_json() const;
  static Space from_json(const nlohmann::json& j);
  friend bool operator==(const Space&, const Space&) = default;
};

// A compactly supported upper semicontinuous N0-valued function, or the adjoined bottom b.
// Stored as an exceptional finite map plus the eventual value `fallback` on N and the value at
// infinity; discrete spaces have both equal to 0. The map only keeps entries that differ from
// the fallback, so equal functions have equal representations.
class USCFun {
 public:
  static USCFun bottom(const Space& space);
  static USCFun zero(const Space& space);
  // Validates the point range and m >= d; throws InvalidArgument.
  static USCFun make(const Space& space, std::map<std::uint64_t, std::uint64_t> values,
                     std::uint64_t fallback = 0, std::uint64_t at_infinity = 0);
  static USCFun indicator(const Space& space, const std::vector<std::uint64_t>& points,
                          bool cofinite = false);

  const Space& space() const { return space_; }
  bool is_bottom() const { return bottom_; }
  std::uint64_t at(std::uint64_t point) const;
  std::uint64_t fallback() const { return fallback_; }
  std::uint64_t at_infinity() const { return infinity_; }
  const std::map<std::uint64_t, std::uint64_t>& exceptions() const { return values_; }
  std::uint64_t max_value() const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static USCFun from_json(const nlohmann::json& j);

  friend bool operator==(const USCFun&, const USCFun&) = default;

 private:
  USCFun() = default;
  void normalize();

  Space space_;
  bool bottom_ = false;
  std::map<std::uint64_t, std::uint64_t> values_;
  std::uint64_t fallback_ = 0;
  std::uint64_t infinity_ = 0;

  friend USCFun pointwise(const USCFun&, const USCFun&, int);
};

// The lattice product: pointwise addition, b absorbing.
USCFun add(const USCFun& f, const USCFun& g);
USCFun scale(const USCFun& f, std::uint64_t k);
// Joins are pointwise minima (b ignored unless every member is b); meets are pointwise maxima
// (b if any member is b). EmptyFamily for an empty family.
USCFun join_d(std::span<const USCFun> family);
USCFun meet_d(std::span<const USCFun> family);
USCFun join_d(const USCFun& f, const USCFun& g);
USCFun meet_d(const USCFun& f, const USCFun& g);
// f <=_d g iff f = b, or neither is b and f >= g pointwise.
bool leq_d(const USCFun& f, const USCFun& g);

struct RadicalCheck {
  bool radical = true;
  // When not radical: g = indicator of the support, with power * g <=_d f but g not <=_d f.
  std::optional<USCFun> witness;
  std::uint64_t power = 0;
};
// BottomElement for b.
RadicalCheck is_radical(const USCFun& f);

struct Decomposition {
  std::vector<std::uint64_t> values;  // k_0 < k_1 < ... < k_n
  std::vector<USCFun> level_sets;      // indicators of f^{-1}([k_i, inf)), decreasing

  std::uint64_t base() const { return values.empty() ? 0 : values[0]; }
  std::uint64_t increment(std::size_t i) const { return i == 0 ? values[0] : values[i] - values[i - 1]; }
  // C_0 taken k_0 times, then each C_i taken k_i - k_{i-1} times (ascending under <=_d).
  std::vector<USCFun> chain() const;
};

Decomposition decompose(const USCFun& f);
USCFun recompose(const Space& space, const Decomposition& d);

}  // namespace radfact
