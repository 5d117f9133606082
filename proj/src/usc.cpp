#include "radfact/usc.hpp"

#include <algorithm>
#include <set>

namespace radfact {

std::string Space::describe() const {
  switch (kind) {
    case SpaceKind::FiniteDiscrete: return "discrete(" + std::to_string(points) + ")";
    case SpaceKind::CountableDiscrete: return "discrete(N)";
    case SpaceKind::OnePointCompactified: return "N+{inf}";
  }
  return "?";
}

nlohmann::json Space::to_json() const {
  switch (kind) {
    case SpaceKind::FiniteDiscrete: return {{"kind", "finite-discrete"}, {"points", points}};
    case SpaceKind::CountableDiscrete: return {{"kind", "countable-discrete"}};
    case SpaceKind::OnePointCompactified: return {{"kind", "one-point"}};
  }
  return nullptr;
}

Space Space::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::ParseError, "space needs a kind");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "finite-discrete") return finite_discrete(j.value("points", std::uint64_t{0}));
  if (kind == "countable-discrete") return countable_discrete();
  if (kind == "one-point") return one_point();
  throw Error(ErrorKind::ParseError, "unknown space kind '" + kind + "'");
}

USCFun USCFun::bottom(const Space& space) {
  USCFun f;
  f.space_ = space;
  f.bottom_ = true;
  return f;
}

USCFun USCFun::zero(const Space& space) {
  USCFun f;
  f.space_ = space;
  return f;
}

USCFun USCFun::make(const Space& space, std::map<std::uint64_t, std::uint64_t> values,
                    std::uint64_t fallback, std::uint64_t at_infinity) {
  if (space.discrete() && (fallback != 0 || at_infinity != 0)) {
    throw Error(ErrorKind::InvalidArgument, "discrete spaces only carry finitely supported functions");
  }
  if (space.kind == SpaceKind::FiniteDiscrete) {
    for (const auto& [p, v] : values) {
      if (p >= space.points && v != 0) {
        throw Error(ErrorKind::InvalidArgument, "point " + std::to_string(p) + " outside " + space.describe());
      }
    }
  }
  if (at_infinity < fallback) {
    throw Error(ErrorKind::InvalidArgument, "not upper semicontinuous at infinity");
  }
  USCFun f;
  f.space_ = space;
  f.values_ = std::move(values);
  f.fallback_ = fallback;
  f.infinity_ = at_infinity;
  f.normalize();
  return f;
}

USCFun USCFun::indicator(const Space& space, const std::vector<std::uint64_t>& points, bool cofinite) {
  // cofinite: the complement of `points` in N, plus infinity.
  std::map<std::uint64_t, std::uint64_t> m;
  for (auto p : points) m[p] = cofinite ? 0 : 1;
  return make(space, std::move(m), cofinite ? 1 : 0, cofinite ? 1 : 0);
}

void USCFun::normalize() {
  for (auto it = values_.begin(); it != values_.end();) {
    it = it->second == fallback_ ? values_.erase(it) : std::next(it);
  }
}

std::uint64_t USCFun::at(std::uint64_t point) const {
  auto it = values_.find(point);
  return it == values_.end() ? fallback_ : it->second;
}

std::uint64_t USCFun::max_value() const {
  std::uint64_t m = std::max(fallback_, infinity_);
  for (const auto& [p, v] : values_) m = std::max(m, v);
  return m;
}

std::string USCFun::describe() const {
  if (bottom_) return "b";
  std::string out = "{";
  bool first = true;
  for (const auto& [p, v] : values_) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(p) + "->" + std::to_string(v);
  }
  out += "}";
  if (!space_.discrete()) {
    out += " else " + std::to_string(fallback_) + ", inf->" + std::to_string(infinity_);
  }
  return out;
}

nlohmann::json USCFun::to_json() const {
  if (bottom_) return {{"space", space_.to_json()}, {"bottom", true}};
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [p, v] : values_) support.push_back({p, v});
  nlohmann::json j = {{"space", space_.to_json()}, {"support", support}};
  if (fallback_) j["default"] = fallback_;
  if (infinity_) j["infinity"] = infinity_;
  return j;
}

USCFun USCFun::from_json(const nlohmann::json& j) {
  try {
    const Space space = Space::from_json(j.at("space"));
    if (j.value("bottom", false)) return bottom(space);
    std::map<std::uint64_t, std::uint64_t> values;
    if (j.contains("support")) {
      for (const auto& e : j.at("support")) values[e.at(0).get<std::uint64_t>()] = e.at(1).get<std::uint64_t>();
    }
    return make(space, std::move(values), j.value("default", std::uint64_t{0}),
                j.value("infinity", std::uint64_t{0}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

namespace {

void same_space(const USCFun& f, const USCFun& g) {
  if (!(f.space() == g.space())) {
    throw Error(ErrorKind::SpaceMismatch, f.space().describe() + " vs " + g.space().describe());
  }
}

std::uint64_t apply(int op, std::uint64_t a, std::uint64_t b) {
  switch (op) {
    case 0: return a + b;
    case 1: return std::min(a, b);
    default: return std::max(a, b);
  }
}

}  // namespace

// op: 0 sum, 1 min, 2 max. Neither argument is b.
USCFun pointwise(const USCFun& f, const USCFun& g, int op) {
  USCFun h;
  h.space_ = f.space_;
  h.fallback_ = apply(op, f.fallback_, g.fallback_);
  h.infinity_ = apply(op, f.infinity_, g.infinity_);
  for (const auto& [p, v] : f.values_) h.values_[p] = apply(op, v, g.at(p));
  for (const auto& [p, v] : g.values_) h.values_[p] = apply(op, f.at(p), v);
  h.normalize();
  return h;
}

USCFun add(const USCFun& f, const USCFun& g) {
  same_space(f, g);
  if (f.is_bottom()) return f;
  if (g.is_bottom()) return g;
  return pointwise(f, g, 0);
}

USCFun scale(const USCFun& f, std::uint64_t k) {
  if (f.is_bottom()) return f;
  USCFun acc = USCFun::zero(f.space());
  for (std::uint64_t i = 0; i < k; ++i) acc = add(acc, f);
  return acc;
}

USCFun join_d(const USCFun& f, const USCFun& g) {
  same_space(f, g);
  if (f.is_bottom()) return g;
  if (g.is_bottom()) return f;
  return pointwise(f, g, 1);
}

USCFun meet_d(const USCFun& f, const USCFun& g) {
  same_space(f, g);
  if (f.is_bottom()) return f;
  if (g.is_bottom()) return g;
  return pointwise(f, g, 2);
}

USCFun join_d(std::span<const USCFun> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "join of an empty family");
  USCFun acc = family[0];
  for (std::size_t i = 1; i < family.size(); ++i) acc = join_d(acc, family[i]);
  return acc;
}

USCFun meet_d(std::span<const USCFun> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "meet of an empty family");
  USCFun acc = family[0];
  for (std::size_t i = 1; i < family.size(); ++i) acc = meet_d(acc, family[i]);
  return acc;
}

bool leq_d(const USCFun& f, const USCFun& g) {
  same_space(f, g);
  if (f.is_bottom()) return true;
  if (g.is_bottom()) return false;
  if (f.fallback() < g.fallback() || f.at_infinity() < g.at_infinity()) return false;
  for (const auto& [p, v] : f.exceptions()) {
    if (v < g.at(p)) return false;
  }
  for (const auto& [p, v] : g.exceptions()) {
    if (f.at(p) < v) return false;
  }
  return true;
}

RadicalCheck is_radical(const USCFun& f) {
  if (f.is_bottom()) throw Error(ErrorKind::BottomElement, "is_radical(b)");
  RadicalCheck r;
  const std::uint64_t top_value = f.max_value();
  // Values in {0, 1}; the support {f >= 1} is then closed, hence compact, by upper
  // semicontinuity in every shipped space.
  if (top_value <= 1) return r;
  r.radical = false;
  std::map<std::uint64_t, std::uint64_t> support;
  for (const auto& [p, v] : f.exceptions()) support[p] = v > 0 ? 1 : 0;
  r.witness = USCFun::make(f.space(), std::move(support), f.fallback() > 0 ? 1 : 0,
                           f.at_infinity() > 0 ? 1 : 0);
  r.power = top_value;
  return r;
}

std::vector<USCFun> Decomposition::chain() const {
  std::vector<USCFun> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::uint64_t t = 0; t < increment(i); ++t) out.push_back(level_sets[i]);
  }
  return out;
}

Decomposition decompose(const USCFun& f) {
  if (f.is_bottom()) throw Error(ErrorKind::BottomElement, "decompose(b)");
  std::set<std::uint64_t> vals;
  for (const auto& [p, v] : f.exceptions()) vals.insert(v);
  if (!f.space().discrete()) {
    vals.insert(f.fallback());
    vals.insert(f.at_infinity());
  }
  vals.erase(0);
  Decomposition d;
  for (auto k : vals) {
    d.values.push_back(k);
    std::map<std::uint64_t, std::uint64_t> level;
    for (const auto& [p, v] : f.exceptions()) level[p] = v >= k ? 1 : 0;
    d.level_sets.push_back(USCFun::make(f.space(), std::move(level), f.fallback() >= k ? 1 : 0,
                                        f.at_infinity() >= k ? 1 : 0));
  }
  return d;
}

USCFun recompose(const Space& space, const Decomposition& d) {
  USCFun acc = USCFun::zero(space);
  for (std::size_t i = 0; i < d.values.size(); ++i) acc = add(acc, scale(d.level_sets[i], d.increment(i)));
  return acc;
}

}  // namespace radfact
