#include "radfact/ideal_systems.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>

#include "radfact/core.hpp"
#include "radfact/error.hpp"

namespace radfact {

namespace {

using Witness = std::vector<std::size_t>;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

Subset bit(std::size_t i) { return Subset{1} << i; }

template <class F>
void for_each_bit(Subset x, F f) {
  while (x) {
    const auto i = static_cast<std::size_t>(std::countr_zero(x));
    f(i);
    x &= x - 1;
  }
}

// Lexicographically first failing witness; body(i) scans its own inner loop in order.
template <class Body>
std::optional<Witness> scan(std::size_t n, Body body, Exec exec) {
  std::vector<std::optional<Witness>> res(n);
  if (exec == Exec::Parallel) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) res[i] = body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) res[i] = body(i);
  }
  for (auto& r : res) {
    if (r) return r;
  }
  return std::nullopt;
}

AxiomResult verdict(std::string name, const std::optional<Witness>& w, std::string detail) {
  AxiomResult r;
  r.axiom = std::move(name);
  if (w) {
    r.passed = false;
    r.witness = *w;
    r.detail = std::move(detail);
  }
  return r;
}

std::vector<std::vector<int>> read_table(const nlohmann::json& doc, const char* field,
                                         std::size_t n) {
  const auto& m = doc.at(field);
  if (!m.is_array() || m.size() != n) parse_fail(std::string(field) + ": expected " +
                                                 std::to_string(n) + " rows");
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i].is_array() || m[i].size() != n) {
      parse_fail(std::string(field) + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j].is_number_integer()) parse_fail(std::string(field) + ": non-integer entry");
      const auto v = m[i][j].get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        parse_fail(std::string(field) + ": entry out of range at (" + std::to_string(i) + ", " +
                   std::to_string(j) + ")");
      }
      out[i][j] = static_cast<int>(v);
    }
  }
  return out;
}

std::string mask_text(const FiniteMonoid& h, Subset x) { return h.format(x); }

}  // namespace

// ---- FiniteMonoid ----------------------------------------------------------------------------

FiniteMonoid::FiniteMonoid(std::string name, std::vector<std::string> labels,
                           std::vector<std::vector<int>> cayley,
                           std::optional<std::vector<std::vector<int>>> addition)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      cayley_(std::move(cayley)),
      addition_(std::move(addition)) {
  const std::size_t n = labels_.size();
  if (n > kMaxMonoidSize) {
    throw Error(ErrorKind::TooLarge, "monoid has " + std::to_string(n) + " elements, limit " +
                                         std::to_string(kMaxMonoidSize));
  }
  auto shape_ok = [n](const std::vector<std::vector<int>>& t) {
    if (t.size() != n) return false;
    for (const auto& row : t) {
      if (row.size() != n) return false;
      for (int v : row) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) return false;
      }
    }
    return true;
  };
  if (!shape_ok(cayley_)) parse_fail("cayley table is not an n x n table of element indices");
  if (addition_ && !shape_ok(*addition_)) {
    parse_fail("addition table is not an n x n table of element indices");
  }
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  for (std::size_t z = 0; z < n; ++z) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul(x, z) == z;
    if (ok) zeros_ |= bit(z);
  }
}

FiniteMonoid FiniteMonoid::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) parse_fail("monoid document must be a JSON object");
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    parse_fail("monoid document needs an \"elements\" array");
  }
  if (!doc.contains("cayley")) parse_fail("monoid document needs a \"cayley\" table");
  std::vector<std::string> labels;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) parse_fail("element names must be strings");
    labels.push_back(e.get<std::string>());
  }
  const std::size_t n = labels.size();
  if (n > kMaxMonoidSize) {
    throw Error(ErrorKind::TooLarge, "monoid has " + std::to_string(n) + " elements");
  }
  std::optional<std::vector<std::vector<int>>> addition;
  if (doc.contains("addition")) addition = read_table(doc, "addition", n);
  return FiniteMonoid(doc.value("name", std::string("monoid")), std::move(labels),
                      read_table(doc, "cayley", n), std::move(addition));
}

nlohmann::json FiniteMonoid::to_json() const {
  nlohmann::json doc{{"name", name_}, {"elements", labels_}, {"cayley", cayley_}};
  if (addition_) doc["addition"] = *addition_;
  return doc;
}

FiniteMonoid FiniteMonoid::zmod(std::size_t n, bool with_addition) {
  if (n < 2) throw Error(ErrorKind::InvalidModulus, "modulus must be at least 2");
  if (n > kMaxMonoidSize) throw Error(ErrorKind::TooLarge, "modulus too large for a monoid table");
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mul(n, std::vector<int>(n)), add(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      mul[i][j] = static_cast<int>(i * j % n);
      add[i][j] = static_cast<int>((i + j) % n);
    }
  }
  const std::string name = (with_addition ? "zmod:" : "zmod-mult:") + std::to_string(n);
  if (with_addition) return FiniteMonoid(name, std::move(labels), std::move(mul), std::move(add));
  return FiniteMonoid(name, std::move(labels), std::move(mul));
}

std::size_t FiniteMonoid::additive_zero() const {
  if (!addition_) throw Error(ErrorKind::InvalidArgument, name_ + " has no addition table");
  for (std::size_t z = 0; z < size(); ++z) {
    bool ok = true;
    for (std::size_t x = 0; x < size() && ok; ++x) ok = add(z, x) == x;
    if (ok) return z;
  }
  throw Error(ErrorKind::AxiomViolation, name_ + ": addition has no neutral element");
}

Subset FiniteMonoid::product(Subset x, Subset y) const {
  Subset out = 0;
  for_each_bit(x, [&](std::size_t a) { for_each_bit(y, [&](std::size_t b) { out |= bit(mul(a, b)); }); });
  return out;
}

Subset FiniteMonoid::scale(std::size_t c, Subset x) const {
  Subset out = 0;
  for_each_bit(x, [&](std::size_t a) { out |= bit(mul(c, a)); });
  return out;
}

bool FiniteMonoid::is_cancellative(std::size_t x) const {
  Subset seen = 0;
  for (std::size_t a = 0; a < size(); ++a) {
    const Subset b = bit(mul(x, a));
    if (seen & b) return false;
    seen |= b;
  }
  return true;
}

std::string FiniteMonoid::format(Subset x) const {
  std::string out = "{";
  bool first = true;
  for_each_bit(x, [&](std::size_t i) {
    if (!first) out += ",";
    first = false;
    out += i < labels_.size() ? labels_[i] : "#" + std::to_string(i);
  });
  return out + "}";
}

bool MonoidReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* MonoidReport::first_failure() const {
  for (const auto& a : axioms) {
    if (!a.passed) return &a;
  }
  return nullptr;
}

MonoidReport FiniteMonoid::validate() const {
  MonoidReport rep;
  const std::size_t n = size();
  auto lab = [&](std::size_t i) { return labels_[i]; };
  auto first = [&](auto pred) -> std::optional<Witness> {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!pred(a, b, c)) return Witness{a, b, c};
        }
      }
    }
    return std::nullopt;
  };
  {
    std::optional<Witness> w;
    if (n < 2) w = Witness{};
    rep.axioms.push_back(verdict("at least two elements", w, "monoid has " + std::to_string(n) + " element(s)"));
  }
  {
    auto w = first([&](std::size_t a, std::size_t b, std::size_t) { return mul(a, b) == mul(b, a); });
    if (w) w->pop_back();
    rep.axioms.push_back(verdict("commutative", w, w ? lab((*w)[0]) + "*" + lab((*w)[1]) + " != " +
                                                         lab((*w)[1]) + "*" + lab((*w)[0]) : ""));
  }
  {
    auto w = first([&](std::size_t a, std::size_t b, std::size_t c) {
      return mul(mul(a, b), c) == mul(a, mul(b, c));
    });
    rep.axioms.push_back(verdict("associative", w, w ? "(" + lab((*w)[0]) + "*" + lab((*w)[1]) + ")*" +
                                                         lab((*w)[2]) + " differs" : ""));
  }
  {
    bool found = false;
    for (std::size_t x = 0; x < n && !found; ++x) found = mul(identity_, x) == x && mul(x, identity_) == x;
    std::optional<Witness> w;
    if (!found) w = Witness{};
    rep.axioms.push_back(verdict("identity", w, "no element acts as identity"));
  }
  if (addition_) {
    std::optional<Witness> w;
    std::string detail;
    std::size_t zero = n;
    for (std::size_t z = 0; z < n && zero == n; ++z) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = add(z, x) == x;
      if (ok) zero = z;
    }
    if (zero == n) {
      w = Witness{};
      detail = "addition has no neutral element";
    }
    if (!w) {
      w = first([&](std::size_t a, std::size_t b, std::size_t c) {
        return add(a, b) == add(b, a) && add(add(a, b), c) == add(a, add(b, c));
      });
      if (w) detail = "addition not commutative and associative at " + lab((*w)[0]) + ", " + lab((*w)[1]) + ", " + lab((*w)[2]);
    }
    if (!w) {
      for (std::size_t a = 0; a < n && !w; ++a) {
        bool inv = false;
        for (std::size_t b = 0; b < n && !inv; ++b) inv = add(a, b) == zero;
        if (!inv) {
          w = Witness{a};
          detail = lab(a) + " has no additive inverse";
        }
      }
    }
    rep.axioms.push_back(verdict("addition abelian group", w, detail));
    auto d = first([&](std::size_t a, std::size_t b, std::size_t c) {
      return mul(a, add(b, c)) == add(mul(a, b), mul(a, c));
    });
    rep.axioms.push_back(verdict("distributive", d, d ? lab((*d)[0]) + "*(" + lab((*d)[1]) + "+" + lab((*d)[2]) + ") differs" : ""));
  }
  return rep;
}

// ---- closure maps ----------------------------------------------------------------------------

WeakIdealSystem WeakIdealSystem::s(FiniteMonoid h) { return WeakIdealSystem(std::move(h), SystemKind::S); }

WeakIdealSystem WeakIdealSystem::d_ring(FiniteMonoid h) {
  if (!h.has_addition()) {
    throw Error(ErrorKind::InvalidArgument, "the d-system needs a ring addition table");
  }
  return WeakIdealSystem(std::move(h), SystemKind::DRing);
}

WeakIdealSystem WeakIdealSystem::explicit_table(FiniteMonoid h, std::vector<Subset> table) {
  const std::size_t n = h.size();
  if (n > kMaterializeLimit) {
    throw Error(ErrorKind::TooLarge, "explicit closure tables are limited to " +
                                         std::to_string(kMaterializeLimit) + " elements");
  }
  if (table.size() != (std::size_t{1} << n)) {
    parse_fail("closure table needs " + std::to_string(std::size_t{1} << n) + " entries, got " +
               std::to_string(table.size()));
  }
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (!subset_of(table[x], h.all())) {
      parse_fail("closure of mask " + std::to_string(x) + " names elements outside the monoid");
    }
  }
  WeakIdealSystem r(std::move(h), SystemKind::Explicit);
  r.table_ = std::move(table);
  return r;
}

std::string WeakIdealSystem::name() const {
  switch (kind_) {
    case SystemKind::S: return "s-system:" + monoid_.name();
    case SystemKind::DRing: return "d-system:" + monoid_.name();
    case SystemKind::Explicit: break;
  }
  return "explicit-system:" + monoid_.name();
}

Subset WeakIdealSystem::closure(Subset x) const {
  const auto& h = monoid_;
  switch (kind_) {
    case SystemKind::S:
      return h.product(x, h.all()) | h.zeros();
    case SystemKind::DRing: {
      Subset cur = x | bit(h.additive_zero());
      for (;;) {
        Subset next = h.product(cur, h.all());
        for_each_bit(cur, [&](std::size_t a) {
          for_each_bit(cur, [&](std::size_t b) { next |= bit(h.add(a, b)); });
        });
        next |= cur;
        if (next == cur) return cur;
        cur = next;
      }
    }
    case SystemKind::Explicit:
      return table_.at(static_cast<std::size_t>(x));
  }
  return x;
}

std::vector<Subset> WeakIdealSystem::materialize(Exec exec) const {
  if (kind_ == SystemKind::Explicit) return table_;
  const std::size_t n = monoid_.size();
  if (n > kMaterializeLimit) {
    throw Error(ErrorKind::TooLarge, name() + ": " + std::to_string(n) +
                                         " elements exceed the subset enumeration limit of " +
                                         std::to_string(kMaterializeLimit));
  }
  return parallel_map<Subset>(std::size_t{1} << n, [&](std::size_t x) { return closure(x); }, exec);
}

// ---- validation ------------------------------------------------------------------------------

bool SystemReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* SystemReport::first_failure() const {
  for (const auto& a : axioms) {
    if (!a.passed) return &a;
  }
  return nullptr;
}

namespace {

std::vector<Subset> fixed_points(const std::vector<Subset>& table) {
  std::vector<Subset> out;
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] == x) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

// Triple count above which the modularity scan is skipped.
constexpr std::size_t kModularBudget = std::size_t{1} << 27;

}  // namespace

SystemReport validate_system(const WeakIdealSystem& r, Exec exec) {
  const auto& h = r.monoid();
  const auto table = r.materialize(exec);
  const std::size_t subsets = table.size();
  const std::size_t n = h.size();
  const Subset all = h.all();
  SystemReport rep;

  auto wa = scan(subsets, [&](std::size_t x) -> std::optional<Witness> {
    if (!subset_of(h.product(x, all) | h.zeros(), table[x])) return Witness{x};
    return std::nullopt;
  }, exec);
  rep.axioms.push_back(verdict("A", wa, wa ? "XH u z(H) is not inside X_r for X = " +
                                                 mask_text(h, (*wa)[0]) + ", X_r = " +
                                                 mask_text(h, table[(*wa)[0]]) : ""));

  auto wb = scan(subsets, [&](std::size_t x) -> std::optional<Witness> {
    for (std::size_t y = 0; y < subsets; ++y) {
      if (subset_of(x, table[y]) && !subset_of(table[x], table[y])) return Witness{x, y};
    }
    return std::nullopt;
  }, exec);
  rep.axioms.push_back(verdict("B", wb, wb ? "X = " + mask_text(h, (*wb)[0]) + " lies in Y_r = " +
                                                 mask_text(h, table[(*wb)[1]]) + " for Y = " +
                                                 mask_text(h, (*wb)[1]) + " but X_r = " +
                                                 mask_text(h, table[(*wb)[0]]) + " does not" : ""));

  // Both (C) and the ideal-system equality are scanned over (c, X).
  auto wc = scan(n, [&](std::size_t c) -> std::optional<Witness> {
    for (std::size_t x = 0; x < subsets; ++x) {
      if (!subset_of(h.scale(c, table[x]), table[h.scale(c, x)])) return Witness{c, x};
    }
    return std::nullopt;
  }, exec);
  rep.axioms.push_back(verdict("C", wc, wc ? "c X_r is not inside (cX)_r for c = " +
                                                 h.labels()[(*wc)[0]] + ", X = " +
                                                 mask_text(h, (*wc)[1]) : ""));

  auto wi = scan(n, [&](std::size_t c) -> std::optional<Witness> {
    for (std::size_t x = 0; x < subsets; ++x) {
      if (h.scale(c, table[x]) != table[h.scale(c, x)]) return Witness{c, x};
    }
    return std::nullopt;
  }, exec);
  rep.ideal_system = verdict("ideal system", wi, wi ? "c X_r != (cX)_r for c = " +
                                                          h.labels()[(*wi)[0]] + ", X = " +
                                                          mask_text(h, (*wi)[1]) : "");

  const auto ideals = fixed_points(table);
  const std::size_t k = ideals.size();
  if (!rep.ok()) {
    rep.finitary.axiom = "finitary";
    rep.finitary.passed = false;
    rep.finitary.skipped = true;
    rep.finitary.detail = "skipped: an axiom failed";
    rep.modular = rep.finitary;
    rep.modular.axiom = "modular";
    return rep;
  }

  // Every element of a finite lattice is compact, so {x}_r is compact exactly when it is an
  // element of the materialised lattice, i.e. when the closure is idempotent on it.
  auto wf = scan(n, [&](std::size_t x) -> std::optional<Witness> {
    const Subset px = table[bit(x)];
    if (table[px] != px) return Witness{x};
    return std::nullopt;
  }, exec);
  rep.finitary = verdict("finitary", wf, wf ? "{x}_r is not an r-ideal for x = " +
                                                  h.labels()[(*wf)[0]] : "");

  if (k * k * k > kModularBudget) {
    rep.modular.axiom = "modular";
    rep.modular.passed = false;
    rep.modular.skipped = true;
    rep.modular.detail = "skipped: " + std::to_string(k) + " r-ideals exceed the triple budget";
    return rep;
  }
  auto wm = scan(k, [&](std::size_t i) -> std::optional<Witness> {
    const Subset I = ideals[i];
    for (std::size_t nn = 0; nn < k; ++nn) {
      const Subset N = ideals[nn];
      if (!subset_of(I, N)) continue;
      for (std::size_t j = 0; j < k; ++j) {
        const Subset J = ideals[j];
        if (!subset_of(table[I | J] & N, table[I | (J & N)])) {
          return Witness{static_cast<std::size_t>(I), static_cast<std::size_t>(J),
                         static_cast<std::size_t>(N)};
        }
      }
    }
    return std::nullopt;
  }, exec);
  rep.modular = verdict("modular", wm, wm ? "(I u J)_r n N is not inside (I u (J n N))_r for I = " +
                                                mask_text(h, (*wm)[0]) + ", J = " +
                                                mask_text(h, (*wm)[1]) + ", N = " +
                                                mask_text(h, (*wm)[2]) : "");
  return rep;
}

// ---- ideals and lattices ---------------------------------------------------------------------

std::vector<Subset> r_ideals(const WeakIdealSystem& r) {
  const auto& h = r.monoid();
  if (h.size() <= kMaterializeLimit) return fixed_points(r.materialize());
  std::vector<Subset> out{r.closure(0)};
  std::vector<Subset> principal;
  for (std::size_t x = 0; x < h.size(); ++x) principal.push_back(r.closure(bit(x)));
  // Close the principal ideals under r-joins.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Subset p : principal) {
      const Subset j = r.closure(out[i] | p);
      if (std::find(out.begin(), out.end(), j) == out.end()) {
        out.push_back(j);
        if (out.size() > kMaxIdeals) {
          throw Error(ErrorKind::TooLarge, r.name() + ": more than " +
                                               std::to_string(kMaxIdeals) + " r-ideals");
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::vector<std::size_t> regular_elements(const WeakIdealSystem& r) {
  const auto& h = r.monoid();
  const std::size_t n = h.size();
  std::vector<Subset> table;
  if (n <= kMaterializeLimit) table = r.materialize();
  auto cl = [&](Subset x) { return table.empty() ? r.closure(x) : table[x]; };
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n; ++x) {
    if (!h.is_cancellative(x)) continue;
    bool ok = true;
    if (n <= kMaterializeLimit) {
      for (std::size_t a = 0; a < table.size() && ok; ++a) ok = cl(h.scale(x, a)) == h.scale(x, cl(a));
    } else {
      for (Subset a : r_ideals(r)) {
        if (!(ok = cl(h.scale(x, a)) == h.scale(x, a))) break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::size_t IdealLattice::index_of(Subset ideal) const {
  const auto it = std::find(ideals.begin(), ideals.end(), ideal);
  if (it == ideals.end()) throw Error(ErrorKind::ForeignElement, "not an element of this ideal lattice");
  return static_cast<std::size_t>(it - ideals.begin());
}

IdealLattice build_ideal_lattice(const WeakIdealSystem& r, bool regular_only) {
  const auto& h = r.monoid();
  auto ideals = r_ideals(r);
  Subset reg = 0;
  if (regular_only) {
    for (auto y : regular_elements(r)) reg |= bit(y);
    const Subset bottom = r.closure(0);
    std::erase_if(ideals, [&](Subset i) { return i != bottom && (i & reg) == 0; });
    if (ideals.size() < 2) {
      throw Error(ErrorKind::EmptyRegularCarrier,
                  r.name() + ": the regular part has no element besides the closure of the empty set");
    }
  }
  const std::size_t k = ideals.size();
  std::map<Subset, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos[ideals[i]] = i;

  LatticeTables t;
  t.name = r.name() + (regular_only ? "+reg" : "");
  for (Subset i : ideals) t.labels.push_back(h.format(i));
  t.leq.assign(k, std::vector<int>(k));
  t.mul.assign(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      t.leq[i][j] = subset_of(ideals[i], ideals[j]) ? 1 : 0;
      Subset p = r.closure(h.product(ideals[i], ideals[j]));
      if (regular_only && !pos.count(p)) {
        // A product that leaves the regular carrier has no regular element; it sits at the bottom.
        if ((p & reg) == 0) p = ideals.front();
      }
      const auto it = pos.find(p);
      if (it == pos.end()) {
        throw Error(ErrorKind::AxiomViolation, r.name() + ": (IJ)_r = " + h.format(p) +
                                                   " is not an r-ideal for I = " +
                                                   h.format(ideals[i]) + ", J = " +
                                                   h.format(ideals[j]));
      }
      t.mul[i][j] = static_cast<int>(it->second);
    }
  }
  const Origin origin = r.kind() == SystemKind::DRing ? Origin::RingIdeals : Origin::MonoidIdeals;
  try {
    return {FiniteMultLattice::from_tables(std::move(t), r.name(), origin), std::move(ideals)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::AxiomViolation, e.what());
    throw;
  }
}

Invertibility r_invertible(const WeakIdealSystem& r, Subset ideal) {
  const auto& h = r.monoid();
  const auto ideals = r_ideals(r);
  const auto regular = regular_elements(r);
  for (Subset j : ideals) {
    const Subset p = r.closure(h.product(ideal, j));
    for (std::size_t y : regular) {
      const Subset yh = h.scale(y, h.all());
      if (p == yh && r.closure(yh) == yh) return {true, j, y};
    }
  }
  return {};
}

// ---- bridge ----------------------------------------------------------------------------------

std::vector<CheckResult> check_bridge(const WeakIdealSystem& r, Exec exec) {
  const auto& h = r.monoid();
  const auto report = validate_system(r, exec);
  std::vector<CheckResult> out;
  if (!report.ok()) {
    out.push_back({"system axioms", false, 0, report.first_failure()->detail});
    return out;
  }
  const auto full = build_ideal_lattice(r, false);
  std::optional<IdealLattice> reg;
  try {
    reg = build_ideal_lattice(r, true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyRegularCarrier) throw;
  }
  const auto& L = *full.lattice;
  const auto preds = all_predicates(L, exec);
  std::vector<IndexPredicates> reg_preds;
  if (reg) reg_preds = all_predicates(*reg->lattice, exec);
  const auto inv = parallel_map<Invertibility>(
      full.ideals.size(), [&](std::size_t i) { return r_invertible(r, full.ideals[i]); }, exec);
  const bool modular = report.modular.passed;

  auto reg_index = [&](Subset ideal) -> std::optional<std::size_t> {
    if (!reg) return std::nullopt;
    const auto it = std::find(reg->ideals.begin(), reg->ideals.end(), ideal);
    if (it == reg->ideals.end()) return std::nullopt;
    return static_cast<std::size_t>(it - reg->ideals.begin());
  };

  CheckResult one{"r-invertible implies weak meet principal and cancellative", true, 0, {}};
  CheckResult two{"modular: r-invertible implies ell-invertible", true, 0, {}};
  for (std::size_t i = 0; i < full.ideals.size(); ++i) {
    if (!inv[i].invertible) continue;
    const std::string name = h.format(full.ideals[i]);
    ++one.checked;
    if (one.passed && !(preds[i].weak_meet_principal && preds[i].cancellative)) {
      one.passed = false;
      one.witness = name + " in I_r(H)";
    }
    const auto ri = reg_index(full.ideals[i]);
    if (ri && one.passed && !(reg_preds[*ri].weak_meet_principal && reg_preds[*ri].cancellative)) {
      one.passed = false;
      one.witness = name + " in the regular part";
    }
    if (!modular) continue;
    ++two.checked;
    if (two.passed && !preds[i].ell_invertible()) {
      two.passed = false;
      two.witness = name + " in I_r(H)";
    }
    if (ri && two.passed && !reg_preds[*ri].ell_invertible()) {
      two.passed = false;
      two.witness = name + " in the regular part";
    }
  }
  if (!modular) two.witness = "not applicable: the system is not modular";
  out.push_back(one);
  out.push_back(two);

  CheckResult three{"regular part: ell-invertible implies r-invertible", true, 0, {}};
  if (reg) {
    for (std::size_t i = 0; i < reg->ideals.size(); ++i) {
      if (!reg_preds[i].ell_invertible()) continue;
      ++three.checked;
      if (!r_invertible(r, reg->ideals[i]).invertible) {
        three.passed = false;
        three.witness = h.format(reg->ideals[i]);
        break;
      }
    }
  } else {
    three.witness = "not applicable: empty regular carrier";
  }
  out.push_back(three);

  // The three finitary criteria, evaluated literally on the finite carrier.
  const auto table = r.materialize(exec);
  bool crit_a = true;
  for (std::size_t x = 0; x < table.size() && crit_a; ++x) {
    Subset u = 0;
    for (Subset e = x;; e = (e - 1) & x) {
      u |= table[e];
      if (e == 0) break;
    }
    crit_a = u == table[x];
  }
  bool crit_b = true, crit_c = true;
  for (std::size_t i = 0; i < full.ideals.size(); ++i) crit_b = crit_b && L.is_compact(L.at(i));
  for (std::size_t x = 0; x < h.size(); ++x) {
    const auto it = std::find(full.ideals.begin(), full.ideals.end(), table[bit(x)]);
    crit_c = crit_c && it != full.ideals.end() &&
             L.is_compact(L.at(static_cast<std::size_t>(it - full.ideals.begin())));
  }
  CheckResult fin{"finitary criteria agree", crit_a == crit_b && crit_b == crit_c,
                  table.size() + full.ideals.size() + h.size(), {}};
  fin.witness = std::string("union of finite closures: ") + (crit_a ? "yes" : "no") +
                ", f.g. ideals compact: " + (crit_b ? "yes" : "no") +
                ", principal closures compact: " + (crit_c ? "yes" : "no");
  out.push_back(fin);

  CheckResult pg{"modular with invertible unions gives principally generated regular part", true, 0, {}};
  if (reg && modular) {
    bool unions = true;
    for (Subset I : reg->ideals) {
      Subset u = 0;
      for (std::size_t i = 0; i < full.ideals.size(); ++i) {
        if (inv[i].invertible && subset_of(full.ideals[i], I)) u |= full.ideals[i];
      }
      if (r.closure(u) != I && I != r.closure(0)) {
        unions = false;
        break;
      }
    }
    if (unions) {
      pg.checked = reg->ideals.size();
      const auto lp = lattice_predicates(*reg->lattice);
      pg.passed = lp.principally_generated.value;
      if (!pg.passed) pg.witness = "regular part reports not principally generated";
    } else {
      pg.witness = "not applicable: some regular ideal is not a union of r-invertible ideals";
    }
  } else {
    pg.witness = reg ? "not applicable: the system is not modular" : "not applicable: empty regular carrier";
  }
  out.push_back(pg);
  return out;
}

// ---- documents -------------------------------------------------------------------------------

bool is_system_selector(std::string_view selector) {
  return selector.starts_with("s-system:") || selector.starts_with("d-system:");
}

WeakIdealSystem make_builtin_system(std::string_view selector) {
  auto modulus = [&](std::string_view prefix) -> std::size_t {
    const auto rest = selector.substr(prefix.size());
    std::size_t n = 0;
    const auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc{} || p != rest.data() + rest.size()) {
      parse_fail("bad modulus in selector '" + std::string(selector) + "'");
    }
    return n;
  };
  if (selector.starts_with("s-system:zmod-mult:")) {
    return WeakIdealSystem::s(FiniteMonoid::zmod(modulus("s-system:zmod-mult:"), false));
  }
  if (selector.starts_with("d-system:zmod:")) {
    return WeakIdealSystem::d_ring(FiniteMonoid::zmod(modulus("d-system:zmod:"), true));
  }
  parse_fail("unknown ideal-system selector '" + std::string(selector) +
             "' (expected s-system:zmod-mult:N or d-system:zmod:N)");
}

bool is_monoid_document(const nlohmann::json& doc) {
  return doc.is_object() && doc.contains("cayley");
}

WeakIdealSystem parse_system_document(const nlohmann::json& doc) {
  try {
    auto h = FiniteMonoid::from_json(doc);
    if (doc.contains("closure")) {
      const auto& c = doc["closure"];
      if (!c.is_object()) parse_fail("\"closure\" must map subset masks to masks");
      const std::size_t n = h.size();
      if (n > kMaterializeLimit) throw Error(ErrorKind::TooLarge, "explicit closure on more than 12 elements");
      std::vector<Subset> table(std::size_t{1} << n);
      std::vector<char> seen(table.size());
      for (const auto& [key, value] : c.items()) {
        std::size_t x = 0;
        const auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), x);
        if (ec != std::errc{} || p != key.data() + key.size() || x >= table.size()) {
          parse_fail("closure key '" + key + "' is not a subset mask");
        }
        if (!value.is_number_unsigned()) parse_fail("closure of " + key + " must be a mask");
        table[x] = value.get<Subset>();
        seen[x] = 1;
      }
      for (std::size_t x = 0; x < seen.size(); ++x) {
        if (!seen[x]) parse_fail("closure table is missing mask " + std::to_string(x));
      }
      return WeakIdealSystem::explicit_table(std::move(h), std::move(table));
    }
    const std::string builtin = doc.value("builtin", std::string("s"));
    if (builtin == "s") return WeakIdealSystem::s(std::move(h));
    if (builtin == "d-ring") return WeakIdealSystem::d_ring(std::move(h));
    parse_fail("unknown closure builtin '" + builtin + "'");
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("malformed monoid document: ") + e.what());
  }
}

nlohmann::json system_to_json(const WeakIdealSystem& r) {
  auto doc = r.monoid().to_json();
  switch (r.kind()) {
    case SystemKind::S: doc["builtin"] = "s"; break;
    case SystemKind::DRing: doc["builtin"] = "d-ring"; break;
    case SystemKind::Explicit: {
      nlohmann::json c = nlohmann::json::object();
      const auto table = r.materialize(Exec::Serial);
      for (std::size_t x = 0; x < table.size(); ++x) c[std::to_string(x)] = table[x];
      doc["closure"] = c;
      break;
    }
  }
  return doc;
}

nlohmann::json system_report_to_json(const WeakIdealSystem& r, const SystemReport& report) {
  const auto& h = r.monoid();
  auto axiom = [&](const AxiomResult& a, bool elements_first) {
    nlohmann::json w = nlohmann::json::array();
    for (std::size_t i = 0; i < a.witness.size(); ++i) {
      if (elements_first && i == 0) w.push_back(h.labels()[a.witness[i]]);
      else w.push_back(h.format(a.witness[i]));
    }
    nlohmann::json j{{"axiom", a.axiom}, {"passed", a.passed}};
    if (a.skipped) j["skipped"] = true;
    if (!a.passed) {
      j["witness"] = w;
      j["detail"] = a.detail;
    }
    return j;
  };
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& a : report.axioms) axioms.push_back(axiom(a, a.axiom == "C"));
  nlohmann::json fin{{"axiom", report.finitary.axiom}, {"passed", report.finitary.passed}};
  if (!report.finitary.passed) fin["detail"] = report.finitary.detail;
  return {{"system", r.name()},
          {"axioms", axioms},
          {"ideal_system", axiom(report.ideal_system, true)},
          {"finitary", fin},
          {"modular", axiom(report.modular, false)}};
}

}  // namespace radfact
