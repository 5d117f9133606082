#include "radfact/finite_lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace radfact {

namespace {

constexpr std::size_t kLocalizeTableLimit = 128;

using Witness = std::vector<std::size_t>;

// Smallest-index failure of body(i); body scans its own inner loops in lexicographic order,
// so the overall witness is the lexicographically first one under either execution mode.
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

std::string show_witness(const LatticeTables& t, const Witness& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += w[i] < t.labels.size() ? t.labels[w[i]] : "#" + std::to_string(w[i]);
  }
  return out + ")";
}

AxiomResult result(std::string name, const std::optional<Witness>& w, const LatticeTables& t,
                   const std::string& what = {}) {
  AxiomResult r;
  r.axiom = std::move(name);
  if (w) {
    r.passed = false;
    r.witness = *w;
    r.detail = (what.empty() ? std::string("fails at ") : what + " at ") + show_witness(t, *w);
  }
  return r;
}

AxiomResult skipped(std::string name) {
  AxiomResult r;
  r.axiom = std::move(name);
  r.passed = false;
  r.skipped = true;
  r.detail = "skipped: a prerequisite failed";
  return r;
}

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

std::vector<std::vector<int>> read_matrix(const nlohmann::json& doc, const char* field,
                                          std::size_t n) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    parse_fail(std::string("missing array field \"") + field + "\"");
  }
  const auto& rows = doc[field];
  if (rows.size() != n) {
    parse_fail(std::string(field) + " has " + std::to_string(rows.size()) + " rows, expected " +
               std::to_string(n));
  }
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      parse_fail(std::string(field) + " is not square (row " + std::to_string(i) + ")");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number_integer()) {
        parse_fail(std::string(field) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                   "] is not an integer");
      }
      m[i][j] = rows[i][j].get<int>();
    }
  }
  return m;
}

}  // namespace

bool ValidationReport::order_ok() const {
  for (const auto& a : axioms) {
    if ((a.axiom == "reflexive" || a.axiom == "antisymmetric" || a.axiom == "transitive") &&
        !a.passed) {
      return false;
    }
  }
  return true;
}

bool ValidationReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* ValidationReport::first_failure() const {
  for (const auto& a : axioms) {
    if (!a.passed && !a.skipped) return &a;
  }
  return nullptr;
}

LatticeTables parse_tables(const nlohmann::json& doc) {
  if (!doc.is_object()) parse_fail("document is not a JSON object");
  LatticeTables t;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail("name is not a string");
    t.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    parse_fail("missing array field \"elements\"");
  }
  std::set<std::string> seen;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) parse_fail("element labels must be strings");
    if (!seen.insert(e.get<std::string>()).second) parse_fail("duplicate label " + e.dump());
    t.labels.push_back(e.get<std::string>());
  }
  const std::size_t n = t.labels.size();
  if (n == 0) parse_fail("no elements");
  t.leq = read_matrix(doc, "leq", n);
  t.mul = read_matrix(doc, "mul", n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t.leq[i][j] != 0 && t.leq[i][j] != 1) parse_fail("leq entries must be 0 or 1");
      if (t.mul[i][j] < 0 || static_cast<std::size_t>(t.mul[i][j]) >= n) {
        parse_fail("mul[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                   std::to_string(t.mul[i][j]) + " is out of range");
      }
    }
  }
  return t;
}

LatticeTables parse_tables(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(e.what());
  }
  return parse_tables(doc);
}

nlohmann::json tables_to_json(const LatticeTables& t) {
  return {{"name", t.name}, {"elements", t.labels}, {"leq", t.leq}, {"mul", t.mul}};
}

std::string dump_tables(const LatticeTables& t) {
  std::ostringstream out;
  auto matrix = [&](const std::vector<std::vector<int>>& m) {
    out << "[\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << "    " << nlohmann::json(m[i]).dump() << (i + 1 < m.size() ? ",\n" : "\n");
    }
    out << "  ]";
  };
  out << "{\n  \"name\": " << nlohmann::json(t.name).dump() << ",\n";
  out << "  \"elements\": " << nlohmann::json(t.labels).dump() << ",\n";
  out << "  \"leq\": ";
  matrix(t.leq);
  out << ",\n  \"mul\": ";
  matrix(t.mul);
  out << "\n}\n";
  return out.str();
}

ValidationReport validate_tables(const LatticeTables& t, Exec exec) {
  ValidationReport rep;
  const std::size_t n = t.size();
  auto le = [&](std::size_t a, std::size_t b) { return t.leq[a][b] != 0; };
  auto mul = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t.mul[a][b]); };

  rep.axioms.push_back(result("reflexive", scan(n, [&](std::size_t i) -> std::optional<Witness> {
    if (!le(i, i)) return Witness{i};
    return std::nullopt;
  }, exec), t));
  rep.axioms.push_back(result("antisymmetric", scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (le(i, j) && le(j, i)) return Witness{i, j};
    }
    return std::nullopt;
  }, exec), t, "cycle"));
  rep.axioms.push_back(result("transitive", scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = 0; j < n; ++j) {
      if (!le(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (le(j, k) && !le(i, k)) return Witness{i, j, k};
      }
    }
    return std::nullopt;
  }, exec), t));

  const char* lattice_axioms[] = {"greatest element", "least element", "binary joins",
                                  "binary meets"};
  const char* monoid_axioms[] = {"mul commutative", "mul associative", "top is identity",
                                 "mul distributes over join", "bottom annihilates"};
  if (!rep.order_ok()) {
    for (auto* a : lattice_axioms) rep.axioms.push_back(skipped(a));
    for (auto* a : monoid_axioms) rep.axioms.push_back(skipped(a));
    rep.modular = skipped("modular");
    rep.domain = skipped("domain");
    return rep;
  }

  auto extreme = [&](bool greatest) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) ok = greatest ? le(j, i) : le(i, j);
      if (ok) return i;
    }
    return std::nullopt;
  };
  // Index of the element missing from the extreme, for a witness: the first maximal (or
  // minimal) element that is not comparable with everything.
  auto extreme_witness = [&](bool greatest) {
    Witness w;
    for (std::size_t i = 0; i < n; ++i) {
      bool is_extremal = true;
      for (std::size_t j = 0; j < n && is_extremal; ++j) {
        if (j != i && (greatest ? le(i, j) : le(j, i))) is_extremal = false;
      }
      if (is_extremal) w.push_back(i);
    }
    return w;
  };
  auto top = extreme(true);
  auto bottom = extreme(false);
  rep.axioms.push_back(result("greatest element",
                              top ? std::nullopt : std::optional<Witness>(extreme_witness(true)),
                              t, "no unique top; maximal elements"));
  rep.axioms.push_back(result("least element",
                              bottom ? std::nullopt : std::optional<Witness>(extreme_witness(false)),
                              t, "no unique bottom; minimal elements"));

  // bound(i, j, upper): the least upper (or greatest lower) bound, if it exists.
  auto bound = [&](std::size_t i, std::size_t j, bool upper) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < n; ++c) {
      bool is_bound = upper ? (le(i, c) && le(j, c)) : (le(c, i) && le(c, j));
      if (!is_bound) continue;
      bool best = true;
      for (std::size_t d = 0; d < n && best; ++d) {
        bool other = upper ? (le(i, d) && le(j, d)) : (le(d, i) && le(d, j));
        if (other && !(upper ? le(c, d) : le(d, c))) best = false;
      }
      if (best) return c;
    }
    return std::nullopt;
  };
  std::vector<std::size_t> join(n * n), meet(n * n);
  auto join_fail = scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = 0; j < n; ++j) {
      auto b = bound(i, j, true);
      if (!b) return Witness{i, j};
      join[i * n + j] = *b;
    }
    return std::nullopt;
  }, exec);
  auto meet_fail = scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = 0; j < n; ++j) {
      auto b = bound(i, j, false);
      if (!b) return Witness{i, j};
      meet[i * n + j] = *b;
    }
    return std::nullopt;
  }, exec);
  rep.axioms.push_back(result("binary joins", join_fail, t, "no least upper bound"));
  rep.axioms.push_back(result("binary meets", meet_fail, t, "no greatest lower bound"));

  rep.axioms.push_back(result("mul commutative", scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mul(i, j) != mul(j, i)) return Witness{i, j};
    }
    return std::nullopt;
  }, exec), t));
  rep.axioms.push_back(result("mul associative", scan(n, [&](std::size_t i) -> std::optional<Witness> {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (mul(mul(i, j), k) != mul(i, mul(j, k))) return Witness{i, j, k};
      }
    }
    return std::nullopt;
  }, exec), t));
  if (top) {
    rep.axioms.push_back(result("top is identity", scan(n, [&](std::size_t i) -> std::optional<Witness> {
      if (mul(*top, i) != i || mul(i, *top) != i) return Witness{i};
      return std::nullopt;
    }, exec), t, "1 * x != x"));
  } else {
    rep.axioms.push_back(skipped("top is identity"));
  }
  if (!join_fail) {
    rep.axioms.push_back(result("mul distributes over join", scan(n, [&](std::size_t a) -> std::optional<Witness> {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (mul(a, join[b * n + c]) != join[mul(a, b) * n + mul(a, c)]) return Witness{a, b, c};
        }
      }
      return std::nullopt;
    }, exec), t, "a(b v c) != ab v ac"));
  } else {
    rep.axioms.push_back(skipped("mul distributes over join"));
  }
  if (bottom) {
    rep.axioms.push_back(result("bottom annihilates", scan(n, [&](std::size_t i) -> std::optional<Witness> {
      if (mul(i, *bottom) != *bottom || mul(*bottom, i) != *bottom) return Witness{i};
      return std::nullopt;
    }, exec), t, "x * 0 != 0"));
  } else {
    rep.axioms.push_back(skipped("bottom annihilates"));
  }

  if (!join_fail && !meet_fail) {
    rep.modular = result("modular", scan(n, [&](std::size_t x) -> std::optional<Witness> {
      for (std::size_t z = 0; z < n; ++z) {
        if (!le(x, z)) continue;
        for (std::size_t y = 0; y < n; ++y) {
          if (meet[join[x * n + y] * n + z] != join[x * n + meet[y * n + z]]) {
            return Witness{x, y, z};
          }
        }
      }
      return std::nullopt;
    }, exec), t, "(x v y) ^ z != x v (y ^ z)");
  } else {
    rep.modular = skipped("modular");
  }
  if (bottom) {
    rep.domain = result("domain", scan(n, [&](std::size_t a) -> std::optional<Witness> {
      if (a == *bottom) return std::nullopt;
      for (std::size_t b = 0; b < n; ++b) {
        if (b != *bottom && mul(a, b) == *bottom) return Witness{a, b};
      }
      return std::nullopt;
    }, exec), t, "zero divisors");
  } else {
    rep.domain = skipped("domain");
  }
  return rep;
}

FiniteMultLattice::FiniteMultLattice(Private, LatticeTables tables, ValidationReport report,
                                     std::string note, Origin origin)
    : tables_(std::move(tables)),
      report_(std::move(report)),
      origin_note_(std::move(note)),
      origin_(origin),
      n_(tables_.size()) {
  const std::size_t n = n_;
  leq_.resize(n * n);
  mul_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      leq_[i * n + j] = static_cast<std::uint8_t>(tables_.leq[i][j]);
      mul_[i * n + j] = static_cast<std::size_t>(tables_.mul[i][j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool is_top = true, is_bottom = true;
    for (std::size_t j = 0; j < n; ++j) {
      is_top = is_top && leq_i(j, i);
      is_bottom = is_bottom && leq_i(i, j);
    }
    if (is_top) top_ = i;
    if (is_bottom) bottom_ = i;
  }
  join_.resize(n * n);
  meet_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Joins exist, so the least upper bound is the upper bound below all others.
      std::size_t best_j = top_, best_m = bottom_;
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_i(i, c) && leq_i(j, c) && leq_i(c, best_j)) best_j = c;
        if (leq_i(c, i) && leq_i(c, j) && leq_i(best_m, c)) best_m = c;
      }
      join_[i * n + j] = best_j;
      meet_[i * n + j] = best_m;
    }
  }
  residual_.resize(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t acc = bottom_;
      for (std::size_t a = 0; a < n; ++a) {
        if (leq_i(mul_i(a, x), y)) acc = join_i(acc, a);
      }
      residual_[y * n + x] = acc;
    }
  }
  prime_flag_.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    if (p == top_) continue;
    bool prime = true;
    for (std::size_t a = 0; a < n && prime; ++a) {
      if (leq_i(a, p)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!leq_i(b, p) && leq_i(mul_i(a, b), p)) {
          prime = false;
          break;
        }
      }
    }
    if (prime) {
      prime_flag_[p] = 1;
      primes_.push_back(p);
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (m == top_) continue;
    bool maximal = true;
    for (std::size_t y = 0; y < n && maximal; ++y) {
      if (y != m && y != top_ && leq_i(m, y)) maximal = false;
    }
    if (maximal) maximals_.push_back(m);
  }
  // Both forms of the radical; in a finite (hence compactly generated) lattice they agree.
  radical_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t by_primes = top_;
    for (auto p : primes_) {
      if (leq_i(x, p)) by_primes = meet_i(by_primes, p);
    }
    std::size_t by_powers = bottom_;
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t pw = y;
      while (true) {
        if (leq_i(pw, x)) {
          by_powers = join_i(by_powers, y);
          break;
        }
        std::size_t next = mul_i(pw, y);
        if (next == pw) break;
        pw = next;
      }
    }
    if (by_primes != by_powers) {
      throw Error(ErrorKind::AxiomViolation,
                  "radical forms disagree at " + tables_.labels[x] + ": prime meet " +
                      tables_.labels[by_primes] + ", power join " + tables_.labels[by_powers]);
    }
    radical_[x] = by_primes;
    if (by_primes == x) radicals_.push_back(x);
  }
  if (n <= kLocalizeTableLimit) {
    localized_.resize(n * primes_.size());
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t k = 0; k < primes_.size(); ++k) {
        localized_[x * primes_.size() + k] = localize_compute(x, primes_[k]);
      }
    }
  }
}

std::size_t FiniteMultLattice::localize_compute(std::size_t x, std::size_t p) const {
  std::size_t acc = bottom_;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (!leq_i(b, p) && leq_i(mul_i(a, b), x)) {
        acc = join_i(acc, a);
        break;
      }
    }
  }
  return acc;
}

std::size_t FiniteMultLattice::localize_i(std::size_t x, std::size_t p) const {
  if (!localized_.empty()) {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it != primes_.end() && *it == p) {
      return localized_[x * primes_.size() + static_cast<std::size_t>(it - primes_.begin())];
    }
  }
  return localize_compute(x, p);
}

bool FiniteMultLattice::is_prime_i(std::size_t p) const { return prime_flag_.at(p) != 0; }

Capabilities FiniteMultLattice::capabilities() const {
  Capabilities c;
  c.finite_enumerable = true;
  c.primes_enumerable = true;
  c.maximals_enumerable = true;
  c.domain_declared = report_.domain.passed;
  c.modular_declared = report_.modular.passed;
  c.c_lattice_declared = true;
  c.note = "finite table: every element is compact; predicates decided exhaustively";
  return c;
}

std::size_t FiniteMultLattice::index_of(const ElemRef& x) const {
  check(x);
  return ix(x.key());
}

std::optional<std::size_t> FiniteMultLattice::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (tables_.labels[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<Key> FiniteMultLattice::do_elements() const {
  std::vector<Key> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(k(i));
  return out;
}

std::vector<Key> FiniteMultLattice::keys(const std::vector<std::size_t>& idx) const {
  std::vector<Key> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(k(i));
  return out;
}

std::vector<Key> FiniteMultLattice::do_window_seeds(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
  std::vector<Key> out = keys(primes_);
  for (int i = 0; i < 32; ++i) out.push_back(k(pick(rng)));
  return out;
}

Key FiniteMultLattice::do_parse(std::string_view text) const {
  if (auto i = find_label(text)) return k(*i);
  if (!text.empty() && text.front() == '#') {
    std::size_t idx = 0;
    std::istringstream in{std::string(text.substr(1))};
    if (in >> idx && in.eof() && idx < n_) return k(idx);
  }
  throw Error(ErrorKind::ParseError, "no element labelled '" + std::string(text) + "' in " + name());
}

std::shared_ptr<const FiniteMultLattice> FiniteMultLattice::from_tables(LatticeTables tables,
                                                                        std::string note,
                                                                        Origin origin) {
  auto report = validate_tables(tables);
  if (!report.order_ok()) {
    const auto* f = report.first_failure();
    const std::string what = f->axiom == "antisymmetric" ? "not antisymmetric" : "not " + f->axiom;
    throw Error(ErrorKind::ParseError, what + ": " + f->detail);
  }
  if (!report.ok()) {
    const auto* f = report.first_failure();
    throw Error(ErrorKind::AxiomViolation, f->axiom + " " + f->detail);
  }
  return std::make_shared<const FiniteMultLattice>(Private{}, std::move(tables), std::move(report),
                                                   std::move(note), origin);
}

std::shared_ptr<const FiniteMultLattice> FiniteMultLattice::load(std::string_view text) {
  return from_tables(parse_tables(text));
}

std::shared_ptr<const FiniteMultLattice> FiniteMultLattice::load_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

FiniteLatticeHandle materialize_from_divisors(std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidModulus, "modulus must be at least 2, got " + std::to_string(n));
  std::vector<std::int64_t> divs;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  const std::size_t m = divs.size();
  LatticeTables t;
  t.name = "zmod:" + std::to_string(n);
  for (auto d : divs) t.labels.push_back(std::to_string(d));
  t.leq.assign(m, std::vector<int>(m));
  t.mul.assign(m, std::vector<int>(m));
  auto index = [&](std::int64_t d) {
    return static_cast<int>(std::lower_bound(divs.begin(), divs.end(), d) - divs.begin());
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      t.leq[i][j] = divs[i] % divs[j] == 0 ? 1 : 0;
      const auto prod = static_cast<std::int64_t>(static_cast<__int128>(divs[i]) * divs[j] % n);
      t.mul[i][j] = index(std::gcd(prod, n));
    }
  }
  return FiniteMultLattice::from_tables(std::move(t), "ideals of Z/" + std::to_string(n),
                                        Origin::RingIdeals);
}

FiniteLatticeHandle chain_lattice(std::size_t k, bool nilpotent) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "a chain needs at least two elements");
  LatticeTables t;
  t.name = std::string(nilpotent ? "nilchain:" : "chain:") + std::to_string(k);
  for (std::size_t i = 0; i < k; ++i) {
    t.labels.push_back(i == 0 ? "0" : i + 1 == k ? "1" : "c" + std::to_string(i));
  }
  t.leq.assign(k, std::vector<int>(k));
  t.mul.assign(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      t.leq[i][j] = i <= j ? 1 : 0;
      if (nilpotent) {
        const std::size_t di = k - 1 - i, dj = k - 1 - j;
        t.mul[i][j] = static_cast<int>(k - 1 - std::min(di + dj, k - 1));
      } else {
        t.mul[i][j] = static_cast<int>(std::min(i, j));
      }
    }
  }
  return FiniteMultLattice::from_tables(std::move(t));
}

std::vector<IndexPredicates> all_predicates(const FiniteMultLattice& L, Exec exec) {
  const std::size_t n = L.size();
  return parallel_map<IndexPredicates>(
      n,
      [&](std::size_t x) {
        IndexPredicates r;
        const std::size_t zero_colon_x = L.residual_i(L.bottom_index(), x);
        for (std::size_t y = 0; y < n; ++y) {
          const std::size_t xy = L.mul_i(x, y);
          const std::size_t yx_res = L.residual_i(y, x);
          if (L.meet_i(x, y) != L.mul_i(yx_res, x)) r.weak_meet_principal = false;
          if (!L.leq_i(L.residual_i(xy, x), L.join_i(y, zero_colon_x))) r.weak_join_principal = false;
          for (std::size_t z = 0; z < n; ++z) {
            if (L.leq_i(xy, L.mul_i(x, z)) && !L.leq_i(y, z)) r.cancellative = false;
            if (L.meet_i(y, L.mul_i(z, x)) != L.mul_i(L.meet_i(yx_res, z), x)) r.meet_principal = false;
            if (L.join_i(y, L.residual_i(z, x)) != L.residual_i(L.join_i(xy, z), x)) {
              r.join_principal = false;
            }
          }
        }
        r.ell_prime = L.is_prime_i(x);
        const auto& ms = L.maximals_i();
        r.maximal = std::find(ms.begin(), ms.end(), x) != ms.end();
        r.ell_radical = L.radical_i(x) == x;
        return r;
      },
      exec);
}

}  // namespace radfact
