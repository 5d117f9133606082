#include "radfact/instances.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "radfact/finite_lattice.hpp"

namespace radfact {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const std::vector<std::int64_t>& prime_table() {
  static const std::vector<std::int64_t> table = [] {
    constexpr std::int64_t limit = 200000;
    std::vector<char> composite(limit + 1);
    std::vector<std::int64_t> ps;
    for (std::int64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return ps;
  }();
  return table;
}

std::optional<std::size_t> prime_index(std::int64_t p) {
  const auto& t = prime_table();
  auto it = std::lower_bound(t.begin(), t.end(), p);
  if (it == t.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - t.begin());
}

// Exponents of n over the rational primes, indexed by prime index.
std::vector<std::int64_t> factor(std::int64_t n) {
  std::vector<std::int64_t> exps;
  const auto& t = prime_table();
  for (std::size_t i = 0; n > 1; ++i) {
    if (i >= t.size()) bad("cannot factor " + std::to_string(n));
    const std::int64_t p = t[i];
    if (p * p > n) {
      auto idx = prime_index(n);
      if (!idx) bad("cannot factor " + std::to_string(n));
      exps.resize(std::max(exps.size(), *idx + 1));
      exps[*idx] += 1;
      break;
    }
    while (n % p == 0) {
      exps.resize(std::max(exps.size(), i + 1));
      exps[i] += 1;
      n /= p;
    }
  }
  return exps;
}

Key trim(Key v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

bool is_zero_key(const Key& k) { return k.size() == 1 && k[0] == -1; }

std::int64_t coord(const Key& k, std::size_t i) { return i < k.size() ? k[i] : 0; }

// Index of the unit vector e_i, if k is one.
std::optional<std::size_t> unit_index(const Key& k) {
  if (is_zero_key(k) || k.empty() || k.back() != 1) return std::nullopt;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (k[i] != 0) return std::nullopt;
  }
  return k.size() - 1;
}

Key unit_key(std::size_t i) {
  Key k(i + 1, 0);
  k[i] = 1;
  return k;
}

}  // namespace

std::int64_t nth_prime(std::size_t i) {
  const auto& t = prime_table();
  if (i >= t.size()) throw Error(ErrorKind::InvalidArgument, "prime index out of range");
  return t[i];
}

// ---------------------------------------------------------------------------------------------
// ExponentLattice

ExponentLattice::ExponentLattice(Config config) : config_(std::move(config)) {}

bool ExponentLattice::allowed(std::size_t i) const {
  if (config_.primes && i >= *config_.primes) return false;
  if (config_.support) return i < config_.support->size() && (*config_.support)[i];
  return true;
}

std::vector<std::size_t> ExponentLattice::allowed_indices() const {
  std::vector<std::size_t> out;
  if (!config_.primes) return out;
  for (std::size_t i = 0; i < *config_.primes; ++i) {
    if (allowed(i)) out.push_back(i);
  }
  return out;
}

Key ExponentLattice::checked(Key k) const {
  k = trim(std::move(k));
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) bad("negative exponent");
    if (k[i] != 0 && !allowed(i)) {
      bad("prime " + std::to_string(nth_prime(i)) + " is outside the carrier of " + name());
    }
  }
  return k;
}

ElemRef ExponentLattice::from_exponents(std::vector<std::int64_t> exps) const {
  return wrap(checked(Key(exps.begin(), exps.end())));
}

std::optional<std::vector<std::int64_t>> ExponentLattice::exponents(const ElemRef& x) const {
  check(x);
  if (is_zero_key(x.key())) return std::nullopt;
  std::vector<std::int64_t> v(x.key().begin(), x.key().end());
  if (config_.primes) v.resize(std::max(v.size(), *config_.primes));
  return v;
}

ElemRef ExponentLattice::unit(std::size_t prime_index) const {
  if (!allowed(prime_index)) throw Error(ErrorKind::InvalidArgument, "prime index outside carrier");
  return wrap(unit_key(prime_index));
}

Capabilities ExponentLattice::capabilities() const {
  Capabilities c;
  c.primes_enumerable = true;
  c.maximals_enumerable = bounded();
  c.domain_declared = true;
  c.modular_declared = true;
  c.c_lattice_declared = true;
  c.note = "exponent vectors: every element is compact (finitely generated ideal); the order is "
           "distributive; sums of nonzero vectors are nonzero";
  return c;
}

std::optional<int> ExponentLattice::dimension_closed_form() const {
  if (!bounded()) return 1;
  return allowed_indices().empty() ? 0 : 1;
}

bool ExponentLattice::do_leq(const Key& a, const Key& b) const {
  if (is_zero_key(a)) return true;
  if (is_zero_key(b)) return false;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (coord(a, i) < coord(b, i)) return false;
  }
  return true;
}

Key ExponentLattice::do_mul(const Key& a, const Key& b) const {
  if (is_zero_key(a) || is_zero_key(b)) return {-1};
  Key out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coord(a, i) + coord(b, i);
  return trim(std::move(out));
}

Key ExponentLattice::do_join(const Key& a, const Key& b) const {
  if (is_zero_key(a)) return b;
  if (is_zero_key(b)) return a;
  Key out(std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(a[i], b[i]);
  return trim(std::move(out));
}

Key ExponentLattice::do_meet(const Key& a, const Key& b) const {
  if (is_zero_key(a) || is_zero_key(b)) return {-1};
  Key out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(coord(a, i), coord(b, i));
  return trim(std::move(out));
}

Key ExponentLattice::do_residual(const Key& y, const Key& x) const {
  if (is_zero_key(x)) return {};
  if (is_zero_key(y)) return {-1};
  Key out(y.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max<std::int64_t>(y[i] - coord(x, i), 0);
  return trim(std::move(out));
}

Key ExponentLattice::do_radical(const Key& x) const {
  if (is_zero_key(x)) return x;
  Key out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] > 0 ? 1 : 0;
  return trim(std::move(out));
}

Key ExponentLattice::do_localize(const Key& x, const Key& p) const {
  if (is_zero_key(p)) return is_zero_key(x) ? x : Key{};
  if (is_zero_key(x)) return x;
  const auto i = unit_index(p);
  if (!i) throw Error(ErrorKind::NotPrime, do_format(p) + " is not prime");
  Key out(*i + 1, 0);
  out[*i] = coord(x, *i);
  return trim(std::move(out));
}

std::vector<std::size_t> ExponentLattice::spectrum_indices(std::span<const Key> context) const {
  if (bounded()) return allowed_indices();
  std::set<std::size_t> idx;
  std::size_t fresh = 0;
  for (const auto& k : context) {
    if (is_zero_key(k)) continue;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] != 0) idx.insert(i);
    }
    fresh = std::max(fresh, k.size());
  }
  idx.insert(fresh);  // a prime above none of the context elements
  return {idx.begin(), idx.end()};
}

std::vector<Key> ExponentLattice::do_primes(std::span<const Key> context) const {
  std::vector<Key> out{{-1}};
  for (auto i : spectrum_indices(context)) out.push_back(unit_key(i));
  return out;
}

std::vector<Key> ExponentLattice::do_maximals(std::span<const Key> context) const {
  std::vector<Key> out;
  for (auto i : spectrum_indices(context)) out.push_back(unit_key(i));
  return out;
}

std::optional<std::vector<Key>> ExponentLattice::do_radical_catalog() const {
  if (!bounded()) return std::nullopt;
  const auto idx = allowed_indices();
  if (idx.size() > 16) return std::nullopt;
  std::vector<Key> out;
  for (std::uint32_t mask = 0; mask < (1u << idx.size()); ++mask) {
    Key k;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      if (mask & (1u << b)) {
        k.resize(std::max(k.size(), idx[b] + 1));
        k[idx[b]] = 1;
      }
    }
    out.push_back(trim(std::move(k)));
  }
  out.push_back({-1});
  return out;
}

std::optional<std::uint64_t> ExponentLattice::do_valuation(const Key& x, const Key& m) const {
  const auto i = unit_index(m);
  if (!i || is_zero_key(x)) return std::nullopt;
  return static_cast<std::uint64_t>(coord(x, *i));
}

std::optional<std::uint64_t> ExponentLattice::spectrum_point(const ElemRef& m) const {
  if (bounded()) return Lattice::spectrum_point(m);
  check(m);
  auto i = unit_index(m.key());
  if (!i) return std::nullopt;
  return static_cast<std::uint64_t>(*i);
}

std::optional<ElemRef> ExponentLattice::maximal_at(std::uint64_t point) const {
  if (bounded()) return Lattice::maximal_at(point);
  return wrap(unit_key(static_cast<std::size_t>(point)));
}

std::vector<Key> ExponentLattice::do_window_seeds(std::uint64_t seed) const {
  std::vector<std::size_t> idx = bounded() ? allowed_indices() : std::vector<std::size_t>{0, 1, 2, 3};
  std::vector<Key> out;
  if (idx.empty()) return out;
  for (auto i : idx) out.push_back(unit_key(i));
  const std::size_t sq = std::min<std::size_t>(idx.size(), 6);
  for (std::uint32_t mask = 1; mask < (1u << sq); ++mask) {
    Key k;
    for (std::size_t b = 0; b < sq; ++b) {
      if (mask & (1u << b)) {
        k.resize(std::max(k.size(), idx[b] + 1));
        k[idx[b]] = 1;
      }
    }
    out.push_back(trim(std::move(k)));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> e(0, 3);
  for (int r = 0; r < 24; ++r) {
    Key k(idx.back() + 1, 0);
    for (auto i : idx) k[i] = e(rng);
    out.push_back(trim(std::move(k)));
  }
  return out;
}

std::string ExponentLattice::do_format(const Key& x) const {
  if (is_zero_key(x)) return "0";
  if (x.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(nth_prime(i)) + ":" + std::to_string(x[i]);
  }
  return out;
}

Key ExponentLattice::do_parse(std::string_view text) const {
  std::string s = strip_spaces(text);
  if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '{' && s.back() == '}'))) {
    s = s.substr(1, s.size() - 2);
  }
  if (s == "0") return {-1};
  if (s.empty() || s == "1") return {};
  if (s.find(':') != std::string::npos) {
    Key k;
    for (const auto& part : split(s, ',')) {
      auto kv = split(part, ':');
      if (kv.size() != 2) bad("expected prime:exponent, got '" + part + "'");
      auto p = parse_int(kv[0]);
      auto e = parse_int(kv[1]);
      if (!p || !e || *e < 0) bad("expected prime:exponent, got '" + part + "'");
      auto i = prime_index(*p);
      if (!i) bad(kv[0] + " is not a prime");
      k.resize(std::max(k.size(), *i + 1));
      k[*i] += *e;
    }
    return checked(std::move(k));
  }
  auto n = parse_int(s);
  if (!n || *n < 1) bad("cannot parse element '" + std::string(text) + "' of " + name());
  auto exps = factor(*n);
  return checked(Key(exps.begin(), exps.end()));
}

nlohmann::json ExponentLattice::do_to_json(const Key& x) const {
  if (is_zero_key(x)) return {{"zero", true}};
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) out[std::to_string(i)] = x[i];
  }
  return out;
}

ExponentHandle dedekind(std::optional<std::size_t> k) {
  if (k && *k == 0) throw Error(ErrorKind::InvalidArgument, "need at least one prime");
  ExponentLattice::Config c;
  c.primes = k;
  c.name = k ? "dedekind:" + std::to_string(*k) : "dedekind:unbounded";
  return std::make_shared<const ExponentLattice>(std::move(c));
}

ExponentHandle power_of_j(const std::vector<std::int64_t>& j) {
  std::vector<char> support(j.size());
  std::int64_t label = 1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent in J");
    if (j[i] > 1) {
      throw Error(ErrorKind::NotRadical, "J has exponent " + std::to_string(j[i]) + " at prime " +
                                             std::to_string(nth_prime(i)));
    }
    support[i] = static_cast<char>(j[i]);
    if (j[i]) label *= nth_prime(i);
  }
  ExponentLattice::Config c;
  c.primes = j.size();
  c.support = std::move(support);
  c.name = "power-of-j:" + std::to_string(label);
  c.origin = Origin::Abstract;
  return std::make_shared<const ExponentLattice>(std::move(c));
}

ExponentHandle power_of_j(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "J must be a positive integer");
  return power_of_j(factor(n));
}

// ---------------------------------------------------------------------------------------------
// Rank2ValuationLattice

namespace {

constexpr std::int64_t kEmpty = 0, kPrincipal = 1, kLimit = 2;

bool in_h(std::int64_t a, std::int64_t b) { return a > 0 || (a == 0 && b >= 0); }

// Total order: larger ideal = larger key. Limit(a) sits between every Principal(a+1, _) and
// every Principal(a, _).
std::array<std::int64_t, 3> rank_key(const Key& k) {
  switch (k[0]) {
    case kPrincipal: return {-k[1], 1, -k[2]};
    case kLimit: return {-(k[1] + 1), 2, 0};
    default: return {std::numeric_limits<std::int64_t>::min(), 0, 0};
  }
}

Key principal_key(std::int64_t a, std::int64_t b) { return {kPrincipal, a, b}; }
Key limit_key(std::int64_t a) { return {kLimit, a}; }
const Key kTop2 = {kPrincipal, 0, 0};

}  // namespace

Rank2ValuationLattice::Rank2ValuationLattice() = default;

Capabilities Rank2ValuationLattice::capabilities() const {
  Capabilities c;
  c.primes_enumerable = true;
  c.maximals_enumerable = true;
  c.domain_declared = true;
  c.modular_declared = true;
  c.c_lattice_declared = true;
  c.note = "s-ideals of a cancellative monoid form a chain (hence distributive); principal "
           "ideals are compact and Limit(a) is the join of all Principal(a+1, b)";
  return c;
}

ElemRef Rank2ValuationLattice::principal(std::int64_t a, std::int64_t b) const {
  if (!in_h(a, b)) {
    throw Error(ErrorKind::InvalidArgument,
                "(" + std::to_string(a) + "," + std::to_string(b) + ") is not in the monoid");
  }
  return wrap(principal_key(a, b));
}

ElemRef Rank2ValuationLattice::limit(std::int64_t a) const {
  if (a < 0) throw Error(ErrorKind::InvalidArgument, "Limit(a) needs a >= 0");
  return wrap(limit_key(a));
}

std::optional<bool> Rank2ValuationLattice::product_of_radicals_closed_form(const ElemRef& x) const {
  check(x);
  // Radicals are 1, P(0,1), Limit(0), Empty; their products are P(0,k), Limit(a), Empty.
  const Key& k = x.key();
  return k[0] != kPrincipal || k[1] == 0;
}

bool Rank2ValuationLattice::do_leq(const Key& a, const Key& b) const {
  return rank_key(a) <= rank_key(b);
}

Key Rank2ValuationLattice::do_mul(const Key& a, const Key& b) const {
  if (a[0] == kEmpty || b[0] == kEmpty) return {kEmpty};
  if (a[0] == kPrincipal && b[0] == kPrincipal) return principal_key(a[1] + b[1], a[2] + b[2]);
  if (a[0] == kLimit && b[0] == kLimit) return limit_key(a[1] + b[1] + 1);
  return limit_key(a[1] + b[1]);
}

Key Rank2ValuationLattice::do_join(const Key& a, const Key& b) const {
  return do_leq(a, b) ? b : a;
}

Key Rank2ValuationLattice::do_meet(const Key& a, const Key& b) const {
  return do_leq(a, b) ? a : b;
}

Key Rank2ValuationLattice::do_residual(const Key& y, const Key& x) const {
  if (x[0] == kEmpty) return kTop2;
  if (y[0] == kEmpty) return {kEmpty};
  const std::int64_t r = y[1];
  const std::int64_t p = x[1];
  if (x[0] == kPrincipal) {
    if (y[0] == kPrincipal) {
      const std::int64_t a = r - p, b = y[2] - x[2];
      return in_h(a, b) ? principal_key(a, b) : kTop2;
    }
    return r >= p ? limit_key(r - p) : kTop2;
  }
  return r - p >= 1 ? limit_key(r - p - 1) : kTop2;
}

Key Rank2ValuationLattice::do_radical(const Key& x) const {
  if (x[0] == kEmpty || x == kTop2) return x;
  if (x[0] == kPrincipal && x[1] == 0) return principal_key(0, 1);
  return limit_key(0);
}

Key Rank2ValuationLattice::do_localize(const Key& x, const Key& p) const {
  if (p == principal_key(0, 1)) return x;
  if (p[0] == kEmpty) return x[0] == kEmpty ? x : kTop2;
  if (p == limit_key(0)) {
    if (x[0] == kEmpty || x[0] == kLimit) return x;
    return x[1] == 0 ? kTop2 : limit_key(x[1] - 1);
  }
  throw Error(ErrorKind::NotPrime, do_format(p) + " is not prime");
}

std::vector<Key> Rank2ValuationLattice::do_primes(std::span<const Key>) const {
  return {{kEmpty}, limit_key(0), principal_key(0, 1)};
}

std::vector<Key> Rank2ValuationLattice::do_maximals(std::span<const Key>) const {
  return {principal_key(0, 1)};
}

std::optional<std::vector<Key>> Rank2ValuationLattice::do_radical_catalog() const {
  return std::vector<Key>{kTop2, principal_key(0, 1), limit_key(0), {kEmpty}};
}

std::optional<std::uint64_t> Rank2ValuationLattice::do_valuation(const Key& x, const Key& m) const {
  if (m != principal_key(0, 1) || x[0] != kPrincipal || x[1] != 0) return std::nullopt;
  return static_cast<std::uint64_t>(x[2]);
}

std::vector<Key> Rank2ValuationLattice::do_window_seeds(std::uint64_t seed) const {
  std::vector<Key> out = {
      principal_key(0, 1), limit_key(0),        principal_key(1, 0),  principal_key(1, 5),
      principal_key(1, -1), principal_key(0, 2), limit_key(1),         principal_key(1, 1),
      principal_key(2, -3), principal_key(0, 3), principal_key(2, 0),  limit_key(2),
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> ra(0, 3), rb(-6, 6);
  for (int i = 0; i < 16; ++i) {
    const std::int64_t a = ra(rng);
    std::int64_t b = rb(rng);
    if (a == 0) b = std::abs(b);
    out.push_back(i % 5 == 4 ? limit_key(a) : principal_key(a, b));
  }
  return out;
}

std::string Rank2ValuationLattice::do_format(const Key& x) const {
  switch (x[0]) {
    case kPrincipal: return "Principal(" + std::to_string(x[1]) + "," + std::to_string(x[2]) + ")";
    case kLimit: return "Limit(" + std::to_string(x[1]) + ")";
    default: return "Empty";
  }
}

Key Rank2ValuationLattice::do_parse(std::string_view text) const {
  const std::string s = strip_spaces(text);
  if (s == "Empty" || s == "empty" || s == "0") return {kEmpty};
  if (s == "Top" || s == "top" || s == "1" || s == "H") return kTop2;
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') bad("cannot parse rank2 element '" + s + "'");
  const std::string head = s.substr(0, open);
  const auto args = split(s.substr(open + 1, s.size() - open - 2), ',');
  std::vector<std::int64_t> v;
  for (const auto& a : args) {
    auto n = parse_int(a);
    if (!n) bad("bad integer '" + a + "' in '" + s + "'");
    v.push_back(*n);
  }
  if ((head == "Principal" || head == "P") && v.size() == 2) {
    if (!in_h(v[0], v[1])) bad("(" + args[0] + "," + args[1] + ") is not in the monoid");
    return principal_key(v[0], v[1]);
  }
  if ((head == "Limit" || head == "L") && v.size() == 1) {
    if (v[0] < 0) bad("Limit(a) needs a >= 0");
    return limit_key(v[0]);
  }
  bad("cannot parse rank2 element '" + s + "'");
}

Rank2Handle rank2_valuation() { return std::make_shared<const Rank2ValuationLattice>(); }

// ---------------------------------------------------------------------------------------------
// NumericalMonoidLattice

namespace {

struct Ideal {
  bool empty = true;
  std::int64_t c = 0;
  std::vector<char> below;

  bool has(std::int64_t n) const {
    if (empty || n < 0) return false;
    return n >= c || below[static_cast<std::size_t>(n)];
  }
};

Ideal decode(const Key& k) {
  Ideal I;
  if (k.size() == 1 && k[0] == -1) return I;
  I.empty = false;
  I.c = k[0];
  I.below.assign(static_cast<std::size_t>(I.c), 0);
  for (std::size_t i = 1; i < k.size(); ++i) I.below[static_cast<std::size_t>(k[i])] = 1;
  return I;
}

// Builds the canonical key from membership below a horizon T (everything >= T is a member).
template <class Pred>
Key encode(std::int64_t T, Pred member) {
  std::int64_t c = T;
  while (c > 0 && member(c - 1)) --c;
  Key k{c};
  for (std::int64_t n = 0; n < c; ++n) {
    if (member(n)) k.push_back(n);
  }
  return k;
}

}  // namespace

NumericalMonoidLattice::NumericalMonoidLattice(std::vector<std::int64_t> generators)
    : gens_(std::move(generators)) {
  if (gens_.empty()) throw Error(ErrorKind::InvalidGenerators, "no generators");
  std::int64_t g = 0;
  for (auto x : gens_) {
    if (x <= 0) throw Error(ErrorKind::InvalidGenerators, "generators must be positive");
    g = std::gcd(g, x);
  }
  if (g != 1) {
    throw Error(ErrorKind::InvalidGenerators, "generators have gcd " + std::to_string(g));
  }
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  min_gen_ = gens_.front();
  // Least element of each residue class mod the smallest generator (shortest paths).
  constexpr auto inf = std::numeric_limits<std::int64_t>::max();
  apery_.assign(static_cast<std::size_t>(min_gen_), inf);
  apery_[0] = 0;
  using Item = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, 0});
  while (!pq.empty()) {
    auto [d, r] = pq.top();
    pq.pop();
    if (d != apery_[static_cast<std::size_t>(r)]) continue;
    for (auto s : gens_) {
      const std::int64_t r2 = (r + s) % min_gen_;
      if (d + s < apery_[static_cast<std::size_t>(r2)]) {
        apery_[static_cast<std::size_t>(r2)] = d + s;
        pq.push({d + s, r2});
      }
    }
  }
  frobenius_ = *std::max_element(apery_.begin(), apery_.end()) - min_gen_;
}

std::string NumericalMonoidLattice::name() const {
  std::string out = "numerical:";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(gens_[i]);
  }
  return out;
}

Capabilities NumericalMonoidLattice::capabilities() const {
  Capabilities c;
  c.primes_enumerable = true;
  c.maximals_enumerable = true;
  c.domain_declared = true;
  c.modular_declared = true;
  c.c_lattice_declared = true;
  c.note = "s-ideals of a numerical monoid: nonempty ideals are cofinite, hence finitely "
           "generated; the s-system is modular; sums of nonempty ideals are nonempty";
  return c;
}

bool NumericalMonoidLattice::in_monoid(std::int64_t n) const {
  return n >= 0 && n >= apery_[static_cast<std::size_t>(n % min_gen_)];
}

Key NumericalMonoidLattice::do_top() const {
  return encode(frobenius_ + 1, [&](std::int64_t n) { return in_monoid(n); });
}

Key NumericalMonoidLattice::closure_key(const std::vector<std::int64_t>& set) const {
  if (set.empty()) return {-1};
  for (auto s : set) {
    if (!in_monoid(s)) {
      throw Error(ErrorKind::InvalidArgument, std::to_string(s) + " is not in " + name());
    }
  }
  const std::int64_t T = *std::min_element(set.begin(), set.end()) + frobenius_ + 1;
  return encode(std::max<std::int64_t>(T, 0), [&](std::int64_t n) {
    for (auto s : set) {
      if (s <= n && in_monoid(n - s)) return true;
    }
    return false;
  });
}

ElemRef NumericalMonoidLattice::closure(const std::vector<std::int64_t>& set) const {
  return wrap(closure_key(set));
}

Key NumericalMonoidLattice::maximal_key() const { return closure_key(gens_); }

ElemRef NumericalMonoidLattice::maximal_ideal() const { return wrap(maximal_key()); }

bool NumericalMonoidLattice::contains(const ElemRef& ideal, std::int64_t n) const {
  check(ideal);
  return decode(ideal.key()).has(n);
}

bool NumericalMonoidLattice::do_leq(const Key& a, const Key& b) const {
  const Ideal I = decode(a), J = decode(b);
  if (I.empty) return true;
  if (J.empty) return false;
  const std::int64_t T = std::max(I.c, J.c);
  for (std::int64_t n = 0; n < T; ++n) {
    if (I.has(n) && !J.has(n)) return false;
  }
  return true;
}

Key NumericalMonoidLattice::do_mul(const Key& a, const Key& b) const {
  const Ideal I = decode(a), J = decode(b);
  if (I.empty || J.empty) return {-1};
  return encode(I.c + J.c, [&](std::int64_t n) {
    for (std::int64_t i = 0; i <= n; ++i) {
      if (I.has(i) && J.has(n - i)) return true;
    }
    return false;
  });
}

Key NumericalMonoidLattice::do_join(const Key& a, const Key& b) const {
  const Ideal I = decode(a), J = decode(b);
  if (I.empty) return b;
  if (J.empty) return a;
  return encode(std::max(I.c, J.c), [&](std::int64_t n) { return I.has(n) || J.has(n); });
}

Key NumericalMonoidLattice::do_meet(const Key& a, const Key& b) const {
  const Ideal I = decode(a), J = decode(b);
  if (I.empty || J.empty) return {-1};
  return encode(std::max(I.c, J.c), [&](std::int64_t n) { return I.has(n) && J.has(n); });
}

Key NumericalMonoidLattice::do_residual(const Key& y, const Key& x) const {
  const Ideal Y = decode(y), X = decode(x);
  if (X.empty) return do_top();
  if (Y.empty) return {-1};
  // {h in H : h + X is inside Y}; every h >= c(Y) qualifies.
  const std::int64_t T = Y.c;
  return encode(T, [&](std::int64_t h) {
    if (!in_monoid(h)) return false;
    for (std::int64_t m = 0; m + h < T; ++m) {
      if (X.has(m) && !Y.has(m + h)) return false;
    }
    return true;
  });
}

Key NumericalMonoidLattice::do_radical(const Key& x) const {
  if (x.size() == 1 && x[0] == -1) return x;
  if (x == do_top()) return x;
  return maximal_key();
}

Key NumericalMonoidLattice::do_localize(const Key& x, const Key& p) const {
  if (p == maximal_key()) return x;
  if (p.size() == 1 && p[0] == -1) return (x.size() == 1 && x[0] == -1) ? x : do_top();
  throw Error(ErrorKind::NotPrime, do_format(p) + " is not prime");
}

std::vector<Key> NumericalMonoidLattice::do_primes(std::span<const Key>) const {
  return {{-1}, maximal_key()};
}

std::vector<Key> NumericalMonoidLattice::do_maximals(std::span<const Key>) const {
  return {maximal_key()};
}

std::optional<std::vector<Key>> NumericalMonoidLattice::do_radical_catalog() const {
  return std::vector<Key>{do_top(), maximal_key(), {-1}};
}

std::vector<std::int64_t> NumericalMonoidLattice::minimal_generators(const ElemRef& ideal) const {
  check(ideal);
  const Ideal I = decode(ideal.key());
  if (I.empty) return {};
  const Ideal IM = decode(do_mul(ideal.key(), maximal_key()));
  std::vector<std::int64_t> out;
  for (std::int64_t n = 0; n < I.c + min_gen_; ++n) {
    if (I.has(n) && !IM.has(n)) out.push_back(n);
  }
  return out;
}

std::optional<std::vector<ElemRef>> NumericalMonoidLattice::principal_candidates(
    const ElemRef& x) const {
  std::vector<ElemRef> out;
  for (auto g : minimal_generators(x)) out.push_back(closure({g}));
  return out;
}

std::vector<ElemRef> NumericalMonoidLattice::enumerate_ideals(std::int64_t bound) const {
  bound = std::max(bound, frobenius_ + 1);
  std::vector<std::int64_t> elems;
  for (std::int64_t n = 0; n < bound; ++n) {
    if (in_monoid(n)) elems.push_back(n);
  }
  if (elems.size() > 22) throw Error(ErrorKind::TooLarge, "ideal enumeration bound too large");
  std::vector<ElemRef> out{wrap({-1})};
  std::vector<char> member(static_cast<std::size_t>(bound));
  for (std::uint32_t mask = 0; mask < (1u << elems.size()); ++mask) {
    std::fill(member.begin(), member.end(), 0);
    for (std::size_t b = 0; b < elems.size(); ++b) {
      if (mask & (1u << b)) member[static_cast<std::size_t>(elems[b])] = 1;
    }
    bool closed = true;
    for (std::int64_t n = 0; n < bound && closed; ++n) {
      if (!member[static_cast<std::size_t>(n)]) continue;
      for (auto g : gens_) {
        if (n + g < bound && !member[static_cast<std::size_t>(n + g)]) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    out.push_back(wrap(encode(bound, [&](std::int64_t n) {
      return n >= bound || member[static_cast<std::size_t>(n)];
    })));
  }
  return out;
}

std::optional<std::pair<ElemRef, std::int64_t>> NumericalMonoidLattice::s_invertible(
    const ElemRef& ideal, std::int64_t bound) const {
  check(ideal);
  if (decode(ideal.key()).empty) return std::nullopt;
  for (const auto& J : enumerate_ideals(bound)) {
    if (decode(J.key()).empty) continue;
    const auto gens = minimal_generators(mul(ideal, J));
    if (gens.size() == 1) return std::make_pair(J, gens.front());
  }
  return std::nullopt;
}

std::vector<Key> NumericalMonoidLattice::do_window_seeds(std::uint64_t seed) const {
  std::vector<Key> out;
  const Key m = maximal_key();
  out.push_back(m);
  out.push_back(do_mul(m, m));
  out.push_back(do_mul(out.back(), m));
  const std::int64_t span = frobenius_ + 2 * gens_.back() + 2;
  std::vector<std::int64_t> small;
  for (std::int64_t n = 0; n <= span; ++n) {
    if (in_monoid(n)) small.push_back(n);
  }
  for (auto n : small) out.push_back(closure_key({n}));
  for (std::size_t i = 0; i < small.size() && i < 6; ++i) {
    for (std::size_t j = i + 1; j < small.size() && j < 8; ++j) {
      out.push_back(closure_key({small[i], small[j]}));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int r = 0; r < 12; ++r) {
    std::vector<std::int64_t> s;
    for (int t = 0; t <= r % 3; ++t) s.push_back(small[pick(rng)]);
    out.push_back(closure_key(s));
  }
  return out;
}

std::string NumericalMonoidLattice::do_format(const Key& x) const {
  if (x.size() == 1 && x[0] == -1) return "empty";
  if (x == do_top()) return "H";
  const auto gens = minimal_generators(wrap(x));
  if (gens.size() == 1) return std::to_string(gens[0]) + "+H";
  std::string out = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(gens[i]);
  }
  return out + "}+H";
}

Key NumericalMonoidLattice::do_parse(std::string_view text) const {
  std::string s = strip_spaces(text);
  if (s.rfind("ideal:", 0) == 0) s = s.substr(6);
  if (s == "H" || s == "top" || s == "0+H") return do_top();
  if (s == "M") return maximal_key();
  if (s == "empty" || s == "Empty") return {-1};
  if (s.rfind("M^", 0) == 0) {
    auto k = parse_int(s.substr(2));
    if (!k || *k < 0) bad("bad power in '" + s + "'");
    Key acc = do_top();
    for (std::int64_t i = 0; i < *k; ++i) acc = do_mul(acc, maximal_key());
    return acc;
  }
  if (s.rfind("mask:", 0) == 0) {
    std::vector<std::int64_t> set;
    const std::string bits = s.substr(5);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        set.push_back(static_cast<std::int64_t>(i));
      } else if (bits[i] != '0') {
        bad("mask must be a 0/1 string");
      }
    }
    try {
      return closure_key(set);
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  if (s.size() > 2 && s.substr(s.size() - 2) == "+H") {
    std::string body = s.substr(0, s.size() - 2);
    if (body.size() >= 2 && body.front() == '{' && body.back() == '}') {
      body = body.substr(1, body.size() - 2);
    }
    std::vector<std::int64_t> set;
    for (const auto& part : split(body, ',')) {
      auto n = parse_int(part);
      if (!n) bad("bad generator '" + part + "'");
      set.push_back(*n);
    }
    try {
      return closure_key(set);
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  bad("cannot parse ideal '" + std::string(text) + "' of " + name());
}

NumericalHandle numerical_monoid(std::vector<std::int64_t> generators) {
  return std::make_shared<const NumericalMonoidLattice>(std::move(generators));
}

// ---------------------------------------------------------------------------------------------

LatticeHandle make_builtin(std::string_view selector) {
  const std::string s = strip_spaces(selector);
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto need_int = [&]() {
    auto v = parse_int(arg);
    if (!v) bad("builtin '" + s + "' needs an integer argument");
    return *v;
  };
  if (head == "zmod") return materialize_from_divisors(need_int());
  if (head == "dedekind") {
    if (arg == "unbounded" || arg == "inf") return dedekind(std::nullopt);
    const auto k = need_int();
    if (k < 1) bad("dedekind needs k >= 1");
    return dedekind(static_cast<std::size_t>(k));
  }
  if (head == "rank2" && arg.empty()) return rank2_valuation();
  if (head == "numerical") {
    std::vector<std::int64_t> gens;
    for (const auto& part : split(arg, ',')) {
      auto v = parse_int(part);
      if (!v) bad("bad generator '" + part + "'");
      gens.push_back(*v);
    }
    return numerical_monoid(std::move(gens));
  }
  if (head == "power-of-j") return power_of_j(need_int());
  if (head == "chain" || head == "nilchain") {
    const auto k = need_int();
    if (k < 2) bad("a chain needs at least two elements");
    return chain_lattice(static_cast<std::size_t>(k), head == "nilchain");
  }
  bad("unknown builtin '" + s + "'");
}

}  // namespace radfact
