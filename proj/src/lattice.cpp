#include "radfact/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

namespace radfact {

std::size_t ElemRefHash::operator()(const ElemRef& e) const noexcept {
  std::size_t h = std::hash<std::uint32_t>{}(e.lattice().value);
  for (auto v : e.key()) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {
std::atomic<std::uint32_t> next_lattice_id{1};
}

Lattice::Lattice() : id_{next_lattice_id.fetch_add(1)} {}

void Lattice::check(const ElemRef& x) const {
  if (x.lattice() != id_) {
    throw Error(ErrorKind::ForeignElement,
                "element belongs to lattice #" + std::to_string(x.lattice().value) +
                    ", not " + name() + " (#" + std::to_string(id_.value) + ")");
  }
}

bool Lattice::leq(const ElemRef& a, const ElemRef& b) const {
  check(a);
  check(b);
  return do_leq(a.key(), b.key());
}

ElemRef Lattice::mul(const ElemRef& a, const ElemRef& b) const {
  check(a);
  check(b);
  return wrap(do_mul(a.key(), b.key()));
}

ElemRef Lattice::join(const ElemRef& a, const ElemRef& b) const {
  check(a);
  check(b);
  return wrap(do_join(a.key(), b.key()));
}

ElemRef Lattice::meet(const ElemRef& a, const ElemRef& b) const {
  check(a);
  check(b);
  return wrap(do_meet(a.key(), b.key()));
}

ElemRef Lattice::power(const ElemRef& x, unsigned n) const {
  check(x);
  Key acc = do_top();
  for (unsigned i = 0; i < n; ++i) acc = do_mul(acc, x.key());
  return wrap(std::move(acc));
}

ElemRef Lattice::residual(const ElemRef& y, const ElemRef& x) const {
  check(y);
  check(x);
  return wrap(do_residual(y.key(), x.key()));
}

ElemRef Lattice::radical(const ElemRef& x) const {
  check(x);
  return wrap(do_radical(x.key()));
}

ElemRef Lattice::localize(const ElemRef& x, const ElemRef& p) const {
  check(x);
  check(p);
  if (capabilities().primes_enumerable) {
    const Key ctx[] = {x.key(), p.key()};
    auto ps = do_primes(ctx);
    if (std::find(ps.begin(), ps.end(), p.key()) == ps.end()) {
      throw Error(ErrorKind::NotPrime, format(p) + " is not l-prime in " + name());
    }
  }
  return wrap(do_localize(x.key(), p.key()));
}

bool Lattice::is_compact(const ElemRef& x) const {
  check(x);
  return do_is_compact(x.key());
}

std::vector<Key> Lattice::do_elements() const {
  throw Error(ErrorKind::CapabilityMissing, name() + " is not finite-enumerable");
}

std::vector<ElemRef> Lattice::elements() const {
  if (!capabilities().finite_enumerable) {
    throw Error(ErrorKind::CapabilityMissing, name() + " is not finite-enumerable");
  }
  return wrap_all(do_elements());
}

std::vector<Key> Lattice::unwrap(std::span<const ElemRef> xs) const {
  std::vector<Key> keys;
  keys.reserve(xs.size());
  for (const auto& x : xs) {
    check(x);
    keys.push_back(x.key());
  }
  return keys;
}

std::vector<ElemRef> Lattice::wrap_all(std::vector<Key> keys) const {
  std::vector<ElemRef> out;
  out.reserve(keys.size());
  for (auto& k : keys) out.push_back(wrap(std::move(k)));
  return out;
}

std::vector<ElemRef> Lattice::primes(std::span<const ElemRef> context) const {
  return wrap_all(do_primes(unwrap(context)));
}

std::vector<ElemRef> Lattice::maximals(std::span<const ElemRef> context) const {
  return wrap_all(do_maximals(unwrap(context)));
}

bool Lattice::is_prime(const ElemRef& p, std::span<const ElemRef> context) const {
  check(p);
  auto ctx = unwrap(context);
  ctx.push_back(p.key());
  auto ps = do_primes(ctx);
  return std::find(ps.begin(), ps.end(), p.key()) != ps.end();
}

bool Lattice::is_maximal(const ElemRef& m, std::span<const ElemRef> context) const {
  check(m);
  auto ctx = unwrap(context);
  ctx.push_back(m.key());
  auto ms = do_maximals(ctx);
  return std::find(ms.begin(), ms.end(), m.key()) != ms.end();
}

std::optional<std::vector<ElemRef>> Lattice::radical_catalog() const {
  auto keys = do_radical_catalog();
  if (!keys) return std::nullopt;
  return wrap_all(std::move(*keys));
}

std::optional<std::uint64_t> Lattice::valuation_closed_form(const ElemRef& x,
                                                            const ElemRef& m) const {
  check(x);
  check(m);
  return do_valuation(x.key(), m.key());
}

std::optional<std::uint64_t> Lattice::spectrum_point(const ElemRef& m) const {
  check(m);
  if (!capabilities().maximals_enumerable) return std::nullopt;
  auto ms = maximals();
  auto it = std::find(ms.begin(), ms.end(), m);
  if (it == ms.end()) return std::nullopt;
  return static_cast<std::uint64_t>(it - ms.begin());
}

std::optional<ElemRef> Lattice::maximal_at(std::uint64_t point) const {
  if (!capabilities().maximals_enumerable) return std::nullopt;
  auto ms = maximals();
  if (point >= ms.size()) return std::nullopt;
  return ms[point];
}

std::vector<ElemRef> Lattice::window_seeds(std::uint64_t seed) const {
  return wrap_all(do_window_seeds(seed));
}

std::string Lattice::format(const ElemRef& x) const {
  check(x);
  return do_format(x.key());
}

ElemRef Lattice::parse(std::string_view text) const { return wrap(do_parse(text)); }

nlohmann::json Lattice::to_json(const ElemRef& x) const {
  check(x);
  return do_to_json(x.key());
}

std::string format_list(const Lattice& lattice, std::span<const ElemRef> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += lattice.format(xs[i]);
  }
  return out + "]";
}

}  // namespace radfact
