#include "radfact/factorization.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace radfact {

namespace {

ElemRef product(const Lattice& lattice, const std::vector<ElemRef>& xs) {
  ElemRef acc = lattice.top();
  for (const auto& x : xs) acc = lattice.mul(acc, x);
  return acc;
}

// Every radical above x is the meet of the primes above it, so when the primes above a nonzero
// x are finitely many the meets of their subsets cover all candidate factors.
std::optional<std::vector<ElemRef>> radicals_from_primes(const Lattice& lattice, const ElemRef& x) {
  constexpr std::size_t kMaxPrimes = 16;
  if (lattice.is_bottom(x) || !lattice.capabilities().primes_enumerable) return std::nullopt;
  const std::vector<ElemRef> ctx{x};
  std::vector<ElemRef> above;
  for (const auto& p : lattice.primes(ctx)) {
    if (lattice.leq(x, p)) above.push_back(p);
  }
  if (above.size() > kMaxPrimes) return std::nullopt;
  std::vector<ElemRef> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << above.size()); ++mask) {
    ElemRef m = lattice.top();
    for (std::size_t i = 0; i < above.size(); ++i) {
      if (mask >> i & 1) m = lattice.meet(m, above[i]);
    }
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

std::vector<ElemRef> proper_radicals(const Lattice& lattice, const ElemRef& x) {
  std::vector<ElemRef> pool;
  if (lattice.capabilities().finite_enumerable) {
    pool = lattice.elements();
  } else if (auto cat = lattice.radical_catalog()) {
    pool = std::move(*cat);
  } else {
    auto from_primes = radicals_from_primes(lattice, x);
    if (!from_primes) {
      throw Error(ErrorKind::CapabilityMissing,
                  lattice.name() + " has neither a finite carrier nor a radical catalogue");
    }
    pool = std::move(*from_primes);
  }
  std::vector<ElemRef> out;
  for (auto& r : pool) {
    if (!lattice.is_top(r) && lattice.radical(r) == r) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

void assert_sound(const Lattice& lattice, const FactorChain& chain) {
  const auto& f = chain.factors;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (lattice.is_top(f[i]) || lattice.radical(f[i]) != f[i]) {
      throw Error(ErrorKind::AxiomViolation,
                  "factor " + lattice.format(f[i]) + " is not a proper radical element");
    }
    if (i + 1 < f.size() && !lattice.leq(f[i], f[i + 1])) {
      throw Error(ErrorKind::AxiomViolation, "chain not ascending at " + lattice.format(f[i]));
    }
  }
  if (product(lattice, f) != chain.source) {
    throw Error(ErrorKind::AxiomViolation,
                "factors do not multiply back to " + lattice.format(chain.source));
  }
}

FactorChain radical_factor(const Lattice& lattice, const ElemRef& x, unsigned max_steps) {
  lattice.check(x);
  FactorChain chain;
  chain.source = x;
  ElemRef cur = x;
  std::set<ElemRef> seen{cur};
  std::size_t step = 0;
  while (!lattice.is_top(cur)) {
    const ElemRef y = lattice.radical(cur);
    const ElemRef q = lattice.residual(cur, y);
    if (step >= max_steps) {
      throw FactorError(ErrorKind::Stalled, step, cur, y, q, chain.factors,
                        "no top reached after " + std::to_string(max_steps) + " steps at " +
                            lattice.format(cur));
    }
    const ElemRef back = lattice.mul(y, q);
    if (back != cur) {
      throw FactorError(ErrorKind::StepFailed, step, cur, y, q, chain.factors,
                        "step " + std::to_string(step) + ": " + lattice.format(cur) +
                            " != rad * (x : rad) = " + lattice.format(y) + " * " +
                            lattice.format(q) + " = " + lattice.format(back));
    }
    if (!seen.insert(q).second) {
      throw FactorError(ErrorKind::Stalled, step, cur, y, q, chain.factors,
                        "quotient " + lattice.format(q) + " repeats at step " +
                            std::to_string(step));
    }
    chain.factors.push_back(y);
    cur = q;
    ++step;
  }
  chain.product_check = product(lattice, chain.factors) == x;
  assert_sound(lattice, chain);
  return chain;
}

FactorChain canonical_chain(const Lattice& lattice, const ElemRef& x, unsigned max_steps) {
  lattice.check(x);
  if (lattice.is_bottom(x)) throw Error(ErrorKind::ZeroElement, "canonical_chain of bottom");
  return radical_factor(lattice, x, max_steps);
}

RadicalProducts::RadicalProducts(const Lattice& lattice) : lattice_(&lattice) {
  if (!lattice.capabilities().finite_enumerable) {
    throw Error(ErrorKind::CapabilityMissing, lattice.name() + " is not finite");
  }
  std::vector<ElemRef> radicals;
  for (const auto& e : lattice.elements()) {
    if (lattice.radical(e) == e) radicals.push_back(e);
  }
  std::deque<ElemRef> queue;
  for (const auto& r : radicals) {
    if (parent_.emplace(r, std::make_pair(r, r)).second) queue.push_back(r);
  }
  while (!queue.empty()) {
    const ElemRef s = queue.front();
    queue.pop_front();
    for (const auto& r : radicals) {
      ElemRef p = lattice.mul(s, r);
      if (parent_.emplace(p, std::make_pair(s, r)).second) queue.push_back(std::move(p));
    }
  }
}

ProductDecision RadicalProducts::decide(const ElemRef& x) const {
  lattice_->check(x);
  ProductDecision d;
  d.method = "saturation";
  auto it = parent_.find(x);
  d.value = it != parent_.end();
  if (!*d.value) return d;
  ElemRef cur = x;
  while (true) {
    const auto& [prev, r] = parent_.at(cur);
    if (!lattice_->is_top(r)) d.factors.push_back(r);
    if (prev == cur) break;
    cur = prev;
  }
  return d;
}

ProductDecision is_product_of_radicals(const Lattice& lattice, const ElemRef& x) {
  return RadicalProducts(lattice).decide(x);
}

ProductDecision decide_product_of_radicals(const Lattice& lattice, const ElemRef& x,
                                           std::size_t budget) {
  lattice.check(x);
  if (lattice.capabilities().finite_enumerable) return is_product_of_radicals(lattice, x);
  ProductDecision d;
  if (auto cf = lattice.product_of_radicals_closed_form(x)) {
    d.value = *cf;
    d.method = "closed form";
    if (*cf) {
      try {
        d.factors = radical_factor(lattice, x).factors;
      } catch (const Error&) {
      }
    }
    return d;
  }
  try {
    d.factors = radical_factor(lattice, x).factors;
    d.value = true;
    d.method = "engine";
    return d;
  } catch (const Error&) {
  }
  auto catalog = lattice.radical_catalog();
  if (!catalog) {
    d.method = "inconclusive: engine failed and no radical catalogue";
    return d;
  }
  std::vector<ElemRef> rads;
  for (auto& r : *catalog) {
    if (!lattice.is_top(r)) rads.push_back(std::move(r));
  }
  // Only products P with x <= P can still be multiplied down to x.
  std::set<ElemRef> seen{lattice.top()};
  std::deque<std::pair<ElemRef, std::vector<ElemRef>>> queue{{lattice.top(), {}}};
  std::size_t explored = 0;
  while (!queue.empty()) {
    auto [p, fs] = std::move(queue.front());
    queue.pop_front();
    if (p == x) {
      d.value = true;
      d.factors = std::move(fs);
      d.method = "catalogue search";
      return d;
    }
    if (++explored > budget) {
      d.method = "inconclusive: catalogue search exceeded budget";
      return d;
    }
    for (const auto& r : rads) {
      ElemRef q = lattice.mul(p, r);
      if (!lattice.leq(x, q) || !seen.insert(q).second) continue;
      auto next = fs;
      next.push_back(r);
      queue.emplace_back(std::move(q), std::move(next));
    }
  }
  d.value = false;
  d.method = "catalogue search";
  return d;
}

UniquenessReport verify_uniqueness(const Lattice& lattice, const ElemRef& x, std::size_t bound) {
  lattice.check(x);
  const auto rads = proper_radicals(lattice, x);
  UniquenessReport rep;
  std::vector<ElemRef> cur;
  std::function<void(const ElemRef&)> dfs = [&](const ElemRef& p) {
    if (p == x) rep.chains.push_back(cur);
    if (cur.size() >= bound) return;
    for (const auto& r : rads) {
      if (!cur.empty() && !lattice.leq(cur.back(), r)) continue;
      ElemRef q = lattice.mul(p, r);
      if (!lattice.leq(x, q)) continue;
      cur.push_back(r);
      dfs(q);
      cur.pop_back();
    }
  };
  dfs(lattice.top());
  try {
    rep.canonical = lattice.is_bottom(x) ? radical_factor(lattice, x) : canonical_chain(lattice, x);
  } catch (const Error& e) {
    rep.engine_error = e.what();
  }
  rep.unique = rep.chains.size() == 1 && rep.canonical && rep.chains[0] == rep.canonical->factors;
  return rep;
}

nlohmann::json chain_to_json(const Lattice& lattice, const FactorChain& chain) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : chain.factors) {
    factors.push_back({{"element", lattice.format(f)},
                       {"value", lattice.to_json(f)},
                       {"radical", lattice.radical(f) == f}});
  }
  return {{"source", lattice.format(chain.source)},
          {"factors", factors},
          {"product_check", chain.product_check}};
}

}  // namespace radfact
