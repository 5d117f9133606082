#include "radfact/core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

namespace radfact {

TestWindow make_window(const Lattice& lattice, std::size_t budget, std::uint64_t seed) {
  TestWindow w;
  std::unordered_set<ElemRef, ElemRefHash> seen;
  auto add = [&](const ElemRef& e) {
    if (w.sample.size() < budget && seen.insert(e).second) w.sample.push_back(e);
  };
  add(lattice.top());
  add(lattice.bottom());
  for (const auto& s : lattice.window_seeds(seed)) add(s);
  for (std::size_t i = 0; i < w.sample.size() && w.sample.size() < budget; ++i) {
    for (std::size_t j = 0; j <= i && w.sample.size() < budget; ++j) {
      const ElemRef a = w.sample[i];
      const ElemRef b = w.sample[j];
      add(lattice.mul(a, b));
      add(lattice.join(a, b));
      add(lattice.meet(a, b));
    }
  }
  auto count = lattice.element_count();
  w.exhaustive = count && *count == w.sample.size();
  w.note = "seeded closure under mul/join/meet, budget " + std::to_string(budget) + ", seed " +
           std::to_string(seed);
  return w;
}

TestWindow default_window(const Lattice& lattice, std::size_t budget, std::uint64_t seed) {
  auto count = lattice.element_count();
  if (lattice.capabilities().finite_enumerable && count && *count <= kExhaustiveLimit) {
    TestWindow w;
    w.sample = lattice.elements();
    w.exhaustive = true;
    w.note = "all " + std::to_string(*count) + " elements";
    return w;
  }
  return make_window(lattice, budget, seed);
}

ElemRef join_all(const Lattice& lattice, std::span<const ElemRef> xs) {
  ElemRef acc = lattice.bottom();
  for (const auto& x : xs) acc = lattice.join(acc, x);
  return acc;
}

ElemRef meet_all(const Lattice& lattice, std::span<const ElemRef> xs) {
  ElemRef acc = lattice.top();
  for (const auto& x : xs) acc = lattice.meet(acc, x);
  return acc;
}

ElemRef residual_by_definition(const Lattice& lattice, const ElemRef& y, const ElemRef& x,
                               std::span<const ElemRef> domain) {
  ElemRef acc = lattice.bottom();
  for (const auto& a : domain) {
    if (lattice.leq(lattice.mul(a, x), y)) acc = lattice.join(acc, a);
  }
  return acc;
}

bool some_power_below(const Lattice& lattice, const ElemRef& y, const ElemRef& x,
                      unsigned max_power) {
  ElemRef p = y;
  for (unsigned n = 1; n <= max_power; ++n) {
    if (lattice.leq(p, x)) return true;
    ElemRef q = lattice.mul(p, y);
    if (q == p) return false;
    p = std::move(q);
  }
  return false;
}

ElemRef radical_by_powers(const Lattice& lattice, const ElemRef& x,
                          std::span<const ElemRef> domain, unsigned max_power) {
  ElemRef acc = lattice.bottom();
  for (const auto& y : domain) {
    if (some_power_below(lattice, y, x, max_power)) acc = lattice.join(acc, y);
  }
  return acc;
}

ElemRef radical_by_primes(const Lattice& lattice, const ElemRef& x,
                          std::span<const ElemRef> primes) {
  ElemRef acc = lattice.top();
  for (const auto& p : primes) {
    if (lattice.leq(x, p)) acc = lattice.meet(acc, p);
  }
  return acc;
}

ElemRef localize_by_definition(const Lattice& lattice, const ElemRef& x, const ElemRef& p,
                               std::span<const ElemRef> domain) {
  std::vector<ElemRef> compact;
  std::vector<ElemRef> outside;
  for (const auto& a : domain) {
    if (!lattice.is_compact(a)) continue;
    compact.push_back(a);
    if (!lattice.leq(a, p)) outside.push_back(a);
  }
  ElemRef acc = lattice.bottom();
  for (const auto& a : compact) {
    for (const auto& b : outside) {
      if (lattice.leq(lattice.mul(a, b), x)) {
        acc = lattice.join(acc, a);
        break;
      }
    }
  }
  return acc;
}

namespace {

void fail(Flag& f, std::vector<ElemRef> witness) {
  if (!f.value) return;
  f.value = false;
  f.witness = std::move(witness);
}

}  // namespace

PredicateRecord element_predicates(const Lattice& lattice, const ElemRef& x,
                                   std::span<const ElemRef> domain, bool exhaustive) {
  lattice.check(x);
  PredicateRecord r;
  r.window_verified = !exhaustive;
  const ElemRef top = lattice.top();
  const ElemRef zero_colon_x = lattice.residual(lattice.bottom(), x);

  const std::size_t n = domain.size();
  std::vector<ElemRef> xd(n), dx_res(n);
  for (std::size_t i = 0; i < n; ++i) {
    xd[i] = lattice.mul(x, domain[i]);
    dx_res[i] = lattice.residual(domain[i], x);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const ElemRef& y = domain[i];
    if (r.weak_meet_principal.value &&
        lattice.meet(x, y) != lattice.mul(dx_res[i], x)) {
      fail(r.weak_meet_principal, {y});
    }
    if (r.weak_join_principal.value &&
        !lattice.leq(lattice.residual(xd[i], x), lattice.join(y, zero_colon_x))) {
      fail(r.weak_join_principal, {y});
    }
    for (std::size_t j = 0; j < n; ++j) {
      const ElemRef& z = domain[j];
      if (r.cancellative.value && lattice.leq(xd[i], xd[j]) && !lattice.leq(y, z)) {
        fail(r.cancellative, {y, z});
      }
      if (r.meet_principal.value &&
          lattice.meet(y, xd[j]) != lattice.mul(lattice.meet(dx_res[i], z), x)) {
        fail(r.meet_principal, {y, z});
      }
      if (r.join_principal.value &&
          lattice.join(y, dx_res[j]) != lattice.residual(lattice.join(xd[i], z), x)) {
        fail(r.join_principal, {y, z});
      }
    }
  }

  r.ell_principal.value = r.meet_principal.value && r.join_principal.value;
  if (!r.meet_principal.value) {
    r.ell_principal.witness = r.meet_principal.witness;
  } else if (!r.join_principal.value) {
    r.ell_principal.witness = r.join_principal.witness;
  }
  r.ell_invertible.value = r.ell_principal.value && r.cancellative.value;
  if (!r.ell_principal.value) {
    r.ell_invertible.witness = r.ell_principal.witness;
  } else if (!r.cancellative.value) {
    r.ell_invertible.witness = r.cancellative.witness;
  }

  r.compact.value = lattice.is_compact(x);
  const ElemRef rad = lattice.radical(x);
  if (rad != x) fail(r.ell_radical, {rad});

  const auto caps = lattice.capabilities();
  const bool is_top = x == top;
  std::vector<ElemRef> prime_witness;
  std::vector<ElemRef> maximal_witness;
  if (!is_top) {
    for (std::size_t i = 0; i < n && prime_witness.empty(); ++i) {
      if (lattice.leq(domain[i], x)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!lattice.leq(domain[j], x) && lattice.leq(lattice.mul(domain[i], domain[j]), x)) {
          prime_witness = {domain[i], domain[j]};
          break;
        }
      }
    }
    for (const auto& y : domain) {
      if (y != x && y != top && lattice.leq(x, y)) {
        maximal_witness = {y};
        break;
      }
    }
  }
  // Exact catalogues win over window searches; witnesses come from the domain either way.
  r.ell_prime.value = !is_top && (caps.primes_enumerable ? lattice.is_prime(x)
                                                          : prime_witness.empty());
  if (!r.ell_prime.value) r.ell_prime.witness = prime_witness;
  r.maximal.value = !is_top && (caps.maximals_enumerable ? lattice.is_maximal(x)
                                                          : maximal_witness.empty());
  if (!r.maximal.value) r.maximal.witness = maximal_witness;
  return r;
}

PredicateRecord element_predicates(const Lattice& lattice, const ElemRef& x) {
  auto all = lattice.elements();
  return element_predicates(lattice, x, all, true);
}

LatticePredicates lattice_predicates(const Lattice& lattice, std::span<const ElemRef> domain,
                                     bool exhaustive) {
  LatticePredicates r;
  r.window_verified = !exhaustive;
  const ElemRef bot = lattice.bottom();
  for (const auto& x : domain) {
    for (const auto& z : domain) {
      if (!lattice.leq(x, z)) continue;
      for (const auto& y : domain) {
        if (lattice.meet(lattice.join(x, y), z) != lattice.join(x, lattice.meet(y, z))) {
          fail(r.modular, {x, y, z});
          break;
        }
      }
      if (!r.modular.value) break;
    }
    if (!r.modular.value) break;
  }
  for (const auto& a : domain) {
    if (a == bot) continue;
    for (const auto& b : domain) {
      if (b != bot && lattice.mul(a, b) == bot) {
        fail(r.domain, {a, b});
        break;
      }
    }
    if (!r.domain.value) break;
  }
  // In a C-lattice every element is a join of compact ones, so it suffices that every
  // compact element is a (necessarily finite) join of l-principal elements below it. The
  // candidates are the backend's generators when known, else the domain elements below x.
  const bool c_lattice = lattice.capabilities().c_lattice_declared;
  std::map<ElemRef, bool> principal;
  auto is_principal = [&](const ElemRef& e) {
    auto it = principal.find(e);
    if (it == principal.end()) {
      it = principal.emplace(e, element_predicates(lattice, e, domain, exhaustive)
                                    .ell_principal.value).first;
    }
    return it->second;
  };
  for (const auto& x : domain) {
    if (c_lattice && !lattice.is_compact(x)) continue;
    auto cands = lattice.principal_candidates(x);
    if (!cands) {
      cands.emplace();
      for (const auto& d : domain) {
        if (lattice.leq(d, x)) cands->push_back(d);
      }
    }
    ElemRef acc = bot;
    for (const auto& c : *cands) {
      if (lattice.leq(c, x) && is_principal(c)) acc = lattice.join(acc, c);
    }
    if (acc != x) {
      fail(r.principally_generated, {x, acc});
      break;
    }
  }
  return r;
}

LatticePredicates lattice_predicates(const Lattice& lattice) {
  auto all = lattice.elements();
  return lattice_predicates(lattice, all, true);
}

std::vector<ElemRef> longest_prime_chain(const Lattice& lattice,
                                         std::span<const ElemRef> context) {
  auto ps = lattice.primes(context);
  const std::size_t n = ps.size();
  // best[i]: longest chain ending at ps[i]; prev for reconstruction.
  std::vector<int> best(n, -1), prev(n, -1);
  std::function<int(std::size_t)> solve = [&](std::size_t i) -> int {
    if (best[i] >= 0) return best[i];
    int b = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && lattice.leq(ps[j], ps[i]) && ps[j] != ps[i]) {
        int c = solve(j) + 1;
        if (c > b) {
          b = c;
          prev[i] = static_cast<int>(j);
        }
      }
    }
    return best[i] = b;
  };
  int top_len = 0;
  int end = -1;
  for (std::size_t i = 0; i < n; ++i) {
    int c = solve(i);
    if (c > top_len) {
      top_len = c;
      end = static_cast<int>(i);
    }
  }
  std::vector<ElemRef> chain;
  for (int i = end; i >= 0; i = prev[i]) chain.push_back(ps[i]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

int dimension(const Lattice& lattice, std::span<const ElemRef> context) {
  return static_cast<int>(longest_prime_chain(lattice, context).size()) - 1;
}

std::vector<ElemRef> minimal_primes_over(const Lattice& lattice, const ElemRef& x,
                                         std::span<const ElemRef> context) {
  std::vector<ElemRef> ctx(context.begin(), context.end());
  ctx.push_back(x);
  std::vector<ElemRef> above;
  for (auto& p : lattice.primes(ctx)) {
    if (lattice.leq(x, p)) above.push_back(p);
  }
  std::vector<ElemRef> out;
  for (const auto& p : above) {
    bool minimal = true;
    for (const auto& q : above) {
      if (q != p && lattice.leq(q, p)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(p);
  }
  return out;
}

namespace {

std::span<const ElemRef> inner_domain(std::span<const ElemRef> domain, const SuiteOptions& opt) {
  if (opt.inner == 0 || opt.exhaustive) return domain;
  return domain.first(std::min(opt.inner, domain.size()));
}

std::string show(const Lattice& l, std::initializer_list<ElemRef> xs) {
  std::vector<ElemRef> v(xs);
  return format_list(l, v);
}

CheckResult finish(std::string name, std::size_t checked,
                   const std::optional<std::pair<std::size_t, std::string>>& failure) {
  CheckResult r;
  r.name = std::move(name);
  r.checked = checked;
  if (failure) {
    r.passed = false;
    r.witness = failure->second;
  }
  return r;
}

}  // namespace

CheckResult check_residual_adjunction(const Lattice& lattice, std::span<const ElemRef> domain,
                                      const SuiteOptions& opt) {
  auto inner = inner_domain(domain, opt);
  const ElemRef top = lattice.top();
  auto failure = first_failure(
      domain.size(),
      [&](std::size_t i) -> std::optional<std::string> {
        const ElemRef& x = domain[i];
        if (lattice.residual(x, top) != x) return "(y:1) != y at y = " + lattice.format(x);
        for (const auto& y : domain) {
          const ElemRef res = lattice.residual(y, x);
          for (const auto& a : inner) {
            if (lattice.leq(lattice.mul(a, x), y) != lattice.leq(a, res)) {
              return "a, x, y = " + show(lattice, {a, x, y}) + ", (y:x) = " + lattice.format(res);
            }
          }
        }
        return std::nullopt;
      },
      opt.exec);
  return finish("residual adjunction: ax <= y iff a <= (y:x)",
                domain.size() * domain.size() * inner.size(), failure);
}

CheckResult check_bottom_annihilates(const Lattice& lattice, std::span<const ElemRef> domain) {
  const ElemRef bot = lattice.bottom();
  std::optional<std::pair<std::size_t, std::string>> failure;
  for (std::size_t i = 0; i < domain.size() && !failure; ++i) {
    if (lattice.mul(domain[i], bot) != bot) {
      failure = std::make_pair(i, "x = " + lattice.format(domain[i]));
    }
  }
  return finish("x * 0 = 0", domain.size(), failure);
}

CheckResult check_radical_forms(const Lattice& lattice, std::span<const ElemRef> domain,
                                const SuiteOptions& opt) {
  auto failure = first_failure(
      domain.size(),
      [&](std::size_t i) -> std::optional<std::string> {
        const ElemRef& x = domain[i];
        const ElemRef rad = lattice.radical(x);
        const ElemRef one[] = {x};
        const auto ps = lattice.primes(one);
        const ElemRef by_primes = radical_by_primes(lattice, x, ps);
        if (rad != by_primes) {
          return "x = " + lattice.format(x) + ": radical " + lattice.format(rad) +
                 " != prime meet " + lattice.format(by_primes);
        }
        const ElemRef by_powers = radical_by_powers(lattice, x, domain);
        if (opt.exhaustive ? by_powers != rad : !lattice.leq(by_powers, rad)) {
          return "x = " + lattice.format(x) + ": radical " + lattice.format(rad) +
                 " vs power join " + lattice.format(by_powers);
        }
        if (!lattice.leq(x, rad) || lattice.radical(rad) != rad) {
          return "x = " + lattice.format(x) + ": radical not an idempotent upper bound";
        }
        return std::nullopt;
      },
      opt.exec);
  return finish("radical: closed form = meet of primes above = join of power roots",
                domain.size(), failure);
}

std::vector<CheckResult> check_localization_laws(const Lattice& lattice,
                                                 std::span<const ElemRef> domain,
                                                 const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  const auto ps = lattice.primes(domain);
  const auto ms = lattice.maximals(domain);
  const ElemRef top = lattice.top();
  const std::size_t n = domain.size();
  auto inner = inner_domain(domain, opt);

  // Closed form agrees with the definition: equal on the whole carrier, an upper bound on
  // the definitional join over a window.
  out.push_back(finish(
      "localization: closed form matches the definition", n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            for (const auto& p : ps) {
              const ElemRef lp = lattice.localize(domain[i], p);
              const ElemRef def = localize_by_definition(lattice, domain[i], p, inner);
              if (opt.exhaustive ? def != lp : !lattice.leq(def, lp)) {
                return "x, p = " + show(lattice, {domain[i], p}) + ": " + lattice.format(lp) +
                       " vs definition " + lattice.format(def);
              }
              if (!lattice.leq(domain[i], lp)) return "x not below x_p at " + show(lattice, {domain[i], p});
            }
            return std::nullopt;
          },
          opt.exec)));

  out.push_back(finish(
      "localization: x_p = 1 iff x is not below p", n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            for (const auto& p : ps) {
              const bool is_top = lattice.localize(domain[i], p) == top;
              if (is_top != !lattice.leq(domain[i], p)) return "x, p = " + show(lattice, {domain[i], p});
            }
            return std::nullopt;
          },
          opt.exec)));

  // Localizations of the whole domain, indexed [prime][element].
  std::vector<std::vector<ElemRef>> loc(ps.size(), std::vector<ElemRef>(n));
  for (std::size_t k = 0; k < ps.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) loc[k][i] = lattice.localize(domain[i], ps[k]);
  }

  out.push_back(finish(
      "localization: (xy)_p = (x_p y_p)_p", n * n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t k = 0; k < ps.size(); ++k) {
                const ElemRef lhs = lattice.localize(lattice.mul(domain[i], domain[j]), ps[k]);
                const ElemRef rhs = lattice.localize(lattice.mul(loc[k][i], loc[k][j]), ps[k]);
                if (lhs != rhs) return "x, y, p = " + show(lattice, {domain[i], domain[j], ps[k]});
              }
            }
            return std::nullopt;
          },
          opt.exec)));

  out.push_back(finish(
      "localization: (x meet y)_p = x_p meet y_p", n * n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t k = 0; k < ps.size(); ++k) {
                const ElemRef lhs = lattice.localize(lattice.meet(domain[i], domain[j]), ps[k]);
                if (lhs != lattice.meet(loc[k][i], loc[k][j])) {
                  return "x, y, p = " + show(lattice, {domain[i], domain[j], ps[k]});
                }
              }
            }
            return std::nullopt;
          },
          opt.exec)));

  {
    std::optional<std::pair<std::size_t, std::string>> failure;
    std::size_t checked = 0;
    for (std::size_t k = 0; k < ms.size() && !failure; ++k) {
      ElemRef pw = ms[k];
      for (unsigned e = 1; e <= opt.max_power && !failure; ++e) {
        ++checked;
        if (lattice.localize(pw, ms[k]) != pw) {
          failure = std::make_pair(k, "m = " + lattice.format(ms[k]) + ", n = " + std::to_string(e));
        }
        ElemRef next = lattice.mul(pw, ms[k]);
        if (next == pw) break;
        pw = std::move(next);
      }
    }
    out.push_back(finish("localization: (m^n)_m = m^n for maximal m", checked, failure));
  }

  out.push_back(finish(
      "localization: x = meet of x_m over maximal m", n,
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            ElemRef acc = top;
            for (const auto& m : ms) acc = lattice.meet(acc, lattice.localize(domain[i], m));
            if (acc != domain[i]) {
              return "x = " + lattice.format(domain[i]) + ", meet = " + lattice.format(acc);
            }
            return std::nullopt;
          },
          opt.exec)));

  out.push_back(finish(
      "localization: (y:x)_p = (y_p : x_p) for compact x", n * n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            if (!lattice.is_compact(domain[i])) return std::nullopt;
            for (std::size_t j = 0; j < n; ++j) {
              for (std::size_t k = 0; k < ps.size(); ++k) {
                const ElemRef lhs = lattice.localize(lattice.residual(domain[j], domain[i]), ps[k]);
                if (lhs != lattice.residual(loc[k][j], loc[k][i])) {
                  return "x, y, p = " + show(lattice, {domain[i], domain[j], ps[k]});
                }
              }
            }
            return std::nullopt;
          },
          opt.exec)));

  out.push_back(check_radical_forms(lattice, domain, opt));

  out.push_back(finish(
      "localization: rad(x_p) = (rad x)_p", n * ps.size(),
      first_failure(
          n,
          [&](std::size_t i) -> std::optional<std::string> {
            const ElemRef rad = lattice.radical(domain[i]);
            for (std::size_t k = 0; k < ps.size(); ++k) {
              if (lattice.radical(loc[k][i]) != lattice.localize(rad, ps[k])) {
                return "x, p = " + show(lattice, {domain[i], ps[k]});
              }
            }
            return std::nullopt;
          },
          opt.exec)));
  return out;
}

CheckResult check_minimal_prime_localization(const Lattice& lattice,
                                             std::span<const ElemRef> domain) {
  std::size_t checked = 0;
  std::optional<std::pair<std::size_t, std::string>> failure;
  for (std::size_t i = 0; i < domain.size() && !failure; ++i) {
    for (const auto& p : minimal_primes_over(lattice, domain[i], domain)) {
      ++checked;
      const ElemRef r = lattice.radical(lattice.localize(domain[i], p));
      if (r != p) {
        failure = std::make_pair(i, "x, p = " + show(lattice, {domain[i], p}) + ", rad(x_p) = " +
                                        lattice.format(r));
        break;
      }
    }
  }
  return finish("localization: rad(x_p) = p for p minimal over x", checked, failure);
}

std::vector<CheckResult> check_principal_closure(const Lattice& lattice,
                                                 std::span<const ElemRef> domain,
                                                 const SuiteOptions& opt) {
  auto inner = inner_domain(domain, opt);
  const bool exhaustive = opt.exhaustive;
  const std::size_t k = std::min(opt.pairs, domain.size());
  auto rec = parallel_map<PredicateRecord>(
      k, [&](std::size_t i) { return element_predicates(lattice, domain[i], inner, exhaustive); },
      opt.exec);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) pairs.emplace_back(i, j);

  auto prod = parallel_map<PredicateRecord>(
      pairs.size(),
      [&](std::size_t t) {
        const auto [i, j] = pairs[t];
        return element_predicates(lattice, lattice.mul(domain[i], domain[j]), inner, exhaustive);
      },
      opt.exec);

  std::optional<std::pair<std::size_t, std::string>> f1, f2;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto [i, j] = pairs[t];
    if (!f1 && rec[i].ell_principal.value && rec[j].ell_principal.value &&
        !prod[t].ell_principal.value) {
      f1 = std::make_pair(t, "x, y = " + show(lattice, {domain[i], domain[j]}));
    }
    const bool both = rec[i].ell_invertible.value && rec[j].ell_invertible.value;
    if (!f2 && both != prod[t].ell_invertible.value) {
      f2 = std::make_pair(t, "x, y = " + show(lattice, {domain[i], domain[j]}));
    }
  }
  std::vector<CheckResult> out;
  out.push_back(finish("products of l-principal elements are l-principal", pairs.size(), f1));
  out.push_back(finish("xy l-invertible iff x and y are", pairs.size(), f2));
  const auto top_rec = element_predicates(lattice, lattice.top(), inner, exhaustive);
  std::optional<std::pair<std::size_t, std::string>> f3;
  if (!top_rec.ell_invertible.value) f3 = std::make_pair(0, "top is not l-invertible");
  out.push_back(finish("top is l-invertible", 1, f3));
  return out;
}

CheckResult check_modular_invertibility(const Lattice& lattice, std::span<const ElemRef> domain,
                                        const SuiteOptions& opt) {
  auto inner = inner_domain(domain, opt);
  const bool modular = lattice.capabilities().modular_declared ||
                       lattice_predicates(lattice, inner, opt.exhaustive).modular.value;
  if (!modular) {
    CheckResult r;
    r.name = "modular: cancellative and weak meet principal imply l-invertible";
    r.witness = "lattice not modular; vacuous";
    return r;
  }
  const std::size_t k = opt.exhaustive ? domain.size() : std::min(opt.pairs * 3, domain.size());
  auto failure = first_failure(
      k,
      [&](std::size_t i) -> std::optional<std::string> {
        auto r = element_predicates(lattice, domain[i], inner, opt.exhaustive);
        if (r.cancellative.value && r.weak_meet_principal.value && !r.ell_invertible.value) {
          return "x = " + lattice.format(domain[i]);
        }
        return std::nullopt;
      },
      opt.exec);
  return finish("modular: cancellative and weak meet principal imply l-invertible", k, failure);
}

std::vector<CheckResult> run_core_suite(const Lattice& lattice, const TestWindow& window,
                                        const SuiteOptions& options) {
  SuiteOptions opt = options;
  opt.exhaustive = window.exhaustive;
  std::span<const ElemRef> d(window.sample);
  std::vector<CheckResult> out;
  out.push_back(check_residual_adjunction(lattice, d, opt));
  out.push_back(check_bottom_annihilates(lattice, d));
  for (auto& r : check_localization_laws(lattice, d, opt)) out.push_back(std::move(r));
  out.push_back(check_minimal_prime_localization(lattice, d));
  for (auto& r : check_principal_closure(lattice, d, opt)) out.push_back(std::move(r));
  out.push_back(check_modular_invertibility(lattice, d, opt));
  return out;
}

}  // namespace radfact
