#include "radfact/sp_conditions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "radfact/core.hpp"
#include "radfact/factorization.hpp"
#include "radfact/instances.hpp"
#include "radfact/representation.hpp"

namespace radfact {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Lattice: return "lattice";
    case Flavor::Domain: return "domain";
    case Flavor::Monoid: return "monoid";
  }
  return "?";
}

Flavor parse_flavor(std::string_view text) {
  const auto head = text.substr(0, text.find('-'));
  if (head == "lattice") return Flavor::Lattice;
  if (head == "domain") return Flavor::Domain;
  if (head == "monoid") return Flavor::Monoid;
  throw Error(ErrorKind::ParseError, "unknown flavor '" + std::string(text) + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::WindowVerified: return "window-verified";
    case Verdict::False: return "false";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool ConditionReport::all_hold() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.holds(); });
}

bool ConditionReport::all_fail() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.verdict == Verdict::False; });
}

namespace {

enum class Cond {
  RadicalFactorial,
  DimInvertiblesFactor,
  PrimesMaximalOverInvertibleRadical,
  DimPrimesOverInvertibleRadical,
  ChainFactorization,
  UniqueChainFactorization,
  RadicalOfCompactInvertible,
  PruferRadicalCompact,
  Representation,
};

const char* cond_id(Cond c) {
  switch (c) {
    case Cond::RadicalFactorial: return "radical-factorial";
    case Cond::DimInvertiblesFactor: return "dim-le-1-invertibles-factor";
    case Cond::PrimesMaximalOverInvertibleRadical: return "primes-maximal-over-invertible-radical";
    case Cond::DimPrimesOverInvertibleRadical: return "dim-le-1-primes-over-invertible-radical";
    case Cond::ChainFactorization: return "ascending-chain-factorization";
    case Cond::UniqueChainFactorization: return "unique-ascending-chain-factorization";
    case Cond::RadicalOfCompactInvertible: return "radical-of-compact-invertible";
    case Cond::PruferRadicalCompact: return "prufer-and-radical-of-compact-compact";
    case Cond::Representation: return "phi-isomorphism";
  }
  return "?";
}

std::vector<Cond> conditions_for(Flavor f) {
  switch (f) {
    case Flavor::Lattice:
      return {Cond::RadicalFactorial, Cond::DimInvertiblesFactor,
              Cond::PrimesMaximalOverInvertibleRadical, Cond::ChainFactorization,
              Cond::RadicalOfCompactInvertible, Cond::PruferRadicalCompact};
    case Flavor::Domain:
      return {Cond::RadicalFactorial, Cond::UniqueChainFactorization, Cond::DimInvertiblesFactor,
              Cond::PrimesMaximalOverInvertibleRadical, Cond::RadicalOfCompactInvertible,
              Cond::Representation, Cond::PruferRadicalCompact};
    case Flavor::Monoid:
      return {Cond::RadicalFactorial, Cond::DimInvertiblesFactor,
              Cond::DimPrimesOverInvertibleRadical, Cond::UniqueChainFactorization,
              Cond::RadicalOfCompactInvertible, Cond::Representation,
              Cond::PruferRadicalCompact};
  }
  return {};
}

struct Evaluator {
  LatticeHandle handle;
  const Lattice& L;
  const SpOptions& opt;
  TestWindow window;
  std::vector<ElemRef> inner;
  std::map<ElemRef, PredicateRecord> preds;
  std::map<ElemRef, ProductDecision> products;
  std::vector<ElemRef> radical_pool;  // candidates for "an invertible radical below p"

  Verdict holds_verdict() const {
    return window.exhaustive ? Verdict::True : Verdict::WindowVerified;
  }

  Evaluator(LatticeHandle h, const SpOptions& o)
      : handle(std::move(h)), L(*handle), opt(o), window(default_window(L, o.window, o.seed)) {
    inner = window.exhaustive ? window.sample
                              : std::vector<ElemRef>(window.head(opt.inner).begin(),
                                                     window.head(opt.inner).end());
    std::set<ElemRef> need(window.sample.begin(), window.sample.end());
    std::set<ElemRef> rads;
    for (const auto& x : window.sample) rads.insert(L.radical(x));
    if (auto cat = L.radical_catalog(); cat && cat->size() <= 64) rads.insert(cat->begin(), cat->end());
    radical_pool.assign(rads.begin(), rads.end());
    need.insert(rads.begin(), rads.end());
    const std::vector<ElemRef> all(need.begin(), need.end());
    auto recs = parallel_map<PredicateRecord>(all.size(), [&](std::size_t i) {
      return element_predicates(L, all[i], inner, window.exhaustive);
    }, opt.exec);
    for (std::size_t i = 0; i < all.size(); ++i) preds.emplace(all[i], std::move(recs[i]));

    std::optional<RadicalProducts> sat;
    if (L.capabilities().finite_enumerable) sat.emplace(L);
    auto decs = parallel_map<ProductDecision>(window.sample.size(), [&](std::size_t i) {
      return sat ? sat->decide(window.sample[i]) : decide_product_of_radicals(L, window.sample[i]);
    }, opt.exec);
    for (std::size_t i = 0; i < decs.size(); ++i) products.emplace(window.sample[i], std::move(decs[i]));
  }

  const PredicateRecord& pred(const ElemRef& x) {
    auto it = preds.find(x);
    if (it == preds.end()) {
      it = preds.emplace(x, element_predicates(L, x, inner, window.exhaustive)).first;
    }
    return it->second;
  }

  std::string why_not_invertible(const ElemRef& x) {
    const auto& p = pred(x);
    if (!p.cancellative.value) {
      return L.format(x) + " is not cancellative: " + format_list(L, p.cancellative.witness);
    }
    if (!p.meet_principal.value) {
      return L.format(x) + " is not meet principal: " + format_list(L, p.meet_principal.witness);
    }
    return L.format(x) + " is not join principal: " + format_list(L, p.join_principal.witness);
  }

  // Extra evidence for numerical monoids: no J with x + J principal among small ideals.
  std::string s_invertibility_note(const ElemRef& x) {
    const auto* nm = dynamic_cast<const NumericalMonoidLattice*>(&L);
    if (!nm || L.is_bottom(x)) return {};
    const std::int64_t bound = nm->frobenius() + 1 + 2 * nm->generators().back();
    try {
      if (nm->s_invertible(x, bound)) return {};
    } catch (const Error&) {
      return {};
    }
    return "; no J with conductor <= " + std::to_string(bound) + " makes " + L.format(x) +
           " + J principal";
  }

  std::optional<ConditionResult> dimension_failure() {
    const auto chain = longest_prime_chain(L, window.sample);
    if (chain.size() <= 2) return std::nullopt;
    ConditionResult r;
    r.verdict = Verdict::False;
    r.witness = chain;
    r.detail = "prime chain of length " + std::to_string(chain.size() - 1) + ": " +
               format_list(L, chain);
    return r;
  }

  // "every x in the window satisfies ok(x)"; ok returns nullopt (unknown), true or false.
  template <class Pred>
  ConditionResult for_all(std::span<const ElemRef> xs, Pred&& ok) {
    ConditionResult r;
    bool unknown = false;
    std::string unknown_detail;
    for (const auto& x : xs) {
      std::string detail;
      std::vector<ElemRef> witness{x};
      std::optional<bool> v = ok(x, detail, witness);
      if (!v) {
        if (!unknown) unknown_detail = L.format(x) + ": " + detail;
        unknown = true;
      } else if (!*v) {
        r.verdict = Verdict::False;
        r.witness = std::move(witness);
        r.detail = std::move(detail);
        return r;
      }
    }
    r.verdict = unknown ? Verdict::Inconclusive : holds_verdict();
    r.detail = unknown ? unknown_detail : "checked " + std::to_string(xs.size()) + " elements";
    return r;
  }

  std::optional<bool> is_product(const ElemRef& x, std::string& detail) {
    auto it = products.find(x);
    const ProductDecision d = it != products.end() ? it->second : decide_product_of_radicals(L, x);
    detail = d.method;
    if (d.value == false) detail = L.format(x) + " is not a product of radical elements (" + d.method + ")";
    return d.value;
  }

  // Ascending factorisation of x, from the engine or (finite / catalogue) chain search.
  std::optional<bool> has_chain(const ElemRef& x, std::string& detail, bool unique) {
    std::optional<FactorChain> chain;
    try {
      chain = radical_factor(L, x, opt.max_steps);
    } catch (const Error& e) {
      detail = e.what();
    }
    if (!chain) {
      std::string pd;
      auto p = is_product(x, pd);
      if (p == false) {
        detail = pd;
        return false;
      }
    }
    if (!unique && chain) return true;
    const std::size_t bound =
        std::max(opt.uniqueness_bound, chain ? chain->factors.size() + 1 : opt.uniqueness_bound);
    UniquenessReport rep;
    try {
      rep = verify_uniqueness(L, x, bound);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapabilityMissing) throw;
      detail = "uniqueness not searchable: no finite set of candidate radicals";
      return std::nullopt;
    }
    if (rep.chains.empty()) {
      detail = "no ascending radical chain of length <= " + std::to_string(bound) + " multiplies to " + L.format(x);
      return chain ? std::optional<bool>() : std::optional<bool>(false);
    }
    if (!unique) return true;
    if (rep.chains.size() > 1) {
      detail = std::to_string(rep.chains.size()) + " distinct ascending chains multiply to " + L.format(x);
      return false;
    }
    return true;
  }

  std::vector<ElemRef> nonzero(std::span<const ElemRef> xs) const {
    std::vector<ElemRef> out;
    for (const auto& x : xs) {
      if (!L.is_bottom(x)) out.push_back(x);
    }
    return out;
  }

  std::optional<ElemRef> invertible_radical_below(const ElemRef& p) {
    if (pred(p).ell_invertible.value) return p;
    for (const auto& r : radical_pool) {
      if (!L.is_bottom(r) && L.leq(r, p) && pred(r).ell_invertible.value) return r;
    }
    return std::nullopt;
  }

  ConditionResult evaluate(Cond c) {
    const auto& W = window.sample;
    const auto nz = nonzero(W);
    switch (c) {
      case Cond::RadicalFactorial:
        return for_all(W, [&](const ElemRef& x, std::string& d, auto&) { return is_product(x, d); });

      case Cond::DimInvertiblesFactor: {
        if (auto f = dimension_failure()) return *f;
        return for_all(W, [&](const ElemRef& x, std::string& d, auto&) -> std::optional<bool> {
          if (!pred(x).ell_invertible.value) return true;
          auto v = is_product(x, d);
          if (v == false) d = "l-invertible " + d;
          return v;
        });
      }

      case Cond::PrimesMaximalOverInvertibleRadical:
      case Cond::DimPrimesOverInvertibleRadical: {
        if (c == Cond::DimPrimesOverInvertibleRadical) {
          if (auto f = dimension_failure()) return *f;
        }
        const auto ps = nonzero(L.primes(W));
        auto r = for_all(ps, [&](const ElemRef& p, std::string& d, auto&) -> std::optional<bool> {
          if (c == Cond::PrimesMaximalOverInvertibleRadical && !L.is_maximal(p, W)) {
            d = "nonzero prime " + L.format(p) + " is not maximal";
            return false;
          }
          if (!invertible_radical_below(p)) {
            d = "no l-invertible radical element below the prime " + L.format(p) +
                s_invertibility_note(p);
            return false;
          }
          return true;
        });
        if (r.holds()) r.detail = "checked " + std::to_string(ps.size()) + " nonzero primes";
        if (r.holds() && L.capabilities().primes_enumerable && !window.exhaustive) {
          r.detail += " (prime catalogue), radicals from the window";
        }
        return r;
      }

      case Cond::ChainFactorization:
        return for_all(W, [&](const ElemRef& x, std::string& d, auto&) { return has_chain(x, d, false); });

      case Cond::UniqueChainFactorization:
        return for_all(nz, [&](const ElemRef& x, std::string& d, auto&) { return has_chain(x, d, true); });

      case Cond::RadicalOfCompactInvertible:
        return for_all(nz, [&](const ElemRef& x, std::string& d, auto& w) -> std::optional<bool> {
          if (!L.is_compact(x)) return true;
          const ElemRef r = L.radical(x);
          if (pred(r).ell_invertible.value) return true;
          w = r == x ? std::vector<ElemRef>{x} : std::vector<ElemRef>{x, r};
          d = "radical of " + L.format(x) + " is " + L.format(r) + ", not l-invertible: " +
              why_not_invertible(r) + s_invertibility_note(r);
          return false;
        });

      case Cond::PruferRadicalCompact:
        return for_all(W, [&](const ElemRef& x, std::string& d, auto& w) -> std::optional<bool> {
          if (!L.is_compact(x)) return true;
          if (!L.is_bottom(x) && !pred(x).ell_invertible.value) {
            d = "compact " + why_not_invertible(x) + s_invertibility_note(x);
            return false;
          }
          const ElemRef r = L.radical(x);
          if (!L.is_compact(r)) {
            w = {x, r};
            d = "radical of compact " + L.format(x) + " is " + L.format(r) + ", not compact";
            return false;
          }
          return true;
        });

      case Cond::Representation: {
        ConditionResult r;
        try {
          const Phi phi = build_phi_unchecked(handle, W);
          const std::size_t n = std::min<std::size_t>(W.size(), opt.inner);
          const auto rep = verify_iso(phi, std::span<const ElemRef>(W.data(), n), opt.seed, opt.exec);
          for (const auto& chk : rep.checks) {
            if (!chk.passed) {
              r.verdict = Verdict::False;
              r.detail = chk.name + " fails: " + chk.witness;
              return r;
            }
          }
          r.verdict = holds_verdict();
          r.detail = "phi additive, order embedding, injective and surjective on the window";
        } catch (const Error& e) {
          r.verdict = Verdict::Inconclusive;
          r.detail = e.what();
        }
        return r;
      }
    }
    return {};
  }
};

void check_hypotheses(const Lattice& L, Flavor flavor, const Evaluator& ev) {
  if (flavor == Flavor::Monoid && L.origin() != Origin::MonoidIdeals) {
    throw Error(ErrorKind::HypothesisViolated, "flavor monoid needs the ideal lattice of a monoid");
  }
  if (flavor == Flavor::Domain && L.origin() == Origin::MonoidIdeals) {
    throw Error(ErrorKind::HypothesisViolated, "flavor domain needs the ideal lattice of a ring");
  }
  if (!L.capabilities().c_lattice_declared) {
    throw Error(ErrorKind::HypothesisViolated, L.name() + " is not declared a C-lattice");
  }
  const auto lp = lattice_predicates(L, ev.inner, ev.window.exhaustive);
  if (!lp.domain.value) {
    throw Error(ErrorKind::HypothesisViolated,
                L.name() + " is not a domain: " + format_list(L, lp.domain.witness));
  }
  if (!lp.principally_generated.value) {
    throw Error(ErrorKind::HypothesisViolated,
                L.name() + " is not principally generated at " +
                    L.format(lp.principally_generated.witness[0]));
  }
}

}  // namespace

ConditionReport check_sp_conditions(const LatticeHandle& lattice, Flavor flavor,
                                    const SpOptions& opt) {
  Evaluator ev(lattice, opt);
  check_hypotheses(*lattice, flavor, ev);
  ConditionReport rep;
  rep.lattice = lattice->name();
  rep.flavor = flavor;
  rep.window_note = ev.window.note;
  if (!ev.window.exhaustive) {
    rep.notes.push_back("hypotheses and true verdicts are window-verified over " +
                        std::to_string(ev.window.sample.size()) + " elements");
  }
  int number = 1;
  for (Cond c : conditions_for(flavor)) {
    ConditionResult r = ev.evaluate(c);
    r.number = number++;
    r.id = cond_id(c);
    rep.conditions.push_back(std::move(r));
  }
  std::set<bool> seen;
  for (const auto& c : rep.conditions) {
    if (c.verdict != Verdict::Inconclusive) seen.insert(c.holds());
  }
  rep.agreement = seen.size() == 1;
  return rep;
}

nlohmann::json condition_report_to_json(const Lattice& lattice, const ConditionReport& report) {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& c : report.conditions) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& e : c.witness) w.push_back(lattice.format(e));
    conds.push_back({{"number", c.number},
                     {"id", c.id},
                     {"verdict", to_string(c.verdict)},
                     {"witness", w},
                     {"detail", c.detail}});
  }
  return {{"lattice", report.lattice},
          {"flavor", to_string(report.flavor)},
          {"conditions", conds},
          {"agreement", report.agreement},
          {"window", report.window_note},
          {"notes", report.notes}};
}

}  // namespace radfact
