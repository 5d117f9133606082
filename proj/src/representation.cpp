#include "radfact/representation.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "radfact/factorization.hpp"

namespace radfact {

MaxSpectrum max_spectrum(const LatticeHandle& lattice, std::span<const ElemRef> context) {
  MaxSpectrum s;
  s.lattice = lattice;
  const auto caps = lattice->capabilities();
  // A maximal bottom (the two-element lattice) carries no valuation, so only nonzero maximal
  // elements are points.
  const ElemRef bottom = lattice->bottom();
  if (caps.maximals_enumerable) {
    for (auto& m : lattice->maximals(context)) {
      if (m != bottom) s.points.push_back(std::move(m));
    }
    s.space = Space::finite_discrete(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) s.coords.push_back(i);
    const std::size_t limit = std::min<std::size_t>(context.size(), 16);
    for (std::size_t c = 0; c < limit; ++c) {
      const ElemRef& x = context[c];
      if (!lattice->is_compact(x)) continue;
      std::vector<std::uint64_t> v;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (lattice->leq(x, s.points[i])) v.push_back(i);
      }
      s.basis.emplace_back(x, std::move(v));
    }
    return s;
  }
  s.space = Space::countable_discrete();
  for (const auto& m : lattice->maximals(context)) {
    if (m == bottom) continue;
    auto c = lattice->spectrum_point(m);
    if (!c) {
      throw Error(ErrorKind::CapabilityMissing, lattice->name() + " has no spectrum coordinates");
    }
    s.points.push_back(m);
    s.coords.push_back(*c);
  }
  return s;
}

std::optional<std::uint64_t> valuation_by_powers(const Lattice& lattice, const ElemRef& x,
                                                 const ElemRef& m, unsigned cap) {
  ElemRef p = lattice.top();
  for (unsigned k = 0; k < cap; ++k) {
    ElemRef q = lattice.mul(p, m);
    if (!lattice.leq(x, q)) return k;
    if (q == p) return std::nullopt;
    p = std::move(q);
  }
  return std::nullopt;
}

std::optional<std::uint64_t> valuation(const Lattice& lattice, const ElemRef& x, const ElemRef& m,
                                       unsigned cap) {
  lattice.check(x);
  lattice.check(m);
  if (lattice.is_bottom(x)) throw Error(ErrorKind::ZeroElement, "valuation of bottom");
  const ElemRef ctx[] = {x, m};
  if (!lattice.is_maximal(m, ctx)) {
    throw Error(ErrorKind::NotMaximal, lattice.format(m) + " is not maximal");
  }
  if (auto v = lattice.valuation_closed_form(x, m)) return v;
  return valuation_by_powers(lattice, x, m, cap);
}

namespace {

// Materialised points relevant to x: the whole spectrum when finite, else those from x.
std::vector<std::pair<std::uint64_t, ElemRef>> points_for(const MaxSpectrum& s,
                                                         std::span<const ElemRef> xs) {
  std::vector<std::pair<std::uint64_t, ElemRef>> out;
  if (s.finite()) {
    for (std::size_t i = 0; i < s.points.size(); ++i) out.emplace_back(s.coords[i], s.points[i]);
    return out;
  }
  for (const auto& m : s.lattice->maximals(xs)) out.emplace_back(*s.lattice->spectrum_point(m), m);
  return out;
}

}  // namespace

USCFun alpha(const MaxSpectrum& spectrum, const ElemRef& x) {
  const Lattice& L = *spectrum.lattice;
  L.check(x);
  if (L.is_bottom(x)) throw Error(ErrorKind::ZeroElement, "alpha of bottom");
  std::map<std::uint64_t, std::uint64_t> values;
  const ElemRef ctx[] = {x};
  for (const auto& [c, m] : points_for(spectrum, ctx)) {
    if (!L.leq(x, m)) continue;
    auto v = valuation(L, x, m);
    if (!v) {
      throw Error(ErrorKind::HypothesisViolated,
                  "v_m(x) unbounded for x = " + L.format(x) + ", m = " + L.format(m));
    }
    if (*v) values[c] = *v;
  }
  return USCFun::make(spectrum.space, std::move(values));
}

USCFun Phi::operator()(const ElemRef& x) const {
  if (lattice().is_bottom(x)) return USCFun::bottom(spectrum_.space);
  return alpha(spectrum_, x);
}

ElemRef Phi::preimage(const USCFun& f) const {
  const Lattice& L = lattice();
  if (!(f.space() == spectrum_.space)) {
    throw Error(ErrorKind::SpaceMismatch, "function lives on " + f.space().describe());
  }
  if (f.is_bottom()) return L.bottom();
  if (!f.space().discrete()) {
    throw Error(ErrorKind::UnsupportedTopology, "preimage needs a discrete spectrum");
  }
  ElemRef x = L.top();
  for (const auto& level : decompose(f).chain()) {
    ElemRef z = L.top();
    for (const auto& [c, v] : level.exceptions()) {
      if (v == 0) continue;
      auto m = L.maximal_at(c);
      if (!m) throw Error(ErrorKind::InvalidArgument, "no maximal element at point " + std::to_string(c));
      z = L.meet(z, *m);
    }
    x = L.mul(x, z);
  }
  if ((*this)(x) != f) {
    throw Error(ErrorKind::HypothesisViolated,
                "preimage " + L.format(x) + " of " + f.describe() + " does not map back");
  }
  return x;
}

Phi build_phi_unchecked(const LatticeHandle& lattice, std::span<const ElemRef> context) {
  return Phi(max_spectrum(lattice, context), false);
}

Phi build_phi(const LatticeHandle& lattice, const TestWindow& window, std::size_t inner) {
  const Lattice& L = *lattice;
  const auto chain = longest_prime_chain(L, window.sample);
  if (chain.size() > 2) {
    throw Error(ErrorKind::HypothesisViolated,
                "dimension " + std::to_string(chain.size() - 1) + " > 1: " + format_list(L, chain));
  }
  const auto q = window.exhaustive ? std::span<const ElemRef>(window.sample) : window.head(inner);
  const auto lp = lattice_predicates(L, q, window.exhaustive);
  if (!lp.domain.value) {
    throw Error(ErrorKind::HypothesisViolated, "not a domain: " + format_list(L, lp.domain.witness));
  }
  if (!lp.principally_generated.value) {
    throw Error(ErrorKind::HypothesisViolated,
                "not principally generated at " + L.format(lp.principally_generated.witness[0]));
  }
  for (const auto& x : window.sample) {
    auto d = decide_product_of_radicals(L, x);
    if (d.value != true) {
      throw Error(ErrorKind::HypothesisViolated,
                  L.format(x) + " is not known to be a product of radicals (" + d.method + ")");
    }
  }
  return Phi(max_spectrum(lattice, window.sample), true);
}

bool IsoReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

IsoReport verify_iso(const Phi& phi, std::span<const ElemRef> window, std::uint64_t seed,
                     Exec exec) {
  const Lattice& L = phi.lattice();
  const std::size_t n = window.size();
  IsoReport rep;
  std::vector<std::optional<USCFun>> img(n);
  std::string image_error;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      img[i] = phi(window[i]);
    } catch (const Error& e) {
      if (image_error.empty()) image_error = L.format(window[i]) + ": " + e.what();
    }
  }
  const char* names[] = {"phi additive", "phi order embedding", "phi injective", "phi surjective"};
  if (!image_error.empty()) {
    for (const char* name : names) rep.checks.push_back({name, false, 0, image_error});
    return rep;
  }

  auto pairwise = [&](const char* name, auto&& body) {
    CheckResult c{name, true, n * n, ""};
    auto f = first_failure(n, [&](std::size_t i) -> std::optional<std::string> {
      for (std::size_t j = 0; j < n; ++j) {
        if (auto w = body(i, j)) return w;
      }
      return std::nullopt;
    }, exec);
    if (f) {
      c.passed = false;
      c.witness = f->second;
    }
    rep.checks.push_back(std::move(c));
  };
  pairwise(names[0], [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
    const ElemRef xy = L.mul(window[i], window[j]);
    std::optional<USCFun> lhs;
    try {
      lhs = phi(xy);
    } catch (const Error& e) {
      return L.format(xy) + ": " + e.what();
    }
    if (*lhs != add(*img[i], *img[j])) {
      return "phi(" + L.format(window[i]) + " * " + L.format(window[j]) + ") = " + lhs->describe();
    }
    return std::nullopt;
  });
  pairwise(names[1], [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
    if (L.leq(window[i], window[j]) != leq_d(*img[i], *img[j])) {
      return L.format(window[i]) + " vs " + L.format(window[j]) + ": images " +
             img[i]->describe() + ", " + img[j]->describe();
    }
    return std::nullopt;
  });
  pairwise(names[2], [&](std::size_t i, std::size_t j) -> std::optional<std::string> {
    if (i < j && window[i] != window[j] && *img[i] == *img[j]) {
      return L.format(window[i]) + " and " + L.format(window[j]) + " both map to " +
             img[i]->describe();
    }
    return std::nullopt;
  });

  // Targets: the window images, indicators of subsets of (up to 10) points, random functions.
  std::vector<USCFun> targets;
  for (const auto& f : img) targets.push_back(*f);
  const auto& sp = phi.spectrum();
  std::vector<std::uint64_t> coords(sp.coords.begin(),
                                    sp.coords.begin() + std::min<std::size_t>(sp.coords.size(), 10));
  if (coords.empty() && !sp.finite()) coords = {0};
  for (std::uint32_t mask = 0; mask < (1u << coords.size()); ++mask) {
    std::map<std::uint64_t, std::uint64_t> m;
    for (std::size_t b = 0; b < coords.size(); ++b) {
      if (mask & (1u << b)) m[coords[b]] = 1;
    }
    if (sp.finite() || sp.space.kind == SpaceKind::CountableDiscrete) {
      targets.push_back(USCFun::make(sp.space, std::move(m)));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> val(0, 3);
  for (int r = 0; r < 50; ++r) {
    std::map<std::uint64_t, std::uint64_t> m;
    for (auto c : coords) m[c] = val(rng);
    targets.push_back(USCFun::make(sp.space, std::move(m)));
  }
  CheckResult surj{names[3], true, targets.size(), ""};
  auto f = first_failure(targets.size(), [&](std::size_t t) -> std::optional<std::string> {
    try {
      phi.preimage(targets[t]);
    } catch (const Error& e) {
      return targets[t].describe() + ": " + e.what();
    }
    return std::nullopt;
  }, exec);
  if (f) {
    surj.passed = false;
    surj.witness = f->second;
  }
  rep.checks.push_back(std::move(surj));
  return rep;
}

bool homeomorphic(const MaxSpectrum& a, const MaxSpectrum& b) {
  if (!a.space.discrete() || !b.space.discrete()) {
    throw Error(ErrorKind::UnsupportedTopology, "only discrete spectra are compared");
  }
  if (a.space.kind != b.space.kind) return false;
  return a.space.kind == SpaceKind::CountableDiscrete || a.size() == b.size();
}

std::optional<std::vector<Separation>> hausdorff_witnesses(const MaxSpectrum& spectrum,
                                                           std::span<const ElemRef> domain) {
  if (!spectrum.finite()) {
    throw Error(ErrorKind::UnsupportedTopology, "separation witnesses need a finite spectrum");
  }
  const Lattice& L = *spectrum.lattice;
  std::vector<ElemRef> compact;
  for (const auto& m : spectrum.points) {
    if (L.is_compact(m)) compact.push_back(m);
  }
  for (const auto& x : domain) {
    if (L.is_compact(x)) compact.push_back(x);
  }
  std::vector<Separation> out;
  const auto& pts = spectrum.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      bool found = false;
      for (std::size_t a = 0; a < compact.size() && !found; ++a) {
        if (!L.leq(compact[a], pts[i])) continue;
        for (const auto& y : compact) {
          if (L.leq(y, pts[j]) && L.is_top(L.join(compact[a], y))) {
            out.push_back({i, j, compact[a], y});
            found = true;
            break;
          }
        }
      }
      if (!found) return std::nullopt;
    }
  }
  return out;
}

std::vector<CheckResult> check_valuations(const Phi& phi, std::span<const ElemRef> window,
                                          Exec exec) {
  const Lattice& L = phi.lattice();
  const auto& sp = phi.spectrum();
  std::vector<ElemRef> xs;
  for (const auto& x : window) {
    if (!L.is_bottom(x)) xs.push_back(x);
  }
  const std::size_t n = xs.size();
  auto pts = points_for(sp, xs);
  std::vector<CheckResult> out;

  auto run = [&](std::string name, std::size_t checked, auto&& body) {
    CheckResult c{std::move(name), true, checked, ""};
    if (auto f = first_failure(n, body, exec)) {
      c.passed = false;
      c.witness = f->second;
    }
    out.push_back(std::move(c));
  };

  run("valuation additive", n * n * pts.size(), [&](std::size_t i) -> std::optional<std::string> {
    for (std::size_t j = 0; j < n; ++j) {
      const ElemRef xy = L.mul(xs[i], xs[j]);
      for (const auto& [c, m] : pts) {
        auto a = valuation(L, xs[i], m), b = valuation(L, xs[j], m), ab = valuation(L, xy, m);
        if (!a || !b || !ab || *ab != *a + *b) {
          return "m = " + L.format(m) + ", x = " + L.format(xs[i]) + ", y = " + L.format(xs[j]);
        }
      }
    }
    return std::nullopt;
  });
  run("valuation closed form matches powers", n * pts.size(),
      [&](std::size_t i) -> std::optional<std::string> {
        for (const auto& [c, m] : pts) {
          if (valuation(L, xs[i], m) != valuation_by_powers(L, xs[i], m)) {
            return "x = " + L.format(xs[i]) + ", m = " + L.format(m);
          }
        }
        return std::nullopt;
      });
  run("valuation is the localization exponent", n * pts.size(),
      [&](std::size_t i) -> std::optional<std::string> {
        for (const auto& [c, m] : pts) {
          auto v = valuation(L, xs[i], m);
          if (!v || L.localize(xs[i], m) != L.power(m, static_cast<unsigned>(*v))) {
            return "x = " + L.format(xs[i]) + ", m = " + L.format(m);
          }
        }
        return std::nullopt;
      });
  run("alpha support is V(rad x)", n, [&](std::size_t i) -> std::optional<std::string> {
    USCFun a = alpha(sp, xs[i]);
    const ElemRef r = L.radical(xs[i]);
    const ElemRef ctx[] = {xs[i]};
    for (const auto& [c, m] : points_for(sp, ctx)) {
      if ((a.at(c) > 0) != L.leq(r, m)) {
        return "x = " + L.format(xs[i]) + ", m = " + L.format(m) + ", alpha = " + a.describe();
      }
    }
    for (const auto& [c, v] : a.exceptions()) {
      if (v > 0 && !L.leq(r, *L.maximal_at(c))) return "x = " + L.format(xs[i]);
    }
    return std::nullopt;
  });
  return out;
}

CheckResult check_engine_coherence(const Phi& phi, std::span<const ElemRef> window) {
  const Lattice& L = phi.lattice();
  CheckResult c{"canonical chain maps to the level-set decomposition", true, 0, ""};
  for (const auto& x : window) {
    if (L.is_bottom(x)) continue;
    ++c.checked;
    std::vector<USCFun> mapped;
    try {
      for (const auto& f : canonical_chain(L, x).factors) mapped.push_back(phi(f));
    } catch (const Error& e) {
      c.passed = false;
      c.witness = L.format(x) + ": " + e.what();
      return c;
    }
    if (mapped != decompose(phi(x)).chain()) {
      c.passed = false;
      c.witness = L.format(x);
      return c;
    }
  }
  return c;
}

CheckResult check_composed_iso(const Phi& a, const Phi& b, std::span<const ElemRef> window) {
  CheckResult c{"composed isomorphism", true, 0, ""};
  if (!homeomorphic(a.spectrum(), b.spectrum())) {
    c.passed = false;
    c.witness = "spectra not homeomorphic";
    return c;
  }
  const Lattice& La = a.lattice();
  const Lattice& Lb = b.lattice();
  std::vector<ElemRef> img;
  try {
    for (const auto& x : window) img.push_back(b.preimage(a(x)));
    for (std::size_t i = 0; i < window.size(); ++i) {
      for (std::size_t j = 0; j < window.size(); ++j) {
        ++c.checked;
        const ElemRef xy = b.preimage(a(La.mul(window[i], window[j])));
        const bool ok = xy == Lb.mul(img[i], img[j]) &&
                        La.leq(window[i], window[j]) == Lb.leq(img[i], img[j]) &&
                        ((window[i] == window[j]) == (img[i] == img[j]));
        if (!ok) {
          c.passed = false;
          c.witness = La.format(window[i]) + ", " + La.format(window[j]);
          return c;
        }
      }
    }
  } catch (const Error& e) {
    c.passed = false;
    c.witness = e.what();
  }
  return c;
}

nlohmann::json spectrum_to_json(const MaxSpectrum& s) {
  const Lattice& L = *s.lattice;
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    points.push_back({{"point", s.coords[i]}, {"element", L.format(s.points[i])}});
  }
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& [x, v] : s.basis) basis.push_back({{"element", L.format(x)}, {"points", v}});
  return {{"space", s.space.to_json()}, {"points", points}, {"basis", basis}};
}

}  // namespace radfact
