#include "radfact/suites.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "radfact/cli.hpp"
#include "radfact/factorization.hpp"
#include "radfact/instances.hpp"
#include "radfact/report.hpp"
#include "radfact/representation.hpp"
#include "radfact/sp_conditions.hpp"
#include "radfact/usc.hpp"

namespace radfact {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult make_check(std::string name, std::size_t checked, std::optional<std::string> failure) {
  CheckResult c{std::move(name), !failure.has_value(), checked, {}};
  if (failure) c.witness = std::move(*failure);
  return c;
}

std::string show(const Lattice& l, std::initializer_list<ElemRef> xs) {
  std::vector<ElemRef> v(xs);
  return format_list(l, v);
}

std::string first_failed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return c.name + ": " + c.witness;
  }
  return {};
}

// "2:a,3:b,5:c" with zero exponents left out; "1" for the zero vector.
std::string exponent_text(const std::vector<int>& e) {
  static const int primes[] = {2, 3, 5, 7, 11, 13};
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += ",";
    out += std::to_string(primes[i]) + ":" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

ElemRef product_of(const Lattice& l, const std::vector<ElemRef>& xs) {
  ElemRef p = l.top();
  for (const auto& x : xs) p = l.mul(p, x);
  return p;
}

// Chain checks shared by the engine criterion and the factorization suite.
std::optional<std::string> chain_problem(const Lattice& l, const ElemRef& x, const FactorChain& ch,
                                         std::span<const ElemRef> domain) {
  if (!ch.product_check || product_of(l, ch.factors) != x) {
    return "product of " + format_list(l, ch.factors) + " is not " + l.format(x);
  }
  for (std::size_t i = 0; i < ch.factors.size(); ++i) {
    const auto& f = ch.factors[i];
    if (l.is_top(f)) return "factor " + l.format(f) + " is not proper";
    const ElemRef r = domain.empty() ? l.radical(f) : radical_by_powers(l, f, domain);
    if (r != f) return "factor " + l.format(f) + " is not radical";
    if (i + 1 < ch.factors.size() && !l.leq(f, ch.factors[i + 1])) {
      return "chain not ascending at " + show(l, {f, ch.factors[i + 1]});
    }
  }
  return std::nullopt;
}

USCFun random_usc(const Space& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> val(0, 5), count(0, 6), point(0, 40);
  std::map<std::uint64_t, std::uint64_t> m;
  if (space.kind == SpaceKind::FiniteDiscrete) {
    for (std::uint64_t p = 0; p < space.points; ++p) m[p] = val(rng);
    return USCFun::make(space, std::move(m));
  }
  const auto k = count(rng);
  for (std::uint64_t i = 0; i < k; ++i) m[point(rng)] = val(rng);
  if (space.kind == SpaceKind::CountableDiscrete) return USCFun::make(space, std::move(m));
  const std::uint64_t d = val(rng) % 3;
  const std::uint64_t inf = d + val(rng) % 3;
  return USCFun::make(space, std::move(m), d, inf);
}

struct CliRun {
  int code = 0;
  std::string out, err;
  nlohmann::json json;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (std::find(args.begin(), args.end(), "--json") != args.end()) {
    r.json = nlohmann::json::parse(r.out, nullptr, false);
  }
  return r;
}

// ---- criteria --------------------------------------------------------------------------------

CriterionResult criterion_axioms(const PropsOptions& opt) {
  CriterionResult c{1, "axioms and localization laws on Z/n", true, {}, 0, 10};
  std::size_t checks = 0;
  for (std::int64_t n : {8, 12, 30, 36, 360}) {
    const auto L = materialize_from_divisors(n);
    const auto rep = validate_tables(L->tables(), opt.exec);
    if (!rep.ok()) {
      c.passed = false;
      c.detail = "zmod:" + std::to_string(n) + " " + rep.first_failure()->axiom;
      return c;
    }
    const auto w = default_window(*L, 1000, opt.seed);
    SuiteOptions so;
    so.inner = 0;
    so.exec = opt.exec;
    auto results = run_core_suite(*L, w, so);
    results.push_back(check_radical_forms(*L, w.sample, so));
    checks += results.size() + rep.axioms.size();
    if (auto f = first_failed(results); !f.empty()) {
      c.passed = false;
      c.detail = "zmod:" + std::to_string(n) + " " + f;
      return c;
    }
  }
  c.detail = std::to_string(checks) + " exhaustive checks over 5 lattices";
  return c;
}

CriterionResult criterion_engine(const PropsOptions& opt) {
  CriterionResult c{2, "radical factorization of every proper ideal of Z/n, n <= 1000", true, {}, 0, 30};
  constexpr std::size_t kMax = 1000;
  auto per_n = parallel_map<std::pair<std::size_t, std::string>>(kMax - 1, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i + 2);
    std::size_t count = 0;
    try {
      const auto L = materialize_from_divisors(n);
      const auto elems = L->elements();
      for (const auto& x : elems) {
        if (L->is_top(x)) continue;
        ++count;
        const auto ch = radical_factor(*L, x);
        if (auto p = chain_problem(*L, x, ch, elems)) {
          return std::make_pair(count, "zmod:" + std::to_string(n) + " " + L->format(x) + ": " + *p);
        }
      }
    } catch (const std::exception& e) {
      return std::make_pair(count, "zmod:" + std::to_string(n) + ": " + e.what());
    }
    return std::make_pair(count, std::string());
  }, opt.exec);
  std::size_t total = 0, failures = 0;
  for (const auto& [count, msg] : per_n) {
    total += count;
    if (!msg.empty()) {
      if (failures++ == 0) c.detail = msg;
      c.passed = false;
    }
  }
  if (c.passed) c.detail = std::to_string(total) + " ideals factored, 0 failures";
  else c.detail = std::to_string(failures) + " failing moduli, first " + c.detail;
  return c;
}

CriterionResult criterion_sp_agreement(const PropsOptions&) {
  CriterionResult c{3, "equivalent conditions agree (Dedekind true, rank-2 and <2,3> false)", true, {}, 0, 0};
  struct Run {
    std::vector<std::string> args;
    bool expect_true;
    int witness_condition;  // 0: none required
    std::string witness;
  };
  std::vector<Run> runs;
  for (const char* k : {"1", "2", "3", "5"}) {
    runs.push_back({{"check-sp", "--builtin", std::string("dedekind:") + k, "--flavor", "domain", "--json"}, true, 0, {}});
  }
  runs.push_back({{"check-sp", "--builtin", "rank2", "--json"}, false, 3, "Limit(0)"});
  {
    const auto N = make_builtin("numerical:2,3");
    runs.push_back({{"check-sp", "--builtin", "numerical:2,3", "--flavor", "monoid-8.5", "--json"},
                    false, 5, N->format(N->parse("M"))});
  }
  std::vector<std::string> summary;
  for (const auto& run : runs) {
    const auto r = cli(run.args);
    const std::string who = run.args[2];
    auto fail = [&](const std::string& why) {
      if (c.passed) c.detail = who + ": " + why;
      c.passed = false;
    };
    if (r.code != 0) {
      fail("exit code " + std::to_string(r.code) + " " + r.err);
      continue;
    }
    if (r.json.is_discarded() || !r.json.contains("data") || !r.json["data"].contains("conditions")) {
      fail("no condition report");
      continue;
    }
    const auto& rep = r.json["data"]["conditions"];
    if (!rep.value("agreement", false)) fail("no agreement");
    for (const auto& cond : rep["conditions"]) {
      const std::string v = cond["verdict"].get<std::string>();
      const bool holds = v == "true" || v == "window-verified";
      if (holds != run.expect_true) fail("condition " + std::to_string(cond["number"].get<int>()) + " is " + v);
      if (!run.expect_true && cond["witness"].empty() && cond["number"].get<int>() != 6) {
        fail("condition " + std::to_string(cond["number"].get<int>()) + " has no witness");
      }
      if (cond["number"].get<int>() == run.witness_condition &&
          cond["witness"].dump().find(run.witness) == std::string::npos) {
        fail("condition " + std::to_string(run.witness_condition) + " witness lacks " + run.witness);
      }
    }
    summary.push_back(who + (run.expect_true ? " true" : " false"));
  }
  if (c.passed) {
    c.detail = "exit 0 in " + std::to_string(runs.size()) + " runs:";
    for (const auto& s : summary) c.detail += " " + s + ";";
    c.detail.pop_back();
  }
  return c;
}

CriterionResult criterion_uniqueness(const PropsOptions& opt) {
  CriterionResult c{4, "unique ascending radical chains on Dedekind(3)", true, {}, 0, 0};
  const auto L = dedekind(3);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> e(0, 4);
  std::vector<ElemRef> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(L->parse(exponent_text({e(rng), e(rng), e(rng)})));
  auto res = parallel_map<std::string>(xs.size(), [&](std::size_t i) -> std::string {
    try {
      const auto u = verify_uniqueness(*L, xs[i], 5);
      if (!u.engine_error.empty()) return L->format(xs[i]) + ": " + u.engine_error;
      if (!u.unique) return L->format(xs[i]) + ": " + std::to_string(u.chains.size()) + " chains";
      return {};
    } catch (const std::exception& ex) {
      return L->format(xs[i]) + ": " + ex.what();
    }
  }, opt.exec);
  for (const auto& r : res) {
    if (!r.empty()) {
      c.passed = false;
      c.detail = r;
      return c;
    }
  }
  c.detail = "200 elements, each with exactly one chain equal to the canonical chain";
  return c;
}

CriterionResult criterion_phi(const PropsOptions& opt) {
  CriterionResult c{5, "phi and valuations on Dedekind(3), 100-element window", true, {}, 0, 0};
  try {
    const LatticeHandle L = dedekind(3);
    const auto w = make_window(*L, 100, opt.seed);
    if (w.sample.size() != 100) {
      c.passed = false;
      c.detail = "window has " + std::to_string(w.sample.size()) + " elements";
      return c;
    }
    const auto phi = build_phi(L, w);
    auto checks = verify_iso(phi, w.sample, opt.seed, opt.exec).checks;
    for (auto& v : check_valuations(phi, w.sample, opt.exec)) checks.push_back(std::move(v));
    if (auto f = first_failed(checks); !f.empty()) {
      c.passed = false;
      c.detail = f;
      return c;
    }
    c.detail = std::to_string(checks.size()) + " checks on 100 elements and " +
               std::to_string(phi.spectrum().size()) + " spectrum points";
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

CriterionResult criterion_usc(const PropsOptions& opt) {
  CriterionResult c{6, "usc decomposition, radical test and prime bottom", true, {}, 0, 0};
  auto fail = [&](const std::string& why) {
    if (c.passed) c.detail = why;
    c.passed = false;
  };
  std::mt19937_64 rng(opt.seed);
  std::size_t decomposed = 0;
  for (const Space& space : {Space::finite_discrete(6), Space::countable_discrete(), Space::one_point()}) {
    for (int i = 0; i < 1000; ++i) {
      const auto f = random_usc(space, rng);
      const auto d = decompose(f);
      if (recompose(space, d) != f) fail("recompose(decompose(f)) != f for " + f.describe());
      for (const auto& level : d.level_sets) {
        if (!is_radical(level).radical) fail("level set " + level.describe() + " is not radical");
      }
      ++decomposed;
    }
  }

  // Definitional radical on FiniteDiscrete(4): sqrt f is the dual join (pointwise min) of every
  // g with n g >= f pointwise for some n, over the value grid {0..3}^4.
  const Space s4 = Space::finite_discrete(4);
  std::vector<std::array<std::uint64_t, 4>> grid;
  for (int code = 0; code < 256; ++code) {
    grid.push_back({std::uint64_t(code & 3), std::uint64_t((code >> 2) & 3),
                    std::uint64_t((code >> 4) & 3), std::uint64_t((code >> 6) & 3)});
  }
  auto fun = [&](const std::array<std::uint64_t, 4>& v) {
    std::map<std::uint64_t, std::uint64_t> m;
    for (std::uint64_t p = 0; p < 4; ++p) m[p] = v[p];
    return USCFun::make(s4, std::move(m));
  };
  for (const auto& f : grid) {
    std::array<std::uint64_t, 4> root{3, 3, 3, 3};
    for (const auto& g : grid) {
      for (std::uint64_t n = 1; n <= 4; ++n) {
        bool below = true;
        for (int p = 0; p < 4; ++p) below = below && n * g[p] >= f[p];
        if (below) {
          for (int p = 0; p < 4; ++p) root[p] = std::min(root[p], g[p]);
          break;
        }
      }
    }
    const bool definitional = root == f;
    const auto check = is_radical(fun(f));
    if (check.radical != definitional) fail("is_radical disagrees on " + fun(f).describe());
    if (!check.radical) {
      if (!check.witness || *check.witness != fun(root)) fail("radical witness differs on " + fun(f).describe());
      else if (!leq_d(scale(*check.witness, check.power), fun(f))) fail("witness power not below " + fun(f).describe());
    }
  }

  const Space s6 = Space::finite_discrete(6);
  const auto b = USCFun::bottom(s6);
  if (b == USCFun::zero(s6)) fail("b is the top element");
  std::bernoulli_distribution pick_b(0.2);
  for (int i = 0; i < 1000; ++i) {
    const auto f = pick_b(rng) ? b : random_usc(s6, rng);
    const auto g = pick_b(rng) ? b : random_usc(s6, rng);
    if (leq_d(add(f, g), b) && !leq_d(f, b) && !leq_d(g, b)) {
      fail("f g <= b with f, g above b: " + f.describe() + ", " + g.describe());
    }
    if (leq_d(meet_d(f, g), b) && !leq_d(f, b) && !leq_d(g, b)) {
      fail("f meet g <= b with f, g above b: " + f.describe() + ", " + g.describe());
    }
  }
  if (c.passed) {
    c.detail = std::to_string(decomposed) + " decompositions, 256 radical checks, 1000 prime-bottom pairs";
  }
  return c;
}

CriterionResult criterion_power_of_j(const PropsOptions& opt) {
  CriterionResult c{7, "power-of-j(30): unique factorization, spectrum, representation", true, {}, 0, 0};
  try {
    const auto J = power_of_j(30);
    const LatticeHandle L = J;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> e(0, 4);
    for (int i = 0; i < 100 && c.passed; ++i) {
      const auto x = L->parse(exponent_text({e(rng), e(rng), e(rng)}));
      const auto u = verify_uniqueness(*L, x, 5);
      if (!u.unique) {
        c.passed = false;
        c.detail = L->format(x) + ": " + std::to_string(u.chains.size()) + " chains " + u.engine_error;
      }
    }
    if (!c.passed) return c;
    const auto w = default_window(*L, 100, opt.seed);
    const auto spectrum = max_spectrum(L, w.sample);
    const auto reference = max_spectrum(dedekind(3));
    if (spectrum.space != Space::finite_discrete(3) || spectrum.size() != 3 || !homeomorphic(spectrum, reference)) {
      c.passed = false;
      c.detail = "spectrum is " + spectrum.space.describe() + " with " + std::to_string(spectrum.size()) + " points";
      return c;
    }
    const auto phi = build_phi(L, w);
    auto checks = verify_iso(phi, w.sample, opt.seed, opt.exec).checks;
    for (auto& v : check_valuations(phi, w.sample, opt.exec)) checks.push_back(std::move(v));
    checks.push_back(check_engine_coherence(phi, w.sample));
    if (auto f = first_failed(checks); !f.empty()) {
      c.passed = false;
      c.detail = f;
      return c;
    }
    c.detail = "100 unique factorizations; spectrum discrete with 3 points; " +
               std::to_string(checks.size()) + " representation checks";
  } catch (const std::exception& ex) {
    c.passed = false;
    c.detail = ex.what();
  }
  return c;
}

CriterionResult criterion_ideal_systems(const PropsOptions& opt) {
  CriterionResult c{8, "s-system on Z/4 and d-system on Z/12", true, {}, 0, 10};
  auto fail = [&](const std::string& why) {
    if (c.passed) c.detail = why;
    c.passed = false;
  };
  try {
    std::size_t checks = 0;
    for (const char* sel : {"s-system:zmod-mult:4", "d-system:zmod:12"}) {
      const auto r = make_builtin_system(sel);
      const auto rep = validate_system(r, opt.exec);
      if (!rep.ok()) fail(std::string(sel) + ": " + rep.first_failure()->detail);
      if (!rep.modular.passed) fail(std::string(sel) + ": not modular: " + rep.modular.detail);
      if (!(rep == validate_system(r, Exec::Serial))) fail(std::string(sel) + ": serial and parallel reports differ");
      for (const auto& b : check_bridge(r, opt.exec)) {
        ++checks;
        if (!b.passed) fail(std::string(sel) + ": " + b.name + ": " + b.witness);
      }
    }
    const auto s4 = build_ideal_lattice(make_builtin_system("s-system:zmod-mult:4"), false);
    const std::vector<std::string> expected{"{0}", "{0,2}", "{0,1,2,3}"};
    if (s4.lattice->tables().labels != expected) fail("s-ideals of Z/4 are not {0}, {0,2}, H");
    std::string why;
    const auto d12 = build_ideal_lattice(make_builtin_system("d-system:zmod:12"), false);
    if (!matches_divisor_lattice(d12, 12, &why)) fail("d-ideals of Z/12: " + why);
    if (c.passed) {
      c.detail = "axioms, modularity and " + std::to_string(checks) +
                 " bridge checks pass; d-ideals of Z/12 match the divisor lattice";
    }
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return c;
}

CriterionResult criterion_mutations(const PropsOptions& opt) {
  CriterionResult c{9, "single-entry corruptions are detected with a witness", true, {}, 0, 0};
  std::mt19937_64 rng(opt.seed);
  std::size_t detected = 0, total = 0;
  std::string missed;
  const std::vector<FiniteLatticeHandle> lattices{
      materialize_from_divisors(12), materialize_from_divisors(30), materialize_from_divisors(36),
      chain_lattice(3, true), materialize_from_divisors(8)};
  for (std::size_t i = 0; i < 10; ++i) {
    const auto m = mutate_tables(lattices[i % lattices.size()]->tables(), i % 3, rng);
    const auto rep = validate_tables(m.tables, opt.exec);
    const auto* f = rep.first_failure();
    ++total;
    if (f && !f->witness.empty()) ++detected;
    else if (missed.empty()) missed = m.tables.name + ": " + m.description;
  }
  const std::vector<WeakIdealSystem> systems{
      make_builtin_system("s-system:zmod-mult:4"), make_builtin_system("s-system:zmod-mult:6"),
      make_builtin_system("d-system:zmod:12"), make_builtin_system("d-system:zmod:8"),
      make_builtin_system("s-system:zmod-mult:9")};
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& base = systems[i % systems.size()];
    const auto m = mutate_closure(base, i % 2, rng);
    const auto rep = validate_system(WeakIdealSystem::explicit_table(base.monoid(), m.table), opt.exec);
    const auto* f = rep.first_failure();
    ++total;
    if (f && !f->witness.empty()) ++detected;
    else if (missed.empty()) missed = base.name() + ": " + m.description;
  }
  c.passed = detected == total && total == 20;
  c.detail = std::to_string(detected) + "/" + std::to_string(total) + " detected";
  if (!missed.empty()) c.detail += "; missed " + missed;
  return c;
}

// ---- module suites ---------------------------------------------------------------------------

const std::vector<std::string> kInstances{"zmod:12",    "zmod:360",          "chain:4",
                                          "nilchain:3", "dedekind:3",        "dedekind:unbounded",
                                          "rank2",      "numerical:2,3",     "numerical:3,5",
                                          "power-of-j:30"};

SuiteResult suite_lattice_core(const PropsOptions& opt) {
  SuiteResult s{"lattice-core", {}, 0};
  for (const auto& sel : kInstances) {
    const auto L = make_builtin(sel);
    const auto w = default_window(*L, 80, opt.seed);
    SuiteOptions so;
    so.inner = 30;
    so.exec = opt.exec;
    for (auto& c : run_core_suite(*L, w, so)) {
      c.name = sel + ": " + c.name;
      s.checks.push_back(std::move(c));
    }
    for (auto& c : check_axioms_on_window(*L, w)) {
      c.name = sel + ": " + c.name;
      s.checks.push_back(std::move(c));
    }
  }
  return s;
}

SuiteResult suite_finite_lattice(const PropsOptions&) {
  SuiteResult s{"finite-lattice", {}, 0};
  for (std::int64_t n : {8, 12, 30, 36, 360, 720}) {
    const auto L = materialize_from_divisors(n);
    const std::string name = "zmod:" + std::to_string(n);
    s.checks.push_back(make_check(name + ": serial and parallel validation agree", 1,
                                  validate_tables(L->tables(), Exec::Serial) ==
                                          validate_tables(L->tables(), Exec::Parallel)
                                      ? std::nullopt
                                      : std::optional<std::string>("reports differ")));
    s.checks.push_back(make_check(name + ": serial and parallel predicates agree", L->size(),
                                  all_predicates(*L, Exec::Serial) == all_predicates(*L, Exec::Parallel)
                                      ? std::nullopt
                                      : std::optional<std::string>("predicates differ")));
    const auto again = FiniteMultLattice::load(L->save());
    s.checks.push_back(make_check(name + ": save and load round trip", 1,
                                  again->tables() == L->tables()
                                      ? std::nullopt
                                      : std::optional<std::string>("tables differ after reload")));
    std::optional<std::string> bad;
    for (std::size_t i = 0; i < L->size() && !bad; ++i) {
      const auto di = std::stoll(L->tables().labels[i]);
      for (std::size_t j = 0; j < L->size() && !bad; ++j) {
        const auto dj = std::stoll(L->tables().labels[j]);
        const auto expect = std::to_string(std::gcd(std::lcm(di, dj), n));
        if (L->tables().labels[L->meet_i(i, j)] != expect) bad = "meet of " + L->tables().labels[i] + ", " + L->tables().labels[j];
        if (L->tables().labels[L->join_i(i, j)] != std::to_string(std::gcd(di, dj))) bad = "join of " + L->tables().labels[i] + ", " + L->tables().labels[j];
      }
    }
    s.checks.push_back(make_check(name + ": meet is lcm and join is gcd", L->size() * L->size(), bad));
  }
  for (std::size_t k : {2, 3, 5}) {
    for (bool nil : {false, true}) {
      const auto C = chain_lattice(k, nil);
      s.checks.push_back(make_check(C->name() + ": validates", 1,
                                    C->validation().ok() ? std::nullopt
                                                         : std::optional<std::string>(C->validation().first_failure()->detail)));
    }
  }
  return s;
}

SuiteResult suite_factorization(const PropsOptions& opt) {
  SuiteResult s{"factorization", {}, 0};
  for (const char* sel : {"zmod:360", "dedekind:3", "dedekind:unbounded", "power-of-j:30", "nilchain:3"}) {
    const auto L = make_builtin(sel);
    const auto w = default_window(*L, 80, opt.seed);
    std::optional<std::string> bad;
    std::size_t n = 0;
    for (const auto& x : w.sample) {
      if (bad) break;
      if (L->is_top(x)) continue;
      try {
        const auto ch = radical_factor(*L, x);
        ++n;
        if (auto p = chain_problem(*L, x, ch, {})) bad = L->format(x) + ": " + *p;
        if (!L->is_bottom(x)) {
          const auto canon = canonical_chain(*L, x);
          if (canon.factors != ch.factors) bad = L->format(x) + ": canonical chain differs";
        }
      } catch (const std::exception& e) {
        bad = L->format(x) + ": " + e.what();
      }
    }
    s.checks.push_back(make_check(std::string(sel) + ": window elements factor into ascending radicals", n, bad));
  }
  auto expect_error = [&](const char* sel, const char* element) {
    const auto L = make_builtin(sel);
    std::optional<std::string> bad = std::string("factored without error");
    try {
      radical_factor(*L, L->parse(element));
    } catch (const FactorError& e) {
      if (e.kind() == ErrorKind::StepFailed || e.kind() == ErrorKind::Stalled) bad.reset();
      else bad = e.what();
    }
    s.checks.push_back(make_check(std::string(sel) + ": " + element + " has no radical factorization", 1, bad));
  };
  expect_error("numerical:2,3", "3+H");
  expect_error("rank2", "Principal(1,0)");
  {
    const auto L = make_builtin("numerical:2,3");
    const auto d = decide_product_of_radicals(*L, L->parse("3+H"));
    s.checks.push_back(make_check("numerical:2,3: 3+H is not a product of radicals", 1,
                                  d.value == false ? std::nullopt : std::optional<std::string>(d.method)));
  }
  return s;
}

SuiteResult suite_usc(const PropsOptions& opt) {
  SuiteResult s{"usc", {}, 0};
  std::mt19937_64 rng(opt.seed + 7);
  for (const Space& space : {Space::finite_discrete(5), Space::countable_discrete(), Space::one_point()}) {
    std::optional<std::string> bad;
    for (int i = 0; i < 300 && !bad; ++i) {
      const auto f = random_usc(space, rng), g = random_usc(space, rng), h = random_usc(space, rng);
      if (add(f, g) != add(g, f)) bad = "sum not commutative";
      else if (add(add(f, g), h) != add(f, add(g, h))) bad = "sum not associative";
      else if (add(f, join_d(g, h)) != join_d(add(f, g), add(f, h))) bad = "sum does not distribute over joins";
      else if (join_d(f, meet_d(f, g)) != f) bad = "absorption fails";
      else if (leq_d(f, g) != (join_d(f, g) == g)) bad = "order and join disagree";
      else if (add(f, USCFun::zero(space)) != f) bad = "zero is not the identity";
      else if (!add(f, USCFun::bottom(space)).is_bottom()) bad = "b does not annihilate";
      if (bad) *bad += " at " + f.describe() + ", " + g.describe();
    }
    s.checks.push_back(make_check(space.describe() + ": lattice-ordered monoid laws", 300, bad));
    bool threw = false;
    try {
      is_radical(USCFun::bottom(space));
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::BottomElement;
    }
    s.checks.push_back(make_check(space.describe() + ": is_radical rejects b", 1,
                                  threw ? std::nullopt : std::optional<std::string>("no BottomElement")));
  }
  bool mismatch = false;
  try {
    add(USCFun::zero(Space::finite_discrete(2)), USCFun::zero(Space::finite_discrete(3)));
  } catch (const Error& e) {
    mismatch = e.kind() == ErrorKind::SpaceMismatch;
  }
  s.checks.push_back(make_check("different spaces are rejected", 1,
                                mismatch ? std::nullopt : std::optional<std::string>("no SpaceMismatch")));
  return s;
}

SuiteResult suite_representation(const PropsOptions& opt) {
  SuiteResult s{"representation", {}, 0};
  std::vector<Phi> phis;
  for (const char* sel : {"dedekind:3", "power-of-j:30", "dedekind:unbounded"}) {
    const auto L = make_builtin(sel);
    const auto w = default_window(*L, 60, opt.seed);
    try {
      const auto phi = build_phi(L, w);
      auto checks = verify_iso(phi, w.sample, opt.seed, opt.exec).checks;
      for (auto& v : check_valuations(phi, w.sample, opt.exec)) checks.push_back(std::move(v));
      checks.push_back(check_engine_coherence(phi, w.sample));
      for (auto& c : checks) {
        c.name = std::string(sel) + ": " + c.name;
        s.checks.push_back(std::move(c));
      }
      if (phi.spectrum().finite()) {
        const auto sep = hausdorff_witnesses(phi.spectrum(), w.sample);
        s.checks.push_back(make_check(std::string(sel) + ": maximal points are separated", phi.spectrum().size(),
                                      sep ? std::nullopt : std::optional<std::string>("a pair has no witness")));
        phis.push_back(phi);
      }
    } catch (const std::exception& e) {
      s.checks.push_back(make_check(std::string(sel) + ": phi builds", 0, e.what()));
    }
  }
  if (phis.size() == 2) {
    const auto w = default_window(phis[0].lattice(), 40, opt.seed);
    auto c = check_composed_iso(phis[0], phis[1], w.sample);
    c.name = "dedekind:3 to power-of-j:30: " + c.name;
    s.checks.push_back(std::move(c));
  }
  for (const char* sel : {"rank2", "zmod:12"}) {
    const auto L = make_builtin(sel);
    std::optional<std::string> bad = std::string("phi was built");
    try {
      build_phi(L, default_window(*L, 40, opt.seed));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::HypothesisViolated) bad.reset();
      else bad = e.what();
    }
    s.checks.push_back(make_check(std::string(sel) + ": hypotheses rejected", 1, bad));
  }
  return s;
}

SuiteResult suite_instances(const PropsOptions& opt) {
  SuiteResult s{"instances", {}, 0};
  for (const auto& sel : kInstances) {
    const auto L = make_builtin(sel);
    const auto w = default_window(*L, 80, opt.seed);
    std::optional<std::string> bad;
    for (const auto& x : w.sample) {
      if (L->parse(L->format(x)) != x) {
        bad = "'" + L->format(x) + "' does not parse back";
        break;
      }
    }
    s.checks.push_back(make_check(sel + ": format and parse round trip", w.sample.size(), bad));
  }
  for (const char* sel : {"zmod:1", "dedekind:0", "numerical:2,4", "power-of-j:12", "bogus", "chain:1"}) {
    std::optional<std::string> bad = std::string("accepted");
    try {
      make_builtin(sel);
    } catch (const Error&) {
      bad.reset();
    }
    s.checks.push_back(make_check(std::string("selector ") + sel + " is rejected", 1, bad));
  }
  {
    const auto N = make_builtin("numerical:2,3");
    const auto M = N->parse("M");
    std::optional<std::string> bad;
    if (N->mul(M, M) != N->parse("M^2")) bad = "M * M != M^2";
    else if (N->radical(N->parse("3+H")) != M) bad = "rad(3+H) != M";
    s.checks.push_back(make_check("numerical:2,3: ideal arithmetic", 2, bad));
  }
  {
    const auto R = make_builtin("rank2");
    const auto p = R->parse("Principal(1,0)");
    std::optional<std::string> bad;
    if (R->radical(p) != R->parse("Limit(0)")) bad = "rad Principal(1,0) != Limit(0)";
    s.checks.push_back(make_check("rank2: radical of Principal(1,0)", 1, bad));
  }
  return s;
}

SuiteResult suite_ideal_systems(const PropsOptions& opt) {
  SuiteResult s{"ideal-systems", {}, 0};
  for (std::size_t n = 2; n <= 12; ++n) {
    for (bool ring : {false, true}) {
      const std::string sel = ring ? "d-system:zmod:" + std::to_string(n)
                                   : "s-system:zmod-mult:" + std::to_string(n);
      const auto r = make_builtin_system(sel);
      const auto rep = validate_system(r, opt.exec);
      s.checks.push_back(make_check(sel + ": axioms and ideal-system equality", 1,
                                    rep.ok() && rep.ideal_system.passed
                                        ? std::nullopt
                                        : std::optional<std::string>(rep.ok() ? rep.ideal_system.detail
                                                                              : rep.first_failure()->detail)));
      s.checks.push_back(make_check(sel + ": serial and parallel validation agree", 1,
                                    rep == validate_system(r, Exec::Serial)
                                        ? std::nullopt
                                        : std::optional<std::string>("reports differ")));
      for (auto& b : check_bridge(r, opt.exec)) {
        b.name = sel + ": " + b.name;
        s.checks.push_back(std::move(b));
      }
      if (ring) {
        std::string why;
        const bool same = matches_divisor_lattice(build_ideal_lattice(r, false), static_cast<std::int64_t>(n), &why);
        s.checks.push_back(make_check(sel + ": d-ideals match the divisor lattice", 1,
                                      same ? std::nullopt : std::optional<std::string>(why)));
      }
    }
  }
  {
    // Z/p under multiplication: the regular part is the two-element domain.
    const auto r = make_builtin_system("s-system:zmod-mult:5");
    const auto reg = build_ideal_lattice(r, true);
    const auto rep = check_sp_conditions(reg.lattice, Flavor::Monoid);
    s.checks.push_back(make_check("s-system:zmod-mult:5: conditions agree on the regular part", 1,
                                  rep.agreement && rep.all_hold() ? std::nullopt
                                                                  : std::optional<std::string>("no agreement")));
  }
  {
    // H = {1, 0}: every ideal contains 0 = z(H); the carrier of the regular part is {z(H), H}.
    const auto r = WeakIdealSystem::s(FiniteMonoid("two", {"1", "0"}, {{0, 1}, {1, 1}}));
    const auto reg = build_ideal_lattice(r, true);
    s.checks.push_back(make_check("two-element monoid: regular part has two elements", 1,
                                  reg.ideals.size() == 2 ? std::nullopt : std::optional<std::string>("wrong size")));
  }
  {
    bool too_large = false;
    try {
      validate_system(make_builtin_system("s-system:zmod-mult:13"));
    } catch (const Error& e) {
      too_large = e.kind() == ErrorKind::TooLarge;
    }
    s.checks.push_back(make_check("13 elements exceed the enumeration limit", 1,
                                  too_large ? std::nullopt : std::optional<std::string>("no TooLarge")));
    const auto ideals = r_ideals(make_builtin_system("d-system:zmod:30"));
    s.checks.push_back(make_check("d-system:zmod:30: ideals from principal closures", 1,
                                  ideals.size() == 8 ? std::nullopt
                                                     : std::optional<std::string>(std::to_string(ideals.size()) + " ideals")));
  }
  return s;
}

SuiteResult suite_sp(const PropsOptions& opt) {
  SuiteResult s{"sp-conditions", {}, 0};
  struct Case {
    const char* sel;
    Flavor flavor;
    bool expect;
  };
  const Case cases[] = {{"dedekind:1", Flavor::Domain, true},       {"dedekind:2", Flavor::Domain, true},
                        {"dedekind:3", Flavor::Lattice, true},      {"dedekind:unbounded", Flavor::Domain, true},
                        {"power-of-j:30", Flavor::Lattice, true},   {"rank2", Flavor::Lattice, false},
                        {"rank2", Flavor::Monoid, false},           {"numerical:2,3", Flavor::Monoid, false},
                        {"numerical:3,5", Flavor::Monoid, false}};
  for (const auto& c : cases) {
    const std::string name = std::string(c.sel) + " (" + to_string(c.flavor) + ")";
    try {
      SpOptions so;
      so.seed = opt.seed;
      so.exec = opt.exec;
      const auto rep = check_sp_conditions(make_builtin(c.sel), c.flavor, so);
      const bool ok = rep.agreement && (c.expect ? rep.all_hold() : rep.all_fail());
      s.checks.push_back(make_check(name + ": conditions agree", rep.conditions.size(),
                                    ok ? std::nullopt : std::optional<std::string>("verdicts disagree")));
    } catch (const std::exception& e) {
      s.checks.push_back(make_check(name + ": conditions agree", 0, e.what()));
    }
  }
  for (const char* sel : {"zmod:12", "chain:3"}) {
    std::optional<std::string> bad = std::string("evaluated");
    try {
      check_sp_conditions(make_builtin(sel), Flavor::Lattice);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::HypothesisViolated) bad.reset();
    }
    s.checks.push_back(make_check(std::string(sel) + ": hypotheses rejected", 1, bad));
  }
  return s;
}

SuiteResult suite_cli(const PropsOptions&) {
  SuiteResult s{"cli", {}, 0};
  struct Case {
    std::vector<std::string> args;
    int code;
    std::string expect;  // substring of the JSON output
  };
  const std::vector<Case> cases{
      {{"validate", "--builtin", "zmod:12"}, 0, {}},
      {{"validate", "--builtin", "s-system:zmod-mult:4"}, 0, {}},
      {{"validate", "--builtin", "dedekind:3"}, 0, {}},
      {{"factor", "--builtin", "dedekind:3", "--element", "2:2,3:1"}, 0, "[\"2:1,3:1\",\"2:1\"]"},
      {{"factor", "--builtin", "zmod:12", "--element", "4"}, 0, "[\"2\",\"2\"]"},
      {{"factor", "--builtin", "numerical:2,3", "--element", "ideal:3+H"}, 1, {}},
      {{"factor", "--builtin", "zmod:12", "--element", "5"}, 2, {}},
      {{"check-sp", "--builtin", "dedekind:3"}, 0, {}},
      {{"check-sp", "--builtin", "rank2"}, 0, {}},
      {{"check-sp", "--builtin", "numerical:2,3", "--flavor", "monoid-8.5"}, 0, {}},
      {{"represent", "--builtin", "power-of-j:30"}, 0, "\"points\":3"},
      {{"represent", "--builtin", "rank2"}, 1, "dimension 2"},
      {{"validate", "--builtin", "nonsense"}, 2, {}},
      {{"validate"}, 2, {}},
  };
  for (const auto& c : cases) {
    auto args = c.args;
    args.push_back("--json");
    const auto r = cli(args);
    std::string label;
    for (const auto& a : c.args) label += (label.empty() ? "" : " ") + a;
    std::optional<std::string> bad;
    if (r.code != c.code) bad = "exit " + std::to_string(r.code) + ", expected " + std::to_string(c.code) + " " + r.err;
    const std::string compact = r.json.is_discarded() ? r.out : r.json.dump();
    if (!bad && !c.expect.empty() && compact.find(c.expect) == std::string::npos) bad = "output lacks " + c.expect;
    if (!bad && c.code != 2) {
      if (r.json.is_discarded()) bad = "output is not JSON";
      else if (auto p = check_report_schema(r.json); !p.empty()) bad = "schema: " + p.front();
    }
    s.checks.push_back(make_check(label, 1, bad));
  }
  const std::vector<std::string> args{"check-sp", "--builtin", "dedekind:unbounded", "--seed", "5", "--json"};
  const auto a = cli(args), b = cli(args);
  s.checks.push_back(make_check("same config and seed give identical bytes", 1,
                                a.out == b.out ? std::nullopt : std::optional<std::string>("reports differ")));
  return s;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CriterionResult run_criterion(int number, const PropsOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult c;
  switch (number) {
    case 1: c = criterion_axioms(opt); break;
    case 2: c = criterion_engine(opt); break;
    case 3: c = criterion_sp_agreement(opt); break;
    case 4: c = criterion_uniqueness(opt); break;
    case 5: c = criterion_phi(opt); break;
    case 6: c = criterion_usc(opt); break;
    case 7: c = criterion_power_of_j(opt); break;
    case 8: c = criterion_ideal_systems(opt); break;
    case 9: c = criterion_mutations(opt); break;
    default: throw Error(ErrorKind::InvalidArgument, "no criterion " + std::to_string(number));
  }
  c.seconds = since(t0);
  if (c.limit > 0 && c.seconds >= c.limit) {
    c.passed = false;
    c.detail += "; took " + std::to_string(c.seconds) + " s, limit " + std::to_string(c.limit) + " s";
  }
  return c;
}

std::vector<CriterionResult> run_acceptance(const PropsOptions& opt) {
  std::vector<CriterionResult> out;
  for (int k = 1; k <= kCriterionCount; ++k) out.push_back(run_criterion(k, opt));
  return out;
}

std::vector<SuiteResult> run_module_suites(const PropsOptions& opt) {
  using SuiteFn = SuiteResult (*)(const PropsOptions&);
  const SuiteFn fns[] = {suite_lattice_core, suite_finite_lattice, suite_factorization,
                         suite_usc,          suite_representation, suite_instances,
                         suite_ideal_systems, suite_sp,            suite_cli};
  std::vector<SuiteResult> out;
  for (auto fn : fns) {
    const auto t0 = Clock::now();
    SuiteResult r;
    try {
      r = fn(opt);
    } catch (const std::exception& e) {
      r.checks.push_back(make_check("suite ran to completion", 0, e.what()));
    }
    r.seconds = since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> check_axioms_on_window(const Lattice& l, const TestWindow& window,
                                                std::size_t inner) {
  const auto d = window.head(inner);
  const std::size_t n = d.size();
  std::vector<CheckResult> out;
  auto pairs = [&](std::string name, auto pred) {
    auto f = first_failure(n * n, [&](std::size_t k) -> std::optional<std::string> {
      const auto& a = d[k / n];
      const auto& b = d[k % n];
      if (!pred(a, b)) return show(l, {a, b});
      return std::nullopt;
    });
    out.push_back(make_check(std::move(name), n * n, f ? std::optional<std::string>(f->second) : std::nullopt));
  };
  auto triples = [&](std::string name, auto pred) {
    auto f = first_failure(n * n * n, [&](std::size_t k) -> std::optional<std::string> {
      const auto& a = d[k / (n * n)];
      const auto& b = d[(k / n) % n];
      const auto& c = d[k % n];
      if (!pred(a, b, c)) return show(l, {a, b, c});
      return std::nullopt;
    });
    out.push_back(make_check(std::move(name), n * n * n, f ? std::optional<std::string>(f->second) : std::nullopt));
  };
  const ElemRef top = l.top(), bottom = l.bottom();
  pairs("mul commutative", [&](const ElemRef& a, const ElemRef& b) { return l.mul(a, b) == l.mul(b, a); });
  pairs("top is identity and bounds", [&](const ElemRef& a, const ElemRef&) {
    return l.mul(top, a) == a && l.leq(a, top) && l.leq(bottom, a);
  });
  pairs("join and meet are bounds", [&](const ElemRef& a, const ElemRef& b) {
    const auto j = l.join(a, b), m = l.meet(a, b);
    return l.leq(a, j) && l.leq(b, j) && l.leq(m, a) && l.leq(m, b) && l.join(a, m) == a;
  });
  pairs("order antisymmetric", [&](const ElemRef& a, const ElemRef& b) {
    return !(l.leq(a, b) && l.leq(b, a)) || a == b;
  });
  pairs("product below both factors", [&](const ElemRef& a, const ElemRef& b) {
    return l.leq(l.mul(a, b), l.meet(a, b));
  });
  triples("mul associative", [&](const ElemRef& a, const ElemRef& b, const ElemRef& c) {
    return l.mul(l.mul(a, b), c) == l.mul(a, l.mul(b, c));
  });
  triples("mul distributes over join", [&](const ElemRef& a, const ElemRef& b, const ElemRef& c) {
    return l.mul(a, l.join(b, c)) == l.join(l.mul(a, b), l.mul(a, c));
  });
  triples("join is least upper bound", [&](const ElemRef& a, const ElemRef& b, const ElemRef& c) {
    return !(l.leq(a, c) && l.leq(b, c)) || l.leq(l.join(a, b), c);
  });
  triples("meet is greatest lower bound", [&](const ElemRef& a, const ElemRef& b, const ElemRef& c) {
    return !(l.leq(c, a) && l.leq(c, b)) || l.leq(c, l.meet(a, b));
  });
  return out;
}

TableMutation mutate_tables(const LatticeTables& valid, std::size_t kind, std::mt19937_64& rng) {
  const std::size_t n = valid.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "mutations need at least two elements");
  TableMutation m{valid, {}};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  switch (kind % 3) {
    case 0: {
      std::size_t i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      std::size_t v = pick(rng);
      while (static_cast<int>(v) == valid.mul[i][j]) v = pick(rng);
      m.tables.mul[i][j] = static_cast<int>(v);
      m.description = "mul[" + valid.labels[i] + "][" + valid.labels[j] + "] set to " + valid.labels[v];
      break;
    }
    case 1: {
      std::vector<std::pair<std::size_t, std::size_t>> strict;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && valid.leq[i][j]) strict.emplace_back(i, j);
        }
      }
      const auto [i, j] = strict[std::uniform_int_distribution<std::size_t>(0, strict.size() - 1)(rng)];
      m.tables.leq[j][i] = 1;
      m.description = "leq[" + valid.labels[j] + "][" + valid.labels[i] + "] set to 1";
      break;
    }
    default: {
      const std::size_t i = pick(rng);
      m.tables.leq[i][i] = 0;
      m.description = "leq[" + valid.labels[i] + "][" + valid.labels[i] + "] cleared";
      break;
    }
  }
  return m;
}

ClosureMutation mutate_closure(const WeakIdealSystem& valid, std::size_t kind, std::mt19937_64& rng) {
  const auto& h = valid.monoid();
  ClosureMutation m{valid.materialize(), {}};
  const std::size_t subsets = m.table.size();
  std::uniform_int_distribution<std::size_t> pick_set(1, subsets - 1);
  auto random_bit = [&](Subset s) {
    std::vector<std::size_t> bits;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (s >> i & 1) bits.push_back(i);
    }
    return bits[std::uniform_int_distribution<std::size_t>(0, bits.size() - 1)(rng)];
  };
  if (kind % 2 == 0) {
    const std::size_t x = pick_set(rng);
    const std::size_t e = random_bit(x);
    m.table[x] &= ~(Subset{1} << e);
    m.description = "dropped " + h.labels()[e] + " from the closure of " + h.format(x);
  } else {
    std::size_t x = pick_set(rng);
    for (int tries = 0; m.table[x] == x || m.table[x] == h.all(); ++tries) {
      if (tries > 100000) throw Error(ErrorKind::InvalidArgument, valid.name() + " has no proper non-closed subset");
      x = std::uniform_int_distribution<std::size_t>(0, subsets - 1)(rng);
    }
    const std::size_t e = random_bit(h.all() & ~m.table[x]);
    m.table[x] |= Subset{1} << e;
    m.description = "added " + h.labels()[e] + " to the closure of " + h.format(x);
  }
  return m;
}

bool matches_divisor_lattice(const IdealLattice& il, std::int64_t n, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const auto D = materialize_from_divisors(n);
  const auto& L = *il.lattice;
  if (L.size() != D->size()) {
    return fail(std::to_string(L.size()) + " ideals vs " + std::to_string(D->size()) + " divisors");
  }
  std::vector<std::size_t> map(L.size());
  std::vector<char> hit(D->size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    std::int64_t g = n;
    for (std::size_t e = 0; e < 64; ++e) {
      if (il.ideals[i] >> e & 1) g = std::gcd(g, static_cast<std::int64_t>(e));
    }
    const auto idx = D->find_label(std::to_string(g));
    if (!idx || hit[*idx]) return fail("ideal " + L.tables().labels[i] + " has no fresh divisor");
    hit[*idx] = 1;
    map[i] = *idx;
  }
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < L.size(); ++j) {
      if (L.leq_i(i, j) != D->leq_i(map[i], map[j])) {
        return fail("order differs at " + L.tables().labels[i] + ", " + L.tables().labels[j]);
      }
      if (map[L.mul_i(i, j)] != D->mul_i(map[i], map[j])) {
        return fail("product differs at " + L.tables().labels[i] + ", " + L.tables().labels[j]);
      }
    }
  }
  return true;
}

}  // namespace radfact
