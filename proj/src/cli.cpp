#include "radfact/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "radfact/core.hpp"
#include "radfact/factorization.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/ideal_systems.hpp"
#include "radfact/instances.hpp"
#include "radfact/report.hpp"
#include "radfact/representation.hpp"
#include "radfact/sp_conditions.hpp"
#include "radfact/suites.hpp"

namespace radfact {

namespace {

struct Options {
  std::string builtin;
  std::string file;
  std::string element;
  std::string flavor;
  std::string format = "text";
  bool json = false;
  bool timing = false;
  bool serial = false;
  std::uint64_t seed = 1;
  std::size_t window = 0;  // 0: the command's default
  unsigned max_steps = kDefaultMaxSteps;
};

struct Outcome {
  Report report;
  int code = kExitOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A lattice, or the monoid system it was built from.
struct Source {
  LatticeHandle lattice;
  std::optional<WeakIdealSystem> system;
  std::optional<LatticeTables> tables;  // documents and finite builtins
  std::string label;
};

Source load_source(const Options& o, bool need_lattice) {
  if (o.builtin.empty() == o.file.empty()) {
    throw Error(ErrorKind::ParseError, "give exactly one of --builtin or --file");
  }
  Source s;
  if (!o.builtin.empty()) {
    s.label = o.builtin;
    if (is_system_selector(o.builtin)) {
      s.system = make_builtin_system(o.builtin);
    } else {
      s.lattice = make_builtin(o.builtin);
      if (auto f = std::dynamic_pointer_cast<const FiniteMultLattice>(s.lattice)) s.tables = f->tables();
      return s;
    }
  } else {
    s.label = o.file;
    const auto text = read_file(o.file);
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorKind::ParseError, o.file + " is not valid JSON");
    if (is_monoid_document(doc)) {
      s.system = parse_system_document(doc);
    } else {
      s.tables = parse_tables(doc);
      if (need_lattice) s.lattice = FiniteMultLattice::from_tables(*s.tables, o.file);
      return s;
    }
  }
  if (need_lattice) s.lattice = build_ideal_lattice(*s.system, false).lattice;
  return s;
}

nlohmann::json base_config(const Options& o) {
  nlohmann::json c = nlohmann::json::object();
  if (!o.builtin.empty()) c["builtin"] = o.builtin;
  if (!o.file.empty()) c["file"] = o.file;
  c["seed"] = o.seed;
  return c;
}

Exec exec_of(const Options& o) { return o.serial ? Exec::Serial : Exec::Parallel; }

void add_checks(Report& r, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    nlohmann::json detail = "checked " + std::to_string(c.checked);
    if (!c.passed) {
      detail = c.witness;
      r.witness({{"check", c.name}, {"witness", c.witness}});
    }
    r.verdict(c.name, c.passed, detail);
  }
}

void add_axioms(Report& r, const std::vector<AxiomResult>& axioms, const std::string& prefix = {}) {
  for (const auto& a : axioms) {
    r.verdict(prefix + a.axiom, a.passed, a.passed ? nlohmann::json(nullptr) : nlohmann::json(a.detail));
    if (!a.passed && !a.skipped) r.witness({{"axiom", prefix + a.axiom}, {"indices", a.witness}, {"detail", a.detail}});
  }
}

// ---- commands --------------------------------------------------------------------------------

Outcome cmd_validate(const Options& o) {
  Outcome out{Report("validate", base_config(o))};
  auto& r = out.report;
  Source s = load_source(o, false);
  if (s.system) {
    const auto mon = s.system->monoid().validate();
    add_axioms(r, mon.axioms, "monoid ");
    if (!mon.ok()) {
      out.code = kExitFailure;
      return out;
    }
    const auto rep = validate_system(*s.system, exec_of(o));
    add_axioms(r, rep.axioms, "axiom ");
    r.attach("system", system_report_to_json(*s.system, rep));
    out.code = rep.ok() ? kExitOk : kExitFailure;
    return out;
  }
  if (s.tables) {
    const auto rep = validate_tables(*s.tables, exec_of(o));
    add_axioms(r, rep.axioms);
    r.attach("modular", rep.modular.passed);
    r.attach("domain", rep.domain.passed);
    r.attach("elements", s.tables->size());
    if (!rep.order_ok()) out.code = kExitParse;
    else if (!rep.ok()) out.code = kExitFailure;
    return out;
  }
  // Infinite backends: sampled axioms plus the property suite on a window.
  const std::size_t budget = o.window ? o.window : 80;
  r = Report("validate", [&] {
    auto c = base_config(o);
    c["window"] = budget;
    return c;
  }());
  const auto w = default_window(*s.lattice, budget, o.seed);
  SuiteOptions so;
  so.inner = 30;
  so.exec = exec_of(o);
  add_checks(r, check_axioms_on_window(*s.lattice, w));
  add_checks(r, run_core_suite(*s.lattice, w, so));
  r.attach("window", w.note);
  out.code = r.passed() ? kExitOk : kExitFailure;
  return out;
}

Outcome cmd_factor(const Options& o) {
  auto config = base_config(o);
  config["element"] = o.element;
  config["max_steps"] = o.max_steps;
  Outcome out{Report("factor", config)};
  auto& r = out.report;
  const Source s = load_source(o, true);
  const Lattice& L = *s.lattice;
  if (o.element.empty()) throw Error(ErrorKind::ParseError, "factor needs --element");
  const ElemRef x = L.parse(o.element);
  try {
    const auto chain = radical_factor(L, x, o.max_steps);
    r.verdict("radical factorization", true, format_list(L, chain.factors));
    r.verdict("product check", chain.product_check);
    bool radicals = true, ascending = true;
    for (std::size_t i = 0; i < chain.factors.size(); ++i) {
      radicals = radicals && L.radical(chain.factors[i]) == chain.factors[i];
      if (i + 1 < chain.factors.size()) ascending = ascending && L.leq(chain.factors[i], chain.factors[i + 1]);
    }
    r.verdict("factors are radical", radicals);
    r.verdict("chain ascending", ascending);
    nlohmann::json names = nlohmann::json::array();
    for (const auto& f : chain.factors) names.push_back(L.format(f));
    r.attach("factors", names);
    r.attach("chain", chain_to_json(L, chain));
    out.code = r.passed() ? kExitOk : kExitFailure;
  } catch (const FactorError& e) {
    r.verdict("radical factorization", false, e.what());
    nlohmann::json partial = nlohmann::json::array();
    for (const auto& f : e.partial()) partial.push_back(L.format(f));
    r.witness({{"error", std::string(to_string(e.kind()))},
               {"step", e.step()},
               {"at", L.format(e.at())},
               {"radical", L.format(e.radical())},
               {"quotient", L.format(e.quotient())},
               {"partial", partial}});
    out.code = kExitFailure;
  }
  return out;
}

Flavor default_flavor(const Lattice& l) {
  switch (l.origin()) {
    case Origin::MonoidIdeals: return Flavor::Monoid;
    case Origin::RingIdeals: return Flavor::Domain;
    case Origin::Abstract: break;
  }
  return Flavor::Lattice;
}

Outcome cmd_check_sp(const Options& o) {
  const Source s = load_source(o, true);
  LatticeHandle lattice = s.lattice;
  // Monoid systems are judged on their regular part, as for rings.
  if (s.system) lattice = build_ideal_lattice(*s.system, true).lattice;
  const Flavor flavor = o.flavor.empty() ? default_flavor(*lattice) : parse_flavor(o.flavor);
  SpOptions so;
  so.seed = o.seed;
  so.max_steps = o.max_steps;
  so.exec = exec_of(o);
  if (o.window) so.window = o.window;
  auto config = base_config(o);
  config["flavor"] = o.flavor.empty() ? to_string(flavor) : o.flavor;
  config["window"] = so.window;
  config["max_steps"] = o.max_steps;
  Outcome out{Report("check-sp", config)};
  auto& r = out.report;
  try {
    const auto rep = check_sp_conditions(lattice, flavor, so);
    r.verdict("agreement", rep.agreement,
              rep.all_hold() ? "every condition holds" : rep.all_fail() ? "every condition fails" : "mixed or inconclusive");
    for (const auto& c : rep.conditions) {
      nlohmann::json w = nlohmann::json::array();
      for (const auto& e : c.witness) w.push_back(lattice->format(e));
      r.witness({{"condition", "(" + std::to_string(c.number) + ") " + c.id},
                 {"verdict", to_string(c.verdict)},
                 {"witness", w},
                 {"detail", c.detail}});
    }
    r.attach("conditions", condition_report_to_json(*lattice, rep));
    out.code = rep.agreement ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisViolated) throw;
    r.verdict("hypotheses", false, e.what());
    out.code = kExitFailure;
  }
  return out;
}

Outcome cmd_represent(const Options& o) {
  const Source s = load_source(o, true);
  const std::size_t budget = o.window ? o.window : 100;
  auto config = base_config(o);
  config["window"] = budget;
  Outcome out{Report("represent", config)};
  auto& r = out.report;
  const auto w = default_window(*s.lattice, budget, o.seed);
  try {
    const auto phi = build_phi(s.lattice, w);
    r.verdict("hypotheses", true, w.note);
    auto checks = verify_iso(phi, w.sample, o.seed, exec_of(o)).checks;
    for (auto& c : check_valuations(phi, w.sample, exec_of(o))) checks.push_back(std::move(c));
    checks.push_back(check_engine_coherence(phi, w.sample));
    add_checks(r, checks);
    r.attach("spectrum", spectrum_to_json(phi.spectrum()));
    nlohmann::json alphas = nlohmann::json::array();
    for (const auto& x : w.head(10)) {
      alphas.push_back({{"element", s.lattice->format(x)}, {"alpha", phi(x).to_json()}});
    }
    r.attach("alpha", alphas);
    out.code = r.passed() ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisViolated) throw;
    r.verdict("hypotheses", false, e.what());
    r.witness(e.what());
    out.code = kExitFailure;
  }
  return out;
}

Outcome cmd_props(const Options& o) {
  Outcome out{Report("props", base_config(o))};
  auto& r = out.report;
  PropsOptions po;
  po.seed = o.seed;
  po.exec = exec_of(o);
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& suite : run_module_suites(po)) {
    std::size_t failed = 0;
    for (const auto& c : suite.checks) {
      if (c.passed) continue;
      if (failed++ == 0) r.witness({{"suite", suite.name}, {"check", c.name}, {"witness", c.witness}});
    }
    r.verdict("suite " + suite.name, failed == 0,
              std::to_string(suite.checks.size() - failed) + "/" + std::to_string(suite.checks.size()) + " checks");
    timing["suite " + suite.name] = suite.seconds;
  }
  for (const auto& c : run_acceptance(po)) {
    r.verdict("criterion " + std::to_string(c.number) + ": " + c.title, c.passed, c.detail);
    timing["criterion " + std::to_string(c.number)] = c.seconds;
  }
  if (o.timing) r.set_timing(timing);
  out.code = r.passed() ? kExitOk : kExitFailure;
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radical factorization in multiplicative lattices"};
  app.require_subcommand(1);
  Options o;
  auto source = [&](CLI::App* cmd) {
    cmd->add_option("--builtin", o.builtin, "builtin instance, e.g. zmod:12, dedekind:3, s-system:zmod-mult:4");
    cmd->add_option("--file", o.file, "lattice table or monoid document (JSON)");
  };
  auto common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", o.json, "print the JSON report");
    cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--timing", o.timing, "record wall-clock time in the report");
    cmd->add_flag("--serial", o.serial, "run the serial kernels");
    cmd->add_option("--seed", o.seed, "seed for sampled windows");
    cmd->add_option("--window", o.window, "window size for infinite backends");
    cmd->add_option("--max-steps", o.max_steps, "step bound for the factorization engine");
  };
  auto* validate = app.add_subcommand("validate", "validate a lattice or an ideal system");
  auto* factor = app.add_subcommand("factor", "factor an element into ascending radicals");
  auto* check_sp = app.add_subcommand("check-sp", "evaluate the equivalent factorization conditions");
  auto* represent = app.add_subcommand("represent", "verify the function representation");
  auto* props = app.add_subcommand("props", "run every module suite and the acceptance criteria");
  for (auto* cmd : {validate, factor, check_sp, represent}) source(cmd);
  for (auto* cmd : {validate, factor, check_sp, represent, props}) common(cmd);
  factor->add_option("--element", o.element, "element in the instance syntax")->required();
  check_sp->add_option("--flavor", o.flavor, "lattice, domain or monoid (optionally with a -suffix)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome result{Report("", {})};
    if (*validate) result = cmd_validate(o);
    else if (*factor) result = cmd_factor(o);
    else if (*check_sp) result = cmd_check_sp(o);
    else if (*represent) result = cmd_represent(o);
    else result = cmd_props(o);
    if (o.timing && !*props) {
      result.report.set_timing(
          {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}});
    }
    if (o.json || o.format == "json") out << result.report.dump();
    else out << result.report.text();
    return result.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ForeignElement ? kExitParse : kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace radfact
