#include <doctest.h>

#include "radfact/error.hpp"
#include "radfact/instances.hpp"
#include "radfact/sp_conditions.hpp"

using namespace radfact;

TEST_SUITE("sp-conditions") {

TEST_CASE("flavor names") {
  CHECK(parse_flavor("lattice") == Flavor::Lattice);
  CHECK(parse_flavor("domain") == Flavor::Domain);
  CHECK(parse_flavor("monoid") == Flavor::Monoid);
  CHECK(parse_flavor("monoid-8.5") == Flavor::Monoid);
  CHECK(parse_flavor("domain-x") == Flavor::Domain);
  for (const char* bad : {"", "monoids", "Lattice", "-monoid", "ring"}) {
    CAPTURE(bad);
    try {
      parse_flavor(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  CHECK(to_string(Flavor::Monoid) == "monoid");
}

TEST_CASE("every condition holds in small dedekind domains") {
  for (const char* sel : {"dedekind:1", "dedekind:2", "dedekind:3", "power-of-j:30"}) {
    CAPTURE(sel);
    const auto L = make_builtin(sel);
    const auto flavor = std::string(sel).rfind("power", 0) == 0 ? Flavor::Lattice : Flavor::Domain;
    const auto r = check_sp_conditions(L, flavor);
    CHECK(r.agreement);
    CHECK(r.all_hold());
  }
}

TEST_CASE("every condition fails on the counterexample monoids, with witnesses") {
  for (const char* sel : {"rank2", "numerical:2,3", "numerical:3,5"}) {
    CAPTURE(sel);
    const auto L = make_builtin(sel);
    const auto r = check_sp_conditions(L, parse_flavor("monoid-8.5"));
    CHECK(r.agreement);
    CHECK(r.all_fail());
    for (const auto& c : r.conditions) {
      CAPTURE(c.id);
      CHECK(c.verdict == Verdict::False);
      if (c.number != 6) CHECK_FALSE(c.witness.empty());
    }
  }
}

TEST_CASE("frozen witnesses") {
  const auto r2 = make_builtin("rank2");
  const auto a = check_sp_conditions(r2, Flavor::Monoid);
  const auto j = condition_report_to_json(*r2, a).dump();
  CHECK(j.find("Limit(0)") != std::string::npos);
  const auto n = make_builtin("numerical:2,3");
  const auto b = condition_report_to_json(*n, check_sp_conditions(n, Flavor::Monoid)).dump();
  CHECK(b.find(n->format(n->parse("M"))) != std::string::npos);
}

TEST_CASE("hypotheses") {
  const auto z = make_builtin("zmod:12");
  try {
    check_sp_conditions(z, Flavor::Lattice);
    FAIL("zmod:12 is not a domain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolated);
  }
  // The domain list needs ring ideals and the monoid list needs monoid ideals.
  CHECK_THROWS_AS(check_sp_conditions(make_builtin("rank2"), Flavor::Domain), Error);
  CHECK_THROWS_AS(check_sp_conditions(make_builtin("dedekind:2"), Flavor::Monoid), Error);
}

TEST_CASE("serial and parallel verdicts agree") {
  SpOptions s;
  s.exec = Exec::Serial;
  for (const char* sel : {"dedekind:2", "rank2"}) {
    const auto L = make_builtin(sel);
    const auto flavor = std::string(sel) == "rank2" ? Flavor::Monoid : Flavor::Domain;
    const auto a = check_sp_conditions(L, flavor, s);
    const auto b = check_sp_conditions(L, flavor);
    REQUIRE(a.conditions.size() == b.conditions.size());
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
      CHECK(a.conditions[i].verdict == b.conditions[i].verdict);
      CHECK(a.conditions[i].witness == b.conditions[i].witness);
    }
  }
}

}  // TEST_SUITE
