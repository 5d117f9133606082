#include <doctest.h>

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "radfact/error.hpp"
#include "radfact/ideal_systems.hpp"
#include "radfact/suites.hpp"

using namespace radfact;

namespace {

Subset bit(std::size_t i) { return Subset{1} << i; }

// s-closure on (Z/n, *): every multiple x h, plus the absorbing 0.
Subset s_closure_oracle(Subset x, std::size_t n) {
  Subset out = bit(0);
  for (std::size_t a = 0; a < n; ++a) {
    if (!(x & bit(a))) continue;
    for (std::size_t h = 0; h < n; ++h) out |= bit(a * h % n);
  }
  return out;
}

// d-closure on the ring Z/n: the multiples of gcd(X, n).
Subset d_closure_oracle(Subset x, std::size_t n) {
  std::size_t g = n;
  for (std::size_t a = 0; a < n; ++a) {
    if (x & bit(a)) g = std::gcd(g, a);
  }
  Subset out = 0;
  for (std::size_t k = 0; k < n; k += g) out |= bit(k);
  return out;
}

nlohmann::json load(const char* name) {
  std::ifstream in(std::string(RADFACT_DATA_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_SUITE("ideal-systems") {

TEST_CASE("closures match the oracles on every subset") {
  for (std::size_t n : {2u, 4u, 6u, 8u, 9u, 12u}) {
    CAPTURE(n);
    const auto s = WeakIdealSystem::s(FiniteMonoid::zmod(n, false));
    const auto d = WeakIdealSystem::d_ring(FiniteMonoid::zmod(n, true));
    const auto ts = s.materialize(Exec::Serial);
    const auto td = d.materialize();
    for (Subset x = 0; x < (Subset{1} << n); ++x) {
      CHECK(ts[x] == s_closure_oracle(x, n));
      CHECK(td[x] == d_closure_oracle(x, n));
    }
  }
}

TEST_CASE("frozen ideals of Z/4") {
  const auto s = WeakIdealSystem::s(FiniteMonoid::zmod(4, false));
  CHECK(s.closure(bit(2)) == (bit(0) | bit(2)));
  const auto ideals = r_ideals(s);
  REQUIRE(ideals.size() == 3);
  CHECK(s.monoid().format(ideals[0]) == "{0}");
  CHECK(s.monoid().format(ideals[1]) == "{0,2}");
  CHECK(s.monoid().format(ideals[2]) == "{0,1,2,3}");
  CHECK(s.name() == "s-system:zmod-mult:4");
}

TEST_CASE("r-ideals are exactly the fixed points") {
  for (std::size_t n : {6u, 8u, 12u}) {
    const auto d = WeakIdealSystem::d_ring(FiniteMonoid::zmod(n, true));
    std::vector<Subset> fixed;
    for (Subset x = 0; x < (Subset{1} << n); ++x) {
      if (d_closure_oracle(x, n) == x) fixed.push_back(x);
    }
    auto got = r_ideals(d);
    std::sort(got.begin(), got.end());
    CHECK(got == fixed);
  }
}

TEST_CASE("builtin systems validate") {
  for (const char* sel : {"s-system:zmod-mult:4", "s-system:zmod-mult:12", "d-system:zmod:8", "d-system:zmod:12"}) {
    CAPTURE(sel);
    const auto r = make_builtin_system(sel);
    const auto a = validate_system(r, Exec::Serial);
    CHECK(a == validate_system(r, Exec::Parallel));
    CHECK(a.ok());
    CHECK(a.ideal_system.passed);
    CHECK(a.finitary.passed);
    CHECK(a.modular.passed);
    for (const auto& c : check_bridge(r)) {
      CAPTURE(c.name);
      CHECK_MESSAGE(c.passed, c.witness);
    }
  }
}

TEST_CASE("the d-lattice of Z/n is the divisor lattice") {
  for (std::int64_t n : {2, 6, 8, 12}) {
    CAPTURE(n);
    const auto L = build_ideal_lattice(make_builtin_system("d-system:zmod:" + std::to_string(n)), false);
    std::string why;
    CHECK_MESSAGE(matches_divisor_lattice(L, n, &why), why);
  }
}

TEST_CASE("regular elements of Z/n are the units") {
  for (std::size_t n : {4u, 9u, 12u}) {
    const auto s = WeakIdealSystem::s(FiniteMonoid::zmod(n, false));
    std::vector<std::size_t> units;
    for (std::size_t x = 1; x < n; ++x) {
      if (std::gcd(x, n) == 1) units.push_back(x);
    }
    CHECK(regular_elements(s) == units);
  }
}

TEST_CASE("invertibility") {
  const auto s = WeakIdealSystem::s(FiniteMonoid::zmod(4, false));
  const auto whole = s.monoid().all();
  const auto inv = r_invertible(s, whole);
  CHECK(inv.invertible);
  CHECK_FALSE(r_invertible(s, bit(0) | bit(2)).invertible);
}

TEST_CASE("a closure that is not extensive is caught") {
  const auto doc = load("z2-bad-closure.json");
  const auto r = parse_system_document(doc);
  const auto rep = validate_system(r);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK_FALSE(rep.first_failure()->witness.empty());
}

TEST_CASE("every closure mutation is detected") {
  std::mt19937_64 rng(4);
  for (const char* sel : {"s-system:zmod-mult:6", "d-system:zmod:12", "d-system:zmod:8"}) {
    const auto r = make_builtin_system(sel);
    for (std::size_t kind = 0; kind < 2; ++kind) {
      const auto m = mutate_closure(r, kind, rng);
      CAPTURE(m.description);
      const auto bad = WeakIdealSystem::explicit_table(r.monoid(), m.table);
      CHECK_FALSE(validate_system(bad).ok());
    }
  }
}

TEST_CASE("documents") {
  const auto z4 = parse_system_document(load("z4-s-system.json"));
  CHECK(z4.kind() == SystemKind::S);
  const auto z6 = parse_system_document(load("z6-d-system.json"));
  CHECK(z6.kind() == SystemKind::DRing);
  CHECK(is_monoid_document(load("z4-s-system.json")));
  CHECK_FALSE(is_monoid_document(nlohmann::json::object()));
  const auto again = FiniteMonoid::from_json(z6.monoid().to_json());
  CHECK(again.to_json() == z6.monoid().to_json());
  CHECK(system_to_json(z4)["builtin"] == "s");
  CHECK(parse_system_document(system_to_json(z6)).kind() == SystemKind::DRing);
  const auto bad = parse_system_document(load("z2-bad-closure.json"));
  CHECK(parse_system_document(system_to_json(bad)).materialize() == bad.materialize());
}

TEST_CASE("monoid axioms") {
  // a*b = b but b*a = a.
  FiniteMonoid bad("bad", {"a", "b"}, {{1, 1}, {0, 1}});
  CHECK_FALSE(bad.validate().ok());
  FiniteMonoid one("one", {"e"}, {{0}});
  CHECK_FALSE(one.validate().ok());
  CHECK(FiniteMonoid::zmod(12, true).validate().ok());
}

TEST_CASE("limits and argument errors") {
  try {
    WeakIdealSystem::d_ring(FiniteMonoid::zmod(6, false));
    FAIL("no addition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  try {
    WeakIdealSystem::explicit_table(FiniteMonoid::zmod(13, false), {});
    FAIL("too large");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
  CHECK_THROWS_AS(WeakIdealSystem::explicit_table(FiniteMonoid::zmod(3, false), {0, 1}), Error);
  // Beyond the materialisation limit the ideals come from principal closures.
  const auto big = WeakIdealSystem::d_ring(FiniteMonoid::zmod(30, true));
  CHECK(r_ideals(big).size() == 8);
  CHECK_THROWS_AS(make_builtin_system("s-system:zmod-mult:x"), Error);
}

TEST_CASE("the regular part of Z/5 is the two-element lattice") {
  const auto r = make_builtin_system("s-system:zmod-mult:5");
  const auto L = build_ideal_lattice(r, true);
  CHECK(L.lattice->size() == 2);
  CHECK(L.lattice->name().find("+reg") != std::string::npos);
}

}  // TEST_SUITE
