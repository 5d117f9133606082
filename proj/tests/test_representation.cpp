#include <doctest.h>

#include "radfact/core.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/instances.hpp"
#include "radfact/representation.hpp"

using namespace radfact;

namespace {

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("representation") {

TEST_CASE("valuations are exponents") {
  const auto L = dedekind(3);
  const auto sp = max_spectrum(L);
  REQUIRE(sp.size() == 3);
  CHECK(sp.space == Space::finite_discrete(3));
  const auto x = L->from_exponents({3, 0, 2});
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = valuation(*L, x, sp.points[i]);
    CHECK(v == valuation_by_powers(*L, x, sp.points[i]));
  }
  CHECK(valuation(*L, x, L->from_exponents({1})) == 3u);
  CHECK(valuation(*L, x, L->from_exponents({0, 0, 1})) == 2u);
  const auto a = alpha(sp, x);
  CHECK(a.at(sp.coords[0]) + a.at(sp.coords[1]) + a.at(sp.coords[2]) == 5);
  CHECK_THROWS_AS(valuation(*L, L->zero(), sp.points[0]), Error);
  CHECK_THROWS_AS(valuation(*L, x, L->from_exponents({1, 1})), Error);
}

TEST_CASE("phi round trips on a finite spectrum") {
  const auto L = dedekind(3);
  const auto w = make_window(*L, 100, 1);
  const auto phi = build_phi(L, w);
  for (const auto& x : w.sample) CHECK(phi.preimage(phi(x)) == x);
  CHECK(phi(L->zero()).is_bottom());
  CHECK(verify_iso(phi, w.sample, 1, Exec::Serial).passed());
  CHECK(all_passed(check_valuations(phi, w.sample)));
  CHECK(check_engine_coherence(phi, w.sample).passed);
}

TEST_CASE("serial and parallel verification agree") {
  const auto L = power_of_j(30);
  const auto w = make_window(*L, 80, 3);
  const auto phi = build_phi(L, w);
  const auto a = verify_iso(phi, w.sample, 3, Exec::Serial);
  const auto b = verify_iso(phi, w.sample, 3, Exec::Parallel);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].passed == b.checks[i].passed);
    CHECK(a.checks[i].witness == b.checks[i].witness);
  }
}

TEST_CASE("unbounded spectra are countable") {
  const auto L = dedekind(std::nullopt);
  const auto w = make_window(*L, 60, 1);
  const auto sp = max_spectrum(L, w.sample);
  CHECK(sp.space.kind == SpaceKind::CountableDiscrete);
  const auto phi = build_phi(L, w);
  CHECK(verify_iso(phi, w.sample).passed());
  for (const auto& x : w.sample) CHECK(phi.preimage(phi(x)) == x);
}

TEST_CASE("hypotheses are enforced") {
  for (const char* sel : {"rank2", "zmod:12", "numerical:2,3"}) {
    CAPTURE(sel);
    const auto L = make_builtin(sel);
    try {
      build_phi(L, make_window(*L, 40, 1));
      FAIL("built phi");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
  }
}

TEST_CASE("phi is not an isomorphism without the hypotheses") {
  const auto L = make_builtin("numerical:2,3");
  const auto w = make_window(*L, 40, 1);
  const auto phi = build_phi_unchecked(L, w.sample);
  CHECK_FALSE(verify_iso(phi, w.sample).passed());
}

TEST_CASE("spectra of finite lattices") {
  const auto z = materialize_from_divisors(12);
  CHECK(max_spectrum(z).size() == 2);
  // The bottom of the two-element lattice is maximal but carries no point.
  CHECK(max_spectrum(make_builtin("chain:2")).size() == 0);
}

TEST_CASE("homeomorphism and separation") {
  const auto d = dedekind(3);
  const auto a = max_spectrum(power_of_j(30));
  const auto b = max_spectrum(d);
  const auto c = max_spectrum(dedekind(2));
  CHECK(homeomorphic(a, b));
  CHECK_FALSE(homeomorphic(a, c));
  const auto w = make_window(*d, 60, 1);
  const auto sep = hausdorff_witnesses(b, w.sample);
  REQUIRE(sep.has_value());
  CHECK(sep->size() == 3);
  for (const auto& s : *sep) CHECK(d->join(s.x, s.y) == d->top());
}

TEST_CASE("composed isomorphism between two models of the same spectrum") {
  const auto a = power_of_j(30);
  const auto b = dedekind(3);
  const auto wa = make_window(*a, 60, 1);
  const auto pa = build_phi(a, wa);
  const auto pb = build_phi(b, make_window(*b, 60, 1));
  CHECK(check_composed_iso(pa, pb, wa.sample).passed);
}

TEST_CASE("spectrum json") {
  const auto j = spectrum_to_json(max_spectrum(dedekind(3)));
  CHECK(j.dump().find("\"points\":3") != std::string::npos);
}

}  // TEST_SUITE
