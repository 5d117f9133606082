#include <doctest.h>

#include "oracle.hpp"
#include "radfact/core.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/instances.hpp"

using namespace radfact;

namespace {

bool all_passed(const std::vector<CheckResult>& checks, std::string* first = nullptr) {
  for (const auto& c : checks) {
    if (!c.passed) {
      if (first) *first = c.name + ": " + c.witness;
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("definitional residual, radical and localization match the tables") {
  for (std::int64_t n : {12, 36, 360}) {
    CAPTURE(n);
    const auto L = materialize_from_divisors(n);
    const auto els = L->elements();
    const auto primes = L->primes();
    for (const auto& x : els) {
      CHECK(radical_by_powers(*L, x, els) == L->radical(x));
      CHECK(radical_by_primes(*L, x, primes) == L->radical(x));
      for (const auto& y : els) CHECK(residual_by_definition(*L, y, x, els) == L->residual(y, x));
      for (const auto& p : primes) CHECK(localize_by_definition(*L, x, p, els) == L->localize(x, p));
    }
  }
}

TEST_CASE("element predicates agree with the index kernels and the oracle") {
  for (auto L : {materialize_from_divisors(12), materialize_from_divisors(36), chain_lattice(4, true)}) {
    CAPTURE(L->name());
    const auto idx = all_predicates(*L, Exec::Serial);
    oracle::Brute b(L->tables());
    for (std::size_t i = 0; i < L->size(); ++i) {
      const auto rec = element_predicates(*L, L->at(i));
      CHECK(rec.cancellative.value == idx[i].cancellative);
      CHECK(rec.weak_meet_principal.value == idx[i].weak_meet_principal);
      CHECK(rec.meet_principal.value == b.meet_principal(i));
      CHECK(rec.join_principal.value == b.join_principal(i));
      CHECK(rec.ell_invertible.value == idx[i].ell_invertible());
      CHECK(rec.ell_prime.value == b.prime(i));
      CHECK(rec.window_verified == false);
      if (!rec.meet_principal.value) CHECK_FALSE(rec.meet_principal.witness.empty());
    }
  }
}

TEST_CASE("lattice predicates") {
  const auto z12 = materialize_from_divisors(12);
  const auto p = lattice_predicates(*z12);
  CHECK(p.modular.value);
  CHECK_FALSE(p.domain.value);
  CHECK(p.principally_generated.value);

  const auto d = make_builtin("dedekind:3");
  const auto w = make_window(*d, 60, 1);
  const auto q = lattice_predicates(*d, w.sample, false);
  CHECK(q.domain.value);
  CHECK(q.principally_generated.value);
  CHECK(q.window_verified);
}

TEST_CASE("dimension and minimal primes") {
  const auto z12 = materialize_from_divisors(12);
  CHECK(dimension(*z12) == 0);
  const auto mins = minimal_primes_over(*z12, z12->bottom());
  CHECK(mins.size() == 2);
  CHECK(dimension(*make_builtin("dedekind:3")) == 1);
  CHECK(dimension(*make_builtin("rank2")) == 2);
  CHECK(dimension(*make_builtin("numerical:3,5")) == 1);
  CHECK(longest_prime_chain(*make_builtin("rank2")).size() == 3);
}

TEST_CASE("windows are deterministic and seeded") {
  const auto d = make_builtin("dedekind:3");
  const auto a = make_window(*d, 80, 5);
  const auto b = make_window(*d, 80, 5);
  CHECK(a.sample == b.sample);
  CHECK(a.sample.size() == 80);
  CHECK_FALSE(a.exhaustive);
  const auto z = default_window(*materialize_from_divisors(30));
  CHECK(z.exhaustive);
  CHECK(z.sample.size() == 8);
}

TEST_CASE("core suite passes on every shipped instance") {
  for (const char* sel : {"zmod:12", "zmod:36", "chain:4", "nilchain:3", "dedekind:3", "dedekind:unbounded",
                          "power-of-j:30", "rank2", "numerical:2,3", "numerical:3,5"}) {
    CAPTURE(sel);
    const auto L = make_builtin(sel);
    const auto w = default_window(*L, 60, 1);
    SuiteOptions opt;
    opt.exhaustive = w.exhaustive;
    opt.inner = 30;
    std::string first;
    CHECK_MESSAGE(all_passed(run_core_suite(*L, w, opt), &first), first);
  }
}

TEST_CASE("serial and parallel suites agree") {
  const auto L = make_builtin("dedekind:3");
  const auto w = make_window(*L, 50, 2);
  SuiteOptions s;
  s.exec = Exec::Serial;
  SuiteOptions p;
  const auto a = run_core_suite(*L, w, s);
  const auto b = run_core_suite(*L, w, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].passed == b[i].passed);
    CHECK(a[i].witness == b[i].witness);
  }
}

TEST_CASE("foreign elements are rejected") {
  const auto a = materialize_from_divisors(12);
  const auto b = materialize_from_divisors(12);
  try {
    (void)a->mul(a->top(), b->top());
    FAIL("mixed lattices");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ForeignElement);
  }
}

}  // TEST_SUITE
