#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "radfact/factorization.hpp"
#include "radfact/finite_lattice.hpp"
#include "radfact/instances.hpp"

using namespace radfact;

namespace {

// Products of proper radicals by closing the radical set under the product table.
std::vector<char> radical_products(const LatticeTables& t) {
  oracle::Brute b(t);
  std::vector<std::size_t> rads;
  for (std::size_t x = 0; x < b.n; ++x) {
    if (b.radical(x) == x && x != b.top()) rads.push_back(x);
  }
  std::vector<char> in(b.n, 0);
  for (auto r : rads) in[r] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t x = 0; x < b.n; ++x) {
      if (!in[x]) continue;
      for (auto r : rads) {
        const auto p = b.mul(x, r);
        if (!in[p]) in[p] = grew = 1;
      }
    }
  }
  return in;
}

}  // namespace

TEST_SUITE("factorization") {

TEST_CASE("product-of-radicals decision matches the closure oracle") {
  for (std::int64_t n : {8, 12, 30, 36, 72, 360}) {
    CAPTURE(n);
    const auto L = materialize_from_divisors(n);
    const auto in = radical_products(L->tables());
    for (std::size_t i = 0; i < L->size(); ++i) {
      if (i == L->top_index()) continue;
      const auto d = is_product_of_radicals(*L, L->at(i));
      REQUIRE(d.value.has_value());
      CHECK(*d.value == (in[i] != 0));
      const auto g = decide_product_of_radicals(*L, L->at(i));
      CHECK(g.value == d.value);
      if (*d.value) {
        auto prod = L->top();
        for (const auto& f : d.factors) prod = L->mul(prod, f);
        CHECK(prod == L->at(i));
      }
    }
  }
}

TEST_CASE("successful chains are sound and match the decision") {
  for (std::int64_t n = 2; n <= 200; ++n) {
    const auto L = materialize_from_divisors(n);
    for (std::size_t i = 0; i < L->size(); ++i) {
      const auto x = L->at(i);
      try {
        const auto c = radical_factor(*L, x);
        CHECK(c.product_check);
        CHECK_NOTHROW(assert_sound(*L, c));
        if (!c.factors.empty()) CHECK(*is_product_of_radicals(*L, x).value);
      } catch (const FactorError& e) {
        CHECK(e.step() < kDefaultMaxSteps);
      }
    }
  }
}

TEST_CASE("dedekind chains are the level sets of the exponent vector") {
  const auto L = dedekind(4);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> e(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> v{e(rng), e(rng), e(rng), e(rng)};
    const auto x = L->from_exponents(v);
    const auto c = canonical_chain(*L, x);
    const auto top = *std::max_element(v.begin(), v.end());
    REQUIRE(c.factors.size() == static_cast<std::size_t>(top));
    for (std::int64_t k = 0; k < top; ++k) {
      std::vector<std::int64_t> level(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) level[i] = v[i] > k ? 1 : 0;
      CHECK(c.factors[k] == L->from_exponents(level));
    }
  }
  CHECK(L->format(canonical_chain(*L, L->parse("2:2,3:1")).factors[0]) == "2:1,3:1");
}

TEST_CASE("uniqueness search finds exactly the canonical chain in a dedekind domain") {
  const auto L = dedekind(3);
  for (const char* s : {"2:3", "2:1,3:2,5:1", "1", "5:2"}) {
    CAPTURE(s);
    const auto r = verify_uniqueness(*L, L->parse(s), 5);
    CHECK(r.unique);
    CHECK(r.chains.size() == 1);
  }
}

TEST_CASE("uniqueness on the unbounded domain uses the primes above the element") {
  const auto L = dedekind(std::nullopt);
  const auto r = verify_uniqueness(*L, L->parse("7:2,31:1"), 4);
  CHECK(r.unique);
  CHECK(verify_uniqueness(*L, L->top(), 3).unique);
  try {
    verify_uniqueness(*L, L->bottom(), 3);
    FAIL("searched above the bottom");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapabilityMissing);
  }
}

TEST_CASE("the bottom of a nilpotent chain has one chain per power past nilpotency") {
  // m^k is the bottom for every k >= 3, so chains of length 3..6 all qualify.
  const auto L = make_builtin("nilchain:4");
  const auto r = verify_uniqueness(*L, L->bottom(), 6);
  REQUIRE(r.chains.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.chains[i].size() == i + 3);
  CHECK_FALSE(r.unique);
}

TEST_CASE("engine failures carry the failing step") {
  const auto L = numerical_monoid({2, 3});
  try {
    radical_factor(*L, L->parse("3+H"));
    FAIL("3+H factored");
  } catch (const FactorError& e) {
    CHECK(e.kind() == ErrorKind::StepFailed);
    CHECK(e.step() == 0);
    CHECK(L->format(e.radical()) == "{2,3}+H");
  }
  const auto z = materialize_from_divisors(12);
  try {
    canonical_chain(*z, z->bottom());
    FAIL("bottom factored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroElement);
  }
}

TEST_CASE("unsound chains are rejected") {
  const auto L = dedekind(2);
  FactorChain c;
  c.source = L->parse("2:2");
  c.factors = {L->parse("2:1")};
  CHECK_THROWS_AS(assert_sound(*L, c), Error);
  c.factors = {L->parse("2:1"), L->parse("2:1")};
  CHECK_NOTHROW(assert_sound(*L, c));
  c.factors = {L->parse("2:2")};
  CHECK_THROWS_AS(assert_sound(*L, c), Error);
}

TEST_CASE("closed forms on the infinite monoids") {
  const auto r = make_builtin("rank2");
  CHECK(decide_product_of_radicals(*r, r->parse("Principal(0,3)")).value == true);
  CHECK(decide_product_of_radicals(*r, r->parse("Principal(1,0)")).value == false);
  const auto n = make_builtin("numerical:2,3");
  CHECK(decide_product_of_radicals(*n, n->parse("M^2")).value == true);
  CHECK(decide_product_of_radicals(*n, n->parse("3+H")).value == false);
}

TEST_CASE("json chains") {
  const auto L = dedekind(3);
  const auto j = chain_to_json(*L, canonical_chain(*L, L->parse("2:2,3:1")));
  REQUIRE(j["factors"].size() == 2);
  CHECK(j["factors"][0]["element"] == "2:1,3:1");
  CHECK(j["factors"][1]["element"] == "2:1");
  CHECK(j["product_check"] == true);
}

}  // TEST_SUITE
