#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "radfact/error.hpp"
#include "radfact/instances.hpp"

using namespace radfact;

namespace {

// Nonzero ideals of Z over the primes 2, 3, 5 as the positive generator.
std::int64_t to_int(const ExponentLattice& L, const ElemRef& x) {
  const auto e = L.exponents(x);
  std::int64_t v = 1;
  for (std::size_t i = 0; i < e->size(); ++i) {
    for (std::int64_t k = 0; k < (*e)[i]; ++k) v *= nth_prime(i);
  }
  return v;
}

std::int64_t squarefree_part(std::int64_t n) {
  std::int64_t r = 1;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (n % p == 0) {
      r *= p;
      while (n % p == 0) n /= p;
    }
  }
  return r;
}

// Ideals of a numerical monoid as membership over [0, kSpan).
constexpr std::int64_t kSpan = 80;
using IntSet = std::set<std::int64_t>;

IntSet monoid_set(const std::vector<std::int64_t>& gens) {
  std::vector<char> in(kSpan, 0);
  in[0] = 1;
  for (std::int64_t n = 1; n < kSpan; ++n) {
    for (auto g : gens) {
      if (n >= g && in[n - g]) in[n] = 1;
    }
  }
  IntSet s;
  for (std::int64_t n = 0; n < kSpan; ++n) {
    if (in[n]) s.insert(n);
  }
  return s;
}

IntSet members(const NumericalMonoidLattice& L, const ElemRef& x) {
  IntSet s;
  for (std::int64_t n = 0; n < kSpan; ++n) {
    if (L.contains(x, n)) s.insert(n);
  }
  return s;
}

IntSet sumset(const IntSet& a, const IntSet& b) {
  IntSet s;
  for (auto x : a) {
    for (auto y : b) {
      if (x + y < kSpan) s.insert(x + y);
    }
  }
  return s;
}

}  // namespace

TEST_SUITE("instances") {

TEST_CASE("primes") {
  CHECK(nth_prime(0) == 2);
  CHECK(nth_prime(1) == 3);
  CHECK(nth_prime(9) == 29);
  CHECK(nth_prime(99) == 541);
}

TEST_CASE("dedekind operations match integer arithmetic") {
  const auto L = dedekind(3);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> e(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = L->from_exponents({e(rng), e(rng), e(rng)});
    const auto y = L->from_exponents({e(rng), e(rng), e(rng)});
    const auto a = to_int(*L, x), b = to_int(*L, y);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(to_int(*L, L->mul(x, y)) == a * b);
    CHECK(to_int(*L, L->join(x, y)) == std::gcd(a, b));
    CHECK(to_int(*L, L->meet(x, y)) == std::lcm(a, b));
    CHECK(L->leq(x, y) == (a % b == 0));
    CHECK(to_int(*L, L->residual(y, x)) == b / std::gcd(a, b));
    CHECK(to_int(*L, L->radical(x)) == squarefree_part(a));
    CHECK(L->parse(L->format(x)) == x);
  }
  CHECK(L->mul(L->zero(), L->top()) == L->zero());
  CHECK(L->residual(L->zero(), L->zero()) == L->top());
  CHECK(L->format(L->top()) == "1");
  CHECK(L->format(L->from_exponents({2, 1})) == "2:2,3:1");
  CHECK(L->maximals().size() == 3);
}

TEST_CASE("unbounded dedekind materialises primes on demand") {
  const auto L = dedekind(std::nullopt);
  const auto x = L->parse("7:1,31:2");
  const std::vector<ElemRef> ctx{x};
  CHECK(L->maximals(ctx).size() >= 2);
  CHECK(L->format(L->radical(x)) == "7:1,31:1");
}

TEST_CASE("power of j restricts the support") {
  const auto L = power_of_j(30);
  CHECK(L->maximals().size() == 3);
  const auto M = power_of_j(10);
  CHECK(M->maximals().size() == 2);
  CHECK_THROWS_AS(M->parse("3:1"), Error);
  try {
    power_of_j(12);
    FAIL("12 is not squarefree");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRadical);
  }
}

TEST_CASE("numerical monoid ideals match integer sets") {
  for (const auto& gens : std::initializer_list<std::vector<std::int64_t>>{std::vector<std::int64_t>{2, 3}, {3, 5}, {4, 6, 9}}) {
    const auto L = numerical_monoid(gens);
    const auto H = monoid_set(gens);
    const auto ideals = L->enumerate_ideals(9);
    REQUIRE(ideals.size() > 3);
    for (const auto& x : ideals) {
      const auto sx = members(*L, x);
      // An ideal is closed under adding monoid elements.
      CHECK(sumset(sx, H) == sx);
      for (const auto& y : ideals) {
        const auto sy = members(*L, y);
        CHECK(members(*L, L->mul(x, y)) == sumset(sx, sy));
        IntSet u = sx;
        u.insert(sy.begin(), sy.end());
        CHECK(members(*L, L->join(x, y)) == u);
        IntSet m;
        std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(m, m.end()));
        CHECK(members(*L, L->meet(x, y)) == m);
        CHECK(L->leq(x, y) == std::includes(sy.begin(), sy.end(), sx.begin(), sx.end()));
      }
    }
  }
}

TEST_CASE("frobenius numbers match the largest gap") {
  for (const auto& gens : std::initializer_list<std::vector<std::int64_t>>{{3, 5}, {2, 3}, {4, 6, 9}, {5, 7, 11}, {6, 10, 15}}) {
    const auto H = monoid_set(gens);
    std::int64_t gap = -1;
    for (std::int64_t n = 0; n < kSpan; ++n) {
      if (!H.count(n)) gap = n;
    }
    CHECK(numerical_monoid(gens)->frobenius() == gap);
  }
}

TEST_CASE("numerical monoid frozen values") {
  CHECK(numerical_monoid({3, 5})->frobenius() == 7);
  CHECK(numerical_monoid({2, 3})->frobenius() == 1);
  CHECK(numerical_monoid({4, 6, 9})->frobenius() == 11);
  const auto L = numerical_monoid({2, 3});
  CHECK(L->format(L->maximal_ideal()) == "{2,3}+H");
  CHECK(L->format(L->closure({3})) == "3+H");
  CHECK(L->parse("ideal:3+H") == L->closure({3}));
  CHECK(L->in_monoid(5));
  CHECK_FALSE(L->in_monoid(1));
  CHECK(L->minimal_generators(L->closure({4, 5})) == std::vector<std::int64_t>{4, 5});
  CHECK(L->s_invertible(L->closure({3}), 10).has_value());
  CHECK_FALSE(L->s_invertible(L->maximal_ideal(), 10).has_value());
}

TEST_CASE("invalid generators") {
  for (const auto& gens : std::initializer_list<std::vector<std::int64_t>>{std::vector<std::int64_t>{2, 4}, {}, {0, 1}, {-3, 5}}) {
    try {
      numerical_monoid(gens);
      FAIL("accepted bad generators");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidGenerators);
    }
  }
}

TEST_CASE("rank2 frozen values") {
  const auto L = rank2_valuation();
  const auto m = L->principal(0, 1);
  CHECK(L->maximals().size() == 1);
  CHECK(L->maximals()[0] == m);
  CHECK(L->primes().size() == 3);
  CHECK(L->mul(L->principal(1, 0), L->principal(0, 2)) == L->principal(1, 2));
  CHECK(L->mul(L->limit(0), L->limit(0)) == L->limit(1));
  CHECK(L->radical(L->limit(1)) == L->limit(0));
  CHECK(L->radical(L->principal(0, 3)) == m);
  CHECK(L->radical(L->principal(2, -5)) == L->limit(0));
  CHECK(L->leq(L->principal(1, 7), L->limit(0)));
  CHECK(L->leq(L->limit(0), m));
  CHECK_FALSE(L->is_compact(L->limit(0)));
  CHECK(L->format(L->limit(0)) == "Limit(0)");
  CHECK(L->parse("Principal(2,-1)") == L->principal(2, -1));
}

TEST_CASE("builtin selectors") {
  for (const char* sel : {"zmod:12", "dedekind:3", "dedekind:unbounded", "rank2", "numerical:2,3",
                          "power-of-j:30", "chain:3", "nilchain:3"}) {
    CAPTURE(sel);
    CHECK(make_builtin(sel) != nullptr);
  }
  for (const char* sel : {"zmod", "zmod:x", "dedekind:-1", "rank3", "", "numerical:", "power-of-j:12"}) {
    CAPTURE(sel);
    CHECK_THROWS_AS(make_builtin(sel), Error);
  }
  try {
    make_builtin("zmod:1");
    FAIL("zmod:1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidModulus);
  }
}

}  // TEST_SUITE
