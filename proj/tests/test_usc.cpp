#include <doctest.h>

#include <random>

#include "radfact/error.hpp"
#include "radfact/usc.hpp"

using namespace radfact;

namespace {

std::vector<std::uint64_t> values(const USCFun& f, std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = f.at(i);
  return v;
}

USCFun random_fun(const Space& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> val(0, 4), pt(0, 9);
  std::map<std::uint64_t, std::uint64_t> m;
  const std::uint64_t span = s.kind == SpaceKind::FiniteDiscrete ? s.points : 10;
  for (std::uint64_t i = 0; i < span; ++i) {
    if (pt(rng) < 5) m[i] = val(rng);
  }
  if (s.kind == SpaceKind::OnePointCompactified) {
    const std::uint64_t d = val(rng);
    return USCFun::make(s, m, d, d + val(rng) % 2);
  }
  return USCFun::make(s, m);
}

}  // namespace

TEST_SUITE("usc") {

TEST_CASE("pointwise operations on a finite space") {
  const auto s = Space::finite_discrete(6);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    const auto f = random_fun(s, rng), g = random_fun(s, rng);
    const auto vf = values(f, 6), vg = values(g, 6);
    std::vector<std::uint64_t> sum(6), lo(6), hi(6);
    bool ge = true;
    for (int i = 0; i < 6; ++i) {
      sum[i] = vf[i] + vg[i];
      lo[i] = std::min(vf[i], vg[i]);
      hi[i] = std::max(vf[i], vg[i]);
      ge = ge && vf[i] >= vg[i];
    }
    CHECK(values(add(f, g), 6) == sum);
    CHECK(values(join_d(f, g), 6) == lo);
    CHECK(values(meet_d(f, g), 6) == hi);
    CHECK(leq_d(f, g) == ge);
    CHECK(values(scale(f, 3), 6)[0] == 3 * vf[0]);
  }
}

TEST_CASE("the adjoined bottom") {
  const auto s = Space::countable_discrete();
  const auto b = USCFun::bottom(s);
  const auto f = USCFun::make(s, {{3, 2}});
  CHECK(add(b, f) == b);
  CHECK(meet_d(b, f) == b);
  CHECK(join_d(b, f) == f);
  CHECK(leq_d(b, f));
  CHECK_FALSE(leq_d(f, b));
  CHECK(leq_d(f, USCFun::zero(s)));
  CHECK_THROWS_AS(is_radical(b), Error);
  CHECK_THROWS_AS(join_d(std::span<const USCFun>{}), Error);
}

TEST_CASE("radical functions are exactly the indicators") {
  for (auto s : {Space::finite_discrete(5), Space::countable_discrete(), Space::one_point()}) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
      const auto f = random_fun(s, rng);
      bool indicator = f.fallback() <= 1 && f.at_infinity() <= 1;
      for (const auto& [p, v] : f.exceptions()) indicator = indicator && v <= 1;
      const auto r = is_radical(f);
      CHECK(r.radical == indicator);
      if (!r.radical) {
        REQUIRE(r.witness.has_value());
        CHECK(leq_d(scale(*r.witness, r.power), f));
        CHECK_FALSE(leq_d(*r.witness, f));
      }
    }
  }
}

TEST_CASE("decompose and recompose are inverse") {
  for (auto s : {Space::finite_discrete(7), Space::countable_discrete(), Space::one_point()}) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
      const auto f = random_fun(s, rng);
      const auto d = decompose(f);
      CHECK(recompose(s, d) == f);
      CHECK(std::is_sorted(d.values.begin(), d.values.end()));
      for (const auto& c : d.level_sets) CHECK(is_radical(c).radical);
      const auto ch = d.chain();
      for (std::size_t i = 1; i < ch.size(); ++i) CHECK(leq_d(ch[i - 1], ch[i]));
      auto prod = USCFun::zero(s);
      for (const auto& c : ch) prod = add(prod, c);
      CHECK(prod == f);
    }
  }
}

TEST_CASE("construction is validated") {
  CHECK_THROWS_AS(USCFun::make(Space::finite_discrete(3), {{3, 1}}), Error);
  // The value at infinity must dominate the eventual value.
  CHECK_THROWS_AS(USCFun::make(Space::one_point(), {}, 2, 1), Error);
  CHECK_THROWS_AS(USCFun::make(Space::countable_discrete(), {}, 1, 1), Error);
  CHECK_NOTHROW(USCFun::make(Space::one_point(), {}, 1, 2));
  // Entries equal to the fallback are normalised away.
  CHECK(USCFun::make(Space::finite_discrete(3), {{1, 0}}) == USCFun::zero(Space::finite_discrete(3)));
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(5);
  for (auto s : {Space::finite_discrete(4), Space::countable_discrete(), Space::one_point()}) {
    CHECK(Space::from_json(s.to_json()) == s);
    for (int t = 0; t < 20; ++t) {
      const auto f = random_fun(s, rng);
      CHECK(USCFun::from_json(f.to_json()) == f);
    }
    CHECK(USCFun::from_json(USCFun::bottom(s).to_json()) == USCFun::bottom(s));
  }
}

}  // TEST_SUITE
