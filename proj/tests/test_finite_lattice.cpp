#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "radfact/error.hpp"
#include "radfact/finite_lattice.hpp"

using namespace radfact;

TEST_SUITE("finite-lattice") {

TEST_CASE("divisor tables match ideal arithmetic on residue sets") {
  for (std::int64_t n : {2, 8, 12, 30, 36, 60, 97}) {
    CAPTURE(n);
    const auto L = materialize_from_divisors(n);
    const auto ideals = oracle::zmod_ideals(n);
    REQUIRE(ideals.size() == L->size());
    for (const auto& a : ideals) {
      for (const auto& b : ideals) {
        const auto ia = *L->find_label(std::to_string(oracle::generator(a, n)));
        const auto ib = *L->find_label(std::to_string(oracle::generator(b, n)));
        const bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end());
        CHECK(L->leq_i(ia, ib) == subset);
        const auto prod = oracle::ideal_product(a, b, n);
        CHECK(L->tables().labels[L->mul_i(ia, ib)] == std::to_string(oracle::generator(prod, n)));
      }
    }
  }
}

TEST_CASE("derived operations agree with search over the tables") {
  for (auto L : {materialize_from_divisors(12), materialize_from_divisors(36),
                 materialize_from_divisors(30), chain_lattice(4, false), chain_lattice(4, true)}) {
    CAPTURE(L->name());
    oracle::Brute b(L->tables());
    CHECK(L->top_index() == b.top());
    CHECK(L->bottom_index() == b.bottom());
    for (std::size_t x = 0; x < b.n; ++x) {
      CHECK(L->radical_i(x) == b.radical(x));
      CHECK(L->is_prime_i(x) == b.prime(x));
      for (std::size_t y = 0; y < b.n; ++y) {
        CHECK(L->join_i(x, y) == b.join(x, y));
        CHECK(L->meet_i(x, y) == b.meet(x, y));
        CHECK(L->residual_i(y, x) == b.residual(y, x));
      }
    }
  }
}

TEST_CASE("element predicates agree with the definitions") {
  for (auto L : {materialize_from_divisors(12), materialize_from_divisors(8), chain_lattice(3, true),
                 chain_lattice(4, false)}) {
    CAPTURE(L->name());
    oracle::Brute b(L->tables());
    const auto serial = all_predicates(*L, Exec::Serial);
    CHECK(serial == all_predicates(*L, Exec::Parallel));
    for (std::size_t x = 0; x < b.n; ++x) {
      CAPTURE(L->tables().labels[x]);
      CHECK(serial[x].cancellative == b.cancellative(x));
      CHECK(serial[x].weak_meet_principal == b.weak_meet_principal(x));
      CHECK(serial[x].meet_principal == b.meet_principal(x));
      CHECK(serial[x].weak_join_principal == b.weak_join_principal(x));
      CHECK(serial[x].join_principal == b.join_principal(x));
      CHECK(serial[x].ell_prime == b.prime(x));
    }
  }
}

TEST_CASE("zmod:12 frozen values") {
  const auto L = materialize_from_divisors(12);
  CHECK(L->size() == 6);
  auto at = [&](const char* s) { return *L->find_label(s); };
  CHECK(L->tables().labels[L->mul_i(at("2"), at("2"))] == "4");
  CHECK(L->tables().labels[L->mul_i(at("6"), at("2"))] == "12");
  CHECK(L->tables().labels[L->radical_i(at("4"))] == "2");
  CHECK(L->tables().labels[L->radical_i(at("12"))] == "6");
  CHECK(L->maximals_i().size() == 2);
  CHECK(L->validation().modular.passed);
  CHECK_FALSE(L->validation().domain.passed);
}

TEST_CASE("serial and parallel validation give identical reports") {
  for (std::int64_t n : {30, 360, 720}) {
    const auto L = materialize_from_divisors(n);
    const auto& t = L->tables();
    CHECK(validate_tables(t, Exec::Serial) == validate_tables(t, Exec::Parallel));
  }
}

TEST_CASE("a corrupted product is reported with a witness") {
  auto t = materialize_from_divisors(12)->tables();
  auto ix = [&](const char* s) {
    return static_cast<std::size_t>(std::find(t.labels.begin(), t.labels.end(), s) - t.labels.begin());
  };
  // 2 * 1 should be 2; pointing it at 4 keeps the table symmetric but breaks the identity law.
  t.mul[ix("2")][ix("1")] = static_cast<int>(ix("4"));
  t.mul[ix("1")][ix("2")] = static_cast<int>(ix("4"));
  const auto rep = validate_tables(t);
  CHECK_FALSE(rep.ok());
  const auto* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK_FALSE(f->witness.empty());
}

TEST_CASE("cyclic order is a parse error") {
  std::ifstream in(std::string(RADFACT_DATA_DIR) + "/broken.json");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    FiniteMultLattice::load(ss.str());
    FAIL("loaded a cyclic order");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("malformed documents") {
  for (const char* doc : {"[]", "{\"elements\": []}", "{\"elements\": [\"a\"], \"leq\": [[1]]}",
                          "{\"elements\": [\"a\", \"a\"], \"leq\": [[1,1],[1,1]], \"mul\": [[0,0],[0,0]]}",
                          "{\"elements\": [\"a\"], \"leq\": [[2]], \"mul\": [[0]]}",
                          "{\"elements\": [\"a\"], \"leq\": [[1]], \"mul\": [[3]]}", "not json"}) {
    CAPTURE(doc);
    CHECK_THROWS_AS(FiniteMultLattice::load(doc), Error);
  }
}

TEST_CASE("save and load round trip") {
  const auto L = materialize_from_divisors(60);
  const auto again = FiniteMultLattice::load(L->save());
  CHECK(again->tables() == L->tables());
}

TEST_CASE("invalid modulus") {
  CHECK_THROWS_AS(materialize_from_divisors(1), Error);
  CHECK_THROWS_AS(materialize_from_divisors(0), Error);
}

}  // TEST_SUITE
