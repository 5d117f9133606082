#pragma once

// Brute-force reference computations used by the unit tests. They work directly on raw tables
// or on sets of residues and share no code with the library kernels.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "radfact/finite_lattice.hpp"

namespace oracle {

struct Brute {
  const radfact::LatticeTables& t;
  std::size_t n;

  explicit Brute(const radfact::LatticeTables& tables) : t(tables), n(tables.size()) {}

  bool leq(std::size_t a, std::size_t b) const { return t.leq[a][b] != 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return static_cast<std::size_t>(t.mul[a][b]); }

  std::size_t top() const {
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) ok = ok && leq(j, i);
      if (ok) return i;
    }
    return n;
  }
  std::size_t bottom() const {
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) ok = ok && leq(i, j);
      if (ok) return i;
    }
    return n;
  }
  // Least upper bound by search over all upper bounds.
  std::size_t join(std::size_t a, std::size_t b) const {
    for (std::size_t u = 0; u < n; ++u) {
      if (!leq(a, u) || !leq(b, u)) continue;
      bool least = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (leq(a, v) && leq(b, v) && !leq(u, v)) least = false;
      }
      if (least) return u;
    }
    return n;
  }
  std::size_t meet(std::size_t a, std::size_t b) const {
    for (std::size_t u = 0; u < n; ++u) {
      if (!leq(u, a) || !leq(u, b)) continue;
      bool greatest = true;
      for (std::size_t v = 0; v < n; ++v) {
        if (leq(v, a) && leq(v, b) && !leq(v, u)) greatest = false;
      }
      if (greatest) return u;
    }
    return n;
  }
  // Join of every a with a x <= y.
  std::size_t residual(std::size_t y, std::size_t x) const {
    std::size_t r = bottom();
    for (std::size_t a = 0; a < n; ++a) {
      if (leq(mul(a, x), y)) r = join(r, a);
    }
    return r;
  }
  std::size_t radical(std::size_t x) const {
    std::size_t r = bottom();
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t p = y;
      for (std::size_t k = 0; k < n + 2; ++k) {
        if (leq(p, x)) {
          r = join(r, y);
          break;
        }
        p = mul(p, y);
      }
    }
    return r;
  }

  bool cancellative(std::size_t x) const {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (mul(x, y) == mul(x, z) && y != z) return false;
      }
    }
    return true;
  }
  bool weak_meet_principal(std::size_t x) const {
    for (std::size_t y = 0; y < n; ++y) {
      if (meet(x, y) != mul(residual(y, x), x)) return false;
    }
    return true;
  }
  bool meet_principal(std::size_t x) const {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (meet(y, mul(z, x)) != mul(meet(residual(y, x), z), x)) return false;
      }
    }
    return true;
  }
  bool weak_join_principal(std::size_t x) const {
    const std::size_t b = bottom();
    for (std::size_t y = 0; y < n; ++y) {
      if (!leq(residual(mul(x, y), x), join(y, residual(b, x)))) return false;
    }
    return true;
  }
  bool join_principal(std::size_t x) const {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (join(y, residual(z, x)) != residual(join(mul(y, x), z), x)) return false;
      }
    }
    return true;
  }
  bool prime(std::size_t p) const {
    if (p == top()) return false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (leq(mul(a, b), p) && !leq(a, p) && !leq(b, p)) return false;
      }
    }
    return true;
  }
};

// Ideals of Z/n as explicit residue sets: the ideal generated by a is {a k mod n}.
inline std::set<std::int64_t> principal_ideal(std::int64_t a, std::int64_t n) {
  std::set<std::int64_t> s;
  for (std::int64_t k = 0; k < n; ++k) s.insert(a * k % n);
  return s;
}

inline std::vector<std::set<std::int64_t>> zmod_ideals(std::int64_t n) {
  std::vector<std::set<std::int64_t>> out;
  for (std::int64_t a = 0; a < n; ++a) {
    auto s = principal_ideal(a, n);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

// Ideal generated by all products i j.
inline std::set<std::int64_t> ideal_product(const std::set<std::int64_t>& a,
                                            const std::set<std::int64_t>& b, std::int64_t n) {
  std::int64_t g = n;
  for (auto x : a) {
    for (auto y : b) g = std::gcd(g, x * y % n);
  }
  return principal_ideal(g % n, n);
}

inline std::int64_t generator(const std::set<std::int64_t>& ideal, std::int64_t n) {
  std::int64_t g = n;
  for (auto x : ideal) g = std::gcd(g, x);
  return g;
}

}  // namespace oracle
