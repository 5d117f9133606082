#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radfact/lattice.hpp"

namespace radfact {

// x = factors[0] * ... * factors[k-1] with factors[0] <= ... <= factors[k-1], each a proper
// l-radical element. The empty chain stands for top.
struct FactorChain {
  ElemRef source;
  std::vector<ElemRef> factors;
  bool product_check = false;
};

// StepFailed or Stalled, with the element where the iteration broke off.
class FactorError : public Error {
 public:
  FactorError(ErrorKind kind, std::size_t step, ElemRef at, ElemRef radical, ElemRef quotient,
              std::vector<ElemRef> partial, const std::string& message)
      : Error(kind, message),
        step_(step),
        at_(std::move(at)),
        radical_(std::move(radical)),
        quotient_(std::move(quotient)),
        partial_(std::move(partial)) {}

  std::size_t step() const { return step_; }
  const ElemRef& at() const { return at_; }
  const ElemRef& radical() const { return radical_; }
  const ElemRef& quotient() const { return quotient_; }
  const std::vector<ElemRef>& partial() const { return partial_; }

 private:
  std::size_t step_;
  ElemRef at_, radical_, quotient_;
  std::vector<ElemRef> partial_;
};

inline constexpr unsigned kDefaultMaxSteps = 64;

// Iterates y = rad(x), x' = (x : y), accepting a step only when y * x' = x, until x' = top.
FactorChain radical_factor(const Lattice& lattice, const ElemRef& x,
                           unsigned max_steps = kDefaultMaxSteps);
// radical_factor for x != bottom; ZeroElement otherwise.
FactorChain canonical_chain(const Lattice& lattice, const ElemRef& x,
                            unsigned max_steps = kDefaultMaxSteps);

// Throws AxiomViolation unless the chain is ascending, multiplies back to its source and
// consists of proper l-radical elements.
void assert_sound(const Lattice& lattice, const FactorChain& chain);

struct ProductDecision {
  std::optional<bool> value;          // nullopt: inconclusive within the budget
  std::vector<ElemRef> factors;       // a witness factorisation when value is true
  std::string method;
};

// The multiplicative closure of the l-radical elements of a finite lattice, saturated once.
class RadicalProducts {
 public:
  // CapabilityMissing on infinite backends.
  explicit RadicalProducts(const Lattice& lattice);
  ProductDecision decide(const ElemRef& x) const;
  std::size_t size() const { return parent_.size(); }

 private:
  const Lattice* lattice_;
  // product -> (earlier product, radical factor); radicals map to themselves.
  std::map<ElemRef, std::pair<ElemRef, ElemRef>> parent_;
};

// Exact saturation over the finite carrier; CapabilityMissing on infinite backends.
ProductDecision is_product_of_radicals(const Lattice& lattice, const ElemRef& x);

// Any backend: saturation on finite carriers, the backend's closed form, the engine, then a
// bounded search over products of the radical catalogue (only products above x can divide it).
ProductDecision decide_product_of_radicals(const Lattice& lattice, const ElemRef& x,
                                           std::size_t budget = 4096);

struct UniquenessReport {
  std::vector<std::vector<ElemRef>> chains;  // every ascending proper-radical chain found
  std::optional<FactorChain> canonical;      // nullopt when the engine failed
  std::string engine_error;
  bool unique = false;                       // exactly one chain, equal to the canonical one
};

// Exhaustive search over ascending chains of proper radicals of length <= bound. Needs a
// finite carrier, a radical catalogue, or finitely many primes above a nonzero x (as listed by
// primes({x})); CapabilityMissing otherwise.
UniquenessReport verify_uniqueness(const Lattice& lattice, const ElemRef& x, std::size_t bound);

nlohmann::json chain_to_json(const Lattice& lattice, const FactorChain& chain);

}  // namespace radfact
