#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "radfact/core.hpp"
#include "radfact/lattice.hpp"
#include "radfact/usc.hpp"

namespace radfact {

// The maximal elements of a lattice as points of a discrete space. Finite catalogues give
// FiniteDiscrete (point = catalogue position); unbounded ones give CountableDiscrete with the
// backend's own point coordinates.
struct MaxSpectrum {
  LatticeHandle lattice;
  Space space;
  std::vector<ElemRef> points;        // materialised points (all of them when finite)
  std::vector<std::uint64_t> coords;  // coordinate of each materialised point
  // Basis sets V(x) = {m : x <= m} for the context elements (finite spectra only).
  std::vector<std::pair<ElemRef, std::vector<std::uint64_t>>> basis;

  std::size_t size() const { return points.size(); }
  bool finite() const { return space.kind == SpaceKind::FiniteDiscrete; }
};

// CapabilityMissing unless maximals are enumerable.
MaxSpectrum max_spectrum(const LatticeHandle& lattice, std::span<const ElemRef> context = {});

// sup{k : x <= m^k}; nullopt when the powers of m stay above x up to `cap` (unbounded).
// ZeroElement for x = bottom, NotMaximal if m is not maximal.
std::optional<std::uint64_t> valuation(const Lattice& lattice, const ElemRef& x, const ElemRef& m,
                                       unsigned cap = 64);
// The same by power comparison only, ignoring closed forms.
std::optional<std::uint64_t> valuation_by_powers(const Lattice& lattice, const ElemRef& x,
                                                 const ElemRef& m, unsigned cap = 64);

// m -> v_m(x) as a function on the spectrum. ZeroElement for bottom; HypothesisViolated when a
// valuation is unbounded.
USCFun alpha(const MaxSpectrum& spectrum, const ElemRef& x);

// phi(bottom) = b, phi(x) = alpha_x, with the explicit preimage on finite spectra.
class Phi {
 public:
  Phi(MaxSpectrum spectrum, bool checked) : spectrum_(std::move(spectrum)), checked_(checked) {}

  const MaxSpectrum& spectrum() const { return spectrum_; }
  const Lattice& lattice() const { return *spectrum_.lattice; }
  bool checked() const { return checked_; }
  USCFun operator()(const ElemRef& x) const;
  // Level set C -> the radical element meeting the maximals in C, then the product over the
  // decomposition. UnsupportedTopology off discrete spectra; HypothesisViolated if the result
  // does not map back to f.
  ElemRef preimage(const USCFun& f) const;

 private:
  MaxSpectrum spectrum_;
  bool checked_;
};

// Checks the hypotheses on the window (domain, principally generated, dimension <= 1, every
// window element a product of radicals); HypothesisViolated naming the first failure.
Phi build_phi(const LatticeHandle& lattice, const TestWindow& window, std::size_t inner = 40);
// No hypothesis checks; used to evaluate whether phi is an isomorphism at all.
Phi build_phi_unchecked(const LatticeHandle& lattice, std::span<const ElemRef> context);

struct IsoReport {
  std::vector<CheckResult> checks;  // additive, order, injective, surjective
  bool passed() const;
};

// Failures are reported, not thrown. Unbounded valuations count as failures of every check.
IsoReport verify_iso(const Phi& phi, std::span<const ElemRef> window, std::uint64_t seed = 1,
                     Exec exec = Exec::Parallel);

// Discrete or finite spectra: equal cardinality. UnsupportedTopology otherwise.
bool homeomorphic(const MaxSpectrum& a, const MaxSpectrum& b);

struct Separation {
  std::size_t i = 0, j = 0;
  ElemRef x, y;  // compact, x <= m_i, y <= m_j, x v y = top
};
// One witness per pair of distinct points of a finite spectrum; nullopt if some pair has none.
std::optional<std::vector<Separation>> hausdorff_witnesses(const MaxSpectrum& spectrum,
                                                           std::span<const ElemRef> domain);

// Property checks: additivity of every v_m on window pairs, v_m(x) = k iff x_m = m^k, support
// of alpha_x equal to the maximals above rad(x), canonical chains mapping onto the
// decomposition of alpha_x.
std::vector<CheckResult> check_valuations(const Phi& phi, std::span<const ElemRef> window,
                                          Exec exec = Exec::Parallel);
CheckResult check_engine_coherence(const Phi& phi, std::span<const ElemRef> window);
// psi = phi_b^-1 o phi_a, compared point by point; checks mul and order preservation.
CheckResult check_composed_iso(const Phi& a, const Phi& b, std::span<const ElemRef> window);

nlohmann::json spectrum_to_json(const MaxSpectrum& spectrum);

}  // namespace radfact
