#pragma once

#include <cstdint>

#include "opetope/polymonad.hpp"
#include "opetope/report.hpp"

namespace opetope {

struct MonadCheckConfig {
  int sizeBound = 4;
  int trials = 200;
  std::uint64_t seed = 0;
  /// Families in the exhaustive part have at most this many elements.
  std::size_t familySize = 4;
  /// Base objects used for the fibres of test families.
  std::size_t fibreObjects = 2;
  /// Largest T(T(X)) built for a multiplication square; the square's size
  /// bound is lowered until this fits.
  std::size_t elementCap = 5000;
};

/// Unit and associativity laws of substitute, including positions, on all
/// nestings whose total size is within the bound, plus random nestings.
Report checkMonadLaws(const PolyMonad& m, const MonadCheckConfig& cfg = {});

/// eta and mu naturality squares are pullbacks, and T sends pullback
/// squares to pullback squares. Maps of families are enumerated up to
/// isomorphism, then sampled at random.
Report checkCartesian(const PolyMonad& m, const MonadCheckConfig& cfg = {});

/// Bounded suitability: nested chains of inclusions of length chainLength
/// (T of each inclusion is an inclusion and T of the union is the union of
/// the images), including the empty chain, and coproducts that are disjoint
/// and stable under pullback.
Report checkSuitable(const PolyMonad& m, int chainLength, int sizeBound, std::uint64_t seed = 0);

/// phi naturality squares are pullbacks, phi agrees with U on targets and
/// sources, and phi is compatible with the units and with substitution.
Report checkOpfunctor(const MonadOpfunctor& f, const MonadCheckConfig& cfg = {});

/// checkOpfunctor plus: U bijective on base windows, phi size-preserving
/// and bijective on every stratum up to the bound.
Report checkMonadIsomorphism(const MonadOpfunctor& f, const MonadCheckConfig& cfg = {});

}  // namespace opetope
