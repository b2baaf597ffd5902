#pragma once

#include "opetope/monad_checks.hpp"
#include "opetope/multicat.hpp"
#include "opetope/pasting.hpp"

namespace opetope {

/// The monad of a tidy skeletal multicategory: base = objects, operations
/// = planar arrows (one per isomorphism class of elt(Q)), units =
/// identities, substitution = composition read back on planar
/// representatives.
struct ZetaImage {
  MulticatPtr source;
  MonadPtr monad;
  /// Planar arrow code -> operation code. The identity on codes, kept as a
  /// function so callers do not rely on that.
  std::function<Code(const Code&)> opOfArrow;
};

/// Throws NotTidy if q has a stabilizer among arrows of size <= tidyBound.
ZetaImage zetaObj(MulticatPtr q, int tidyBound = 4);

/// (U_F, phi_F): U on objects; phi sends p to the planar part of F(p),
/// reading each of its sources from the one F moved there.
MonadOpfunctor zetaMor(const SymMulticatMorphism& f);

/// The comparison zeta(Q)' -> zeta(Q+): g built stage by stage along the
/// nested sequence (g_0 on trees with no nodes, g_{k+1} grafting the g_k
/// images under a node), then checked stratum by stratum up to sizeBound.
struct Comparison {
  Report report;
  std::map<Code, Code> g;  // pasting tree -> planar arrow of Q+
};
Comparison comparisonIso(MulticatPtr q, int sizeBound, const MonadCheckConfig& cfg = {});

}  // namespace opetope
