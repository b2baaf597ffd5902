#pragma once

#include <cstdint>

#include "opetope/multicat.hpp"
#include "opetope/report.hpp"

namespace opetope {

struct AxiomCheckConfig {
  int exhaustiveSize = 4;  // every instance whose total size fits
  int randomSize = 6;      // size bound for the random pieces
  int trials = 500;
  std::uint64_t seed = 0;
  std::size_t maxPermArity = 4;  // all permutations up to this arity
};

/// Axioms 1-5 (units, associativity, group action, the two equivariance
/// laws) plus the source/target bookkeeping of composites and the free
/// action witness. For a slice, also checks that graft-then-comb produces
/// the twist forced by evaluation.
Report checkAxioms(const SymMulticat& q, const AxiomCheckConfig& cfg = {});

/// Isomorphism classes of a set of arrows of Q, seen as objects of elt(Q):
/// each class is named by its planar representative and lists its members
/// with the permutation s such that member = planar.s.
struct SkeletalClass {
  Code planar;
  std::vector<std::pair<Arrow, Perm>> members;
};
/// Throws NotTidy if one of the classes has a nontrivial stabilizer.
std::vector<SkeletalClass> skeletalizeObjects(const SymMulticat& q, std::span<const Arrow> arrows);

/// Verifies that q is tidy and already skeletal up to the bound (objects
/// unique, planar representatives unique) and returns it.
MulticatPtr skeletalize(MulticatPtr q, int checkBound = 4);

/// Bijective on objects and full and faithful, up to the size bound on
/// both sides. The diagnostic names the first failure.
Verdict isEquivalence(const SymMulticatMorphism& f, int sizeBound);

/// F preserves sources, targets, identities, composition and the action
/// on instances of total size <= sizeBound.
Report checkMorphism(const SymMulticatMorphism& f, int sizeBound);

}  // namespace opetope
