#pragma once

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "opetope/family.hpp"
#include "opetope/perm.hpp"

namespace opetope {

/// Raised when arrows do not fit together (source/target mismatch, wrong
/// number of arguments, unknown codes).
class IllFormed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a construction needs a freely symmetric input and gets a
/// stabilizer instead. The message carries the witness.
class NotTidy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An arrow of a freely symmetric multicategory: the planar representative
/// acted on by a permutation. Freeness makes this factorization unique, so
/// the pair is also the planar-representative witness.
struct Arrow {
  Code planar;
  Perm perm;

  auto operator<=>(const Arrow&) const = default;
  std::string str() const;
};

/// A skeletal, tidy symmetric multicategory presented behaviourally.
/// Objects are canonical codes; every query that could be infinite takes a
/// size bound. Implementations are immutable after construction and safe
/// to share between threads.
class SymMulticat {
 public:
  virtual ~SymMulticat() = default;

  virtual std::string name() const = 0;

  /// Objects of size <= maxSize, ordered by (size, code).
  virtual std::vector<Code> objects(int maxSize) const = 0;
  virtual int objectSize(const Code& x) const = 0;

  /// Planar arrows of exactly the given size, ordered by code.
  virtual std::vector<Code> planarArrows(int size) const = 0;
  virtual std::vector<Code> planarSources(const Code& p) const = 0;
  virtual Code planarTarget(const Code& p) const = 0;
  virtual int arrowSize(const Code& p) const = 0;

  virtual Arrow identityOf(const Code& x) const = 0;
  /// f o (g_1, ..., g_k). Throws IllFormed on mismatch.
  virtual Arrow compose(const Arrow& f, std::span<const Arrow> gs) const = 0;
  virtual Arrow act(const Arrow& f, const Perm& s) const;

  /// Permutations s != id with p.s = p, for arrows of size <= maxSize.
  /// Empty for a freely symmetric multicategory.
  virtual std::vector<std::pair<Code, Perm>> stabilizerWitnesses(int maxSize) const;

  // Derived queries.
  std::size_t arity(const Code& p) const { return planarSources(p).size(); }
  std::vector<Code> sources(const Arrow& f) const;
  Code target(const Arrow& f) const { return planarTarget(f.planar); }
  int sizeOf(const Arrow& f) const { return arrowSize(f.planar); }
  Arrow planarArrow(const Code& p) const { return {p, Perm::identity(arity(p))}; }
  std::pair<Code, Perm> planarRep(const Arrow& f) const { return {f.planar, f.perm}; }

  /// Planar arrows of size <= maxSize with the given target.
  std::vector<Code> planarArrowsWithTarget(const Code& x, int maxSize) const;
  /// All arrows in Q(sources; target) of size <= maxSize.
  std::vector<Arrow> arrowsOf(std::span<const Code> sources, const Code& target,
                              int maxSize) const;
};

using MulticatPtr = std::shared_ptr<const SymMulticat>;

/// A morphism of symmetric multicategories, given on objects and on planar
/// arrows; arrows p.s are sent to F(p).s.
struct SymMulticatMorphism {
  MulticatPtr source;
  MulticatPtr target;
  std::function<Code(const Code&)> objectMap;
  std::function<Arrow(const Code&)> planarMap;

  Arrow operator()(const Arrow& f) const;
};

/// f o (g_1..g_k) for arbitrary arrows, given how to compose planar arrows
/// with planar arguments. Reduces by the two equivariance axioms:
///   (p.s) o (H_1..H_k) = (p o (G_1..G_k)).blockPerm(s, |G|),  G_{s(i)} = H_i
///   p o (q_1.t_1, ..., q_k.t_k) = (p o (q_1..q_k)).juxtapose(t)
/// Checks that the arguments fit.
using PlanarComposer = std::function<Arrow(const Code&, const std::vector<Code>&)>;
Arrow composeByEquivariance(const SymMulticat& q, const Arrow& f, std::span<const Arrow> gs,
                            const PlanarComposer& planar);

SymMulticatMorphism identityMorphism(MulticatPtr q);
SymMulticatMorphism composeMorphisms(const SymMulticatMorphism& g, const SymMulticatMorphism& f);

}  // namespace opetope
