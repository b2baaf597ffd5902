#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "opetope/family.hpp"

namespace opetope {

/// Result of substituting operations into the slots of an outer one.
/// positions[i][j] is the index, among the composite's sources, of source j
/// of the i-th inner operation.
struct Substitution {
  Code op;
  std::vector<std::vector<std::size_t>> positions;
};

/// A polynomial monad on families over a set S, given by its operations.
/// Each operation has a list of sources in S, a target in S and a size;
/// unit operations are unary. Everything infinite is reached through size
/// strata. Implementations are immutable and thread-safe.
class PolyMonad {
 public:
  virtual ~PolyMonad() = default;

  virtual std::string name() const = 0;
  /// Base objects of size <= maxSize, ordered by (size, code).
  virtual std::vector<Code> base(int maxSize) const = 0;
  virtual int baseSize(const Code& s) const = 0;
  /// Operations of exactly this size, ordered by code.
  virtual std::vector<Code> ops(int size) const = 0;
  virtual std::vector<Code> sources(const Code& op) const = 0;
  virtual Code target(const Code& op) const = 0;
  virtual int size(const Code& op) const = 0;
  virtual Code unitOp(const Code& s) const = 0;
  /// Throws std::invalid_argument when the inner targets do not match.
  virtual Substitution substitute(const Code& op, const std::vector<Code>& inners) const = 0;

  std::size_t arity(const Code& op) const { return sources(op).size(); }
  /// Operations of size <= maxSize.
  std::vector<Code> opsUpTo(int maxSize) const;
};

using MonadPtr = std::shared_ptr<const PolyMonad>;

/// (Set/S, id): one unary unit operation per object, code identityCode(s).
MonadPtr identityMonad(std::vector<Code> base);
/// Lists on a single object: operation "list<n>" of arity and size n.
MonadPtr freeMonoidMonad(Code object = "pt");

/// A finite monad from JSON:
///   {"base": [...],
///    "operations": [{"code", "source": [...], "target", "size"}],
///    "units": {"s": "op", ...},
///    "substitution": [{"op", "args": [...], "result", "positions": [[...]]}]}
/// Substitutions into a unit, or of units, are implicit; positions default
/// to concatenation. Unknown fields are rejected.
MonadPtr monadFromJson(const nlohmann::json& j, std::string name = "user");

/// A monad that behaves like m except that substitute is post-processed.
MonadPtr withSubstitute(MonadPtr m, std::string name,
                        std::function<Substitution(const Code&, const std::vector<Code>&,
                                                   Substitution)> tweak);

// ---------------------------------------------------------------------------
// The functor T on finite windows. A family X over a finite window W of S
// is sent to the family over W of pairs (op, labels), op of size <= maxSize
// with target in W, one X-element per source with matching fibre.

Family applyT(const PolyMonad& m, const Family& x, int maxSize);
/// Element code of (op, labels) and its inverse.
Code tElementCode(const Code& op, const std::vector<Code>& labels);
std::pair<Code, std::vector<Code>> tElementParts(const Code& code);

/// A map of families together with its ends.
struct FamilyArrow {
  Family from;
  Family to;
  SetMap map;
};

FamilyArrow makeArrow(const Family& from, const Family& to, std::map<Code, Code> fn);

/// T(f) restricted to operations of size <= maxSize.
FamilyArrow applyTMap(const PolyMonad& m, const FamilyArrow& f, int maxSize);
/// eta_X: x -> (unitOp(fibre x), [x]).
FamilyArrow unitComponent(const PolyMonad& m, const Family& x);
/// mu_X on T(T(X)) truncated at maxSize on both levels; the codomain is
/// T(X) truncated at the largest composite size that occurs, or at
/// codomainSize if that is larger.
FamilyArrow multComponent(const PolyMonad& m, const Family& x, int maxSize, int codomainSize = 0);
/// The composite (substitute(op, ops_i), labels placed by position).
std::pair<Code, std::vector<Code>> multiply(const PolyMonad& m, const Code& op,
                                             const std::vector<std::pair<Code, std::vector<Code>>>& inner);

// ---------------------------------------------------------------------------

/// Image of one operation under an opfunctor: the target operation and, for
/// each of its sources, which source of the original feeds it.
struct OpImage {
  Code op;
  std::vector<std::size_t> from;
};

/// (U, phi): U on base objects, phi on operations. phi is cartesian exactly
/// when every `from` is a bijection.
struct MonadOpfunctor {
  MonadPtr source;
  MonadPtr target;
  std::function<Code(const Code&)> baseMap;
  std::function<OpImage(const Code&)> phi;
};

MonadOpfunctor identityOpfunctor(MonadPtr m);
/// (U2 U1, phi2 . phi1).
MonadOpfunctor composeOpfunctors(const MonadOpfunctor& second, const MonadOpfunctor& first);

/// U pushes a family forward along the base map; fibres outside the target
/// window are kept as new base codes.
Family pushForward(const MonadOpfunctor& f, const Family& x);
/// phi_X : U T1 X -> T2 U X. The codomain is cut like multComponent's.
FamilyArrow phiComponent(const MonadOpfunctor& f, const Family& x, int maxSize, int codomainSize = 0);

}  // namespace opetope
