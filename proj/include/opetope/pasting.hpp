#pragma once

#include <map>
#include <mutex>

#include "opetope/polymonad.hpp"

namespace opetope {

/// Either Unit(s) with s in S, or a node labelled by an element whose shape
/// is an operation of M, with one child per source of that operation.
/// Text form: `u(s)` / `n(label;c1,...,ck)`.
struct PastingTree {
  Code unit;   // Unit only
  Code label;  // Node only
  std::vector<PastingTree> children;

  bool isUnit() const { return label.empty(); }
  std::size_t nodes() const;
  std::size_t depth() const;

  static PastingTree parse(const Code& code);
  Code print() const;
};

/// The composite operation of a tree of M-operations (node labels are the
/// operations themselves), and for each leaf, left to right, the index of
/// the composite's source it became.
struct Flattened {
  Code op;
  std::vector<std::size_t> leafPosition;
};

/// flatten(Unit(s)) = unitOp(s); a node substitutes its flattened children
/// into its label. Throws std::invalid_argument on an ill-formed tree.
Flattened flattenTree(const PolyMonad& m, const PastingTree& t);

/// The free-operad monad M'. Base = operations of M; operations = pasting
/// trees of M-operations, with sources the node labels in depth-first order
/// and target the flattened composite; substitution grafts trees.
class FreeOperadMonad : public PolyMonad {
 public:
  explicit FreeOperadMonad(MonadPtr m);

  const MonadPtr& inner() const { return m_; }

  std::string name() const override;
  std::vector<Code> base(int maxSize) const override;
  int baseSize(const Code& s) const override;
  std::vector<Code> ops(int size) const override;
  std::vector<Code> sources(const Code& op) const override;
  Code target(const Code& op) const override;
  int size(const Code& op) const override;
  Code unitOp(const Code& s) const override;
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override;

  /// Trees of exactly this size whose root has base target s.
  const std::vector<Code>& treesOver(const Code& s, int size) const;
  const Flattened& flattened(const Code& op) const;

 private:
  struct Info {
    Flattened flat;
    std::vector<Code> sources;
    int size;
  };
  const Info& info(const Code& op) const;
  Substitution graft(const Code& op, const std::vector<Code>& inners) const;

  MonadPtr m_;
  mutable std::mutex mu_;
  mutable std::map<Code, std::shared_ptr<const Info>> info_;
  mutable std::map<std::pair<Code, int>, std::shared_ptr<const std::vector<Code>>> trees_;
  mutable std::map<int, std::shared_ptr<const std::vector<Code>>> strata_;
  mutable std::map<std::pair<Code, std::vector<Code>>, Substitution> subst_;
};

std::shared_ptr<const FreeOperadMonad> freeOperadMonad(MonadPtr m);

/// T_0 = identity on {pt}; T_{k+1} = T_k'.
MonadPtr leinsterMonad(int k);

/// One stage of the nested sequence building the free operad on A over M:
/// C^0 = S, C^{k+1} = S + T(C^k) x_{S'} A. Elements are pasting-tree codes
/// with A-element labels; `fibre` is f^(k) into S and `d` is d_k into S'.
struct NestedStage {
  Family elements;               // fibred over the S window by f^(k)
  std::map<Code, Code> d;        // element -> operation of M
};

/// a: family over a window of S' (operations of M). Only trees of size
/// <= maxSize are kept, and S is windowed at base objects of size <= maxSize.
NestedStage nestedSequenceStage(const PolyMonad& m, const Family& a, int k, int maxSize);

}  // namespace opetope
