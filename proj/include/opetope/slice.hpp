#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "opetope/multicat.hpp"

namespace opetope {

/// A planar tree whose nodes carry planar arrows of some Q and whose leaves
/// carry objects of Q. Internal twists are only present before combing.
/// Text form: leaf `u(x)`, node `n(p;c1,...,ck)`.
struct ConfigTree {
  Code object;  // leaves only
  Code label;   // nodes only
  std::vector<ConfigTree> children;
  std::optional<Perm> twist;  // acts on the leaves of this subtree

  bool isLeaf() const { return label.empty(); }
  std::size_t leafCount() const;
  std::size_t nodeCount() const;

  static ConfigTree leaf(Code x);
  static ConfigTree node(Code p, std::vector<ConfigTree> children);
};

ConfigTree parseConfig(const Code& code);
/// Twists are not part of the text form; printing a twisted tree throws.
Code printConfig(const ConfigTree& t);

/// (T, rho, tau): all twisting moved to the top. tau(d) is the number of the
/// node with depth-first index d.
struct CombedTree {
  ConfigTree tree;
  Perm rho;
  Perm tau;
};

/// Pushes every internal twist up to the root.
CombedTree comb(const ConfigTree& t);

/// Composes node labels bottom-up in Q, applying internal twists as met.
Arrow evalTwisted(const SymMulticat& q, const ConfigTree& t);
/// evalTwisted(tree) acted on by rho. Throws IllFormed on a mismatch.
Arrow evalConfiguration(const SymMulticat& q, const CombedTree& c);

/// The skeletal slice Q+. Objects are planar arrows of Q; planar arrows are
/// configuration trees numbered depth-first; an arrow T.s has source k equal
/// to the label of node s(k). rho is forced by freeness and not stored.
class Slice : public SymMulticat {
 public:
  explicit Slice(MulticatPtr base);

  const MulticatPtr& base() const { return q_; }

  std::string name() const override;
  std::vector<Code> objects(int maxSize) const override;
  int objectSize(const Code& x) const override;
  std::vector<Code> planarArrows(int size) const override;
  std::vector<Code> planarSources(const Code& p) const override;
  Code planarTarget(const Code& p) const override;
  int arrowSize(const Code& p) const override;
  Arrow identityOf(const Code& x) const override;
  Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override;

  /// The twist making the evaluation of the tree planar.
  Perm rhoOf(const Code& p) const;
  CombedTree combedOf(const Arrow& f) const;
  Arrow arrowOf(const CombedTree& c) const;

  /// Planar composite together with the twist produced by graft-then-comb,
  /// before any comparison with rhoOf.
  std::pair<Arrow, Perm> graftAndComb(const Code& f, const std::vector<Code>& gs) const;

 private:
  struct Info {
    Code target;
    Perm rho;
    std::vector<Code> sources;
    int size;
  };
  const Info& info(const Code& p) const;
  const std::vector<Code>& trees(const Code& x, int size) const;

  MulticatPtr q_;
  mutable std::mutex mu_;
  mutable std::map<Code, std::shared_ptr<const Info>> info_;
  mutable std::map<std::pair<Code, int>, std::shared_ptr<const std::vector<Code>>> trees_;
  mutable std::map<int, std::shared_ptr<const std::vector<Code>>> strata_;
};

/// Refuses a multicategory with a stabilizer witness (NotTidy).
std::shared_ptr<const Slice> slice(MulticatPtr q);
/// slice applied k times.
MulticatPtr iteratedSlice(MulticatPtr q, int k);

}  // namespace opetope
