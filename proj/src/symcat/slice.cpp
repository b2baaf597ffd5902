#include "opetope/slice.hpp"

#include <algorithm>

#include "opetope/code_syntax.hpp"

namespace opetope {

std::size_t ConfigTree::leafCount() const {
  if (isLeaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leafCount();
  return n;
}

std::size_t ConfigTree::nodeCount() const {
  if (isLeaf()) return 0;
  std::size_t n = 1;
  for (const auto& c : children) n += c.nodeCount();
  return n;
}

ConfigTree ConfigTree::leaf(Code x) {
  ConfigTree t;
  t.object = std::move(x);
  return t;
}

ConfigTree ConfigTree::node(Code p, std::vector<ConfigTree> children) {
  ConfigTree t;
  t.label = std::move(p);
  t.children = std::move(children);
  return t;
}

ConfigTree parseConfig(const Code& code) {
  CodeTerm t;
  try {
    t = splitCode(code);
  } catch (const std::invalid_argument& e) {
    throw IllFormed(e.what());
  }
  switch (t.kind) {
    case CodeTerm::Kind::Unit:
      return ConfigTree::leaf(t.head);
    case CodeTerm::Kind::Node: {
      std::vector<ConfigTree> kids;
      for (const auto& c : t.children) kids.push_back(parseConfig(c));
      return ConfigTree::node(t.head, std::move(kids));
    }
    default:
      throw IllFormed("not a configuration: " + code);
  }
}

Code printConfig(const ConfigTree& t) {
  if (t.twist && !t.twist->isIdentity()) throw IllFormed("printConfig: tree is not combed");
  if (t.isLeaf()) return unitCode(t.object);
  std::vector<Code> kids;
  for (const auto& c : t.children) kids.push_back(printConfig(c));
  return nodeCode(t.label, kids);
}

namespace {

std::pair<ConfigTree, Perm> combRec(const ConfigTree& t) {
  if (t.isLeaf()) {
    if (t.twist && !t.twist->isIdentity()) throw IllFormed("comb: a leaf cannot carry a twist");
    return {ConfigTree::leaf(t.object), Perm::identity(1)};
  }
  std::vector<ConfigTree> kids;
  std::vector<Perm> perms;
  for (const auto& c : t.children) {
    auto [k, p] = combRec(c);
    kids.push_back(std::move(k));
    perms.push_back(std::move(p));
  }
  Perm pi = juxtaposePerms(perms);
  if (t.twist) {
    if (t.twist->degree() != pi.degree())
      throw IllFormed("comb: twist of degree " + std::to_string(t.twist->degree()) +
                      " on a subtree with " + std::to_string(pi.degree()) + " leaves");
    pi = composePerm(pi, *t.twist);
  }
  return {ConfigTree::node(t.label, std::move(kids)), pi};
}

}  // namespace

CombedTree comb(const ConfigTree& t) {
  auto [tree, pi] = combRec(t);
  Perm tau = Perm::identity(tree.nodeCount());
  return {std::move(tree), std::move(pi), std::move(tau)};
}

Arrow evalTwisted(const SymMulticat& q, const ConfigTree& t) {
  if (t.isLeaf()) return q.identityOf(t.object);
  std::vector<Arrow> args;
  for (const auto& c : t.children) args.push_back(evalTwisted(q, c));
  Arrow r = q.compose(q.planarArrow(t.label), args);
  if (t.twist) r = q.act(r, *t.twist);
  return r;
}

Arrow evalConfiguration(const SymMulticat& q, const CombedTree& c) {
  return q.act(evalTwisted(q, c.tree), c.rho);
}

// ---------------------------------------------------------------------------

Slice::Slice(MulticatPtr base) : q_(std::move(base)) {}

std::string Slice::name() const { return q_->name() + "+"; }

std::vector<Code> Slice::objects(int maxSize) const {
  std::vector<Code> out;
  for (int s = 0; s <= maxSize; ++s)
    for (auto& p : q_->planarArrows(s)) out.push_back(std::move(p));
  return out;
}

int Slice::objectSize(const Code& x) const { return q_->arrowSize(x); }

const Slice::Info& Slice::info(const Code& p) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = info_.find(p); it != info_.end()) return *it->second;
  }
  auto t = splitCode(p);
  auto in = std::make_shared<Info>();
  Arrow eval;
  if (t.kind == CodeTerm::Kind::Unit) {
    eval = q_->identityOf(t.head);
    in->size = q_->objectSize(t.head);
  } else if (t.kind == CodeTerm::Kind::Node) {
    auto src = q_->planarSources(t.head);
    if (src.size() != t.children.size())
      throw IllFormed("node " + t.head + " has " + std::to_string(src.size()) + " inputs, got " +
                      std::to_string(t.children.size()) + " in " + p);
    in->size = 1 + q_->arrowSize(t.head);
    in->sources.push_back(t.head);
    std::vector<Arrow> args;
    for (const auto& c : t.children) {
      const Info& ci = info(c);
      args.push_back({ci.target, ci.rho.inverse()});
      in->size += ci.size;
      in->sources.insert(in->sources.end(), ci.sources.begin(), ci.sources.end());
    }
    eval = q_->compose(q_->planarArrow(t.head), args);
  } else {
    throw IllFormed("not a configuration: " + p);
  }
  in->target = eval.planar;
  in->rho = eval.perm.inverse();
  std::lock_guard lock(mu_);
  return *info_.emplace(p, std::move(in)).first->second;
}

std::vector<Code> Slice::planarSources(const Code& p) const { return info(p).sources; }
Code Slice::planarTarget(const Code& p) const { return info(p).target; }
int Slice::arrowSize(const Code& p) const { return info(p).size; }
Perm Slice::rhoOf(const Code& p) const { return info(p).rho; }

Arrow Slice::identityOf(const Code& x) const {
  std::vector<Code> kids;
  for (const auto& s : q_->planarSources(x)) kids.push_back(unitCode(s));
  return {nodeCode(x, kids), Perm::identity(1)};
}

namespace {

// All ways to fill the input slots of p with trees whose sizes sum to budget.
template <class TreesFn>
void fillSlots(const Code& p, const std::vector<Code>& src, std::size_t slot, int budget,
               std::vector<Code>& kids, std::vector<Code>& out, TreesFn&& trees) {
  if (slot == src.size()) {
    if (budget == 0) out.push_back(nodeCode(p, kids));
    return;
  }
  for (int s = 0; s <= budget; ++s) {
    const std::vector<Code>& choice = trees(src[slot], s);
    for (const auto& c : choice) {
      kids.push_back(c);
      fillSlots(p, src, slot + 1, budget - s, kids, out, trees);
      kids.pop_back();
    }
  }
}

}  // namespace

const std::vector<Code>& Slice::trees(const Code& x, int size) const {
  auto key = std::make_pair(x, size);
  {
    std::lock_guard lock(mu_);
    if (auto it = trees_.find(key); it != trees_.end()) return *it->second;
  }
  std::vector<Code> out;
  if (q_->objectSize(x) == size) out.push_back(unitCode(x));
  auto sub = [this](const Code& y, int s) -> const std::vector<Code>& { return trees(y, s); };
  for (int k = 0; k < size; ++k)
    for (const auto& p : q_->planarArrows(k)) {
      if (q_->planarTarget(p) != x) continue;
      std::vector<Code> kids;
      fillSlots(p, q_->planarSources(p), 0, size - 1 - k, kids, out, sub);
    }
  std::sort(out.begin(), out.end());
  std::lock_guard lock(mu_);
  return *trees_.emplace(key, std::make_shared<const std::vector<Code>>(std::move(out)))
              .first->second;
}

std::vector<Code> Slice::planarArrows(int size) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = strata_.find(size); it != strata_.end()) return *it->second;
  }
  std::vector<Code> out;
  if (size >= 0) {
    for (const auto& x : q_->objects(size))
      if (q_->objectSize(x) == size) out.push_back(unitCode(x));
    auto sub = [this](const Code& y, int s) -> const std::vector<Code>& { return trees(y, s); };
    for (int k = 0; k < size; ++k)
      for (const auto& p : q_->planarArrows(k)) {
        std::vector<Code> kids;
        fillSlots(p, q_->planarSources(p), 0, size - 1 - k, kids, out, sub);
      }
    std::sort(out.begin(), out.end());
  }
  std::lock_guard lock(mu_);
  return *strata_.emplace(size, std::make_shared<const std::vector<Code>>(std::move(out)))
              .first->second;
}

std::pair<Arrow, Perm> Slice::graftAndComb(const Code& f, const std::vector<Code>& gs) const {
  ConfigTree tf = parseConfig(f);
  if (gs.size() != tf.nodeCount())
    throw IllFormed("compose: " + f + " has " + std::to_string(tf.nodeCount()) + " nodes, got " +
                    std::to_string(gs.size()) + " arguments");
  std::vector<ConfigTree> tg;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& g : gs) {
    tg.push_back(parseConfig(g));
    offset.push_back(total);
    total += tg.back().nodeCount();
  }
  std::vector<std::size_t> numbers;  // number of each result node, depth-first

  // Replaces the node of tf with depth-first index d by the tree of g_d,
  // hanging N's children at the leaves of g_d through rho_g.
  std::function<ConfigTree(const ConfigTree&, std::size_t)> process =
      [&](const ConfigTree& n, std::size_t d) -> ConfigTree {
    if (n.isLeaf()) return n;
    std::vector<std::size_t> childIdx;
    std::size_t next = d + 1;
    for (const auto& c : n.children) {
      childIdx.push_back(next);
      next += c.nodeCount();
    }
    const ConfigTree& g = tg[d];
    Perm rhoG = rhoOf(gs[d]);
    Perm rhoInv = rhoG.inverse();
    if (rhoG.degree() != n.children.size())
      throw IllFormed("compose: argument " + gs[d] + " does not fit node " + n.label);
    std::size_t e = 0, leafNo = 0;
    std::function<ConfigTree(const ConfigTree&)> copy = [&](const ConfigTree& m) -> ConfigTree {
      if (m.isLeaf()) {
        std::size_t j = rhoInv(leafNo++);
        return process(n.children[j], childIdx[j]);
      }
      numbers.push_back(offset[d] + e++);
      std::vector<ConfigTree> kids;
      for (const auto& c : m.children) kids.push_back(copy(c));
      return ConfigTree::node(m.label, std::move(kids));
    };
    ConfigTree r = copy(g);
    if (!r.isLeaf()) {
      std::vector<std::size_t> arities;
      for (const auto& c : n.children) arities.push_back(c.leafCount());
      Perm t = blockPerm(rhoInv, arities).inverse();
      if (!t.isIdentity()) r.twist = t;
    }
    return r;
  };

  ConfigTree grafted = process(tf, 0);
  auto [tree, pi] = combRec(grafted);
  std::vector<int> sigma(numbers.size());
  for (std::size_t i = 0; i < numbers.size(); ++i) sigma[numbers[i]] = static_cast<int>(i);
  Perm rho = composePerm(pi, rhoOf(f));
  return {Arrow{printConfig(tree), Perm(sigma)}, rho};
}

Arrow Slice::compose(const Arrow& f, std::span<const Arrow> gs) const {
  return composeByEquivariance(*this, f, gs, [this](const Code& p, const std::vector<Code>& qs) {
    return graftAndComb(p, qs).first;
  });
}

CombedTree Slice::combedOf(const Arrow& f) const {
  return {parseConfig(f.planar), rhoOf(f.planar), f.perm.inverse()};
}

Arrow Slice::arrowOf(const CombedTree& c) const {
  Code p = printConfig(c.tree);
  if (c.rho != rhoOf(p)) throw IllFormed("configuration " + p + " does not evaluate to its target");
  return {p, c.tau.inverse()};
}

std::shared_ptr<const Slice> slice(MulticatPtr q) {
  auto w = q->stabilizerWitnesses(6);
  if (!w.empty())
    throw NotTidy(q->name() + " is not freely symmetric: " + w.front().first + "." +
                  w.front().second.str() + " = " + w.front().first);
  return std::make_shared<const Slice>(std::move(q));
}

MulticatPtr iteratedSlice(MulticatPtr q, int k) {
  for (int i = 0; i < k; ++i) q = slice(std::move(q));
  return q;
}

}  // namespace opetope
