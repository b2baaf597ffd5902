#include "opetope/pasting.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "opetope/code_syntax.hpp"

namespace opetope {

std::size_t PastingTree::nodes() const {
  if (isUnit()) return 0;
  std::size_t n = 1;
  for (const auto& c : children) n += c.nodes();
  return n;
}

std::size_t PastingTree::depth() const {
  if (isUnit()) return 0;
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth());
  return d + 1;
}

PastingTree PastingTree::parse(const Code& code) {
  CodeTerm t = splitCode(code);
  PastingTree p;
  if (t.kind == CodeTerm::Kind::Unit) {
    p.unit = t.head;
  } else if (t.kind == CodeTerm::Kind::Node) {
    p.label = t.head;
    for (const auto& c : t.children) p.children.push_back(parse(c));
  } else {
    throw std::invalid_argument("not a pasting tree: " + code);
  }
  return p;
}

Code PastingTree::print() const {
  if (isUnit()) return "u(" + unit + ")";
  Code out = "n(" + label + ";";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ",";
    out += children[i].print();
  }
  return out + ")";
}

Flattened flattenTree(const PolyMonad& m, const PastingTree& t) {
  if (t.isUnit()) return {m.unitOp(t.unit), {0}};
  if (t.children.size() != m.arity(t.label))
    throw std::invalid_argument("node " + t.label + " needs " + std::to_string(m.arity(t.label)) +
                                " children");
  std::vector<Flattened> kids;
  std::vector<Code> ops;
  for (const auto& c : t.children) {
    kids.push_back(flattenTree(m, c));
    ops.push_back(kids.back().op);
  }
  Substitution sub = m.substitute(t.label, ops);
  Flattened out{sub.op, {}};
  for (std::size_t i = 0; i < kids.size(); ++i)
    for (auto lp : kids[i].leafPosition) out.leafPosition.push_back(sub.positions[i].at(lp));
  return out;
}

// ---------------------------------------------------------------------------

FreeOperadMonad::FreeOperadMonad(MonadPtr m) : m_(std::move(m)) {}

std::string FreeOperadMonad::name() const { return m_->name() + "'"; }

std::vector<Code> FreeOperadMonad::base(int maxSize) const { return m_->opsUpTo(maxSize); }

int FreeOperadMonad::baseSize(const Code& s) const { return m_->size(s); }

const FreeOperadMonad::Info& FreeOperadMonad::info(const Code& op) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = info_.find(op); it != info_.end()) return *it->second;
  }
  CodeTerm t = splitCode(op);
  auto in = std::make_shared<Info>();
  if (t.kind == CodeTerm::Kind::Unit) {
    in->flat = {m_->unitOp(t.head), {0}};
    in->size = m_->baseSize(t.head);
  } else if (t.kind == CodeTerm::Kind::Node) {
    if (t.children.size() != m_->arity(t.head))
      throw std::invalid_argument("node " + t.head + " needs " + std::to_string(m_->arity(t.head)) +
                                  " children in " + op);
    in->size = 1 + m_->size(t.head);
    in->sources.push_back(t.head);
    std::vector<Code> ops;
    std::vector<const Info*> kids;
    for (const auto& c : t.children) {
      const Info& ci = info(c);
      kids.push_back(&ci);
      ops.push_back(ci.flat.op);
      in->size += ci.size;
      in->sources.insert(in->sources.end(), ci.sources.begin(), ci.sources.end());
    }
    Substitution sub = m_->substitute(t.head, ops);
    in->flat.op = sub.op;
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (auto lp : kids[i]->flat.leafPosition) in->flat.leafPosition.push_back(sub.positions[i].at(lp));
  } else {
    throw std::invalid_argument("not a pasting tree: " + op);
  }
  std::lock_guard lock(mu_);
  return *info_.emplace(op, std::move(in)).first->second;
}

std::vector<Code> FreeOperadMonad::sources(const Code& op) const { return info(op).sources; }
Code FreeOperadMonad::target(const Code& op) const { return info(op).flat.op; }
int FreeOperadMonad::size(const Code& op) const { return info(op).size; }
const Flattened& FreeOperadMonad::flattened(const Code& op) const { return info(op).flat; }

Code FreeOperadMonad::unitOp(const Code& s) const {
  Code out = "n(" + s + ";";
  auto src = m_->sources(s);
  for (std::size_t i = 0; i < src.size(); ++i) out += (i ? ",u(" : "u(") + src[i] + ")";
  return out + ")";
}

namespace {

// Node trees with root label among M's operations of size < total, filling
// slots with trees from `sub` so that sizes add up to `total`.
template <class Sub>
void nodeTrees(const PolyMonad& m, int total, const std::function<bool(const Code&)>& rootOk,
               std::vector<Code>& out, Sub&& sub) {
  for (int k = 0; k < total; ++k)
    for (const auto& op : m.ops(k)) {
      if (!rootOk(op)) continue;
      auto src = m.sources(op);
      std::vector<Code> kids;
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == src.size()) {
          if (left != 0) return;
          Code c = "n(" + op + ";";
          for (std::size_t j = 0; j < kids.size(); ++j) c += (j ? "," : "") + kids[j];
          out.push_back(c + ")");
          return;
        }
        for (int s = 0; s <= left; ++s)
          for (const auto& t : sub(src[i], s)) {
            kids.push_back(t);
            rec(i + 1, left - s);
            kids.pop_back();
          }
      };
      rec(0, total - 1 - k);
    }
}

}  // namespace

const std::vector<Code>& FreeOperadMonad::treesOver(const Code& s, int size) const {
  auto key = std::make_pair(s, size);
  {
    std::lock_guard lock(mu_);
    if (auto it = trees_.find(key); it != trees_.end()) return *it->second;
  }
  std::vector<Code> out;
  if (m_->baseSize(s) == size) out.push_back("u(" + s + ")");
  nodeTrees(*m_, size, [&](const Code& op) { return m_->target(op) == s; }, out,
            [this](const Code& x, int n) -> const std::vector<Code>& { return treesOver(x, n); });
  std::sort(out.begin(), out.end());
  std::lock_guard lock(mu_);
  return *trees_.emplace(key, std::make_shared<const std::vector<Code>>(std::move(out))).first->second;
}

std::vector<Code> FreeOperadMonad::ops(int size) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = strata_.find(size); it != strata_.end()) return *it->second;
  }
  std::vector<Code> out;
  if (size >= 0) {
    for (const auto& s : m_->base(size))
      if (m_->baseSize(s) == size) out.push_back("u(" + s + ")");
    nodeTrees(*m_, size, [](const Code&) { return true; }, out,
              [this](const Code& x, int n) -> const std::vector<Code>& { return treesOver(x, n); });
    std::sort(out.begin(), out.end());
  }
  std::lock_guard lock(mu_);
  return *strata_.emplace(size, std::make_shared<const std::vector<Code>>(std::move(out))).first->second;
}

Substitution FreeOperadMonad::substitute(const Code& op, const std::vector<Code>& inners) const {
  auto key = std::make_pair(op, inners);
  {
    std::lock_guard lock(mu_);
    if (auto it = subst_.find(key); it != subst_.end()) return it->second;
  }
  Substitution sub = graft(op, inners);
  std::lock_guard lock(mu_);
  return subst_.emplace(std::move(key), std::move(sub)).first->second;
}

Substitution FreeOperadMonad::graft(const Code& op, const std::vector<Code>& inners) const {
  PastingTree outer = PastingTree::parse(op);
  if (inners.size() != outer.nodes())
    throw std::invalid_argument("substitute: " + op + " has " + std::to_string(outer.nodes()) +
                                " nodes, got " + std::to_string(inners.size()) + " operations");
  Substitution sub;
  sub.positions.resize(inners.size());
  std::size_t emitted = 0;

  std::function<PastingTree(const PastingTree&, std::size_t)> place =
      [&](const PastingTree& n, std::size_t d) -> PastingTree {
    if (n.isUnit()) return n;
    if (target(inners[d]) != n.label)
      throw std::invalid_argument("substitute: " + inners[d] + " does not have target " + n.label);
    std::vector<std::size_t> childIdx;
    std::size_t next = d + 1;
    for (const auto& c : n.children) {
      childIdx.push_back(next);
      next += c.nodes();
    }
    const auto& lp = flattened(inners[d]).leafPosition;
    PastingTree in = PastingTree::parse(inners[d]);
    std::size_t leaf = 0;
    std::function<PastingTree(const PastingTree&)> copy = [&](const PastingTree& t) -> PastingTree {
      if (t.isUnit()) {
        std::size_t slot = lp.at(leaf++);
        return place(n.children.at(slot), childIdx.at(slot));
      }
      sub.positions[d].push_back(emitted++);
      PastingTree r;
      r.label = t.label;
      for (const auto& c : t.children) r.children.push_back(copy(c));
      return r;
    };
    return copy(in);
  };
  sub.op = place(outer, 0).print();
  return sub;
}

std::shared_ptr<const FreeOperadMonad> freeOperadMonad(MonadPtr m) {
  return std::make_shared<const FreeOperadMonad>(std::move(m));
}

MonadPtr leinsterMonad(int k) {
  static std::mutex mu;
  static std::vector<MonadPtr> tower;
  std::lock_guard lock(mu);
  if (tower.empty()) tower.push_back(identityMonad({"pt"}));
  while (static_cast<int>(tower.size()) <= k) tower.push_back(freeOperadMonad(tower.back()));
  return tower.at(k);
}

// ---------------------------------------------------------------------------

NestedStage nestedSequenceStage(const PolyMonad& m, const Family& a, int k, int maxSize) {
  std::vector<Code> window = m.base(maxSize);
  std::map<Code, int> sizeOf;
  std::map<Code, Code> fibre;
  NestedStage st;
  for (const auto& s : window) {
    Code c = "u(" + s + ")";
    sizeOf[c] = m.baseSize(s);
    fibre[c] = s;
    st.d[c] = m.unitOp(s);
  }
  std::vector<Element> aEls(a.elements().begin(), a.elements().end());
  for (int stage = 0; stage < k; ++stage) {
    std::map<Code, std::vector<Code>> byFibre;
    for (const auto& [c, s] : fibre) byFibre[s].push_back(c);
    std::map<Code, int> nextSize;
    std::map<Code, Code> nextFibre, nextD;
    for (const auto& s : window) {
      Code c = "u(" + s + ")";
      nextSize[c] = sizeOf[c];
      nextFibre[c] = s;
      nextD[c] = st.d[c];
    }
    for (const auto& el : aEls) {
      const Code& op = el.fiber;
      Code t = m.target(op);
      if (std::find(window.begin(), window.end(), t) == window.end()) continue;
      auto src = m.sources(op);
      int base = 1 + m.size(op);
      std::vector<Code> kids;
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == src.size()) {
          Code c = "n(" + el.code + ";";
          std::vector<Code> inner;
          for (std::size_t j = 0; j < kids.size(); ++j) {
            c += (j ? "," : "") + kids[j];
            inner.push_back(st.d.at(kids[j]));
          }
          c += ")";
          nextSize[c] = used;
          nextFibre[c] = t;
          nextD[c] = m.substitute(op, inner).op;
          return;
        }
        for (const auto& ch : byFibre[src[i]]) {
          int s = sizeOf.at(ch);
          if (used + s > maxSize) continue;
          kids.push_back(ch);
          rec(i + 1, used + s);
          kids.pop_back();
        }
      };
      if (base <= maxSize) rec(0, base);
    }
    sizeOf = std::move(nextSize);
    fibre = std::move(nextFibre);
    st.d = std::move(nextD);
  }
  std::vector<Element> els;
  for (const auto& [c, s] : fibre) els.push_back({c, s});
  std::vector<Code> sortedWindow = window;
  std::sort(sortedWindow.begin(), sortedWindow.end());
  st.elements = Family(sortedWindow, std::move(els));
  return st;
}

}  // namespace opetope
