#include "opetope/zeta.hpp"

#include <mutex>
#include <set>

#include "opetope/parallel.hpp"
#include "opetope/slice.hpp"

namespace opetope {

namespace {

class ZetaMonad : public PolyMonad {
 public:
  explicit ZetaMonad(MulticatPtr q) : q_(std::move(q)) {}

  std::string name() const override { return "zeta(" + q_->name() + ")"; }
  std::vector<Code> base(int maxSize) const override { return q_->objects(maxSize); }
  int baseSize(const Code& s) const override { return q_->objectSize(s); }
  std::vector<Code> ops(int size) const override { return q_->planarArrows(size); }
  std::vector<Code> sources(const Code& op) const override { return q_->planarSources(op); }
  Code target(const Code& op) const override { return q_->planarTarget(op); }
  int size(const Code& op) const override { return q_->arrowSize(op); }

  Code unitOp(const Code& s) const override {
    Arrow id = q_->identityOf(s);
    if (!id.perm.isIdentity()) throw std::logic_error("identity of " + s + " is not planar");
    return id.planar;
  }

  // f o (g_1..g_k) = r.s; source j of g_i is source start_i + j of the
  // composite, which is planar source s(start_i + j) of r.
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override {
    std::vector<Arrow> gs;
    for (const auto& c : inners) gs.push_back(q_->planarArrow(c));
    Arrow r = q_->compose(q_->planarArrow(op), gs);
    Substitution sub{r.planar, {}};
    std::size_t start = 0;
    for (const auto& g : gs) {
      sub.positions.emplace_back();
      for (std::size_t j = 0; j < g.perm.degree(); ++j)
        sub.positions.back().push_back(static_cast<std::size_t>(r.perm(start + j)));
      start += g.perm.degree();
    }
    return sub;
  }

 private:
  MulticatPtr q_;
};

/// g on one tree, given g on its subtrees.
ConfigTree graftImages(const PastingTree& t, const std::function<ConfigTree(const Code&)>& below) {
  if (t.isUnit()) return ConfigTree::leaf(t.unit);
  std::vector<ConfigTree> kids;
  for (const auto& c : t.children) kids.push_back(below(c.print()));
  return ConfigTree::node(t.label, std::move(kids));
}

Code gDirect(const Code& tree) {
  std::function<ConfigTree(const Code&)> rec = [&](const Code& c) {
    return graftImages(PastingTree::parse(c), rec);
  };
  return printConfig(rec(tree));
}

}  // namespace

ZetaImage zetaObj(MulticatPtr q, int tidyBound) {
  auto w = q->stabilizerWitnesses(tidyBound);
  if (!w.empty())
    throw NotTidy(q->name() + " is not freely symmetric: " + w[0].first + "." + w[0].second.str() + " = " +
                  w[0].first);
  return {q, std::make_shared<ZetaMonad>(q), [](const Code& p) { return p; }};
}

MonadOpfunctor zetaMor(const SymMulticatMorphism& f) {
  auto src = zetaObj(f.source).monad;
  auto dst = zetaObj(f.target).monad;
  struct Memo {
    std::mutex mu;
    std::map<Code, OpImage> seen;
  };
  auto memo = std::make_shared<Memo>();
  auto planarMap = f.planarMap;
  return {src, dst, f.objectMap, [planarMap, memo](const Code& op) {
            {
              std::lock_guard lock(memo->mu);
              if (auto it = memo->seen.find(op); it != memo->seen.end()) return it->second;
            }
            Arrow a = planarMap(op);
            Perm inv = a.perm.inverse();
            OpImage img{a.planar, {}};
            for (auto v : inv.image()) img.from.push_back(static_cast<std::size_t>(v));
            std::lock_guard lock(memo->mu);
            return memo->seen.emplace(op, std::move(img)).first->second;
          }};
}

Comparison comparisonIso(MulticatPtr q, int sizeBound, const MonadCheckConfig& cfg) {
  ZetaImage z = zetaObj(q);
  auto prime = freeOperadMonad(z.monad);
  ZetaImage zp = zetaObj(slice(q));
  Comparison out;
  Report& rep = out.report;
  rep.subject = prime->name() + " vs " + zp.monad->name();

  // A: every operation of zeta(Q) once, over itself
  std::vector<Code> sPrime = z.monad->opsUpTo(sizeBound);
  std::vector<Element> aEls;
  for (const auto& op : sPrime) aEls.push_back({op, op});
  std::vector<Code> aBase = sPrime;
  std::sort(aBase.begin(), aBase.end());
  Family a(aBase, aEls);

  auto& extend = rep.add("g_k extends g_(k-1) along the coprojections");
  auto& commute = rep.add("commuting condition: target of g_k = d_k");
  std::map<Code, Code>& g = out.g;
  for (int k = 0; k <= sizeBound; ++k) {
    NestedStage st = nestedSequenceStage(*z.monad, a, k, sizeBound);
    std::map<Code, Code> gk;
    for (const auto& e : st.elements.elements()) {
      ConfigTree t = graftImages(PastingTree::parse(e.code), [&](const Code& child) {
        auto it = g.find(child);
        if (it == g.end()) throw std::logic_error("stage " + std::to_string(k) + " uses " + child + " before g");
        return parseConfig(it->second);
      });
      gk[e.code] = printConfig(t);
      ++commute.cases;
      Code tgt = zp.monad->target(gk[e.code]);
      if (tgt != st.d.at(e.code)) commute.fail(e.code + ": target " + tgt + " but d = " + st.d.at(e.code));
    }
    ++extend.cases;
    for (const auto& [c, img] : g) {
      auto it = gk.find(c);
      if (it == gk.end() || it->second != img) extend.fail("stage " + std::to_string(k) + " changes " + c);
    }
    g = std::move(gk);
  }

  auto& bij = rep.add("g is a bijection on each stratum");
  auto strata = parallelMap<std::vector<std::string>>(
      static_cast<std::size_t>(sizeBound) + 1, [&](std::size_t n) {
        std::vector<std::string> bad;
        std::set<Code> image;
        auto ops = prime->ops(static_cast<int>(n));
        for (const auto& op : ops) {
          auto it = g.find(op);
          if (it == g.end()) {
            bad.push_back(op + " is not reached by the nested sequence");
            continue;
          }
          if (!image.insert(it->second).second) bad.push_back(it->second + " is hit twice");
        }
        auto want = zp.monad->ops(static_cast<int>(n));
        if (image != std::set<Code>(want.begin(), want.end()))
          bad.push_back("stratum " + std::to_string(n) + ": " + std::to_string(image.size()) + " images, " +
                        std::to_string(want.size()) + " arrows of the slice");
        return bad;
      });
  for (const auto& bad : strata) {
    ++bij.cases;
    for (const auto& b : bad) bij.fail(b);
  }

  // sources, units, substitution, naturality, and the two base sets
  auto gm = std::make_shared<const std::map<Code, Code>>(g);
  MonadOpfunctor f{prime, zp.monad, [](const Code& s) { return s; }, [gm, prime](const Code& op) {
                     auto it = gm->find(op);
                     OpImage img{it == gm->end() ? gDirect(op) : it->second, {}};
                     for (std::size_t i = 0; i < prime->arity(op); ++i) img.from.push_back(i);
                     return img;
                   }};
  MonadCheckConfig c = cfg;
  c.sizeBound = sizeBound;
  Report iso = checkMonadIsomorphism(f, c);
  for (auto& r : iso.results) rep.results.push_back(std::move(r));
  return out;
}

}  // namespace opetope
