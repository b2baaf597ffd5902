#include "opetope/symcat_checks.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "opetope/slice.hpp"

namespace opetope {

namespace {

// Planar arrows of size <= bound, by target.
struct ArrowIndex {
  std::map<Code, std::vector<Code>> byTarget;
  std::vector<Code> all;

  ArrowIndex(const SymMulticat& q, int bound) {
    for (int s = 0; s <= bound; ++s)
      for (const auto& p : q.planarArrows(s)) {
        byTarget[q.planarTarget(p)].push_back(p);
        all.push_back(p);
      }
  }
  const std::vector<Code>& withTarget(const Code& x) const {
    static const std::vector<Code> none;
    auto it = byTarget.find(x);
    return it == byTarget.end() ? none : it->second;
  }
};

// Every tuple of planar arrows with the given targets whose sizes sum to at
// most budget.
void forEachTuple(const SymMulticat& q, const ArrowIndex& idx, const std::vector<Code>& targets,
                  int budget, const std::function<void(const std::vector<Code>&, int)>& fn) {
  std::vector<Code> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == targets.size()) {
      fn(cur, budget - left);
      return;
    }
    for (const auto& g : idx.withTarget(targets[i])) {
      int s = q.arrowSize(g);
      if (s > left) continue;
      cur.push_back(g);
      rec(i + 1, left - s);
      cur.pop_back();
    }
  };
  rec(0, budget);
}

std::vector<Perm> permsUpTo(std::size_t k, std::size_t maxArity) {
  if (k > maxArity) return {Perm::identity(k)};
  return allPerms(k);
}

std::string showArgs(std::span<const Arrow> gs) {
  std::string s = "(";
  for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? ", " : "") + gs[i].str();
  return s + ")";
}

std::vector<Arrow> planarArrows(const SymMulticat& q, const std::vector<Code>& codes) {
  std::vector<Arrow> out;
  for (const auto& c : codes) out.push_back(q.planarArrow(c));
  return out;
}

class AxiomChecker {
 public:
  AxiomChecker(const SymMulticat& q, Report& rep)
      : q_(q),
        slice_(dynamic_cast<const Slice*>(&q)),
        units_(rep.add("axiom 1: units")),
        assoc_(rep.add("axiom 2: associativity")),
        action_(rep.add("axiom 3: group action")),
        equi4_(rep.add("axiom 4: equivariance in the outer arrow")),
        equi5_(rep.add("axiom 5: equivariance in the arguments")),
        shape_(rep.add("composite sources and target")),
        graft_(rep.add("slice: graft-then-comb twist matches evaluation")) {}

  template <class Fn>
  void guard(CheckResult& r, const std::string& what, Fn&& fn) {
    ++r.cases;
    try {
      if (!fn()) r.fail(what);
    } catch (const std::exception& e) {
      r.fail(what + " threw: " + e.what());
    }
  }

  void units(const Arrow& f) {
    guard(units_, "1 o " + f.str(), [&] {
      std::vector<Arrow> one{f};
      return q_.compose(q_.identityOf(q_.target(f)), one) == f;
    });
    guard(units_, f.str() + " o 1", [&] {
      std::vector<Arrow> ids;
      for (const auto& s : q_.sources(f)) ids.push_back(q_.identityOf(s));
      return q_.compose(f, ids) == f;
    });
  }

  void action(const Arrow& f, const Perm& s, const Perm& t) {
    guard(action_, "(" + f.str() + "." + s.str() + ")." + t.str(), [&] {
      return q_.act(q_.act(f, s), t) == q_.act(f, composePerm(s, t)) &&
             q_.act(f, Perm::identity(s.degree())) == f;
    });
  }

  // Composite of planar p with gs, or nothing (recorded) if it throws.
  std::optional<Arrow> tryCompose(const Code& p, const std::vector<Arrow>& gs) {
    try {
      return q_.compose(q_.planarArrow(p), gs);
    } catch (const std::exception& e) {
      ++shape_.cases;
      shape_.fail(p + " o " + showArgs(gs) + " threw: " + e.what());
      return std::nullopt;
    }
  }

  // p planar, gs planar, fitting p's sources.
  void shape(const Code& p, const std::vector<Arrow>& gs, const Arrow& r) {
    guard(shape_, p + " o " + showArgs(gs), [&] {
      std::vector<Code> src;
      for (const auto& g : gs) {
        auto s = q_.sources(g);
        src.insert(src.end(), s.begin(), s.end());
      }
      return q_.sources(r) == src && q_.target(r) == q_.planarTarget(p);
    });
    if (!slice_) return;
    bool planarArgs = true;
    for (const auto& g : gs) planarArgs = planarArgs && g.perm.isIdentity();
    if (!planarArgs) return;
    guard(graft_, p + " o " + showArgs(gs), [&] {
      std::vector<Code> codes;
      for (const auto& g : gs) codes.push_back(g.planar);
      auto [a, rho] = slice_->graftAndComb(p, codes);
      return a == r && rho == slice_->rhoOf(a.planar);
    });
  }

  void equi4(const Code& p, const std::vector<Arrow>& gs, const Perm& s, const Arrow& pg) {
    guard(equi4_, "(" + p + "." + s.str() + ") o permuted " + showArgs(gs), [&] {
      std::vector<Arrow> h(gs.size());
      std::vector<std::size_t> ar;
      for (std::size_t i = 0; i < gs.size(); ++i) h[i] = gs[s(i)];
      for (const auto& g : gs) ar.push_back(g.perm.degree());
      Arrow lhs = q_.compose(Arrow{p, s}, h);
      return lhs == q_.act(pg, blockPerm(s, ar));
    });
  }

  void equi5(const Code& p, const std::vector<Arrow>& gs, const std::vector<Perm>& ts,
             const Arrow& pg) {
    guard(equi5_, p + " o twisted " + showArgs(gs), [&] {
      std::vector<Arrow> h;
      for (std::size_t i = 0; i < gs.size(); ++i) h.push_back(q_.act(gs[i], ts[i]));
      return q_.compose(q_.planarArrow(p), h) == q_.act(pg, juxtaposePerms(ts));
    });
  }

  // f o (g_i o h_i) against (f o g) o h, h split into blocks by arity of g_i.
  void assoc(const Arrow& f, const std::vector<Arrow>& gs, const std::vector<Arrow>& hs) {
    guard(assoc_, f.str() + " o " + showArgs(gs) + " o " + showArgs(hs), [&] {
      std::vector<Arrow> inner;
      std::size_t k = 0;
      for (const auto& g : gs) {
        std::vector<Arrow> block(hs.begin() + k, hs.begin() + k + g.perm.degree());
        k += g.perm.degree();
        inner.push_back(q_.compose(g, block));
      }
      return q_.compose(f, inner) == q_.compose(q_.compose(f, gs), hs);
    });
  }

 private:
  const SymMulticat& q_;
  const Slice* slice_;
  CheckResult& units_;
  CheckResult& assoc_;
  CheckResult& action_;
  CheckResult& equi4_;
  CheckResult& equi5_;
  CheckResult& shape_;
  CheckResult& graft_;
};

// All tuples of permutations, one per arity, capped by maxPermArity.
void forEachPermTuple(const std::vector<std::size_t>& arities, std::size_t maxArity,
                      const std::function<void(const std::vector<Perm>&)>& fn) {
  std::vector<Perm> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == arities.size()) {
      fn(cur);
      return;
    }
    for (const auto& p : permsUpTo(arities[i], maxArity)) {
      cur.push_back(p);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

Perm randomPerm(std::size_t k, std::mt19937_64& rng) {
  std::vector<int> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<int>(i);
  for (std::size_t i = k; i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return Perm(v);
}

}  // namespace

Report checkAxioms(const SymMulticat& q, const AxiomCheckConfig& cfg) {
  Report rep;
  rep.subject = q.name();
  AxiomChecker ck(q, rep);
  auto& freeAction = rep.add("free action");
  ++freeAction.cases;
  for (const auto& [p, s] : q.stabilizerWitnesses(cfg.randomSize))
    freeAction.fail(p + "." + s.str() + " = " + p);

  const int B = cfg.exhaustiveSize;
  ArrowIndex idx(q, B);
  for (const auto& p : idx.all) {
    const int ps = q.arrowSize(p);
    const auto src = q.planarSources(p);
    const auto sigmas = permsUpTo(src.size(), cfg.maxPermArity);
    for (const auto& s : sigmas) {
      Arrow f{p, s};
      ck.units(f);
      for (const auto& t : sigmas) ck.action(q.planarArrow(p), s, t);
    }
    forEachTuple(q, idx, src, B - ps, [&](const std::vector<Code>& gcodes, int used) {
      auto gs = planarArrows(q, gcodes);
      auto composed = ck.tryCompose(p, gs);
      if (!composed) return;
      const Arrow& pg = *composed;
      ck.shape(p, gs, pg);
      for (const auto& s : sigmas) ck.equi4(p, gs, s, pg);
      std::vector<std::size_t> ar;
      for (const auto& g : gs) ar.push_back(g.perm.degree());
      forEachPermTuple(ar, cfg.maxPermArity, [&](const std::vector<Perm>& ts) {
        ck.equi5(p, gs, ts, pg);
        std::vector<Arrow> twisted;
        for (std::size_t i = 0; i < gs.size(); ++i) twisted.push_back(q.act(gs[i], ts[i]));
        if (auto r = ck.tryCompose(p, twisted)) ck.shape(p, twisted, *r);
      });
      forEachTuple(q, idx, q.sources(pg), B - ps - used, [&](const std::vector<Code>& hcodes, int) {
        ck.assoc(q.planarArrow(p), gs, planarArrows(q, hcodes));
      });
    });
  }

  // Random instances: every piece drawn independently at size <= randomSize,
  // identities always available.
  ArrowIndex big(q, cfg.randomSize);
  std::mt19937_64 rng(cfg.seed);
  auto draw = [&](const Code& x) {
    const auto& pool = big.withTarget(x);
    std::size_t n = pool.size() + 1;
    std::size_t k = rng() % n;
    Arrow a = k == pool.size() ? q.identityOf(x) : q.planarArrow(pool[k]);
    return q.act(a, randomPerm(a.perm.degree(), rng));
  };
  for (int t = 0; t < cfg.trials && !big.all.empty(); ++t) {
    const Code& p = big.all[rng() % big.all.size()];
    Perm s = randomPerm(q.arity(p), rng);
    Arrow f{p, s};
    ck.units(f);
    ck.action(q.planarArrow(p), s, randomPerm(s.degree(), rng));
    std::vector<Arrow> gs;
    for (const auto& x : q.sources(f)) gs.push_back(draw(x));
    std::vector<Arrow> hs;
    std::vector<Code> mid;
    for (const auto& g : gs) {
      auto gsrc = q.sources(g);
      mid.insert(mid.end(), gsrc.begin(), gsrc.end());
    }
    for (const auto& x : mid) hs.push_back(draw(x));
    ck.assoc(f, gs, hs);

    // Equivariance on a planar outer arrow with planar arguments.
    std::vector<Arrow> pgs;
    for (const auto& x : q.planarSources(p)) pgs.push_back(q.planarArrow(draw(x).planar));
    auto composed = ck.tryCompose(p, pgs);
    if (!composed) continue;
    const Arrow& pg = *composed;
    ck.shape(p, pgs, pg);
    ck.equi4(p, pgs, s, pg);
    std::vector<Perm> ts;
    for (const auto& g : pgs) ts.push_back(randomPerm(g.perm.degree(), rng));
    ck.equi5(p, pgs, ts, pg);
  }
  return rep;
}

std::vector<SkeletalClass> skeletalizeObjects(const SymMulticat& q, std::span<const Arrow> arrows) {
  std::map<Code, SkeletalClass> classes;
  int bound = 0;
  for (const auto& a : arrows) {
    auto [p, s] = q.planarRep(a);
    auto& c = classes[p];
    c.planar = p;
    c.members.emplace_back(a, s);
    bound = std::max(bound, q.arrowSize(p));
  }
  for (const auto& [p, s] : q.stabilizerWitnesses(bound))
    if (classes.count(p))
      throw NotTidy("not tidy: " + p + "." + s.str() + " = " + p +
                    " is a nontrivial automorphism in elt(" + q.name() + ")");
  std::vector<SkeletalClass> out;
  for (auto& [p, c] : classes) {
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

MulticatPtr skeletalize(MulticatPtr q, int checkBound) {
  auto w = q->stabilizerWitnesses(checkBound);
  if (!w.empty())
    throw NotTidy("not tidy: " + w.front().first + "." + w.front().second.str() + " = " +
                  w.front().first);
  auto objs = q->objects(checkBound);
  std::set<Code> seen(objs.begin(), objs.end());
  if (seen.size() != objs.size()) throw NotTidy("object codes are not unique");
  for (int s = 0; s <= checkBound; ++s) {
    auto ps = q->planarArrows(s);
    std::set<Code> uniq(ps.begin(), ps.end());
    if (uniq.size() != ps.size()) throw NotTidy("planar codes are not unique");
    for (const auto& p : ps) {
      auto [rep, perm] = q->planarRep(q->planarArrow(p));
      if (rep != p || !perm.isIdentity()) throw NotTidy("planar representative of " + p + " moves");
    }
  }
  return q;
}

namespace {

std::vector<Arrow> allArrows(const SymMulticat& q, int bound, std::size_t maxArity) {
  std::vector<Arrow> out;
  for (int s = 0; s <= bound; ++s)
    for (const auto& p : q.planarArrows(s))
      for (const auto& perm : permsUpTo(q.arity(p), maxArity)) out.push_back({p, perm});
  return out;
}

using HomKey = std::pair<std::vector<Code>, Code>;

}  // namespace

Verdict isEquivalence(const SymMulticatMorphism& f, int sizeBound) {
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  constexpr std::size_t kArity = 5;
  Verdict v;
  auto fail = [&](std::string why) {
    v.ok = false;
    v.diagnostic = std::move(why);
    return v;
  };
  std::map<Code, Code> objImage;
  std::set<Code> hit;
  for (const auto& x : src.objects(sizeBound)) {
    Code y = f.objectMap(x);
    if (!hit.insert(y).second) return fail("not injective on objects: " + x + " -> " + y);
    objImage[x] = y;
  }
  for (const auto& y : tgt.objects(sizeBound))
    if (!hit.count(y)) return fail("not surjective on objects: " + y + " is missed");

  std::map<Arrow, Arrow> seen;  // image -> preimage
  std::set<Arrow> images;
  for (const auto& a : allArrows(src, sizeBound, kArity)) {
    Arrow b = f(a);
    if (auto it = seen.find(b); it != seen.end())
      return fail("not faithful: " + it->second.str() + " and " + a.str() + " -> " + b.str());
    seen[b] = a;
  }
  for (const auto& b : allArrows(tgt, sizeBound, kArity)) {
    bool inImage = true;
    for (const auto& s : tgt.sources(b)) inImage = inImage && hit.count(s);
    if (!inImage || !hit.count(tgt.target(b))) continue;
    if (!seen.count(b)) return fail("not full: " + b.str() + " has no preimage");
  }
  return v;
}

Report checkMorphism(const SymMulticatMorphism& f, int sizeBound) {
  Report rep;
  const auto& q = *f.source;
  const auto& r = *f.target;
  rep.subject = q.name() + " -> " + r.name();
  auto& ids = rep.add("identities");
  for (const auto& x : q.objects(sizeBound)) {
    ++ids.cases;
    try {
      if (f(q.identityOf(x)) != r.identityOf(f.objectMap(x))) ids.fail("1_" + x);
    } catch (const std::exception& e) {
      ids.fail(x + ": " + e.what());
    }
  }
  auto& shape = rep.add("sources and targets");
  auto& comp = rep.add("composition");
  ArrowIndex idx(q, sizeBound);
  for (const auto& p : idx.all) {
    ++shape.cases;
    try {
      Arrow fp = f.planarMap(p);
      std::vector<Code> mapped;
      for (const auto& s : q.planarSources(p)) mapped.push_back(f.objectMap(s));
      if (r.sources(fp) != mapped || r.target(fp) != f.objectMap(q.planarTarget(p)))
        shape.fail(p + " -> " + fp.str());
    } catch (const std::exception& e) {
      shape.fail(p + ": " + e.what());
    }
    forEachTuple(q, idx, q.planarSources(p), sizeBound - q.arrowSize(p),
                 [&](const std::vector<Code>& gcodes, int) {
                   ++comp.cases;
                   auto gs = planarArrows(q, gcodes);
                   try {
                     std::vector<Arrow> fg;
                     for (const auto& g : gs) fg.push_back(f(g));
                     if (f(q.compose(q.planarArrow(p), gs)) != r.compose(f(q.planarArrow(p)), fg))
                       comp.fail(p + " o " + showArgs(gs));
                   } catch (const std::exception& e) {
                     comp.fail(p + " o " + showArgs(gs) + ": " + e.what());
                   }
                 });
  }
  return rep;
}

}  // namespace opetope
