#include "opetope/monad_checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace opetope {

namespace {

std::string joinCodes(const std::vector<Code>& v) {
  std::string s;
  for (const auto& c : v) s += (s.empty() ? "" : ",") + c;
  return s;
}

std::string showPositions(const std::vector<std::vector<std::size_t>>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < p[i].size(); ++j) s += (j ? "," : "") + std::to_string(p[i][j]);
    s += "]";
  }
  return s + "]";
}

/// Operations up to a size bound, grouped by target.
struct OpIndex {
  std::vector<Code> all;
  std::map<Code, std::vector<std::pair<Code, int>>> byTarget;

  OpIndex(const PolyMonad& m, int bound) {
    for (int s = 0; s <= bound; ++s)
      for (const auto& op : m.ops(s)) {
        all.push_back(op);
        byTarget[m.target(op)].push_back({op, s});
      }
  }
  const std::vector<std::pair<Code, int>>& over(const Code& s) const {
    static const std::vector<std::pair<Code, int>> none;
    auto it = byTarget.find(s);
    return it == byTarget.end() ? none : it->second;
  }
};

/// Calls fn(ops, used) for every choice of one operation per source whose
/// sizes add up to at most budget. Returns false once fn returns false.
bool forEachFilling(const OpIndex& idx, const std::vector<Code>& sources, int budget,
                    const std::function<bool(const std::vector<Code>&, int)>& fn) {
  std::vector<Code> pick;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) -> bool {
    if (i == sources.size()) return fn(pick, used);
    for (const auto& [op, s] : idx.over(sources[i])) {
      if (used + s > budget) continue;
      pick.push_back(op);
      bool go = rec(i + 1, used + s);
      pick.pop_back();
      if (!go) return false;
    }
    return true;
  };
  return rec(0, 0);
}

/// A random operation with target s, or empty if there is none.
Code randomOver(const OpIndex& idx, const Code& s, std::mt19937_64& rng) {
  const auto& v = idx.over(s);
  return v.empty() ? Code{} : v[rng() % v.size()].first;
}

std::optional<std::vector<Code>> randomFilling(const OpIndex& idx, const std::vector<Code>& sources,
                                               std::mt19937_64& rng) {
  std::vector<Code> out;
  for (const auto& s : sources) {
    Code c = randomOver(idx, s, rng);
    if (c.empty()) return std::nullopt;
    out.push_back(c);
  }
  return out;
}

bool isBijectionOnto(const std::vector<std::vector<std::size_t>>& pos, std::size_t n) {
  std::vector<int> hit(n, 0);
  for (const auto& row : pos)
    for (auto p : row)
      if (p >= n || hit[p]++) return false;
  return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

// ---------------------------------------------------------------------------
// Monad laws

const std::size_t kExhaustiveCap = 200000;

void checkNesting(const PolyMonad& m, const Code& f, const std::vector<Code>& g,
                  const std::vector<std::vector<Code>>& h, CheckResult& shape, CheckResult& assoc) {
  std::string where = f + " <- (" + joinCodes(g) + ")";
  Substitution a = m.substitute(f, g);
  auto srcA = m.sources(a.op);
  ++shape.cases;
  bool shapeOk = m.target(a.op) == m.target(f) && a.positions.size() == g.size() &&
                 isBijectionOnto(a.positions, srcA.size());
  if (shapeOk)
    for (std::size_t i = 0; i < g.size() && shapeOk; ++i) {
      auto srcG = m.sources(g[i]);
      if (a.positions[i].size() != srcG.size()) shapeOk = false;
      for (std::size_t j = 0; shapeOk && j < srcG.size(); ++j)
        if (srcA[a.positions[i][j]] != srcG[j]) shapeOk = false;
    }
  if (!shapeOk) {
    shape.fail(where + " gives " + a.op + " with positions " + showPositions(a.positions));
    return;
  }

  // (f.g).h
  std::vector<Code> flat(srcA.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < h[i].size(); ++j) flat[a.positions[i][j]] = h[i][j];
  Substitution left = m.substitute(a.op, flat);
  // f.(g.h)
  std::vector<Substitution> b;
  std::vector<Code> gh;
  for (std::size_t i = 0; i < g.size(); ++i) {
    b.push_back(m.substitute(g[i], h[i]));
    gh.push_back(b.back().op);
  }
  Substitution right = m.substitute(f, gh);

  ++assoc.cases;
  std::string all = where + " <- (";
  for (std::size_t i = 0; i < h.size(); ++i) all += (i ? ";" : "") + joinCodes(h[i]);
  all += ")";
  if (left.op != right.op) {
    assoc.fail(all + ": " + left.op + " vs " + right.op);
    return;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < h[i].size(); ++j)
      for (std::size_t k = 0; k < b[i].positions[j].size(); ++k) {
        std::size_t l = left.positions[a.positions[i][j]][k];
        std::size_t r = right.positions[i][b[i].positions[j][k]];
        if (l != r) {
          assoc.fail(all + ": source " + std::to_string(k) + " of " + h[i][j] + " lands at " +
                     std::to_string(l) + " vs " + std::to_string(r));
          return;
        }
      }
}

template <class Fn>
void guarded(CheckResult& r, const std::string& where, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    ++r.cases;
    r.fail(where + ": " + e.what());
  }
}

}  // namespace

Report checkMonadLaws(const PolyMonad& m, const MonadCheckConfig& cfg) {
  Report rep;
  rep.subject = m.name();
  OpIndex idx(m, cfg.sizeBound);
  auto& unitL = rep.add("unit law: unit . op = op");
  auto& unitR = rep.add("unit law: op . units = op");
  auto& shape = rep.add("composite sources and target");
  auto& assoc = rep.add("associativity");

  for (const auto& op : idx.all) {
    guarded(unitL, op, [&] {
      ++unitL.cases;
      Substitution s = m.substitute(m.unitOp(m.target(op)), {op});
      std::vector<std::vector<std::size_t>> id(1);
      for (std::size_t i = 0; i < m.arity(op); ++i) id[0].push_back(i);
      if (s.op != op || s.positions != id) unitL.fail(op + " gives " + s.op + " " + showPositions(s.positions));
    });
    guarded(unitR, op, [&] {
      ++unitR.cases;
      std::vector<Code> units;
      std::vector<std::vector<std::size_t>> id;
      auto src = m.sources(op);
      for (std::size_t i = 0; i < src.size(); ++i) {
        units.push_back(m.unitOp(src[i]));
        id.push_back({i});
      }
      Substitution s = m.substitute(op, units);
      if (s.op != op || s.positions != id) unitR.fail(op + " gives " + s.op + " " + showPositions(s.positions));
    });
  }

  // every nesting f <- g_i <- h_ij with total size within the bound
  std::size_t cases = 0;
  for (const auto& f : idx.all) {
    int sf = m.size(f);
    bool go = forEachFilling(idx, m.sources(f), cfg.sizeBound - sf, [&](const std::vector<Code>& g, int used) {
      int left = cfg.sizeBound - sf - used;
      std::vector<std::vector<Code>> h(g.size());
      std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int budget) -> bool {
        if (i == g.size()) {
          guarded(assoc, f, [&] { checkNesting(m, f, g, h, shape, assoc); });
          return ++cases < kExhaustiveCap;
        }
        return forEachFilling(idx, m.sources(g[i]), budget, [&](const std::vector<Code>& hi, int u) {
          h[i] = hi;
          return rec(i + 1, budget - u);
        });
      };
      return rec(0, left);
    });
    if (!go) break;
  }

  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < cfg.trials && !idx.all.empty(); ++t) {
    const Code& f = idx.all[rng() % idx.all.size()];
    auto g = randomFilling(idx, m.sources(f), rng);
    if (!g) continue;
    std::vector<std::vector<Code>> h;
    bool ok = true;
    for (const auto& gi : *g) {
      auto hi = randomFilling(idx, m.sources(gi), rng);
      if (!hi) {
        ok = false;
        break;
      }
      h.push_back(*hi);
    }
    if (ok) guarded(assoc, f, [&] { checkNesting(m, f, *g, h, shape, assoc); });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cartesianness

namespace {

struct TestMap {
  Family from, to;
  std::map<Code, Code> fn;
};

Family familyOver(const std::vector<Code>& base, const std::string& prefix, const std::vector<Code>& fibres) {
  std::vector<Element> els;
  for (std::size_t i = 0; i < fibres.size(); ++i) els.push_back({prefix + std::to_string(i), fibres[i]});
  return Family(base, std::move(els));
}

/// All maps X -> Y with |X|, |Y| <= n and fibres among `objects`, up to
/// renaming elements.
std::vector<TestMap> smallMaps(const std::vector<Code>& base, const std::vector<Code>& objects, std::size_t n) {
  std::vector<TestMap> out;
  std::vector<std::size_t> yf;
  std::function<void(std::size_t)> ys = [&](std::size_t start) {
    std::vector<Code> fib;
    for (auto i : yf) fib.push_back(objects[i]);
    Family y = familyOver(base, "y", fib);
    std::vector<std::size_t> xs;
    std::function<void(std::size_t)> xrec = [&](std::size_t from) {
      std::vector<Code> xfib;
      std::map<Code, Code> fn;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        xfib.push_back(fib[xs[k]]);
        fn["x" + std::to_string(k)] = "y" + std::to_string(xs[k]);
      }
      out.push_back({familyOver(base, "x", xfib), y, fn});
      if (xs.size() == n) return;
      for (std::size_t j = from; j < fib.size(); ++j) {
        xs.push_back(j);
        xrec(j);
        xs.pop_back();
      }
    };
    xrec(0);
    if (yf.size() == n) return;
    for (std::size_t i = start; i < objects.size(); ++i) {
      yf.push_back(i);
      ys(i);
      yf.pop_back();
    }
  };
  ys(0);
  return out;
}

TestMap randomMap(const std::vector<Code>& base, const std::vector<Code>& objects, std::size_t n,
                  std::mt19937_64& rng) {
  std::vector<Code> yfib;
  std::size_t ny = 1 + rng() % n;
  for (std::size_t i = 0; i < ny; ++i) yfib.push_back(objects[rng() % objects.size()]);
  std::size_t nx = rng() % (n + 1);
  std::vector<Code> xfib;
  std::map<Code, Code> fn;
  for (std::size_t i = 0; i < nx; ++i) {
    std::size_t j = rng() % ny;
    xfib.push_back(yfib[j]);
    fn["x" + std::to_string(i)] = "y" + std::to_string(j);
  }
  return {familyOver(base, "x", xfib), familyOver(base, "y", yfib), fn};
}

/// Number of elements applyT(m, x, bound) would have.
std::size_t countT(const std::vector<Code>& ops, const PolyMonad& m, const Family& x) {
  std::map<Code, std::size_t> n;
  for (const auto& e : x.elements()) ++n[e.fiber];
  std::set<Code> base(x.base().begin(), x.base().end());
  std::size_t total = 0;
  for (const auto& op : ops) {
    if (!base.count(m.target(op))) continue;
    std::size_t p = 1;
    for (const auto& s : m.sources(op)) {
      auto it = n.find(s);
      p = it == n.end() ? 0 : p * it->second;
      if (p == 0 || p > (1u << 30)) break;
    }
    total += p;
  }
  return total;
}

int maxOpSize(const PolyMonad& m, const Family& tx) {
  int b = 0;
  for (const auto& e : tx.elements()) b = std::max(b, m.size(tElementParts(e.code).first));
  return b;
}

void recordSquare(CheckResult& r, const Square& sq, const std::string& where) {
  ++r.cases;
  Verdict v = isPullbackSquare(sq);
  if (!v.ok) r.fail(where + ": " + v.diagnostic);
}

std::string describe(const TestMap& f) {
  std::string s = "{";
  for (const auto& e : f.from.elements()) s += e.code + ":" + e.fiber + "->" + f.fn.at(e.code) + ",";
  for (const auto& e : f.to.elements()) s += e.code + ":" + e.fiber + ",";
  return s + "}";
}

class CartesianChecker {
 public:
  CartesianChecker(const PolyMonad& m, const MonadCheckConfig& cfg, Report& rep)
      : m_(m), cfg_(cfg),
        eta_(rep.add("eta naturality squares are pullbacks")),
        mu_(rep.add("mu naturality squares are pullbacks")),
        tpb_(rep.add("T preserves pullback squares")) {
    for (int b = 0; b <= cfg.sizeBound; ++b) opsUpTo_.push_back(m.opsUpTo(b));
    for (const auto& s : m.base(cfg.sizeBound)) unitBound_ = std::max(unitBound_, m.size(m.unitOp(s)));
  }

  void etaSquare(const TestMap& t) {
    guarded(eta_, describe(t), [&] {
      FamilyArrow f = makeArrow(t.from, t.to, t.fn);
      FamilyArrow ex = unitComponent(m_, t.from), ey = unitComponent(m_, t.to);
      FamilyArrow tf = applyTMap(m_, f, unitBound_);
      recordSquare(eta_, {ex.map, f.map, tf.map, ey.map}, describe(t));
    });
  }

  void muSquare(const TestMap& t) {
    guarded(mu_, describe(t), [&] {
      // largest bound where T(T(X)) and T(T(Y)) fit under the cap
      auto fits = [&](const Family& x, int b) {
        if (countT(opsUpTo_[b], m_, x) > cfg_.elementCap) return false;
        return countT(opsUpTo_[b], m_, applyT(m_, x, b)) <= cfg_.elementCap;
      };
      int b = cfg_.sizeBound;
      while (b > 0 && !(fits(t.from, b) && fits(t.to, b))) --b;
      FamilyArrow f = makeArrow(t.from, t.to, t.fn);
      FamilyArrow muY = multComponent(m_, t.to, b);
      int cut = maxOpSize(m_, muY.to);
      FamilyArrow muX = multComponent(m_, t.from, b, cut);
      if (maxOpSize(m_, muX.to) > cut) throw std::logic_error("codomain cut grew");
      FamilyArrow tf = applyTMap(m_, f, cut);
      FamilyArrow ttf = applyTMap(m_, applyTMap(m_, f, b), b);
      recordSquare(mu_, {muX.map, ttf.map, tf.map, muY.map}, describe(t) + " at size " + std::to_string(b));
    });
  }

  /// The pullback of g: B -> D and h: C -> D, then T of the square.
  void pullbackSquare(const TestMap& g, const TestMap& h) {
    std::string where = describe(g) + " x " + describe(h);
    guarded(tpb_, where, [&] {
      std::vector<Element> els;
      std::map<Code, Code> top, left;
      for (const auto& b : g.from.elements())
        for (const auto& c : h.from.elements())
          if (g.fn.at(b.code) == h.fn.at(c.code)) {
            Code a = pairCode(b.code, c.code);
            els.push_back({a, b.fiber});
            top[a] = b.code;
            left[a] = c.code;
          }
      Family a(g.from.base(), els);
      FamilyArrow ftop = makeArrow(a, g.from, top), fleft = makeArrow(a, h.from, left);
      FamilyArrow fright = makeArrow(g.from, g.to, g.fn), fbottom = makeArrow(h.from, h.to, h.fn);
      int b = cfg_.sizeBound;
      while (b > 0 && std::max({countT(opsUpTo_[b], m_, a), countT(opsUpTo_[b], m_, g.from),
                                countT(opsUpTo_[b], m_, h.from), countT(opsUpTo_[b], m_, g.to)}) > cfg_.elementCap)
        --b;
      recordSquare(tpb_,
                   {applyTMap(m_, ftop, b).map, applyTMap(m_, fleft, b).map, applyTMap(m_, fright, b).map,
                    applyTMap(m_, fbottom, b).map},
                   where);
    });
  }

 private:
  const PolyMonad& m_;
  const MonadCheckConfig& cfg_;
  CheckResult& eta_;
  CheckResult& mu_;
  CheckResult& tpb_;
  std::vector<std::vector<Code>> opsUpTo_;
  int unitBound_ = 0;
};

/// A second map into the same codomain, with its own element names.
TestMap randomMapInto(const Family& d, std::size_t n, std::mt19937_64& rng) {
  std::vector<Code> fib;
  std::map<Code, Code> fn;
  if (!d.empty()) {
    std::size_t k = rng() % (n + 1);
    for (std::size_t i = 0; i < k; ++i) {
      const Element& e = d.elements()[rng() % d.size()];
      fib.push_back(e.fiber);
      fn["c" + std::to_string(i)] = e.code;
    }
  }
  return {familyOver(d.base(), "c", fib), d, fn};
}

}  // namespace

Report checkCartesian(const PolyMonad& m, const MonadCheckConfig& cfg) {
  Report rep;
  rep.subject = m.name();
  std::vector<Code> base = m.base(cfg.sizeBound);
  if (base.empty()) {
    rep.add("base window is nonempty").fail("no base objects of size <= " + std::to_string(cfg.sizeBound));
    return rep;
  }
  std::vector<Code> few(base.begin(), base.begin() + std::min(cfg.fibreObjects, base.size()));
  CartesianChecker ck(m, cfg, rep);

  auto maps = smallMaps(base, few, cfg.familySize);
  for (const auto& t : maps) {
    ck.etaSquare(t);
    ck.muSquare(t);
  }
  // cospans B -> D <- C with |D| <= 2 and |B|, |C| <= 2
  auto cospans = smallMaps(base, few, 2);
  for (const auto& g : cospans)
    for (const auto& h : cospans)
      if (h.to == g.to) {
        TestMap hc = h;
        std::map<Code, Code> fn;
        std::vector<Element> els;
        for (const auto& e : h.from.elements()) {
          Code c = "c" + e.code.substr(1);
          els.push_back({c, e.fiber});
          fn[c] = h.fn.at(e.code);
        }
        hc.from = Family(base, els);
        hc.fn = fn;
        ck.pullbackSquare(g, hc);
      }

  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.trials; ++i) {
    TestMap t = randomMap(base, base, cfg.familySize, rng);
    ck.etaSquare(t);
    ck.muSquare(t);
    ck.pullbackSquare(t, randomMapInto(t.to, cfg.familySize, rng));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suitability

Report checkSuitable(const PolyMonad& m, int chainLength, int sizeBound, std::uint64_t seed) {
  Report rep;
  rep.subject = m.name();
  std::vector<Code> base = m.base(sizeBound);
  auto& incl = rep.add("nested chains: T of an inclusion is an inclusion");
  auto& uni = rep.add("nested chains: T of the union is the union of the images");
  auto& empty = rep.add("empty chain");
  auto& disjoint = rep.add("coproducts are disjoint");
  auto& stable = rep.add("coproducts are stable under pullback");
  if (base.empty()) {
    incl.fail("no base objects of size <= " + std::to_string(sizeBound));
    return rep;
  }
  std::mt19937_64 rng(seed);
  const std::size_t maxElements = 6;

  auto chainCheck = [&](const std::vector<Family>& chain, CheckResult& r) {
    std::vector<Family> images;
    for (const auto& x : chain) images.push_back(applyT(m, x, sizeBound));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      ++r.cases;
      std::map<Code, Code> fn;
      for (const auto& e : chain[i].elements()) fn[e.code] = e.code;
      FamilyArrow ti = applyTMap(m, makeArrow(chain[i], chain[i + 1], fn), sizeBound);
      bool ok = ti.map.isInjective();
      for (const auto& [a, b] : ti.map.fn) ok = ok && a == b && images[i + 1].contains(a);
      if (!ok) r.fail("stage " + std::to_string(i) + " -> " + std::to_string(i + 1));
    }
    ++uni.cases;
    std::set<Code> un;
    for (const auto& t : images)
      for (const auto& e : t.elements()) un.insert(e.code);
    const Family& last = images.back();
    std::set<Code> lastCodes;
    for (const auto& e : last.elements()) lastCodes.insert(e.code);
    if (un != lastCodes) uni.fail("chain of length " + std::to_string(chain.size()));
  };

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Family> chain;
    std::vector<Element> els;
    for (int k = 0; k <= chainLength; ++k) {
      std::size_t add = els.size() >= maxElements ? 0 : rng() % 3;
      for (std::size_t i = 0; i < add && els.size() < maxElements; ++i)
        els.push_back({"x" + std::to_string(els.size()), base[rng() % base.size()]});
      chain.emplace_back(base, els);
    }
    chainCheck(chain, incl);
  }
  {
    std::vector<Family> chain(static_cast<std::size_t>(chainLength) + 1, Family(base, {}));
    chainCheck(chain, empty);
    ++empty.cases;
    Family t0 = applyT(m, chain.back(), sizeBound);
    for (const auto& e : t0.elements())
      if (m.arity(tElementParts(e.code).first) != 0) empty.fail(e.code + " has labels over the empty family");
  }

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element> xs, ys, sum;
    std::size_t nx = rng() % 4, ny = rng() % 4;
    for (std::size_t i = 0; i < nx; ++i) xs.push_back({"x" + std::to_string(i), base[rng() % base.size()]});
    for (std::size_t i = 0; i < ny; ++i) ys.push_back({"y" + std::to_string(i), base[rng() % base.size()]});
    std::map<Code, Code> inl, inr;
    for (const auto& e : xs) sum.push_back({inl[e.code] = pairCode("L", e.code), e.fiber});
    for (const auto& e : ys) sum.push_back({inr[e.code] = pairCode("R", e.code), e.fiber});
    Family x(base, xs), y(base, ys), s(base, sum);
    SetMap fl = familyMap(x, s, inl), fr = familyMap(y, s, inr);

    ++disjoint.cases;
    for (const auto& [a, ia] : fl.fn)
      for (const auto& [b, ib] : fr.fn)
        if (ia == ib) disjoint.fail(a + " and " + b + " meet");

    // a random W -> X + Y, pulled back along both coprojections
    std::vector<Element> ws;
    std::map<Code, Code> p;
    std::size_t nw = sum.empty() ? 0 : rng() % 5;
    for (std::size_t i = 0; i < nw; ++i) {
      const Element& e = sum[rng() % sum.size()];
      Code w = "w" + std::to_string(i);
      ws.push_back({w, e.fiber});
      p[w] = e.code;
    }
    Family w(base, ws);
    SetMap pw = familyMap(w, s, p);
    std::vector<Element> wl, wr;
    std::map<Code, Code> wlTop, wlLeft, wrTop, wrLeft;
    for (const auto& e : ws) {
      auto [tag, orig] = unpairCode(p[e.code]);
      if (tag == "L") {
        wl.push_back(e);
        wlTop[e.code] = e.code;
        wlLeft[e.code] = orig;
      } else {
        wr.push_back(e);
        wrTop[e.code] = e.code;
        wrLeft[e.code] = orig;
      }
    }
    Family fwl(base, wl), fwr(base, wr);
    Square sqL{familyMap(fwl, w, wlTop), familyMap(fwl, x, wlLeft), pw, fl};
    Square sqR{familyMap(fwr, w, wrTop), familyMap(fwr, y, wrLeft), pw, fr};
    recordSquare(stable, sqL, "left summand");
    recordSquare(stable, sqR, "right summand");
    ++stable.cases;
    if (wl.size() + wr.size() != ws.size()) stable.fail("W is not the sum of its pullbacks");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Opfunctors

namespace {

std::pair<Code, std::vector<Code>> applyPhi(const MonadOpfunctor& f, const Code& op, const std::vector<Code>& labels) {
  OpImage img = f.phi(op);
  std::vector<Code> moved;
  for (auto j : img.from) moved.push_back(labels.at(j));
  return {img.op, moved};
}

}  // namespace

Report checkOpfunctor(const MonadOpfunctor& f, const MonadCheckConfig& cfg) {
  const PolyMonad& s = *f.source;
  const PolyMonad& t = *f.target;
  Report rep;
  rep.subject = s.name() + " -> " + t.name();
  OpIndex idx(s, cfg.sizeBound);
  auto& shape = rep.add("phi agrees with U on sources and targets");
  auto& units = rep.add("phi preserves units");
  auto& mult = rep.add("phi preserves substitution");
  auto& nat = rep.add("phi naturality squares are pullbacks");

  for (const auto& op : idx.all)
    guarded(shape, op, [&] {
      ++shape.cases;
      OpImage img = f.phi(op);
      auto src = s.sources(op);
      auto src2 = t.sources(img.op);
      bool ok = t.target(img.op) == f.baseMap(s.target(op)) && img.from.size() == src2.size();
      for (std::size_t j = 0; ok && j < src2.size(); ++j)
        ok = img.from[j] < src.size() && src2[j] == f.baseMap(src[img.from[j]]);
      if (!ok) shape.fail(op + " -> " + img.op);
    });

  for (const auto& x : s.base(cfg.sizeBound))
    guarded(units, x, [&] {
      ++units.cases;
      OpImage img = f.phi(s.unitOp(x));
      if (img.op != t.unitOp(f.baseMap(x)) || img.from != std::vector<std::size_t>{0})
        units.fail("unit of " + x + " -> " + img.op);
    });

  // phi(f . g) against phi(f) . phi(g), with distinct labels on every slot
  std::size_t cases = 0;
  for (const auto& op : idx.all) {
    bool go = forEachFilling(idx, s.sources(op), cfg.sizeBound - s.size(op), [&](const std::vector<Code>& g, int) {
      guarded(mult, op, [&] {
        ++mult.cases;
        std::vector<std::pair<Code, std::vector<Code>>> inner;
        for (std::size_t i = 0; i < g.size(); ++i) {
          std::vector<Code> labels;
          for (std::size_t j = 0; j < s.arity(g[i]); ++j) labels.push_back(std::to_string(i) + "." + std::to_string(j));
          inner.push_back({g[i], labels});
        }
        auto composed = multiply(s, op, inner);
        auto lhs = applyPhi(f, composed.first, composed.second);

        std::vector<std::pair<Code, std::vector<Code>>> mapped;
        for (const auto& [gi, li] : inner) mapped.push_back(applyPhi(f, gi, li));
        OpImage outer = f.phi(op);
        std::vector<std::pair<Code, std::vector<Code>>> arranged;
        for (auto j : outer.from) arranged.push_back(mapped.at(j));
        auto rhs = multiply(t, outer.op, arranged);
        if (lhs != rhs)
          mult.fail(op + " <- (" + joinCodes(g) + "): " + lhs.first + "[" + joinCodes(lhs.second) + "] vs " +
                    rhs.first + "[" + joinCodes(rhs.second) + "]");
      });
      return ++cases < kExhaustiveCap;
    });
    if (!go) break;
  }

  std::vector<Code> base = s.base(cfg.sizeBound);
  if (!base.empty()) {
    std::vector<Code> few(base.begin(), base.begin() + std::min(cfg.fibreObjects, base.size()));
    std::vector<std::vector<Code>> opsUpTo;
    for (int b = 0; b <= cfg.sizeBound; ++b) opsUpTo.push_back(s.opsUpTo(b));
    auto square = [&](const TestMap& m) {
      guarded(nat, describe(m), [&] {
        int b = cfg.sizeBound;
        while (b > 0 && std::max(countT(opsUpTo[b], s, m.from), countT(opsUpTo[b], s, m.to)) > cfg.elementCap) --b;
        FamilyArrow fm = makeArrow(m.from, m.to, m.fn);
        FamilyArrow phiY = phiComponent(f, m.to, b);
        int cut = maxOpSize(t, phiY.to);
        FamilyArrow phiX = phiComponent(f, m.from, b, cut);
        FamilyArrow ut = applyTMap(s, fm, b);
        FamilyArrow utPushed = makeArrow(pushForward(f, ut.from), pushForward(f, ut.to), ut.map.fn);
        FamilyArrow uf = makeArrow(pushForward(f, m.from), pushForward(f, m.to), m.fn);
        FamilyArrow tuf = applyTMap(t, uf, cut);
        recordSquare(nat, {phiX.map, utPushed.map, tuf.map, phiY.map}, describe(m));
      });
    };
    for (const auto& m : smallMaps(base, few, std::min<std::size_t>(cfg.familySize, 3))) square(m);
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.trials; ++i) square(randomMap(base, base, 3, rng));
  }
  return rep;
}

Report checkMonadIsomorphism(const MonadOpfunctor& f, const MonadCheckConfig& cfg) {
  Report rep = checkOpfunctor(f, cfg);
  const PolyMonad& s = *f.source;
  const PolyMonad& t = *f.target;
  auto& onBase = rep.add("U is a bijection on base objects");
  auto& onOps = rep.add("phi is a size-preserving bijection on each stratum");

  for (int b = 0; b <= cfg.sizeBound; ++b) {
    guarded(onBase, "size " + std::to_string(b), [&] {
      ++onBase.cases;
      std::set<Code> image, want;
      for (const auto& x : s.base(b))
        if (s.baseSize(x) == b) image.insert(f.baseMap(x));
      for (const auto& y : t.base(b))
        if (t.baseSize(y) == b) want.insert(y);
      std::size_t n = 0;
      for (const auto& x : s.base(b)) n += s.baseSize(x) == b;
      if (image != want || image.size() != n)
        onBase.fail("base objects of size " + std::to_string(b) + ": " + std::to_string(n) + " map onto " +
                    std::to_string(image.size()) + " of " + std::to_string(want.size()));
    });
    guarded(onOps, "size " + std::to_string(b), [&] {
      ++onOps.cases;
      auto ops = s.ops(b);
      auto want = t.ops(b);
      std::set<Code> image;
      for (const auto& op : ops) {
        OpImage img = f.phi(op);
        std::vector<std::vector<std::size_t>> from{img.from};
        if (!isBijectionOnto(from, s.arity(op))) onOps.fail(op + " -> " + img.op + " moves sources non-bijectively");
        if (t.size(img.op) != b) onOps.fail(op + " -> " + img.op + " changes size");
        image.insert(img.op);
      }
      if (image.size() != ops.size() || image != std::set<Code>(want.begin(), want.end()))
        onOps.fail("stratum " + std::to_string(b) + ": " + std::to_string(ops.size()) + " operations map onto " +
                   std::to_string(image.size()) + " of " + std::to_string(want.size()));
    });
  }
  return rep;
}

}  // namespace opetope
