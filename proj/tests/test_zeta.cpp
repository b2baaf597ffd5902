#include <numeric>

#include "doctest.h"
#include "opetope/code_syntax.hpp"
#include "opetope/presentation.hpp"
#include "opetope/slice.hpp"
#include "opetope/symcat_checks.hpp"
#include "opetope/zeta.hpp"
#include "support.hpp"

using namespace opetope;
using testing_support::loadFixture;

namespace {

std::string failures(const Report& r) {
  std::string s;
  for (const auto& c : r.results)
    if (!c.ok) s += c.check + (c.counterexamples.empty() ? "" : ": " + c.counterexamples[0]) + "\n";
  return s;
}

MonadCheckConfig quick() {
  MonadCheckConfig c;
  c.sizeBound = 4;
  c.trials = 20;
  return c;
}

// Per size: sorted arities of the operations. Equal for isomorphic monads.
std::vector<std::vector<std::size_t>> shapeCounts(const PolyMonad& m, int bound) {
  std::vector<std::vector<std::size_t>> out;
  for (int n = 0; n <= bound; ++n) {
    std::vector<std::size_t> a;
    for (const auto& op : m.ops(n)) a.push_back(m.arity(op));
    std::sort(a.begin(), a.end());
    out.push_back(a);
  }
  return out;
}

// The endomorphism of the free multicategory on f:(a,b,a)->a, g:(b,b)->b,
// e:()->b that reverses the inputs of every generator.
SymMulticatMorphism reverseGenerators(MulticatPtr q) {
  auto rec = std::make_shared<std::function<Arrow(const Code&)>>();
  *rec = [q, rec](const Code& p) -> Arrow {
    CodeTerm t = splitCode(p);
    if (t.kind == CodeTerm::Kind::Unit) return q->identityOf(t.head);
    Code corolla = "n(" + t.head + ";";
    std::vector<Arrow> kids;
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      Code x = q->planarTarget(t.children[i]);
      corolla += (i ? ",u(" : "u(") + x + ")";
      kids.push_back((*rec)(t.children[i]));
    }
    corolla += ")";
    std::vector<int> rev(t.children.size());
    std::iota(rev.rbegin(), rev.rend(), 0);
    // every generator has palindromic sources, so gen.rev still takes the
    // children in their original order
    Arrow gen = q->act(q->planarArrow(corolla), Perm(rev));
    return q->compose(gen, kids);
  };
  return {q, q, [](const Code& x) { return x; }, [rec](const Code& p) { return (*rec)(p); }};
}

}  // namespace

TEST_CASE("zeta(I) is the identity monad") {
  auto z = zetaObj(theMulticatI()).monad;
  auto id = identityMonad({"pt"});
  for (int n = 0; n <= 6; ++n) CHECK(z->ops(n) == id->ops(n));
  CHECK(z->base(6) == id->base(6));
  for (std::size_t k = 0; k <= 5; ++k) {
    std::vector<Element> els;
    for (std::size_t i = 0; i < k; ++i) els.push_back({"x" + std::to_string(i), "pt"});
    Family x({"pt"}, els);
    CHECK(applyT(*z, x, 6) == applyT(*id, x, 6));
    CHECK(applyT(*z, x, 6).size() == k);
  }
  Report iso = checkMonadIsomorphism(
      {z, id, [](const Code& s) { return s; }, [](const Code& op) { return OpImage{op, {0}}; }}, quick());
  CHECK_MESSAGE(iso.ok(), failures(iso));
}

TEST_CASE("zeta(I+) is the free monoid") {
  auto z = zetaObj(slice(theMulticatI())).monad;
  auto lists = freeMonoidMonad();
  MonadOpfunctor f{z, lists, [](const Code&) { return Code("pt"); }, [z](const Code& op) {
                     std::vector<std::size_t> from(z->arity(op));
                     std::iota(from.begin(), from.end(), 0);
                     return OpImage{"list" + std::to_string(from.size()), from};
                   }};
  MonadCheckConfig cfg = quick();
  cfg.sizeBound = 6;
  Report iso = checkMonadIsomorphism(f, cfg);
  CHECK_MESSAGE(iso.ok(), failures(iso));
}

TEST_CASE("units of zeta(Q) are the identities") {
  for (int k = 0; k <= 2; ++k) {
    auto q = iteratedSlice(theMulticatI(), k);
    auto z = zetaObj(q).monad;
    for (const auto& x : q->objects(4)) CHECK(z->unitOp(x) == q->identityOf(x).planar);
  }
}

TEST_CASE("zeta(Q) satisfies the monad laws") {
  for (int k = 0; k <= 2; ++k) {
    auto z = zetaObj(iteratedSlice(theMulticatI(), k)).monad;
    Report laws = checkMonadLaws(*z, quick());
    CHECK_MESSAGE(laws.ok(), failures(laws));
  }
  auto free = buildMulticat(Presentation::fromJson(loadFixture("free_small.json")));
  Report laws = checkMonadLaws(*zetaObj(free).monad, quick());
  CHECK_MESSAGE(laws.ok(), failures(laws));
}

TEST_CASE("zeta refuses a multicategory with a stabilizer") {
  auto q = buildMulticat(Presentation::fromJson(loadFixture("nontidy.json")));
  CHECK_THROWS_AS(zetaObj(q), NotTidy);
}

TEST_CASE("zeta on morphisms") {
  auto i = theMulticatI();
  auto s = slice(i);

  SUBCASE("identity") {
    MonadOpfunctor f = zetaMor(identityMorphism(s));
    for (const auto& op : s->planarArrows(3)) {
      OpImage img = f.phi(op);
      CHECK(img.op == op);
      std::vector<std::size_t> id(s->arity(op));
      std::iota(id.begin(), id.end(), 0);
      CHECK(img.from == id);
    }
  }

  SUBCASE("I -> I+ picks the one-node configuration") {
    SymMulticatMorphism f{i, s, [](const Code&) { return Code("ar"); },
                          [s](const Code&) { return s->planarArrow("n(ar;u(pt))"); }};
    MonadOpfunctor zf = zetaMor(f);
    Report r = checkOpfunctor(zf, quick());
    CHECK_MESSAGE(r.ok(), failures(r));

    Family x({"pt"}, {{"a", "pt"}, {"b", "pt"}});
    Family y({"pt"}, {{"c", "pt"}});
    FamilyArrow m = makeArrow(x, y, {{"a", "c"}, {"b", "c"}});
    FamilyArrow phiY = phiComponent(zf, y, 2);
    FamilyArrow phiX = phiComponent(zf, x, 2, 1);
    FamilyArrow ut = applyTMap(*zf.source, m, 2);
    FamilyArrow uf = makeArrow(pushForward(zf, x), pushForward(zf, y), {{"a", "c"}, {"b", "c"}});
    Square sq{phiX.map, makeArrow(pushForward(zf, ut.from), pushForward(zf, ut.to), ut.map.fn).map,
              applyTMap(*zf.target, uf, 1).map, phiY.map};
    CHECK(isPullbackSquare(sq).ok);
  }

  SUBCASE("functoriality with nontrivial permutations") {
    auto q = buildMulticat(Presentation::fromJson(loadFixture("free_small.json")));
    SymMulticatMorphism h = reverseGenerators(q);
    CHECK(checkMorphism(h, 4).ok());
    MonadOpfunctor zh = zetaMor(h);
    Report r = checkOpfunctor(zh, quick());
    CHECK_MESSAGE(r.ok(), failures(r));

    MonadOpfunctor lhs = zetaMor(composeMorphisms(h, h));
    MonadOpfunctor rhs = composeOpfunctors(zh, zh);
    bool twisted = false;
    for (int n = 0; n <= 4; ++n)
      for (const auto& op : q->planarArrows(n)) {
        OpImage a = lhs.phi(op), b = rhs.phi(op);
        CHECK(a.op == b.op);
        CHECK(a.from == b.from);
        // twice reversed is the identity
        CHECK(a.op == op);
        OpImage once = zh.phi(op);
        std::vector<std::size_t> id(once.from.size());
        std::iota(id.begin(), id.end(), 0);
        twisted = twisted || once.from != id;
      }
    CHECK(twisted);
  }
}

TEST_CASE("zeta reflects equivalence on test pairs") {
  auto i = theMulticatI();
  auto s = slice(i);
  auto zi = zetaObj(i).monad, zs = zetaObj(s).monad;
  CHECK(shapeCounts(*zi, 5) == shapeCounts(*zetaObj(theMulticatI()).monad, 5));
  CHECK(shapeCounts(*zs, 5) == shapeCounts(*zetaObj(slice(theMulticatI())).monad, 5));
  CHECK(shapeCounts(*zi, 5) != shapeCounts(*zs, 5));
  CHECK(isEquivalence(identityMorphism(i), 4).ok);
  CHECK(isEquivalence(identityMorphism(s), 4).ok);
  SymMulticatMorphism f{i, s, [](const Code&) { return Code("ar"); },
                        [s](const Code&) { return s->planarArrow("n(ar;u(pt))"); }};
  CHECK_FALSE(isEquivalence(f, 4).ok);
}

TEST_CASE("comparison zeta(Q)' to zeta(Q+)") {
  MonadCheckConfig cfg = quick();
  for (int k = 0; k <= 1; ++k) {
    CAPTURE(k);
    Comparison c = comparisonIso(iteratedSlice(theMulticatI(), k), 6, cfg);
    CHECK_MESSAGE(c.report.ok(), failures(c.report));
    // stratum 0: trees with no nodes go to nullary configurations
    for (const auto& x : iteratedSlice(theMulticatI(), k)->objects(0)) CHECK(c.g.at("u(" + x + ")") == "u(" + x + ")");
  }
  auto free = buildMulticat(Presentation::fromJson(loadFixture("free_small.json")));
  Comparison c = comparisonIso(free, 4, cfg);
  CHECK_MESSAGE(c.report.ok(), failures(c.report));
  CHECK(c.g.size() > 20);
}
