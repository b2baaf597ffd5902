#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "opetope/presentation.hpp"
#include "opetope/slice.hpp"
#include "opetope/symcat_checks.hpp"

using namespace opetope;

namespace {

// Delegates everything but swaps the first two sources of composites built
// from two arrows with at least two nodes each.
class SwappedCompose : public SymMulticat {
 public:
  explicit SwappedCompose(MulticatPtr q) : q_(std::move(q)) {}
  std::string name() const override { return q_->name() + "(mutated)"; }
  std::vector<Code> objects(int m) const override { return q_->objects(m); }
  int objectSize(const Code& x) const override { return q_->objectSize(x); }
  std::vector<Code> planarArrows(int s) const override { return q_->planarArrows(s); }
  std::vector<Code> planarSources(const Code& p) const override { return q_->planarSources(p); }
  Code planarTarget(const Code& p) const override { return q_->planarTarget(p); }
  int arrowSize(const Code& p) const override { return q_->arrowSize(p); }
  Arrow identityOf(const Code& x) const override { return q_->identityOf(x); }
  Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
    Arrow r = q_->compose(f, gs);
    bool big = false;
    for (const auto& g : gs) big = big || q_->sizeOf(g) >= 2;
    if (q_->sizeOf(f) >= 2 && big && r.perm.degree() >= 2) {
      std::vector<int> img = r.perm.image();
      std::swap(img[0], img[1]);
      r.perm = Perm(img);
    }
    return r;
  }

 private:
  MulticatPtr q_;
};

void requireClean(const Report& rep) {
  for (const auto& r : rep.results) {
    INFO(rep.subject << " / " << r.check << ": "
                     << (r.counterexamples.empty() ? "" : r.counterexamples.front()));
    CHECK(r.ok);
  }
}

}  // namespace

TEST_CASE("axioms hold for I and its slices") {
  auto i = theMulticatI();
  for (int k = 0; k <= 2; ++k) {
    auto q = iteratedSlice(i, k);
    auto t0 = std::chrono::steady_clock::now();
    Report rep = checkAxioms(*q);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    MESSAGE(q->name() << ": " << ms.count() << " ms");
    requireClean(rep);
    std::size_t cases = 0;
    for (const auto& r : rep.results) cases += r.cases;
    CHECK(cases > 0);
  }
}

TEST_CASE("corrupted composition is caught by associativity") {
  auto q = std::make_shared<SwappedCompose>(iteratedSlice(theMulticatI(), 1));
  AxiomCheckConfig cfg;
  cfg.trials = 100;
  Report rep = checkAxioms(*q, cfg);
  CHECK_FALSE(rep.ok());
  bool assocFailed = false;
  for (const auto& r : rep.results)
    if (r.check.rfind("axiom 2", 0) == 0) assocFailed = !r.ok && !r.counterexamples.empty();
  CHECK(assocFailed);
}

TEST_CASE("slice of a non-tidy presentation is refused") {
  auto j = nlohmann::json::parse(R"({"objects":["x"],
    "arrows":[{"code":"m","source":["x","x"],"target":"x","size":1}],
    "compositionTable":[],
    "action":[{"arrow":"m","perm":[2,1],"equals":"m"}]})");
  auto q = buildMulticat(Presentation::fromJson(j));
  CHECK_THROWS_WITH_AS(slice(q), doctest::Contains("m.[2,1] = m"), NotTidy);
  CHECK_THROWS_AS(skeletalize(q), NotTidy);
  std::vector<Arrow> raw{{"m", Perm::identity(2)}};
  CHECK_THROWS_AS(skeletalizeObjects(*q, raw), NotTidy);
  CHECK_FALSE(checkAxioms(*q).ok());
}

TEST_CASE("skeletalize") {
  auto i = theMulticatI();
  CHECK(skeletalize(i) == i);
  auto s = iteratedSlice(i, 1);
  // Objects of elt(I+): every arrow, up to isomorphism one per arity.
  std::vector<Arrow> raw;
  for (int n = 0; n <= 4; ++n)
    for (const auto& p : s->planarArrows(n))
      for (const auto& perm : allPerms(s->arity(p))) raw.push_back({p, perm});
  auto classes = skeletalizeObjects(*s, raw);
  REQUIRE(classes.size() == 5);
  std::sort(classes.begin(), classes.end(),
            [&](const auto& x, const auto& y) { return s->arity(x.planar) < s->arity(y.planar); });
  std::size_t fact = 1;
  for (std::size_t n = 0; n < classes.size(); ++n) {
    if (n) fact *= n;
    CHECK(s->arity(classes[n].planar) == n);
    CHECK(classes[n].members.size() == fact);
    for (const auto& [a, perm] : classes[n].members) CHECK(s->act(s->planarArrow(classes[n].planar), perm) == a);
  }

  // Idempotent: classes of the representatives are the representatives.
  auto s2 = iteratedSlice(i, 2);
  std::vector<Arrow> raw2;
  for (int n = 0; n <= 4; ++n)
    for (const auto& p : s2->planarArrows(n))
      for (const auto& perm : allPerms(s2->arity(p))) raw2.push_back({p, perm});
  auto once = skeletalizeObjects(*s2, raw2);
  std::vector<Arrow> reps;
  for (const auto& c : once) reps.push_back(s2->planarArrow(c.planar));
  auto twice = skeletalizeObjects(*s2, reps);
  REQUIRE(twice.size() == once.size());
  for (std::size_t k = 0; k < once.size(); ++k) CHECK(twice[k].planar == once[k].planar);
  CHECK(skeletalize(skeletalize(s2)) == skeletalize(s2));
}

TEST_CASE("isEquivalence") {
  auto i = theMulticatI();
  auto s = iteratedSlice(i, 1);
  CHECK(isEquivalence(identityMorphism(i), 5).ok);
  CHECK(isEquivalence(identityMorphism(s), 4).ok);

  // I -> I+: pt to 1_pt, the identity to the one-node configuration.
  SymMulticatMorphism f{i, s, [](const Code&) { return Code("ar"); },
                        [s](const Code&) { return s->planarArrow("n(ar;u(pt))"); }};
  CHECK(checkMorphism(f, 4).ok());
  auto v = isEquivalence(f, 4);
  CHECK_FALSE(v.ok);
  CHECK(v.diagnostic.find("not full") != std::string::npos);

  // Collapse two parallel arrows of I++.
  auto s2 = iteratedSlice(i, 2);
  std::vector<Code> ps;
  for (int n = 0; n <= 4; ++n)
    for (const auto& p : s2->planarArrows(n)) ps.push_back(p);
  Code a, b;
  for (std::size_t x = 0; x < ps.size() && a.empty(); ++x)
    for (std::size_t y = x + 1; y < ps.size(); ++y)
      if (s2->planarSources(ps[x]) == s2->planarSources(ps[y]) &&
          s2->planarTarget(ps[x]) == s2->planarTarget(ps[y])) {
        a = ps[x];
        b = ps[y];
        break;
      }
  REQUIRE_FALSE(a.empty());
  SymMulticatMorphism collapse{s2, s2, [](const Code& x) { return x; },
                               [s2, a, b](const Code& p) { return s2->planarArrow(p == b ? a : p); }};
  auto w = isEquivalence(collapse, 4);
  CHECK_FALSE(w.ok);
  CHECK(w.diagnostic.find("not faithful") != std::string::npos);
}
