#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "opetope/code_syntax.hpp"
#include "opetope/pasting.hpp"
#include "support.hpp"

using namespace opetope;
using testing_support::loadFixture;

namespace {

Family twoOverPoint() { return Family({"pt"}, {{"a", "pt"}, {"b", "pt"}}); }

bool isBijection(const SetMap& f) {
  std::set<Code> img;
  for (const auto& [x, y] : f.fn) img.insert(y);
  return f.isInjective() && img.size() == f.codomain.size();
}

// Unit leaves of a pasting tree, left to right.
void leaves(const PastingTree& t, std::vector<Code>& out) {
  if (t.isUnit()) {
    out.push_back(t.unit);
    return;
  }
  for (const auto& c : t.children) leaves(c, out);
}

// Planar trees where a leaf weighs 0 and a node with k children weighs k+1.
std::vector<long> weightedTreeCounts(int n) {
  std::vector<long> tree(n + 1, 0);
  for (int s = 0; s <= n; ++s) {
    if (s == 0) tree[0] = 1;
    for (int k = 0; k + 1 <= s; ++k) {
      // forests of weight s-1-k built from trees of weight < s
      std::vector<long> f(n + 1, 0);
      f[0] = 1;
      for (int i = 0; i < k; ++i) {
        std::vector<long> g(n + 1, 0);
        for (int a = 0; a <= n; ++a)
          for (int b = 0; a + b <= n && b < s; ++b) g[a + b] += f[a] * tree[b];
        f = g;
      }
      tree[s] += f[s - 1 - k];
    }
  }
  return tree;
}

}  // namespace

TEST_CASE("identity monad: T X is X") {
  auto id = identityMonad({"a", "b"});
  Family x({"a", "b"}, {{"x1", "a"}, {"x2", "a"}, {"y", "b"}});
  Family tx = applyT(*id, x, 3);
  REQUIRE(tx.size() == 3);
  for (const auto& e : tx.elements()) {
    auto [op, labels] = tElementParts(e.code);
    CHECK(op == identityCode(e.fiber));
    REQUIRE(labels.size() == 1);
    CHECK(x.fiberOf(labels[0]) == e.fiber);
  }
  CHECK(isBijection(unitComponent(*id, x).map));
  CHECK(isBijection(multComponent(*id, x, 0).map));
}

TEST_CASE("free monoid: lists of length <= 2 over {a,b}") {
  auto m = freeMonoidMonad();
  Family tx = applyT(*m, twoOverPoint(), 2);
  CHECK(tx.size() == 1 + 2 + 4);
  CHECK(tx.contains(tElementCode("list0", {})));
  CHECK(tx.contains(tElementCode("list2", {"b", "a"})));

  auto [op, labels] = multiply(*m, "list2", {{"list1", {"a"}}, {"list2", {"b", "a"}}});
  CHECK(op == "list3");
  CHECK(labels == std::vector<Code>{"a", "b", "a"});
  CHECK_THROWS_AS(m->substitute("list2", {"list1"}), std::invalid_argument);
  CHECK_THROWS_AS(m->size("listx"), std::invalid_argument);
}

TEST_CASE("multiplication lands in T X") {
  auto m = freeMonoidMonad();
  auto mu = multComponent(*m, twoOverPoint(), 2);
  // lists of lists of total length <= 4: codomain is cut at 4
  CHECK(mu.to.size() == 1 + 2 + 4 + 8 + 16);
  std::size_t ttx = 0;
  for (int k = 0; k <= 2; ++k) {
    std::size_t inner = 7, p = 1;
    for (int i = 0; i < k; ++i) p *= inner;
    ttx += p;
  }
  CHECK(mu.from.size() == ttx);
}

TEST_CASE("monad from JSON") {
  auto z3 = monadFromJson(loadFixture("z3_monad.json"), "Z3");
  CHECK(z3->base(0) == std::vector<Code>{"x"});
  CHECK(z3->unitOp("x") == "e");
  CHECK(z3->substitute("r", {"s"}).op == "e");
  CHECK(z3->substitute("s", {"s"}).op == "r");
  CHECK(z3->substitute("e", {"r"}).op == "r");
  CHECK(z3->substitute("r", {"e"}).op == "r");
  CHECK(z3->ops(1) == std::vector<Code>{"r", "s"});

  SUBCASE("unknown field") {
    auto j = loadFixture("z3_monad.json");
    j["operations"][1]["colour"] = "red";
    try {
      monadFromJson(j);
      FAIL("accepted");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("operations[1].colour") != std::string::npos);
    }
  }
  SUBCASE("missing unit") {
    auto j = loadFixture("z3_monad.json");
    j.erase("units");
    CHECK_THROWS_WITH_AS(monadFromJson(j), doctest::Contains("missing unit"), std::invalid_argument);
  }
  SUBCASE("positions must be a bijection") {
    auto j = nlohmann::json::parse(R"({
      "base": ["x"],
      "operations": [
        {"code": "e", "source": ["x"], "target": "x", "size": 0},
        {"code": "m", "source": ["x", "x"], "target": "x"}
      ],
      "units": {"x": "e"},
      "substitution": [
        {"op": "m", "args": ["m", "e"], "result": "m", "positions": [[0, 1], [1]]}
      ]
    })");
    CHECK_THROWS_WITH_AS(monadFromJson(j), doctest::Contains("substitution[0]"), std::invalid_argument);
  }
  SUBCASE("missing table entry") {
    CHECK_THROWS_WITH_AS(monadFromJson(loadFixture("z3_monad.json"))->substitute("r", {"x"}),
                         doctest::Contains("unknown operation"), std::invalid_argument);
  }
}

TEST_CASE("pasting tree text form") {
  const Code c = "n(list2;n(list0;),u(pt))";
  auto t = PastingTree::parse(c);
  CHECK(t.print() == c);
  CHECK(t.nodes() == 2);
  CHECK(t.depth() == 2);
  CHECK_THROWS_AS(PastingTree::parse("pt"), std::invalid_argument);
}

TEST_CASE("free operad on the identity is the free monoid") {
  auto t1 = leinsterMonad(1);
  auto lists = freeMonoidMonad();
  std::map<Code, Code> asList;
  for (int n = 0; n <= 6; ++n) {
    auto ops = t1->ops(n);
    REQUIRE(ops.size() == 1);
    CHECK(t1->arity(ops[0]) == static_cast<std::size_t>(n));
    asList[ops[0]] = "list" + std::to_string(n);
  }
  for (const auto& [op, l] : asList) {
    std::size_t n = t1->arity(op);
    if (n > 3) continue;
    // every way of substituting chains of length <= 2 agrees with lists
    std::vector<Code> inner(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        Substitution a = t1->substitute(op, inner);
        std::vector<Code> li;
        for (const auto& c : inner) li.push_back(asList.at(c));
        Substitution b = lists->substitute(l, li);
        CHECK(asList.at(a.op) == b.op);
        CHECK(a.positions == b.positions);
        return;
      }
      for (int k = 0; k <= 2; ++k) {
        inner[i] = t1->ops(k)[0];
        rec(i + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("opetope counts by size from the free-operad tower") {
  // dimension 1 and 2: one per size
  for (int n = 0; n <= 6; ++n) {
    CHECK(leinsterMonad(0)->ops(n).size() == (n == 0 ? 1u : 0u));
    CHECK(leinsterMonad(1)->ops(n).size() == 1);
  }
  // dimension 3: weighted planar trees
  auto oracle = weightedTreeCounts(7);
  const std::vector<long> expected{1, 1, 1, 2, 4, 9, 21, 51};
  CHECK(oracle == expected);
  for (int n = 0; n <= 7; ++n) CHECK(static_cast<long>(leinsterMonad(2)->ops(n).size()) == expected[n]);
}

TEST_CASE("flattening sends leaves bijectively onto the composite's sources") {
  for (int k : {1, 2, 3}) {
    auto m = std::dynamic_pointer_cast<const FreeOperadMonad>(leinsterMonad(k));
    REQUIRE(m);
    const PolyMonad& inner = *m->inner();
    for (const auto& op : m->opsUpTo(5)) {
      const Flattened& f = m->flattened(op);
      std::vector<Code> lv;
      leaves(PastingTree::parse(op), lv);
      auto src = inner.sources(f.op);
      REQUIRE(lv.size() == src.size());
      std::vector<std::size_t> seen = f.leafPosition;
      std::sort(seen.begin(), seen.end());
      for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
      for (std::size_t l = 0; l < lv.size(); ++l) CHECK(src[f.leafPosition[l]] == lv[l]);
      CHECK(flattenTree(inner, PastingTree::parse(op)).op == f.op);
    }
  }
}

TEST_CASE("free operad: substituting units") {
  auto m = leinsterMonad(3);
  for (const auto& op : m->opsUpTo(5)) {
    auto src = m->sources(op);
    std::vector<Code> units;
    for (const auto& s : src) units.push_back(m->unitOp(s));
    Substitution a = m->substitute(op, units);
    CHECK(a.op == op);
    for (std::size_t i = 0; i < src.size(); ++i) CHECK(a.positions[i] == std::vector<std::size_t>{i});

    Substitution b = m->substitute(m->unitOp(m->target(op)), {op});
    CHECK(b.op == op);
    REQUIRE(b.positions.size() == 1);
    for (std::size_t i = 0; i < src.size(); ++i) CHECK(b.positions[0][i] == i);
  }
  CHECK_THROWS_AS(m->substitute(m->ops(2).at(0), {}), std::invalid_argument);
}

TEST_CASE("nested sequence for a binary generator over lists") {
  auto m = freeMonoidMonad();
  Family a({"list2"}, {{"a", "list2"}});
  // binary trees of depth <= k, node weight 3, leaf weight 0
  std::function<long(int, int)> count = [&](int k, int budget) -> long {
    if (budget < 0) return 0;
    long n = 1;
    if (k == 0) return n;
    std::function<long(int, int)> exact = [&](int kk, int w) -> long {
      return count(kk, w) - (w > 0 ? count(kk, w - 1) : 0);
    };
    for (int l = 0; l <= budget - 3; ++l)
      for (int r = 0; l + r <= budget - 3; ++r) n += exact(k - 1, l) * exact(k - 1, r);
    return n;
  };
  NestedStage prev;
  for (int k = 0; k <= 3; ++k) {
    NestedStage st = nestedSequenceStage(*m, a, k, 9);
    CHECK(static_cast<long>(st.elements.size()) == count(k, 9));
    for (const auto& e : st.elements.elements()) {
      std::vector<Code> lv;
      leaves(PastingTree::parse(e.code), lv);
      CHECK(st.d.at(e.code) == "list" + std::to_string(lv.size()));
    }
    for (const auto& e : prev.elements.elements()) CHECK(st.elements.contains(e.code));
    prev = st;
  }
}

TEST_CASE("element codes are JSON and round-trip") {
  std::vector<Code> labels{"a", "[\"L\",\"x\"]", "q\\\"r", ""};
  Code c = tElementCode("op", labels);
  CHECK(c == nlohmann::json::array({"op", labels}).dump());
  CHECK(tElementParts(c) == std::make_pair(Code("op"), labels));
  Code nested = tElementCode("list1", {c});
  CHECK(nested == nlohmann::json::array({"list1", std::vector<Code>{c}}).dump());
  CHECK(tElementParts(nested).second.at(0) == c);
  Code odd = tElementCode("t\nab", {"\x01"});
  CHECK(tElementParts(odd) == std::make_pair(Code("t\nab"), std::vector<Code>{"\x01"}));
}
