#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "opetope/code_syntax.hpp"
#include "opetope/family.hpp"
#include "opetope/perm.hpp"

using namespace opetope;

namespace {

Perm randomPerm(std::size_t k, std::mt19937& rng) {
  std::vector<int> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<int>(i);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

// Index chasing: relabel a list of distinct labels by s, then by t, and read
// off where each label ended up.
std::vector<int> chaseCompose(const Perm& s, const Perm& t) {
  std::vector<int> labels(s.degree());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
  std::vector<int> afterS(labels.size()), afterT(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) afterS[i] = labels[s(i)];
  for (std::size_t i = 0; i < labels.size(); ++i) afterT[i] = afterS[t(i)];
  return afterT;
}

// Blocks of distinct labels; the composite's sources list the blocks in the
// order G_{s(1)}, ..., G_{s(k)}. The block permutation is where each entry
// of that list sits in the unpermuted concatenation.
std::vector<int> chaseBlocks(const Perm& s, const std::vector<std::size_t>& m) {
  std::vector<std::vector<int>> blocks;
  int next = 0;
  for (auto len : m) {
    blocks.emplace_back();
    for (std::size_t j = 0; j < len; ++j) blocks.back().push_back(next++);
  }
  std::vector<int> flat, wanted;
  for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
  for (std::size_t i = 0; i < m.size(); ++i)
    wanted.insert(wanted.end(), blocks[s(i)].begin(), blocks[s(i)].end());
  std::vector<int> out;
  for (int w : wanted) out.push_back(static_cast<int>(std::find(flat.begin(), flat.end(), w) - flat.begin()));
  return out;
}

}  // namespace

TEST_CASE("perm basics") {
  Perm s = Perm::fromOneBased(std::vector<int>{2, 3, 1});
  CHECK(s.str() == "[2,3,1]");
  CHECK(composePerm(Perm::identity(3), s) == s);
  CHECK(composePerm(s, s.inverse()).isIdentity());
  Perm t = Perm::fromOneBased(std::vector<int>{2, 1});
  CHECK(composePerm(t, t).isIdentity());
  CHECK_THROWS_AS(composePerm(s, t), std::invalid_argument);
  CHECK_THROWS(Perm(std::vector<int>{0, 0}));
  CHECK(allPerms(4).size() == 24);
}

TEST_CASE("composePerm agrees with index chasing") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Perm s = randomPerm(5, rng), t = randomPerm(5, rng);
    CHECK(composePerm(s, t).image() == chaseCompose(s, t));
  }
}

TEST_CASE("blockPerm") {
  Perm swap = Perm::fromOneBased(std::vector<int>{2, 1});
  std::vector<std::size_t> m{2, 1};
  CHECK(blockPerm(swap, m).oneBased() == std::vector<int>{3, 1, 2});
  CHECK(blockPerm(Perm::identity(3), std::vector<std::size_t>{0, 2, 1}).isIdentity());

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = 1 + trial % 4;
    std::vector<std::size_t> ar(k);
    for (auto& a : ar) a = len(rng);
    Perm s = randomPerm(k, rng), t = randomPerm(k, rng);
    CHECK(blockPerm(s, ar).image() == chaseBlocks(s, ar));
    // Homomorphism with the arities transported along s.
    std::vector<std::size_t> moved(k);
    for (std::size_t i = 0; i < k; ++i) moved[i] = ar[s(i)];
    CHECK(blockPerm(composePerm(s, t), ar) == composePerm(blockPerm(s, ar), blockPerm(t, moved)));
  }
}

TEST_CASE("juxtaposePerms") {
  Perm sw = Perm::fromOneBased(std::vector<int>{2, 1});
  std::vector<Perm> two{sw, sw};
  CHECK(juxtaposePerms(two).oneBased() == std::vector<int>{2, 1, 4, 3});
  std::vector<Perm> one{sw};
  CHECK(juxtaposePerms(one) == sw);
  std::vector<Perm> ids{Perm::identity(2), Perm::identity(0), Perm::identity(3)};
  CHECK(juxtaposePerms(ids).isIdentity());
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Perm> parts;
    std::vector<int> oracle;
    int off = 0;
    for (int i = 0; i < 3; ++i) {
      Perm p = randomPerm(1 + (trial + i) % 3, rng);
      for (int x : p.image()) oracle.push_back(off + x);
      off += static_cast<int>(p.degree());
      parts.push_back(p);
    }
    CHECK(juxtaposePerms(parts).image() == oracle);
  }
}

TEST_CASE("pullbackFamilies") {
  Family single({"s"}, {{"x", "s"}});
  CHECK(pullbackFamilies(single, single).size() == 1);

  Family p({"s1", "s2"}, {{"a", "s1"}, {"b", "s1"}, {"c", "s2"}});
  Family q({"s1", "s2"}, {{"d", "s1"}, {"e", "s2"}});
  Family pb = pullbackFamilies(p, q);
  std::size_t brute = 0;
  for (const auto& x : p.elements())
    for (const auto& y : q.elements()) brute += x.fiber == y.fiber;
  CHECK(pb.size() == brute);
  CHECK(pb.size() == 3);
  for (const auto& e : pb.elements()) {
    auto [a, b] = unpairCode(e.code);
    CHECK(p.fiberOf(a) == e.fiber);
    CHECK(q.fiberOf(b) == e.fiber);
  }
  CHECK(pullbackFamilies(p, Family({"s1", "s2"}, {})).empty());
  CHECK_THROWS(pullbackFamilies(p, single));
}

TEST_CASE("isPullbackSquare") {
  Family x({"s"}, {{"a", "s"}, {"b", "s"}});
  SetMap id = familyMap(x, x, {{"a", "a"}, {"b", "b"}});
  CHECK(isPullbackSquare({id, id, id, id}).ok);

  // Product over a point: apex with one pair missing.
  Family one({"s"}, {{"*", "s"}});
  Family prod({"s"}, {{"aa", "s"}, {"ab", "s"}, {"ba", "s"}});
  SetMap toOne = familyMap(x, one, {{"a", "*"}, {"b", "*"}});
  SetMap first = familyMap(prod, x, {{"aa", "a"}, {"ab", "a"}, {"ba", "b"}});
  SetMap second = familyMap(prod, x, {{"aa", "a"}, {"ab", "b"}, {"ba", "a"}});
  auto v = isPullbackSquare({first, second, toOne, toOne});
  CHECK_FALSE(v.ok);
  CHECK(v.diagnostic.find("surjective") != std::string::npos);

  // Computed pullback is a pullback; removing an apex element breaks it.
  Family pb = pullbackFamilies(x, x);
  std::map<Code, Code> l, r;
  for (const auto& e : pb.elements()) {
    auto [a, b] = unpairCode(e.code);
    l[e.code] = a;
    r[e.code] = b;
  }
  SetMap pl = familyMap(pb, x, l), pr = familyMap(pb, x, r);
  SetMap xs = familyMap(x, Family({"s"}, {{"s", "s"}}), {{"a", "s"}, {"b", "s"}});
  CHECK(isPullbackSquare({pl, pr, xs, xs}).ok);

  // Non-commuting square.
  SetMap swap = familyMap(x, x, {{"a", "b"}, {"b", "a"}});
  CHECK_FALSE(isPullbackSquare({id, id, id, swap}).ok);
}

TEST_CASE("code syntax") {
  auto t = splitCode("n(ar;u(pt),n(ar;u(pt)))");
  CHECK(t.kind == CodeTerm::Kind::Node);
  CHECK(t.head == "ar");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[1] == "n(ar;u(pt))");
  CHECK(splitCode("n(x;)").children.empty());
  CHECK(splitCode("u(pt)").head == "pt");
  CHECK_THROWS(splitCode("n(ar;u(pt)"));
  CHECK(identityCode("pt") == "ar");
  std::vector<Code> kids{"u(a)", "u(b)"};
  CHECK(nodeCode("f", kids) == "n(f;u(a),u(b))");
}
