#pragma once

#include <fstream>
#include <random>
#include <string>

#include "json.hpp"

#include "opetope/multicat.hpp"
#include "opetope/slice.hpp"

namespace testing_support {

using namespace opetope;

inline nlohmann::json loadFixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

inline Perm randomPerm(std::size_t k, std::mt19937_64& rng) {
  std::vector<int> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<int>(i);
  for (std::size_t i = k; i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return Perm(v);
}

/// A configuration over q with at most maxNodes nodes and a random twist at
/// every node. Labels are planar arrows of size <= labelSize.
inline ConfigTree randomConfig(const SymMulticat& q, const Code& x, int& nodesLeft, int labelSize,
                               std::mt19937_64& rng) {
  std::vector<Code> labels;
  if (nodesLeft > 0) labels = q.planarArrowsWithTarget(x, labelSize);
  if (labels.empty() || rng() % 4 == 0) return ConfigTree::leaf(x);
  --nodesLeft;
  const Code& p = labels[rng() % labels.size()];
  std::vector<ConfigTree> kids;
  for (const auto& s : q.planarSources(p)) kids.push_back(randomConfig(q, s, nodesLeft, labelSize, rng));
  ConfigTree t = ConfigTree::node(p, std::move(kids));
  t.twist = randomPerm(t.leafCount(), rng);
  return t;
}

inline std::string chain(int n) {
  std::string s = "u(pt)";
  for (int i = 0; i < n; ++i) s = "n(ar;" + s + ")";
  return s;
}

}  // namespace testing_support
