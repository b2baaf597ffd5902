#include "opetope/opetope.hpp"

#include <algorithm>

#include "opetope/parallel.hpp"
#include "opetope/pasting.hpp"
#include "opetope/presentation.hpp"
#include "opetope/slice.hpp"
#include "opetope/zeta.hpp"

namespace opetope {

namespace {

// One (dimension, size) cell per task, merged in size order.
template <typename Cell>
std::vector<OpetopeCode> bySize(int k, int maxSize, Cell cell) {
  if (maxSize < 0) return {};
  auto cells = parallelMap<std::vector<Code>>(static_cast<std::size_t>(maxSize) + 1,
                                              [&](std::size_t n) { return cell(static_cast<int>(n)); });
  std::vector<OpetopeCode> out;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    std::sort(cells[n].begin(), cells[n].end());
    for (auto& c : cells[n]) out.push_back({k, static_cast<int>(n), std::move(c)});
  }
  return out;
}

std::vector<std::size_t> counts(const std::vector<OpetopeCode>& codes, int maxSize) {
  std::vector<std::size_t> n(static_cast<std::size_t>(std::max(maxSize, -1) + 1), 0);
  for (const auto& c : codes) ++n.at(static_cast<std::size_t>(c.size));
  return n;
}

std::string countString(const std::vector<std::size_t>& n) {
  std::string s;
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s;
}

}  // namespace

std::vector<OpetopeCode> bdOpetopes(int k, int maxSize) {
  auto q = iteratedSlice(theMulticatI(), k);
  return bySize(k, maxSize, [&](int n) {
    std::vector<Code> cell;
    for (const auto& x : q->objects(n))
      if (q->objectSize(x) == n) cell.push_back(x);
    return cell;
  });
}

std::vector<OpetopeCode> leinsterOpetopes(int k, int maxSize) {
  auto t = leinsterMonad(k);
  return bySize(k, maxSize, [&](int n) {
    std::vector<Code> cell;
    for (const auto& x : t->base(n))
      if (t->baseSize(x) == n) cell.push_back(x);
    return cell;
  });
}

Report checkOpetopeEquivalence(int k, int maxSize, const MonadCheckConfig& cfg) {
  Report rep;
  rep.subject = "opetopes of dimension " + std::to_string(k) + " up to size " + std::to_string(maxSize);
  auto bd = bdOpetopes(k, maxSize);
  auto le = leinsterOpetopes(k, maxSize);

  auto& same = rep.add("both routes give the same codes in each stratum");
  for (int n = 0; n <= maxSize; ++n) {
    ++same.cases;
    std::vector<Code> a, b;
    for (const auto& c : bd)
      if (c.size == n) a.push_back(c.body);
    for (const auto& c : le)
      if (c.size == n) b.push_back(c.body);
    if (a == b) continue;
    std::vector<Code> onlyA, onlyB;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(onlyA));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(onlyB));
    same.fail("size " + std::to_string(n) + ": slice only " + (onlyA.empty() ? "-" : onlyA[0]) +
              ", free operad only " + (onlyB.empty() ? "-" : onlyB[0]));
  }
  auto& cnt = rep.add("counts by size: " + countString(counts(bd, maxSize)) + " / " +
                      countString(counts(le, maxSize)));
  ++cnt.cases;
  if (counts(bd, maxSize) != counts(le, maxSize)) cnt.fail("counts differ");

  // k-opetopes are the operations of zeta(Q+) with Q the (k-2)-fold slice
  if (k >= 2) {
    Comparison c = comparisonIso(iteratedSlice(theMulticatI(), k - 2), maxSize, cfg);
    for (auto& r : c.report.results) {
      r.check = "comparison: " + r.check;
      rep.results.push_back(std::move(r));
    }
  }
  return rep;
}

std::vector<CountRow> countTable(int maxDim, int maxSize) {
  std::vector<CountRow> rows;
  for (int k = 0; k <= maxDim; ++k)
    rows.push_back({k, counts(bdOpetopes(k, maxSize), maxSize), counts(leinsterOpetopes(k, maxSize), maxSize)});
  return rows;
}

nlohmann::json opetopesToJson(int k, const std::vector<OpetopeCode>& codes, int maxSize) {
  auto out = nlohmann::json::array();
  for (int n = 0; n <= maxSize; ++n) {
    auto cs = nlohmann::json::array();
    for (const auto& c : codes)
      if (c.size == n) cs.push_back(c.body);
    out.push_back({{"dim", k}, {"size", n}, {"codes", cs}});
  }
  return out;
}

nlohmann::json countTableToJson(const std::vector<CountRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back({{"dim", r.dim}, {"bd", r.bd}, {"leinster", r.leinster}});
  return out;
}

}  // namespace opetope
