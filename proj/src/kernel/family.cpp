#include "opetope/family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace opetope {

Family::Family(std::vector<Code> base, std::vector<Element> elements)
    : base_(std::move(base)), elements_(std::move(elements)) {
  std::sort(base_.begin(), base_.end());
  base_.erase(std::unique(base_.begin(), base_.end()), base_.end());
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i && elements_[i].code == elements_[i - 1].code)
      throw std::invalid_argument("duplicate element code " + elements_[i].code);
    if (!inBase(elements_[i].fiber))
      throw std::invalid_argument("element " + elements_[i].code + " has fibre " +
                                  elements_[i].fiber + " outside the base");
  }
}

bool Family::contains(const Code& c) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), c,
                             [](const Element& e, const Code& k) { return e.code < k; });
  return it != elements_.end() && it->code == c;
}

bool Family::inBase(const Code& s) const {
  return std::binary_search(base_.begin(), base_.end(), s);
}

const Code& Family::fiberOf(const Code& c) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), c,
                             [](const Element& e, const Code& k) { return e.code < k; });
  if (it == elements_.end() || it->code != c)
    throw std::out_of_range("no element " + c + " in family");
  return it->fiber;
}

std::vector<Code> Family::codes() const {
  std::vector<Code> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.code);
  return out;
}

Code pairCode(const Code& a, const Code& b) { return nlohmann::json::array({a, b}).dump(); }

std::pair<Code, Code> unpairCode(const Code& c) {
  auto j = nlohmann::json::parse(c);
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("not a pair code: " + c);
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

Family pullbackFamilies(const Family& p, const Family& q) {
  if (p.base() != q.base()) throw std::invalid_argument("pullbackFamilies: base mismatch");
  std::map<Code, std::vector<Code>> byFiber;
  for (const auto& e : q.elements()) byFiber[e.fiber].push_back(e.code);
  std::vector<Element> out;
  for (const auto& a : p.elements()) {
    auto it = byFiber.find(a.fiber);
    if (it == byFiber.end()) continue;
    for (const auto& b : it->second) out.push_back({pairCode(a.code, b), a.fiber});
  }
  return Family(p.base(), std::move(out));
}

Family coproductFamilies(const Family& x, const Family& y) {
  std::vector<Code> base = x.base();
  base.insert(base.end(), y.base().begin(), y.base().end());
  std::vector<Element> out;
  for (const auto& e : x.elements()) out.push_back({pairCode("L", e.code), e.fiber});
  for (const auto& e : y.elements()) out.push_back({pairCode("R", e.code), e.fiber});
  return Family(std::move(base), std::move(out));
}

const Code& SetMap::operator()(const Code& c) const {
  auto it = fn.find(c);
  if (it == fn.end()) throw std::out_of_range("map undefined at " + c);
  return it->second;
}

bool SetMap::isInjective() const {
  std::set<Code> seen;
  for (const auto& [k, v] : fn)
    if (!seen.insert(v).second) return false;
  return true;
}

SetMap familyMap(const Family& from, const Family& to, std::map<Code, Code> fn) {
  for (const auto& e : from.elements()) {
    auto it = fn.find(e.code);
    if (it == fn.end()) throw std::invalid_argument("family map undefined at " + e.code);
    if (!to.contains(it->second))
      throw std::invalid_argument("family map sends " + e.code + " outside the codomain");
    if (to.fiberOf(it->second) != e.fiber)
      throw std::invalid_argument("family map does not preserve the fibre of " + e.code);
  }
  return SetMap{from.codes(), to.codes(), std::move(fn)};
}

SetMap composeMaps(const SetMap& second, const SetMap& first) {
  SetMap out{first.domain, second.codomain, {}};
  for (const auto& d : first.domain) out.fn[d] = second(first(d));
  return out;
}

Verdict isPullbackSquare(const Square& sq) {
  Verdict v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.diagnostic = std::move(msg);
    return v;
  };
  try {
    for (const auto& a : sq.top.domain)
      if (sq.right(sq.top(a)) != sq.bottom(sq.left(a)))
        return fail("square does not commute at " + a);

    // B and C reindexed as families over D, then the fibre product.
    std::vector<Element> bs, cs;
    for (const auto& b : sq.right.domain) bs.push_back({b, sq.right(b)});
    for (const auto& c : sq.bottom.domain) cs.push_back({c, sq.bottom(c)});
    Family pb = pullbackFamilies(Family(sq.right.codomain, bs), Family(sq.bottom.codomain, cs));

    std::map<Code, Code> hit;
    for (const auto& a : sq.top.domain) {
      Code p = pairCode(sq.top(a), sq.left(a));
      auto [it, fresh] = hit.emplace(p, a);
      if (!fresh) return fail("comparison not injective: " + it->second + " and " + a + " -> " + p);
    }
    for (const auto& e : pb.elements())
      if (!hit.count(e.code)) return fail("comparison not surjective: " + e.code + " unreached");
  } catch (const std::exception& e) {
    return fail(std::string("malformed square: ") + e.what());
  }
  return v;
}

}  // namespace opetope
