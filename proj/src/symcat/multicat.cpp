#include "opetope/multicat.hpp"

namespace opetope {

std::string Arrow::str() const { return perm.isIdentity() ? planar : planar + "." + perm.str(); }

Arrow SymMulticat::act(const Arrow& f, const Perm& s) const {
  if (s.degree() != f.perm.degree())
    throw IllFormed("act: permutation of degree " + std::to_string(s.degree()) +
                    " on an arrow of arity " + std::to_string(f.perm.degree()));
  return {f.planar, composePerm(f.perm, s)};
}

std::vector<std::pair<Code, Perm>> SymMulticat::stabilizerWitnesses(int) const { return {}; }

std::vector<Code> SymMulticat::sources(const Arrow& f) const {
  auto ps = planarSources(f.planar);
  if (ps.size() != f.perm.degree())
    throw IllFormed("arrow " + f.str() + " carries a permutation of the wrong degree");
  std::vector<Code> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) out[i] = ps[f.perm(i)];
  return out;
}

std::vector<Code> SymMulticat::planarArrowsWithTarget(const Code& x, int maxSize) const {
  std::vector<Code> out;
  for (int s = 0; s <= maxSize; ++s)
    for (auto& p : planarArrows(s))
      if (planarTarget(p) == x) out.push_back(std::move(p));
  return out;
}

namespace {

// All s with ps[s(i)] == want[i], by backtracking.
void matchPerms(const std::vector<Code>& ps, std::span<const Code> want, std::vector<int>& img,
                std::vector<bool>& used, std::vector<Perm>& out) {
  const std::size_t i = img.size();
  if (i == want.size()) {
    out.emplace_back(img);
    return;
  }
  for (std::size_t j = 0; j < ps.size(); ++j) {
    if (used[j] || ps[j] != want[i]) continue;
    used[j] = true;
    img.push_back(static_cast<int>(j));
    matchPerms(ps, want, img, used, out);
    img.pop_back();
    used[j] = false;
  }
}

}  // namespace

std::vector<Arrow> SymMulticat::arrowsOf(std::span<const Code> srcs, const Code& tgt,
                                         int maxSize) const {
  std::vector<Arrow> out;
  for (const auto& p : planarArrowsWithTarget(tgt, maxSize)) {
    auto ps = planarSources(p);
    if (ps.size() != srcs.size()) continue;
    std::vector<int> img;
    std::vector<bool> used(ps.size(), false);
    std::vector<Perm> perms;
    matchPerms(ps, srcs, img, used, perms);
    for (auto& s : perms) out.push_back({p, std::move(s)});
  }
  return out;
}

Arrow composeByEquivariance(const SymMulticat& q, const Arrow& f, std::span<const Arrow> gs,
                            const PlanarComposer& planar) {
  auto fs = q.sources(f);
  if (fs.size() != gs.size())
    throw IllFormed("compose: " + f.str() + " has arity " + std::to_string(fs.size()) + ", got " +
                    std::to_string(gs.size()) + " arguments");
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (q.target(gs[i]) != fs[i])
      throw IllFormed("compose: argument " + std::to_string(i + 1) + " (" + gs[i].str() +
                      ") has target " + q.target(gs[i]) + ", expected " + fs[i]);
  const Perm& s = f.perm;
  std::vector<const Arrow*> g(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) g[s(i)] = &gs[i];
  std::vector<Code> qs;
  std::vector<Perm> ts;
  std::vector<std::size_t> ar;
  for (const Arrow* a : g) {
    qs.push_back(a->planar);
    ts.push_back(a->perm);
    ar.push_back(a->perm.degree());
  }
  Arrow r = planar(f.planar, qs);
  Perm tail = composePerm(juxtaposePerms(ts), blockPerm(s, ar));
  return {r.planar, composePerm(r.perm, tail)};
}

Arrow SymMulticatMorphism::operator()(const Arrow& f) const {
  Arrow img = planarMap(f.planar);
  return target->act(img, f.perm);
}

SymMulticatMorphism identityMorphism(MulticatPtr q) {
  auto qq = q;
  return {q, q, [](const Code& x) { return x; },
          [qq](const Code& p) { return qq->planarArrow(p); }};
}

SymMulticatMorphism composeMorphisms(const SymMulticatMorphism& g, const SymMulticatMorphism& f) {
  return {f.source, g.target, [g, f](const Code& x) { return g.objectMap(f.objectMap(x)); },
          [g, f](const Code& p) { return g(f.planarMap(p)); }};
}

}  // namespace opetope
