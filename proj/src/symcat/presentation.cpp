#include "opetope/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "opetope/code_syntax.hpp"

namespace opetope {

namespace {

using nlohmann::json;

void rejectUnknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw PresentationError(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw PresentationError(where + "." + k, "unknown field");
  }
}

Code atomAt(const json& j, const std::string& where) {
  if (!j.is_string()) throw PresentationError(where, "expected a string code");
  auto s = j.get<std::string>();
  if (!isValidAtom(s)) throw PresentationError(where, "invalid code '" + s + "'");
  return s;
}

std::vector<Code> atomsAt(const json& j, const std::string& where) {
  if (!j.is_array()) throw PresentationError(where, "expected an array");
  std::vector<Code> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(atomAt(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Perm permAt(const json& j, const std::string& where) {
  try {
    auto v = j.get<std::vector<int>>();
    return Perm::fromOneBased(v);
  } catch (const std::exception& e) {
    throw PresentationError(where, std::string("bad permutation: ") + e.what());
  }
}

class TableMulticat : public SymMulticat {
 public:
  TableMulticat(const Presentation& pres, std::string name) : name_(std::move(name)) {
    for (std::size_t i = 0; i < pres.objects.size(); ++i) {
      if (!objects_.insert(pres.objects[i]).second)
        throw PresentationError("objects[" + std::to_string(i) + "]", "duplicate object");
      ArrowSpec id{identityCode(pres.objects[i]), {pres.objects[i]}, pres.objects[i], 0};
      arrows_[id.code] = id;
      identities_.insert(id.code);
    }
    for (std::size_t i = 0; i < pres.arrows.size(); ++i) {
      const auto& a = pres.arrows[i];
      std::string where = "arrows[" + std::to_string(i) + "]";
      if (arrows_.count(a.code)) throw PresentationError(where + ".code", "duplicate arrow " + a.code);
      if (!objects_.count(a.target)) throw PresentationError(where + ".target", "unknown object");
      for (const auto& s : a.source)
        if (!objects_.count(s)) throw PresentationError(where + ".source", "unknown object " + s);
      if (a.size < 0) throw PresentationError(where + ".size", "negative size");
      arrows_[a.code] = a;
    }
    for (std::size_t i = 0; i < pres.table.size(); ++i) {
      const auto& e = pres.table[i];
      std::string where = "compositionTable[" + std::to_string(i) + "]";
      auto known = [&](const Code& c, const std::string& w) {
        if (!arrows_.count(c)) throw PresentationError(w, "unknown arrow " + c);
      };
      known(e.arrow, where + ".arrow");
      known(e.result, where + ".result");
      const auto& f = arrows_.at(e.arrow);
      if (e.args.size() != f.source.size())
        throw PresentationError(where + ".args", "wrong number of arguments");
      std::vector<Code> src;
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        known(e.args[k], where + ".args");
        const auto& g = arrows_.at(e.args[k]);
        if (g.target != f.source[k])
          throw PresentationError(where + ".args", "argument " + e.args[k] + " does not fit");
        src.insert(src.end(), g.source.begin(), g.source.end());
      }
      const auto& r = arrows_.at(e.result);
      if (r.target != f.target) throw PresentationError(where + ".result", "target mismatch");
      if (src.size() != r.source.size())
        throw PresentationError(where + ".result", "arity does not match the composite");
      if (e.perm.degree() != r.source.size())
        throw PresentationError(where + ".perm", "degree does not match the result's arity");
      for (std::size_t k = 0; k < src.size(); ++k)
        if (r.source[e.perm(k)] != src[k])
          throw PresentationError(where + ".perm", "sources of result.perm do not match");
      table_[{e.arrow, e.args}] = {e.result, e.perm};
    }
    for (std::size_t i = 0; i < pres.stabilizers.size(); ++i) {
      const auto& st = pres.stabilizers[i];
      std::string where = "action[" + std::to_string(i) + "]";
      if (!arrows_.count(st.arrow)) throw PresentationError(where + ".arrow", "unknown arrow");
      if (st.perm.degree() != arrows_.at(st.arrow).source.size())
        throw PresentationError(where + ".perm", "degree does not match the arity");
      stabilizers_.emplace_back(st.arrow, st.perm);
    }
  }

  std::string name() const override { return name_; }

  std::vector<Code> objects(int maxSize) const override {
    if (maxSize < 0) return {};
    return {objects_.begin(), objects_.end()};
  }
  int objectSize(const Code& x) const override {
    if (!objects_.count(x)) throw IllFormed("unknown object " + x);
    return 0;
  }
  std::vector<Code> planarArrows(int size) const override {
    std::vector<Code> out;
    for (const auto& [c, a] : arrows_)
      if (a.size == size) out.push_back(c);
    return out;
  }
  std::vector<Code> planarSources(const Code& p) const override { return spec(p).source; }
  Code planarTarget(const Code& p) const override { return spec(p).target; }
  int arrowSize(const Code& p) const override { return spec(p).size; }
  Arrow identityOf(const Code& x) const override {
    if (!objects_.count(x)) throw IllFormed("unknown object " + x);
    return {identityCode(x), Perm::identity(1)};
  }
  Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
    return composeByEquivariance(*this, f, gs, [this](const Code& p, const std::vector<Code>& qs) {
      if (identities_.count(p)) return planarArrow(qs.at(0));
      if (std::all_of(qs.begin(), qs.end(), [&](const Code& c) { return identities_.count(c) > 0; }))
        return planarArrow(p);
      auto it = table_.find({p, qs});
      if (it == table_.end()) {
        std::string args;
        for (const auto& c : qs) args += (args.empty() ? "" : ",") + c;
        throw IllFormed("no composition table entry for " + p + " o (" + args + ")");
      }
      return Arrow{it->second.first, it->second.second};
    });
  }
  std::vector<std::pair<Code, Perm>> stabilizerWitnesses(int) const override { return stabilizers_; }

 private:
  const ArrowSpec& spec(const Code& p) const {
    auto it = arrows_.find(p);
    if (it == arrows_.end()) throw IllFormed("unknown arrow " + p);
    return it->second;
  }

  std::string name_;
  std::set<Code> objects_;
  std::map<Code, ArrowSpec> arrows_;
  std::set<Code> identities_;
  std::map<std::pair<Code, std::vector<Code>>, std::pair<Code, Perm>> table_;
  std::vector<std::pair<Code, Perm>> stabilizers_;
};

// Free symmetric multicategory on generating arrows: planar arrows are
// planar trees of generators, u(x) being the identity on x.
class FreeMulticat : public SymMulticat {
 public:
  FreeMulticat(const Presentation& pres, std::string name) : name_(std::move(name)) {
    for (const auto& x : pres.objects) objects_.insert(x);
    for (std::size_t i = 0; i < pres.arrows.size(); ++i) {
      const auto& a = pres.arrows[i];
      std::string where = "arrows[" + std::to_string(i) + "]";
      if (gens_.count(a.code)) throw PresentationError(where + ".code", "duplicate generator");
      if (a.size < 1)
        throw PresentationError(where + ".size", "generators of a free presentation need size >= 1");
      if (!objects_.count(a.target)) throw PresentationError(where + ".target", "unknown object");
      for (const auto& s : a.source)
        if (!objects_.count(s)) throw PresentationError(where + ".source", "unknown object " + s);
      gens_[a.code] = a;
    }
  }

  std::string name() const override { return name_; }
  std::vector<Code> objects(int maxSize) const override {
    if (maxSize < 0) return {};
    return {objects_.begin(), objects_.end()};
  }
  int objectSize(const Code&) const override { return 0; }

  std::vector<Code> planarArrows(int size) const override {
    std::map<std::pair<Code, int>, std::vector<Code>> memo;
    std::vector<Code> out;
    for (const auto& x : objects_) {
      auto v = trees(x, size, memo);
      out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Code> planarSources(const Code& p) const override {
    std::vector<Code> out;
    leaves(p, out);
    return out;
  }
  Code planarTarget(const Code& p) const override {
    auto t = splitCode(p);
    if (t.kind == CodeTerm::Kind::Unit) return t.head;
    if (t.kind == CodeTerm::Kind::Node) return gen(t.head).target;
    throw IllFormed("not a tree code: " + p);
  }
  int arrowSize(const Code& p) const override {
    auto t = splitCode(p);
    if (t.kind == CodeTerm::Kind::Unit) return 0;
    int s = gen(t.head).size;
    for (const auto& c : t.children) s += arrowSize(c);
    return s;
  }
  Arrow identityOf(const Code& x) const override {
    if (!objects_.count(x)) throw IllFormed("unknown object " + x);
    return {unitCode(x), Perm::identity(1)};
  }
  Arrow compose(const Arrow& f, std::span<const Arrow> gs) const override {
    return composeByEquivariance(*this, f, gs, [this](const Code& p, const std::vector<Code>& qs) {
      std::size_t next = 0;
      Code grafted = graft(p, qs, next);
      return planarArrow(grafted);
    });
  }

 private:
  const ArrowSpec& gen(const Code& g) const {
    auto it = gens_.find(g);
    if (it == gens_.end()) throw IllFormed("unknown generator " + g);
    return it->second;
  }

  void leaves(const Code& p, std::vector<Code>& out) const {
    auto t = splitCode(p);
    if (t.kind == CodeTerm::Kind::Unit) {
      out.push_back(t.head);
      return;
    }
    if (t.kind != CodeTerm::Kind::Node) throw IllFormed("not a tree code: " + p);
    if (t.children.size() != gen(t.head).source.size()) throw IllFormed("wrong arity in " + p);
    for (const auto& c : t.children) leaves(c, out);
  }

  // Replaces the leaves of p, left to right, by qs[next], qs[next+1], ...
  Code graft(const Code& p, const std::vector<Code>& qs, std::size_t& next) const {
    auto t = splitCode(p);
    if (t.kind == CodeTerm::Kind::Unit) return qs.at(next++);
    std::vector<Code> kids;
    for (const auto& c : t.children) kids.push_back(graft(c, qs, next));
    return nodeCode(t.head, kids);
  }

  const std::vector<Code>& trees(const Code& x, int size,
                                 std::map<std::pair<Code, int>, std::vector<Code>>& memo) const {
    auto key = std::make_pair(x, size);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Code> out;
    if (size == 0) out.push_back(unitCode(x));
    for (const auto& [g, a] : gens_) {
      if (a.target != x || a.size > size) continue;
      std::vector<Code> kids;
      fill(a, 0, size - a.size, kids, out, memo);
    }
    return memo[key] = std::move(out);
  }

  void fill(const ArrowSpec& a, std::size_t slot, int budget, std::vector<Code>& kids,
            std::vector<Code>& out, std::map<std::pair<Code, int>, std::vector<Code>>& memo) const {
    if (slot == a.source.size()) {
      if (budget == 0) out.push_back(nodeCode(a.code, kids));
      return;
    }
    for (int s = 0; s <= budget; ++s) {
      auto choices = trees(a.source[slot], s, memo);
      for (const auto& c : choices) {
        kids.push_back(c);
        fill(a, slot + 1, budget - s, kids, out, memo);
        kids.pop_back();
      }
    }
  }

  std::string name_;
  std::set<Code> objects_;
  std::map<Code, ArrowSpec> gens_;
};

}  // namespace

Presentation Presentation::fromJson(const json& j) {
  rejectUnknown(j, "$", {"objects", "arrows", "composition", "compositionTable", "action"});
  Presentation p;
  if (!j.contains("objects")) throw PresentationError("$.objects", "missing");
  p.objects = atomsAt(j["objects"], "$.objects");
  if (j.contains("arrows")) {
    const auto& arr = j["arrows"];
    if (!arr.is_array()) throw PresentationError("$.arrows", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "arrows[" + std::to_string(i) + "]";
      rejectUnknown(arr[i], where, {"code", "source", "target", "size"});
      ArrowSpec a;
      if (!arr[i].contains("code") || !arr[i].contains("target") || !arr[i].contains("source"))
        throw PresentationError(where, "code, source and target are required");
      a.code = atomAt(arr[i]["code"], where + ".code");
      a.source = atomsAt(arr[i]["source"], where + ".source");
      a.target = atomAt(arr[i]["target"], where + ".target");
      a.size = arr[i].value("size", 1);
      p.arrows.push_back(std::move(a));
    }
  }
  if (j.contains("composition") == j.contains("compositionTable"))
    throw PresentationError("$", "exactly one of composition/compositionTable is required");
  if (j.contains("composition")) {
    if (j["composition"] != "free-on-generators")
      throw PresentationError("$.composition", "only \"free-on-generators\" is understood");
    p.freeOnGenerators = true;
  } else {
    const auto& tab = j["compositionTable"];
    if (!tab.is_array()) throw PresentationError("$.compositionTable", "expected an array");
    for (std::size_t i = 0; i < tab.size(); ++i) {
      std::string where = "compositionTable[" + std::to_string(i) + "]";
      rejectUnknown(tab[i], where, {"arrow", "args", "result", "perm"});
      CompositionEntry e;
      e.arrow = atomAt(tab[i].at("arrow"), where + ".arrow");
      e.args = atomsAt(tab[i].at("args"), where + ".args");
      e.result = atomAt(tab[i].at("result"), where + ".result");
      if (tab[i].contains("perm")) e.perm = permAt(tab[i]["perm"], where + ".perm");
      p.table.push_back(std::move(e));
    }
  }
  if (!j.contains("action")) throw PresentationError("$.action", "missing");
  const auto& act = j["action"];
  if (act.is_string()) {
    if (act != "freely-symmetric")
      throw PresentationError("$.action", "expected \"freely-symmetric\" or a list of relations");
  } else if (act.is_array()) {
    for (std::size_t i = 0; i < act.size(); ++i) {
      std::string where = "action[" + std::to_string(i) + "]";
      rejectUnknown(act[i], where, {"arrow", "perm", "equals"});
      StabilizerSpec s;
      s.arrow = atomAt(act[i].at("arrow"), where + ".arrow");
      s.perm = permAt(act[i].at("perm"), where + ".perm");
      if (atomAt(act[i].at("equals"), where + ".equals") != s.arrow)
        throw PresentationError(where + ".equals", "only relations arrow.perm = arrow are supported");
      if (!s.perm.isIdentity()) p.stabilizers.push_back(std::move(s));
    }
  } else {
    throw PresentationError("$.action", "expected a string or an array");
  }
  // Table entries without a perm get the identity of the result's arity,
  // filled in once arrows are known.
  std::map<Code, std::size_t> arity;
  for (const auto& x : p.objects) arity[identityCode(x)] = 1;
  for (const auto& a : p.arrows) arity[a.code] = a.source.size();
  for (std::size_t i = 0; i < p.table.size(); ++i) {
    auto& e = p.table[i];
    if (e.perm.degree() == 0 && arity.count(e.result)) e.perm = Perm::identity(arity[e.result]);
  }
  return p;
}

json Presentation::toJson() const {
  json j;
  j["objects"] = objects;
  j["arrows"] = json::array();
  for (const auto& a : arrows)
    j["arrows"].push_back({{"code", a.code}, {"source", a.source}, {"target", a.target}, {"size", a.size}});
  if (freeOnGenerators) {
    j["composition"] = "free-on-generators";
  } else {
    j["compositionTable"] = json::array();
    for (const auto& e : table)
      j["compositionTable"].push_back(
          {{"arrow", e.arrow}, {"args", e.args}, {"result", e.result}, {"perm", e.perm.oneBased()}});
  }
  if (stabilizers.empty()) {
    j["action"] = "freely-symmetric";
  } else {
    j["action"] = json::array();
    for (const auto& s : stabilizers)
      j["action"].push_back({{"arrow", s.arrow}, {"perm", s.perm.oneBased()}, {"equals", s.arrow}});
  }
  return j;
}

MulticatPtr buildMulticat(const Presentation& pres, std::string name) {
  if (pres.freeOnGenerators) {
    if (!pres.stabilizers.empty())
      throw PresentationError("$.action", "a free presentation is freely symmetric by construction");
    return std::make_shared<FreeMulticat>(pres, std::move(name));
  }
  return std::make_shared<TableMulticat>(pres, std::move(name));
}

MulticatPtr theMulticatI() {
  Presentation p;
  p.objects = {"pt"};
  return buildMulticat(p, "I");
}

Presentation presentationOf(const SymMulticat& q, int maxSize) {
  Presentation p;
  p.objects = q.objects(maxSize);
  std::vector<Code> planar;
  for (int s = 0; s <= maxSize; ++s)
    for (auto& c : q.planarArrows(s)) planar.push_back(std::move(c));
  for (const auto& c : planar)
    p.arrows.push_back({c, q.planarSources(c), q.planarTarget(c), q.arrowSize(c)});
  std::map<Code, std::vector<Code>> byTarget;
  for (const auto& c : planar) byTarget[q.planarTarget(c)].push_back(c);
  std::set<Code> listed(planar.begin(), planar.end());
  for (const auto& f : planar) {
    auto src = q.planarSources(f);
    std::vector<Code> args;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == src.size()) {
        std::vector<Arrow> gs;
        for (const auto& a : args) gs.push_back(q.planarArrow(a));
        Arrow r = q.compose(q.planarArrow(f), gs);
        if (listed.count(r.planar)) p.table.push_back({f, args, r.planar, r.perm});
        return;
      }
      for (const auto& g : byTarget[src[i]]) {
        args.push_back(g);
        rec(i + 1);
        args.pop_back();
      }
    };
    if (src.size() <= 3) rec(0);
  }
  return p;
}

}  // namespace opetope
