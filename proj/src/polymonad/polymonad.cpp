#include "opetope/polymonad.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "opetope/code_syntax.hpp"

namespace opetope {

using nlohmann::json;

std::vector<Code> PolyMonad::opsUpTo(int maxSize) const {
  std::vector<Code> out;
  for (int s = 0; s <= maxSize; ++s)
    for (auto& op : ops(s)) out.push_back(std::move(op));
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> concatenation(const std::vector<std::size_t>& arities) {
  std::vector<std::vector<std::size_t>> pos;
  std::size_t next = 0;
  for (auto a : arities) {
    pos.emplace_back();
    for (std::size_t j = 0; j < a; ++j) pos.back().push_back(next++);
  }
  return pos;
}

class IdentityMonad : public PolyMonad {
 public:
  explicit IdentityMonad(std::vector<Code> base) {
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    base_ = std::move(base);
    for (const auto& s : base_) objectOf_[identityCode(s)] = s;
  }
  std::string name() const override { return "identity"; }
  std::vector<Code> base(int maxSize) const override {
    return maxSize < 0 ? std::vector<Code>{} : base_;
  }
  int baseSize(const Code&) const override { return 0; }
  std::vector<Code> ops(int size) const override {
    if (size != 0) return {};
    std::vector<Code> out;
    for (const auto& [op, s] : objectOf_) out.push_back(op);
    return out;
  }
  std::vector<Code> sources(const Code& op) const override { return {object(op)}; }
  Code target(const Code& op) const override { return object(op); }
  int size(const Code& op) const override {
    object(op);
    return 0;
  }
  Code unitOp(const Code& s) const override {
    if (!std::binary_search(base_.begin(), base_.end(), s))
      throw std::invalid_argument("identity monad: unknown object " + s);
    return identityCode(s);
  }
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override {
    if (inners.size() != 1 || object(inners[0]) != object(op))
      throw std::invalid_argument("identity monad: bad substitution into " + op);
    return {inners[0], {{0}}};
  }

 private:
  const Code& object(const Code& op) const {
    auto it = objectOf_.find(op);
    if (it == objectOf_.end()) throw std::invalid_argument("identity monad: unknown operation " + op);
    return it->second;
  }
  std::vector<Code> base_;
  std::map<Code, Code> objectOf_;
};

class FreeMonoidMonad : public PolyMonad {
 public:
  explicit FreeMonoidMonad(Code x) : x_(std::move(x)) {}
  std::string name() const override { return "free-monoid"; }
  std::vector<Code> base(int maxSize) const override {
    return maxSize < 0 ? std::vector<Code>{} : std::vector<Code>{x_};
  }
  int baseSize(const Code&) const override { return 0; }
  std::vector<Code> ops(int size) const override {
    if (size < 0) return {};
    return {"list" + std::to_string(size)};
  }
  std::vector<Code> sources(const Code& op) const override {
    return std::vector<Code>(length(op), x_);
  }
  Code target(const Code& op) const override {
    length(op);
    return x_;
  }
  int size(const Code& op) const override { return static_cast<int>(length(op)); }
  Code unitOp(const Code& s) const override {
    if (s != x_) throw std::invalid_argument("free monoid: unknown object " + s);
    return "list1";
  }
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override {
    if (inners.size() != length(op))
      throw std::invalid_argument("free monoid: " + op + " takes " + std::to_string(length(op)) +
                                  " arguments");
    std::vector<std::size_t> ar;
    std::size_t total = 0;
    for (const auto& in : inners) {
      ar.push_back(length(in));
      total += ar.back();
    }
    return {"list" + std::to_string(total), concatenation(ar)};
  }

 private:
  std::size_t length(const Code& op) const {
    if (op.rfind("list", 0) != 0 || op.size() == 4)
      throw std::invalid_argument("free monoid: unknown operation " + op);
    std::size_t n = 0;
    for (std::size_t i = 4; i < op.size(); ++i) {
      if (op[i] < '0' || op[i] > '9') throw std::invalid_argument("free monoid: unknown operation " + op);
      n = n * 10 + static_cast<std::size_t>(op[i] - '0');
    }
    if (std::to_string(n) != op.substr(4)) throw std::invalid_argument("free monoid: unknown operation " + op);
    return n;
  }
  Code x_;
};

struct OpSpec {
  std::vector<Code> source;
  Code target;
  int size = 0;
};

class TableMonad : public PolyMonad {
 public:
  TableMonad(const json& j, std::string name) : name_(std::move(name)) {
    auto where = [](const std::string& w, const std::string& what) {
      return std::invalid_argument(w + ": " + what);
    };
    auto reject = [&](const json& o, const std::string& w, std::initializer_list<const char*> keys) {
      if (!o.is_object()) throw where(w, "expected an object");
      for (const auto& [k, v] : o.items())
        if (std::find_if(keys.begin(), keys.end(), [&](const char* x) { return k == x; }) == keys.end())
          throw where(w + "." + k, "unknown field");
    };
    reject(j, "$", {"base", "operations", "units", "substitution"});
    for (const auto& s : j.at("base")) base_.insert(s.get<std::string>());
    const auto& ops = j.at("operations");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      std::string w = "operations[" + std::to_string(i) + "]";
      reject(ops[i], w, {"code", "source", "target", "size"});
      OpSpec o;
      o.source = ops[i].at("source").get<std::vector<std::string>>();
      o.target = ops[i].at("target").get<std::string>();
      o.size = ops[i].value("size", 1);
      Code code = ops[i].at("code").get<std::string>();
      if (!isValidAtom(code)) throw where(w + ".code", "invalid code");
      if (!base_.count(o.target)) throw where(w + ".target", "not in base");
      for (const auto& s : o.source)
        if (!base_.count(s)) throw where(w + ".source", s + " not in base");
      if (!ops_.emplace(code, o).second) throw where(w + ".code", "duplicate operation");
    }
    if (j.contains("units")) {
      for (const auto& [s, op] : j["units"].items()) {
        std::string w = "units." + s;
        Code c = op.get<std::string>();
        if (!base_.count(s)) throw where(w, "not in base");
        auto it = ops_.find(c);
        if (it == ops_.end() || it->second.source != std::vector<Code>{s} || it->second.target != s)
          throw where(w, "unit must be an operation " + s + " -> " + s);
        units_[s] = c;
        isUnit_.insert(c);
      }
    }
    for (const auto& s : base_)
      if (!units_.count(s)) throw where("units", "missing unit for " + s);
    if (j.contains("substitution")) {
      const auto& tab = j["substitution"];
      for (std::size_t i = 0; i < tab.size(); ++i) {
        std::string w = "substitution[" + std::to_string(i) + "]";
        reject(tab[i], w, {"op", "args", "result", "positions"});
        Code op = tab[i].at("op").get<std::string>();
        auto args = tab[i].at("args").get<std::vector<std::string>>();
        Code result = tab[i].at("result").get<std::string>();
        const OpSpec& o = spec(op);
        if (args.size() != o.source.size()) throw where(w + ".args", "wrong number of arguments");
        std::vector<std::size_t> ar;
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (spec(args[k]).target != o.source[k]) throw where(w + ".args", args[k] + " does not fit");
          ar.push_back(spec(args[k]).source.size());
        }
        Substitution sub{result, concatenation(ar)};
        if (tab[i].contains("positions"))
          sub.positions = tab[i]["positions"].get<std::vector<std::vector<std::size_t>>>();
        if (spec(result).target != o.target) throw where(w + ".result", "target mismatch");
        std::vector<int> hit(spec(result).source.size(), 0);
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (sub.positions.size() != args.size() || sub.positions[k].size() != ar[k])
            throw where(w + ".positions", "shape does not match the arguments");
          for (std::size_t jj = 0; jj < ar[k]; ++jj) {
            std::size_t p = sub.positions[k][jj];
            if (p >= hit.size() || hit[p]++ || spec(result).source[p] != spec(args[k]).source[jj])
              throw where(w + ".positions", "not a source-preserving bijection");
          }
        }
        if (static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)) != hit.size())
          throw where(w + ".positions", "not a source-preserving bijection");
        table_[{op, args}] = std::move(sub);
      }
    }
  }

  std::string name() const override { return name_; }
  std::vector<Code> base(int maxSize) const override {
    return maxSize < 0 ? std::vector<Code>{} : std::vector<Code>(base_.begin(), base_.end());
  }
  int baseSize(const Code&) const override { return 0; }
  std::vector<Code> ops(int size) const override {
    std::vector<Code> out;
    for (const auto& [c, o] : ops_)
      if (o.size == size) out.push_back(c);
    return out;
  }
  std::vector<Code> sources(const Code& op) const override { return spec(op).source; }
  Code target(const Code& op) const override { return spec(op).target; }
  int size(const Code& op) const override { return spec(op).size; }
  Code unitOp(const Code& s) const override {
    auto it = units_.find(s);
    if (it == units_.end()) throw std::invalid_argument("unknown object " + s);
    return it->second;
  }
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override {
    const OpSpec& o = spec(op);
    if (inners.size() != o.source.size())
      throw std::invalid_argument("substitute: " + op + " takes " + std::to_string(o.source.size()) +
                                  " arguments");
    std::vector<std::size_t> ar;
    for (std::size_t k = 0; k < inners.size(); ++k) {
      if (spec(inners[k]).target != o.source[k])
        throw std::invalid_argument("substitute: " + inners[k] + " does not fit " + op);
      ar.push_back(spec(inners[k]).source.size());
    }
    if (isUnit_.count(op)) return {inners[0], concatenation(ar)};
    if (std::all_of(inners.begin(), inners.end(), [&](const Code& c) { return isUnit_.count(c) > 0; }))
      return {op, concatenation(ar)};
    auto it = table_.find({op, inners});
    if (it == table_.end()) {
      std::string args;
      for (const auto& c : inners) args += (args.empty() ? "" : ",") + c;
      throw std::invalid_argument("no substitution entry for " + op + "(" + args + ")");
    }
    return it->second;
  }

 private:
  const OpSpec& spec(const Code& op) const {
    auto it = ops_.find(op);
    if (it == ops_.end()) throw std::invalid_argument("unknown operation " + op);
    return it->second;
  }
  std::string name_;
  std::set<Code> base_;
  std::map<Code, OpSpec> ops_;
  std::map<Code, Code> units_;
  std::set<Code> isUnit_;
  std::map<std::pair<Code, std::vector<Code>>, Substitution> table_;
};

class TweakedMonad : public PolyMonad {
 public:
  using Tweak = std::function<Substitution(const Code&, const std::vector<Code>&, Substitution)>;
  TweakedMonad(MonadPtr m, std::string name, Tweak t)
      : m_(std::move(m)), name_(std::move(name)), tweak_(std::move(t)) {}
  std::string name() const override { return name_; }
  std::vector<Code> base(int s) const override { return m_->base(s); }
  int baseSize(const Code& s) const override { return m_->baseSize(s); }
  std::vector<Code> ops(int s) const override { return m_->ops(s); }
  std::vector<Code> sources(const Code& op) const override { return m_->sources(op); }
  Code target(const Code& op) const override { return m_->target(op); }
  int size(const Code& op) const override { return m_->size(op); }
  Code unitOp(const Code& s) const override { return m_->unitOp(s); }
  Substitution substitute(const Code& op, const std::vector<Code>& inners) const override {
    return tweak_(op, inners, m_->substitute(op, inners));
  }

 private:
  MonadPtr m_;
  std::string name_;
  Tweak tweak_;
};

}  // namespace

MonadPtr identityMonad(std::vector<Code> base) { return std::make_shared<IdentityMonad>(std::move(base)); }
MonadPtr freeMonoidMonad(Code object) { return std::make_shared<FreeMonoidMonad>(std::move(object)); }

MonadPtr monadFromJson(const json& j, std::string name) {
  try {
    return std::make_shared<TableMonad>(j, std::move(name));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("monad signature: ") + e.what());
  }
}

MonadPtr withSubstitute(MonadPtr m, std::string name, TweakedMonad::Tweak tweak) {
  return std::make_shared<TweakedMonad>(std::move(m), std::move(name), std::move(tweak));
}

// ---------------------------------------------------------------------------

namespace {

// JSON strings with only \" and \\ escapes are handled here; anything else
// goes through the json library.
bool appendQuoted(std::string& out, const Code& c) {
  out += '"';
  for (char ch : c) {
    if (static_cast<unsigned char>(ch) < 0x20 || static_cast<unsigned char>(ch) >= 0x7f) return false;
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return true;
}

std::optional<std::string> plainString(const Code& c, std::size_t& i) {
  if (i >= c.size() || c[i] != '"') return std::nullopt;
  std::string out;
  for (++i; i < c.size(); ++i) {
    char ch = c[i];
    if (ch == '"') {
      ++i;
      return out;
    }
    if (ch == '\\') {
      if (++i >= c.size() || (c[i] != '"' && c[i] != '\\')) return std::nullopt;
      ch = c[i];
    }
    out += ch;
  }
  return std::nullopt;
}

std::optional<std::pair<Code, std::vector<Code>>> fastParts(const Code& c) {
  std::size_t i = 1;
  if (c.size() < 2 || c[0] != '[') return std::nullopt;
  auto op = plainString(c, i);
  if (!op || c.compare(i, 2, ",[") != 0) return std::nullopt;
  i += 2;
  std::vector<Code> labels;
  if (i < c.size() && c[i] == ']') {
    ++i;
  } else {
    while (true) {
      auto l = plainString(c, i);
      if (!l) return std::nullopt;
      labels.push_back(std::move(*l));
      if (i < c.size() && c[i] == ',') {
        ++i;
        continue;
      }
      if (i < c.size() && c[i] == ']') {
        ++i;
        break;
      }
      return std::nullopt;
    }
  }
  if (i + 1 != c.size() || c[i] != ']') return std::nullopt;
  return std::make_pair(std::move(*op), std::move(labels));
}

}  // namespace

Code tElementCode(const Code& op, const std::vector<Code>& labels) {
  std::string out = "[";
  bool plain = appendQuoted(out, op);
  out += ",[";
  for (std::size_t i = 0; plain && i < labels.size(); ++i) {
    if (i) out += ',';
    plain = appendQuoted(out, labels[i]);
  }
  if (!plain) return json::array({op, labels}).dump();
  return out + "]]";
}

std::pair<Code, std::vector<Code>> tElementParts(const Code& code) {
  if (auto p = fastParts(code)) return std::move(*p);
  auto j = json::parse(code);
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("not a T-element code: " + code);
  return {j[0].get<std::string>(), j[1].get<std::vector<std::string>>()};
}

Family applyT(const PolyMonad& m, const Family& x, int maxSize) {
  std::map<Code, std::vector<Code>> fibre;
  for (const auto& s : x.base()) fibre[s];
  for (const auto& e : x.elements()) fibre[e.fiber].push_back(e.code);
  std::vector<Element> out;
  for (const auto& op : m.opsUpTo(maxSize)) {
    Code t = m.target(op);
    if (!fibre.count(t)) continue;
    auto src = m.sources(op);
    std::vector<const std::vector<Code>*> choices;
    bool empty = false;
    for (const auto& s : src) {
      auto it = fibre.find(s);
      if (it == fibre.end() || it->second.empty()) {
        empty = true;
        break;
      }
      choices.push_back(&it->second);
    }
    if (empty) continue;
    std::vector<Code> labels(src.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == src.size()) {
        out.push_back({tElementCode(op, labels), t});
        return;
      }
      for (const auto& c : *choices[i]) {
        labels[i] = c;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return Family(x.base(), std::move(out));
}

FamilyArrow makeArrow(const Family& from, const Family& to, std::map<Code, Code> fn) {
  SetMap map = familyMap(from, to, std::move(fn));
  return {from, to, std::move(map)};
}

FamilyArrow applyTMap(const PolyMonad& m, const FamilyArrow& f, int maxSize) {
  Family tx = applyT(m, f.from, maxSize);
  Family ty = applyT(m, f.to, maxSize);
  std::map<Code, Code> fn;
  for (const auto& e : tx.elements()) {
    auto [op, labels] = tElementParts(e.code);
    for (auto& l : labels) l = f.map(l);
    fn[e.code] = tElementCode(op, labels);
  }
  return makeArrow(tx, ty, std::move(fn));
}

FamilyArrow unitComponent(const PolyMonad& m, const Family& x) {
  int bound = 0;
  for (const auto& s : x.base()) bound = std::max(bound, m.size(m.unitOp(s)));
  Family tx = applyT(m, x, bound);
  std::map<Code, Code> fn;
  for (const auto& e : x.elements()) fn[e.code] = tElementCode(m.unitOp(e.fiber), {e.code});
  return makeArrow(x, tx, std::move(fn));
}

std::pair<Code, std::vector<Code>> multiply(
    const PolyMonad& m, const Code& op, const std::vector<std::pair<Code, std::vector<Code>>>& inner) {
  std::vector<Code> ops;
  for (const auto& [o, l] : inner) ops.push_back(o);
  Substitution sub = m.substitute(op, ops);
  std::size_t total = 0;
  for (const auto& [o, l] : inner) total += l.size();
  std::vector<Code> labels(total);
  std::vector<bool> seen(total, false);
  if (sub.positions.size() != inner.size())
    throw std::invalid_argument("substitute returned positions of the wrong shape for " + op);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (sub.positions[i].size() != inner[i].second.size())
      throw std::invalid_argument("substitute returned positions of the wrong shape for " + op);
    for (std::size_t j = 0; j < inner[i].second.size(); ++j) {
      std::size_t p = sub.positions[i][j];
      if (p >= total || seen[p]) throw std::invalid_argument("substitute positions are not a bijection");
      seen[p] = true;
      labels[p] = inner[i].second[j];
    }
  }
  return {sub.op, labels};
}

FamilyArrow multComponent(const PolyMonad& m, const Family& x, int maxSize, int codomainSize) {
  Family tx = applyT(m, x, maxSize);
  Family ttx = applyT(m, tx, maxSize);
  std::map<Code, Code> fn;
  int bound = codomainSize;
  for (const auto& e : ttx.elements()) {
    auto [op, labels] = tElementParts(e.code);
    std::vector<std::pair<Code, std::vector<Code>>> inner;
    for (const auto& l : labels) inner.push_back(tElementParts(l));
    auto [cop, clabels] = multiply(m, op, inner);
    bound = std::max(bound, m.size(cop));
    fn[e.code] = tElementCode(cop, clabels);
  }
  return makeArrow(ttx, applyT(m, x, bound), std::move(fn));
}

// ---------------------------------------------------------------------------

MonadOpfunctor identityOpfunctor(MonadPtr m) {
  auto mm = m;
  return {m, m, [](const Code& s) { return s; },
          [mm](const Code& op) {
            std::vector<std::size_t> from(mm->arity(op));
            for (std::size_t i = 0; i < from.size(); ++i) from[i] = i;
            return OpImage{op, from};
          }};
}

MonadOpfunctor composeOpfunctors(const MonadOpfunctor& second, const MonadOpfunctor& first) {
  return {first.source, second.target,
          [second, first](const Code& s) { return second.baseMap(first.baseMap(s)); },
          [second, first](const Code& op) {
            OpImage a = first.phi(op);
            OpImage b = second.phi(a.op);
            OpImage r{b.op, {}};
            for (auto j : b.from) r.from.push_back(a.from.at(j));
            return r;
          }};
}

Family pushForward(const MonadOpfunctor& f, const Family& x) {
  std::set<Code> base;
  for (const auto& s : x.base()) base.insert(f.baseMap(s));
  std::vector<Element> els;
  for (const auto& e : x.elements()) els.push_back({e.code, f.baseMap(e.fiber)});
  return Family({base.begin(), base.end()}, std::move(els));
}

FamilyArrow phiComponent(const MonadOpfunctor& f, const Family& x, int maxSize, int codomainSize) {
  Family ut = pushForward(f, applyT(*f.source, x, maxSize));
  Family ux = pushForward(f, x);
  std::map<Code, Code> fn;
  int bound = codomainSize;
  for (const auto& e : ut.elements()) {
    auto [op, labels] = tElementParts(e.code);
    OpImage img = f.phi(op);
    std::vector<Code> moved;
    for (auto j : img.from) moved.push_back(labels.at(j));
    bound = std::max(bound, f.target->size(img.op));
    fn[e.code] = tElementCode(img.op, moved);
  }
  return makeArrow(ut, applyT(*f.target, ux, bound), std::move(fn));
}

}  // namespace opetope
