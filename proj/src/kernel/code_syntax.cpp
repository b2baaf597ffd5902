#include "opetope/code_syntax.hpp"

#include <stdexcept>

namespace opetope {

namespace {

// Splits s on `sep` at parenthesis depth zero.
std::vector<std::string> splitTop(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced code: " + s);
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced code: " + s);
  parts.push_back(cur);
  return parts;
}

}  // namespace

bool isValidAtom(const Code& atom) {
  if (atom.empty()) return false;
  for (char ch : atom)
    if (ch == '(' || ch == ')' || ch == ',' || ch == ';' || ch == ' ') return false;
  return true;
}

CodeTerm splitCode(const Code& code) {
  CodeTerm t;
  if (code.size() >= 3 && code[1] == '(' && code.back() == ')' &&
      (code[0] == 'u' || code[0] == 'n')) {
    std::string inner = code.substr(2, code.size() - 3);
    if (code[0] == 'u') {
      t.kind = CodeTerm::Kind::Unit;
      auto parts = splitTop(inner, ';');
      if (parts.size() != 1 || parts[0].empty())
        throw std::invalid_argument("malformed unit code: " + code);
      t.head = inner;
      return t;
    }
    auto parts = splitTop(inner, ';');
    if (parts.size() != 2 || parts[0].empty())
      throw std::invalid_argument("malformed node code: " + code);
    t.kind = CodeTerm::Kind::Node;
    t.head = parts[0];
    if (!parts[1].empty()) {
      t.children = splitTop(parts[1], ',');
      for (const auto& c : t.children)
        if (c.empty()) throw std::invalid_argument("empty child in code: " + code);
    }
    return t;
  }
  if (!isValidAtom(code)) throw std::invalid_argument("malformed code: '" + code + "'");
  t.head = code;
  return t;
}

Code unitCode(const Code& object) { return "u(" + object + ")"; }

Code nodeCode(const Code& label, std::span<const Code> children) {
  Code out = "n(" + label + ";";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    out += children[i];
  }
  return out + ")";
}

Code identityCode(const Code& object) { return object == "pt" ? "ar" : "1_" + object; }

}  // namespace opetope
