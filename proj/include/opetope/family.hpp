#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace opetope {

/// Canonical text code of an object, arrow, operation or element.
using Code = std::string;

struct Element {
  Code code;
  Code fiber;
  auto operator<=>(const Element&) const = default;
};

/// A finite family X -> S: element codes, each sitting over a base code.
/// Value-compared; elements are kept sorted by code.
class Family {
 public:
  Family() = default;
  /// Throws std::invalid_argument on duplicate element codes or a fiber
  /// outside the base.
  Family(std::vector<Code> base, std::vector<Element> elements);

  const std::vector<Code>& base() const { return base_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(const Code& c) const;
  bool inBase(const Code& s) const;
  const Code& fiberOf(const Code& c) const;
  std::vector<Code> codes() const;

  bool operator==(const Family&) const = default;

 private:
  std::vector<Code> base_;
  std::vector<Element> elements_;
};

/// Pair codes are the JSON array of the two member codes, so both
/// projections can be read back.
Code pairCode(const Code& a, const Code& b);
std::pair<Code, Code> unpairCode(const Code& c);

/// Fibre product of two families over the same base.
Family pullbackFamilies(const Family& p, const Family& q);

/// Disjoint union, elements tagged "L"/"R" with pairCode.
Family coproductFamilies(const Family& x, const Family& y);

/// A function between finite sets of codes.
struct SetMap {
  std::vector<Code> domain;
  std::vector<Code> codomain;
  std::map<Code, Code> fn;

  const Code& operator()(const Code& c) const;
  bool isInjective() const;
};

/// Builds the map of families given by fn, checking that it is total and
/// fibre-preserving.
SetMap familyMap(const Family& from, const Family& to, std::map<Code, Code> fn);

SetMap composeMaps(const SetMap& second, const SetMap& first);

/// A commuting square
///     A --top--> B
///     |          |
///   left       right
///     v          v
///     C --bottom-> D
struct Square {
  SetMap top, left, right, bottom;
};

struct Verdict {
  bool ok = true;
  std::string diagnostic;
};

/// True iff the square commutes and A -> B x_D C is a bijection.
Verdict isPullbackSquare(const Square& sq);

}  // namespace opetope
