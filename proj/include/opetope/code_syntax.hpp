#pragma once

#include <span>
#include <string>
#include <vector>

#include "opetope/family.hpp"

namespace opetope {

/// Surface syntax shared by every tree-shaped code:
///   atom            e.g. "pt", "ar", user object codes
///   u(c)            a unit (no-node tree) over c
///   n(c;t1,...,tm)  a node labelled c with children t1..tm in slot order
/// Only the syntax lives here; what a label or a child means is up to the
/// module that owns the code.
struct CodeTerm {
  enum class Kind { Atom, Unit, Node };
  Kind kind = Kind::Atom;
  Code head;                   // atom text, unit object or node label
  std::vector<Code> children;  // Node only
};

/// Throws std::invalid_argument on malformed text.
CodeTerm splitCode(const Code& code);

Code unitCode(const Code& object);
Code nodeCode(const Code& label, std::span<const Code> children);

/// Atoms may not contain the structural characters "(),;" or be empty.
bool isValidAtom(const Code& atom);

/// Code of the identity arrow on a base-level object; "ar" for the point.
Code identityCode(const Code& object);

/// Total order used for every emitted code list: size first, then text.
struct SizedCode {
  int size;
  Code code;
  auto operator<=>(const SizedCode&) const = default;
};

}  // namespace opetope
