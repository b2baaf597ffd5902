#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opetope/multicat.hpp"

namespace opetope {

/// Parse or validation failure in a user presentation; `where` is a JSON
/// path such as "arrows[2].target".
class PresentationError : public std::runtime_error {
 public:
  PresentationError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ArrowSpec {
  Code code;
  std::vector<Code> source;
  Code target;
  int size = 0;
};

struct CompositionEntry {
  Code arrow;
  std::vector<Code> args;
  Code result;
  Perm perm;  // result.perm is the composite
};

struct StabilizerSpec {
  Code arrow;
  Perm perm;  // declared arrow.perm == arrow
};

/// A finite multicategory as written in a JSON file:
///   {"objects": [...],
///    "arrows": [{"code", "source": [...], "target", "size"}],
///    "composition": "free-on-generators"  |  "compositionTable": [...],
///    "action": "freely-symmetric"  |  [{"arrow", "perm": [...], "equals"}]}
/// Identity arrows are implicit. Unknown fields are rejected.
struct Presentation {
  std::vector<Code> objects;
  std::vector<ArrowSpec> arrows;
  bool freeOnGenerators = false;
  std::vector<CompositionEntry> table;
  std::vector<StabilizerSpec> stabilizers;

  static Presentation fromJson(const nlohmann::json& j);
  nlohmann::json toJson() const;
};

/// Builds the multicategory; throws PresentationError on inconsistent data.
MulticatPtr buildMulticat(const Presentation& pres, std::string name = "user");

/// One object "pt", one arrow "ar" (its identity).
MulticatPtr theMulticatI();

/// Presentation of q truncated at maxSize: objects and planar arrows of size
/// <= maxSize, plus the composition table among planar arrows whose
/// composite stays within the bound.
Presentation presentationOf(const SymMulticat& q, int maxSize);

}  // namespace opetope
