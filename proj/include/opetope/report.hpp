#pragma once

#include <deque>
#include <string>
#include <vector>

#include "json.hpp"

namespace opetope {

/// Outcome of one named check: how many cases ran and the first few
/// counterexamples found.
struct CheckResult {
  std::string check;
  bool ok = true;
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;

  void fail(std::string witness);
  nlohmann::json toJson() const;
};

struct Report {
  std::string subject;
  std::deque<CheckResult> results;  // references from add() stay valid

  bool ok() const;
  CheckResult& add(std::string check);
  /// First failing check, or nullptr.
  const CheckResult* firstFailure() const;
  nlohmann::json toJson() const;
};

}  // namespace opetope
