#pragma once

#include <vector>

#include "opetope/monad_checks.hpp"
#include "opetope/report.hpp"

namespace opetope {

/// A k-opetope named by its canonical code. Dimension 0 is "pt", dimension
/// 1 is "ar", higher dimensions are trees u(c) / n(c;t1,...,tm) of lower
/// codes.
struct OpetopeCode {
  int dim = 0;
  int size = 0;
  Code body;

  auto operator<=>(const OpetopeCode&) const = default;
};

/// Objects of the k-fold slice of I, size <= maxSize, ordered by (size, code).
std::vector<OpetopeCode> bdOpetopes(int k, int maxSize);
/// Base of the k-th free-operad monad over the identity, same order.
std::vector<OpetopeCode> leinsterOpetopes(int k, int maxSize);

/// Both routes agree stratum by stratum; for k >= 2 also runs the
/// comparison iso one dimension down.
Report checkOpetopeEquivalence(int k, int maxSize, const MonadCheckConfig& cfg = {});

struct CountRow {
  int dim = 0;
  std::vector<std::size_t> bd;        // index = size
  std::vector<std::size_t> leinster;
};
std::vector<CountRow> countTable(int maxDim, int maxSize);

/// {"dim", "size", "codes"} per size.
nlohmann::json opetopesToJson(int k, const std::vector<OpetopeCode>& codes, int maxSize);
nlohmann::json countTableToJson(const std::vector<CountRow>& rows);

}  // namespace opetope
