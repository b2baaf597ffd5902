#include "opetope/report.hpp"

namespace opetope {

namespace {
constexpr std::size_t kKeptWitnesses = 5;
}

void CheckResult::fail(std::string witness) {
  ok = false;
  if (counterexamples.size() < kKeptWitnesses) counterexamples.push_back(std::move(witness));
}

nlohmann::json CheckResult::toJson() const {
  return {{"check", check}, {"ok", ok}, {"cases", cases}, {"counterexamples", counterexamples}};
}

bool Report::ok() const {
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

CheckResult& Report::add(std::string check) {
  results.push_back({std::move(check)});
  return results.back();
}

const CheckResult* Report::firstFailure() const {
  for (const auto& r : results)
    if (!r.ok) return &r;
  return nullptr;
}

nlohmann::json Report::toJson() const {
  nlohmann::json j{{"subject", subject}, {"ok", ok()}, {"checks", nlohmann::json::array()}};
  for (const auto& r : results) j["checks"].push_back(r.toJson());
  return j;
}

}  // namespace opetope
