#include "rulplan/errors.hpp"

namespace rulplan {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "validation failed:";
  for (const auto& v : violations) {
    msg += " ";
    msg += v.path.empty() ? "<root>" : v.path;
    msg += " ";
    msg += v.reason;
    msg += ";";
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace rulplan
