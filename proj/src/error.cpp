#include "fibcat/error.hpp"

#include <sstream>

namespace fibcat {

namespace {
std::string render(const std::string& kind, const std::vector<int>& idx,
                   const std::string& detail) {
  std::ostringstream os;
  os << kind;
  if (!idx.empty()) {
    os << "(";
    for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << ")";
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}
}  // namespace

Error::Error(std::string kind, std::vector<int> indices, const std::string& detail)
    : std::runtime_error(render(kind, indices, detail)),
      kind_(std::move(kind)),
      indices_(std::move(indices)) {}

}  // namespace fibcat
