#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fibcat {

// Every error carries a short kind tag ("NonAssociative", "NotAFibration", ...)
// and the indices it is about, so the CLI can print and serialize it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::vector<int> indices, const std::string& detail = {});

  const std::string& kind() const { return kind_; }
  const std::vector<int>& indices() const { return indices_; }

 private:
  std::string kind_;
  std::vector<int> indices_;
};

// Malformed input: bad JSON, indices out of range, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

class CategoryError : public Error {
 public:
  using Error::Error;
};

class FunctorError : public Error {
 public:
  using Error::Error;
};

// Raised by the classification audit; means a bug, not a verdict.
class AuditError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibcat
