#pragma once

#include <stdexcept>
#include <string>

namespace fanspec {

enum class ErrorKind { Parse, Validation, Resource, Budget, Argument, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
// Raised when an enumeration would exceed its configured cap.
struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error(ErrorKind::Resource, w) {}
};
// Raised by the brute-force oracles before exponential work starts.
struct BudgetError : Error {
  explicit BudgetError(const std::string& w) : Error(ErrorKind::Budget, w) {}
};
struct ArgumentError : Error {
  explicit ArgumentError(const std::string& w) : Error(ErrorKind::Argument, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

}  // namespace fanspec
