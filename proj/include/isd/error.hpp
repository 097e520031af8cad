#pragma once

#include <stdexcept>
#include <string>

namespace isd {

enum class Errc {
  EmptyInput,
  NegativeValue,
  NonFiniteValue,
  OutOfRange,
  UnsupportedDegree,
  MisalignedInputs,
  EmptyContactSet,
  NonPositiveXi,
  CrossTermWithoutPairing,
  EmptyStats,
  WeightMisalignment,
  SchemeMismatch,
  NegativeX,
  InvalidConfig,
  FileNotFound,
  ParseError,
  EmptyFile,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace isd
