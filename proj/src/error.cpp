#include "isd/error.hpp"

namespace isd {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::UnsupportedDegree: return "UnsupportedDegree";
    case Errc::MisalignedInputs: return "MisalignedInputs";
    case Errc::EmptyContactSet: return "EmptyContactSet";
    case Errc::NonPositiveXi: return "NonPositiveXi";
    case Errc::CrossTermWithoutPairing: return "CrossTermWithoutPairing";
    case Errc::EmptyStats: return "EmptyStats";
    case Errc::WeightMisalignment: return "WeightMisalignment";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::NegativeX: return "NegativeX";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyFile: return "EmptyFile";
  }
  return "Unknown";
}

}  // namespace isd
