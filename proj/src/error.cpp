#include "sqpeg/error.hpp"

namespace sqpeg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IrregularCurve: return "IrregularCurve";
    case ErrorKind::RegularityLost: return "RegularityLost";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NotOnSlq: return "NotOnSlq";
    case ErrorKind::PlanarConfiguration: return "PlanarConfiguration";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonTransversePath: return "NonTransversePath";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace sqpeg
