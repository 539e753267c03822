#include "prc/errors.hpp"

namespace prc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::RangeInverted: return "range-inverted";
    case ErrorKind::DeadWindow: return "dead-window";
    case ErrorKind::Exhaustion: return "exhaustion";
    case ErrorKind::Reducible: return "reducible";
    case ErrorKind::Undecidable: return "undecidable";
    case ErrorKind::DepthInsufficient: return "depth-insufficient";
  }
  return "unknown";
}

}  // namespace prc
