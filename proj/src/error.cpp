#include "anchorlab/error.hpp"

namespace anchorlab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::Singular: return "singular geometry";
        case ErrorCode::Degenerate: return "degenerate anchor placement";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::Mismatch: return "anchor count mismatch";
    }
    return "unknown error";
}

}  // namespace anchorlab
