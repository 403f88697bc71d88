#pragma once

#include <stdexcept>
#include <string>

namespace anchorlab {

enum class ErrorCode {
    InvalidArgument,
    Singular,     // position coincides with an anchor, or a rank-deficient system
    Degenerate,   // every anchor pair is collinear with the evaluation point
    Io,
    Parse,
    Mismatch,     // anchor count disagrees between inputs
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace anchorlab
