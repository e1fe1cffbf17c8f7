#pragma once

#include <stdexcept>
#include <string>

namespace fiegarch {

/// Failure categories. The CLI maps `Usage` and `InsufficientData` to exit
/// code 2 and every numeric kind to exit code 3.
enum class ErrorKind {
    Usage,
    InsufficientData,
    RootInsideDisk,
    GammaPole,
    QuadratureFailure,
    DivergentIntegral,
    NonStationary,
    NumericOverflow,
    NonPositiveDensity,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_numeric() const noexcept {
        return kind_ != ErrorKind::Usage && kind_ != ErrorKind::InsufficientData &&
               kind_ != ErrorKind::Parse;
    }

private:
    ErrorKind kind_;
};

}  // namespace fiegarch
