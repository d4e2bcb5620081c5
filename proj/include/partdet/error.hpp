#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace partdet {

/// Library error with a stable machine-readable code alongside the message.
/// Codes are short identifiers like "BadTable", "NotACovering",
/// "BudgetExceeded"; the CLI maps any Error to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace partdet
