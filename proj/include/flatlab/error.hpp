#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flatlab {

// Domain error with a stable machine-readable code ("RationalParameter",
// "LengthMismatch", ...). The CLI maps these to exit code 1 and prints a
// single-line report; tests match on code().
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace flatlab
