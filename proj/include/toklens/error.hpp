#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toklens {

/// Domain error with a short machine-readable code ("utf8", "parse",
/// "not-found", ...) and a human-readable message. The CLI prints these
/// as `error: <code>: <message>`.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace toklens
