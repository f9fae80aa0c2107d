#pragma once

#include <stdexcept>
#include <string>

namespace fralim {

// The concrete category genuinely lacks the requested construction (for
// instance mixed pushouts over linear orders). Carries a witness description.
class UnsupportedOperation : public std::runtime_error {
public:
    UnsupportedOperation(std::string what, std::string witness)
        : std::runtime_error(std::move(what)), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

// A bounded search ran out of budget before reaching a verdict. Recoverable:
// callers may retry with a larger budget.
class DepthExhausted : public std::runtime_error {
public:
    explicit DepthExhausted(std::string what) : std::runtime_error(std::move(what)) {}
};

} // namespace fralim
