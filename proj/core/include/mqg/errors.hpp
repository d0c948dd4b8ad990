#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqg {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a time step produces non-finite values. The step index is
/// filled in by the integration loop that owns the step counter.
struct BlowupError : Error {
    explicit BlowupError(const std::string& what, std::size_t step = 0)
        : Error(what), step_index(step) {}
    std::size_t step_index;
};

/// Run-config parse failure; carries the offending line and key.
struct ConfigError : Error {
    ConfigError(const std::string& what, int line_, std::string key_)
        : Error(what), line(line_), key(std::move(key_)) {}
    int line;
    std::string key;
};

} // namespace mqg
