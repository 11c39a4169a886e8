#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace expanse {

// Default element-count cap for every enumeration. Overridable via the
// EXPANSE_BUDGET environment variable; operations fail loudly instead of
// degrading when the cap is hit.
inline std::size_t default_budget() {
    if (const char* env = std::getenv("EXPANSE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error("budget exceeded: " + what) {}
};

struct malformed_input : std::runtime_error {
    explicit malformed_input(const std::string& what) : std::runtime_error("malformed input: " + what) {}
};

// Raised when a structural guarantee fails (e.g. a disconnected
// intersection graph). Signals a bug, not a data state.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error("invariant violation: " + what) {}
};

} // namespace expanse
