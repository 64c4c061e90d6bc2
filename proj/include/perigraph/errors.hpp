#pragma once

#include <stdexcept>
#include <string>

namespace perigraph {

// Malformed or out-of-contract input (bad file, bad vertex id, non-canonical
// edge spec, improper coloring where a proper one is required, ...).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A configured cap (transfer state count, group closure size, ...) was hit
// before the computation finished.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace perigraph
