#pragma once

#include <stdexcept>
#include <string>

namespace dgopt {

// Malformed input file (bad tokens, wrong row counts, unknown keys).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Network is not a rooted radial tree (cycle, disconnection, self-loop, ...).
struct topology_error : std::runtime_error {
    explicit topology_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value is outside its documented domain (negative load, bad multiplier, ...).
struct value_error : std::runtime_error {
    explicit value_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Run configuration problems (missing files, inconsistent settings).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dgopt
