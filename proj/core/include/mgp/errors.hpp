#ifndef MGP_ERRORS_HPP
#define MGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mgp {

// bad user input: malformed files, unknown codes, out-of-range values
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// network shape the engine cannot clear (unexpected cycles and the like)
struct topology_error : input_error {
    explicit topology_error(const std::string& msg) : input_error(msg) {}
};

// invariant breakage inside the engine itself
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mgp

#endif
