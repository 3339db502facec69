#ifndef SPINELAB_ERRORS_HPP
#define SPINELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinelab {

// Input violates a structural invariant (disconnected graph, cyclic "forest", ...).
struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation is undefined for these parameters (degree at s=0, beta at s<2, ...).
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition of a checkable claim fails; distinct from the claim being false.
struct not_applicable_error : std::runtime_error {
    explicit not_applicable_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would exceed the configured cell/candidate budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid command line flags / query parameters.
struct bad_flags_error : std::runtime_error {
    explicit bad_flags_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spinelab

#endif
