#pragma once

#include <stdexcept>
#include <string>

namespace specnorm {

enum class ErrorKind {
    invalid_input,
    invalid_reduction,
    oracle_unavailable,
    too_large,
    size_guard,
    domain_miss,
    incomplete_domain,
    extension_impossible,
    precondition_violation,
    closure_step_failed,
    not_distributive,
    not_completely_normal,
    schema,
};

const char* to_string(ErrorKind kind);

// Every library failure carries a kind so callers (and the CLI exit code)
// can tell input problems from resource guards.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_resource_guard() const noexcept {
        return kind_ == ErrorKind::too_large || kind_ == ErrorKind::size_guard ||
               kind_ == ErrorKind::oracle_unavailable;
    }

private:
    ErrorKind kind_;
};

}  // namespace specnorm
