#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "specnorm/io.hpp"

namespace specnorm {

// The operations behind the command-line tool and the Python module. Inputs
// and reports are JSON documents; `verdict` is the boolean answer (true for
// success when the command has no yes/no question).
struct CommandResult {
    Json doc;
    bool verdict = true;
};

CommandResult entail_command(const Json& a_side, const Json& b_side);
CommandResult canon_command(const Json& term);
CommandResult leq_command(const Json& lhs, const Json& rhs);
/// Distributive and completely normal.
CommandResult lattice_check_command(const FiniteLattice& lattice);
/// Exact coherence, or the bounded check when `bound` is given.
CommandResult hom_check_command(const Json& hom, std::optional<std::size_t> bound = std::nullopt);

struct ConstructOptions {
    std::optional<std::size_t> stages;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> lambda_cap;
    std::optional<Json> base;
};
struct ConstructOutput {
    Trace trace;
    VerificationReport report;
};
ConstructOutput construct_command(const FiniteLattice& lattice, const ConstructOptions& options);
CommandResult verify_trace_command(const Trace& trace, std::size_t window = 100);

}  // namespace specnorm
