#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specnorm/commands.hpp"
#include "specnorm/error.hpp"

using namespace specnorm;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kInput = 2, kGuard = 3 };

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> stages;
    std::optional<std::string> lambda_cap;
    std::string out;
    std::string emit = "json";
};

Json tagged(const char* type) {
    Json doc;
    doc["format"] = kFormatTag;
    doc["type"] = type;
    return doc;
}

void write_output(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::invalid_input, "cannot write " + g.out);
    file << text;
    if (!text.empty() && text.back() != '\n') file << '\n';
}

int finish(const Globals& g, const CommandResult& result) {
    write_output(g, result.doc.dump(2));
    return result.verdict ? kTrue : kFalse;
}

int cmd_lattice_check(const Globals& g, const std::string& file) {
    const FiniteLattice l = lattice_argument(file, true);
    if (g.emit != "json") {
        write_output(g, emit_lattice(l, parse_emit_format(g.emit)));
        return find_distributivity_violation(l) ? kFalse : kTrue;
    }
    return finish(g, lattice_check_command(l));
}

int cmd_construct(const Globals& g, const std::string& lattice_text, const std::string& base_text) {
    ConstructOptions options;
    options.stages = g.stages;
    options.seed = g.seed;
    options.lambda_cap = g.lambda_cap;
    if (!base_text.empty()) options.base = load_json_argument(base_text);
    const auto out = construct_command(lattice_argument(lattice_text), options);
    if (g.emit == "json") {
        write_output(g, trace_to_jsonl(out.trace));
    } else {
        write_output(g, emit_trace(out.trace, parse_emit_format(g.emit)));
    }
    if (!g.out.empty()) std::cout << to_json(out.report, *out.trace.header.lattice).dump(2) << '\n';
    return out.report.ok() ? kTrue : kFalse;
}

int cmd_verify_trace(const Globals& g, const std::string& file, std::size_t window) {
    const Trace trace = trace_from_jsonl(read_file(file));
    if (g.emit != "json") {
        write_output(g, emit_trace(trace, parse_emit_format(g.emit)));
        return kTrue;
    }
    return finish(g, verify_trace_command(trace, window));
}

int fail(int code, const std::string& kind, const std::string& message) {
    Json doc = tagged("error");
    doc["error"] = kind;
    doc["message"] = message;
    std::cerr << doc.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact half-space lattices, finite distributive lattices and bounded hom constructions."};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Enumeration seed (0 keeps element order)");
    app.add_option("--stages", g.stages, "Stage budget for construct")->check(CLI::PositiveNumber);
    app.add_option("--lambda-cap", g.lambda_cap, "Largest lambda tried by closure steps (rational)");
    app.add_option("--out", g.out, "Write the main output to this file");
    app.add_option("--emit", g.emit, "Output format for lattices and traces")
        ->check(CLI::IsMember({"json", "dot", "text"}));

    std::string a_text, b_text, term, lhs, rhs, file, lattice_text, base_text;
    std::optional<std::size_t> bound;
    std::size_t window = 100;

    auto* entail = app.add_subcommand("entail", "Does the meet of [[a]], a in A, lie inside the join of [[b]], b in B?");
    entail->add_option("--A", a_text, "Vector list (JSON or file)")->required();
    entail->add_option("--B", b_text, "Vector list (JSON or file)")->required();

    auto* canon = app.add_subcommand("canon", "Canonical form of a term");
    canon->add_option("--term", term, "Term (JSON or file)")->required();

    auto* leq_cmd = app.add_subcommand("leq", "Semantic containment of two terms");
    leq_cmd->add_option("--lhs", lhs, "Term (JSON or file)")->required();
    leq_cmd->add_option("--rhs", rhs, "Term (JSON or file)")->required();

    auto* lattice_check = app.add_subcommand("lattice-check", "Distributivity and complete normality of a lattice");
    lattice_check->add_option("--file", file, "Lattice (JSON, file or built-in id)")->required();

    auto* hom_check = app.add_subcommand("hom-check", "Coherence of a partial homomorphism");
    hom_check->add_option("--file", file, "Hom (JSON or file)")->required();
    hom_check->add_option("--bound", bound, "Bounded check up to this clause size instead of the exact one");

    auto* construct = app.add_subcommand("construct", "Run the staged construction and write its trace");
    construct->add_option("--lattice", lattice_text, "Target lattice (JSON, file or built-in id)")->required();
    construct->add_option("--base", base_text, "Point family on ground coordinates (JSON or file)");

    auto* verify_cmd = app.add_subcommand("verify-trace", "Replay a trace and re-check every certificate");
    verify_cmd->add_option("--file", file, "Trace file (JSON lines)")->required();
    verify_cmd->add_option("--window", window, "Schedule-health window (stages)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kTrue : kInput;
    }

    try {
        if (*entail) return finish(g, entail_command(load_json_argument(a_text), load_json_argument(b_text)));
        if (*canon) return finish(g, canon_command(load_json_argument(term)));
        if (*leq_cmd) return finish(g, leq_command(load_json_argument(lhs), load_json_argument(rhs)));
        if (*lattice_check) return cmd_lattice_check(g, file);
        if (*hom_check) return finish(g, hom_check_command(load_json_argument(file), bound));
        if (*construct) return cmd_construct(g, lattice_text, base_text);
        if (*verify_cmd) return cmd_verify_trace(g, file, window);
    } catch (const Error& err) {
        return fail(err.is_resource_guard() ? kGuard : kInput, to_string(err.kind()), err.what());
    } catch (const nlohmann::json::exception& err) {
        return fail(kInput, "schema", err.what());
    } catch (const std::invalid_argument& err) {
        return fail(kInput, "invalid_input", err.what());
    }
    return kInput;
}
