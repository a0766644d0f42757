#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specnorm/construction.hpp"
#include "specnorm/hom.hpp"
#include "specnorm/lattice.hpp"
#include "specnorm/opminus.hpp"
#include "specnorm/polyhedral.hpp"

namespace specnorm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatTag = "specnorm/1";

enum class EmitFormat { json, dot, text };
EmitFormat parse_emit_format(const std::string& text);

// Vectors are objects {"coord": "p/q", ...}; integers are accepted on input.
Json to_json(const RationalVector& v);
RationalVector vector_from_json(const Json& doc);
Json to_json(const std::vector<RationalVector>& family);
std::vector<RationalVector> vectors_from_json(const Json& doc);

// Terms: {"or": [{"and": [vector, ...]}, ...]}; a lone {"and": [...]} is one clause.
Json to_json(const Term& t);
Term term_from_json(const Json& doc);

Json to_json(const FarkasCertificate& cert);
Json to_json(const Certificate& cert);
FarkasCertificate farkas_from_json(const Json& doc);

// Lattices: {"format": "specnorm/1", "elements": [...], "leq": [[x, y], ...], "zero": "..."}.
Json to_json(const FiniteLattice& l);
/// Validates the order axioms and, unless `allow_nondistributive`, distributivity
/// (not_distributive with the violating triple).
FiniteLattice lattice_from_json(const Json& doc, bool allow_nondistributive = false);

// Hom: {"format", "target": lattice, "base": [{"point": v, "value": e}] (optional),
//       "generators": [v, ...], "values": {"<index>": e, ...}}.
Json to_json(const PartialHom& hom);
PartialHom hom_from_json(const Json& doc);
PointFamily base_from_json(const Json& doc, const FiniteLattice& l);
Json base_to_json(const PointFamily& base, const FiniteLattice& l);

Json to_json(const VerificationReport& report, const FiniteLattice& l);
Json to_json(const NormalityResult& result, const FiniteLattice& l);

// Trace files are JSON lines: one header line, then one line per stage.
std::string trace_to_jsonl(const Trace& trace);
Trace trace_from_jsonl(const std::string& text);
Json event_to_json(const TraceEvent& event, const FiniteLattice& l);

/// Hasse diagram of a lattice.
std::string lattice_to_dot(const FiniteLattice& l);
/// Events as a JSON array ("[]" when empty), a stage graph, or one line per stage.
std::string emit_trace(const Trace& trace, EmitFormat format);
std::string emit_lattice(const FiniteLattice& l, EmitFormat format);

/// Reads a whole file; throws invalid_input when it cannot be opened.
std::string read_file(const std::string& path);
/// Parses `text` as JSON, or reads it as a file path when it does not start
/// like a JSON value.
Json load_json_argument(const std::string& text);

/// Built-in lattice ids: chain<n> (n elements), 2x2, m3, n5.
std::optional<FiniteLattice> named_lattice(const std::string& id);
/// A lattice id, an inline lattice document or a path to one.
FiniteLattice lattice_argument(const std::string& text, bool allow_nondistributive = false);

}  // namespace specnorm
