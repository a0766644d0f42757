#include "specnorm/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "specnorm/error.hpp"

namespace specnorm {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::schema, where + ": " + what);
}

const Json& field(const Json& doc, const char* name, const std::string& where) {
    if (!doc.is_object() || !doc.contains(name)) schema_error(where, std::string("missing field \"") + name + "\"");
    return doc.at(name);
}

Scalar scalar_from_json(const Json& doc, const std::string& where) {
    if (doc.is_string()) return parse_scalar(doc.get<std::string>());
    if (doc.is_number_integer()) return parse_scalar(doc.dump());
    schema_error(where, "expected a rational string \"p/q\"");
}

Element element_from_json(const Json& doc, const FiniteLattice& l, const std::string& where) {
    if (!doc.is_string()) schema_error(where, "expected an element label");
    auto found = l.find(doc.get<std::string>());
    if (!found) schema_error(where, "unknown element \"" + doc.get<std::string>() + "\"");
    return *found;
}

void require_distributive(const FiniteLattice& l) {
    if (auto bad = find_distributivity_violation(l))
        throw Error(ErrorKind::not_distributive, "lattice is not distributive: " + l.label(bad->x) + " ^ (" +
                                                     l.label(bad->y) + " v " + l.label(bad->z) + ")");
}

Json header_json(const char* type) {
    Json out;
    out["format"] = kFormatTag;
    out["type"] = type;
    return out;
}

void check_format(const Json& doc, const std::string& where) {
    if (doc.is_object() && doc.contains("format") && doc.at("format") != kFormatTag)
        schema_error(where, "unsupported format " + doc.at("format").dump());
}

std::size_t index_from_json(const Json& doc, const std::string& where) {
    if (!doc.is_number_unsigned() && !(doc.is_number_integer() && doc.get<long long>() >= 0))
        schema_error(where, "expected a non-negative integer");
    return doc.get<std::size_t>();
}

}  // namespace

EmitFormat parse_emit_format(const std::string& text) {
    if (text == "json") return EmitFormat::json;
    if (text == "dot") return EmitFormat::dot;
    if (text == "text") return EmitFormat::text;
    throw Error(ErrorKind::invalid_input, "unknown output format '" + text + "'");
}

// ---------------------------------------------------------------- vectors

Json to_json(const RationalVector& v) {
    Json out = Json::object();
    for (const auto& [coord, value] : v.entries()) out[coord.to_string()] = to_string(value);
    return out;
}

RationalVector vector_from_json(const Json& doc) {
    if (!doc.is_object()) schema_error("vector", "expected an object of coordinate: rational");
    std::vector<RationalVector::Entry> entries;
    for (const auto& [name, value] : doc.items()) {
        if (name == "format") continue;
        entries.emplace_back(Coordinate::parse(name), scalar_from_json(value, "vector entry " + name));
    }
    return RationalVector(std::move(entries));
}

Json to_json(const std::vector<RationalVector>& family) {
    Json out = Json::array();
    for (const auto& v : family) out.push_back(to_json(v));
    return out;
}

std::vector<RationalVector> vectors_from_json(const Json& doc) {
    if (!doc.is_array()) schema_error("vector list", "expected an array of vectors");
    std::vector<RationalVector> out;
    for (const auto& item : doc) out.push_back(vector_from_json(item));
    return out;
}

// ------------------------------------------------------------------ terms

Json to_json(const Term& t) {
    Json clauses = Json::array();
    for (const auto& clause : t.clauses()) clauses.push_back({{"and", to_json(clause.literals())}});
    return {{"or", clauses}};
}

Term term_from_json(const Json& doc) {
    check_format(doc, "term");
    auto clause_from = [](const Json& c) {
        auto lits = vectors_from_json(field(c, "and", "clause"));
        if (lits.empty()) schema_error("clause", "\"and\" needs at least one literal");
        return Clause(std::move(lits));
    };
    if (doc.is_object() && doc.contains("and")) return Term({clause_from(doc)});
    const Json& ors = field(doc, "or", "term");
    if (!ors.is_array()) schema_error("term", "\"or\" must be an array");
    std::vector<Clause> clauses;
    for (const auto& c : ors) clauses.push_back(clause_from(c));
    return Term(std::move(clauses));
}

// ----------------------------------------------------------- certificates

Json to_json(const FarkasCertificate& cert) {
    auto side = [](const std::vector<std::pair<RationalVector, Scalar>>& entries) {
        Json out = Json::array();
        for (const auto& [v, coef] : entries) out.push_back({{"vector", to_json(v)}, {"coef", to_string(coef)}});
        return out;
    };
    return {{"kind", "farkas"}, {"xi", side(cert.xi)}, {"eta", side(cert.eta)}};
}

Json to_json(const Certificate& cert) {
    if (const auto* w = std::get_if<WitnessPoint>(&cert)) return {{"kind", "witness"}, {"x", to_json(w->x)}};
    return to_json(std::get<FarkasCertificate>(cert));
}

FarkasCertificate farkas_from_json(const Json& doc) {
    auto side = [](const Json& arr, const char* name) {
        if (!arr.is_array()) schema_error("certificate", std::string(name) + " must be an array");
        std::vector<std::pair<RationalVector, Scalar>> out;
        for (const auto& item : arr)
            out.emplace_back(vector_from_json(field(item, "vector", "certificate")),
                             scalar_from_json(field(item, "coef", "certificate"), "certificate coef"));
        return out;
    };
    return {side(field(doc, "xi", "certificate"), "xi"), side(field(doc, "eta", "certificate"), "eta")};
}

// --------------------------------------------------------------- lattices

Json to_json(const FiniteLattice& l) {
    Json out;
    out["format"] = kFormatTag;
    out["elements"] = l.labels();
    Json leq = Json::array();
    for (const auto& [x, y] : l.covers()) leq.push_back({l.label(x), l.label(y)});
    out["leq"] = leq;
    out["zero"] = l.label(l.zero());
    return out;
}

FiniteLattice lattice_from_json(const Json& doc, bool allow_nondistributive) {
    check_format(doc, "lattice");
    const Json& elements = field(doc, "elements", "lattice");
    if (!elements.is_array()) schema_error("lattice", "\"elements\" must be an array");
    std::vector<std::string> labels;
    for (const auto& e : elements) {
        if (!e.is_string()) schema_error("lattice", "element labels must be strings");
        labels.push_back(e.get<std::string>());
    }
    if (labels.size() > FiniteLattice::kMaxElements) throw Error(ErrorKind::size_guard, "lattice exceeds 64 elements");
    auto index = [&](const Json& e, const std::string& where) -> Element {
        if (!e.is_string()) schema_error(where, "expected an element label");
        auto it = std::find(labels.begin(), labels.end(), e.get<std::string>());
        if (it == labels.end()) schema_error(where, "unknown element \"" + e.get<std::string>() + "\"");
        return static_cast<Element>(it - labels.begin());
    };
    std::vector<std::pair<Element, Element>> below;
    const Json& leq = field(doc, "leq", "lattice");
    if (!leq.is_array()) schema_error("lattice", "\"leq\" must be an array of pairs");
    for (std::size_t i = 0; i < leq.size(); ++i) {
        const std::string where = "lattice leq[" + std::to_string(i) + "]";
        if (!leq[i].is_array() || leq[i].size() != 2) schema_error(where, "expected a pair [x, y]");
        below.emplace_back(index(leq[i][0], where), index(leq[i][1], where));
    }
    FiniteLattice out(std::move(labels), below, index(field(doc, "zero", "lattice"), "lattice zero"));
    if (!allow_nondistributive) require_distributive(out);
    return out;
}

Json to_json(const NormalityResult& result, const FiniteLattice& l) {
    Json out = {{"completely_normal", result.completely_normal}};
    if (result.counterexample)
        out["counterexample"] = {l.label(result.counterexample->first), l.label(result.counterexample->second)};
    return out;
}

// -------------------------------------------------------------------- homs

PointFamily base_from_json(const Json& doc, const FiniteLattice& l) {
    if (!doc.is_array()) schema_error("base", "expected an array of {point, value}");
    PointFamily out;
    for (const auto& item : doc)
        out.points.emplace_back(vector_from_json(field(item, "point", "base")),
                                element_from_json(field(item, "value", "base"), l, "base value"));
    return out;
}

Json base_to_json(const PointFamily& base, const FiniteLattice& l) {
    Json out = Json::array();
    for (const auto& [p, d] : base.points) out.push_back({{"point", to_json(p)}, {"value", l.label(d)}});
    return out;
}

Json to_json(const PartialHom& hom) {
    const auto& l = hom.target();
    Json out;
    out["format"] = kFormatTag;
    out["target"] = to_json(l);
    if (hom.base()) out["base"] = base_to_json(*hom.base(), l);
    out["generators"] = to_json(hom.order());
    Json values = Json::object();
    for (std::size_t i = 0; i < hom.order().size(); ++i)
        values[std::to_string(i)] = l.label(hom.value(hom.order()[i]));
    out["values"] = values;
    return out;
}

PartialHom hom_from_json(const Json& doc) {
    check_format(doc, "hom");
    const Json& target_doc = field(doc, "target", "hom");
    auto target = std::make_shared<const FiniteLattice>(
        target_doc.is_string() ? lattice_argument(target_doc.get<std::string>()) : lattice_from_json(target_doc));
    std::optional<PointFamily> base;
    if (doc.contains("base")) base = base_from_json(doc.at("base"), *target);
    PartialHom hom(target, base);

    auto gens = vectors_from_json(field(doc, "generators", "hom"));
    const Json& values = field(doc, "values", "hom");
    if (!values.is_object()) schema_error("hom", "\"values\" must be an object keyed by generator index");
    std::map<RationalVector, Element> given;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string key = std::to_string(i);
        if (!values.contains(key)) schema_error("hom", "no value for generator " + key);
        if (gens[i].is_zero()) schema_error("hom", "generator " + key + " is the zero vector");
        Element v = element_from_json(values.at(key), *target, "hom value " + key);
        auto [it, fresh] = given.emplace(ray_key(gens[i]), v);
        if (!fresh && it->second != v) schema_error("hom", "generator " + key + " repeats a ray with another value");
    }
    for (const auto& g : gens) {
        const RationalVector key = ray_key(g);
        if (hom.has_value(key) && hom.base() && key.is_ground()) {
            if (hom.value(key) != given.at(key))
                schema_error("hom", "ground generator " + key.to_string() + " disagrees with the base");
            continue;
        }
        if (hom.values().count(key)) continue;
        auto neg = given.find(-key);
        if (neg == given.end()) schema_error("hom", "generator set is not symmetric: -" + key.to_string() + " missing");
        hom = hom.with(key, given.at(key), neg->second);
    }
    return hom;
}

Json to_json(const VerificationReport& report, const FiniteLattice& l) {
    Json hits = Json::array();
    for (Element x : report.hit_set) hits.push_back(l.label(x));
    Json out = header_json("verification");
    out["ok"] = report.ok();
    out["surjective"] = report.surjective;
    out["hit_set"] = hits;
    out["coherent"] = report.coherent;
    if (!report.coherence_detail.empty()) out["coherence_detail"] = report.coherence_detail;
    out["certificates"] = {{"checked", report.certificates_checked}, {"failed", report.certificates_failed}};
    out["obligations"] = {{"enqueued", report.enqueued},
                          {"discharged", report.discharged},
                          {"settled_on_enqueue", report.settled_on_enqueue},
                          {"pending", report.pending},
                          {"unresolved", report.unresolved}};
    out["schedule_health"] = {{"window", report.window},
                              {"enqueued", report.window_enqueued},
                              {"discharged", report.window_discharged}};
    out["fairness_ok"] = report.fairness_ok;
    out["value_steps_ok"] = report.value_steps_ok;
    out["problems"] = report.problems;
    return out;
}

// ------------------------------------------------------------------ traces

namespace {

Json certificate_json(const DischargeCertificate& cert, const FiniteLattice& l) {
    Json out = {{"kind", cert.kind}, {"bound", l.label(cert.bound)}};
    if (cert.kind == "closure") {
        out["lambda"] = to_string(cert.lambda);
        out["c"] = to_json(cert.c);
    }
    if (cert.c_value) out["c_value"] = l.label(*cert.c_value);
    if (!cert.cover.empty()) {
        Json cover = Json::array();
        for (const auto& [g, coef] : cert.cover) cover.push_back(Json::array({g, to_string(coef)}));
        out["cover"] = cover;
    }
    return out;
}

DischargeCertificate certificate_from(const Json& doc, const FiniteLattice& l) {
    DischargeCertificate cert;
    cert.kind = field(doc, "kind", "certificate").get<std::string>();
    cert.bound = element_from_json(field(doc, "bound", "certificate"), l, "certificate bound");
    if (doc.contains("lambda")) cert.lambda = scalar_from_json(doc.at("lambda"), "lambda");
    if (doc.contains("c")) cert.c = vector_from_json(doc.at("c"));
    if (doc.contains("c_value")) cert.c_value = element_from_json(doc.at("c_value"), l, "c_value");
    if (doc.contains("cover"))
        for (const auto& term : doc.at("cover")) {
            if (!term.is_array() || term.size() != 2) schema_error("certificate", "cover terms are [index, coef]");
            cert.cover.emplace_back(index_from_json(term[0], "cover index"), scalar_from_json(term[1], "cover coef"));
        }
    return cert;
}

Json obligation_json(const ObligationRecord& r, const FiniteLattice& l) {
    return Json::array({r.id, r.a, r.b, l.label(r.e), r.stage, r.deadline});
}

ObligationRecord obligation_from(const Json& doc, const FiniteLattice& l) {
    if (!doc.is_array() || doc.size() != 6) schema_error("trace", "obligation must be [id, a, b, e, stage, deadline]");
    return {index_from_json(doc[0], "obligation id"), index_from_json(doc[1], "obligation a"),
            index_from_json(doc[2], "obligation b"), element_from_json(doc[3], l, "obligation e"),
            index_from_json(doc[4], "obligation stage"), index_from_json(doc[5], "obligation deadline")};
}

}  // namespace

Json event_to_json(const TraceEvent& event, const FiniteLattice& l) {
    Json out;
    out["type"] = "stage";
    out["stage"] = event.stage;
    out["slot"] = to_string(event.slot);
    out["kind"] = to_string(event.kind);
    Json exts = Json::array();
    for (const auto& ext : event.extensions)
        exts.push_back({{"c", to_json(ext.c)},
                        {"plus", l.label(ext.plus)},
                        {"minus", l.label(ext.minus)},
                        {"reason", ext.reason}});
    out["extensions"] = exts;
    if (event.obligation) {
        out["obligation"] = *event.obligation;
        out["outcome"] = event.outcome;
    }
    if (event.certificate) out["certificate"] = certificate_json(*event.certificate, l);
    if (!event.note.empty()) out["note"] = event.note;
    Json enq = Json::array();
    for (const auto& r : event.enqueued) enq.push_back(obligation_json(r, l));
    out["enqueued"] = enq;
    out["semantic"] = event.semantic;
    Json settled = Json::array();
    for (const auto& [id, cert] : event.settled) settled.push_back(Json::array({id, certificate_json(cert, l)}));
    out["settled"] = settled;
    return out;
}

std::string trace_to_jsonl(const Trace& trace) {
    const auto& h = trace.header;
    const auto& l = *h.lattice;
    Json head = header_json("header");
    head["lattice"] = to_json(l);
    Json enumeration = Json::array();
    for (Element x : h.enumeration) enumeration.push_back(l.label(x));
    head["enumeration"] = enumeration;
    head["base"] = base_to_json(h.base, l);
    Json schedule = Json::array();
    for (StepKind k : h.config.schedule) schedule.push_back(to_string(k));
    head["config"] = {{"stages", h.config.stages},
                      {"lambda_cap", to_string(h.config.lambda_cap)},
                      {"seed", h.config.seed},
                      {"schedule", schedule}};
    std::string out = head.dump() + "\n";
    for (const auto& event : trace.events) out += event_to_json(event, l).dump() + "\n";
    return out;
}

Trace trace_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Trace trace;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json doc;
        try {
            doc = Json::parse(line);
        } catch (const nlohmann::json::exception& err) {
            schema_error("trace line " + std::to_string(line_no), err.what());
        }
        if (!have_header) {
            check_format(doc, "trace header");
            if (field(doc, "type", "trace header") != "header") schema_error("trace", "first line must be the header");
            auto& h = trace.header;
            h.lattice = std::make_shared<const FiniteLattice>(lattice_from_json(field(doc, "lattice", "trace header")));
            for (const auto& e : field(doc, "enumeration", "trace header"))
                h.enumeration.push_back(element_from_json(e, *h.lattice, "enumeration"));
            h.base = base_from_json(field(doc, "base", "trace header"), *h.lattice);
            const Json& cfg = field(doc, "config", "trace header");
            h.config.stages = index_from_json(field(cfg, "stages", "config"), "stages");
            h.config.lambda_cap = scalar_from_json(field(cfg, "lambda_cap", "config"), "lambda_cap");
            h.config.seed = field(cfg, "seed", "config").get<std::uint64_t>();
            h.config.schedule.clear();
            for (const auto& k : field(cfg, "schedule", "config")) h.config.schedule.push_back(parse_step_kind(k));
            have_header = true;
            continue;
        }
        const auto& l = *trace.header.lattice;
        const std::string where = "trace line " + std::to_string(line_no);
        TraceEvent event;
        try {
            event.stage = index_from_json(field(doc, "stage", where), where);
            event.slot = parse_step_kind(field(doc, "slot", where).get<std::string>());
            event.kind = parse_step_kind(field(doc, "kind", where).get<std::string>());
            for (const auto& ext : field(doc, "extensions", where))
                event.extensions.push_back({vector_from_json(field(ext, "c", where)),
                                            element_from_json(field(ext, "plus", where), l, where),
                                            element_from_json(field(ext, "minus", where), l, where),
                                            field(ext, "reason", where).get<std::string>()});
            if (doc.contains("obligation")) {
                event.obligation = index_from_json(doc.at("obligation"), where);
                event.outcome = field(doc, "outcome", where).get<std::string>();
            }
            if (doc.contains("certificate")) event.certificate = certificate_from(doc.at("certificate"), l);
            if (doc.contains("note")) event.note = doc.at("note").get<std::string>();
            for (const auto& r : field(doc, "enqueued", where)) event.enqueued.push_back(obligation_from(r, l));
            event.semantic = index_from_json(field(doc, "semantic", where), where);
            for (const auto& s : field(doc, "settled", where)) {
                if (!s.is_array() || s.size() != 2) schema_error(where, "settled entries are [id, certificate]");
                event.settled.emplace_back(index_from_json(s[0], where), certificate_from(s[1], l));
            }
        } catch (const nlohmann::json::exception& err) {
            schema_error(where, err.what());
        }
        trace.events.push_back(std::move(event));
    }
    if (!have_header) schema_error("trace", "empty trace file");
    return trace;
}

// -------------------------------------------------------------------- emit

std::string lattice_to_dot(const FiniteLattice& l) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n";
    for (Element x = 0; x < l.size(); ++x) out << "  n" << x << " [label=" << Json(l.label(x)).dump() << "];\n";
    for (const auto& [x, y] : l.covers()) out << "  n" << x << " -> n" << y << ";\n";
    out << "}\n";
    return out.str();
}

std::string emit_lattice(const FiniteLattice& l, EmitFormat format) {
    switch (format) {
        case EmitFormat::json: return to_json(l).dump(2) + "\n";
        case EmitFormat::dot: return lattice_to_dot(l);
        case EmitFormat::text: {
            std::ostringstream out;
            out << l.size() << " elements, zero " << l.label(l.zero()) << "\n";
            for (const auto& [x, y] : l.covers()) out << "  " << l.label(x) << " < " << l.label(y) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string emit_trace(const Trace& trace, EmitFormat format) {
    if (format == EmitFormat::json) {
        Json events = Json::array();
        if (trace.header.lattice)
            for (const auto& e : trace.events) events.push_back(event_to_json(e, *trace.header.lattice));
        return events.dump();
    }
    std::ostringstream out;
    if (format == EmitFormat::dot) {
        out << "digraph stages {\n  rankdir=LR;\n";
        for (const auto& e : trace.events) {
            out << "  s" << e.stage << " [label=\"" << e.stage << ": " << to_string(e.kind);
            if (!e.extensions.empty()) out << " +" << e.extensions.size();
            if (e.obligation) out << " #" << *e.obligation << " " << e.outcome;
            out << "\"];\n";
        }
        for (std::size_t i = 1; i < trace.events.size(); ++i)
            out << "  s" << trace.events[i - 1].stage << " -> s" << trace.events[i].stage << ";\n";
        out << "}\n";
        return out.str();
    }
    for (const auto& e : trace.events) {
        out << "stage " << e.stage << " " << to_string(e.kind) << " extensions=" << e.extensions.size()
            << " enqueued=" << e.enqueued.size() << " settled=" << e.settled.size();
        if (e.obligation) out << " obligation=" << *e.obligation << " " << e.outcome;
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_json_argument(const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r\n");
    const bool inline_json = start != std::string::npos && (text[start] == '{' || text[start] == '[');
    const std::string body = inline_json ? text : read_file(text);
    try {
        return Json::parse(body);
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorKind::schema, std::string("malformed JSON: ") + err.what());
    }
}

std::optional<FiniteLattice> named_lattice(const std::string& id) {
    if (id == "2x2") return boolean_square();
    if (id == "m3") return diamond_m3();
    if (id == "n5") return pentagon_n5();
    if (id.size() > 5 && id.starts_with("chain") &&
        std::all_of(id.begin() + 5, id.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        const std::string digits = id.substr(5);
        if (digits.size() > 4 || std::stoul(digits) > FiniteLattice::kMaxElements)
            throw Error(ErrorKind::size_guard, "lattice " + id + " exceeds " +
                                                   std::to_string(FiniteLattice::kMaxElements) + " elements");
        const std::size_t n = std::stoul(digits);
        if (n >= 1) return chain_lattice(n);
    }
    return std::nullopt;
}

FiniteLattice lattice_argument(const std::string& text, bool allow_nondistributive) {
    if (auto named = named_lattice(text)) {
        if (!allow_nondistributive) require_distributive(*named);
        return *named;
    }
    return lattice_from_json(load_json_argument(text), allow_nondistributive);
}

}  // namespace specnorm
