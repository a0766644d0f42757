#include "specnorm/commands.hpp"

#include <memory>

#include "specnorm/construction.hpp"
#include "specnorm/hom.hpp"
#include "specnorm/opminus.hpp"
#include "specnorm/polyhedral.hpp"

namespace specnorm {

namespace {

Json tagged(const char* type) {
    Json doc;
    doc["format"] = kFormatTag;
    doc["type"] = type;
    return doc;
}

}  // namespace

CommandResult entail_command(const Json& a_side, const Json& b_side) {
    const auto a = vectors_from_json(a_side);
    const auto b = vectors_from_json(b_side);
    const auto result = entails_basic(a, b);
    Json doc = tagged("entailment");
    doc["holds"] = result.holds;
    doc["certificate"] = to_json(result.certificate);
    return {doc, result.holds};
}

CommandResult canon_command(const Json& term) {
    Json doc = tagged("term");
    doc["term"] = to_json(canonicalize(term_from_json(term)));
    return {doc, true};
}

CommandResult leq_command(const Json& lhs, const Json& rhs) {
    const auto result = leq(term_from_json(lhs), term_from_json(rhs));
    Json doc = tagged("leq");
    doc["holds"] = result.holds;
    Json certs = Json::array();
    for (const auto& cert : result.certificates) certs.push_back(to_json(cert));
    doc["certificates"] = certs;
    if (result.refutation) doc["refutation"] = to_json(result.refutation->x);
    return {doc, result.holds};
}

CommandResult lattice_check_command(const FiniteLattice& l) {
    const auto violation = find_distributivity_violation(l);
    Json doc = tagged("lattice-check");
    doc["elements"] = l.size();
    doc["distributive"] = !violation;
    bool ok = !violation;
    if (violation) {
        doc["distributivity_counterexample"] = {l.label(violation->x), l.label(violation->y), l.label(violation->z)};
    } else {
        const auto normal = is_completely_normal(l);
        doc["completely_normal"] = normal.completely_normal;
        if (normal.counterexample)
            doc["normality_counterexample"] = {l.label(normal.counterexample->first),
                                               l.label(normal.counterexample->second)};
        ok = normal.completely_normal;
    }
    Json irr = Json::array();
    for (Element j : l.join_irreducibles()) irr.push_back(l.label(j));
    doc["join_irreducibles"] = irr;
    return {doc, ok};
}

CommandResult hom_check_command(const Json& hom_doc, std::optional<std::size_t> bound) {
    const PartialHom hom = hom_from_json(hom_doc);
    const auto& l = hom.target();
    const auto report = bound ? check_coherence_bounded(hom, *bound) : check_coherence(hom);
    Json doc = tagged("hom-check");
    doc["mode"] = bound ? "bounded" : "exact";
    if (bound) doc["bound"] = *bound;
    doc["generators"] = hom.order().size();
    doc["coherent"] = report.coherent;
    if (report.failing_join_irreducible) doc["failing_join_irreducible"] = l.label(*report.failing_join_irreducible);
    if (!report.detail.empty()) doc["detail"] = report.detail;
    Json range = Json::array();
    for (Element x : hom.range()) range.push_back(l.label(x));
    doc["range"] = range;
    return {doc, report.coherent};
}

ConstructOutput construct_command(const FiniteLattice& lattice, const ConstructOptions& options) {
    auto l = std::make_shared<const FiniteLattice>(lattice);
    ConstructionConfig config;
    if (options.stages) config.stages = *options.stages;
    if (options.seed) config.seed = *options.seed;
    if (options.lambda_cap) config.lambda_cap = parse_scalar(*options.lambda_cap);
    PointFamily base;
    if (options.base) base = base_from_json(*options.base, *l);
    Construction run(l, seeded_enumeration(*l, config.seed), base, config);
    run.run();
    return {run.trace(), verify(run)};
}

CommandResult verify_trace_command(const Trace& trace, std::size_t window) {
    const auto report = verify_trace(trace, window);
    return {to_json(report, *trace.header.lattice), report.ok()};
}

}  // namespace specnorm
