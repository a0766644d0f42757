#include "specnorm/opminus.hpp"

#include <algorithm>

#include "specnorm/error.hpp"

namespace specnorm {

Clause::Clause(std::vector<RationalVector> literals) : literals_(std::move(literals)) {
    if (literals_.empty()) throw Error(ErrorKind::invalid_input, "a clause needs at least one literal");
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool operator<(const Clause& lhs, const Clause& rhs) {
    return std::lexicographical_compare(lhs.literals_.begin(), lhs.literals_.end(),
                                        rhs.literals_.begin(), rhs.literals_.end());
}

Term::Term(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

Term Term::literal(const RationalVector& a) { return Term({Clause({a})}); }

Term Term::clause(std::vector<RationalVector> literals) { return Term({Clause(std::move(literals))}); }

Term lattice_op(LatticeOp op, const Term& s, const Term& t) {
    std::vector<Clause> out;
    if (op == LatticeOp::join) {
        out = s.clauses();
        out.insert(out.end(), t.clauses().begin(), t.clauses().end());
    } else {
        for (const auto& c : s.clauses()) {
            for (const auto& d : t.clauses()) {
                auto lits = c.literals();
                lits.insert(lits.end(), d.literals().begin(), d.literals().end());
                out.emplace_back(std::move(lits));
            }
        }
    }
    return Term(std::move(out));
}

namespace {

FarkasCertificate shared_literal_certificate(const Clause& clause, const std::vector<RationalVector>& picks,
                                             const RationalVector& shared) {
    FarkasCertificate cert;
    for (const auto& a : clause.literals()) cert.xi.emplace_back(a, Scalar(a == shared ? 1 : 0));
    for (const auto& b : dedup(picks)) cert.eta.emplace_back(b, Scalar(b == shared ? 1 : 0));
    return cert;
}

}  // namespace

LeqResult leq(const Term& s, const Term& t, std::size_t selection_limit) {
    std::size_t selections = 1;
    for (const auto& clause : t.clauses()) {
        selections *= clause.literals().size();
        if (selections > selection_limit)
            throw Error(ErrorKind::too_large, "leq: more than " + std::to_string(selection_limit) + " selections");
    }

    LeqResult result{true, {}, std::nullopt};
    const auto& targets = t.clauses();
    for (const auto& clause : s.clauses()) {
        // A semantically empty clause entails everything.
        auto empty = is_empty_meet(clause.literals());
        if (empty.holds) {
            result.certificates.push_back(std::get<FarkasCertificate>(empty.certificate));
            continue;
        }
        std::vector<std::size_t> choice(targets.size(), 0);
        std::vector<RationalVector> picks(targets.size());
        for (;;) {
            const RationalVector* shared = nullptr;
            for (std::size_t j = 0; j < targets.size(); ++j) {
                picks[j] = targets[j].literals()[choice[j]];
                if (!shared && std::binary_search(clause.literals().begin(), clause.literals().end(), picks[j]))
                    shared = &picks[j];
            }
            if (shared) {
                result.certificates.push_back(shared_literal_certificate(clause, picks, *shared));
            } else {
                auto sub = entails_basic(clause.literals(), picks);
                if (!sub.holds) {
                    return {false, {}, std::get<WitnessPoint>(sub.certificate)};
                }
                result.certificates.push_back(std::get<FarkasCertificate>(sub.certificate));
            }
            // Odometer over the selection product.
            std::size_t j = 0;
            for (; j < targets.size(); ++j) {
                if (++choice[j] < targets[j].literals().size()) break;
                choice[j] = 0;
            }
            if (j == targets.size()) break;
        }
    }
    return result;
}

bool equivalent(const Term& s, const Term& t) { return leq(s, t).holds && leq(t, s).holds; }

bool contains_point(const Term& t, const RationalVector& x) {
    return std::any_of(t.clauses().begin(), t.clauses().end(), [&](const Clause& c) {
        return std::all_of(c.literals().begin(), c.literals().end(),
                           [&](const RationalVector& a) { return sgn(pairing(a, x)) > 0; });
    });
}

Term canonicalize(const Term& t) {
    std::vector<Clause> kept;
    for (const auto& clause : t.clauses()) {
        std::vector<RationalVector> lits;
        for (const auto& a : clause.literals()) lits.push_back(ray_key(a));
        lits = dedup(lits);
        if (is_empty_meet(lits).holds) continue;

        for (std::size_t i = 0; i < lits.size() && lits.size() > 1;) {
            std::vector<RationalVector> rest;
            for (std::size_t k = 0; k < lits.size(); ++k)
                if (k != i) rest.push_back(lits[k]);
            if (entails_basic(rest, std::span<const RationalVector>(&lits[i], 1)).holds) {
                lits = std::move(rest);
            } else {
                ++i;
            }
        }
        kept.emplace_back(std::move(lits));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    for (std::size_t i = 0; i < kept.size();) {
        std::vector<Clause> others;
        for (std::size_t k = 0; k < kept.size(); ++k)
            if (k != i) others.push_back(kept[k]);
        if (leq(Term({kept[i]}), Term(others)).holds) {
            kept = std::move(others);
        } else {
            ++i;
        }
    }
    return Term(std::move(kept));
}

}  // namespace specnorm
