#include "specnorm/hom.hpp"

#include <algorithm>
#include <tuple>

#include "specnorm/error.hpp"
#include "specnorm/polyhedral.hpp"

namespace specnorm {

// ------------------------------------------------------------------- base

void PointFamily::validate(const FiniteLattice& target) const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].first.is_ground())
            throw Error(ErrorKind::invalid_input, "base point " + points[i].first.to_string() + " is not ground");
        if (points[i].second >= target.size()) throw Error(ErrorKind::invalid_input, "base value outside target");
        for (std::size_t k = i + 1; k < points.size(); ++k)
            if (target.meet(points[i].second, points[k].second) != target.zero())
                throw Error(ErrorKind::invalid_input, "base values " + target.label(points[i].second) + " and " +
                                                          target.label(points[k].second) + " are not disjoint");
    }
}

Element PointFamily::eval(const FiniteLattice& target, const RationalVector& a) const {
    Element out = target.zero();
    for (const auto& [p, d] : points)
        if (sgn(pairing(a, p)) > 0) out = target.join(out, d);
    return out;
}

// -------------------------------------------------------------- PartialHom

PartialHom::PartialHom(LatticePtr target, std::optional<PointFamily> base)
    : target_(std::move(target)), base_(std::move(base)) {
    if (!target_) throw Error(ErrorKind::invalid_input, "hom without target lattice");
    if (base_) base_->validate(*target_);
}

bool PartialHom::has_value(const RationalVector& a) const {
    if (a.is_zero()) return true;
    if (base_ && a.is_ground()) return true;
    return values_.count(ray_key(a)) > 0;
}

Element PartialHom::value(const RationalVector& a) const {
    if (a.is_zero()) return target_->zero();
    if (base_ && a.is_ground()) return base_->eval(*target_, a);
    auto it = values_.find(ray_key(a));
    if (it == values_.end()) throw Error(ErrorKind::domain_miss, "no value for " + a.to_string());
    return it->second;
}

Element PartialHom::eval(const Term& t) const {
    const auto& l = *target_;
    Element out = l.zero();
    for (const auto& clause : t.clauses()) {
        std::optional<Element> m;
        for (const auto& a : clause.literals()) {
            Element v = value(a);
            m = m ? l.meet(*m, v) : v;
        }
        out = l.join(out, *m);
    }
    return out;
}

GeneratorSet PartialHom::generator_set() const {
    GeneratorSet out;
    for (const auto& key : order_) (key.is_ground() ? out.ground : out.ext).push_back(key);
    return out;
}

std::vector<Element> PartialHom::range() const {
    const auto& l = *target_;
    std::vector<Element> out{l.zero()};
    for (const auto& [key, v] : values_) out.push_back(v);
    if (base_) {
        const auto& pts = base_->points;
        if (pts.size() > 12) throw Error(ErrorKind::size_guard, "range: base family larger than 12 points");
        for (unsigned mask = 1; mask < (1u << pts.size()); ++mask) {
            Element j = l.zero();
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (mask >> i & 1u) j = l.join(j, pts[i].second);
            out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PartialHom PartialHom::with(const RationalVector& c, Element plus, Element minus) const {
    if (c.is_zero()) throw Error(ErrorKind::invalid_input, "the zero vector is not a generator");
    if (base_ && c.is_ground())
        throw Error(ErrorKind::invalid_input, "ground vector " + c.to_string() + " is valued by the base");
    if (plus >= target_->size() || minus >= target_->size())
        throw Error(ErrorKind::invalid_input, "generator value outside target");
    PartialHom out = *this;
    const RationalVector key = ray_key(c);
    const RationalVector neg = -key;
    auto [it, fresh] = out.values_.emplace(key, plus);
    if (!fresh) {
        if (it->second != plus || out.values_.at(neg) != minus)
            throw Error(ErrorKind::invalid_input, "conflicting values for generator " + key.to_string());
        return out;
    }
    out.values_.emplace(neg, minus);
    out.order_.push_back(key);
    out.order_.push_back(neg);
    return out;
}

// --------------------------------------------------------------- coherence

namespace {

const Coordinate& scale_coordinate() {
    static const Coordinate mu = Coordinate::ground("mu");
    return mu;
}

// Ground part of a replaced by its pairing with the base point s, carried on
// the scale coordinate mu.
RationalVector pin_ground(const RationalVector& a, const std::optional<RationalVector>& s) {
    std::vector<RationalVector::Entry> entries;
    Scalar ground_pairing = 0;
    for (const auto& [coord, value] : a.entries()) {
        if (coord.is_ground()) {
            if (s) ground_pairing += value * s->at(coord);
        } else {
            entries.emplace_back(coord, value);
        }
    }
    if (ground_pairing != 0) entries.emplace_back(scale_coordinate(), ground_pairing);
    return RationalVector(std::move(entries));
}

struct PatternSystem {
    std::vector<RationalVector> strict;
    std::vector<RationalVector> nonstrict;
};

PatternSystem pattern_system(const PartialHom& hom, Element j) {
    const auto& l = hom.target();
    PatternSystem sys;
    std::optional<RationalVector> s;
    bool pinned = hom.base().has_value();
    if (pinned) {
        for (const auto& [p, d] : hom.base()->points)
            if (l.leq(j, d) && !p.is_zero()) s = p;
        if (s) sys.strict.push_back(RationalVector::unit(scale_coordinate()));
    }
    for (const auto& [key, v] : hom.values()) {
        RationalVector a = pinned ? pin_ground(key, s) : key;
        (l.leq(j, v) ? sys.strict : sys.nonstrict).push_back(std::move(a));
    }
    return sys;
}

}  // namespace

CoherenceReport check_coherence(const PartialHom& hom) {
    const auto& l = hom.target();
    const auto& js = l.join_irreducibles();
    CoherenceReport report;
    report.witnesses.assign(js.size(), std::nullopt);
    const auto& cache = hom.witness_cache();
    for (std::size_t k = 0; k < js.size(); ++k) {
        auto sys = pattern_system(hom, js[k]);
        if (k < cache.size() && cache[k] && verify_witness(WitnessPoint{*cache[k]}, sys.strict, sys.nonstrict)) {
            report.witnesses[k] = cache[k];
            continue;
        }
        auto result = feasible_mixed(sys.strict, sys.nonstrict);
        if (auto* w = std::get_if<WitnessPoint>(&result)) {
            report.witnesses[k] = w->x;
            continue;
        }
        report.coherent = false;
        report.failing_join_irreducible = js[k];
        report.detail = "no point realizes the generators above " + l.label(js[k]);
        report.witnesses.clear();
        return report;
    }
    return report;
}

namespace {

// Calls fn on every size-k subset of items (k clamped to items.size()).
template <typename Fn>
bool for_each_subset(const std::vector<RationalVector>& items, std::size_t k, Fn&& fn) {
    k = std::min(k, items.size());
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<RationalVector> pick(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
        if (!fn(pick)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t m = i; m < k; ++m) idx[m] = idx[m - 1] + 1;
    }
}

}  // namespace

CoherenceReport check_coherence_bounded(const PartialHom& hom, std::size_t bound,
                                        const std::vector<RationalVector>& extra_ground) {
    const auto& l = hom.target();
    std::vector<RationalVector> gens;
    for (const auto& [key, v] : hom.values()) gens.push_back(key);
    for (const auto& w : extra_ground) {
        if (w.is_zero()) continue;
        for (const auto& x : {ray_key(w), ray_key(-w)})
            if (std::find(gens.begin(), gens.end(), x) == gens.end()) gens.push_back(x);
    }
    CoherenceReport report;
    // A violation lives in the pattern of some join-irreducible j: every
    // literal of A above j, none of B. Entailment is monotone, so the
    // largest admissible A and B suffice.
    for (Element j : l.join_irreducibles()) {
        std::vector<RationalVector> pos, neg;
        for (const auto& g : gens) (l.leq(j, hom.value(g)) ? pos : neg).push_back(g);
        if (pos.empty()) continue;
        bool ok = for_each_subset(pos, bound, [&](const std::vector<RationalVector>& a_side) {
            return for_each_subset(neg, bound, [&](const std::vector<RationalVector>& b_side) {
                if (!entails_basic(a_side, b_side).holds) return true;
                report.coherent = false;
                report.failing_join_irreducible = j;
                std::string text = "entailment {";
                for (const auto& a : a_side) text += a.to_string() + " ";
                text += "} => {";
                for (const auto& b : b_side) text += b.to_string() + " ";
                report.detail = text + "} not respected at " + l.label(j);
                return false;
            });
        });
        if (!ok) return report;
    }
    return report;
}

// ---------------------------------------------------- extension conditions

const char* to_string(ExtInequality which) {
    switch (which) {
        case ExtInequality::disjoint: return "disjoint";
        case ExtInequality::upper_plus: return "upper+";
        case ExtInequality::lower1_plus: return "lower1+";
        case ExtInequality::lower2_plus: return "lower2+";
        case ExtInequality::upper_minus: return "upper-";
        case ExtInequality::lower1_minus: return "lower1-";
        case ExtInequality::lower2_minus: return "lower2-";
    }
    return "unknown";
}

Coordinate top_coordinate(const RationalVector& c) {
    auto top = c.top();
    if (!top) throw Error(ErrorKind::invalid_input, "the zero vector has no top coordinate");
    return *top;
}

std::vector<RationalVector> level_generators(const PartialHom& hom, const Coordinate& o) {
    std::vector<RationalVector> out;
    for (const auto& key : hom.order())
        if (key.top() == o) out.push_back(key);
    return out;
}

namespace {

RationalVector checked_key(const PartialHom& hom, const RationalVector& c) {
    if (c.is_zero()) throw Error(ErrorKind::invalid_input, "cannot adjoin the zero vector");
    if (hom.base() && c.is_ground())
        throw Error(ErrorKind::precondition_violation, "ground vector " + c.to_string() + " is valued by the base");
    return ray_key(c);
}

struct LevelValues {
    RationalVector u;
    Element c_minus_u, u_minus_c, u_value, neg_u_value;
};

std::vector<LevelValues> level_values(const PartialHom& hom, const RationalVector& key,
                                     LowerValues lower = LowerValues::required) {
    const Coordinate o = top_coordinate(key);
    const Scalar c_o = key.at(o);
    std::vector<LevelValues> out;
    for (const auto& u : level_generators(hom, o)) {
        if (u.at(o) != c_o) continue;
        const RationalVector diff = key - u;
        if (!hom.has_value(diff)) {
            if (lower == LowerValues::available) continue;
            throw Error(ErrorKind::incomplete_domain, "value of " + diff.to_string() + " is not available");
        }
        out.push_back({u, hom.value(diff), hom.value(-diff), hom.value(u), hom.value(-u)});
    }
    return out;
}

void collect_violations(const FiniteLattice& l, const std::vector<LevelValues>& levels, Element plus, Element minus,
                        ExtCheck& out, bool stop_early) {
    auto require = [&](ExtInequality which, const std::optional<RationalVector>& u, Element lhs, Element rhs) {
        if (l.leq(lhs, rhs)) return;
        out.ok = false;
        out.violations.push_back({which, u, lhs, rhs});
    };
    require(ExtInequality::disjoint, std::nullopt, l.meet(plus, minus), l.zero());
    for (const auto& lv : levels) {
        if (stop_early && !out.ok) return;
        require(ExtInequality::upper_plus, lv.u, plus, l.join(lv.c_minus_u, lv.u_value));
        require(ExtInequality::lower1_plus, lv.u, lv.u_value, l.join(lv.u_minus_c, plus));
        require(ExtInequality::lower2_plus, lv.u, lv.c_minus_u, l.join(lv.neg_u_value, plus));
        require(ExtInequality::upper_minus, lv.u, minus, l.join(lv.u_minus_c, lv.neg_u_value));
        require(ExtInequality::lower1_minus, lv.u, lv.neg_u_value, l.join(lv.c_minus_u, minus));
        require(ExtInequality::lower2_minus, lv.u, lv.u_minus_c, l.join(lv.u_value, minus));
    }
}

}  // namespace

std::vector<RationalVector> required_lower_vectors(const PartialHom& hom, const RationalVector& c) {
    const RationalVector key = checked_key(hom, c);
    const Coordinate o = top_coordinate(key);
    std::vector<RationalVector> out;
    for (const auto& u : level_generators(hom, o))
        if (u.at(o) == key.at(o) && u != key) out.push_back(key - u);
    return out;
}

PartialHom ensure_lower_values(PartialHom hom, const RationalVector& c, const GroundSupplier& supplier) {
    for (const auto& w : required_lower_vectors(hom, c)) {
        if (hom.has_value(w)) continue;
        if (!supplier) throw Error(ErrorKind::incomplete_domain, "value of " + w.to_string() + " is not available");
        hom = supplier(hom, w);
        if (!hom.has_value(w))
            throw Error(ErrorKind::incomplete_domain, "supplier did not provide " + w.to_string());
    }
    return hom;
}

ExtCheck check_ext_conditions(const PartialHom& hom, const RationalVector& c, Element plus, Element minus) {
    const RationalVector key = checked_key(hom, c);
    ExtCheck out;
    collect_violations(hom.target(), level_values(hom, key), plus, minus, out, false);
    return out;
}

std::optional<PartialHom> try_extend(const PartialHom& hom, const RationalVector& c, Element plus, Element minus,
                                     std::string* reason, LowerValues lower) {
    const RationalVector key = checked_key(hom, c);
    const auto& l = hom.target();
    if (hom.has_value(key)) {
        if (hom.value(key) == plus && hom.value(-key) == minus) return hom;
        if (reason) *reason = "generator " + key.to_string() + " already has different values";
        return std::nullopt;
    }
    ExtCheck check;
    collect_violations(l, level_values(hom, key, lower), plus, minus, check, true);
    if (!check.ok) {
        if (reason) {
            const auto& v = check.violations.front();
            *reason = std::string("inequality ") + to_string(v.which) + " fails: " + l.label(v.lhs) + " not below " +
                      l.label(v.rhs) + (v.u ? " for u = " + v.u->to_string() : "");
        }
        return std::nullopt;
    }
    PartialHom out = hom.with(key, plus, minus);
    auto report = check_coherence(out);
    if (!report.coherent) {
        if (reason) *reason = report.detail;
        return std::nullopt;
    }
    out.set_witness_cache(std::move(report.witnesses));
    return out;
}

PartialHom extend(const PartialHom& hom, const RationalVector& c, Element plus, Element minus,
                  const GroundSupplier& supplier) {
    PartialHom ready = ensure_lower_values(hom, c, supplier);
    std::string reason;
    auto out = try_extend(ready, c, plus, minus, &reason);
    if (!out) throw Error(ErrorKind::extension_impossible, "cannot adjoin " + c.to_string() + ": " + reason);
    return *out;
}

CandidateList candidate_pairs(const PartialHom& hom, const RationalVector& c, const std::vector<std::size_t>& rank,
                              LowerValues lower) {
    const auto& l = hom.target();
    const RationalVector key = checked_key(hom, c);
    const auto levels = level_values(hom, key, lower);
    CandidateList out;
    out.range_consonant = is_consonant_set(l, hom.range());
    for (Element p = 0; p < l.size(); ++p) {
        for (Element m = 0; m < l.size(); ++m) {
            ExtCheck check;
            collect_violations(l, levels, p, m, check, true);
            if (check.ok) out.pairs.emplace_back(p, m);
        }
    }
    auto r = [&](Element x) { return rank.empty() ? x : rank.at(x); };
    std::sort(out.pairs.begin(), out.pairs.end(), [&](const auto& lhs, const auto& rhs) {
        return std::make_tuple(l.height_rank(lhs.first), r(lhs.first), l.height_rank(lhs.second), r(lhs.second)) <
               std::make_tuple(l.height_rank(rhs.first), r(rhs.first), l.height_rank(rhs.second), r(rhs.second));
    });
    return out;
}

// ----------------------------------------------------------------- closure

Scalar default_lambda_cap() {
    mpz_class cap = 1;
    cap <<= 64;
    return Scalar(cap);
}

std::optional<Scalar> closedness_criterion(const PartialHom& hom, const RationalVector& a, const RationalVector& b,
                                           Element e, const Scalar& lambda_cap) {
    const auto& l = hom.target();
    if (!l.leq(hom.value(a), l.join(hom.value(b), e)))
        throw Error(ErrorKind::precondition_violation, "closedness criterion: value[[a]] is not below value[[b]] v e");
    const Element bound = l.join(hom.value(-b), e);
    for (Scalar lambda = 1; lambda <= lambda_cap; lambda *= 2) {
        if (!l.leq(hom.value(a - lambda * b), bound)) continue;
        const RationalVector next = a - Scalar(2 * lambda) * b;
        if (hom.has_value(next) && !l.leq(hom.value(next), bound))
            throw Error(ErrorKind::precondition_violation,
                        "closedness criterion holds at lambda = " + to_string(lambda) + " but not at twice that");
        return lambda;
    }
    return std::nullopt;
}

ClosureResult closure_step(const PartialHom& hom, const Obligation& ob, const Scalar& lambda_cap,
                           const GroundSupplier& supplier, const std::vector<std::size_t>& rank) {
    const auto& l = hom.target();
    const RationalVector& a = ob.a;
    const RationalVector& b = ob.b;
    if (!l.leq(hom.value(a), l.join(hom.value(b), ob.e)))
        throw Error(ErrorKind::precondition_violation, "obligation does not hold: value[[a]] not below value[[b]] v e");
    const Element bound = l.join(hom.value(-b), ob.e);

    if ((a.is_ground() && b.is_ground()) || (a.is_zero() && b.is_zero())) {
        auto lambda = closedness_criterion(hom, a, b, ob.e, lambda_cap);
        if (!lambda) throw Error(ErrorKind::closure_step_failed, "ground obligation: lambda cap exhausted");
        const RationalVector c = ray_key(a - *lambda * b);
        return {hom, c, *lambda, hom.value(c), bound, false};
    }

    const Coordinate o = std::max(a.is_zero() ? top_coordinate(b) : top_coordinate(a),
                                  b.is_zero() ? top_coordinate(a) : top_coordinate(b));
    const Scalar a_o = a.at(o);
    const Scalar b_o = b.at(o);
    const int limit_sign = b_o != 0 ? -sgn(b_o) : sgn(a_o);

    PartialHom current = hom;
    std::string last_problem = "lambda cap exhausted";
    for (Scalar lambda = 1; lambda <= lambda_cap; lambda *= 2) {
        if (sgn(a_o - lambda * b_o) != limit_sign) continue;
        const RationalVector c = ray_key(a - lambda * b);
        if (current.has_value(c)) {
            Element v = current.value(c);
            if (l.leq(v, bound)) return {current, c, lambda, v, bound, false};
            last_problem = "existing generator " + c.to_string() + " has a value above the bound";
            continue;
        }
        current = ensure_lower_values(current, c, supplier);

        bool shapes_hold = true;
        for (const auto& u : level_generators(current, o)) {
            if (u.at(o) == -c.at(o)) {
                if (!l.leq(current.value(u + c), l.join(current.value(u), bound))) shapes_hold = false;
            } else if (u != c) {
                if (!l.leq(current.value(u), l.join(current.value(u - c), bound))) shapes_hold = false;
            }
            if (!shapes_hold) break;
        }
        if (!shapes_hold) {
            last_problem = "lower-level inequalities fail at lambda = " + to_string(lambda);
            continue;
        }

        auto candidates = candidate_pairs(current, c, rank);
        for (const auto& [plus, minus] : candidates.pairs) {
            const Element star = l.meet(plus, bound);
            if (!check_ext_conditions(current, c, star, minus).ok) continue;
            auto extended = try_extend(current, c, star, minus, &last_problem);
            if (!extended) continue;
            const Element achieved = extended->value(a - lambda * b);
            if (!l.leq(achieved, bound))
                throw Error(ErrorKind::closure_step_failed, "postcondition fails after adjoining " + c.to_string());
            return {*extended, c, lambda, achieved, bound, true};
        }
        if (candidates.pairs.empty()) last_problem = "no candidate pair for " + c.to_string();
    }
    throw Error(ErrorKind::closure_step_failed, "obligation (" + a.to_string() + ", " + b.to_string() + ", " +
                                                    l.label(ob.e) + "): " + last_problem);
}

}  // namespace specnorm
