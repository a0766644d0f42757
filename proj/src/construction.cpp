#include "specnorm/construction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>

#include "specnorm/error.hpp"

namespace specnorm {

const char* to_string(StepKind kind) {
    switch (kind) {
        case StepKind::value: return "value";
        case StepKind::domain: return "domain";
        case StepKind::closure: return "closure";
        case StepKind::idle: return "idle";
    }
    return "idle";
}

StepKind parse_step_kind(const std::string& text) {
    for (StepKind k : {StepKind::value, StepKind::domain, StepKind::closure, StepKind::idle})
        if (text == to_string(k)) return k;
    throw Error(ErrorKind::schema, "unknown step kind '" + text + "'");
}

std::vector<Element> seeded_enumeration(const FiniteLattice& lattice, std::uint64_t seed) {
    std::vector<Element> out(lattice.size());
    for (Element x = 0; x < out.size(); ++x) out[x] = x;
    if (seed == 0) return out;
    std::mt19937_64 rng(seed);
    for (std::size_t i = out.size(); i-- > 1;) std::swap(out[i], out[rng() % (i + 1)]);
    return out;
}

std::size_t fairness_bound(std::size_t position, const ConstructionConfig& config) {
    const std::size_t period = config.schedule.size();
    const auto slots = static_cast<std::size_t>(std::count(config.schedule.begin(), config.schedule.end(), StepKind::closure));
    if (slots == 0) throw Error(ErrorKind::invalid_input, "schedule has no closure slot");
    return (position + slots - 1) / slots * period + period;
}

namespace {

void require_cn_distributive(const FiniteLattice& l) {
    if (auto bad = find_distributivity_violation(l))
        throw Error(ErrorKind::not_distributive, "not distributive: " + l.label(bad->x) + " ^ (" + l.label(bad->y) +
                                                     " v " + l.label(bad->z) + ") differs from its expansion");
    auto cn = is_completely_normal(l);
    if (!cn.completely_normal)
        throw Error(ErrorKind::not_completely_normal, "not completely normal: (" + l.label(cn.counterexample->first) +
                                                          ", " + l.label(cn.counterexample->second) +
                                                          ") has no splitting pair");
}

// Rationals p/q with |p|, q <= r, ordered by size of the representation.
std::vector<Scalar> round_values(std::size_t r) {
    std::vector<Scalar> out;
    for (std::size_t q = 1; q <= r; ++q)
        for (long p = -static_cast<long>(r); p <= static_cast<long>(r); ++p) {
            const auto g = std::gcd(static_cast<std::size_t>(std::labs(p)), q);
            if (g == 1 || (p == 0 && q == 1)) out.emplace_back(p, static_cast<unsigned long>(q));
        }
    auto key = [](const Scalar& v) {
        mpz_class n = abs(v.get_num());
        mpz_class d = v.get_den();
        return std::make_tuple(n > d ? n : d, d, n, sgn(v) < 0);
    };
    std::sort(out.begin(), out.end(), [&](const Scalar& x, const Scalar& y) { return key(x) < key(y); });
    return out;
}

}  // namespace

Construction::Construction(LatticePtr lattice, std::vector<Element> enumeration, PointFamily base,
                           ConstructionConfig config)
    : lattice_(std::move(lattice)), hom_(lattice_, base) {
    require_cn_distributive(*lattice_);
    std::vector<bool> seen(lattice_->size(), false);
    for (Element x : enumeration) {
        if (x >= lattice_->size()) throw Error(ErrorKind::invalid_input, "enumeration references unknown element");
        seen[x] = true;
    }
    for (Element x = 0; x < seen.size(); ++x)
        if (!seen[x]) throw Error(ErrorKind::invalid_input, "enumeration misses " + lattice_->label(x));
    fairness_bound(1, config);

    rank_.assign(lattice_->size(), enumeration.size());
    for (std::size_t i = enumeration.size(); i-- > 0;) rank_[enumeration[i]] = i;
    trace_.header = {lattice_, std::move(enumeration), std::move(base), std::move(config)};
}

std::vector<Coordinate> Construction::coordinates() const {
    std::vector<Coordinate> out;
    for (const auto& [p, d] : trace_.header.base.points)
        for (const auto& [coord, v] : p.entries())
            if (std::find(out.begin(), out.end(), coord) == out.end()) out.push_back(coord);
    std::sort(out.begin(), out.end());
    for (std::size_t m = 0; m < next_value_; ++m) out.push_back(Coordinate::ext(static_cast<std::uint32_t>(m)));
    return out;
}

PartialHom Construction::supply(const PartialHom& hom, const RationalVector& w, std::vector<ExtensionRecord>& log) {
    std::string reason = "no candidate pair";
    for (const auto& [plus, minus] : candidate_pairs(hom, w, rank_, LowerValues::available).pairs) {
        if (auto out = try_extend(hom, w, plus, minus, &reason, LowerValues::available)) {
            log.push_back({ray_key(w), plus, minus, "support"});
            return *out;
        }
    }
    throw Error(ErrorKind::extension_impossible, "cannot adjoin lower vector " + w.to_string() + ": " + reason);
}

bool Construction::value_step(TraceEvent& event) {
    const auto& enumeration = trace_.header.enumeration;
    if (next_value_ >= enumeration.size()) return false;
    const auto m = static_cast<std::uint32_t>(next_value_);
    const RationalVector c = RationalVector::unit(Coordinate::ext(m));
    const Element target = enumeration[next_value_];
    std::string reason;
    auto out = try_extend(hom_, c, target, lattice_->zero(), &reason);
    if (!out) throw Error(ErrorKind::extension_impossible, "value step on a fresh coordinate failed: " + reason);
    hom_ = std::move(*out);
    ++next_value_;
    event.kind = StepKind::value;
    event.extensions.push_back({c, target, lattice_->zero(), "value"});
    return true;
}

std::optional<RationalVector> Construction::next_domain_vector() {
    const std::size_t max_round = std::max<std::size_t>(1, stage_);
    for (;;) {
        if (!round_started_) {
            round_coords_ = coordinates();
            round_values_ = round_values(round_);
            round_top_ = 0;
            round_digits_.clear();
            round_started_ = true;
        }
        while (round_top_ < round_coords_.size()) {
            if (round_digits_.size() != round_top_) round_digits_.assign(round_top_, 0);
            std::vector<RationalVector::Entry> entries;
            for (std::size_t i = 0; i < round_top_; ++i)
                entries.emplace_back(round_coords_[i], round_values_[round_digits_[i]]);
            entries.emplace_back(round_coords_[round_top_], Scalar(1));
            RationalVector c(std::move(entries));

            // Odometer step; the last lower coordinate moves fastest.
            std::size_t i = round_top_;
            while (i > 0) {
                if (++round_digits_[i - 1] < round_values_.size()) break;
                round_digits_[i - 1] = 0;
                --i;
            }
            if (i == 0) {
                ++round_top_;
                round_digits_.assign(round_top_, 0);
            }
            if (!hom_.has_value(c)) return c;
        }
        round_started_ = false;
        // New coordinates restart the enumeration at the smallest entries.
        if (coordinates() != round_coords_) {
            round_ = 1;
            continue;
        }
        // With fewer than two coordinates every round lists the same vectors.
        if (round_ >= max_round || round_coords_.size() < 2) return std::nullopt;
        ++round_;
    }
}

bool Construction::domain_step(TraceEvent& event) {
    for (;;) {
        auto c = next_domain_vector();
        if (!c) return false;
        std::vector<ExtensionRecord> log;
        try {
            GroundSupplier supplier = [&](const PartialHom& h, const RationalVector& v) { return supply(h, v, log); };
            PartialHom ready = ensure_lower_values(hom_, *c, supplier);
            std::string reason = "no candidate pair";
            for (const auto& [plus, minus] : candidate_pairs(ready, *c, rank_).pairs) {
                if (auto out = try_extend(ready, *c, plus, minus, &reason)) {
                    hom_ = std::move(*out);
                    event.kind = StepKind::domain;
                    event.extensions = std::move(log);
                    event.extensions.push_back({*c, plus, minus, "domain"});
                    return true;
                }
            }
            event.note += "domain vector " + c->to_string() + " skipped: " + reason + "; ";
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::extension_impossible) throw;
            event.note += "domain vector " + c->to_string() + " skipped: " + err.what() + "; ";
        }
    }
}

bool Construction::closure_step_once(TraceEvent& event) {
    if (queue_.empty()) return false;
    const std::size_t id = queue_.front();
    queue_.pop_front();
    Entry& entry = open_.at(id);
    event.kind = StepKind::closure;
    event.obligation = id;

    const auto& order = hom_.order();
    Obligation ob{order[entry.record.a], order[entry.record.b], entry.record.e};
    std::vector<ExtensionRecord> log;
    try {
        GroundSupplier supplier = [&](const PartialHom& h, const RationalVector& v) { return supply(h, v, log); };
        ClosureResult result = closure_step(hom_, ob, trace_.header.config.lambda_cap, supplier, rank_);
        hom_ = std::move(result.hom);
        event.extensions = std::move(log);
        if (result.extended)
            event.extensions.push_back({result.c, result.c_value, hom_.value(-result.c), "closure"});
        event.certificate = DischargeCertificate{"closure", result.lambda, result.c, result.c_value, result.bound, {}};
        event.outcome = "discharged";
        open_.erase(id);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::closure_step_failed && err.kind() != ErrorKind::extension_impossible) throw;
        event.note = err.what();
        if (!entry.requeued) {
            entry.requeued = true;
            queue_.push_back(id);
            entry.record.stage = stage_;
            entry.record.deadline = stage_ + fairness_bound(queue_.size(), trace_.header.config);
            event.outcome = "requeued";
            event.enqueued.push_back(entry.record);
        } else {
            event.outcome = "unresolved";
            open_.erase(id);
        }
    }
    return true;
}

namespace {

// Ordered pairs of generator positions that involve a position >= old_count,
// skipping a generator paired with itself or its negation (c and -c sit at
// positions 2t and 2t + 1).
template <class F>
void for_each_new_pair(std::size_t old_count, std::size_t n, F&& f) {
    for (std::size_t i = old_count; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i || (k ^ 1u) == i) continue;
            if (k < old_count || k > i) f(i, k);
            if (k < old_count || k > i) f(k, i);
        }
}

double dot(const std::vector<double>& u, const std::vector<double>& v) {
    double sum = 0.0;
    const std::size_t n = std::min(u.size(), v.size());
    for (std::size_t i = 0; i < n; ++i) sum += u[i] * v[i];
    return sum;
}

constexpr double kSlack = 1e-6;

}  // namespace

std::vector<double> Construction::dense(const RationalVector& v) {
    std::vector<double> out;
    for (const auto& [coord, value] : v.entries()) {
        const std::size_t slot = slots_.try_emplace(coord, slots_.size()).first->second;
        if (out.size() <= slot) out.resize(slot + 1, 0.0);
        out[slot] = value.get_d();
    }
    return out;
}

const std::vector<std::size_t>& Construction::below(Element e) {
    if (!below_[e]) {
        std::vector<std::size_t> zs;
        for (std::size_t g = 0; g < values_.size(); ++g)
            if (lattice_->leq(values_[g], e)) zs.push_back(g);
        below_[e] = std::move(zs);
    }
    return *below_[e];
}

bool Construction::refuted(const ObligationRecord& record, const std::vector<std::size_t>& zs) const {
    const auto& order = hom_.order();
    auto positive = [&](std::size_t g, const Refuter& r) {
        const double d = dot(dense_[g], r.dense);
        if (d > kSlack) return true;
        if (d < -kSlack) return false;
        return sgn(pairing(order[g], r.x)) > 0;
    };
    for (const auto& r : refuters_) {
        if (!positive(record.a, r) || positive(record.b, r)) continue;
        if (std::none_of(zs.begin(), zs.end(), [&](std::size_t g) { return positive(g, r); })) return true;
    }
    return false;
}

std::optional<DischargeCertificate> Construction::try_cover(const ObligationRecord& record, Element bound) {
    const auto& zs = below(record.e);
    if (zs.empty() || refuted(record, zs)) return std::nullopt;
    const auto& order = hom_.order();
    const RationalVector a_side[] = {order[record.a]};
    auto& pool = cover_pool_[record.e];

    auto remember = [&](const DischargeCertificate& cert) {
        for (const auto& [g, coef] : cert.cover)
            if (g != record.b && std::find(pool.begin(), pool.end(), g) == pool.end()) pool.push_back(g);
        if (pool.size() > 24) pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(pool.size() - 24));
    };
    auto certificate = [&](const Certificate& result) {
        const auto& farkas = std::get<FarkasCertificate>(result);
        const Scalar xi = farkas.xi.front().second;
        DischargeCertificate cert{"cover", Scalar(0), RationalVector{}, std::nullopt, bound, {}};
        for (const auto& [v, eta] : farkas.eta)
            if (sgn(eta) != 0) cert.cover.emplace_back(generator_index_.at(v), eta / xi);
        std::sort(cert.cover.begin(), cert.cover.end());
        remember(cert);
        return cert;
    };

    auto combined = [&](const std::vector<std::size_t>& gs) -> std::optional<DischargeCertificate> {
        if (!rays_[record.a]) return std::nullopt;
        std::vector<const IntegerRay*> rays;
        for (std::size_t g : gs) {
            if (!rays_[g]) return std::nullopt;
            rays.push_back(&*rays_[g]);
        }
        auto coef = cone_combination(*rays_[record.a], rays);
        if (!coef) return std::nullopt;
        DischargeCertificate cert{"cover", Scalar(0), RationalVector{}, std::nullopt, bound, {}};
        for (auto& [j, c] : *coef) cert.cover.emplace_back(gs[j], std::move(c));
        std::sort(cert.cover.begin(), cert.cover.end());
        remember(cert);
        return cert;
    };

    // Generators that served in earlier certificates usually suffice.
    if (!pool.empty()) {
        std::vector<std::size_t> gs = pool;
        gs.push_back(record.b);
        if (auto cert = combined(gs)) return cert;
    }
    {
        std::vector<std::size_t> gs = zs;
        if (std::find(gs.begin(), gs.end(), record.b) == gs.end()) gs.push_back(record.b);
        if (auto cert = combined(gs)) return cert;
    }
    auto& full = below_vectors_[record.e];
    if (!full) {
        full.emplace();
        for (std::size_t g : zs) full->push_back(order[g]);
    }
    full->push_back(order[record.b]);
    auto result = entails_basic(a_side, *full);
    full->pop_back();
    if (result.holds) return certificate(result.certificate);
    const RationalVector& x = std::get<WitnessPoint>(result.certificate).x;
    refuters_.insert(refuters_.begin(), Refuter{x, dense(x)});
    if (refuters_.size() > 16) refuters_.pop_back();
    return std::nullopt;
}

void Construction::enqueue(ObligationRecord record, TraceEvent& event) {
    const auto& l = *lattice_;
    record.stage = stage_;
    const Element bound = l.join(values_[record.b ^ 1u], record.e);
    if (l.leq(values_[record.a], bound)) {
        ++event.semantic;
        return;
    }
    if (auto cert = try_cover(record, bound)) {
        event.settled.emplace_back(record.id, std::move(*cert));
        return;
    }
    queue_.push_back(record.id);
    record.deadline = stage_ + fairness_bound(queue_.size(), trace_.header.config);
    event.enqueued.push_back(record);
    open_.emplace(record.id, Entry{record, false});
}

void Construction::enqueue_new_obligations(TraceEvent& event, std::size_t old_count) {
    const auto& l = *lattice_;
    const auto& order = hom_.order();
    const std::size_t n = order.size();
    for (std::size_t i = old_count; i < n; ++i) {
        values_.push_back(hom_.value(order[i]));
        dense_.push_back(dense(order[i]));
        std::vector<std::pair<std::size_t, Scalar>> entries;
        for (const auto& [coord, value] : order[i].entries()) entries.emplace_back(slots_.at(coord), value);
        rays_.push_back(integer_ray(entries));
        generator_index_.emplace(order[i], i);
    }
    below_.assign(l.size(), std::nullopt);
    below_vectors_.assign(l.size(), std::nullopt);

    // e_k becomes usable once k <= stage.
    std::vector<ObligationRecord> still;
    for (const auto& record : deferred_) {
        if (rank_[record.e] <= stage_) {
            enqueue(record, event);
        } else {
            still.push_back(record);
        }
    }
    for_each_new_pair(old_count, n, [&](std::size_t ia, std::size_t ib) {
        ObligationRecord record{next_obligation_++, ia, ib, l.difference(values_[ia], values_[ib]), stage_, 0};
        if (rank_[record.e] <= stage_) {
            enqueue(record, event);
        } else {
            still.push_back(record);
        }
    });
    deferred_ = std::move(still);
}

void Construction::run_stage() {
    const auto& schedule = trace_.header.config.schedule;
    TraceEvent event;
    event.stage = stage_;
    event.slot = schedule[stage_ % schedule.size()];
    const std::size_t before = hom_.order().size();

    bool done = false;
    switch (event.slot) {
        case StepKind::value:
            done = value_step(event) || (queue_.empty() ? domain_step(event) : closure_step_once(event));
            break;
        case StepKind::domain:
            done = domain_step(event) || closure_step_once(event);
            break;
        case StepKind::closure:
            done = closure_step_once(event) || domain_step(event);
            break;
        case StepKind::idle:
            break;
    }
    if (!done) event.kind = StepKind::idle;

    enqueue_new_obligations(event, before);
    trace_.events.push_back(std::move(event));
    ++stage_;
}

void Construction::run() {
    while (stage_ < trace_.header.config.stages) run_stage();
}

// ---------------------------------------------------------------- verify

VerificationReport verify_trace(const Trace& trace, std::size_t window) {
    VerificationReport report;
    report.window = window;
    const auto& header = trace.header;
    if (!header.lattice) {
        report.problems.push_back("trace has no lattice");
        return report;
    }
    const auto& l = *header.lattice;
    PartialHom hom(header.lattice, header.base);
    std::vector<std::size_t> rank(l.size(), header.enumeration.size());
    for (std::size_t i = header.enumeration.size(); i-- > 0;)
        if (header.enumeration[i] < l.size()) rank[header.enumeration[i]] = i;

    std::vector<Element> values;
    std::vector<ObligationRecord> deferred;
    std::size_t next_id = 0;
    std::map<std::size_t, ObligationRecord> queued;
    std::size_t value_steps = 0;

    auto problem = [&](const std::string& text) {
        if (report.problems.size() < 50) report.problems.push_back(text);
    };
    auto tally_discharge = [&](std::size_t first_stage) {
        ++report.discharged;
        if (first_stage <= window) ++report.window_discharged;
    };
    // First enqueue stage of each obligation, for the window metric.
    std::map<std::size_t, std::size_t> first_stage;

    auto check_cert = [&](const ObligationRecord& rec, const DischargeCertificate& cert, const std::string& where) {
        ++report.certificates_checked;
        const auto& order = hom.order();
        bool ok = rec.a < order.size() && rec.b < order.size();
        if (ok) {
            const RationalVector& a = order[rec.a];
            const RationalVector& b = order[rec.b];
            const Element bound = l.join(hom.value(-b), rec.e);
            ok = bound == cert.bound;
            if (ok && cert.kind == "closure") {
                ok = ray_key(a - cert.lambda * b) == cert.c && sgn(cert.lambda) > 0 && cert.c_value &&
                     hom.has_value(cert.c) && hom.value(cert.c) == *cert.c_value && l.leq(*cert.c_value, bound);
            } else if (ok && cert.kind == "cover") {
                RationalVector sum;
                for (const auto& [g, coef] : cert.cover) {
                    if (g >= order.size() || sgn(coef) < 0 || (g != rec.b && !l.leq(hom.value(order[g]), rec.e))) {
                        ok = false;
                        break;
                    }
                    sum = sum + coef * order[g];
                }
                ok = ok && sum == a;
            } else {
                ok = false;
            }
        }
        if (!ok) {
            ++report.certificates_failed;
            problem(where + ": certificate for obligation " + std::to_string(rec.id) + " does not re-verify");
        }
    };

    for (const auto& event : trace.events) {
        const std::string where = "stage " + std::to_string(event.stage);
        const std::size_t old_count = hom.order().size();
        for (const auto& ext : event.extensions) {
            try {
                hom = hom.with(ext.c, ext.plus, ext.minus);
            } catch (const Error& err) {
                problem(where + ": " + err.what());
            }
            if (ext.reason == "value") {
                const auto m = static_cast<std::uint32_t>(value_steps);
                if (value_steps >= header.enumeration.size() || ext.c != RationalVector::unit(Coordinate::ext(m)) ||
                    ext.plus != header.enumeration[value_steps] || ext.minus != l.zero()) {
                    report.value_steps_ok = false;
                    problem(where + ": value step does not follow the enumeration");
                }
                ++value_steps;
            }
        }

        std::map<std::size_t, const ObligationRecord*> listed;
        for (const auto& rec : event.enqueued) listed.emplace(rec.id, &rec);

        if (event.obligation) {
            auto it = queued.find(*event.obligation);
            if (it == queued.end()) {
                problem(where + ": dequeued an obligation that is not queued");
            } else {
                const ObligationRecord rec = it->second;
                queued.erase(it);
                if (event.stage > rec.deadline) report.fairness_ok = false;
                if (event.outcome == "discharged" && event.certificate) {
                    check_cert(rec, *event.certificate, where);
                    tally_discharge(first_stage[rec.id]);
                } else if (event.outcome == "unresolved") {
                    ++report.unresolved;
                } else if (event.outcome == "requeued" && listed.count(rec.id)) {
                    queued[rec.id] = *listed[rec.id];
                    listed.erase(rec.id);
                } else {
                    problem(where + ": closure event without a valid outcome");
                }
            }
        }

        // Re-derive the obligations entering at this stage, in the order the
        // driver considers them.
        const auto& order = hom.order();
        for (std::size_t i = old_count; i < order.size(); ++i) values.push_back(hom.value(order[i]));
        std::vector<ObligationRecord> entering, still;
        for (const auto& rec : deferred) (rank[rec.e] <= event.stage ? entering : still).push_back(rec);
        for_each_new_pair(old_count, order.size(), [&](std::size_t ia, std::size_t ib) {
            ObligationRecord rec{next_id++, ia, ib, l.difference(values[ia], values[ib]), event.stage, 0};
            (rank[rec.e] <= event.stage ? entering : still).push_back(rec);
        });
        deferred = std::move(still);

        std::map<std::size_t, const DischargeCertificate*> settled;
        for (const auto& [id, cert] : event.settled) settled.emplace(id, &cert);
        std::size_t semantic = 0;
        for (const auto& rec : entering) {
            ++report.enqueued;
            if (event.stage <= window) ++report.window_enqueued;
            first_stage[rec.id] = event.stage;
            const Element bound = l.join(hom.value(-order[rec.b]), rec.e);
            if (l.leq(values[rec.a], bound)) {
                ++semantic;
                ++report.settled_on_enqueue;
                tally_discharge(event.stage);
                first_stage.erase(rec.id);
            } else if (auto it = settled.find(rec.id); it != settled.end()) {
                check_cert(rec, *it->second, where);
                ++report.settled_on_enqueue;
                tally_discharge(event.stage);
                first_stage.erase(rec.id);
                settled.erase(it);
            } else if (auto jt = listed.find(rec.id); jt != listed.end()) {
                const ObligationRecord& given = *jt->second;
                if (given.a != rec.a || given.b != rec.b || given.e != rec.e)
                    problem(where + ": obligation " + std::to_string(rec.id) + " does not match its pair");
                queued[rec.id] = given;
                listed.erase(jt);
            } else {
                problem(where + ": obligation " + std::to_string(rec.id) + " is not accounted for");
            }
        }
        if (semantic != event.semantic) problem(where + ": count of obligations settled by value differs");
        if (!settled.empty() || !listed.empty()) problem(where + ": trace lists obligations that are not due");
    }

    const std::size_t last_stage = trace.events.empty() ? 0 : trace.events.back().stage;
    for (const auto& [id, rec] : queued) {
        ++report.pending;
        if (rec.deadline < last_stage) report.fairness_ok = false;
    }
    if (!report.fairness_ok) problem("an obligation waited past its fairness deadline");

    auto coherence = check_coherence(hom);
    report.coherent = coherence.coherent;
    report.coherence_detail = coherence.detail;
    report.hit_set = generated_sublattice(l, hom.range());
    report.surjective = report.hit_set.size() == l.size();

    // Every element assigned by a value step must be hit.
    for (std::size_t m = 0; m < value_steps; ++m)
        if (!std::binary_search(report.hit_set.begin(), report.hit_set.end(), header.enumeration[m]))
            report.value_steps_ok = false;
    return report;
}

VerificationReport verify(const Construction& run, std::size_t window) {
    VerificationReport report = verify_trace(run.trace(), window);
    PartialHom replay(run.trace().header.lattice, run.trace().header.base);
    for (const auto& event : run.trace().events)
        for (const auto& ext : event.extensions) replay = replay.with(ext.c, ext.plus, ext.minus);
    if (replay.values() != run.hom().values()) report.problems.push_back("replayed hom differs from the live hom");
    return report;
}

}  // namespace specnorm
