#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "specnorm/hom.hpp"

namespace specnorm {

enum class StepKind { value, domain, closure, idle };

const char* to_string(StepKind kind);
StepKind parse_step_kind(const std::string& text);

struct ConstructionConfig {
    std::size_t stages = 200;
    Scalar lambda_cap = default_lambda_cap();
    std::uint64_t seed = 0;
    std::vector<StepKind> schedule = {StepKind::value, StepKind::domain, StepKind::closure, StepKind::closure};
};

/// One generator pair adjoined during a stage. `reason` is value, domain,
/// closure or support (a lower-level vector needed by another extension).
struct ExtensionRecord {
    RationalVector c;
    Element plus;
    Element minus;
    std::string reason;
};

/// Obligation value[[a]] <= value[[b]] v e over generator indices (positions
/// in PartialHom::order()).
struct ObligationRecord {
    std::size_t id;
    std::size_t a;
    std::size_t b;
    Element e;
    std::size_t stage;     // stage of (re)enqueueing
    std::size_t deadline;  // dequeued no later than this stage
};

/// Evidence for an obligation, re-checkable from generator values alone.
///  closure: c = ray of a - lambda b is a generator with value c_value <= bound
///           (bound = value[[-b]] v e).
///  cover:   a = sum of coef * generator over `cover`, every generator being b
///           or valued below e, so [[a]] lies in [[b]] u the union of the others
///           (a Farkas certificate in index form).
/// Obligations with value[[a]] <= bound need no evidence: [[a - lambda b]] lies
/// in [[a]] u [[-b]] for every lambda. They are only counted.
struct DischargeCertificate {
    std::string kind;
    Scalar lambda;
    RationalVector c;
    std::optional<Element> c_value;
    Element bound = 0;
    std::vector<std::pair<std::size_t, Scalar>> cover;
};

struct TraceEvent {
    std::size_t stage = 0;
    StepKind slot = StepKind::idle;
    StepKind kind = StepKind::idle;
    std::vector<ExtensionRecord> extensions;
    std::optional<std::size_t> obligation;
    std::string outcome;  // discharged, requeued, unresolved (closure steps)
    std::optional<DischargeCertificate> certificate;
    std::string note;
    // Obligations entering the queue (first time or requeued).
    std::vector<ObligationRecord> enqueued;
    // Discharged on enqueue: by their values alone (counted) or by a cover.
    std::size_t semantic = 0;
    std::vector<std::pair<std::size_t, DischargeCertificate>> settled;
};

struct TraceHeader {
    LatticePtr lattice;
    std::vector<Element> enumeration;
    PointFamily base;
    ConstructionConfig config;
};

struct Trace {
    TraceHeader header;
    std::vector<TraceEvent> events;
};

/// Element order used by a run: identity for seed 0, otherwise a
/// Fisher-Yates shuffle driven by mt19937_64(seed).
std::vector<Element> seeded_enumeration(const FiniteLattice& lattice, std::uint64_t seed);

/// Bound on the number of stages an obligation waits after being queued at
/// 1-based position p under a schedule with at least `closure_slots` closure
/// slots per `period` stages.
std::size_t fairness_bound(std::size_t position, const ConstructionConfig& config);

/// Bounded-stage construction of a hom onto a finite distributive completely
/// normal 0-lattice: value steps assign e_m to a fresh coordinate, domain
/// steps adjoin the next enumerated vector, closure steps discharge queued
/// obligations.
class Construction {
public:
    /// Throws not_distributive / not_completely_normal (with the offending
    /// elements) or invalid_input when the enumeration misses an element.
    Construction(LatticePtr lattice, std::vector<Element> enumeration, PointFamily base, ConstructionConfig config);

    void run_stage();
    void run();

    const PartialHom& hom() const { return hom_; }
    std::size_t stage() const { return stage_; }
    const Trace& trace() const { return trace_; }
    const ConstructionConfig& config() const { return trace_.header.config; }
    std::size_t pending_obligations() const { return queue_.size(); }

private:
    struct Entry {
        ObligationRecord record;
        bool requeued = false;
    };

    bool value_step(TraceEvent& event);
    bool domain_step(TraceEvent& event);
    bool closure_step_once(TraceEvent& event);
    void enqueue_new_obligations(TraceEvent& event, std::size_t old_generator_count);
    void enqueue(ObligationRecord record, TraceEvent& event);
    std::optional<DischargeCertificate> try_cover(const ObligationRecord& record, Element bound);
    const std::vector<std::size_t>& below(Element e);
    bool refuted(const ObligationRecord& record, const std::vector<std::size_t>& zs) const;
    std::optional<RationalVector> next_domain_vector();
    // Adjoins a lower vector without supplying its own lower vectors: only
    // the inequalities with available values apply, coherence is exact.
    PartialHom supply(const PartialHom& hom, const RationalVector& w, std::vector<ExtensionRecord>& log);
    std::vector<Coordinate> coordinates() const;
    std::vector<double> dense(const RationalVector& v);

    LatticePtr lattice_;
    std::vector<std::size_t> rank_;
    PartialHom hom_;
    std::size_t stage_ = 0;
    std::size_t next_value_ = 0;
    Trace trace_;

    // Generator values and floating copies, by position in hom_.order().
    std::vector<Element> values_;
    std::vector<std::vector<double>> dense_;
    std::vector<std::optional<IntegerRay>> rays_;
    std::map<Coordinate, std::size_t> slots_;
    std::map<RationalVector, std::size_t> generator_index_;

    std::size_t next_obligation_ = 0;
    std::map<std::size_t, Entry> open_;
    std::deque<std::size_t> queue_;
    std::vector<ObligationRecord> deferred_;

    // Cover discharge: generators valued below e (rebuilt per batch), the
    // ones recent certificates used, and recent refuting points.
    std::vector<std::optional<std::vector<std::size_t>>> below_;
    std::vector<std::optional<std::vector<RationalVector>>> below_vectors_;
    std::map<Element, std::vector<std::size_t>> cover_pool_;
    struct Refuter {
        RationalVector x;
        std::vector<double> dense;
    };
    std::vector<Refuter> refuters_;

    // Domain enumeration: entries p/q with |p|, q <= round, top entry 1.
    std::size_t round_ = 1;
    std::vector<Coordinate> round_coords_;
    std::vector<Scalar> round_values_;
    std::size_t round_top_ = 0;
    std::vector<std::size_t> round_digits_;
    bool round_started_ = false;
};

struct VerificationReport {
    std::vector<Element> hit_set;
    bool surjective = false;
    bool coherent = false;
    std::string coherence_detail;
    std::size_t certificates_checked = 0;
    std::size_t certificates_failed = 0;
    std::size_t enqueued = 0;
    std::size_t discharged = 0;
    std::size_t settled_on_enqueue = 0;
    std::size_t pending = 0;
    std::size_t unresolved = 0;
    bool fairness_ok = true;
    bool value_steps_ok = true;
    // Schedule-health metric: obligations first enqueued at stage <= window.
    std::size_t window = 100;
    std::size_t window_enqueued = 0;
    std::size_t window_discharged = 0;
    std::vector<std::string> problems;

    bool ok() const {
        return surjective && coherent && certificates_failed == 0 && fairness_ok && value_steps_ok && problems.empty();
    }
};

/// Re-derives the report from the trace alone: replays the extensions,
/// re-checks every certificate, the fairness deadlines, the value steps and
/// exact coherence of the final hom.
VerificationReport verify_trace(const Trace& trace, std::size_t window = 100);

/// verify_trace on the run's trace plus a check that the replayed hom equals
/// the live one.
VerificationReport verify(const Construction& run, std::size_t window = 100);

}  // namespace specnorm
