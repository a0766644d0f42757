#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specnorm/polyhedral.hpp"
#include "specnorm/rational.hpp"

namespace specnorm {

/// Finite intersection of open half-spaces [[a]] = {x : (a|x) > 0}.
class Clause {
public:
    explicit Clause(std::vector<RationalVector> literals);

    const std::vector<RationalVector>& literals() const noexcept { return literals_; }

    friend bool operator==(const Clause& lhs, const Clause& rhs) { return lhs.literals_ == rhs.literals_; }
    friend bool operator<(const Clause& lhs, const Clause& rhs);

private:
    std::vector<RationalVector> literals_;
};

/// Element of Op-(D) in disjunctive form: a finite union of clauses. The
/// empty union is the bottom element; there is no top.
class Term {
public:
    Term() = default;
    explicit Term(std::vector<Clause> clauses);

    static Term bottom() { return Term{}; }
    static Term literal(const RationalVector& a);
    static Term clause(std::vector<RationalVector> literals);

    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    bool is_bottom() const noexcept { return clauses_.empty(); }

    friend bool operator==(const Term& lhs, const Term& rhs) { return lhs.clauses_ == rhs.clauses_; }

private:
    std::vector<Clause> clauses_;
};

enum class LatticeOp { join, meet };

Term lattice_op(LatticeOp op, const Term& s, const Term& t);
inline Term join(const Term& s, const Term& t) { return lattice_op(LatticeOp::join, s, t); }
inline Term meet(const Term& s, const Term& t) { return lattice_op(LatticeOp::meet, s, t); }

struct LeqResult {
    bool holds = false;
    // One Farkas certificate per (clause of s, selection from t) subproblem.
    std::vector<FarkasCertificate> certificates;
    // Point inside s and outside t when holds is false.
    std::optional<WitnessPoint> refutation;
};

inline constexpr std::size_t kDefaultSelectionLimit = 100000;

/// Semantic containment s <= t. Each clause of s must entail, for every way
/// of picking one literal out of every clause of t, the union of the picks.
/// Throws too_large when the number of picks exceeds `selection_limit`.
LeqResult leq(const Term& s, const Term& t, std::size_t selection_limit = kDefaultSelectionLimit);

/// Mutual leq.
bool equivalent(const Term& s, const Term& t);

/// Membership of a point in the set a term denotes (direct arithmetic).
bool contains_point(const Term& t, const RationalVector& x);

/// Best-effort normal form: literals reduced to ray representatives, empty
/// clauses dropped, literals implied by the rest of their clause dropped,
/// clauses absorbed by the others dropped. Semantically equal to the input.
Term canonicalize(const Term& t);

}  // namespace specnorm
