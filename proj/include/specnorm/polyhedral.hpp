#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "specnorm/rational.hpp"

namespace specnorm {

/// Nonnegative multipliers with sum_a xi_a a = sum_b eta_b b and some xi_a > 0.
/// Entries follow the (deduplicated, sorted) order of the instance; zero
/// multipliers are left out.
struct FarkasCertificate {
    std::vector<std::pair<RationalVector, Scalar>> xi;
    std::vector<std::pair<RationalVector, Scalar>> eta;
};

/// A point x with (a|x) > 0 on the strict side and (b|x) <= 0 on the other.
struct WitnessPoint {
    RationalVector x;
};

using Certificate = std::variant<WitnessPoint, FarkasCertificate>;

struct Infeasible {};

/// Sorted, duplicate-free copy of a vector family.
std::vector<RationalVector> dedup(std::span<const RationalVector> family);

/// Decides whether some x satisfies (a|x) >= 1 on `strict` and (b|x) <= 0 on
/// `nonstrict`. Phase-1 simplex over exact rationals with Bland's rule on the
/// dual system; a witness comes from the primal basic solution, a Farkas
/// certificate from the final duals. Exactly one branch is returned and it has
/// already passed its own re-check.
Certificate feasible_mixed(std::span<const RationalVector> strict,
                           std::span<const RationalVector> nonstrict);

/// Direct-arithmetic re-checks; they trust nothing about how the object was
/// produced. `strict_bound` is 1 for feasible_mixed witnesses and 0 for the
/// open-half-space reading.
bool verify_witness(const WitnessPoint& witness, std::span<const RationalVector> strict,
                    std::span<const RationalVector> nonstrict, const Scalar& strict_bound = Scalar(0));
bool verify_certificate(const FarkasCertificate& cert, std::span<const RationalVector> strict,
                        std::span<const RationalVector> nonstrict);

struct Entailment {
    bool holds = false;
    Certificate certificate;
};

/// Whether the intersection of the open half-spaces of A lies inside the
/// union of those of B. A = {} never entails (0 lies in no open half-space).
Entailment entails_basic(std::span<const RationalVector> a_side,
                         std::span<const RationalVector> b_side);

/// Emptiness of the intersection of the open half-spaces of A (0 in conv A).
/// Throws invalid_input on empty A.
Entailment is_empty_meet(std::span<const RationalVector> a_side);

/// Integer form `scale * w` of a vector whose coordinates the caller has
/// numbered; w is primitive and indexed by slot.
struct IntegerRay {
    std::vector<std::int64_t> w;
    Scalar scale;
};
/// nullopt when some entry does not fit.
std::optional<IntegerRay> integer_ray(std::span<const std::pair<std::size_t, Scalar>> slot_entries);

/// Coefficients c >= 0 with a = sum c_j gens[j], found from a floating-point
/// basis and confirmed exactly. nullopt only means this route failed.
std::optional<std::vector<std::pair<std::size_t, Scalar>>> cone_combination(const IntegerRay& a,
                                                                             std::span<const IntegerRay* const> gens);

/// Fourier-Motzkin cross-check for feasible_mixed. Exponential, so refuses
/// (oracle_unavailable) past 6 dimensions or 12 constraints.
std::variant<WitnessPoint, Infeasible> fm_oracle(std::span<const RationalVector> strict,
                                                 std::span<const RationalVector> nonstrict);

}  // namespace specnorm
