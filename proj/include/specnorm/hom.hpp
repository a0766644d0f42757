#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specnorm/lattice.hpp"
#include "specnorm/opminus.hpp"
#include "specnorm/rational.hpp"

namespace specnorm {

/// Base homomorphism on the ground coordinates: finitely many points p_i with
/// pairwise disjoint values d_i, sending [[a]] to the join of the d_i with
/// (a|p_i) > 0. The empty family is the trivial base (everything ground maps
/// to 0).
struct PointFamily {
    std::vector<std::pair<RationalVector, Element>> points;

    /// Throws invalid_input when a point is not ground or two values meet
    /// above zero.
    void validate(const FiniteLattice& target) const;
    Element eval(const FiniteLattice& target, const RationalVector& a) const;
};

/// Ground / non-ground split of the generators of a hom.
struct GeneratorSet {
    std::vector<RationalVector> ground;
    std::vector<RationalVector> ext;
};

/// 0-lattice homomorphism from the lattice generated by finitely many open
/// half-spaces into a finite distributive lattice, stored through its values
/// on generators. Generators are keyed by their ray representative and
/// always come in pairs {c, -c}.
///
/// With a base, ground vectors take their value from the base and only
/// non-ground generators are stored. Without a base every generator,
/// ground or not, is explicit.
class PartialHom {
public:
    explicit PartialHom(LatticePtr target, std::optional<PointFamily> base = PointFamily{});

    const FiniteLattice& target() const { return *target_; }
    const LatticePtr& target_ptr() const { return target_; }
    const std::optional<PointFamily>& base() const { return base_; }

    /// Keyed by ray_key; contains both signs of every generator.
    const std::map<RationalVector, Element>& values() const { return values_; }
    /// Generator keys in insertion order (c before -c).
    const std::vector<RationalVector>& order() const { return order_; }

    bool has_value(const RationalVector& a) const;
    /// Value of [[a]]; zero vector maps to 0. Throws domain_miss.
    Element value(const RationalVector& a) const;
    Element eval(const Term& t) const;

    GeneratorSet generator_set() const;
    /// Distinct values of the hom on its generators (sorted, including 0).
    std::vector<Element> range() const;

    /// Adds c and -c with the given values without any checking.
    PartialHom with(const RationalVector& c, Element plus, Element minus) const;

    /// Realizing points from the last exact coherence check, one per
    /// join-irreducible; used as hints by later checks.
    const std::vector<std::optional<RationalVector>>& witness_cache() const { return witnesses_; }
    void set_witness_cache(std::vector<std::optional<RationalVector>> witnesses) { witnesses_ = std::move(witnesses); }

private:
    LatticePtr target_;
    std::optional<PointFamily> base_;
    std::map<RationalVector, Element> values_;
    std::vector<RationalVector> order_;
    std::vector<std::optional<RationalVector>> witnesses_;
};

// ---------------------------------------------------------------- coherence

struct CoherenceReport {
    bool coherent = true;
    // Join-irreducible whose prime filter has no realizing point.
    std::optional<Element> failing_join_irreducible;
    std::string detail;
    std::vector<std::optional<RationalVector>> witnesses;
};

/// Exact test that the generator values extend to a 0-lattice homomorphism:
/// for every join-irreducible j the pattern {a : j <= value(a)} must be cut
/// out by a single point (with the ground part pinned to the base point that
/// carries j). Cached witnesses of the hom are tried first.
CoherenceReport check_coherence(const PartialHom& hom);

/// Bounded check: entails_basic(A, B) implies meet value(A) <= join value(B)
/// for all generator subsets with |A|, |B| <= bound (ground generators of a
/// based hom enter through `extra_ground`).
CoherenceReport check_coherence_bounded(const PartialHom& hom, std::size_t bound = 3,
                                        const std::vector<RationalVector>& extra_ground = {});

// ------------------------------------------------------ extension conditions

enum class ExtInequality { disjoint, upper_plus, lower1_plus, lower2_plus, upper_minus, lower1_minus, lower2_minus };

const char* to_string(ExtInequality which);

struct ExtViolation {
    ExtInequality which;
    std::optional<RationalVector> u;  // absent for `disjoint`
    Element lhs;
    Element rhs;
};

struct ExtCheck {
    bool ok = true;
    std::vector<ExtViolation> violations;
};

/// Adjoins a missing lower-level vector to the hom (returns the enlarged
/// hom). Supplied by the construction driver.
using GroundSupplier = std::function<PartialHom(const PartialHom&, const RationalVector&)>;

/// Top coordinate of a non-zero vector.
Coordinate top_coordinate(const RationalVector& c);

/// Generators whose top coordinate is `o` (the set D at that level).
std::vector<RationalVector> level_generators(const PartialHom& hom, const Coordinate& o);

/// Lower-level vectors whose values the extension conditions of c query.
std::vector<RationalVector> required_lower_vectors(const PartialHom& hom, const RationalVector& c);

/// Makes every vector of required_lower_vectors(c) evaluable, using the
/// supplier for missing ones; throws incomplete_domain without one.
PartialHom ensure_lower_values(PartialHom hom, const RationalVector& c, const GroundSupplier& supplier = {});

/// All seven families of extension inequalities for adjoining c with values
/// (plus, minus). Lower values must already be evaluable.
ExtCheck check_ext_conditions(const PartialHom& hom, const RationalVector& c, Element plus, Element minus);

/// How the extension inequalities treat a lower vector c - u without a value:
/// `required` throws incomplete_domain, `available` skips the inequalities of
/// that u (the exact coherence check still decides).
enum class LowerValues { required, available };

/// Adjoins c with the given values after the extension inequalities and an
/// exact coherence check. Throws extension_impossible.
PartialHom extend(const PartialHom& hom, const RationalVector& c, Element plus, Element minus,
                  const GroundSupplier& supplier = {});

/// Same as extend but reports failure as nullopt (with a reason).
std::optional<PartialHom> try_extend(const PartialHom& hom, const RationalVector& c, Element plus, Element minus,
                                     std::string* reason = nullptr, LowerValues lower = LowerValues::required);

struct CandidateList {
    std::vector<std::pair<Element, Element>> pairs;
    bool range_consonant = true;
};

/// Every (plus, minus) in target x target passing check_ext_conditions,
/// ordered by (height of plus, rank of plus, height of minus, rank of
/// minus). `rank` defaults to element order.
CandidateList candidate_pairs(const PartialHom& hom, const RationalVector& c,
                              const std::vector<std::size_t>& rank = {}, LowerValues lower = LowerValues::required);

// ----------------------------------------------------------------- closure

struct Obligation {
    RationalVector a;
    RationalVector b;
    Element e;
};

/// Smallest lambda in 1, 2, 4, ... <= lambda_cap with
/// value[[a - lambda b]] <= value[[-b]] v e. Requires value[[a]] <=
/// value[[b]] v e (precondition_violation otherwise) and every tested a -
/// lambda b evaluable (domain_miss otherwise).
std::optional<Scalar> closedness_criterion(const PartialHom& hom, const RationalVector& a, const RationalVector& b,
                                           Element e, const Scalar& lambda_cap);

struct ClosureResult {
    PartialHom hom;
    RationalVector c;  // ray of a - lambda b
    Scalar lambda;
    Element c_value;   // value of [[c]] in the result
    Element bound;     // value[[-b]] v e
    bool extended = false;
};

Scalar default_lambda_cap();

/// Discharges value[[a]] <= value[[b]] v e by finding lambda and, when the
/// ray of a - lambda b is new, adjoining it with value c* = c+ ^
/// (value[[-b]] v e). The returned hom satisfies value[[a - lambda b]] <=
/// value[[-b]] v e, re-checked before returning. Throws closure_step_failed.
ClosureResult closure_step(const PartialHom& hom, const Obligation& obligation, const Scalar& lambda_cap,
                           const GroundSupplier& supplier = {}, const std::vector<std::size_t>& rank = {});

}  // namespace specnorm
