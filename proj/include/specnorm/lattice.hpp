#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace specnorm {

using Element = std::size_t;

/// Finite partial order given by an explicit relation (used to generate
/// distributive lattices as lattices of downsets).
class Poset {
public:
    /// `below` lists pairs (x, y) meaning x <= y; the reflexive-transitive
    /// closure is taken. Throws invalid_input on a cycle.
    Poset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& below);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool leq(std::size_t x, std::size_t y) const { return order_[x * size() + y]; }

private:
    std::vector<std::string> labels_;
    std::vector<bool> order_;
};

/// Explicit finite lattice with a least element, stored as full order, join
/// and meet tables. Construction validates the order axioms, existence of
/// binary lubs/glbs and that `zero` is least; distributivity is checked
/// separately so non-distributive lattices can still be inspected.
class FiniteLattice {
public:
    static constexpr std::size_t kMaxElements = 64;

    FiniteLattice(std::vector<std::string> labels, const std::vector<std::pair<Element, Element>>& below,
                  Element zero);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(Element x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<Element> find(const std::string& label) const;
    Element index_of(const std::string& label) const;

    Element zero() const noexcept { return zero_; }
    bool leq(Element x, Element y) const { return order_[x * size() + y]; }
    Element join(Element x, Element y) const { return join_[x * size() + y]; }
    Element meet(Element x, Element y) const { return meet_[x * size() + y]; }

    /// Least x with a <= b v x; exists in every finite distributive lattice.
    Element difference(Element a, Element b) const;

    /// Nonzero elements that are not the join of two strictly smaller ones.
    const std::vector<Element>& join_irreducibles() const noexcept { return join_irreducibles_; }

    /// Pairs (lower, upper) of the covering relation, sorted.
    std::vector<std::pair<Element, Element>> covers() const;

    /// Number of elements below x (including x).
    std::size_t height_rank(Element x) const;

private:
    std::vector<std::string> labels_;
    std::vector<bool> order_;
    std::vector<Element> join_;
    std::vector<Element> meet_;
    Element zero_;
    std::vector<Element> join_irreducibles_;
    std::map<std::string, Element> index_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

struct DistributivityViolation {
    Element x, y, z;  // x ^ (y v z) != (x ^ y) v (x ^ z)
};

std::optional<DistributivityViolation> find_distributivity_violation(const FiniteLattice& lattice);
bool check_distributive(const FiniteLattice& lattice);

/// Lattice of downsets of p ordered by inclusion; zero is the empty downset.
/// Size guard: |p| <= 12.
FiniteLattice from_downsets(const Poset& p);

/// All (u, v) with a v b = a v v = u v b and u ^ v = 0.
std::vector<std::pair<Element, Element>> splitting_pairs(const FiniteLattice& lattice, Element a, Element b);

bool is_consonant(const FiniteLattice& lattice, Element a, Element b);
bool is_consonant_set(const FiniteLattice& lattice, const std::vector<Element>& subset);

struct NormalityResult {
    bool completely_normal = true;
    std::optional<std::pair<Element, Element>> counterexample;
};

NormalityResult is_completely_normal(const FiniteLattice& lattice);

/// Smallest 0-sublattice containing `generators` (sorted element list).
std::vector<Element> generated_sublattice(const FiniteLattice& lattice, const std::vector<Element>& generators);

/// 0-lattice homomorphism between explicit finite lattices.
class LatticeHom {
public:
    /// Throws invalid_input unless joins, meets and zero are preserved.
    LatticeHom(LatticePtr source, LatticePtr target, std::vector<Element> map);

    const FiniteLattice& source() const { return *source_; }
    const FiniteLattice& target() const { return *target_; }
    Element operator()(Element x) const { return map_[x]; }
    const std::vector<Element>& map() const noexcept { return map_; }

private:
    LatticePtr source_;
    LatticePtr target_;
    std::vector<Element> map_;
};

struct ClosedAtResult {
    bool closed = true;
    // x -> u with a <= b v u and f(u) <= x, for every x with f(a) <= f(b) v x.
    std::map<Element, Element> witnesses;
    std::optional<Element> failing_x;
};

ClosedAtResult closed_at(const LatticeHom& f, Element a, Element b);

/// Closed at every pair. With generators the check only visits generator
/// pairs, which is sound when they generate the source and the range of f is
/// consonant in the target; both hypotheses are verified first and a
/// precondition_violation is thrown when either fails.
bool is_closed_hom(const LatticeHom& f, const std::optional<std::vector<Element>>& generators = std::nullopt);

/// Canonical code of a finite poset up to isomorphism (brute force over
/// permutations; intended for the small posets used to enumerate lattices).
std::vector<bool> poset_canonical_code(const Poset& p);

/// One representative per isomorphism class of distributive lattices with at
/// most `max_elements` elements, generated from posets of join-irreducibles.
std::vector<FiniteLattice> enumerate_distributive_lattices(std::size_t max_elements);

/// Every poset (up to isomorphism) with exactly n elements; n <= 6.
std::vector<Poset> enumerate_posets(std::size_t n);

/// Named small lattices used by tests, docs and the CLI.
FiniteLattice chain_lattice(std::size_t n);
FiniteLattice boolean_square();
FiniteLattice diamond_m3();
FiniteLattice pentagon_n5();

}  // namespace specnorm
