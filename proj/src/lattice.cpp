#include "specnorm/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "specnorm/error.hpp"

namespace specnorm {

namespace {

// Reflexive-transitive closure of a relation given as pairs; returns the
// n x n matrix.
std::vector<bool> closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = true;
    for (auto [x, y] : pairs) {
        if (x >= n || y >= n) throw Error(ErrorKind::invalid_input, "order pair references unknown element");
        rel[x * n + y] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (rel[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (rel[k * n + j]) rel[i * n + j] = true;
    return rel;
}

}  // namespace

Poset::Poset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& below)
    : labels_(std::move(labels)), order_(closure(labels_.size(), below)) {
    const std::size_t n = labels_.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (order_[x * n + y] && order_[y * n + x])
                throw Error(ErrorKind::invalid_input,
                            "antisymmetry fails for poset elements " + labels_[x] + ", " + labels_[y]);
}

FiniteLattice::FiniteLattice(std::vector<std::string> labels, const std::vector<std::pair<Element, Element>>& below,
                             Element zero)
    : labels_(std::move(labels)), zero_(zero) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::invalid_input, "a lattice needs at least one element");
    if (n > kMaxElements) throw Error(ErrorKind::size_guard, "lattice exceeds 64 elements");
    for (Element i = 0; i < n; ++i) {
        if (!index_.emplace(labels_[i], i).second)
            throw Error(ErrorKind::invalid_input, "duplicate element label '" + labels_[i] + "'");
    }
    if (zero >= n) throw Error(ErrorKind::invalid_input, "zero is not an element");

    order_ = closure(n, below);
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y)
            if (leq(x, y) && leq(y, x))
                throw Error(ErrorKind::invalid_input,
                            "antisymmetry fails: " + labels_[x] + " <= " + labels_[y] + " <= " + labels_[x]);
    for (Element x = 0; x < n; ++x)
        if (!leq(zero, x))
            throw Error(ErrorKind::invalid_input, "zero " + labels_[zero] + " is not below " + labels_[x]);

    join_.assign(n * n, 0);
    meet_.assign(n * n, 0);
    for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
            std::optional<Element> lub, glb;
            for (Element u = 0; u < n && !lub; ++u) {
                if (!leq(x, u) || !leq(y, u)) continue;
                bool least = true;
                for (Element v = 0; v < n && least; ++v)
                    if (leq(x, v) && leq(y, v) && !leq(u, v)) least = false;
                if (least) lub = u;
            }
            for (Element u = 0; u < n && !glb; ++u) {
                if (!leq(u, x) || !leq(u, y)) continue;
                bool greatest = true;
                for (Element v = 0; v < n && greatest; ++v)
                    if (leq(v, x) && leq(v, y) && !leq(v, u)) greatest = false;
                if (greatest) glb = u;
            }
            if (!lub) throw Error(ErrorKind::invalid_input, "no join for " + labels_[x] + ", " + labels_[y]);
            if (!glb) throw Error(ErrorKind::invalid_input, "no meet for " + labels_[x] + ", " + labels_[y]);
            join_[x * n + y] = *lub;
            meet_[x * n + y] = *glb;
        }
    }

    for (Element x = 0; x < n; ++x) {
        if (x == zero_) continue;
        bool irreducible = true;
        for (Element y = 0; y < n && irreducible; ++y) {
            if (y == x || !leq(y, x)) continue;
            for (Element z = 0; z < n; ++z) {
                if (z != x && leq(z, x) && join(y, z) == x) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) join_irreducibles_.push_back(x);
    }
}

std::optional<Element> FiniteLattice::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Element FiniteLattice::index_of(const std::string& label) const {
    auto found = find(label);
    if (!found) throw Error(ErrorKind::invalid_input, "unknown lattice element '" + label + "'");
    return *found;
}

Element FiniteLattice::difference(Element a, Element b) const {
    std::optional<Element> best;
    for (Element x = 0; x < size(); ++x) {
        if (!leq(a, join(b, x))) continue;
        best = best ? meet(*best, x) : x;
    }
    return *best;  // a itself always qualifies
}

std::vector<std::pair<Element, Element>> FiniteLattice::covers() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < size(); ++x) {
        for (Element y = 0; y < size(); ++y) {
            if (x == y || !leq(x, y)) continue;
            bool cover = true;
            for (Element z = 0; z < size() && cover; ++z)
                if (z != x && z != y && leq(x, z) && leq(z, y)) cover = false;
            if (cover) out.emplace_back(x, y);
        }
    }
    return out;
}

std::size_t FiniteLattice::height_rank(Element x) const {
    std::size_t count = 0;
    for (Element y = 0; y < size(); ++y)
        if (leq(y, x)) ++count;
    return count;
}

std::optional<DistributivityViolation> find_distributivity_violation(const FiniteLattice& l) {
    for (Element x = 0; x < l.size(); ++x)
        for (Element y = 0; y < l.size(); ++y)
            for (Element z = 0; z < l.size(); ++z)
                if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return DistributivityViolation{x, y, z};
    return std::nullopt;
}

bool check_distributive(const FiniteLattice& lattice) { return !find_distributivity_violation(lattice); }

FiniteLattice from_downsets(const Poset& p) {
    const std::size_t n = p.size();
    if (n > 12) throw Error(ErrorKind::size_guard, "from_downsets: poset larger than 12 elements");
    std::vector<unsigned> downsets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool closed = true;
        for (std::size_t x = 0; x < n && closed; ++x) {
            if (!(mask >> x & 1u)) continue;
            for (std::size_t y = 0; y < n; ++y)
                if (p.leq(y, x) && !(mask >> y & 1u)) {
                    closed = false;
                    break;
                }
        }
        if (closed) downsets.push_back(mask);
    }
    if (downsets.size() > FiniteLattice::kMaxElements)
        throw Error(ErrorKind::size_guard, "from_downsets: more than 64 downsets");

    std::vector<std::string> labels;
    for (unsigned mask : downsets) {
        std::string label = "{";
        bool first = true;
        for (std::size_t x = 0; x < n; ++x) {
            if (!(mask >> x & 1u)) continue;
            if (!first) label += ',';
            label += p.label(x);
            first = false;
        }
        labels.push_back(label + "}");
    }
    std::vector<std::pair<Element, Element>> below;
    for (std::size_t i = 0; i < downsets.size(); ++i)
        for (std::size_t j = 0; j < downsets.size(); ++j)
            if (i != j && (downsets[i] & ~downsets[j]) == 0) below.emplace_back(i, j);
    return FiniteLattice(std::move(labels), below, 0);
}

std::vector<std::pair<Element, Element>> splitting_pairs(const FiniteLattice& l, Element a, Element b) {
    std::vector<std::pair<Element, Element>> out;
    const Element ab = l.join(a, b);
    for (Element u = 0; u < l.size(); ++u) {
        if (l.join(u, b) != ab) continue;
        for (Element v = 0; v < l.size(); ++v)
            if (l.join(a, v) == ab && l.meet(u, v) == l.zero()) out.emplace_back(u, v);
    }
    return out;
}

bool is_consonant(const FiniteLattice& l, Element a, Element b) {
    const Element ab = l.join(a, b);
    for (Element u = 0; u < l.size(); ++u) {
        if (l.join(u, b) != ab) continue;
        for (Element v = 0; v < l.size(); ++v)
            if (l.join(a, v) == ab && l.meet(u, v) == l.zero()) return true;
    }
    return false;
}

bool is_consonant_set(const FiniteLattice& l, const std::vector<Element>& subset) {
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            if (!is_consonant(l, subset[i], subset[j])) return false;
    return true;
}

NormalityResult is_completely_normal(const FiniteLattice& l) {
    for (Element a = 0; a < l.size(); ++a)
        for (Element b = a + 1; b < l.size(); ++b)
            if (!is_consonant(l, a, b)) return {false, std::make_pair(a, b)};
    return {};
}

std::vector<Element> generated_sublattice(const FiniteLattice& l, const std::vector<Element>& generators) {
    std::vector<bool> in(l.size(), false);
    in[l.zero()] = true;
    for (Element g : generators) in[g] = true;
    for (bool grew = true; grew;) {
        grew = false;
        for (Element x = 0; x < l.size(); ++x) {
            if (!in[x]) continue;
            for (Element y = 0; y < l.size(); ++y) {
                if (!in[y]) continue;
                for (Element z : {l.join(x, y), l.meet(x, y)}) {
                    if (!in[z]) {
                        in[z] = true;
                        grew = true;
                    }
                }
            }
        }
    }
    std::vector<Element> out;
    for (Element x = 0; x < l.size(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

LatticeHom::LatticeHom(LatticePtr source, LatticePtr target, std::vector<Element> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    const auto& s = *source_;
    const auto& t = *target_;
    if (map_.size() != s.size()) throw Error(ErrorKind::invalid_input, "hom map size differs from source size");
    for (Element y : map_)
        if (y >= t.size()) throw Error(ErrorKind::invalid_input, "hom maps outside the target");
    if (map_[s.zero()] != t.zero()) throw Error(ErrorKind::invalid_input, "hom does not preserve zero");
    for (Element x = 0; x < s.size(); ++x) {
        for (Element y = 0; y < s.size(); ++y) {
            if (map_[s.join(x, y)] != t.join(map_[x], map_[y]))
                throw Error(ErrorKind::invalid_input, "hom does not preserve join of " + s.label(x) + ", " + s.label(y));
            if (map_[s.meet(x, y)] != t.meet(map_[x], map_[y]))
                throw Error(ErrorKind::invalid_input, "hom does not preserve meet of " + s.label(x) + ", " + s.label(y));
        }
    }
}

ClosedAtResult closed_at(const LatticeHom& f, Element a, Element b) {
    const auto& s = f.source();
    const auto& t = f.target();
    ClosedAtResult result;
    for (Element x = 0; x < t.size(); ++x) {
        if (!t.leq(f(a), t.join(f(b), x))) continue;
        std::optional<Element> witness;
        for (Element u = 0; u < s.size() && !witness; ++u)
            if (s.leq(a, s.join(b, u)) && t.leq(f(u), x)) witness = u;
        if (!witness) {
            result.closed = false;
            result.witnesses.clear();
            result.failing_x = x;
            return result;
        }
        result.witnesses.emplace(x, *witness);
    }
    return result;
}

bool is_closed_hom(const LatticeHom& f, const std::optional<std::vector<Element>>& generators) {
    const auto& s = f.source();
    std::vector<Element> pairs_over;
    if (generators) {
        if (generated_sublattice(s, *generators).size() != s.size())
            throw Error(ErrorKind::precondition_violation, "is_closed_hom: generators do not generate the source");
        std::vector<Element> image(f.map().begin(), f.map().end());
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (!is_consonant_set(f.target(), image))
            throw Error(ErrorKind::precondition_violation, "is_closed_hom: range is not consonant in the target");
        pairs_over = *generators;
    } else {
        pairs_over.resize(s.size());
        std::iota(pairs_over.begin(), pairs_over.end(), Element{0});
    }
    for (Element a : pairs_over)
        for (Element b : pairs_over)
            if (!closed_at(f, a, b).closed) return false;
    return true;
}

std::vector<bool> poset_canonical_code(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<bool> best;
    do {
        std::vector<bool> code(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) code[i * n + j] = p.leq(perm[i], perm[j]);
        if (best.empty() || code < best) best = std::move(code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Poset> enumerate_posets(std::size_t n) {
    if (n > 6) throw Error(ErrorKind::size_guard, "enumerate_posets: n > 6");
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('p' + i)));

    std::set<std::vector<bool>> seen;
    std::vector<Poset> out;
    // Every poset has a natural labelling, so relations with i < j suffice.
    for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
        std::vector<bool> rel(n * n, false);
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask >> k & 1ul) rel[slots[k].first * n + slots[k].second] = true;
        bool transitive = true;
        for (std::size_t i = 0; i < n && transitive; ++i)
            for (std::size_t j = 0; j < n && transitive; ++j)
                if (rel[i * n + j])
                    for (std::size_t k = 0; k < n; ++k)
                        if (rel[j * n + k] && !rel[i * n + k]) {
                            transitive = false;
                            break;
                        }
        if (!transitive) continue;
        std::vector<std::pair<std::size_t, std::size_t>> below;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask >> k & 1ul) below.push_back(slots[k]);
        Poset poset(labels, below);
        if (seen.insert(poset_canonical_code(poset)).second) out.push_back(std::move(poset));
    }
    return out;
}

std::vector<FiniteLattice> enumerate_distributive_lattices(std::size_t max_elements) {
    std::vector<FiniteLattice> out;
    for (std::size_t n = 0; n + 1 <= max_elements && n <= 6; ++n) {
        for (const auto& poset : enumerate_posets(n)) {
            // Downsets of an n-element poset number at least n + 1.
            auto lattice = from_downsets(poset);
            if (lattice.size() <= max_elements) out.push_back(std::move(lattice));
        }
    }
    return out;
}

FiniteLattice chain_lattice(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<std::pair<Element, Element>> below;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        if (i) below.emplace_back(i - 1, i);
    }
    return FiniteLattice(std::move(labels), below, 0);
}

FiniteLattice boolean_square() {
    return FiniteLattice({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0);
}

FiniteLattice diamond_m3() {
    return FiniteLattice({"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, 0);
}

FiniteLattice pentagon_n5() {
    return FiniteLattice({"0", "a", "b", "c", "1"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}, 0);
}

}  // namespace specnorm
