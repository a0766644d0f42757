#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace specnorm {

// Exact rational; mpq_class keeps numerator/denominator reduced with a
// positive denominator after every arithmetic operation.
using Scalar = mpq_class;

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& value);
int sign(const Scalar& value);

/// Index of a vector component. Ground coordinates come from a base space,
/// the distinguished coordinate `o` is the one being adjoined by a single
/// extension, and Ext(n) are the coordinates created by a construction run.
/// The order Ground < Distinguished < Ext is global and fixed.
class Coordinate {
public:
    enum class Kind : std::uint8_t { ground = 0, distinguished = 1, ext = 2 };

    static Coordinate ground(std::string name);
    static Coordinate distinguished();
    static Coordinate ext(std::uint32_t index);

    /// Inverse of to_string(): "o" is distinguished, "#n" is Ext(n), anything
    /// else is a ground name.
    static Coordinate parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    std::uint32_t index() const noexcept { return index_; }
    bool is_ground() const noexcept { return kind_ == Kind::ground; }

    std::string to_string() const;

    friend int compare(const Coordinate& lhs, const Coordinate& rhs);
    friend bool operator==(const Coordinate& lhs, const Coordinate& rhs) {
        return compare(lhs, rhs) == 0;
    }
    friend bool operator<(const Coordinate& lhs, const Coordinate& rhs) {
        return compare(lhs, rhs) < 0;
    }
    friend bool operator<=(const Coordinate& lhs, const Coordinate& rhs) {
        return compare(lhs, rhs) <= 0;
    }

private:
    Coordinate(Kind kind, std::string name, std::uint32_t index)
        : kind_(kind), name_(std::move(name)), index_(index) {}

    Kind kind_;
    std::string name_;
    std::uint32_t index_;
};

/// Finite-support vector over named coordinates. Entries are kept sorted by
/// coordinate and zero entries are never stored, so structural equality is
/// vector equality.
class RationalVector {
public:
    using Entry = std::pair<Coordinate, Scalar>;

    RationalVector() = default;
    explicit RationalVector(std::vector<Entry> entries);

    static RationalVector unit(const Coordinate& coord);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    Scalar at(const Coordinate& coord) const;

    /// Largest coordinate in the support; empty for the zero vector.
    std::optional<Coordinate> top() const;

    /// True when every support coordinate is a ground coordinate.
    bool is_ground() const;

    RationalVector operator-() const;
    friend RationalVector operator+(const RationalVector& lhs, const RationalVector& rhs);
    friend RationalVector operator-(const RationalVector& lhs, const RationalVector& rhs);
    friend RationalVector operator*(const Scalar& factor, const RationalVector& vec);

    friend int compare(const RationalVector& lhs, const RationalVector& rhs);
    friend bool operator==(const RationalVector& lhs, const RationalVector& rhs) {
        return lhs.entries_ == rhs.entries_;
    }
    friend bool operator!=(const RationalVector& lhs, const RationalVector& rhs) {
        return !(lhs == rhs);
    }
    friend bool operator<(const RationalVector& lhs, const RationalVector& rhs) {
        return compare(lhs, rhs) < 0;
    }

    /// Compact human form, e.g. "(x:1, o:-1/2)".
    std::string to_string() const;

private:
    std::vector<Entry> entries_;
};

/// (a|x): sum of a_i x_i over the shared support.
Scalar pairing(const RationalVector& a, const RationalVector& x);

/// Scales a by |a_o|^-1 so the o-component lands in {-1, 0, 1}.
RationalVector normalize(const RationalVector& a, const Coordinate& o);

/// x - x_o u_o^-1 u, the representative of x modulo the line through u with
/// zero o-component. Throws invalid_reduction when u_o = 0.
RationalVector reduce_by(const RationalVector& x, const RationalVector& u, const Coordinate& o);

/// Canonical representative of the open ray through a (scaled so the top
/// component is +-1). Half-spaces of a and of ray_key(a) coincide.
RationalVector ray_key(const RationalVector& a);

/// True when b = mu * a for some mu > 0.
bool same_ray(const RationalVector& a, const RationalVector& b);

}  // namespace specnorm
