#pragma once

#include <initializer_list>
#include <string>
#include <utility>

#include "specnorm/rational.hpp"

namespace testing {

using specnorm::Coordinate;
using specnorm::RationalVector;
using specnorm::Scalar;

// Ground vector over coordinates x, y, z, ... from integer or "p/q" entries.
inline RationalVector vec(std::initializer_list<Scalar> values) {
    static const char* names[] = {"x", "y", "z", "w", "v", "u"};
    std::vector<RationalVector::Entry> entries;
    std::size_t i = 0;
    for (const auto& value : values) entries.emplace_back(Coordinate::ground(names[i++]), value);
    return RationalVector(std::move(entries));
}

inline RationalVector with_o(RationalVector ground, const Scalar& o) {
    auto entries = ground.entries();
    entries.emplace_back(Coordinate::distinguished(), o);
    return RationalVector(std::move(entries));
}

}  // namespace testing
