#include "specnorm/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "specnorm/error.hpp"

namespace specnorm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::invalid_reduction: return "invalid-reduction";
        case ErrorKind::oracle_unavailable: return "oracle-unavailable";
        case ErrorKind::too_large: return "too-large";
        case ErrorKind::size_guard: return "size-guard";
        case ErrorKind::domain_miss: return "domain-miss";
        case ErrorKind::incomplete_domain: return "incomplete-domain";
        case ErrorKind::extension_impossible: return "extension-impossible";
        case ErrorKind::precondition_violation: return "precondition-violation";
        case ErrorKind::closure_step_failed: return "closure-step-failed";
        case ErrorKind::not_distributive: return "not-distributive";
        case ErrorKind::not_completely_normal: return "not-completely-normal";
        case ErrorKind::schema: return "schema";
    }
    return "unknown";
}

namespace {

bool is_integer_text(std::string_view text) {
    if (text.empty()) return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return false;
    return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
        throw Error(ErrorKind::schema, "not an exact rational: '" + std::string(text) + "'");
    }
    std::string num_str(num[0] == '+' ? num.substr(1) : num);
    mpz_class n(num_str, 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::schema, "zero denominator in '" + std::string(text) + "'");
    Scalar value(n, d);
    value.canonicalize();
    return value;
}

std::string to_string(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

int sign(const Scalar& value) { return sgn(value); }

// --- Coordinate ------------------------------------------------------------

Coordinate Coordinate::ground(std::string name) {
    if (name.empty() || name == "o" || name[0] == '#') {
        throw Error(ErrorKind::schema, "reserved or empty ground coordinate name '" + name + "'");
    }
    return Coordinate(Kind::ground, std::move(name), 0);
}

Coordinate Coordinate::distinguished() { return Coordinate(Kind::distinguished, "o", 0); }

Coordinate Coordinate::ext(std::uint32_t index) { return Coordinate(Kind::ext, {}, index); }

Coordinate Coordinate::parse(std::string_view text) {
    if (text == "o") return distinguished();
    if (!text.empty() && text[0] == '#') {
        auto digits = text.substr(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch)) != 0;
            })) {
            throw Error(ErrorKind::schema, "bad ext coordinate '" + std::string(text) + "'");
        }
        return ext(static_cast<std::uint32_t>(std::stoul(std::string(digits))));
    }
    return ground(std::string(text));
}

std::string Coordinate::to_string() const {
    switch (kind_) {
        case Kind::ground: return name_;
        case Kind::distinguished: return "o";
        case Kind::ext: return "#" + std::to_string(index_);
    }
    return {};
}

int compare(const Coordinate& lhs, const Coordinate& rhs) {
    if (lhs.kind_ != rhs.kind_) return lhs.kind_ < rhs.kind_ ? -1 : 1;
    if (int c = lhs.name_.compare(rhs.name_); c != 0) return c < 0 ? -1 : 1;
    if (lhs.index_ != rhs.index_) return lhs.index_ < rhs.index_ ? -1 : 1;
    return 0;
}

// --- RationalVector --------------------------------------------------------

RationalVector::RationalVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& entry : entries) {
        if (!entries_.empty() && entries_.back().first == entry.first) {
            entries_.back().second += entry.second;
        } else {
            entries_.push_back(std::move(entry));
        }
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

RationalVector RationalVector::unit(const Coordinate& coord) {
    RationalVector out;
    out.entries_.emplace_back(coord, Scalar(1));
    return out;
}

Scalar RationalVector::at(const Coordinate& coord) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                               [](const Entry& e, const Coordinate& c) { return e.first < c; });
    if (it != entries_.end() && it->first == coord) return it->second;
    return Scalar(0);
}

std::optional<Coordinate> RationalVector::top() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.back().first;
}

bool RationalVector::is_ground() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Entry& e) { return e.first.is_ground(); });
}

RationalVector RationalVector::operator-() const {
    RationalVector out = *this;
    for (auto& entry : out.entries_) entry.second = -entry.second;
    return out;
}

namespace {

template <typename Op>
RationalVector merge(const RationalVector& lhs, const RationalVector& rhs, Op op) {
    std::vector<RationalVector::Entry> merged;
    merged.reserve(lhs.entries().size() + rhs.entries().size());
    auto li = lhs.entries().begin();
    auto ri = rhs.entries().begin();
    while (li != lhs.entries().end() || ri != rhs.entries().end()) {
        if (ri == rhs.entries().end() || (li != lhs.entries().end() && li->first < ri->first)) {
            merged.emplace_back(li->first, op(li->second, Scalar(0)));
            ++li;
        } else if (li == lhs.entries().end() || ri->first < li->first) {
            merged.emplace_back(ri->first, op(Scalar(0), ri->second));
            ++ri;
        } else {
            merged.emplace_back(li->first, op(li->second, ri->second));
            ++li;
            ++ri;
        }
    }
    return RationalVector(std::move(merged));
}

}  // namespace

RationalVector operator+(const RationalVector& lhs, const RationalVector& rhs) {
    return merge(lhs, rhs, [](const Scalar& a, const Scalar& b) { return Scalar(a + b); });
}

RationalVector operator-(const RationalVector& lhs, const RationalVector& rhs) {
    return merge(lhs, rhs, [](const Scalar& a, const Scalar& b) { return Scalar(a - b); });
}

RationalVector operator*(const Scalar& factor, const RationalVector& vec) {
    if (factor == 0) return {};
    RationalVector out = vec;
    for (auto& entry : out.entries_) entry.second *= factor;
    return out;
}

int compare(const RationalVector& lhs, const RationalVector& rhs) {
    const auto& a = lhs.entries_;
    const auto& b = rhs.entries_;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (int c = compare(a[i].first, b[i].first); c != 0) return c;
        if (int c = cmp(a[i].second, b[i].second); c != 0) return c < 0 ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

std::string RationalVector::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out << ", ";
        out << entries_[i].first.to_string() << ':' << specnorm::to_string(entries_[i].second);
    }
    out << ')';
    return out.str();
}

Scalar pairing(const RationalVector& a, const RationalVector& x) {
    Scalar sum(0);
    auto ai = a.entries().begin();
    auto xi = x.entries().begin();
    while (ai != a.entries().end() && xi != x.entries().end()) {
        int c = compare(ai->first, xi->first);
        if (c < 0) {
            ++ai;
        } else if (c > 0) {
            ++xi;
        } else {
            sum += ai->second * xi->second;
            ++ai;
            ++xi;
        }
    }
    return sum;
}

RationalVector normalize(const RationalVector& a, const Coordinate& o) {
    Scalar ao = a.at(o);
    if (ao == 0) return a;
    return Scalar(1 / abs(ao)) * a;
}

RationalVector reduce_by(const RationalVector& x, const RationalVector& u, const Coordinate& o) {
    Scalar uo = u.at(o);
    if (uo == 0) {
        throw Error(ErrorKind::invalid_reduction,
                    "reduce_by: u has zero " + o.to_string() + "-component: " + u.to_string());
    }
    Scalar xo = x.at(o);
    if (xo == 0) return x;
    return x - Scalar(xo / uo) * u;
}

RationalVector ray_key(const RationalVector& a) {
    if (a.is_zero()) return a;
    const Scalar& t = a.entries().back().second;
    if (t == 1 || t == -1) return a;
    return Scalar(1 / abs(t)) * a;
}

bool same_ray(const RationalVector& a, const RationalVector& b) {
    return ray_key(a) == ray_key(b);
}

}  // namespace specnorm
