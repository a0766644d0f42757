#include "specnorm/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "specnorm/error.hpp"

namespace specnorm {

std::vector<RationalVector> dedup(std::span<const RationalVector> family) {
    std::vector<RationalVector> out(family.begin(), family.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<Coordinate> joint_support(std::span<const RationalVector> a, std::span<const RationalVector> b) {
    std::set<Coordinate> coords;
    for (const auto& v : a)
        for (const auto& [c, _] : v.entries()) coords.insert(c);
    for (const auto& v : b)
        for (const auto& [c, _] : v.entries()) coords.insert(c);
    return {coords.begin(), coords.end()};
}

// Dense tableau for  M z = r, z >= 0, with one artificial per row.
class Phase1Simplex {
public:
    Phase1Simplex(std::vector<std::vector<Scalar>> matrix, std::vector<Scalar> rhs)
        : rows_(matrix.size()), cols_(rows_ ? matrix[0].size() : 0), rhs_(std::move(rhs)) {
        const std::size_t width = cols_ + rows_;
        table_.assign(rows_, std::vector<Scalar>(width));
        reduced_.assign(width, Scalar(0));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) table_[i][j] = matrix[i][j];
            table_[i][cols_ + i] = 1;
            basis_[i] = cols_ + i;
            for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= table_[i][j];
        }
    }

    void solve() {
        for (;;) {
            std::size_t entering = reduced_.size();
            for (std::size_t j = 0; j < reduced_.size(); ++j) {
                if (sgn(reduced_[j]) < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == reduced_.size()) return;

            std::size_t leaving = rows_;
            Scalar best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (sgn(table_[i][entering]) <= 0) continue;
                Scalar ratio = rhs_[i] / table_[i][entering];
                if (leaving == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (leaving == rows_) throw Error(ErrorKind::invalid_input, "phase-1 simplex unbounded");
            pivot(leaving, entering);
        }
    }

    Scalar objective() const {
        Scalar sum(0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_) sum += rhs_[i];
        return sum;
    }

    std::vector<Scalar> primal() const {
        std::vector<Scalar> z(cols_, Scalar(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) z[basis_[i]] = rhs_[i];
        return z;
    }

    // Phase-1 duals y = c_B B^-1; the artificial block of the tableau is B^-1.
    std::vector<Scalar> duals() const {
        std::vector<Scalar> y(rows_, Scalar(0));
        for (std::size_t k = 0; k < rows_; ++k) {
            if (basis_[k] < cols_) continue;
            for (std::size_t i = 0; i < rows_; ++i) y[i] += table_[k][cols_ + i];
        }
        return y;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const std::size_t width = reduced_.size();
        Scalar inv = 1 / table_[row][col];
        for (std::size_t j = 0; j < width; ++j)
            if (sgn(table_[row][j]) != 0) table_[row][j] *= inv;
        rhs_[row] *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || sgn(table_[i][col]) == 0) continue;
            Scalar factor = table_[i][col];
            for (std::size_t j = 0; j < width; ++j)
                if (sgn(table_[row][j]) != 0) table_[i][j] -= factor * table_[row][j];
            rhs_[i] -= factor * rhs_[row];
        }
        if (sgn(reduced_[col]) != 0) {
            Scalar factor = reduced_[col];
            for (std::size_t j = 0; j < width; ++j)
                if (sgn(table_[row][j]) != 0) reduced_[j] -= factor * table_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> rhs_;
    std::vector<std::vector<Scalar>> table_;
    std::vector<Scalar> reduced_;
    std::vector<std::size_t> basis_;
};

// The same phase-1 system in doubles. Only the final basis is kept; it is
// re-solved exactly afterwards, so rounding can cost a fallback to the exact
// tableau but never a wrong answer.
std::optional<std::vector<std::size_t>> float_basis(std::vector<std::vector<double>> table, std::vector<double> r,
                                                    std::size_t cols) {
    constexpr double eps = 1e-9;
    const std::size_t rows = table.size();
    const std::size_t width = cols + rows;
    std::vector<double> reduced(width, 0.0);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        table[i].resize(width, 0.0);
        for (std::size_t j = 0; j < cols; ++j) reduced[j] -= table[i][j];
        table[i][cols + i] = 1.0;
        basis[i] = cols + i;
    }
    const std::size_t max_iter = 50 * (width + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::size_t entering = width;
        for (std::size_t j = 0; j < width; ++j)
            if (reduced[j] < -eps) {
                entering = j;
                break;
            }
        if (entering == width) return basis;
        std::size_t leaving = rows;
        double best = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (table[i][entering] <= eps) continue;
            const double ratio = r[i] / table[i][entering];
            if (leaving == rows || ratio < best - eps || (ratio <= best + eps && basis[i] < basis[leaving])) {
                leaving = i;
                best = ratio;
            }
        }
        if (leaving == rows) return std::nullopt;
        const double inv = 1.0 / table[leaving][entering];
        for (auto& v : table[leaving]) v *= inv;
        r[leaving] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leaving) continue;
            const double f = table[i][entering];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) table[i][j] -= f * table[leaving][j];
            r[i] -= f * r[leaving];
        }
        const double f = reduced[entering];
        for (std::size_t j = 0; j < width; ++j) reduced[j] -= f * table[leaving][j];
        basis[leaving] = entering;
    }
    return std::nullopt;
}

// Exact inverse of a square matrix; empty when singular.
std::optional<std::vector<std::vector<Scalar>>> invert(std::vector<std::vector<Scalar>> m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, Scalar(0));
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        const Scalar inv = 1 / m[c][c];
        for (auto& v : m[c])
            if (sgn(v) != 0) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m[i][c]) == 0) continue;
            const Scalar f = m[i][c];
            for (std::size_t j = c; j < 2 * n; ++j)
                if (sgn(m[c][j]) != 0) m[i][j] -= f * m[c][j];
        }
    }
    for (auto& row : m) row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    return m;
}

// Sign of (a|x), decided in doubles when the rounding error bound allows it.
int pairing_sign(const RationalVector& a, const RationalVector& x) {
    double sum = 0.0;
    double mag = 0.0;
    auto ai = a.entries().begin();
    auto xi = x.entries().begin();
    while (ai != a.entries().end() && xi != x.entries().end()) {
        int c = compare(ai->first, xi->first);
        if (c < 0) {
            ++ai;
        } else if (c > 0) {
            ++xi;
        } else {
            const double t = ai->second.get_d() * xi->second.get_d();
            sum += t;
            mag += std::fabs(t);
            ++ai;
            ++xi;
        }
    }
    if (std::isfinite(mag) && std::fabs(sum) > 1e-9 * mag && mag > 1e-200) return sum > 0 ? 1 : -1;
    return sgn(pairing(a, x));
}

bool witness_holds(const WitnessPoint& w, const std::vector<const RationalVector*>& strict,
                   const std::vector<const RationalVector*>& nonstrict) {
    for (const auto* a : strict)
        if (pairing(*a, w.x) < 1) return false;
    for (const auto* b : nonstrict)
        if (pairing_sign(*b, w.x) > 0) return false;
    return true;
}

bool identity_holds(const FarkasCertificate& cert) {
    RationalVector lhs, rhs;
    bool positive = false;
    for (const auto& [a, xi] : cert.xi) {
        if (sgn(xi) < 0) return false;
        positive = positive || sgn(xi) > 0;
        lhs = lhs + xi * a;
    }
    for (const auto& [b, eta] : cert.eta) {
        if (sgn(eta) < 0) return false;
        rhs = rhs + eta * b;
    }
    return positive && lhs == rhs;
}

std::vector<const RationalVector*> dedup_refs(std::span<const RationalVector> family) {
    std::vector<const RationalVector*> out;
    out.reserve(family.size());
    for (const auto& v : family) out.push_back(&v);
    std::sort(out.begin(), out.end(), [](const auto* x, const auto* y) { return *x < *y; });
    out.erase(std::unique(out.begin(), out.end(), [](const auto* x, const auto* y) { return *x == *y; }), out.end());
    return out;
}

}  // namespace

Certificate feasible_mixed(std::span<const RationalVector> strict_in,
                           std::span<const RationalVector> nonstrict_in) {
    const auto strict = dedup_refs(strict_in);
    const auto nonstrict = dedup_refs(nonstrict_in);
    if (strict.empty()) return WitnessPoint{};

    // Dual system: xi, eta >= 0, sum xi_a a - sum eta_b b = 0, sum xi_a = 1.
    std::vector<Coordinate> coords;
    for (const auto* family : {&strict, &nonstrict})
        for (const auto* v : *family)
            for (const auto& [c, _] : v->entries()) coords.push_back(c);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    const std::size_t dims = coords.size();
    const std::size_t rows = dims + 1;
    const std::size_t n_strict = strict.size();
    const std::size_t n_cols = n_strict + nonstrict.size();
    auto row_of = [&](const Coordinate& c) {
        return static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), c) - coords.begin());
    };
    auto column = [&](std::size_t j) -> const RationalVector& {
        return j < n_strict ? *strict[j] : *nonstrict[j - n_strict];
    };
    auto exact_column = [&](std::size_t j) {
        std::vector<Scalar> out(rows, Scalar(0));
        const bool is_strict = j < n_strict;
        for (const auto& [c, v] : column(j).entries()) out[row_of(c)] = is_strict ? Scalar(v) : Scalar(-v);
        if (is_strict) out[dims] = 1;
        return out;
    };

    auto farkas_from = [&](const std::vector<std::pair<std::size_t, Scalar>>& z) {
        FarkasCertificate cert;
        for (const auto& [j, value] : z) {
            if (sgn(value) == 0) continue;
            if (j < n_strict) {
                cert.xi.emplace_back(*strict[j], value);
            } else {
                cert.eta.emplace_back(*nonstrict[j - n_strict], value);
            }
        }
        return cert;
    };
    auto witness_from = [&](const std::vector<Scalar>& y) -> std::optional<WitnessPoint> {
        const Scalar t = y[dims];
        if (sgn(t) <= 0) return std::nullopt;
        std::vector<RationalVector::Entry> entries;
        for (std::size_t i = 0; i < dims; ++i) entries.emplace_back(coords[i], -y[i] / t);
        WitnessPoint witness{RationalVector(std::move(entries))};
        if (!witness_holds(witness, strict, nonstrict)) return std::nullopt;
        return witness;
    };

    {
        std::vector<std::vector<double>> table(rows, std::vector<double>(n_cols, 0.0));
        for (std::size_t j = 0; j < n_cols; ++j) {
            const bool is_strict = j < n_strict;
            for (const auto& [c, v] : column(j).entries()) table[row_of(c)][j] = is_strict ? v.get_d() : -v.get_d();
            if (is_strict) table[dims][j] = 1.0;
        }
        std::vector<double> r(rows, 0.0);
        r[dims] = 1.0;
        if (auto basis = float_basis(std::move(table), std::move(r), n_cols)) {
            std::vector<std::vector<Scalar>> b(rows, std::vector<Scalar>(rows, Scalar(0)));
            for (std::size_t k = 0; k < rows; ++k) {
                if ((*basis)[k] < n_cols) {
                    auto col = exact_column((*basis)[k]);
                    for (std::size_t i = 0; i < rows; ++i) b[i][k] = col[i];
                } else {
                    b[(*basis)[k] - n_cols][k] = 1;
                }
            }
            if (auto inv = invert(std::move(b))) {
                std::vector<std::pair<std::size_t, Scalar>> z;
                std::vector<Scalar> y(rows, Scalar(0));
                bool feasible = true;
                for (std::size_t k = 0; k < rows; ++k) {
                    const Scalar& value = (*inv)[k][dims];
                    feasible = feasible && sgn(value) >= 0;
                    if ((*basis)[k] >= n_cols) {
                        feasible = feasible && sgn(value) == 0;
                        for (std::size_t i = 0; i < rows; ++i) y[i] += (*inv)[k][i];
                    } else {
                        z.emplace_back((*basis)[k], value);
                    }
                }
                if (feasible) {
                    std::sort(z.begin(), z.end(), [](const auto& x, const auto& w) { return x.first < w.first; });
                    auto cert = farkas_from(z);
                    if (identity_holds(cert)) return cert;
                } else if (auto witness = witness_from(y)) {
                    return *witness;
                }
            }
        }
    }

    std::vector<std::vector<Scalar>> matrix(rows, std::vector<Scalar>(n_cols, Scalar(0)));
    for (std::size_t j = 0; j < n_cols; ++j) {
        auto col = exact_column(j);
        for (std::size_t i = 0; i < rows; ++i) matrix[i][j] = col[i];
    }
    std::vector<Scalar> rhs(rows, Scalar(0));
    rhs[dims] = 1;

    Phase1Simplex lp(std::move(matrix), std::move(rhs));
    lp.solve();

    if (sgn(lp.objective()) == 0) {
        auto z = lp.primal();
        std::vector<std::pair<std::size_t, Scalar>> indexed;
        for (std::size_t j = 0; j < n_cols; ++j) indexed.emplace_back(j, z[j]);
        auto cert = farkas_from(indexed);
        if (!identity_holds(cert)) throw Error(ErrorKind::invalid_input, "internal: simplex certificate failed re-check");
        return cert;
    }

    // y^T M <= 0 and y_last > 0; x = -y_dims / y_last meets (a|x) >= 1, (b|x) <= 0.
    auto witness = witness_from(lp.duals());
    if (!witness) throw Error(ErrorKind::invalid_input, "internal: simplex witness failed re-check");
    return *witness;
}

bool verify_witness(const WitnessPoint& witness, std::span<const RationalVector> strict,
                    std::span<const RationalVector> nonstrict, const Scalar& strict_bound) {
    for (const auto& a : strict) {
        Scalar p = pairing(a, witness.x);
        if (strict_bound == 0 ? sgn(p) <= 0 : p < strict_bound) return false;
    }
    for (const auto& b : nonstrict)
        if (sgn(pairing(b, witness.x)) > 0) return false;
    return true;
}

bool verify_certificate(const FarkasCertificate& cert, std::span<const RationalVector> strict,
                        std::span<const RationalVector> nonstrict) {
    auto in = [](std::span<const RationalVector> family, const RationalVector& v) {
        return std::find(family.begin(), family.end(), v) != family.end();
    };
    RationalVector lhs, rhs;
    bool positive = false;
    for (const auto& [a, xi] : cert.xi) {
        if (sgn(xi) == 0) continue;
        if (sgn(xi) < 0 || !in(strict, a)) return false;
        positive = positive || sgn(xi) > 0;
        lhs = lhs + xi * a;
    }
    for (const auto& [b, eta] : cert.eta) {
        if (sgn(eta) == 0) continue;
        if (sgn(eta) < 0 || !in(nonstrict, b)) return false;
        rhs = rhs + eta * b;
    }
    return positive && lhs == rhs;
}

Entailment entails_basic(std::span<const RationalVector> a_side, std::span<const RationalVector> b_side) {
    if (a_side.empty()) return {false, WitnessPoint{}};
    auto result = feasible_mixed(a_side, b_side);
    const bool holds = std::holds_alternative<FarkasCertificate>(result);
    return {holds, std::move(result)};
}

Entailment is_empty_meet(std::span<const RationalVector> a_side) {
    if (a_side.empty()) throw Error(ErrorKind::invalid_input, "is_empty_meet needs a nonempty family");
    return entails_basic(a_side, {});
}

// --- Fourier-Motzkin -------------------------------------------------------

namespace {

// g . x >= h over dense coordinates.
struct Inequality {
    std::vector<Scalar> g;
    Scalar h;

    void scale_canonical() {
        Scalar m(0);
        for (const auto& v : g)
            if (abs(v) > m) m = abs(v);
        if (sgn(m) == 0) return;
        for (auto& v : g) v /= m;
        h /= m;
    }

    friend bool operator<(const Inequality& lhs, const Inequality& rhs) {
        for (std::size_t i = 0; i < lhs.g.size(); ++i)
            if (int c = cmp(lhs.g[i], rhs.g[i]); c != 0) return c < 0;
        return lhs.h < rhs.h;
    }
};

constexpr std::size_t kFmMaxDims = 6;
constexpr std::size_t kFmMaxConstraints = 12;
constexpr std::size_t kFmBlowupCap = 200000;

}  // namespace

namespace {

using Wide = __int128;

bool mul(Wide a, Wide b, Wide& out) { return !__builtin_mul_overflow(a, b, &out); }
bool sub(Wide a, Wide b, Wide& out) { return !__builtin_sub_overflow(a, b, &out); }

// Bareiss determinant; nullopt on overflow.
std::optional<Wide> determinant(std::vector<std::vector<Wide>> m) {
    const std::size_t n = m.size();
    Wide prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return Wide(0);
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Wide x, y, d;
                if (!mul(m[i][j], m[k][k], x) || !mul(m[i][k], m[k][j], y) || !sub(x, y, d)) return std::nullopt;
                m[i][j] = d / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Scalar to_scalar(Wide v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class z(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    z <<= 64;
    z += mpz_class(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    if (neg) z = -z;
    return Scalar(z);
}

}  // namespace

std::optional<IntegerRay> integer_ray(std::span<const std::pair<std::size_t, Scalar>> slot_entries) {
    mpz_class den = 1, num = 0;
    for (const auto& [slot, value] : slot_entries) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), value.get_den_mpz_t());
    std::vector<mpz_class> scaled;
    for (const auto& [slot, value] : slot_entries) {
        scaled.push_back(value.get_num() * (den / value.get_den()));
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), scaled.back().get_mpz_t());
    }
    IntegerRay ray;
    if (num == 0) {
        ray.scale = 1;
        return ray;
    }
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        const mpz_class w = scaled[i] / num;
        if (!w.fits_slong_p() || abs(w) > (mpz_class(1) << 40)) return std::nullopt;
        const std::size_t slot = slot_entries[i].first;
        if (ray.w.size() <= slot) ray.w.resize(slot + 1, 0);
        ray.w[slot] = w.get_si();
    }
    ray.scale = Scalar(num, den);
    ray.scale.canonicalize();
    return ray;
}

std::optional<std::vector<std::pair<std::size_t, Scalar>>> cone_combination(const IntegerRay& a,
                                                                             std::span<const IntegerRay* const> gens) {
    auto at = [](const IntegerRay& v, std::size_t slot) -> std::int64_t {
        return slot < v.w.size() ? v.w[slot] : 0;
    };
    std::size_t width = a.w.size();
    for (const auto* g : gens) width = std::max(width, g->w.size());
    std::vector<std::size_t> rows;
    for (std::size_t s = 0; s < width; ++s) {
        bool used = at(a, s) != 0;
        for (std::size_t j = 0; !used && j < gens.size(); ++j) used = at(*gens[j], s) != 0;
        if (used) rows.push_back(s);
    }
    if (rows.empty()) return std::nullopt;
    const std::size_t n = gens.size();
    std::vector<std::vector<double>> table(rows.size(), std::vector<double>(n));
    std::vector<double> r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double flip = at(a, rows[i]) < 0 ? -1.0 : 1.0;
        r[i] = flip * static_cast<double>(at(a, rows[i]));
        for (std::size_t j = 0; j < n; ++j) table[i][j] = flip * static_cast<double>(at(*gens[j], rows[i]));
    }
    auto basis = float_basis(table, r, n);
    if (!basis) return std::nullopt;
    std::vector<std::size_t> cols;
    for (std::size_t b : *basis)
        if (b < n) cols.push_back(b);
    std::sort(cols.begin(), cols.end());
    const std::size_t k = cols.size();
    if (k == 0) return std::nullopt;

    // k independent rows, chosen by elimination in doubles.
    std::vector<std::size_t> picked;
    {
        std::vector<std::vector<double>> m(rows.size(), std::vector<double>(k));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t c = 0; c < k; ++c) m[i][c] = table[i][cols[c]];
        std::vector<bool> used(rows.size(), false);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t best = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (!used[i] && (best == rows.size() || std::abs(m[i][c]) > std::abs(m[best][c]))) best = i;
            if (best == rows.size() || std::abs(m[best][c]) < 1e-12) return std::nullopt;
            used[best] = true;
            picked.push_back(best);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (used[i]) continue;
                const double f = m[i][c] / m[best][c];
                for (std::size_t c2 = c; c2 < k; ++c2) m[i][c2] -= f * m[best][c2];
            }
        }
    }
    std::vector<std::vector<Wide>> sq(k, std::vector<Wide>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < k; ++c) sq[i][c] = at(*gens[cols[c]], rows[picked[i]]);
    auto det = determinant(sq);
    if (!det || *det == 0) return std::nullopt;
    std::vector<Wide> nums(k);
    for (std::size_t c = 0; c < k; ++c) {
        auto m = sq;
        for (std::size_t i = 0; i < k; ++i) m[i][c] = at(a, rows[picked[i]]);
        auto d = determinant(std::move(m));
        if (!d) return std::nullopt;
        if ((*d < 0 && *det > 0) || (*d > 0 && *det < 0)) return std::nullopt;
        nums[c] = *d;
    }
    // det * a == sum nums_c * gens[cols[c]] on every row.
    for (std::size_t s : rows) {
        Wide lhs, sum = 0;
        if (!mul(*det, at(a, s), lhs)) return std::nullopt;
        for (std::size_t c = 0; c < k; ++c) {
            Wide t;
            if (!mul(nums[c], at(*gens[cols[c]], s), t) || __builtin_add_overflow(sum, t, &sum)) return std::nullopt;
        }
        if (sum != lhs) return std::nullopt;
    }
    const Scalar d = to_scalar(*det);
    std::vector<std::pair<std::size_t, Scalar>> out;
    for (std::size_t c = 0; c < k; ++c) {
        if (nums[c] == 0) continue;
        out.emplace_back(cols[c], a.scale * to_scalar(nums[c]) / (d * gens[cols[c]]->scale));
    }
    return out;
}

std::variant<WitnessPoint, Infeasible> fm_oracle(std::span<const RationalVector> strict_in,
                                                 std::span<const RationalVector> nonstrict_in) {
    const auto strict = dedup(strict_in);
    const auto nonstrict = dedup(nonstrict_in);
    const auto coords = joint_support(strict, nonstrict);
    const std::size_t dims = coords.size();
    if (dims > kFmMaxDims || strict.size() + nonstrict.size() > kFmMaxConstraints)
        throw Error(ErrorKind::oracle_unavailable, "fm_oracle size guard exceeded");

    std::map<Coordinate, std::size_t> idx;
    for (std::size_t i = 0; i < dims; ++i) idx.emplace(coords[i], i);
    auto dense = [&](const RationalVector& v, const Scalar& factor) {
        std::vector<Scalar> out(dims, Scalar(0));
        for (const auto& [c, value] : v.entries()) out[idx.at(c)] = factor * value;
        return out;
    };

    std::set<Inequality> system;
    for (const auto& a : strict) {
        Inequality ineq{dense(a, 1), Scalar(1)};
        ineq.scale_canonical();
        system.insert(std::move(ineq));
    }
    for (const auto& b : nonstrict) {
        Inequality ineq{dense(b, -1), Scalar(0)};
        ineq.scale_canonical();
        system.insert(std::move(ineq));
    }

    // levels[k] holds the system over variables 0..k, before eliminating k.
    std::vector<std::vector<Inequality>> levels(dims);
    for (std::size_t k = dims; k-- > 0;) {
        levels[k].assign(system.begin(), system.end());
        std::set<Inequality> next;
        std::vector<const Inequality*> pos, neg;
        for (const auto& ineq : levels[k]) {
            int s = sgn(ineq.g[k]);
            if (s > 0) pos.push_back(&ineq);
            else if (s < 0) neg.push_back(&ineq);
            else next.insert(ineq);
        }
        for (const auto* p : pos) {
            for (const auto* q : neg) {
                Scalar alpha = p->g[k];
                Scalar beta = -q->g[k];
                Inequality combo{std::vector<Scalar>(dims), beta * p->h + alpha * q->h};
                for (std::size_t i = 0; i < dims; ++i) combo.g[i] = beta * p->g[i] + alpha * q->g[i];
                combo.g[k] = 0;
                combo.scale_canonical();
                next.insert(std::move(combo));
                if (next.size() > kFmBlowupCap)
                    throw Error(ErrorKind::oracle_unavailable, "fm_oracle elimination blow-up");
            }
        }
        system = std::move(next);
    }
    for (const auto& ineq : system)
        if (sgn(ineq.h) > 0) return Infeasible{};

    std::vector<Scalar> x(dims, Scalar(0));
    for (std::size_t k = 0; k < dims; ++k) {
        std::optional<Scalar> lower, upper;
        for (const auto& ineq : levels[k]) {
            int s = sgn(ineq.g[k]);
            if (s == 0) continue;
            Scalar rest = ineq.h;
            for (std::size_t i = 0; i < k; ++i) rest -= ineq.g[i] * x[i];
            Scalar bound = rest / ineq.g[k];
            if (s > 0) {
                if (!lower || bound > *lower) lower = bound;
            } else if (!upper || bound < *upper) {
                upper = bound;
            }
        }
        if (lower && upper && *lower > *upper)
            throw Error(ErrorKind::invalid_input, "internal: fm back-substitution inconsistent");
        x[k] = lower ? *lower : (upper ? *upper : Scalar(0));
    }
    std::vector<RationalVector::Entry> entries;
    for (std::size_t i = 0; i < dims; ++i) entries.emplace_back(coords[i], x[i]);
    WitnessPoint witness{RationalVector(std::move(entries))};
    if (!verify_witness(witness, strict, nonstrict, Scalar(1)))
        throw Error(ErrorKind::invalid_input, "internal: fm witness failed re-check");
    return witness;
}

}  // namespace specnorm
