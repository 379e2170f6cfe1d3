#pragma once

/*
 * Strict partitions and strict plane partitions.
 *
 * A strict partition has strictly decreasing positive parts.  A strict plane
 * partition is a finite matrix of nonnegative integers with nonincreasing
 * rows and columns whose diagonals (fixed j - i) are strictly decreasing
 * while positive; equivalently, reading the diagonals left to right gives a
 * sequence of strict partitions
 *
 *     lambda^{-T_L} < ... < lambda^0 > ... > lambda^{T_R}
 *
 * in which consecutive skews are horizontal strips.  The module provides the
 * combinatorial statistics the rest of the library is built on: the
 * alternation count (number of side-connected components of equal entries),
 * the per-strip statistic a(lambda/mu) (number of disconnected pieces of the
 * shifted skew diagram), the plane diagram (the point set {(t, x)} with x a
 * part of the diagonal partition at t), and a deterministic enumerator of all
 * strict plane partitions up to a given volume.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spp/error.hpp"

namespace spp {

/* A strict partition: strictly decreasing positive integer parts. */
struct StrictPartition {
    std::vector<int> parts;

    StrictPartition() = default;
    StrictPartition(std::initializer_list<int> xs) : parts(xs) { check(); }
    explicit StrictPartition(std::vector<int> xs) : parts(std::move(xs)) { check(); }

    int length() const { return static_cast<int>(parts.size()); }

    long long weight() const {
        long long w = 0;
        for (int p : parts) w += p;
        return w;
    }

    /* 1-based part access; parts beyond the length are 0. */
    int part(int i) const {
        return (i >= 1 && i <= length()) ? parts[static_cast<size_t>(i - 1)] : 0;
    }

    bool empty() const { return parts.empty(); }

    bool operator==(const StrictPartition&) const = default;
    bool operator<(const StrictPartition& o) const { return parts < o.parts; }

    void check() const {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0)
                throw std::invalid_argument("StrictPartition: parts must be positive");
            if (i > 0 && parts[i - 1] <= parts[i])
                throw std::invalid_argument("StrictPartition: parts must strictly decrease");
        }
    }
};

/*
 * A strict plane partition.  Storage of record is the matrix in trimmed form:
 * rows[r] holds exactly the positive entries of row r (positives form a
 * prefix because rows are nonincreasing), and there are no empty rows.
 * Construct through validate_spp() unless the data is known valid.
 */
struct StrictPlanePartition {
    std::vector<std::vector<int>> rows;

    int n_rows() const { return static_cast<int>(rows.size()); }

    bool empty() const { return rows.empty(); }

    /* 0-based matrix entry, 0 outside the support. */
    int entry(int r, int c) const {
        if (r < 0 || c < 0 || r >= n_rows()) return 0;
        const auto& row = rows[static_cast<size_t>(r)];
        return c < static_cast<int>(row.size()) ? row[static_cast<size_t>(c)] : 0;
    }

    long long volume() const {
        long long v = 0;
        for (const auto& row : rows)
            for (int x : row) v += x;
        return v;
    }

    /* Largest a >= 0 such that diagonal t = -a is nonempty; -1 when empty. */
    int t_left() const { return n_rows() - 1; }

    /* Largest b >= 0 such that diagonal t = +b is nonempty; -1 when empty. */
    int t_right() const { return rows.empty() ? -1 : static_cast<int>(rows[0].size()) - 1; }

    /* The strict partition on diagonal t (entries with column - row = t). */
    StrictPartition diagonal(int t) const {
        std::vector<int> parts;
        int r = t >= 0 ? 0 : -t;
        int c = t >= 0 ? t : 0;
        for (; entry(r, c) > 0; ++r, ++c) parts.push_back(entry(r, c));
        return StrictPartition(std::move(parts));
    }

    bool operator==(const StrictPlanePartition&) const = default;
    bool operator<(const StrictPlanePartition& o) const { return rows < o.rows; }
};

/*
 * An ordered list of distinct points (t, x) with x >= 1, kept sorted by
 * (t, x).  This is both the output type of plane_diagram() and the query
 * type of the correlation functions.
 */
struct PointConfiguration {
    std::vector<std::pair<int, int>> points;

    PointConfiguration() = default;

    explicit PointConfiguration(std::vector<std::pair<int, int>> pts)
        : points(std::move(pts)) {
        std::sort(points.begin(), points.end());
        for (size_t i = 0; i < points.size(); ++i) {
            if (points[i].second < 1)
                throw std::invalid_argument("PointConfiguration: x coordinates must be >= 1");
            if (i > 0 && points[i] == points[i - 1])
                throw std::invalid_argument("PointConfiguration: points must be distinct");
        }
    }

    size_t size() const { return points.size(); }

    bool operator==(const PointConfiguration&) const = default;
};

/*
 * Validate a raw matrix (possibly ragged, possibly with explicit zeros) as a
 * strict plane partition and return it in trimmed canonical form.  Throws
 * not_a_plane_partition if entries are negative or a row/column increases,
 * diagonal_not_strict if a diagonal repeats a positive value.
 */
inline StrictPlanePartition validate_spp(const std::vector<std::vector<int>>& matrix) {
    auto at = [&](int r, int c) -> int {
        if (r < 0 || c < 0 || r >= static_cast<int>(matrix.size())) return 0;
        const auto& row = matrix[static_cast<size_t>(r)];
        return c < static_cast<int>(row.size()) ? row[static_cast<size_t>(c)] : 0;
    };
    int nr = static_cast<int>(matrix.size());
    int nc = 0;
    for (const auto& row : matrix) nc = std::max(nc, static_cast<int>(row.size()));
    // Monotonicity (the plane-partition property) is checked in full before
    // diagonal strictness so a doubly-invalid matrix reports deterministically.
    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
            int v = at(r, c);
            if (v < 0)
                throw not_a_plane_partition("negative entry at (" + std::to_string(r) + "," +
                                            std::to_string(c) + ")");
            if (at(r, c + 1) > v)
                throw not_a_plane_partition("row " + std::to_string(r) +
                                            " increases at column " + std::to_string(c + 1));
            if (at(r + 1, c) > v)
                throw not_a_plane_partition("column " + std::to_string(c) +
                                            " increases at row " + std::to_string(r + 1));
        }
    }
    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
            int v = at(r, c);
            if (v > 0 && at(r + 1, c + 1) == v)
                throw diagonal_not_strict("diagonal through (" + std::to_string(r) + "," +
                                          std::to_string(c) + ") repeats the value " +
                                          std::to_string(v));
        }
    }
    StrictPlanePartition pi;
    for (const auto& row : matrix) {
        std::vector<int> trimmed;
        for (int v : row) {
            if (v == 0) break;
            trimmed.push_back(v);
        }
        if (trimmed.empty()) break;
        pi.rows.push_back(std::move(trimmed));
    }
    return pi;
}

/* Statistics of the skew lambda/mu of two strict partitions. */
struct SkewStripStats {
    bool contains = false;          // mu_i <= lambda_i for all i
    bool horizontal_strip = false;  // skew of unshifted diagrams has <= 1 box per column
    int a = 0;                      // number of disconnected pieces of the shifted skew diagram
};

/*
 * Compute containment, the horizontal-strip property, and the component
 * count a(lambda/mu) of the shifted skew diagram (row i occupies shifted
 * columns [i + mu_i, i + lambda_i - 1]; pieces connect through shared
 * columns of consecutive rows).  For horizontal strips this equals the
 * number of columns c of the unshifted skew that are occupied while column
 * c + 1 is not.  When mu is not contained in lambda, a is reported as 0.
 */
inline SkewStripStats skew_strip_stats(const StrictPartition& lambda,
                                       const StrictPartition& mu) {
    SkewStripStats s;
    if (mu.length() > lambda.length()) return s;
    for (int i = 1; i <= mu.length(); ++i)
        if (mu.part(i) > lambda.part(i)) return s;
    s.contains = true;

    s.horizontal_strip = true;
    for (int i = 1; i <= lambda.length(); ++i) {
        if (lambda.part(i + 1) > mu.part(i)) {
            s.horizontal_strip = false;
            break;
        }
    }

    // Components of the shifted skew: one interval per row; consecutive
    // nonempty rows merge exactly when their column intervals overlap.
    int comps = 0;
    bool have_prev = false;
    int prev_lo = 0, prev_hi = -1;
    for (int i = 1; i <= lambda.length(); ++i) {
        if (lambda.part(i) == mu.part(i)) {
            have_prev = false;
            continue;
        }
        int lo = i + mu.part(i);
        int hi = i + lambda.part(i) - 1;
        if (!have_prev || std::max(lo, prev_lo) > std::min(hi, prev_hi)) ++comps;
        have_prev = true;
        prev_lo = lo;
        prev_hi = hi;
    }
    s.a = comps;
    return s;
}

/*
 * For a horizontal strip, count columns of the unshifted skew that contain a
 * box while the next column does not.  Used as an independent cross-check of
 * skew_strip_stats().a — the two agree on every horizontal strip.
 */
inline int hstrip_column_count(const StrictPartition& lambda, const StrictPartition& mu) {
    auto occupied = [&](int c) {
        for (int i = 1; i <= lambda.length(); ++i)
            if (mu.part(i) < c && c <= lambda.part(i)) return true;
        return false;
    };
    int count = 0;
    for (int c = 1; c <= lambda.part(1); ++c)
        if (occupied(c) && !occupied(c + 1)) ++count;
    return count;
}

enum class AltMethod { diagonal_formula, components };

/*
 * The alternation A(pi): the number of side-connected components of equal
 * positive entries of the matrix.  The diagonal formula computes it as
 *
 *   sum_{i=1}^{T_R+1} a(lambda^{i-1}/lambda^i)
 *   + sum_{i=0}^{-T_L} a(lambda^i/lambda^{i-1}) - l(lambda^0)
 *
 * with lambda^{T_R+1} and lambda^{-T_L-1} the empty partition; both methods
 * agree on every strict plane partition.
 */
inline int alternation(const StrictPlanePartition& pi,
                       AltMethod method = AltMethod::components) {
    if (pi.empty()) return 0;
    if (method == AltMethod::components) {
        std::vector<std::vector<char>> seen;
        seen.reserve(pi.rows.size());
        for (const auto& row : pi.rows) seen.emplace_back(row.size(), 0);
        int comps = 0;
        std::vector<std::pair<int, int>> stack;
        for (int r = 0; r < pi.n_rows(); ++r) {
            for (int c = 0; c < static_cast<int>(pi.rows[static_cast<size_t>(r)].size()); ++c) {
                if (seen[static_cast<size_t>(r)][static_cast<size_t>(c)]) continue;
                ++comps;
                int value = pi.entry(r, c);
                stack.push_back({r, c});
                seen[static_cast<size_t>(r)][static_cast<size_t>(c)] = 1;
                while (!stack.empty()) {
                    auto [cr, cc] = stack.back();
                    stack.pop_back();
                    constexpr int dr[4] = {1, -1, 0, 0};
                    constexpr int dc[4] = {0, 0, 1, -1};
                    for (int d = 0; d < 4; ++d) {
                        int nr = cr + dr[d], nc = cc + dc[d];
                        if (pi.entry(nr, nc) != value) continue;
                        if (seen[static_cast<size_t>(nr)][static_cast<size_t>(nc)]) continue;
                        seen[static_cast<size_t>(nr)][static_cast<size_t>(nc)] = 1;
                        stack.push_back({nr, nc});
                    }
                }
            }
        }
        return comps;
    }

    int tl = pi.t_left(), tr = pi.t_right();
    auto diag = [&](int t) {
        return (t < -tl || t > tr) ? StrictPartition{} : pi.diagonal(t);
    };
    int total = 0;
    for (int i = 1; i <= tr + 1; ++i) total += skew_strip_stats(diag(i - 1), diag(i)).a;
    for (int i = 0; i >= -tl; --i) total += skew_strip_stats(diag(i), diag(i - 1)).a;
    total -= pi.diagonal(0).length();
    return total;
}

/* The point set {(t, x) : x is a part of the diagonal partition at t}. */
inline PointConfiguration plane_diagram(const StrictPlanePartition& pi) {
    std::vector<std::pair<int, int>> pts;
    for (int t = -pi.t_left(); t <= pi.t_right(); ++t)
        for (int x : pi.diagonal(t).parts) pts.push_back({t, x});
    return PointConfiguration(std::move(pts));
}

/* Largest volume enumerate_spp() accepts. */
inline constexpr int kEnumerationCap = 24;

/*
 * Visit every strict plane partition with volume() <= max_volume exactly
 * once, in a deterministic row-major order (the empty partition first).
 * Throws cap_exceeded when max_volume > kEnumerationCap: the count grows
 * fast enough that larger requests stop being interactive.
 */
inline void enumerate_spp(int max_volume,
                          const std::function<void(const StrictPlanePartition&)>& visit) {
    if (max_volume < 0) throw std::invalid_argument("enumerate_spp: max_volume must be >= 0");
    if (max_volume > kEnumerationCap)
        throw cap_exceeded("enumerate_spp: max_volume " + std::to_string(max_volume) +
                           " exceeds cap " + std::to_string(kEnumerationCap));
    StrictPlanePartition pi;
    long long vol = 0;
    constexpr int kNoBound = std::numeric_limits<int>::max();

    // rec(r): pi currently has r complete rows; emit it, then try every
    // nonempty row r.  grow(r, c) extends row r at column c; each placed
    // value can either close the row (recurse into rec(r + 1)) or grow on.
    std::function<void(int)> rec;
    std::function<void(int, int)> grow;
    rec = [&](int r) {
        visit(pi);
        pi.rows.emplace_back();
        grow(r, 0);
        pi.rows.pop_back();
    };
    grow = [&](int r, int c) {
        int ub = c > 0 ? pi.entry(r, c - 1) : kNoBound;
        if (r > 0) {
            ub = std::min(ub, pi.entry(r - 1, c));
            if (c > 0) ub = std::min(ub, pi.entry(r - 1, c - 1) - 1);
        }
        ub = static_cast<int>(std::min<long long>(ub, max_volume - vol));
        for (int v = 1; v <= ub; ++v) {
            pi.rows[static_cast<size_t>(r)].push_back(v);
            vol += v;
            rec(r + 1);     // close row r after this cell
            grow(r, c + 1); // or extend it one more column
            pi.rows[static_cast<size_t>(r)].pop_back();
            vol -= v;
        }
    };
    rec(0);
}

/* Convenience wrapper collecting the enumeration into a vector. */
inline std::vector<StrictPlanePartition> enumerate_spp(int max_volume) {
    std::vector<StrictPlanePartition> all;
    enumerate_spp(max_volume, [&](const StrictPlanePartition& pi) { all.push_back(pi); });
    return all;
}

/*
 * Visit every strict partition of weight <= max_weight exactly once
 * (decreasing largest-part-first order, the empty partition first).
 */
inline void enumerate_strict_partitions(int max_weight,
                                        const std::function<void(const StrictPartition&)>& visit) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int max_part, int budget) {
        visit(StrictPartition(cur));
        for (int p = std::min(max_part, budget); p >= 1; --p) {
            cur.push_back(p);
            rec(p - 1, budget - p);
            cur.pop_back();
        }
    };
    rec(max_weight, max_weight);
}

/* Convenience wrapper collecting the strict partitions into a vector. */
inline std::vector<StrictPartition> enumerate_strict_partitions(int max_weight) {
    std::vector<StrictPartition> all;
    enumerate_strict_partitions(max_weight,
                                [&](const StrictPartition& lam) { all.push_back(lam); });
    return all;
}

}  // namespace spp
