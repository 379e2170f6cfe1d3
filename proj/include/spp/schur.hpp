#pragma once

/*
 * Schur P and Q functions on shifted (skew) shapes, evaluated at finite
 * specializations, via direct enumeration of marked shifted tableaux.
 *
 * The alphabet is 1 < 1' < 2 < 2' < ...; a tableau fills the shifted skew
 * diagram with rows and columns nonincreasing, each unmarked letter at most
 * once per column, each marked letter at most once per row.  Q_{lambda/mu}
 * is the generating function of these tableaux by content, and
 * P_{lambda/mu} = 2^{l(mu)-l(lambda)} Q_{lambda/mu}.
 *
 * Everything here is templated on the scalar so the same code runs in
 * binary64 and in exact rational arithmetic.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spp/error.hpp"
#include "spp/partitions.hpp"
#include "spp/rational.hpp"

namespace spp {

/* A finite specialization: the variables (x_1, ..., x_n) -> (a_1, ..., a_n). */
template <class R>
struct Specialization {
    std::vector<R> values;

    Specialization() = default;
    Specialization(std::initializer_list<R> v) : values(v) {}
    explicit Specialization(std::vector<R> v) : values(std::move(v)) {}

    int size() const { return static_cast<int>(values.size()); }
    bool empty() const { return values.empty(); }
};

enum class PQ { P, Q };

/* Default cap on tableau-enumeration DFS nodes before shape_too_large. */
inline constexpr long long kTableauNodeCap = 100'000'000;

/*
 * Evaluate P_{lambda/mu} or Q_{lambda/mu} at a finite specialization by
 * enumerating marked shifted tableaux of the skew shape.  Returns 0 when mu
 * is not contained in lambda, 1 when lambda == mu (and kind == Q; the empty
 * shape has the single empty filling).  Throws shape_too_large if the
 * enumeration would visit more than node_cap states.
 */
template <class R>
R skew_pq(const StrictPartition& lambda, const StrictPartition& mu,
          const Specialization<R>& spec, PQ kind, long long node_cap = kTableauNodeCap) {
    SkewStripStats st = skew_strip_stats(lambda, mu);
    if (!st.contains) return R(0);

    const int n = spec.size();
    const int nrows = lambda.length();
    const int maxcol = nrows + lambda.part(1) + 1;

    // Collect the cells of the shifted skew diagram row-major; row i occupies
    // shifted columns [i + mu_i, i + lambda_i - 1].
    struct Cell {
        int row, col;
        bool has_left;
        int top_index;  // index of the cell straight above, or -1
    };
    std::vector<Cell> cells;
    std::vector<std::vector<int>> index_at(static_cast<size_t>(nrows + 1),
                                           std::vector<int>(static_cast<size_t>(maxcol + 1), -1));
    for (int i = 1; i <= nrows; ++i) {
        int lo = i + mu.part(i), hi = i + lambda.part(i) - 1;
        for (int c = lo; c <= hi; ++c) {
            int top = i > 1 ? index_at[static_cast<size_t>(i - 1)][static_cast<size_t>(c)] : -1;
            index_at[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                static_cast<int>(cells.size());
            cells.push_back({i, c, c > lo, top});
        }
    }

    R total(0);
    if (cells.empty()) {
        total = R(1);
    } else if (n > 0) {
        // Ranks 1..2n encode the alphabet: rank 2v-1 is unmarked v, rank 2v
        // is marked v'.  DFS over cells with per-column unmarked and per-row
        // marked usage masks.
        std::vector<int> rank_at(cells.size(), 0);
        std::vector<uint64_t> used_unmarked_col(static_cast<size_t>(maxcol + 1), 0);
        std::vector<uint64_t> used_marked_row(static_cast<size_t>(nrows + 1), 0);
        std::vector<int> count(static_cast<size_t>(n + 1), 0);
        long long nodes = 0;

        std::function<void(size_t)> rec = [&](size_t k) {
            if (++nodes > node_cap)
                throw shape_too_large("skew_pq: tableau enumeration exceeds " +
                                      std::to_string(node_cap) + " states");
            if (k == cells.size()) {
                R w(1);
                for (int v = 1; v <= n; ++v)
                    w *= detail::pow_int(spec.values[static_cast<size_t>(v - 1)],
                                         count[static_cast<size_t>(v)]);
                total += w;
                return;
            }
            const Cell& cell = cells[k];
            int ub = 2 * n;
            if (cell.has_left) ub = std::min(ub, rank_at[k - 1]);
            if (cell.top_index >= 0)
                ub = std::min(ub, rank_at[static_cast<size_t>(cell.top_index)]);
            for (int rank = 1; rank <= ub; ++rank) {
                int v = (rank + 1) / 2;
                bool marked = (rank % 2 == 0);
                uint64_t bit = 1ULL << v;
                uint64_t& mask = marked ? used_marked_row[static_cast<size_t>(cell.row)]
                                        : used_unmarked_col[static_cast<size_t>(cell.col)];
                if (mask & bit) continue;
                mask |= bit;
                rank_at[k] = rank;
                ++count[static_cast<size_t>(v)];
                rec(k + 1);
                --count[static_cast<size_t>(v)];
                mask &= ~bit;
            }
        };
        rec(0);
    }

    if (kind == PQ::P) total *= detail::pow2_signed<R>(mu.length() - lambda.length());
    return total;
}

/*
 * Q_{lambda/mu} at a single-variable specialization (s), in closed form:
 * 2^{a(lambda/mu)} s^{|lambda|-|mu|} when the skew is a horizontal strip,
 * 0 otherwise.  Agrees with skew_pq on a one-value specialization.
 */
template <class R>
R skew_q_single(const StrictPartition& lambda, const StrictPartition& mu, const R& s) {
    SkewStripStats st = skew_strip_stats(lambda, mu);
    if (!st.contains || !st.horizontal_strip) return R(0);
    return detail::pow_int(R(2), st.a) *
           detail::pow_int(s, lambda.weight() - mu.weight());
}

/*
 * The pairing H(x, y) = prod_{i,j} (1 + x_i y_j) / (1 - x_i y_j).  This is
 * the closed form of sum_lambda Q_lambda(x) P_lambda(y).  Throws
 * pole_on_product when some x_i y_j equals 1.
 */
template <class R>
R h_pairing(const Specialization<R>& x, const Specialization<R>& y) {
    R result(1);
    for (const R& a : x.values) {
        for (const R& b : y.values) {
            R ab = a * b;
            if (ab == R(1))
                throw pole_on_product("h_pairing: factor with x_i * y_j = 1");
            result *= (R(1) + ab) / (R(1) - ab);
        }
    }
    return result;
}

/*
 * Residual of the skew Cauchy identity
 *
 *   sum_lambda Q_{lambda/mu}(x) P_{lambda/nu}(y)
 *     = H(x, y) sum_tau Q_{nu/tau}(x) P_{mu/tau}(y)
 *
 * with the lambda sum truncated at |lambda| <= cutoff (the tau sum is
 * finite).  All specialization values must satisfy |a| <= 1/2 so the
 * truncation tail decays geometrically.  Returns |LHS - RHS| as double.
 */
template <class R>
double verify_qpqp(const StrictPartition& mu, const StrictPartition& nu,
                   const Specialization<R>& x, const Specialization<R>& y, int cutoff) {
    for (const auto& spec : {x, y})
        for (const R& a : spec.values)
            if (detail::abs_val(a) > R(1) / R(2))
                throw std::invalid_argument(
                    "verify_qpqp: specialization values must satisfy |a| <= 1/2");
    R lhs(0);
    enumerate_strict_partitions(cutoff, [&](const StrictPartition& lambda) {
        if (!skew_strip_stats(lambda, mu).contains) return;
        if (!skew_strip_stats(lambda, nu).contains) return;
        lhs += skew_pq(lambda, mu, x, PQ::Q) * skew_pq(lambda, nu, y, PQ::P);
    });
    R rhs_sum(0);
    int tau_bound = static_cast<int>(std::min(mu.weight(), nu.weight()));
    enumerate_strict_partitions(tau_bound, [&](const StrictPartition& tau) {
        if (!skew_strip_stats(mu, tau).contains) return;
        if (!skew_strip_stats(nu, tau).contains) return;
        rhs_sum += skew_pq(nu, tau, x, PQ::Q) * skew_pq(mu, tau, y, PQ::P);
    });
    R diff = lhs - h_pairing(x, y) * rhs_sum;
    return to_double(detail::abs_val(diff));
}

}  // namespace spp
