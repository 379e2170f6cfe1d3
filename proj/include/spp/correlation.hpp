#pragma once

// Correlation functions of the process: the Pfaffian path (kernel matrix
// assembled from J-series coefficients) and a brute-force enumeration oracle
// for the geometric chain with an explicit truncation-error bound.

#include <map>
#include <string>
#include <vector>

#include "spp/partitions.hpp"
#include "spp/pfaffian.hpp"
#include "spp/process.hpp"
#include "spp/series.hpp"

namespace spp {

struct CorrelationResult {
    double value = 0.0;
    std::string method;        // "pfaffian" or "oracle"
    double error_bound = 0.0;  // oracle truncation bound; 0 on the Pfaffian path
    std::map<std::string, double> metadata;
};

namespace detail {

inline int max_coordinate(const PointConfiguration& X) {
    int xm = 1;
    for (const auto& p : X.points) xm = std::max(xm, p.second);
    return xm;
}

template <typename Source>
struct source_traits;

template <>
struct source_traits<MqParams> {
    static double decay(const MqParams& p) { return p.q; }
    static LaurentSeries j(int t, const MqParams& p, int N) { return j_series(t, p, N); }
};

template <typename R>
struct source_traits<SpecializationChain<R>> {
    static double decay(const SpecializationChain<R>& c) {
        double d = 0.0;
        for (const auto& spec : c.plus)
            for (const R& v : spec.values) d = std::max(d, std::abs(to_double(v)));
        for (const auto& spec : c.minus)
            for (const R& v : spec.values) d = std::max(d, std::abs(to_double(v)));
        return d;
    }
    static LaurentSeries j(int t, const SpecializationChain<R>& c, int N) {
        return j_series(t, c, N);
    }
};

}  // namespace detail

// Kernel matrix of Theorem A for the points of X (canonically ordered by the
// PointConfiguration invariant).  Row/column layout, 1-based: i <= n carries
// (t_i, x_i), i > n the reflected index i' = 2n - i + 1.
template <typename Source>
SkewSymmetricMatrix build_matrix(const PointConfiguration& X, const Source& source, int N = -1) {
    const int n = static_cast<int>(X.points.size());
    if (n == 0) throw std::invalid_argument("build_matrix: point set must be nonempty");
    if (N < 0)
        N = default_kernel_window(detail::max_coordinate(X),
                                  detail::source_traits<Source>::decay(source));

    std::map<int, LaurentSeries> jcache;
    auto series_for = [&](int t) -> const LaurentSeries& {
        auto it = jcache.find(t);
        if (it == jcache.end())
            it = jcache.emplace(t, detail::source_traits<Source>::j(t, source, N)).first;
        return it->second;
    };
    auto K = [&](int x, int y, int t1, int t2) {
        return kernel_conv(series_for(t1), series_for(t2), x, y, t1 >= t2);
    };
    auto sgn = [](int x) { return x % 2 == 0 ? 1.0 : -1.0; };

    SkewSymmetricMatrix M(2 * n);
    for (int i = 1; i <= 2 * n; ++i) {
        for (int j = i + 1; j <= 2 * n; ++j) {
            double v;
            if (j <= n) {
                const auto &pi = X.points[i - 1], &pj = X.points[j - 1];
                v = K(pi.second, pj.second, pi.first, pj.first);
            } else if (i <= n) {
                const auto &pi = X.points[i - 1], &pj = X.points[2 * n - j];  // j' = 2n-j+1
                v = sgn(pj.second) * K(pi.second, -pj.second, pi.first, pj.first);
            } else {
                const auto &pi = X.points[2 * n - i], &pj = X.points[2 * n - j];
                v = sgn(pi.second + pj.second) * K(-pi.second, -pj.second, pi.first, pj.first);
            }
            M.set(i - 1, j - 1, v);
        }
    }
    return M;
}

template <typename Source>
CorrelationResult rho_pf(const PointConfiguration& X, const Source& source, int N = -1) {
    if (N < 0)
        N = default_kernel_window(detail::max_coordinate(X),
                                  detail::source_traits<Source>::decay(source));
    CorrelationResult res;
    res.value = pfaffian(build_matrix(X, source, N));
    res.method = "pfaffian";
    res.metadata["window"] = N;
    res.metadata["points"] = static_cast<double>(X.points.size());
    return res;
}

// Brute-force oracle for the geometric chain: ratio of 2^A q^|pi| sums over
// all strict plane partitions of volume <= v_max, numerator restricted to
// those containing every point of X.  The truncation error of the ratio is
// bounded by (weight mass beyond v_max) / (truncated denominator): exact
// MacMahon coefficients up to the enumeration cap, then a geometric tail with
// the last observed consecutive-coefficient ratio.
inline CorrelationResult rho_oracle(const PointConfiguration& X, double q, int v_max) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("rho_oracle: q must lie in (0,1)");
    if (v_max < 1 || v_max > kEnumerationCap)
        throw cap_exceeded("rho_oracle: v_max must lie in 1.." + std::to_string(kEnumerationCap));

    double num = 0.0, den = 0.0;
    enumerate_spp(v_max, [&](const StrictPlanePartition& pi) {
        double w = std::pow(2.0, alternation(pi)) * std::pow(q, static_cast<double>(pi.volume()));
        den += w;
        for (const auto& p : X.points) {
            StrictPartition diag = pi.diagonal(p.first);
            bool found = false;
            for (int part : diag.parts)
                if (part == p.second) {
                    found = true;
                    break;
                }
            if (!found) return;
        }
        num += w;
    });

    std::vector<long long> c = macmahon_coeffs(kEnumerationCap);
    double ratio = static_cast<double>(c[kEnumerationCap]) / static_cast<double>(c[kEnumerationCap - 1]);
    if (!(ratio * q < 1.0))
        throw cap_exceeded("rho_oracle: geometric tail bound needs ratio*q < 1, got " +
                           std::to_string(ratio * q));
    double tail = 0.0;
    for (int m = v_max + 1; m <= kEnumerationCap; ++m)
        tail += static_cast<double>(c[static_cast<std::size_t>(m)]) * std::pow(q, m);
    tail += static_cast<double>(c[kEnumerationCap]) * std::pow(q, kEnumerationCap) * (ratio * q) /
            (1.0 - ratio * q);

    CorrelationResult res;
    res.value = num / den;
    res.method = "oracle";
    res.error_bound = tail / den;
    res.metadata["v_max"] = v_max;
    res.metadata["q"] = q;
    res.metadata["tail_ratio"] = ratio;
    return res;
}

// Exact-scalar variant of the truncated enumeration ratio: returns precisely
// (sum over |pi| <= v_max containing X) / (sum over |pi| <= v_max) in the
// arithmetic of R (e.g. spp::rational for an exact q).  The truncation error
// is the same as rho_oracle's bound; no rounding enters on top of it.
template <typename R>
R rho_oracle_exact(const PointConfiguration& X, const R& q, int v_max) {
    if (!(q > R(0) && q < R(1)))
        throw std::invalid_argument("rho_oracle_exact: q must lie in (0,1)");
    if (v_max < 1 || v_max > kEnumerationCap)
        throw cap_exceeded("rho_oracle_exact: v_max must lie in 1.." +
                           std::to_string(kEnumerationCap));

    R num(0), den(0);
    enumerate_spp(v_max, [&](const StrictPlanePartition& pi) {
        R w = detail::pow2_signed<R>(alternation(pi)) *
              detail::pow_int(q, static_cast<long long>(pi.volume()));
        den += w;
        for (const auto& p : X.points) {
            StrictPartition diag = pi.diagonal(p.first);
            bool found = false;
            for (int part : diag.parts)
                if (part == p.second) {
                    found = true;
                    break;
                }
            if (!found) return;
        }
        num += w;
    });
    return num / den;
}

}  // namespace spp
