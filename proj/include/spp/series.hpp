#pragma once

// Truncated Laurent series over double, and the J-series / kernel-coefficient
// machinery built on them.  A LaurentSeries stores coefficients on a contiguous
// exponent range [lo, hi] and carries a symmetric guarantee window [-window,
// window]: inside the window a missing coefficient is a known (numerical) zero,
// outside the window nothing is claimed and reads throw.
//
// j_series(t, ...) expands the generating function attached to diagonal slot t
// as a Laurent series in the annulus where both factor products converge:
//
//   J(t, z) = prod_{m >= t} F(rho_m^-; z) * prod_{m <= t-1} F(rho_m^+; z^{-1})^{-1},
//   F(spec; z) = prod_a (1 + a z) / (1 - a z).
//
// For the geometric q-chain the slot structure collapses to the two-sided form
//
//   J(t, z) = prod_{m >= max(t,0)} (1 + q^{m+1/2} z)   / (1 - q^{m+1/2} z)
//           * prod_{m >= max(-t,0)} (1 - q^{m+1/2}/z)  / (1 + q^{m+1/2}/z),
//
// which is what the q overloads implement.  kernel_coeff() turns a pair of
// J-series into one correlation-kernel entry via the region-resolved expansion
// of (z - w) / (2 (z + w)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spp/error.hpp"
#include "spp/process.hpp"

namespace spp {

struct LaurentSeries {
    int window = 0;              // coefficients guaranteed on [-window, window]
    int lo = 0;                  // exponent of coeffs.front()
    std::vector<double> coeffs;  // contiguous; may cover less than the window

    int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }

    // Coefficient of z^e.  Inside the window but off the stored range the
    // value is a structural zero; outside the window it was never computed.
    double at(int e) const {
        if (e < -window || e > window)
            throw window_too_small("coefficient z^" + std::to_string(e) +
                                   " outside guaranteed window [-" + std::to_string(window) +
                                   ", " + std::to_string(window) + "]");
        if (e < lo || e > hi()) return 0.0;
        return coeffs[static_cast<std::size_t>(e - lo)];
    }

    static LaurentSeries one(int window) { return LaurentSeries{window, 0, {1.0}}; }

    std::string dump_json() const {
        std::string s = "{\"window\":" + std::to_string(window) + ",\"lo\":" + std::to_string(lo) + ",\"coeffs\":[";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (i) s += ',';
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", coeffs[i]);
            s += buf;
        }
        s += "]}";
        return s;
    }
};

// z -> z^{-1}: reverses the coefficient range.
inline LaurentSeries mirror(const LaurentSeries& s) {
    LaurentSeries out;
    out.window = s.window;
    out.lo = -(s.lo + static_cast<int>(s.coeffs.size()) - 1);
    out.coeffs.assign(s.coeffs.rbegin(), s.coeffs.rend());
    return out;
}

// (1 + a z) / (1 - a z) = 1 + 2 sum_{k>=1} a^k z^k, truncated at z^N.
// Requires |a| < 1; factors meant for the z^{-1} direction are produced by
// mirroring the result, not by passing 1/a.
inline LaurentSeries rational_factor(double a, int N) {
    if (!(std::abs(a) < 1.0))
        throw std::invalid_argument("rational_factor: requires |a| < 1, got " + std::to_string(a));
    if (N < 0) throw std::invalid_argument("rational_factor: negative window");
    LaurentSeries s;
    s.window = N;
    s.lo = 0;
    s.coeffs.assign(1, 1.0);
    double p = a;
    for (int k = 1; k <= N && std::abs(p) > 5e-324; ++k) {
        s.coeffs.push_back(2.0 * p);
        p *= a;
    }
    return s;
}

// Product clipped to [-N, N].  Terms that would land outside the window are
// dropped; the guarantee window shrinks to the smaller operand's.
inline LaurentSeries series_product(const LaurentSeries& a, const LaurentSeries& b, int N) {
    LaurentSeries out;
    out.window = std::min({a.window, b.window, N});
    if (a.coeffs.empty() || b.coeffs.empty()) return out;  // zero series
    int lo = std::max(a.lo + b.lo, -N);
    int hi = std::min(a.hi() + b.hi(), N);
    if (lo > hi) {
        out.lo = 0;
        return out;
    }
    out.lo = lo;
    out.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0.0) continue;
        int ea = a.lo + static_cast<int>(i);
        int jlo = std::max(lo - ea - b.lo, 0);
        int jhi = std::min(hi - ea - b.lo, static_cast<int>(b.coeffs.size()) - 1);
        for (int j = jlo; j <= jhi; ++j)
            out.coeffs[static_cast<std::size_t>(ea + b.lo + j - lo)] += a.coeffs[i] * b.coeffs[static_cast<std::size_t>(j)];
    }
    return out;
}

// Restrict to [-N, N] and tighten the guarantee window accordingly.
inline LaurentSeries truncate_window(const LaurentSeries& s, int N) {
    LaurentSeries out;
    out.window = std::min(s.window, N);
    int lo = std::max(s.lo, -N);
    int hi = std::min(s.hi(), N);
    if (lo > hi || s.coeffs.empty()) {
        out.lo = 0;
        return out;
    }
    out.lo = lo;
    out.coeffs.assign(s.coeffs.begin() + (lo - s.lo), s.coeffs.begin() + (hi - s.lo + 1));
    return out;
}

namespace detail {

// Number of factors needed before the geometric parameter q^{m+1/2} drops
// below eps.
inline int mq_factor_count(double q, double eps) {
    int m = 0;
    double a = std::sqrt(q);
    while (a > eps && m < 100000) {
        a *= q;
        ++m;
    }
    return std::max(m, 1);
}

// Extra exponent room used while building a product so that clipping during
// intermediate multiplications cannot disturb the reported window: terms that
// travel through exponents beyond N + pad carry weight < decay^(pad/2) per
// branch, i.e. below double precision for the pads chosen here.
inline int decay_pad(double decay) {
    if (!(decay > 0.0) || decay >= 1.0) return 8;
    double p = 2.0 * std::log(1e-17) / std::log(decay);
    return std::clamp(static_cast<int>(std::ceil(p)), 8, 4000);
}

}  // namespace detail

// --- geometric-chain J-series, coefficient-product backend -----------------
//
// Multiplies the z-branch factors first (all coefficients positive: no
// cancellation), then the mirrored z^{-1}-branch factors.  Adequate for
// q <= ~0.6; beyond that intermediate coefficients grow like
// exp(pi^2 / (4 |ln q|)) and the unit-circle backend takes over.
inline LaurentSeries j_series_product(int t, double q, int N, double factor_eps = 1e-18) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("j_series_product: q must lie in (0,1)");
    if (N < 0) throw std::invalid_argument("j_series_product: negative window");
    int M = detail::mq_factor_count(q, factor_eps);
    int Ni = N + detail::decay_pad(q);  // build wide, report [-N, N]
    LaurentSeries acc = LaurentSeries::one(Ni);
    double a = std::sqrt(q);
    for (int m = 0; m < std::max(t, 0) + M; ++m) {
        if (m >= std::max(t, 0)) acc = series_product(acc, rational_factor(a, Ni), Ni);
        a *= q;
    }
    a = std::sqrt(q);
    for (int m = 0; m < std::max(-t, 0) + M; ++m) {
        if (m >= std::max(-t, 0)) acc = series_product(acc, mirror(rational_factor(-a, Ni)), Ni);
        a *= q;
    }
    return truncate_window(acc, N);
}

// --- geometric-chain J-series, unit-circle sampling backend ----------------
//
// |J(t, e^{i phi})| stays O(1) on the unit circle (factors shared by both
// branches pair into unimodular ratios), so sampling J there and taking a
// direct DFT avoids the catastrophic cancellation the coefficient products
// suffer at q near 1.  Node count doubles until the extracted coefficients
// stabilize.
inline LaurentSeries j_series_circle(int t, double q, int N, double tol = 5e-14,
                                     double factor_eps = 1e-18) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("j_series_circle: q must lie in (0,1)");
    if (N < 0) throw std::invalid_argument("j_series_circle: negative window");
    const int M = detail::mq_factor_count(q, factor_eps);
    const int start_z = std::max(t, 0);     // z-branch uses m >= start_z
    const int start_inv = std::max(-t, 0);  // z^{-1}-branch uses m >= start_inv
    const int paired = std::max(start_z, start_inv);
    const int m_end = paired + M;

    auto eval = [&](double phi) -> std::complex<double> {
        const std::complex<double> ez(std::cos(phi), std::sin(phi));
        std::complex<double> v(1.0, 0.0);
        double a = std::sqrt(q);
        for (int m = 0; m < m_end; ++m) {
            if (m >= paired) {
                // (1+az)/(1-az) * (1-a/z)/(1+a/z) on |z|=1: unimodular ratio.
                double re = 1.0 - a * a;
                double im = 2.0 * a * std::sin(phi);
                v *= std::complex<double>(re, im) / std::complex<double>(re, -im);
            } else {
                if (m >= start_z) v *= (1.0 + a * ez) / (1.0 - a * ez);
                if (m >= start_inv) v *= (1.0 - a * std::conj(ez)) / (1.0 + a * std::conj(ez));
            }
            a *= q;
        }
        return v;
    };

    int nodes = 256;
    while (nodes < 4 * N + 4) nodes *= 2;
    std::vector<double> prev;
    for (int round = 0; round < 14; ++round, nodes *= 2) {
        std::vector<std::complex<double>> vals(static_cast<std::size_t>(nodes));
        for (int j = 0; j < nodes; ++j) vals[static_cast<std::size_t>(j)] = eval(2.0 * M_PI * j / nodes);
        std::vector<double> cur(static_cast<std::size_t>(2 * N + 1));
        for (int e = -N; e <= N; ++e) {
            std::complex<double> s(0.0, 0.0);
            for (int j = 0; j < nodes; ++j) {
                double phi = 2.0 * M_PI * j / nodes;
                s += vals[static_cast<std::size_t>(j)] * std::complex<double>(std::cos(e * phi), -std::sin(e * phi));
            }
            cur[static_cast<std::size_t>(e + N)] = s.real() / nodes;
        }
        if (!prev.empty()) {
            double dev = 0.0;
            for (std::size_t i = 0; i < cur.size(); ++i) dev = std::max(dev, std::abs(cur[i] - prev[i]));
            if (dev < tol) {
                LaurentSeries out;
                out.window = N;
                out.lo = -N;
                out.coeffs = std::move(cur);
                return out;
            }
        }
        prev = std::move(cur);
    }
    throw quadrature_not_converged("j_series_circle: coefficients did not stabilize under node doubling");
}

// Backend dispatch for the geometric chain.
inline LaurentSeries j_series(int t, const MqParams& params, int N) {
    if (params.q > 0.6) return j_series_circle(t, params.q, N);
    return j_series_product(t, params.q, N);
}

// --- finite-chain J-series --------------------------------------------------
//
// Slots are labeled 1..T.  The minus-specializations at slots m >= t
// contribute plain factors in z; the plus-specializations at slots m <= t-1
// contribute inverted factors in z^{-1}, i.e. mirror(rational_factor(-a)).
template <typename R>
LaurentSeries j_series(int t, const SpecializationChain<R>& chain, int N) {
    int T = chain.T();
    if (t < 1 || t > T) throw std::invalid_argument("j_series: slot index must lie in 1..T");
    double decay = 0.0;
    for (const auto& spec : chain.plus)
        for (const R& v : spec.values) decay = std::max(decay, std::abs(to_double(v)));
    for (const auto& spec : chain.minus)
        for (const R& v : spec.values) decay = std::max(decay, std::abs(to_double(v)));
    int Ni = N + detail::decay_pad(decay);
    LaurentSeries acc = LaurentSeries::one(Ni);
    for (int m = t; m <= T; ++m)
        for (const R& v : chain.rho_minus(m).values)
            acc = series_product(acc, rational_factor(to_double(v), Ni), Ni);
    for (int m = 0; m <= t - 1; ++m)
        for (const R& v : chain.rho_plus(m).values)
            acc = series_product(acc, mirror(rational_factor(-to_double(v), Ni)), Ni);
    return truncate_window(acc, N);
}

// --- kernel coefficients -----------------------------------------------------
//
// K_{x,y}(t1, t2) is the coefficient of z^x w^y in
//     (z - w) / (2 (z + w)) * J(t1, z) * J(t2, w),
// expanded in |z| > |w| when t1 >= t2 and |w| > |z| otherwise:
//
//   t1 >= t2:  1/2 Jz[x] Jw[y] + sum_{k>=1} (-1)^k Jz[x+k] Jw[y-k]
//   t1 <  t2: -1/2 Jz[x] Jw[y] - sum_{k>=1} (-1)^k Jz[x-k] Jw[y+k]
inline double kernel_conv(const LaurentSeries& jz, const LaurentSeries& jw, int x, int y,
                          bool z_outside) {
    int N = std::min(jz.window, jw.window);
    if (std::abs(x) > N || std::abs(y) > N)
        throw window_too_small("kernel_conv: |x|, |y| must not exceed the series window " +
                               std::to_string(N));
    double acc = (z_outside ? 0.5 : -0.5) * jz.at(x) * jw.at(y);
    if (z_outside) {
        double sign = -1.0;
        for (int k = 1; x + k <= N && y - k >= -N; ++k, sign = -sign)
            acc += sign * jz.at(x + k) * jw.at(y - k);
    } else {
        double sign = -1.0;
        for (int k = 1; x - k >= -N && y + k <= N; ++k, sign = -sign)
            acc -= sign * jz.at(x - k) * jw.at(y + k);
    }
    return acc;
}

// Default window rule: wide enough that both the series tails and the kernel
// convolution tails sit far below 1e-12 (see the window-exactness property).
inline int default_kernel_window(int max_exp, double decay) {
    int margin = 16;
    if (decay > 0.0 && decay < 1.0) {
        double m = std::log(1e-13) / std::log(decay);
        margin = std::max(margin, static_cast<int>(std::ceil(m)));
        margin = std::min(margin, 20000);
    }
    return std::max(2 * max_exp + 16, max_exp + margin + 8);
}

inline double kernel_coeff(int x, int y, int t1, int t2, const MqParams& params, int N = -1) {
    if (N < 0) N = default_kernel_window(std::max(std::abs(x), std::abs(y)), params.q);
    LaurentSeries jz = j_series(t1, params, N);
    LaurentSeries jw = j_series(t2, params, N);
    return kernel_conv(jz, jw, x, y, t1 >= t2);
}

template <typename R>
double kernel_coeff(int x, int y, int t1, int t2, const SpecializationChain<R>& chain, int N = -1) {
    if (N < 0) {
        double decay = 0.0;
        for (const auto& spec : chain.plus)
            for (const R& v : spec.values) decay = std::max(decay, std::abs(to_double(v)));
        for (const auto& spec : chain.minus)
            for (const R& v : spec.values) decay = std::max(decay, std::abs(to_double(v)));
        N = default_kernel_window(std::max(std::abs(x), std::abs(y)), decay);
    }
    LaurentSeries jz = j_series(t1, chain, N);
    LaurentSeries jw = j_series(t2, chain, N);
    return kernel_conv(jz, jw, x, y, t1 >= t2);
}

}  // namespace spp
