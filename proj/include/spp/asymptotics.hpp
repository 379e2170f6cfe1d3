#pragma once

// Bulk scaling limits: the arccos density parameter theta(tau, chi), limit
// kernels evaluated by contour quadrature over circular arcs (determinantal
// in the bulk chi > 0, Pfaffian on the boundary chi = 0), the sine-kernel
// specialization, the limiting density/limit shape, and the amoeba boundary
// curve that carries the support edge.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spp/error.hpp"
#include "spp/pfaffian.hpp"

namespace spp {

struct LimitPoint {
    double tau = 0.0;  // scaled time
    double chi = 0.0;  // scaled part size, >= 0
};

// Relative coordinates of a finite window of points around (tau, chi).
// offsets[i] = (dt_i, dx_i); pairwise differences give the Delta t / Delta x
// of the limit kernel.  boundary_parts carries the fixed x_i >= 1 required
// by the chi = 0 Pfaffian case (and must be empty in the bulk).
struct WindowConfig {
    std::vector<std::pair<int, int>> offsets;
    std::vector<int> boundary_parts;
};

// Density parameter: theta = arccos of
//   (e^|tau| + 1)(e^chi - 1) / (2 e^{|tau|/2} (e^chi + 1)),
// clamped to 0 once the argument reaches 1 (outside the support).
//
// Evaluated as 2 asin(sqrt((1 - arg)/2)) with
//   1 - arg = [(s+1)^2 - e^chi (s-1)^2] / [2 s (e^chi + 1)],  s = e^{|tau|/2},
// which keeps full precision when arg is within roundoff of 1 (deep in the
// support tail the naive acos carries ~1e-8 absolute noise, enough to stall
// the limit-shape quadrature).
inline double theta(const LimitPoint& p) {
    if (p.chi < 0.0) throw std::invalid_argument("theta: chi must be >= 0");
    if (p.chi == 0.0) return M_PI / 2.0;  // arg = 0 identically on the boundary
    double s = std::exp(0.5 * std::fabs(p.tau));
    double ec = std::exp(p.chi);
    double num = (s + 1.0) * (s + 1.0) - ec * (s - 1.0) * (s - 1.0);
    if (num <= 0.0) return 0.0;
    double one_minus_arg = num / (2.0 * s * (ec + 1.0));
    return 2.0 * std::asin(std::sqrt(0.5 * one_minus_arg));
}

inline double limiting_density(const LimitPoint& p) { return theta(p) / M_PI; }

namespace detail {

inline std::complex<double> cpow_int(std::complex<double> base, int e) {
    bool inv = e < 0;
    unsigned long long k = inv ? -static_cast<long long>(e) : static_cast<long long>(e);
    std::complex<double> acc(1.0, 0.0);
    while (k) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1ULL;
    }
    return inv ? 1.0 / acc : acc;
}

// Gauss-Kronrod 7-15 panel rule; the embedded Gauss value feeds the panel
// error estimate.
template <typename F>
void gk15(F&& f, double a, double b, std::complex<double>& value, double& err) {
    static const double xk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                 0.741531185599394, 0.586087235467691, 0.405845151377397,
                                 0.207784955007898, 0.0};
    static const double wk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
    static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    std::complex<double> k(0.0, 0.0), g(0.0, 0.0);
    for (int i = 0; i < 8; ++i) {
        std::complex<double> fs = f(c + h * xk[i]);
        if (i < 7) fs += f(c - h * xk[i]);
        k += wk[i] * fs;
        if (i % 2 == 1) g += wg[i / 2] * fs;
    }
    value = k * h;
    err = std::abs((k - g) * h);
}

// Composite GK15 with panel doubling until two successive refinements agree
// below tol; this is the convergence contract all quadrature here obeys.
template <typename F>
std::complex<double> integrate(F&& f, double a, double b, double tol = 1e-11) {
    if (a == b) return {0.0, 0.0};
    std::complex<double> prev(0.0, 0.0);
    for (int panels = 8; panels <= (1 << 13); panels *= 2) {
        std::complex<double> total(0.0, 0.0);
        double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i) {
            std::complex<double> v;
            double e;
            gk15(f, a + i * h, a + (i + 1) * h, v, e);
            total += v;
        }
        if (panels > 8 && std::abs(total - prev) < tol) return total;
        prev = total;
    }
    throw quadrature_not_converged("integrate: refinement stalled on [" + std::to_string(a) +
                                   ", " + std::to_string(b) + "]");
}

// (1/2pi i) * integral over the arc gamma^{+/-}_{R, th} of
// ((1-z)/(1+z))^dt z^{-(m+1)} dz; the + arc (dt >= 0) runs counterclockwise
// through angle 0, the - arc (dt < 0) clockwise, i.e. minus the
// counterclockwise arc through angle pi.
inline std::complex<double> arc_integral(int dt, int m, double R, double th, double tol = 1e-11) {
    auto g = [&](double phi) {
        std::complex<double> z = std::polar(R, phi);
        return cpow_int((1.0 - z) / (1.0 + z), dt) * cpow_int(z, -m - 1) * z;
    };
    std::complex<double> I;
    if (dt >= 0)
        I = integrate(g, -th, th, tol);
    else
        I = -integrate(g, th, 2.0 * M_PI - th, tol);
    return I / (2.0 * M_PI);
}

inline double determinant_lu(std::vector<double> m, int n) {
    auto e = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * n + j]; };
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(e(i, k)) > std::fabs(e(p, k))) p = i;
        if (e(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(e(p, j), e(k, j));
            det = -det;
        }
        det *= e(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = e(i, k) / e(k, k);
            for (int j = k; j < n; ++j) e(i, j) -= f * e(k, j);
        }
    }
    return det;
}

constexpr double kBulkChiFloor = 1e-9;

}  // namespace detail

// Bulk limit kernel entry K(Delta t, Delta x) at (tau, chi), chi > 0.
// The imaginary part of the quadrature (zero for the symmetric arcs up to
// roundoff) can be inspected through imag_residual.
inline double bulk_kernel_entry(int dt, int dx, const LimitPoint& p,
                                double* imag_residual = nullptr) {
    if (!(p.chi >= detail::kBulkChiFloor))
        throw std::invalid_argument("bulk_kernel_entry: requires chi >= 1e-9 (boundary case is separate)");
    double th = theta(p);
    double R = std::exp(-std::fabs(p.tau) / 2.0);
    if (th == 0.0 && dt >= 0) {
        if (imag_residual) *imag_residual = 0.0;
        return 0.0;  // empty arc
    }
    std::complex<double> I = detail::arc_integral(dt, dx, R, th);
    if (imag_residual) *imag_residual = std::fabs(I.imag());
    return I.real();
}

// Boundary (chi = 0) Pfaffian matrix of the limit theorem: theta = pi/2,
// fixed parts x_i, time offsets dt_i.  Blocks (1-based, i < j, n points):
//   j <= n:      (-1)^{x_j}   * C(dt_i - dt_j,   x_i + x_j)
//   i <= n < j:                 C(dt_i - dt_j',  x_i - x_j')
//   n < i:       (-1)^{x_i'}  * C(dt_i' - dt_j', -(x_i' + x_j'))
// with C(dt, m) the arc integral above and primes the reflection 2n-i+1.
inline SkewSymmetricMatrix boundary_matrix(const WindowConfig& window, const LimitPoint& p) {
    if (std::fabs(p.chi) > 1e-12)
        throw std::invalid_argument("boundary_matrix: requires chi = 0");
    const int n = static_cast<int>(window.offsets.size());
    if (n == 0 || window.boundary_parts.size() != window.offsets.size())
        throw std::invalid_argument(
            "boundary_matrix: needs one boundary part per offset (nonempty)");
    for (int x : window.boundary_parts)
        if (x < 1) throw std::invalid_argument("boundary_matrix: parts must be >= 1");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (window.offsets[i].first == window.offsets[j].first &&
                window.boundary_parts[i] == window.boundary_parts[j])
                throw std::invalid_argument("boundary_matrix: points must be distinct");

    double R = std::exp(-std::fabs(p.tau) / 2.0);
    const double th = M_PI / 2.0;
    auto dt = [&](int i) { return window.offsets[static_cast<std::size_t>(i)].first; };
    auto xs = [&](int i) { return window.boundary_parts[static_cast<std::size_t>(i)]; };
    auto C = [&](int d, int m) { return detail::arc_integral(d, m, R, th).real(); };
    auto sgn = [](int x) { return x % 2 == 0 ? 1.0 : -1.0; };

    SkewSymmetricMatrix M(2 * n);
    for (int i = 1; i <= 2 * n; ++i) {
        for (int j = i + 1; j <= 2 * n; ++j) {
            double v;
            if (j <= n) {
                v = sgn(xs(j - 1)) * C(dt(i - 1) - dt(j - 1), xs(i - 1) + xs(j - 1));
            } else if (i <= n) {
                int jp = 2 * n - j;  // 0-based reflected index
                v = C(dt(i - 1) - dt(jp), xs(i - 1) - xs(jp));
            } else {
                int ip = 2 * n - i, jp = 2 * n - j;
                v = sgn(xs(ip)) * C(dt(ip) - dt(jp), -(xs(ip) + xs(jp)));
            }
            M.set(i - 1, j - 1, v);
        }
    }
    return M;
}

// Limit correlation of a finite window: determinant in the bulk, Pfaffian on
// the boundary.  Windows mixing the two regimes are rejected.
inline double limit_correlation(const WindowConfig& window, const LimitPoint& p) {
    const int n = static_cast<int>(window.offsets.size());
    if (n == 0) throw std::invalid_argument("limit_correlation: empty window");
    if (p.chi >= detail::kBulkChiFloor) {
        if (!window.boundary_parts.empty())
            throw std::invalid_argument(
                "limit_correlation: boundary parts require chi = 0 (mixed window rejected)");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (window.offsets[static_cast<std::size_t>(i)] ==
                    window.offsets[static_cast<std::size_t>(j)])
                    throw std::invalid_argument("limit_correlation: points must be distinct");
        std::vector<double> K(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto [ti, xi] = window.offsets[static_cast<std::size_t>(i)];
                auto [tj, xj] = window.offsets[static_cast<std::size_t>(j)];
                K[static_cast<std::size_t>(i) * n + j] = bulk_kernel_entry(ti - tj, xi - xj, p);
            }
        return detail::determinant_lu(std::move(K), n);
    }
    return pfaffian(boundary_matrix(window, p));
}

// Support edge: for tau != 0 the density vanishes beyond
//   chi*(tau) = 2 log((e^{|tau|/2} + 1) / (e^{|tau|/2} - 1));
// for tau = 0 the support is unbounded.
inline double support_boundary(double tau) {
    if (tau == 0.0) return std::numeric_limits<double>::infinity();
    double h = std::exp(std::fabs(tau) / 2.0);
    return 2.0 * std::log((h + 1.0) / (h - 1.0));
}

// The same edge found numerically: bisect theta > 0 against theta == 0.
// Kept deliberately independent of the closed form for cross-checks.
inline double support_boundary_numeric(double tau) {
    if (tau == 0.0) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = 1.0;
    while (theta({tau, hi}) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (theta({tau, mid}) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Point of the candidate limit surface over (tau, chi): the height integral
// x = int_chi^inf theta/pi ds, shifted by tau on the appropriate side.
struct ShapePoint {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline ShapePoint limit_shape_point(const LimitPoint& p) {
    if (p.chi < 0.0) throw std::invalid_argument("limit_shape_point: chi must be >= 0");
    double I;
    if (p.tau != 0.0) {
        double edge = support_boundary(p.tau);
        if (p.chi >= edge) {
            I = 0.0;
        } else {
            // substitute s = edge - u^2: the sqrt vanishing of theta at the
            // edge becomes linear, so the quadrature converges fast
            double umax = std::sqrt(edge - p.chi);
            auto g = [&](double u) {
                return std::complex<double>(2.0 * u * theta({p.tau, edge - u * u}) / M_PI, 0.0);
            };
            I = detail::integrate(g, 0.0, umax).real();
        }
    } else {
        // unbounded support; theta(0, s)/pi ~ (2/pi) e^{-s/2}, so cut at
        // chi + 56 and add the analytic tail (4/pi) e^{-cut/2}
        double cut = p.chi + 56.0;
        auto g = [&](double s) { return std::complex<double>(theta({0.0, s}) / M_PI, 0.0); };
        I = detail::integrate(g, p.chi, cut).real() + (4.0 / M_PI) * std::exp(-cut / 2.0);
    }
    if (p.tau >= 0.0) return {I, I + p.tau, p.chi};
    return {I - p.tau, I, p.chi};
}

// Upper boundary of the region whose doubled coordinates carry the limit
// shape: omega = log((e^{|xi|} + 1) / (e^{|xi|} - 1)), infinite at xi = 0.
inline double amoeba_boundary(double xi) {
    if (xi == 0.0) return std::numeric_limits<double>::infinity();
    double e = std::exp(std::fabs(xi));
    return std::log((e + 1.0) / (e - 1.0));
}

// --- CSV emitters -----------------------------------------------------------

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string density_csv(const std::vector<double>& taus, const std::vector<double>& chis) {
    std::string out = "tau,chi,density\n";
    for (double tau : taus)
        for (double chi : chis)
            out += detail::fmt17(tau) + "," + detail::fmt17(chi) + "," +
                   detail::fmt17(limiting_density({tau, chi})) + "\n";
    return out;
}

inline std::string shape_csv(const std::vector<double>& taus, const std::vector<double>& chis) {
    std::string out = "tau,chi,x,y,z\n";
    for (double tau : taus)
        for (double chi : chis) {
            ShapePoint s = limit_shape_point({tau, chi});
            out += detail::fmt17(tau) + "," + detail::fmt17(chi) + "," + detail::fmt17(s.x) +
                   "," + detail::fmt17(s.y) + "," + detail::fmt17(s.z) + "\n";
        }
    return out;
}

}  // namespace spp
