#pragma once

// Volume moments of the q^{|pi|} 2^{A(pi)} measure: mean and variance of
// |pi|, their r = -log q scaling combinations, and the CSV table the CLI
// serves.  Both series converge geometrically for q in (0,1).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spp {

struct VolumeMoments {
    double q = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double r = 0.0;  // -log q
};

namespace detail {

constexpr long kMomentTermCap = 1000000;  // never binds for q <= 0.99

inline void require_open_unit(double q, const char* who) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument(std::string(who) + ": q must lie in (0,1)");
}

}  // namespace detail

// E(|pi|) = sum_{m>=1} 2 m^2 q^m / (1 - q^{2m}), summed until the next term
// drops below 1e-16 of the partial sum.
inline double expected_volume(double q) {
    detail::require_open_unit(q, "expected_volume");
    double sum = 0.0, qm = 1.0;
    for (long m = 1; m <= detail::kMomentTermCap; ++m) {
        qm *= q;
        double term = 2.0 * static_cast<double>(m) * static_cast<double>(m) * qm /
                      (1.0 - qm * qm);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

// Var(|pi|) = q d/dq E(|pi|) = sum_{m>=1} 2 m^3 q^m (1 + q^{2m}) / (1 - q^{2m})^2.
// Term-wise application of q d/dq to the mean series:
//   q d/dq [q^m / (1 - q^{2m})]
//     = m q^m / (1 - q^{2m}) + 2m q^{3m} / (1 - q^{2m})^2
//     = m q^m (1 + q^{2m}) / (1 - q^{2m})^2.
inline double variance_volume(double q) {
    detail::require_open_unit(q, "variance_volume");
    double sum = 0.0, qm = 1.0;
    for (long m = 1; m <= detail::kMomentTermCap; ++m) {
        qm *= q;
        double m3 = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(m);
        double d = 1.0 - qm * qm;
        double term = 2.0 * m3 * qm * (1.0 + qm * qm) / (d * d);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

inline VolumeMoments volume_moments(double q) {
    return {q, expected_volume(q), variance_volume(q), -std::log(q)};
}

// CSV table over a list of r values: r, E, r^3 E, Var, r^4 Var.
inline std::string volume_csv(const std::vector<double>& rs) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string out = "r,E,r3E,Var,r4Var\n";
    for (double r : rs) {
        if (!(r > 0.0)) throw std::invalid_argument("volume_csv: r must be > 0");
        VolumeMoments m = volume_moments(std::exp(-r));
        out += fmt(r) + "," + fmt(m.mean) + "," + fmt(r * r * r * m.mean) + "," +
               fmt(m.variance) + "," + fmt(r * r * r * r * m.variance) + "\n";
    }
    return out;
}

}  // namespace spp
