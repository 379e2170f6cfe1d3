// Volume moments: series sums, oracle cross-checks, and the r -> 0 scaling
// constants.  The trend tests pin the limits these sums actually approach,
// (7/2) zeta(3) for r^3 E and (21/2) zeta(3) for r^4 Var, both from below.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "spp/process.hpp"
#include "spp/stats.hpp"

namespace {

// (7/2) zeta(3) and (21/2) zeta(3), frozen from 30-digit arithmetic
constexpr double kMeanScale = 4.20719916105858;
constexpr double kVarScale = 12.62159748317574;

}  // namespace

TEST_CASE("expected volume: series anchors", "[stats]") {
    // leading order 2q as q -> 0
    REQUIRE(spp::expected_volume(1e-8) == Catch::Approx(2e-8).epsilon(1e-6));

    // frozen from 30-digit evaluation of the series
    REQUIRE(spp::expected_volume(0.1) == Catch::Approx(0.30381148559857781).epsilon(1e-13));
    REQUIRE(spp::expected_volume(0.5) == Catch::Approx(12.512081974140041).epsilon(1e-13));
    REQUIRE(spp::expected_volume(0.9) == Catch::Approx(3596.3660464921306).epsilon(1e-12));

    REQUIRE_THROWS_AS(spp::expected_volume(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(spp::expected_volume(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(spp::expected_volume(-0.2), std::invalid_argument);
}

TEST_CASE("expected volume matches the enumeration oracle", "[stats]") {
    // truncated mean sum_{m<=20} m c_m q^m / sum_{m<=20} c_m q^m with
    // c_m = sum_{|pi|=m} 2^{A(pi)}; at q = 0.1 the |pi| > 20 tail is far
    // below 1e-12
    std::vector<long long> c = spp::macmahon_coeffs(20);
    for (double q : {0.1, 0.05}) {
        double num = 0.0, den = 0.0, qm = 1.0;
        for (std::size_t m = 0; m < c.size(); ++m) {
            den += static_cast<double>(c[m]) * qm;
            num += static_cast<double>(m) * static_cast<double>(c[m]) * qm;
            qm *= q;
        }
        REQUIRE(spp::expected_volume(q) == Catch::Approx(num / den).margin(1e-12));
    }
}

TEST_CASE("variance volume: series anchors and finite differences", "[stats]") {
    REQUIRE(spp::variance_volume(1e-8) == Catch::Approx(2e-8).epsilon(1e-6));
    REQUIRE(spp::variance_volume(0.1) == Catch::Approx(0.43596211718673247).epsilon(1e-13));
    REQUIRE(spp::variance_volume(0.5) == Catch::Approx(54.506046590300444).epsilon(1e-13));
    REQUIRE(spp::variance_volume(0.9) == Catch::Approx(102416.74054313455).epsilon(1e-12));

    // Var = -dE/dr: central finite difference in r = -log q with h = 1e-5
    for (double q : {0.1, 0.4, 0.7}) {
        double r = -std::log(q), h = 1e-5;
        double fd = (spp::expected_volume(std::exp(-(r - h))) -
                     spp::expected_volume(std::exp(-(r + h)))) /
                    (2.0 * h);
        REQUIRE(spp::variance_volume(q) == Catch::Approx(fd).epsilon(1e-8));
    }

    REQUIRE_THROWS_AS(spp::variance_volume(1.0), std::invalid_argument);
}

TEST_CASE("volume scaling constants", "[stats]") {
    // r^3 E increases toward (7/2) zeta(3) ~ 4.20720 as r -> 0, and r^4 Var
    // increases toward (21/2) zeta(3) ~ 12.62160; note both constants are
    // twice the 7/4 and 21/4 multiples sometimes quoted -- the doubled values
    // are what the series actually converge to (cross-checked in extended
    // precision), approached from below rather than above
    double prev_mean = 0.0, prev_var = 0.0;
    for (double r : {0.2, 0.1, 0.05, 0.02}) {
        spp::VolumeMoments m = spp::volume_moments(std::exp(-r));
        double r3e = r * r * r * m.mean;
        double r4v = r * r * r * r * m.variance;
        REQUIRE(r3e > prev_mean);
        REQUIRE(r4v > prev_var);
        REQUIRE(r3e < kMeanScale);
        REQUIRE(r4v < kVarScale);
        prev_mean = r3e;
        prev_var = r4v;
    }
    REQUIRE(prev_mean == Catch::Approx(kMeanScale).epsilon(1e-4));
    REQUIRE(prev_var == Catch::Approx(kVarScale).epsilon(1e-4));
}

TEST_CASE("volume moments struct and invariants", "[stats]") {
    for (double q : {0.05, 0.3, 0.8}) {
        spp::VolumeMoments m = spp::volume_moments(q);
        REQUIRE(m.q == q);
        REQUIRE(m.mean > 0.0);
        REQUIRE(m.variance > 0.0);
        REQUIRE(m.r == Catch::Approx(-std::log(q)).margin(1e-15));
        // variance exceeds mean here: the summands are m^3 >= m^2 weighted
        REQUIRE(m.variance > m.mean);
    }
}

TEST_CASE("volume CSV table", "[stats]") {
    std::string csv = spp::volume_csv({0.2, 0.1});
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "r,E,r3E,Var,r4Var");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ls(line);
        double r, e, r3e, v, r4v;
        char c;
        REQUIRE((ls >> r >> c >> e >> c >> r3e >> c >> v >> c >> r4v));
        REQUIRE(e == Catch::Approx(spp::expected_volume(std::exp(-r))).epsilon(1e-15));
        REQUIRE(r3e == Catch::Approx(r * r * r * e).epsilon(1e-15));
        REQUIRE(v == Catch::Approx(spp::variance_volume(std::exp(-r))).epsilon(1e-15));
        REQUIRE(r4v == Catch::Approx(r * r * r * r * v).epsilon(1e-15));
    }
    REQUIRE(rows == 2);
    REQUIRE_THROWS_AS(spp::volume_csv({-0.1}), std::invalid_argument);
}
