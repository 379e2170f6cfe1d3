#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spp/process.hpp"

using namespace spp;
using ChainQ = SpecializationChain<rational>;
using ChainD = SpecializationChain<double>;
using SpecQ = Specialization<rational>;

static rational r(long long p, long long q) { return rational(p, q); }

TEST_CASE("one-slot chain: weight, partition function, probability", "[process]") {
    // T = 1: rho_0^+ = (1/2), rho_1^- = (1/3).
    ChainQ chain{{SpecQ{r(1, 2)}}, {SpecQ{r(1, 3)}}};
    CHECK(chain.T() == 1);

    // W((1)) = Q_{(1)}(1/2) P_{(1)}(1/3) = 2 * 1/2 * 1/3
    CHECK(weight_w({StrictPartition{1}}, {}, chain) == r(1, 3));
    // Z = H(1/2, 1/3) = (1 + 1/6) / (1 - 1/6)
    CHECK(partition_function(chain) == r(7, 5));
    // marginal of the single partition (1)
    CHECK(prob({StrictPartition{1}}, chain) == r(5, 21));
    CHECK(prob({StrictPartition{}}, chain) == r(5, 7));  // 1 / Z

    // weights die when the sequences fail to interlace
    ChainQ chain2{{SpecQ{r(1, 2)}, SpecQ{r(1, 3)}}, {SpecQ{r(1, 4)}, SpecQ{r(1, 5)}}};
    CHECK(weight_w({StrictPartition{1}, StrictPartition{3}}, {StrictPartition{2}}, chain2) ==
          0);
}

TEST_CASE("partition function pole", "[process]") {
    ChainQ chain{{SpecQ{r(2, 1)}}, {SpecQ{r(1, 2)}}};
    CHECK_THROWS_AS(partition_function(chain), pole_on_product);
}

TEST_CASE("mq_chain layout", "[process]") {
    auto chain = mq_chain({0.5, 2});
    REQUIRE(chain.T() == 5);
    auto single = [&](const Specialization<double>& s) {
        REQUIRE(s.size() == 1);
        return s.values[0];
    };
    CHECK(single(chain.rho_plus(0)) == Catch::Approx(std::pow(0.5, 2.5)));
    CHECK(single(chain.rho_plus(1)) == Catch::Approx(std::pow(0.5, 1.5)));
    CHECK(single(chain.rho_plus(2)) == Catch::Approx(std::pow(0.5, 0.5)));
    CHECK(chain.rho_plus(3).empty());
    CHECK(chain.rho_plus(4).empty());
    CHECK(chain.rho_minus(1).empty());
    CHECK(chain.rho_minus(2).empty());
    CHECK(single(chain.rho_minus(3)) == Catch::Approx(std::pow(0.5, 0.5)));
    CHECK(single(chain.rho_minus(4)) == Catch::Approx(std::pow(0.5, 1.5)));
    CHECK(single(chain.rho_minus(5)) == Catch::Approx(std::pow(0.5, 2.5)));

    CHECK_THROWS_AS(mq_chain({1.5, 2}), std::invalid_argument);
}

TEST_CASE("q-measure partition function against brute force", "[process]") {
    const double q = 0.1;
    const int window = 3;
    auto chain = mq_chain({q, window});
    double z = partition_function(chain);

    double sum = 0.0;
    enumerate_spp(16, [&](const StrictPlanePartition& pi) {
        if (pi.t_left() > window || pi.t_right() > window) return;
        sum += weight_w(mq_lambda_sequence(pi, window), mq_mu_sequence(pi, window), chain);
    });
    CHECK(std::fabs(sum - z) < 1e-10 * z);
}

TEST_CASE("q-measure weights telescope exactly", "[process]") {
    enumerate_spp(8, [&](const StrictPlanePartition& pi) {
        int window = std::max({pi.t_left(), pi.t_right(), 0}) + 1;
        MqMonomial m = mq_weight_exponents(pi, window);
        REQUIRE(m.coeff == detail::pow_int(rational(2), alternation(pi)));
        REQUIRE(m.half_exponent == 2 * pi.volume());
    });
    // mq_weight itself, exactly in rational arithmetic
    StrictPlanePartition pi = validate_spp({{3, 2}, {2, 1}});
    CHECK(mq_weight(pi, r(1, 7)) ==
          detail::pow_int(rational(2), alternation(pi)) * detail::pow_int(r(1, 7), 8));
}

TEST_CASE("partition function of the truncated chain in closed form", "[process]") {
    // Z(T) = prod_{g=1}^{2T+1} ((1+q^g)/(1-q^g))^{min(g, 2T+2-g)}
    for (int window : {1, 2, 4}) {
        const double q = 0.3;
        double z = partition_function(mq_chain({q, window}));
        double closed = 1.0;
        for (int g = 1; g <= 2 * window + 1; ++g) {
            double f = (1.0 + std::pow(q, g)) / (1.0 - std::pow(q, g));
            closed *= std::pow(f, std::min(g, 2 * window + 2 - g));
        }
        CHECK(z == Catch::Approx(closed).epsilon(1e-13));
    }
}

TEST_CASE("probabilities sum to one over small volumes", "[process]") {
    const double q = 0.1;
    const int window = 12;
    auto chain = mq_chain({q, window});
    double z = partition_function(chain);
    double total = 0.0;
    enumerate_spp(12, [&](const StrictPlanePartition& pi) {
        // Equivalent to prob() with the mu sums collapsed; prob() itself is
        // exercised on a subsample below to keep the runtime in check.
        double w = weight_w(mq_lambda_sequence(pi, window), mq_mu_sequence(pi, window), chain);
        total += w / z;
    });
    CHECK(total <= 1.0 + 1e-12);
    CHECK(total > 1.0 - 1e-6);

    double p_direct = prob(mq_lambda_sequence(validate_spp({{2, 1}, {1}}), window), chain);
    double p_weight =
        mq_weight(validate_spp({{2, 1}, {1}}), q) / z;
    CHECK(p_direct == Catch::Approx(p_weight).epsilon(1e-12));
    CHECK(p_direct >= 0.0);
    CHECK(p_direct <= 1.0);
}

TEST_CASE("macmahon coefficients", "[process]") {
    // frozen from two independent computations of the product series
    const std::vector<long long> expected = {
        1,      2,      6,      16,     38,      88,      196,     420,     878,
        1794,   3584,   7032,   13572,  25792,   48352,   89512,   163774,  296444,
        531234, 943072, 1659560, 2896376, 5015700, 8622108, 14718652};
    auto got = macmahon_coeffs(24);
    REQUIRE(got.size() == expected.size());
    for (size_t i = 0; i < got.size(); ++i) {
        INFO("coefficient " << i);
        CHECK(got[i] == expected[i]);
    }

    // against direct enumeration of 2^{A(pi)}
    std::vector<long long> sums(11, 0);
    enumerate_spp(10, [&](const StrictPlanePartition& pi) {
        sums[static_cast<size_t>(pi.volume())] += 1LL << alternation(pi);
    });
    auto coeffs = macmahon_coeffs(10);
    for (size_t n = 0; n <= 10; ++n) CHECK(coeffs[n] == sums[n]);

    CHECK_THROWS_AS(macmahon_coeffs(25), cap_exceeded);
    CHECK_THROWS_AS(macmahon_coeffs(-1), std::invalid_argument);
}
