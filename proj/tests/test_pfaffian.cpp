// Pfaffian layer: combinatorial reference vs pivoted elimination.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "spp/pfaffian.hpp"

using namespace spp;

namespace {

// Determinant by LU with partial pivoting, for the Pf^2 = det check.
double determinant_reference(std::vector<double> m, int d) {
    auto e = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * d + j]; };
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int p = k;
        for (int i = k + 1; i < d; ++i)
            if (std::fabs(e(i, k)) > std::fabs(e(p, k))) p = i;
        if (e(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < d; ++j) std::swap(e(p, j), e(k, j));
            det = -det;
        }
        det *= e(k, k);
        for (int i = k + 1; i < d; ++i) {
            double f = e(i, k) / e(k, k);
            for (int j = k; j < d; ++j) e(i, j) -= f * e(k, j);
        }
    }
    return det;
}

SkewSymmetricMatrix random_skew(int d, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SkewSymmetricMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) a.set(i, j, u(rng));
    return a;
}

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("skew-symmetric storage", "[pfaffian]") {
    SkewSymmetricMatrix a(4);
    a.set(0, 1, 2.5);
    a.set(3, 2, 1.5);  // below-diagonal write lands negated above
    REQUIRE(a.at(1, 0) == -2.5);
    REQUIRE(a.at(2, 3) == -1.5);
    REQUIRE(a.at(3, 3) == 0.0);
    REQUIRE_THROWS_AS(a.set(1, 1, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(a.at(4, 0), std::out_of_range);
    REQUIRE_THROWS_AS(SkewSymmetricMatrix(3), std::invalid_argument);
    REQUIRE_THROWS_AS(SkewSymmetricMatrix(-2), std::invalid_argument);
}

TEST_CASE("reference Pfaffian closed forms", "[pfaffian]") {
    SECTION("2x2") {
        SkewSymmetricMatrix a(2);
        a.set(0, 1, 3.25);
        REQUIRE(pfaffian_reference(a) == 3.25);
        REQUIRE(pfaffian(a) == 3.25);
    }
    SECTION("4x4 three matchings") {
        SkewSymmetricMatrix a(4);
        double v[4][4] = {};
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                v[i][j] = u(rng);
                a.set(i, j, v[i][j]);
            }
        double expected = v[0][1] * v[2][3] - v[0][2] * v[1][3] + v[0][3] * v[1][2];
        REQUIRE_THAT(pfaffian_reference(a), Catch::Matchers::WithinRel(expected, 1e-14));
        REQUIRE_THAT(pfaffian(a), Catch::Matchers::WithinRel(expected, 1e-12));
    }
    SECTION("two identical rows give 0") {
        // Rows 0 and 1 identical (and a_{01} = 0): the matrix is singular.
        SkewSymmetricMatrix a(6);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int j = 2; j < 6; ++j) {
            double x = u(rng);
            a.set(0, j, x);
            a.set(1, j, x);
        }
        for (int i = 2; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) a.set(i, j, u(rng));
        REQUIRE_THAT(pfaffian_reference(a), Catch::Matchers::WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(pfaffian(a), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("size guard") {
        REQUIRE_THROWS_AS(pfaffian_reference(SkewSymmetricMatrix(14)), too_large);
    }
}

TEST_CASE("identity-paired block diagonal has Pfaffian 1", "[pfaffian]") {
    for (int n : {1, 3, 5}) {
        SkewSymmetricMatrix a(2 * n);
        for (int b = 0; b < n; ++b) a.set(2 * b, 2 * b + 1, 1.0);
        REQUIRE_THAT(pfaffian(a), Catch::Matchers::WithinRel(1.0, 1e-13));
    }
}

TEST_CASE("pivoted Pfaffian matches the combinatorial reference", "[pfaffian]") {
    std::mt19937 rng(2026);
    for (int d : {2, 4, 6, 8, 10, 12}) {
        for (int rep = 0; rep < 4; ++rep) {
            SkewSymmetricMatrix a = random_skew(d, rng);
            double ref = pfaffian_reference(a);
            REQUIRE_THAT(pfaffian(a), Catch::Matchers::WithinRel(ref, 1e-12));
        }
    }
}

TEST_CASE("graded magnitudes stay accurate under pivoting", "[pfaffian]") {
    // Entries spanning ~12 orders of magnitude, the shape kernel matrices
    // take at small q.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    SkewSymmetricMatrix a(10);
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) a.set(i, j, u(rng) * std::pow(10.0, -1.5 * (j - i)));
    double ref = pfaffian_reference(a);
    REQUIRE(ref != 0.0);
    REQUIRE_THAT(pfaffian(a), Catch::Matchers::WithinRel(ref, 1e-11));
}

TEST_CASE("Pf squared equals det", "[pfaffian]") {
    std::mt19937 rng(99);
    for (int d = 2; d <= 16; d += 2) {
        for (int rep = 0; rep < 3; ++rep) {
            SkewSymmetricMatrix a = random_skew(d, rng);
            double pf = pfaffian(a);
            double det = determinant_reference(a.dense(), d);
            REQUIRE_THAT(pf * pf, Catch::Matchers::WithinRel(det, 1e-10));
        }
    }
}

TEST_CASE("simultaneous permutation scales by the permutation sign", "[pfaffian]") {
    std::mt19937 rng(123);
    const int d = 8;
    SkewSymmetricMatrix a = random_skew(d, rng);
    double base = pfaffian_reference(a);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    for (int rep = 0; rep < 6; ++rep) {
        std::shuffle(perm.begin(), perm.end(), rng);
        SkewSymmetricMatrix b(d);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) b.set(i, j, a.at(perm[i], perm[j]));
        double expected = permutation_sign(perm) * base;
        REQUIRE_THAT(pfaffian_reference(b), Catch::Matchers::WithinRel(expected, 1e-12));
        REQUIRE_THAT(pfaffian(b), Catch::Matchers::WithinRel(expected, 1e-11));
    }
}

TEST_CASE("first-row expansion identity", "[pfaffian]") {
    // Pf(A) = sum_{i=2}^{2n} (-1)^i a_{1i} Pf(A with rows/cols 1, i removed),
    // 1-based; the sign convention is pinned by the 2x2 case Pf = a_{12}.
    std::mt19937 rng(31);
    for (int d : {4, 6, 8}) {
        SkewSymmetricMatrix a = random_skew(d, rng);
        double total = 0.0;
        for (int i = 1; i < d; ++i) {  // 0-based column i = 1-based i+1
            SkewSymmetricMatrix minor(d - 2);
            std::vector<int> keep;
            for (int r = 1; r < d; ++r)
                if (r != i) keep.push_back(r);
            for (std::size_t r = 0; r < keep.size(); ++r)
                for (std::size_t c = r + 1; c < keep.size(); ++c)
                    minor.set(static_cast<int>(r), static_cast<int>(c), a.at(keep[r], keep[c]));
            double sign = (i + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^i in 1-based terms
            total += sign * a.at(0, i) * pfaffian_reference(minor);
        }
        REQUIRE_THAT(total, Catch::Matchers::WithinRel(pfaffian_reference(a), 1e-12));
    }
}
