#pragma once

/*
 * The shifted Schur process: a measure on sequences of strict partitions
 *
 *   empty < lambda^1 > mu^1 < lambda^2 > mu^2 < ... < lambda^T > empty
 *
 * with weight
 *
 *   W(lambda, mu) = Q_{lambda^1}(rho_0^+)
 *                   prod_{i=1}^{T-1} P_{lambda^i/mu^i}(rho_i^-) Q_{lambda^{i+1}/mu^i}(rho_i^+)
 *                   P_{lambda^T}(rho_T^-)
 *
 * and partition function Z = prod_{0 <= i < j <= T} H(rho_i^+, rho_j^-).
 *
 * The q-measure on strict plane partitions, Prob(pi) proportional to
 * 2^{A(pi)} q^{|pi|}, arises from the chain that gives diagonal slot t the
 * single value q^{|t| + 1/2} (mq_chain below); under it the mu's are forced
 * and the process weight telescopes to 2^{A(pi)} q^{|pi|}.
 */

#include <cmath>
#include <string>
#include <vector>

#include "spp/error.hpp"
#include "spp/partitions.hpp"
#include "spp/rational.hpp"
#include "spp/schur.hpp"

namespace spp {

/*
 * The ordered specializations of a process with T levels: plus[m] is
 * rho_m^+ for m = 0..T-1 and minus[m] is rho_{m+1}^- for m = 0..T-1.
 */
template <class R>
struct SpecializationChain {
    std::vector<Specialization<R>> plus;
    std::vector<Specialization<R>> minus;

    int T() const {
        if (plus.size() != minus.size())
            throw std::invalid_argument("SpecializationChain: plus/minus size mismatch");
        return static_cast<int>(plus.size());
    }

    /* rho_m^+ for m in [0, T-1]. */
    const Specialization<R>& rho_plus(int m) const { return plus.at(static_cast<size_t>(m)); }

    /* rho_m^- for m in [1, T]. */
    const Specialization<R>& rho_minus(int m) const {
        return minus.at(static_cast<size_t>(m - 1));
    }
};

/* Parameters of the q-measure: Prob(pi) ~ 2^{A(pi)} q^{|pi|}. */
struct MqParams {
    double q = 0.5;
    int window = 8;  // half-width T of the truncated chain; diagonals |t| <= T
};

namespace detail {

/* Single-variable closed form when possible, tableau enumeration otherwise. */
template <class R>
R eval_pq(const StrictPartition& lambda, const StrictPartition& mu,
          const Specialization<R>& spec, PQ kind) {
    if (spec.size() == 1) {
        R q = skew_q_single(lambda, mu, spec.values[0]);
        if (kind == PQ::P) q *= pow2_signed<R>(mu.length() - lambda.length());
        return q;
    }
    return skew_pq(lambda, mu, spec, kind);
}

}  // namespace detail

/*
 * The weight W(lambda, mu) of a full configuration.  lambda_seq holds
 * lambda^1..lambda^T, mu_seq holds mu^1..mu^{T-1}.  Zero whenever the
 * sequences fail to interlace.
 */
template <class R>
R weight_w(const std::vector<StrictPartition>& lambda_seq,
           const std::vector<StrictPartition>& mu_seq, const SpecializationChain<R>& chain) {
    int T = chain.T();
    if (static_cast<int>(lambda_seq.size()) != T)
        throw std::invalid_argument("weight_w: lambda sequence must have T entries");
    if (static_cast<int>(mu_seq.size()) != T - 1 && T > 0)
        throw std::invalid_argument("weight_w: mu sequence must have T-1 entries");
    if (T == 0) return R(1);
    R w = detail::eval_pq(lambda_seq[0], StrictPartition{}, chain.rho_plus(0), PQ::Q);
    for (int i = 1; i <= T - 1; ++i) {
        if (w == R(0)) return w;
        w *= detail::eval_pq(lambda_seq[static_cast<size_t>(i - 1)],
                             mu_seq[static_cast<size_t>(i - 1)], chain.rho_minus(i), PQ::P);
        w *= detail::eval_pq(lambda_seq[static_cast<size_t>(i)],
                             mu_seq[static_cast<size_t>(i - 1)], chain.rho_plus(i), PQ::Q);
    }
    w *= detail::eval_pq(lambda_seq[static_cast<size_t>(T - 1)], StrictPartition{},
                         chain.rho_minus(T), PQ::P);
    return w;
}

/* Z = prod_{0 <= i < j <= T} H(rho_i^+, rho_j^-). */
template <class R>
R partition_function(const SpecializationChain<R>& chain) {
    int T = chain.T();
    R z(1);
    for (int i = 0; i <= T - 1; ++i)
        for (int j = i + 1; j <= T; ++j) z *= h_pairing(chain.rho_plus(i), chain.rho_minus(j));
    return z;
}

/*
 * Prob(lambda^1, ..., lambda^T) = sum over all mu of W(lambda, mu) / Z.
 * The mu sum factorizes over slots; each slot sum runs over strict mu
 * contained in both neighbours (with shortcuts when a specialization is
 * empty, which forces the mu of that slot).
 */
template <class R>
R prob(const std::vector<StrictPartition>& lambda_seq, const SpecializationChain<R>& chain) {
    int T = chain.T();
    if (static_cast<int>(lambda_seq.size()) != T)
        throw std::invalid_argument("prob: lambda sequence must have T entries");
    if (T == 0) return R(1);
    R num = detail::eval_pq(lambda_seq[0], StrictPartition{}, chain.rho_plus(0), PQ::Q);
    for (int i = 1; i <= T - 1 && num != R(0); ++i) {
        const StrictPartition& a = lambda_seq[static_cast<size_t>(i - 1)];
        const StrictPartition& b = lambda_seq[static_cast<size_t>(i)];
        const Specialization<R>& sm = chain.rho_minus(i);
        const Specialization<R>& sp = chain.rho_plus(i);
        R slot(0);
        if (sm.empty()) {
            slot = detail::eval_pq(b, a, sp, PQ::Q);  // mu^i forced to lambda^i
        } else if (sp.empty()) {
            slot = detail::eval_pq(a, b, sm, PQ::P);  // mu^i forced to lambda^{i+1}
        } else {
            int bound = static_cast<int>(std::min(a.weight(), b.weight()));
            enumerate_strict_partitions(bound, [&](const StrictPartition& mu) {
                if (!skew_strip_stats(a, mu).contains) return;
                if (!skew_strip_stats(b, mu).contains) return;
                slot += detail::eval_pq(a, mu, sm, PQ::P) * detail::eval_pq(b, mu, sp, PQ::Q);
            });
        }
        num *= slot;
    }
    if (num != R(0))
        num *= detail::eval_pq(lambda_seq[static_cast<size_t>(T - 1)], StrictPartition{},
                               chain.rho_minus(T), PQ::P);
    return num / partition_function(chain);
}

/*
 * The chain of the q-measure truncated to diagonals |t| <= window.  With
 * T' = 2*window + 1 slots, slot p (1-based) carries diagonal t = p - window - 1:
 * rho_p^+ = (q^{window - p + 1/2}) for p <= window, rho_p^- = (q^{p - window - 1/2})
 * for p >= window + 1, and every other specialization is empty.
 */
inline SpecializationChain<double> mq_chain(const MqParams& params) {
    if (!(params.q > 0.0 && params.q < 1.0))
        throw std::invalid_argument("mq_chain: q must lie in (0, 1)");
    if (params.window < 0) throw std::invalid_argument("mq_chain: window must be >= 0");
    int tprime = 2 * params.window + 1;
    SpecializationChain<double> chain;
    chain.plus.resize(static_cast<size_t>(tprime));
    chain.minus.resize(static_cast<size_t>(tprime));
    for (int p = 0; p <= params.window; ++p)
        chain.plus[static_cast<size_t>(p)] =
            Specialization<double>{std::pow(params.q, params.window - p + 0.5)};
    for (int p = params.window + 1; p <= tprime; ++p)
        chain.minus[static_cast<size_t>(p - 1)] =
            Specialization<double>{std::pow(params.q, p - params.window - 0.5)};
    return chain;
}

/* The q-measure weight of a single strict plane partition: 2^{A(pi)} q^{|pi|}. */
template <class R>
R mq_weight(const StrictPlanePartition& pi, const R& q) {
    return detail::pow_int(R(2), alternation(pi)) * detail::pow_int(q, pi.volume());
}

/* lambda^1..lambda^{2*window+1}: the diagonals of pi on the slots of mq_chain. */
inline std::vector<StrictPartition> mq_lambda_sequence(const StrictPlanePartition& pi,
                                                       int window) {
    if (pi.t_left() > window || pi.t_right() > window)
        throw std::invalid_argument("mq_lambda_sequence: window does not cover the diagram");
    std::vector<StrictPartition> seq;
    for (int t = -window; t <= window; ++t) seq.push_back(pi.diagonal(t));
    return seq;
}

/*
 * mu^1..mu^{2*window}: under the q-measure chain the mu's are forced to the
 * smaller neighbour; ascending slots take mu^p = lambda^p, descending ones
 * mu^p = lambda^{p+1}.
 */
inline std::vector<StrictPartition> mq_mu_sequence(const StrictPlanePartition& pi, int window) {
    auto lambda = mq_lambda_sequence(pi, window);
    std::vector<StrictPartition> mu;
    for (int p = 1; p <= 2 * window; ++p)
        mu.push_back(p <= window ? lambda[static_cast<size_t>(p - 1)]
                                 : lambda[static_cast<size_t>(p)]);
    return mu;
}

/*
 * Test hook: the W-product of pi under the q-measure chain, evaluated
 * symbolically as coeff * q^{half_exponent / 2}.  For every strict plane
 * partition this telescopes to coeff = 2^{A(pi)} and half_exponent = 2|pi|;
 * the unit tests assert exactly that against alternation() and volume().
 */
struct MqMonomial {
    rational coeff = 1;
    long long half_exponent = 0;
};

inline MqMonomial mq_weight_exponents(const StrictPlanePartition& pi, int window) {
    auto lambda = mq_lambda_sequence(pi, window);
    int tprime = 2 * window + 1;
    MqMonomial m;
    auto apply = [&](const StrictPartition& lam, const StrictPartition& mu, PQ kind,
                     long long spec_half_exp) {
        SkewStripStats st = skew_strip_stats(lam, mu);
        if (!st.contains || !st.horizontal_strip)
            throw std::logic_error("mq_weight_exponents: consecutive diagonals must interlace");
        m.coeff *= detail::pow_int(rational(2), st.a);
        if (kind == PQ::P) m.coeff *= detail::pow2_signed<rational>(mu.length() - lam.length());
        m.half_exponent += spec_half_exp * (lam.weight() - mu.weight());
    };
    // Q_{lambda^1}(rho_0^+), the interior slots, then P_{lambda^T'}(rho_T'^-).
    apply(lambda[0], StrictPartition{}, PQ::Q, 2LL * window + 1);
    for (int p = 1; p <= tprime - 1; ++p) {
        if (p <= window) {
            // rho_p^- empty: mu^p = lambda^p, factor Q_{lambda^{p+1}/lambda^p}(q^{window-p+1/2}).
            apply(lambda[static_cast<size_t>(p)], lambda[static_cast<size_t>(p - 1)], PQ::Q,
                  2LL * (window - p) + 1);
        } else {
            // rho_p^+ empty: mu^p = lambda^{p+1}, factor P_{lambda^p/lambda^{p+1}}(q^{p-window-1/2}).
            apply(lambda[static_cast<size_t>(p - 1)], lambda[static_cast<size_t>(p)], PQ::P,
                  2LL * (p - window) - 1);
        }
    }
    apply(lambda[static_cast<size_t>(tprime - 1)], StrictPartition{}, PQ::P, 2LL * window + 1);
    return m;
}

/* Cap on macmahon_coeffs, aligned with the enumeration cap. */
inline constexpr int kMacmahonCap = 24;

/*
 * Coefficients c_0..c_N of prod_{n>=1} ((1+q^n)/(1-q^n))^n, the generating
 * function sum_pi 2^{A(pi)} q^{|pi|} over all strict plane partitions.
 * Exact integer arithmetic.
 */
inline std::vector<long long> macmahon_coeffs(int N) {
    if (N < 0) throw std::invalid_argument("macmahon_coeffs: N must be >= 0");
    if (N > kMacmahonCap)
        throw cap_exceeded("macmahon_coeffs: N " + std::to_string(N) + " exceeds cap " +
                           std::to_string(kMacmahonCap));
    std::vector<long long> c(static_cast<size_t>(N) + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= N; ++n) {
        for (int rep = 0; rep < n; ++rep) {
            for (int k = N; k >= n; --k) c[static_cast<size_t>(k)] += c[static_cast<size_t>(k - n)];
            for (int k = n; k <= N; ++k) c[static_cast<size_t>(k)] += c[static_cast<size_t>(k - n)];
        }
    }
    return c;
}

}  // namespace spp
