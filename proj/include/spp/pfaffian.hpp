#pragma once

// Pfaffians of even-dimensional skew-symmetric matrices: a combinatorial
// reference (sum over perfect matchings, exponential cost) and a pivoted
// Parlett-Reid tridiagonalization (O(n^3)), which is what the correlation
// module uses in production.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spp/error.hpp"

namespace spp {

// Stores only the strict upper triangle; reads below the diagonal are
// negated on the fly, so skew-symmetry holds by construction.
class SkewSymmetricMatrix {
  public:
    explicit SkewSymmetricMatrix(int dim) : d_(dim) {
        if (dim < 0 || dim % 2 != 0)
            throw std::invalid_argument("SkewSymmetricMatrix: dimension must be even, got " +
                                        std::to_string(dim));
        upper_.assign(dim > 1 ? static_cast<std::size_t>(dim) * (dim - 1) / 2 : 0, 0.0);
    }

    int dimension() const { return d_; }

    double at(int i, int j) const {
        check_index(i);
        check_index(j);
        if (i == j) return 0.0;
        return i < j ? upper_[idx(i, j)] : -upper_[idx(j, i)];
    }

    void set(int i, int j, double v) {
        check_index(i);
        check_index(j);
        if (i == j) {
            if (v != 0.0)
                throw std::invalid_argument("SkewSymmetricMatrix: diagonal entries must be 0");
            return;
        }
        if (i < j)
            upper_[idx(i, j)] = v;
        else
            upper_[idx(j, i)] = -v;
    }

    std::vector<double> dense() const {
        std::vector<double> m(static_cast<std::size_t>(d_) * d_, 0.0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) m[static_cast<std::size_t>(i) * d_ + j] = at(i, j);
        return m;
    }

  private:
    void check_index(int i) const {
        if (i < 0 || i >= d_) throw std::out_of_range("SkewSymmetricMatrix: index out of range");
    }
    std::size_t idx(int i, int j) const {  // requires i < j
        return static_cast<std::size_t>(i) * (2 * d_ - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
    }

    int d_;
    std::vector<double> upper_;
};

namespace detail {

inline double pf_expand(const SkewSymmetricMatrix& A, std::vector<int>& active) {
    if (active.empty()) return 1.0;
    int i0 = active[0];
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t p = 1; p < active.size(); ++p, sign = -sign) {
        double a = A.at(i0, active[p]);
        if (a != 0.0) {
            std::vector<int> rest;
            rest.reserve(active.size() - 2);
            for (std::size_t r = 1; r < active.size(); ++r)
                if (r != p) rest.push_back(active[r]);
            acc += sign * a * pf_expand(A, rest);
        }
    }
    return acc;
}

}  // namespace detail

// Sum over perfect matchings via first-row expansion.  Exponential; guarded.
inline double pfaffian_reference(const SkewSymmetricMatrix& A) {
    if (A.dimension() > 12)
        throw too_large("pfaffian_reference: dimension " + std::to_string(A.dimension()) +
                        " exceeds the combinatorial limit 12");
    std::vector<int> active(static_cast<std::size_t>(A.dimension()));
    for (int i = 0; i < A.dimension(); ++i) active[static_cast<std::size_t>(i)] = i;
    return detail::pf_expand(A, active);
}

// Parlett-Reid: reduce to skew tridiagonal form T = L A L^T with Gauss
// transforms (which leave the Pfaffian unchanged) and symmetric pivoting on
// the largest column entry (each swap flips the sign).  The Pfaffian of the
// tridiagonal form is the product of its odd superdiagonal entries.
inline double pfaffian(const SkewSymmetricMatrix& A) {
    const int d = A.dimension();
    if (d == 0) return 1.0;
    std::vector<double> m = A.dense();
    auto e = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * d + j]; };

    double pf = 1.0;
    for (int k = 0; k + 1 < d; k += 2) {
        // Pivot: bring the largest |entry| of column k below row k into (k+1, k).
        int kp = k + 1;
        for (int i = k + 2; i < d; ++i)
            if (std::fabs(e(i, k)) > std::fabs(e(kp, k))) kp = i;
        if (kp != k + 1) {
            for (int j = 0; j < d; ++j) std::swap(e(k + 1, j), e(kp, j));
            for (int i = 0; i < d; ++i) std::swap(e(i, k + 1), e(i, kp));
            pf = -pf;
        }
        if (e(k + 1, k) == 0.0) return 0.0;  // column is fully zero: singular
        pf *= e(k, k + 1);
        if (k + 2 < d) {
            // Row/col i gets row/col k+1 subtracted with multiplier
            // tau_i = A[k,i] / A[k,k+1], zeroing column k below row k+1.
            double piv = e(k, k + 1);
            for (int i = k + 2; i < d; ++i) {
                double tau = e(k, i) / piv;
                if (tau == 0.0 && e(i, k + 1) == 0.0) continue;
                for (int j = k + 2; j < d; ++j)
                    e(i, j) -= tau * e(k + 1, j) + e(i, k + 1) * e(k, j) / piv;
            }
        }
    }
    return pf;
}

}  // namespace spp
