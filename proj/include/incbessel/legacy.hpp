#pragma once

// The sum-based G^(1) algorithm for K_nu(x, y): the numerator and denominator
// of G_n = x^nu N_n / D_n are assembled from nested binomial sums over the
// triangular coefficient family A_k^i(mu, nu, m, n). One order costs O(n^3),
// a trajectory O(n^4). Kept as an independent check on the recurrence.

#include <cstdint>
#include <vector>

#include "incbessel/engine.hpp"
#include "incbessel/parameters.hpp"

namespace incbessel::legacy {

/// Formula-level parameters (mu, nu, m, n) of the A_k^i family. Unrelated to
/// the Bessel order except through the two instantiations below.
struct CoefficientParams {
    int mu = -2;
    double nu_f = 0.0;
    int m = 0;
    int n = 0;

    static CoefficientParams for_denominator(double bessel_nu) { return {-2, -bessel_nu - 1.0, 0, 0}; }
    static CoefficientParams for_numerator(double bessel_nu) { return {-2, bessel_nu - 1.0, 0, 0}; }
};

/// A_k^i for 0 <= i <= k <= kmax, stored row by row.
class CoefficientTable {
public:
    CoefficientTable() = default;
    CoefficientTable(int kmax, std::vector<double> entries) : kmax_(kmax), entries_(std::move(entries)) {}

    [[nodiscard]] int kmax() const { return kmax_; }
    [[nodiscard]] double operator()(int k, int i) const {
        return entries_[static_cast<std::size_t>(k * (k + 1) / 2 + i)];
    }

private:
    int kmax_ = -1;
    std::vector<double> entries_;
};

/// Running count of floating-point operations, for the cost-scaling checks.
struct OpCounter {
    std::uint64_t ops = 0;
};

[[nodiscard]] CoefficientTable build_coefficients(int kmax, const CoefficientParams& cp, OpCounter* ops = nullptr);

/// D_n in its original sum form, including the x^(nu+1) e^(x+y) prefactor.
[[nodiscard]] double legacy_denominator(int n, const Parameters& params);

/// N_n in its original sum form (its e^(-x-y) / x^nu prefactor cancels the one
/// carried by each D_{n-r}).
[[nodiscard]] double legacy_numerator(int n, const Parameters& params);

/// Approximant G_n = x^nu N_n / D_n. Returns NaN when D_n vanishes.
[[nodiscard]] double legacy_G(int n, const Parameters& params, OpCounter* ops = nullptr);

/// legacy_G for n = 0..n_max, each order computed from scratch.
[[nodiscard]] std::vector<double> legacy_trajectory(const Parameters& params, int n_max, OpCounter* ops = nullptr);

/// legacy_G for n = 1..max_order under the same stopping rule as evaluate().
/// Orders with a vanishing or non-finite value are skipped. O(max_order^4).
[[nodiscard]] EvaluationResult legacy_evaluate(const Parameters& params, const EngineConfig& config);

}  // namespace incbessel::legacy
