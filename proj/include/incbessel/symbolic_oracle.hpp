#pragma once

// Exact replay of the G^(1) operator recursion for the incomplete Bessel
// integrand f(t) = exp(-x t - y/t) t^(-nu-1).
//
// With D_n(t) = (t^2 d/dt)^n (1/f) written as q_n(t) t^(nu+1) exp(x t + y/t),
// the operator acts on q as
//
//     q -> t^2 q' + (x t^2 + (nu+1) t - y) q.
//
// The numerator N_n(t) = (t^2 d/dt)^n (F/f) - F(t) D_n(t), with F the running
// integral of f, satisfies N_0 = 0 and
//
//     N_{k+1} = t^2 N_k' + t^2 q_k(t),
//
// since t^2 F' D_k = t^2 f D_k = t^2 q_k. Neither sequence carries an
// exponential factor, so both are Laurent polynomials in t with real
// coefficients and no approximation is involved.
//
// The recurrence sequences are recovered at t = 1 as Q_n = Q_n(1) / n!.

#include <cmath>
#include <vector>

#include "incbessel/laurent.hpp"
#include "incbessel/parameters.hpp"

namespace incbessel {

/// q_k -> q_{k+1}.
template <class Real>
[[nodiscard]] LaurentPolynomial<Real> operator_apply_denominator(const LaurentPolynomial<Real>& q,
                                                                 const BasicParameters<Real>& p) {
    const LaurentPolynomial<Real> factor(0, {-p.y, p.nu + Real(1), p.x});
    return q.derivative().shifted(2) + factor * q;
}

/// N_k -> N_{k+1}, given q_k at the same order.
template <class Real>
[[nodiscard]] LaurentPolynomial<Real> operator_apply_numerator(const LaurentPolynomial<Real>& ntilde,
                                                               const LaurentPolynomial<Real>& q_same_order) {
    return ntilde.derivative().shifted(2) + q_same_order.shifted(2);
}

template <class Real>
struct OraclePolynomials {
    LaurentPolynomial<Real> numerator;
    LaurentPolynomial<Real> denominator;
};

template <class Real>
struct OracleEntry {
    int n = 0;
    Real ntilde{};  ///< N_n(1) / n!
    Real dhat{};    ///< q_n(1) / n!
};

template <class Real>
struct OracleTrajectory {
    std::vector<OracleEntry<Real>> entries;
    /// Largest order whose polynomial coefficients are all finite.
    int largest_valid_n = 0;
    bool overflowed = false;
};

/// Polynomials (N_n, q_n) for n = 0..n_max, stopping early if a coefficient
/// overflows.
template <class Real>
[[nodiscard]] std::vector<OraclePolynomials<Real>> oracle_polynomials(const BasicParameters<Real>& params,
                                                                      int n_max) {
    validate(params);
    std::vector<OraclePolynomials<Real>> out;
    out.push_back({LaurentPolynomial<Real>{}, LaurentPolynomial<Real>::constant(Real(1))});
    for (int n = 0; n < n_max; ++n) {
        const auto& cur = out.back();
        OraclePolynomials<Real> next{operator_apply_numerator(cur.numerator, cur.denominator),
                                     operator_apply_denominator(cur.denominator, params)};
        if (!next.numerator.all_finite() || !next.denominator.all_finite()) break;
        out.push_back(std::move(next));
    }
    return out;
}

/// (n, N_n(1)/n!, q_n(1)/n!) for n = 0..n_max. Comparable term by term with
/// the engine's scaled sequences.
template <class Real>
[[nodiscard]] OracleTrajectory<Real> oracle_trajectory(const BasicParameters<Real>& params, int n_max) {
    using std::isfinite;
    const auto polys = oracle_polynomials(params, n_max);
    OracleTrajectory<Real> out;
    Real factorial(1);
    for (std::size_t n = 0; n < polys.size(); ++n) {
        if (n > 0) factorial *= static_cast<Real>(n);
        const Real nt = polys[n].numerator.evaluate(Real(1)) / factorial;
        const Real d = polys[n].denominator.evaluate(Real(1)) / factorial;
        if (!isfinite(nt) || !isfinite(d)) break;
        out.entries.push_back({static_cast<int>(n), nt, d});
    }
    out.largest_valid_n = out.entries.empty() ? -1 : out.entries.back().n;
    out.overflowed = out.largest_valid_n < n_max;
    return out;
}

}  // namespace incbessel
