#pragma once

// Ground-truth values of K_nu(x, y) = int_1^inf exp(-x t - y/t) t^(-nu-1) dt by
// globally adaptive Gauss-Kronrod (7/15) quadrature on a mapped finite range.
//
// The integrand is evaluated as exp(phi(t) - phi_max), where
// phi(t) = -x t - y/t - (nu+1) ln t and phi_max is its maximum on the range, so
// the integral itself is formed in range and the result only underflows when
// K_nu does. phi is unimodal with its stationary point at the positive root of
// x t^2 + (nu+1) t - y.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

#include "incbessel/parameters.hpp"

namespace incbessel {

struct QuadratureConfig {
    double rel_target = 1e-15;
    /// Maximum bisection depth of any subinterval.
    int max_refinements = 20;

    void validate() const {
        if (!(rel_target > 0.0 && rel_target < 1.0)) throw std::invalid_argument("rel_target must lie in (0, 1)");
        if (max_refinements < 0) throw std::invalid_argument("max_refinements must be non-negative");
    }
};

/// Change of variables used to bring [1, T] onto a finite integration range.
enum class TailMap {
    Rational,     ///< t = 1 / (1 - u) = 1 + u / (1 - u)
    Exponential,  ///< t = 1 + e^s
};

template <class Real>
struct QuadratureResult {
    Real value{};         ///< the integral
    Real scaled_value{};  ///< value * e^(x+y)
    Real rel_error{};     ///< estimated relative error (quadrature plus truncation)
    bool converged = false;
    int evaluations = 0;
    int intervals = 0;
};

namespace detail {

template <class Real>
struct KronrodRule {
    // 15-point Kronrod abscissae on [-1, 1] (non-negative half); odd indices
    // are the 7-point Gauss abscissae.
    static constexpr Real xgk[8] = {
        0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
        0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
        0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
        0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
    static constexpr Real wgk[8] = {
        0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
        0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
        0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
        0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
    static constexpr Real wg[4] = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                                   0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

template <class Real>
struct Segment {
    Real a{}, b{}, value{}, error{};
    int depth = 0;
    friend bool operator<(const Segment& l, const Segment& r) { return l.error < r.error; }
};

template <class Real, class F>
Segment<Real> kronrod_segment(const F& f, Real a, Real b, int depth) {
    using std::abs;
    using std::min;
    using std::pow;
    using R = KronrodRule<Real>;
    const Real center = (a + b) / 2;
    const Real half = (b - a) / 2;

    const Real fc = f(center);
    Real k15 = fc * R::wgk[7];
    Real g7 = fc * R::wg[3];
    Real resabs = abs(k15);
    Real fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const Real dx = half * R::xgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        k15 += R::wgk[j] * (fv1[j] + fv2[j]);
        resabs += R::wgk[j] * (abs(fv1[j]) + abs(fv2[j]));
        if (j % 2 == 1) g7 += R::wg[j / 2] * (fv1[j] + fv2[j]);
    }
    const Real mean = k15 / 2;
    Real resasc = R::wgk[7] * abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += R::wgk[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean));

    k15 *= half;
    resabs *= abs(half);
    resasc *= abs(half);
    Real err = abs(k15 - g7 * half);
    // The raw Kronrod-Gauss difference overstates the error of the 15-point
    // value by orders of magnitude once the segment is resolved.
    if (resasc != 0 && err != 0) err = resasc * min(Real(1), pow(Real(200) * err / resasc, Real(1.5)));
    err = std::max(err, Real(2) * std::numeric_limits<Real>::epsilon() * resabs);
    return {a, b, k15, err, depth};
}

template <class Real>
struct AdaptiveResult {
    Real value{};
    Real abs_error{};
    bool converged = false;
    int evaluations = 0;
    int intervals = 0;
};

/// Globally adaptive G7/K15 on [a, b]: bisect the worst segment until the
/// summed error estimate is below rel_target * |integral|.
template <class Real, class F>
AdaptiveResult<Real> adaptive_integrate(const F& f, Real a, Real b, Real rel_target, int max_depth,
                                        int max_segments = 4000) {
    using std::abs;
    // Max-heap on error for the open segments; frozen ones hit max_depth.
    std::vector<Segment<Real>> open{kronrod_segment<Real>(f, a, b, 0)};
    std::vector<Segment<Real>> frozen;
    int evaluations = 15;

    while (true) {
        // Kahan sum of all segment values.
        Real value(0), comp(0), error(0);
        for (const auto* list : {&open, &frozen}) {
            for (const auto& s : *list) {
                const Real y = s.value - comp;
                const Real t = value + y;
                comp = (t - value) - y;
                value = t;
                error += s.error;
            }
        }
        const int segments = static_cast<int>(open.size() + frozen.size());
        const bool done = error <= rel_target * abs(value);
        if (done || open.empty() || segments >= max_segments) return {value, error, done, evaluations, segments};

        std::pop_heap(open.begin(), open.end());
        const Segment<Real> worst = open.back();
        open.pop_back();
        if (worst.depth >= max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const Real mid = (worst.a + worst.b) / 2;
        open.push_back(kronrod_segment<Real>(f, worst.a, mid, worst.depth + 1));
        std::push_heap(open.begin(), open.end());
        open.push_back(kronrod_segment<Real>(f, mid, worst.b, worst.depth + 1));
        std::push_heap(open.begin(), open.end());
        evaluations += 30;
    }
}

// Shifted integrand as a function of the offset d = t - 1:
//   psi(d) = phi(1 + d) - phi(1) = -x d + y d / (1 + d) - (nu+1) log1p(d),
// which avoids the cancellation in phi(t) - phi(1) for large x or y.
template <class Real>
struct TailIntegrand {
    BasicParameters<Real> p;
    Real peak_offset{};  // d at the maximum of psi over d >= 0
    Real shift{};        // psi(peak_offset) >= 0

    explicit TailIntegrand(const BasicParameters<Real>& params) : p(params) {
        using std::sqrt;
        const Real b = p.nu + Real(1);
        const Real disc = sqrt(b * b + Real(4) * p.x * p.y);
        const Real root = b > 0 ? Real(2) * p.y / (b + disc) : (disc - b) / (Real(2) * p.x);
        peak_offset = std::max(Real(0), root - Real(1));
        shift = psi(peak_offset);
    }

    [[nodiscard]] Real psi(Real d) const {
        using std::log1p;
        return -p.x * d + p.y * d / (Real(1) + d) - (p.nu + Real(1)) * log1p(d);
    }

    Real operator()(Real d) const {
        using std::exp;
        return exp(psi(d) - shift);
    }

    /// log(value / integral of the shifted integrand) = phi(1) + shift.
    [[nodiscard]] Real log_scale() const { return -(p.x + p.y) + shift; }

    /// Log of an upper bound on the shifted integrand's mass beyond t = T,
    /// using e^(y d / (1 + d)) <= e^y and t^q e^(-x t) decreasing past q / x.
    [[nodiscard]] Real log_tail_bound(Real T) const {
        using std::log;
        const Real q = -(p.nu + Real(1));
        const Real rate = p.x - std::max(q, Real(0)) / T;
        if (!(rate > 0)) return std::numeric_limits<Real>::infinity();
        return p.x + p.y - shift + q * log(T) - p.x * T - log(rate);
    }
};

template <class Real>
AdaptiveResult<Real> integrate_segment(const TailIntegrand<Real>& g, Real T, TailMap map, Real rel_target,
                                       int max_depth) {
    using std::exp;
    using std::log;
    if (map == TailMap::Rational) {
        // t = 1 / (1 - u), d = u / (1 - u), dt = t^2 du.
        auto mapped = [&g](Real u) {
            const Real t = Real(1) / (Real(1) - u);
            return g(u * t) * t * t;
        };
        return adaptive_integrate<Real>(mapped, Real(0), Real(1) - Real(1) / T, rel_target, max_depth);
    }
    // d = e^s. Below s_lo the shifted integrand (<= 1) contributes at most
    // e^s_lo, pinned far below the working precision relative to T - 1.
    auto mapped = [&g](Real s) {
        const Real d = exp(s);
        return g(d) * d;
    };
    const Real s_hi = log(T - Real(1));
    const Real s_lo = s_hi + log(std::numeric_limits<Real>::epsilon() * rel_target) - Real(10);
    return adaptive_integrate<Real>(mapped, s_lo, s_hi, rel_target, max_depth);
}

}  // namespace detail

/// K_nu(x, y) by quadrature of the defining integral over [1, inf).
template <class Real>
[[nodiscard]] QuadratureResult<Real> tail_integral(const BasicParameters<Real>& params,
                                                   const QuadratureConfig& qc = {},
                                                   TailMap map = TailMap::Rational) {
    using std::abs;
    using std::exp;
    using std::log;
    validate(params);
    qc.validate();
    const Real rel = static_cast<Real>(qc.rel_target);
    const detail::TailIntegrand<Real> g(params);

    // Start a few e-folds past the peak, then widen until the discarded tail is
    // certified below rel/100 of the integral over [1, T0].
    const Real pw = std::max(-(params.nu + Real(1)), Real(0));
    Real T = std::max(Real(1) + g.peak_offset, Real(1) + Real(2) * pw / params.x) + Real(40) / params.x;
    const auto first = detail::integrate_segment(g, T, map, rel, qc.max_refinements);
    Real T_final = T;
    if (first.value > 0) {
        const Real floor_log = log(Real(0.01) * rel * first.value);
        for (int i = 0; i < 64 && g.log_tail_bound(T_final) > floor_log; ++i)
            T_final = Real(1) + Real(2) * (T_final - Real(1));
    }

    auto res = T_final == T ? first : detail::integrate_segment(g, T_final, map, rel, qc.max_refinements);
    const Real truncation = exp(g.log_tail_bound(T_final));
    QuadratureResult<Real> out;
    out.value = res.value * exp(g.log_scale());
    out.scaled_value = res.value * exp(g.shift);
    out.rel_error = (res.abs_error + truncation) / abs(res.value);
    out.converged = res.converged && out.rel_error <= rel;
    out.evaluations = res.evaluations + (T_final == T ? 0 : first.evaluations);
    out.intervals = res.intervals;
    return out;
}

/// int_0^inf exp(-x t - y/t) t^(-nu-1) dt, integrated in s = ln t where the
/// exponent -x e^s - y e^(-s) - nu s is concave. Requires y > 0.
template <class Real>
[[nodiscard]] QuadratureResult<Real> full_integral(const BasicParameters<Real>& params,
                                                   const QuadratureConfig& qc = {}) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;
    validate(params);
    qc.validate();
    if (!(params.y > 0)) throw DomainError("full_integral requires y > 0");
    const Real rel = static_cast<Real>(qc.rel_target);
    const Real x = params.x, y = params.y, nu = params.nu;

    // Stationary point t_p of x t^2 + nu t - y; with s = ln(t_p) + r the exponent
    // relative to its peak is -A expm1(r) - B expm1(-r) - nu r, A = x t_p, B = y / t_p.
    const Real disc = sqrt(nu * nu + Real(4) * x * y);
    const Real t_peak = nu > 0 ? Real(2) * y / (nu + disc) : (disc - nu) / (Real(2) * x);
    const Real A = x * t_peak, B = y / t_peak;
    auto expo = [=](Real r) {
        using std::expm1;
        return -A * expm1(r) - B * expm1(-r) - nu * r;
    };
    auto slope = [=](Real r) { return -A * exp(r) + B * exp(-r) - nu; };
    auto f = [&](Real r) { return exp(expo(r)); };
    const Real log_scale = -(A + B) - nu * log(t_peak);

    // The exponent is concave, so the mass beyond r is at most
    // e^expo(r) / |expo'(r)|. Walk out from the peak until that is negligible.
    const Real budget = log(Real(1e-3) * rel);
    auto walk = [&](Real dir) {
        Real step(1), r = dir;
        while (true) {
            const Real sl = abs(slope(r));
            if (sl > 0 && expo(r) - log(sl) < budget) return r;
            step *= Real(1.5);
            r += dir * step;
        }
    };
    const Real lo = walk(Real(-1));
    const Real hi = walk(Real(1));
    const auto res = detail::adaptive_integrate<Real>(f, lo, hi, rel, qc.max_refinements);
    const Real dropped = exp(expo(lo)) / abs(slope(lo)) + exp(expo(hi)) / abs(slope(hi));

    QuadratureResult<Real> out;
    out.value = res.value * exp(log_scale);
    out.scaled_value = res.value * exp(log_scale + x + y);
    out.rel_error = (res.abs_error + dropped) / abs(res.value);
    out.converged = res.converged && out.rel_error <= rel;
    out.evaluations = res.evaluations;
    out.intervals = res.intervals;
    return out;
}

}  // namespace incbessel
