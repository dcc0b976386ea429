#pragma once

// Evaluation of the incomplete Bessel function
//
//     K_nu(x, y) = int_1^inf exp(-x t - y/t) t^(-nu-1) dt
//
// as the limit of the G^(1) transformation approximants G_n = N_n / D_n.
// Both sequences obey the same four-term recurrence
//
//     (n+1) Q_{n+1} = (x + nu + 1 + 2n - y) Q_n + (2y - nu - n) Q_{n-1} - y Q_{n-2}
//
// and differ only in their starting values:
//
//     N_0 = 0, N_1 = 1
//     D_0 = e^(x+y), D_1 = (x + nu + 1 - y) e^(x+y)
//
// The denominator is carried scaled by e^(-x-y) (Dhat_0 = 1), and the factor is
// reattached only when an approximant is formed. The recurrence is linear, so
// the scaling is exact and the sequences stay in range for large x + y.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "incbessel/parameters.hpp"

namespace incbessel {

enum class SequenceKind { Numerator, Denominator };

/// Last three values of one scaled sequence, Q_n, Q_{n-1}, Q_{n-2}.
template <class Real>
struct RecurrenceWindow {
    int n = 0;
    Real q_n{};
    Real q_nm1{};
    Real q_nm2{};
    SequenceKind kind = SequenceKind::Denominator;

    /// Window at n = 1, the first order where both sequences are defined by
    /// their initial values. Orders below 0 are zero.
    static RecurrenceWindow start(SequenceKind kind, const BasicParameters<Real>& p) {
        if (kind == SequenceKind::Numerator)
            return {1, Real(1), Real(0), Real(0), kind};
        return {1, p.x + p.nu + Real(1) - p.y, Real(1), Real(0), kind};
    }

    void advance(Real next) {
        q_nm2 = q_nm1;
        q_nm1 = q_n;
        q_n = next;
        ++n;
    }

    void scale_by_pow2(int e) {
        using std::ldexp;
        q_n = ldexp(q_n, e);
        q_nm1 = ldexp(q_nm1, e);
        q_nm2 = ldexp(q_nm2, e);
    }

    [[nodiscard]] Real magnitude() const {
        using std::abs;
        return std::max({abs(q_n), abs(q_nm1), abs(q_nm2)});
    }
};

/// Arithmetic operations charged for one recurrence_step.
inline constexpr std::uint64_t kOpsPerStep = 13;
/// Arithmetic operations charged for forming one approximant.
inline constexpr std::uint64_t kOpsPerApproximant = 2;

/// Q_{n+1} from the window at order n. Returns nullopt when the result is not
/// finite; the caller should stop at order n.
template <class Real>
[[nodiscard]] std::optional<Real> recurrence_step(const RecurrenceWindow<Real>& w,
                                                  const BasicParameters<Real>& p) {
    using std::isfinite;
    const Real n = static_cast<Real>(w.n);
    const Real a = p.x + p.nu + Real(1) + Real(2) * n - p.y;
    const Real b = Real(2) * p.y - p.nu - n;
    const Real next = (a * w.q_n + b * w.q_nm1 - p.y * w.q_nm2) / (n + Real(1));
    if (!isfinite(next)) return std::nullopt;
    return next;
}

/// G_n = e^(-(x+y)) * N_n / Dhat_n, or nullopt when |Dhat_n| <= denom_floor.
template <class Real>
[[nodiscard]] std::optional<Real> approximant(Real ntilde_n, Real dhat_n, const BasicParameters<Real>& p,
                                              Real denom_floor = Real(1e-300)) {
    using std::abs;
    using std::exp;
    if (!(abs(dhat_n) > denom_floor)) return std::nullopt;
    return exp(-(p.x + p.y)) * (ntilde_n / dhat_n);
}

struct EngineConfig {
    int max_order = 200;
    double rel_tolerance = 1e-14;
    int agreement_count = 2;
    double denom_floor = 1e-300;

    void validate() const {
        if (max_order < 2) throw std::invalid_argument("max_order must be at least 2");
        if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0))
            throw std::invalid_argument("rel_tolerance must lie in (0, 1)");
        if (agreement_count < 1) throw std::invalid_argument("agreement_count must be at least 1");
        if (!(denom_floor >= 0.0)) throw std::invalid_argument("denom_floor must be non-negative");
    }
};

enum class Status { Converged, MaxOrderReached, DegenerateDenominator };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Converged: return "Converged";
        case Status::MaxOrderReached: return "MaxOrderReached";
        case Status::DegenerateDenominator: return "DegenerateDenominator";
    }
    return "?";
}

template <class Real>
struct BasicEvaluationResult {
    Real value{};         ///< approximation to K_nu(x, y)
    Real scaled_value{};  ///< e^(x+y) K_nu(x, y); finite even when value underflows
    int order = 0;
    Real est_rel_error{};  ///< last successive relative change
    Status status = Status::MaxOrderReached;
};

using EvaluationResult = BasicEvaluationResult<double>;

template <class Real>
struct TrajectoryEntry {
    int order = 0;
    Real approximant{};  ///< G_n; NaN when skipped
    Real numerator{};    ///< Ntilde_n times 2^(-scale_exponent)
    Real denominator{};  ///< Dhat_n times 2^(-scale_exponent)
    int scale_exponent = 0;
    bool skipped = false;
};

template <class Real>
struct Trajectory {
    std::vector<TrajectoryEntry<Real>> entries;
    std::uint64_t arithmetic_ops = 0;
    /// True when an arithmetic failure ended the run before n_max.
    bool truncated = false;
};

namespace detail {

// Drives the numerator and denominator windows in lock step, starting at n = 1.
template <class Real>
class Stepper {
public:
    static constexpr double kRenormThreshold = 1e250;

    explicit Stepper(const BasicParameters<Real>& p)
        : params_(p),
          num_(RecurrenceWindow<Real>::start(SequenceKind::Numerator, p)),
          den_(RecurrenceWindow<Real>::start(SequenceKind::Denominator, p)) {}

    [[nodiscard]] int order() const { return num_.n; }
    [[nodiscard]] Real numerator() const { return num_.q_n; }
    [[nodiscard]] Real denominator() const { return den_.q_n; }
    [[nodiscard]] int scale_exponent() const { return scale_exponent_; }
    [[nodiscard]] std::uint64_t ops() const { return ops_; }

    /// Moves to the next order. Returns false (and leaves the windows at the
    /// current order) if either sequence overflowed.
    bool advance() {
        const auto n_next = recurrence_step(num_, params_);
        const auto d_next = recurrence_step(den_, params_);
        ops_ += 2 * kOpsPerStep;
        if (!n_next || !d_next) return false;
        num_.advance(*n_next);
        den_.advance(*d_next);
        renormalize();
        return true;
    }

    /// N_n / Dhat_n, or nullopt on a degenerate denominator.
    [[nodiscard]] std::optional<Real> scaled_ratio(Real denom_floor) {
        using std::abs;
        ops_ += kOpsPerApproximant;
        if (!(abs(den_.q_n) > denom_floor)) return std::nullopt;
        return num_.q_n / den_.q_n;
    }

private:
    // Common power-of-two rescaling of both windows; the ratio is unchanged.
    void renormalize() {
        using std::ilogb;
        const Real m = std::max(num_.magnitude(), den_.magnitude());
        if (!(m > Real(kRenormThreshold))) return;
        const int e = -static_cast<int>(ilogb(m));
        num_.scale_by_pow2(e);
        den_.scale_by_pow2(e);
        scale_exponent_ -= e;
    }

    BasicParameters<Real> params_;
    RecurrenceWindow<Real> num_;
    RecurrenceWindow<Real> den_;
    int scale_exponent_ = 0;
    std::uint64_t ops_ = 0;
};

}  // namespace detail

/// Successive-agreement stopping rule shared by every approximant sequence.
/// Orders are fed in increasing order; skipped orders are simply not fed.
template <class Real>
class ConvergenceMonitor {
public:
    ConvergenceMonitor(Real rel_tolerance, int agreement_count)
        : tol_(rel_tolerance), needed_(agreement_count) {}

    /// `tracked` is the quantity whose successive changes are measured and is
    /// reported as scaled_value; `value` is what the result reports as value.
    /// Returns true once `agreement_count` consecutive changes are within
    /// tolerance.
    bool observe(int order, Real tracked, Real value) {
        using std::abs;
        BasicEvaluationResult<Real> current{value, tracked, order, std::numeric_limits<Real>::infinity(),
                                            Status::MaxOrderReached};
        if (prev_) {
            const Real change = abs(tracked - *prev_);
            const Real mag = abs(tracked);
            current.est_rel_error =
                mag > 0 ? change / mag : (change == 0 ? Real(0) : std::numeric_limits<Real>::infinity());
            agree_ = (change <= tol_ * mag) ? agree_ + 1 : 0;
        }
        prev_ = tracked;
        if (!has_best_ || !(best_.est_rel_error <= current.est_rel_error)) {
            best_ = current;
            has_best_ = true;
        }
        if (agree_ >= needed_) {
            current.status = Status::Converged;
            best_ = current;
            converged_ = true;
            return true;
        }
        return false;
    }

    /// Converged result, else the order with the smallest successive change,
    /// else DegenerateDenominator when nothing was observed.
    [[nodiscard]] BasicEvaluationResult<Real> result(int last_order) const {
        if (converged_) return best_;
        if (!has_best_) {
            const Real nan = std::numeric_limits<Real>::quiet_NaN();
            return {nan, nan, last_order, nan, Status::DegenerateDenominator};
        }
        auto r = best_;
        r.status = Status::MaxOrderReached;
        return r;
    }

private:
    Real tol_;
    int needed_;
    int agree_ = 0;
    std::optional<Real> prev_;
    BasicEvaluationResult<Real> best_{};
    bool has_best_ = false;
    bool converged_ = false;
};

/// Runs the recurrence until `agreement_count` consecutive non-skipped orders
/// agree to rel_tolerance, or until max_order. Order 0 (G_0 = 0) never takes
/// part in the convergence test. Changes are measured on e^(x+y) G_n so the
/// test still works where G_n itself underflows.
template <class Real>
[[nodiscard]] BasicEvaluationResult<Real> evaluate(const BasicParameters<Real>& params,
                                                   const EngineConfig& config = {}) {
    using std::exp;
    validate(params);
    config.validate();

    const Real floor = static_cast<Real>(config.denom_floor);
    const Real prefactor = exp(-(params.x + params.y));
    ConvergenceMonitor<Real> monitor(static_cast<Real>(config.rel_tolerance), config.agreement_count);
    detail::Stepper<Real> stepper(params);
    int last_order = 1;

    for (int n = 1; n <= config.max_order; ++n) {
        if (n > 1 && !stepper.advance()) break;
        last_order = n;
        const auto ratio = stepper.scaled_ratio(floor);
        if (!ratio) continue;
        if (monitor.observe(n, *ratio, prefactor * *ratio)) break;
    }
    return monitor.result(last_order);
}

/// All approximants for orders 0..n_max. O(n_max) work.
template <class Real>
[[nodiscard]] Trajectory<Real> evaluate_sequence(const BasicParameters<Real>& params, int n_max,
                                                 Real denom_floor = Real(1e-300)) {
    using std::exp;
    validate(params);
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");

    const Real prefactor = exp(-(params.x + params.y));
    const Real nan = std::numeric_limits<Real>::quiet_NaN();

    Trajectory<Real> out;
    out.entries.reserve(static_cast<std::size_t>(n_max) + 1);
    out.entries.push_back({0, Real(0), Real(0), Real(1), 0, false});
    if (n_max == 0) return out;

    detail::Stepper<Real> stepper(params);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1 && !stepper.advance()) {
            out.truncated = true;
            break;
        }
        const auto ratio = stepper.scaled_ratio(denom_floor);
        out.entries.push_back({n, ratio ? prefactor * *ratio : nan, stepper.numerator(), stepper.denominator(),
                               stepper.scale_exponent(), !ratio});
    }
    out.arithmetic_ops = stepper.ops();
    return out;
}

}  // namespace incbessel
