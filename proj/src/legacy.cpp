#include "incbessel/legacy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace incbessel::legacy {
namespace {

// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void charge(OpCounter* ops, std::uint64_t n) {
    if (ops) ops->ops += n;
}

// Binomial coefficients C(k, r) for 0 <= r <= k <= n in one triangular block.
class Pascal {
public:
    explicit Pascal(int n) : rows_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2, 1.0) {
        for (int k = 2; k <= n; ++k)
            for (int r = 1; r < k; ++r) at(k, r) = at(k - 1, r - 1) + at(k - 1, r);
    }
    [[nodiscard]] double operator()(int k, int r) const { return rows_[index(k, r)]; }

private:
    static std::size_t index(int k, int r) { return static_cast<std::size_t>(k * (k + 1) / 2 + r); }
    double& at(int k, int r) { return rows_[index(k, r)]; }
    std::vector<double> rows_;
};

// z^k for integer k >= 0, one call per term as the sums are written. pow
// gives 0^0 = 1, which keeps y = 0 free of negative powers.
double ipow(double z, int k) { return std::pow(z, static_cast<double>(k)); }

void check(int n, const Parameters& params) {
    validate(params);
    if (n < 0) throw std::invalid_argument("order must be non-negative");
}

// d_k = D_k / (x^(nu+1) e^(x+y)). Expanding the prefactor,
// (-x y)^k (-y)^(-r) = x^k (-y)^(k-r), so only non-negative powers of y appear
// and y = 0 keeps just the r = k term. O(k^2).
double stripped_denominator(int k, const Parameters& p, const CoefficientTable& a, const Pascal& binom,
                            OpCounter* ops) {
    CompensatedSum outer;
    for (int r = 0; r <= k; ++r) {
        CompensatedSum inner;
        for (int i = 0; i <= r; ++i) inner.add(a(r, i) * ipow(p.x, i));
        charge(ops, 3 * static_cast<std::uint64_t>(r + 1));
        outer.add(binom(k, r) * ipow(-p.y, k - r) * inner.value());
        charge(ops, 4);
    }
    charge(ops, 2);
    return ipow(p.x, k) * outer.value();
}

// N_n / x with the e^(-x-y) x^(-nu) prefactor cancelled against D_{n-r} and
// (x y)^r y^(-s) / y = x^r y^(r-1-s). Each D_{n-r} is evaluated in place, as
// the sum is written.
double reduced_numerator(int n, const Parameters& p, const CoefficientTable& a_den, const Pascal& binom,
                         OpCounter* ops) {
    if (n == 0) return 0.0;
    const auto a = build_coefficients(n - 1, CoefficientParams::for_numerator(p.nu), ops);

    CompensatedSum outer;
    for (int r = 1; r <= n; ++r) {
        CompensatedSum middle;
        for (int s = 0; s <= r - 1; ++s) {
            CompensatedSum inner;
            for (int i = 0; i <= s; ++i) inner.add(a(s, i) * ipow(-p.x, i));
            charge(ops, 3 * static_cast<std::uint64_t>(s + 1));
            middle.add(binom(r - 1, s) * ipow(p.y, r - 1 - s) * inner.value());
            charge(ops, 4);
        }
        const double d = stripped_denominator(n - r, p, a_den, binom, ops);
        outer.add(binom(n, r) * d * ipow(p.x, r) * middle.value());
        charge(ops, 5);
    }
    return outer.value();
}

}  // namespace

CoefficientTable build_coefficients(int kmax, const CoefficientParams& cp, OpCounter* ops) {
    if (kmax < 0) throw std::invalid_argument("kmax must be non-negative");
    const auto size = static_cast<std::size_t>(kmax + 1) * static_cast<std::size_t>(kmax + 2) / 2;
    std::vector<double> e(size, 0.0);
    auto at = [&e](int k, int i) -> double& { return e[static_cast<std::size_t>(k * (k + 1) / 2 + i)]; };

    const double base = static_cast<double>(cp.n) - cp.nu_f;
    for (int k = 0; k <= kmax; ++k) {
        const double shift = static_cast<double>((k - 1) * (cp.mu + 1));
        for (int i = 0; i <= k; ++i) {
            if (i == k)
                at(k, i) = 1.0;
            else if (i == 0)
                at(k, i) = (base - shift) * at(k - 1, 0);
            else
                at(k, i) = (base + static_cast<double>(i * (cp.m + 1)) - shift) * at(k - 1, i) + at(k - 1, i - 1);
        }
        charge(ops, 4 * static_cast<std::uint64_t>(k + 1));
    }
    return {kmax, std::move(e)};
}

double legacy_denominator(int n, const Parameters& params) {
    check(n, params);
    const auto a = build_coefficients(n, CoefficientParams::for_denominator(params.nu));
    const double d = stripped_denominator(n, params, a, Pascal(n), nullptr);
    return std::pow(params.x, params.nu + 1.0) * std::exp(params.x + params.y) * d;
}

double legacy_numerator(int n, const Parameters& params) {
    check(n, params);
    const auto a = build_coefficients(n, CoefficientParams::for_denominator(params.nu));
    return params.x * reduced_numerator(n, params, a, Pascal(n), nullptr);
}

double legacy_G(int n, const Parameters& params, OpCounter* ops) {
    check(n, params);
    const auto a = build_coefficients(n, CoefficientParams::for_denominator(params.nu), ops);
    const Pascal binom(n);
    const double d = stripped_denominator(n, params, a, binom, ops);
    const double num = reduced_numerator(n, params, a, binom, ops);
    // x^nu N_n / D_n = x^nu (x num) / (x^(nu+1) e^(x+y) d_n); the powers of x cancel.
    if (d == 0.0) return std::numeric_limits<double>::quiet_NaN();
    charge(ops, 3);
    return std::exp(-(params.x + params.y)) * (num / d);
}

std::vector<double> legacy_trajectory(const Parameters& params, int n_max, OpCounter* ops) {
    check(n_max, params);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(legacy_G(n, params, ops));
    return out;
}

EvaluationResult legacy_evaluate(const Parameters& params, const EngineConfig& config) {
    validate(params);
    config.validate();
    ConvergenceMonitor<double> monitor(config.rel_tolerance, config.agreement_count);
    for (int n = 1; n <= config.max_order; ++n) {
        const double g = legacy_G(n, params);
        if (!std::isfinite(g)) continue;
        if (monitor.observe(n, g, g)) break;
    }
    auto r = monitor.result(config.max_order);
    r.scaled_value = r.value * std::exp(params.x + params.y);
    return r;
}

}  // namespace incbessel::legacy
