#include "incbessel/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "incbessel/engine.hpp"
#include "incbessel/legacy.hpp"
#include "incbessel/quadrature.hpp"
#include "incbessel/symbolic_oracle.hpp"

namespace incbessel {
namespace {

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<Parameters> grid() {
    std::vector<Parameters> g;
    for (double x : {1.0, 4.0, 10.0})
        for (double y : {0.0, 2.0, 5.0})
            for (double nu : {0.0, 1.0, 3.0}) g.push_back({x, y, nu});
    return g;
}

// Tracks the largest deviation and the point it came from.
struct Worst {
    double value = 0.0;
    Parameters where{};
    int n = -1;
    bool failed = false;  // non-finite deviation or a precondition broke

    void see(double d, const Parameters& p, int order = -1) {
        if (!(d <= value)) {
            if (!std::isfinite(d)) failed = true;
            value = d;
            where = p;
            n = order;
        }
    }

    SuiteResult verdict(std::string name, double tol) const {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max deviation %.3e (limit %.0e) at x=%g y=%g nu=%g", value, tol, where.x,
                      where.y, where.nu);
        std::string detail = buf;
        if (n >= 0) detail += " n=" + std::to_string(n);
        return {std::move(name), !failed && value <= tol, detail};
    }
};

SuiteResult witness_suite() {
    constexpr double tol = 1e-13;
    Worst w;
    for (const auto& p : grid()) {
        const auto t = oracle_trajectory(p, 21);
        if (t.entries.size() != 22) {
            w.see(std::numeric_limits<double>::infinity(), p);
            continue;
        }
        for (int seq = 0; seq < 2; ++seq) {
            auto q = [&](int n) {
                if (n < 0) return 0.0;
                const auto& e = t.entries[static_cast<std::size_t>(n)];
                return seq == 0 ? e.ntilde : e.dhat;
            };
            for (int n = seq == 0 ? 1 : 0; n <= 20; ++n) {
                const double a = p.x + p.nu + 1 + 2 * n - p.y, b = 2 * p.y - p.nu - n;
                const double lhs = (n + 1) * q(n + 1);
                const double t0 = a * q(n), t1 = b * q(n - 1), t2 = -p.y * q(n - 2);
                const double scale = std::max({std::abs(lhs), std::abs(t0), std::abs(t1), std::abs(t2)});
                const double resid = std::abs(lhs - (t0 + t1 + t2));
                w.see(scale == 0 ? resid : resid / scale, p, n);
            }
        }
    }
    return w.verdict("four-term recurrence witness", tol);
}

SuiteResult oracle_suite() {
    constexpr double tol = 1e-12;
    Worst w;
    for (const auto& p : grid()) {
        const auto o = oracle_trajectory(p, 20);
        const auto r = evaluate_sequence(p, 20);
        for (int n = 1; n <= 20; ++n) {
            const auto& oe = o.entries[static_cast<std::size_t>(n)];
            const auto& re = r.entries[static_cast<std::size_t>(n)];
            const double s = std::ldexp(1.0, re.scale_exponent);
            w.see(rel_diff(re.numerator * s, oe.ntilde), p, n);
            w.see(rel_diff(re.denominator * s, oe.dhat), p, n);
        }
    }
    return w.verdict("recurrence vs symbolic construction", tol);
}

SuiteResult legacy_suite() {
    constexpr double tol = 1e-8;
    Worst w;
    for (const auto& p : grid()) {
        const auto r = evaluate_sequence(p, 8);
        const auto l = legacy::legacy_trajectory(p, 8);
        for (int n = 1; n <= 8; ++n) {
            const auto& re = r.entries[static_cast<std::size_t>(n)];
            const double lg = l[static_cast<std::size_t>(n)];
            if (re.skipped || std::isnan(lg)) {
                if (re.skipped != std::isnan(lg)) w.see(std::numeric_limits<double>::infinity(), p, n);
                continue;
            }
            w.see(rel_diff(re.approximant, lg), p, n);
        }
    }
    return w.verdict("recurrence vs sum-based construction", tol);
}

SuiteResult expint_suite() {
    constexpr double tol = 1e-12;
    Worst w;
    for (double x : {1.0, 4.0, 10.0})
        for (double nu : {0.0, 3.0}) {
            const Parameters p{x, 0.0, nu};
            const auto e = evaluate(p);
            if (e.status != Status::Converged) w.see(std::numeric_limits<double>::infinity(), p);
            w.see(rel_diff(e.value, tail_integral(p).value), p);
        }
    return w.verdict("y = 0 exponential integral", tol);
}

SuiteResult identity_suite() {
    constexpr double tol = 1e-10;
    Worst w;
    for (const auto& p : {Parameters{4, 2, 3}, Parameters{10, 5, 0}, Parameters{3, 3, 0}}) {
        const double sum = evaluate(p).value + evaluate(Parameters{p.y, p.x, -p.nu}).value;
        w.see(rel_diff(sum, full_integral(p).value), p);
    }
    return w.verdict("two tails make the full integral", tol);
}

SuiteResult regime_suite() {
    constexpr double tol = 1e-12;
    Worst w;
    const Parameters points[] = {{4, 0, 3}, {4, 2, 3}, {4, 4, 3}, {10, 0, 0}, {10, 5, 0}, {10, 10, 0}};
    for (const auto& p : points) {
        const auto e = evaluate(p);
        if (e.status != Status::Converged) w.see(std::numeric_limits<double>::infinity(), p, e.order);
        w.see(rel_diff(e.value, tail_integral(p).value), p, e.order);
    }
    return w.verdict("recurrence vs quadrature", tol);
}

SuiteResult robustness_suite() {
    std::vector<std::string> problems;
    const auto deg = evaluate_sequence(Parameters{1, 2, 0}, 2);
    if (!deg.entries[1].skipped) problems.push_back("order 1 at (1,2,0) not skipped");
    const auto e = evaluate(Parameters{1, 2, 0});
    if (e.status != Status::Converged) problems.push_back("(1,2,0) did not converge");
    const auto big = evaluate(Parameters{500, 500, 0});
    if (big.status != Status::Converged || !std::isfinite(big.value) || !std::isfinite(big.scaled_value))
        problems.push_back("(500,500,0) not finite");
    std::string detail = "degenerate order skipped, underflow handled";
    if (!problems.empty()) {
        detail.clear();
        for (const auto& s : problems) detail += (detail.empty() ? "" : "; ") + s;
    }
    return {"degenerate and underflowing inputs", problems.empty(), detail};
}

}  // namespace

std::vector<SuiteResult> run_selftest() {
    return {witness_suite(), oracle_suite(), legacy_suite(), expint_suite(),
            identity_suite(), regime_suite(), robustness_suite()};
}

bool print_selftest(std::ostream& os, const std::vector<SuiteResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
    }
    os << (all ? "all suites passed" : "some suites failed") << '\n';
    return all;
}

}  // namespace incbessel
