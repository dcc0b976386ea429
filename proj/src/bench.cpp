#include "incbessel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "incbessel/engine.hpp"
#include "incbessel/legacy.hpp"

namespace incbessel::bench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
double time_call(F&& f, const TimingConfig& tc) {
    if (tc.batches < 1 || !(tc.batch_seconds > 0)) throw std::invalid_argument("invalid timing configuration");
    double best = std::numeric_limits<double>::infinity();
    // Batch -1 warms caches and clocks and is not scored.
    for (int b = -1; b < tc.batches; ++b) {
        long reps = 0;
        const auto t0 = Clock::now();
        double elapsed = 0.0;
        do {
            f();
            ++reps;
            elapsed = seconds_since(t0);
        } while (elapsed < tc.batch_seconds);
        if (b >= 0) best = std::min(best, elapsed / static_cast<double>(reps));
    }
    return best;
}

// Keeps results observable so the timed work is not optimized away.
volatile double g_sink = 0.0;

Series run_series(const std::string& name, const std::vector<int>& orders, double (*timer)(const Parameters&, int,
                                                                                            const TimingConfig&),
                  const Parameters& p, const TimingConfig& tc) {
    Series s{name, orders, {}, std::numeric_limits<double>::quiet_NaN()};
    for (int n : orders) s.seconds.push_back(timer(p, n, tc));
    if (orders.size() >= 2) s.exponent = fit_exponent(orders, s.seconds);
    return s;
}

void print_series(std::ostream& os, const Series& s) {
    char line[128];
    for (std::size_t i = 0; i < s.orders.size(); ++i) {
        std::snprintf(line, sizeof line, "%-10s %8d %14.6e", s.method.c_str(), s.orders[i], s.seconds[i]);
        os << line;
        if (i > 0) {
            std::snprintf(line, sizeof line, "   ratio %.3f (n x%.3g)", s.seconds[i] / s.seconds[i - 1],
                          static_cast<double>(s.orders[i]) / s.orders[i - 1]);
            os << line;
        }
        os << '\n';
    }
    if (s.orders.size() >= 2) {
        std::snprintf(line, sizeof line, "%-10s exponent %.3f\n", s.method.c_str(), s.exponent);
        os << line;
    }
}

}  // namespace

double time_recursive(const Parameters& p, int n, const TimingConfig& tc) {
    validate(p);
    return time_call([&] { g_sink = evaluate_sequence(p, n).entries.back().numerator; }, tc);
}

double time_legacy(const Parameters& p, int n, const TimingConfig& tc) {
    validate(p);
    return time_call([&] { g_sink = legacy::legacy_trajectory(p, n).back(); }, tc);
}

double fit_exponent(const std::vector<int>& ns, const std::vector<double>& seconds) {
    if (ns.size() != seconds.size() || ns.size() < 2) throw std::invalid_argument("need at least two points");
    double mx = 0, my = 0;
    const auto m = static_cast<double>(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        mx += std::log(static_cast<double>(ns[i])) / m;
        my += std::log(seconds[i]) / m;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double dx = std::log(static_cast<double>(ns[i])) - mx;
        sxy += dx * (std::log(seconds[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) throw std::invalid_argument("need at least two distinct orders");
    return sxy / sxx;
}

Report run_bench(const Parameters& p, const std::vector<int>& orders, const std::vector<int>& legacy_orders,
                 const TimingConfig& tc) {
    validate(p);
    for (int n : orders)
        if (n < 1) throw std::invalid_argument("orders must be positive");
    for (int n : legacy_orders)
        if (n < 1 || n > 32) throw std::invalid_argument("legacy orders must lie in [1, 32]");

    const auto t0 = Clock::now();
    Report r;
    r.params = p;
    r.recursive = run_series("recursive", orders, time_recursive, p, tc);
    r.legacy = run_series("legacy", legacy_orders, time_legacy, p, tc);
    r.total_seconds = seconds_since(t0);
    return r;
}

void print_report(std::ostream& os, const Report& r) {
    char line[128];
    std::snprintf(line, sizeof line, "x=%g y=%g nu=%g\n", r.params.x, r.params.y, r.params.nu);
    os << line << "method            n     seconds\n";
    print_series(os, r.recursive);
    print_series(os, r.legacy);
    std::snprintf(line, sizeof line, "total %.3f s\n", r.total_seconds);
    os << line;
}

}  // namespace incbessel::bench
