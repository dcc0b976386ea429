#pragma once

// Wall-time scaling of the recursive and sum-based trajectories.

#include <iosfwd>
#include <string>
#include <vector>

#include "incbessel/parameters.hpp"

namespace incbessel::bench {

/// Per-call wall time in seconds: the minimum over `batches` batches, each
/// repeating the call until it has run for at least `batch_seconds`.
struct TimingConfig {
    int batches = 5;
    double batch_seconds = 0.01;
};

[[nodiscard]] double time_recursive(const Parameters& p, int n, const TimingConfig& tc = {});
[[nodiscard]] double time_legacy(const Parameters& p, int n, const TimingConfig& tc = {});

/// Least-squares slope of log(t) against log(n). Needs two or more distinct n.
[[nodiscard]] double fit_exponent(const std::vector<int>& ns, const std::vector<double>& seconds);

struct Series {
    std::string method;
    std::vector<int> orders;
    std::vector<double> seconds;
    double exponent = 0.0;
};

struct Report {
    Parameters params;
    Series recursive;
    Series legacy;
    double total_seconds = 0.0;
};

/// Legacy orders are limited to 32.
[[nodiscard]] Report run_bench(const Parameters& p, const std::vector<int>& orders,
                               const std::vector<int>& legacy_orders, const TimingConfig& tc = {});

void print_report(std::ostream& os, const Report& r);

}  // namespace incbessel::bench
