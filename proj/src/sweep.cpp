#include "incbessel/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "incbessel/engine.hpp"

namespace incbessel {
namespace {

std::vector<SweepRow> sweep_one(double x, double nu, double y, int n_max, const QuadratureConfig& qc) {
    const Parameters p{x, y, nu};
    const auto ref = tail_integral(p, qc);
    const auto traj = evaluate_sequence(p, n_max);

    std::vector<SweepRow> rows;
    rows.reserve(traj.entries.size());
    for (const auto& e : traj.entries) {
        SweepRow r{y, e.order, e.approximant, 0.0, e.skipped};
        if (e.skipped) {
            r.rel_error = std::numeric_limits<double>::infinity();
        } else {
            // Compare e^(x+y) G_n with e^(x+y) K so underflowing points still
            // report a meaningful error.
            const double scaled = e.numerator / e.denominator;
            const double diff = std::abs(scaled - ref.scaled_value);
            r.rel_error = ref.scaled_value != 0.0 ? diff / std::abs(ref.scaled_value)
                                                   : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> compute_sweep(double x, double nu, const std::vector<double>& ys, int n_max,
                                    const QuadratureConfig& qc) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    for (double y : ys) validate(Parameters{x, y, nu});

    std::vector<std::vector<SweepRow>> blocks(ys.size());
    const auto count = static_cast<long>(ys.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        blocks[k] = sweep_one(x, nu, ys[k], n_max, qc);
    }

    std::vector<SweepRow> out;
    for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "y,n,G_n,rel_error,skipped\n";
    for (const auto& r : rows)
        os << format_real(r.y) << ',' << r.n << ',' << format_real(r.g_n) << ',' << format_real(r.rel_error) << ','
           << (r.skipped ? 1 : 0) << '\n';
}

}  // namespace incbessel
