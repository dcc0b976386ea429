#pragma once

// Relative-error-vs-order trajectories, one block of rows per y, measured
// against the quadrature value.

#include <iosfwd>
#include <string>
#include <vector>

#include "incbessel/quadrature.hpp"

namespace incbessel {

struct SweepRow {
    double y = 0.0;
    int n = 0;
    double g_n = 0.0;  ///< NaN on skipped rows
    double rel_error = 0.0;
    bool skipped = false;
};

/// Rows ordered by y (as given), then n = 0..n_max. The y values are
/// processed in parallel; the output does not depend on the schedule.
[[nodiscard]] std::vector<SweepRow> compute_sweep(double x, double nu, const std::vector<double>& ys, int n_max,
                                                  const QuadratureConfig& qc = {});

/// 17 significant digits in scientific notation; "nan" / "inf" / "-inf" otherwise.
[[nodiscard]] std::string format_real(double v);

/// Header `y,n,G_n,rel_error,skipped` followed by one line per row.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace incbessel
