#include "incbessel/batch.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace incbessel::batch {

void validate_all(std::span<const Parameters> points) {
    for (const auto& p : points) validate(p);
}

std::vector<EvaluationResult> evaluate_serial(std::span<const Parameters> points, const EngineConfig& config) {
    validate_all(points);
    config.validate();
    std::vector<EvaluationResult> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(evaluate(p, config));
    return out;
}

std::vector<EvaluationResult> evaluate_parallel(std::span<const Parameters> points, const EngineConfig& config) {
    // Nothing may throw inside the parallel region.
    validate_all(points);
    config.validate();
    std::vector<EvaluationResult> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = evaluate(points[static_cast<std::size_t>(i)], config);
    return out;
}

std::vector<QuadratureResult<double>> tail_integral_serial(std::span<const Parameters> points,
                                                           const QuadratureConfig& qc) {
    validate_all(points);
    qc.validate();
    std::vector<QuadratureResult<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(tail_integral(p, qc));
    return out;
}

std::vector<QuadratureResult<double>> tail_integral_parallel(std::span<const Parameters> points,
                                                             const QuadratureConfig& qc) {
    validate_all(points);
    qc.validate();
    std::vector<QuadratureResult<double>> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = tail_integral(points[static_cast<std::size_t>(i)], qc);
    return out;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace incbessel::batch
