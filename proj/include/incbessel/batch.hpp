#pragma once

// Evaluation over many independent parameter points. A single evaluation is
// inherently sequential (each order needs the previous three), so parallelism
// lives across points. The serial versions are the reference the OpenMP
// versions are tested and benchmarked against; both return results in input
// order.

#include <span>
#include <vector>

#include "incbessel/engine.hpp"
#include "incbessel/quadrature.hpp"

namespace incbessel::batch {

/// Throws DomainError for the first invalid point, before any work starts.
void validate_all(std::span<const Parameters> points);

std::vector<EvaluationResult> evaluate_serial(std::span<const Parameters> points, const EngineConfig& config = {});
std::vector<EvaluationResult> evaluate_parallel(std::span<const Parameters> points, const EngineConfig& config = {});

std::vector<QuadratureResult<double>> tail_integral_serial(std::span<const Parameters> points,
                                                           const QuadratureConfig& qc = {});
std::vector<QuadratureResult<double>> tail_integral_parallel(std::span<const Parameters> points,
                                                             const QuadratureConfig& qc = {});

/// Number of threads the parallel kernels will use.
int max_threads();

}  // namespace incbessel::batch
