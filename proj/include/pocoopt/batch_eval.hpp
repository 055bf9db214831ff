#pragma once

#include <span>

#include "pocoopt/problems.hpp"

// Per-example reduction kernels. Each sum is accumulated over fixed blocks
// whose layout depends only on the element count, then combined by a
// pairwise tree in fixed order; the OpenMP and serial paths therefore
// produce bit-identical results for any thread count. The serial path is
// kept as the reference implementation (parallel = false) and the two are
// compared in tools/bench_eval.
namespace pocoopt::batch {

// Applies the POCOOPT_THREADS cap to the OpenMP runtime (no-op when the
// variable is unset). Returns the resulting worker count.
int apply_thread_cap();
int configured_threads();

double objective_sum(const LossOracle& loss, const Vector& theta,
                     bool parallel = false);
Vector grad_sum(const LossOracle& loss, const Vector& theta,
                bool parallel = false);
Matrix hess_sum(const LossOracle& loss, const Vector& theta,
                bool parallel = false);
Vector hess_diag_sum(const LossOracle& loss, const Vector& theta,
                     bool parallel = false);

double objective_sum(const LossOracle& loss, std::span<const int> idx,
                     const Vector& theta, bool parallel = false);
Vector grad_sum(const LossOracle& loss, std::span<const int> idx,
                const Vector& theta, bool parallel = false);
Matrix hess_sum(const LossOracle& loss, std::span<const int> idx,
                const Vector& theta, bool parallel = false);
Vector hess_diag_sum(const LossOracle& loss, std::span<const int> idx,
                     const Vector& theta, bool parallel = false);

// Exact full-batch objective sum_i l_i(theta) + l_0(theta).
double full_objective(const Problem& p, const Vector& theta,
                      bool parallel = false);

}  // namespace pocoopt::batch
