#pragma once

#include <functional>

#include "pocoopt/problems.hpp"

// Independent verification oracles used by tests and acceptance runs.
// These are read-only: outputs never feed back into optimizer state.
namespace pocoopt::oracle {

// Central differences, componentwise; the step is scaled by (1 + |theta_j|).
Vector fd_grad(const std::function<double(const Vector&)>& f,
               const Vector& theta, double step = 1e-5);
Matrix fd_hess(const std::function<Vector(const Vector&)>& grad,
               const Vector& theta, double step = 1e-5);

// Exact average over i = 0..n-1 of a per-example direction; n <= 256.
Vector enumerate_expectation(const std::function<Vector(int)>& fn, int n);
Matrix enumerate_expectation_mat(const std::function<Matrix(int)>& fn, int n);

struct NewtonResult {
  Vector theta;
  double objective;
  double grad_norm;
  int iterations;
};

// Damped Newton on the full objective to gradient norm <= 1e-10; throws
// NumericalError after 200 iterations without convergence.
NewtonResult newton_reference(const Problem& p, double tol = 1e-10,
                              int max_iterations = 200);

}  // namespace pocoopt::oracle
