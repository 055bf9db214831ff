#include "pocoopt/oracle.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "pocoopt/batch_eval.hpp"
#include "pocoopt/errors.hpp"

namespace pocoopt::oracle {

Vector fd_grad(const std::function<double(const Vector&)>& f,
               const Vector& theta, double step) {
  Vector g(theta.size());
  Vector t = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double h = step * (1.0 + std::abs(theta[j]));
    t[j] = theta[j] + h;
    const double fp = f(t);
    t[j] = theta[j] - h;
    const double fm = f(t);
    t[j] = theta[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix fd_hess(const std::function<Vector(const Vector&)>& grad,
               const Vector& theta, double step) {
  Matrix h(theta.size(), theta.size());
  Vector t = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double hj = step * (1.0 + std::abs(theta[j]));
    t[j] = theta[j] + hj;
    const Vector gp = grad(t);
    t[j] = theta[j] - hj;
    const Vector gm = grad(t);
    t[j] = theta[j];
    h.col(j) = (gp - gm) / (2.0 * hj);
  }
  return h;
}

Vector enumerate_expectation(const std::function<Vector(int)>& fn, int n) {
  if (n < 1 || n > 256)
    throw ConfigError("enumerate_expectation: n must be in [1, 256]");
  Vector acc = fn(0);
  for (int i = 1; i < n; ++i) acc += fn(i);
  return acc / n;
}

Matrix enumerate_expectation_mat(const std::function<Matrix(int)>& fn,
                                 int n) {
  if (n < 1 || n > 256)
    throw ConfigError("enumerate_expectation_mat: n must be in [1, 256]");
  Matrix acc = fn(0);
  for (int i = 1; i < n; ++i) acc += fn(i);
  return acc / n;
}

NewtonResult newton_reference(const Problem& p, double tol,
                              int max_iterations) {
  const int d = p.dim();
  Vector theta = Vector::Zero(d);
  double f = batch::full_objective(p, theta);

  for (int it = 0; it < max_iterations; ++it) {
    Vector g = batch::grad_sum(*p.loss, theta) + p.reg.grad(theta);
    const double gnorm = g.norm();
    if (gnorm <= tol) return {theta, f, gnorm, it};

    Matrix h = batch::hess_sum(*p.loss, theta);
    h.diagonal().array() += p.reg.s0;
    Vector dir;
    double ridge = 0.0;
    for (;;) {
      Matrix hr = h;
      hr.diagonal().array() += ridge;
      Eigen::LLT<Matrix> llt(hr);
      if (llt.info() == Eigen::Success) {
        dir = -llt.solve(g);
        break;
      }
      ridge = ridge == 0.0 ? 1e-10 : ridge * 10.0;
      if (ridge > 1e6)
        throw NumericalError("newton_reference: Hessian not factorizable");
    }

    // Backtracking with Armijo acceptance keeps the step damped.
    double t = 1.0;
    const double slope = g.dot(dir);
    for (;;) {
      Vector cand = theta + t * dir;
      double fc = batch::full_objective(p, cand);
      if (fc <= f + 1e-4 * t * slope) {
        theta = std::move(cand);
        f = fc;
        break;
      }
      t *= 0.5;
      if (t < 1e-14)
        throw NumericalError("newton_reference: line search failed");
    }
  }

  Vector g = batch::grad_sum(*p.loss, theta) + p.reg.grad(theta);
  if (g.norm() <= tol)
    return {theta, f, g.norm(), max_iterations};
  throw NumericalError(
      "newton_reference: no convergence within iteration budget");
}

}  // namespace pocoopt::oracle
