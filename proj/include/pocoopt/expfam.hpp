#pragma once

#include <span>

#include "pocoopt/linalg.hpp"
#include "pocoopt/problems.hpp"
#include "pocoopt/rng.hpp"

namespace pocoopt::expfam {

// Dense d x d storage for the full family; larger d is a config error.
inline constexpr int kMaxFullDim = 512;

enum class Family { isotropic, diagonal, full };

// N(m, I); the covariance is implicitly the identity and the natural
// parameter equals the mean.
struct IsotropicGaussian {
  Vector mean;
};

// N(m, diag(s)^-1) in the IVON parameterization s = kappa*(h + delta),
// sigma^2 = 1/(kappa*(h + delta)).
struct DiagonalGaussian {
  Vector mean;
  Vector hess;   // h, unitless curvature
  double delta;  // nonnegative
  double kappa;  // positive, effective sample size

  Vector precision() const { return kappa * (hess.array() + delta); }
  Vector sigma2() const {
    return (kappa * (hess.array() + delta)).inverse();
  }
  Vector sigma() const { return sigma2().cwiseSqrt(); }
  void validate() const;  // s > 0 elementwise
};

// N(m, S^-1) with S symmetric positive definite.
struct FullGaussian {
  Vector mean;
  Matrix precision;  // S

  void validate() const;  // symmetry within 1e-10, PD, d <= kMaxFullDim
};

// Floating-point drift breaks the Cholesky invariant unless S is
// re-symmetrized after every update.
void symmetrize(Matrix& s);

// Natural parameters: isotropic m; diagonal (s.*m, -s/2); full (S m, -S/2).
struct NatParam {
  Family family = Family::isotropic;
  Vector l1;
  Vector l2_diag;  // diagonal family
  Matrix l2_full;  // full family

  NatParam& add_scaled(const NatParam& other, double a);
  NatParam& scale(double a);
};

NatParam moment_to_natural(const IsotropicGaussian& q);
NatParam moment_to_natural(const DiagonalGaussian& q);
NatParam moment_to_natural(const FullGaussian& q);

IsotropicGaussian natural_to_isotropic(const NatParam& nat);
// delta/kappa re-embed the precision into the (h, delta, kappa) form.
DiagonalGaussian natural_to_diagonal(const NatParam& nat, double delta,
                                     double kappa);
FullGaussian natural_to_full(const NatParam& nat);

// theta = m + L*eps with L the family's covariance factor (identity /
// diag(sigma) / inverse Cholesky factor of S).
Vector sample_with_eps(const IsotropicGaussian& q, const Vector& eps);
Vector sample_with_eps(const DiagonalGaussian& q, const Vector& eps);
Vector sample_with_eps(const FullGaussian& q, const Vector& eps);

template <class Q>
Vector sample(const Q& q, rng::Stream& rs) {
  Vector eps(q.mean.size());
  for (Eigen::Index i = 0; i < eps.size(); ++i) eps[i] = rs.normal();
  return sample_with_eps(q, eps);
}

enum class CurvatureMode { reparam, exact_diag };

struct McOptions {
  int samples = 1;
  bool antithetic = false;  // evaluate +eps / -eps pairs
  CurvatureMode curvature = CurvatureMode::reparam;
};

// Monte Carlo natural-gradient estimate averaged over the index set.
// Payloads per family:
//   isotropic: g1 = E[grad]
//   diagonal:  g1 = E[grad],           g2_diag = E[grad .* (theta-m)./sigma2]
//   full:      g1 = E[grad - hess*m],  g2_full = E[hess]/2
// mean_at is the mean of the posterior the expectation was taken under,
// needed to map the diagonal payload into natural-parameter space.
//
// A zero-noise stream evaluates everything at the mean (delta method); the
// reparametrization curvature is then replaced by the exact diagonal
// Hessian, since (theta-m)/sigma2 vanishes identically.
struct NatGrad {
  Family family = Family::isotropic;
  Vector g1;
  Vector g2_diag;
  Matrix g2_full;
  Vector mean_at;
};

NatGrad natgrad_mc(const IsotropicGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs);
NatGrad natgrad_mc(const DiagonalGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs);
NatGrad natgrad_mc(const FullGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs);

// Maps a payload to natural-parameter coordinates so estimates taken at
// different posteriors can be combined.
NatParam to_lambda_grad(const NatGrad& g);

// One natural-gradient-descent step, lambda <- (1-eta_decay)*lambda -
// eta_scale*grad. For the isotropic family the base measure
// exp(-theta'theta/2) contributes the exact negative of the decay term, so
// the mean moves by -eta_scale*grad with no shrink toward zero.
void natural_step(NatParam& lambda, const NatParam& grad, double eta_decay,
                  double eta_scale);

}  // namespace pocoopt::expfam
