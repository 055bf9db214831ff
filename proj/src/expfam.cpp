#include "pocoopt/expfam.hpp"

#include <Eigen/Cholesky>

#include "pocoopt/errors.hpp"

namespace pocoopt::expfam {

void DiagonalGaussian::validate() const {
  if (mean.size() != hess.size())
    throw ConfigError("diagonal posterior: mean/hess size mismatch");
  if (!(kappa > 0.0)) throw ConfigError("diagonal posterior: kappa <= 0");
  if (delta < 0.0) throw ConfigError("diagonal posterior: delta < 0");
  if (((hess.array() + delta) <= 0.0).any())
    throw NumericalError("diagonal posterior: precision not positive");
}

void FullGaussian::validate() const {
  const auto d = precision.rows();
  if (d != precision.cols() || d != mean.size())
    throw ConfigError("full posterior: dimension mismatch");
  if (d > kMaxFullDim)
    throw ConfigError("full posterior: d = " + std::to_string(d) +
                      " exceeds dense cap " + std::to_string(kMaxFullDim));
  if ((precision - precision.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("full posterior: precision not symmetric");
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw PdError("full posterior: precision not positive definite");
}

void symmetrize(Matrix& s) { s = 0.5 * (s + s.transpose()).eval(); }

NatParam& NatParam::add_scaled(const NatParam& other, double a) {
  l1 += a * other.l1;
  if (family == Family::diagonal) l2_diag += a * other.l2_diag;
  if (family == Family::full) l2_full += a * other.l2_full;
  return *this;
}

NatParam& NatParam::scale(double a) {
  l1 *= a;
  if (family == Family::diagonal) l2_diag *= a;
  if (family == Family::full) l2_full *= a;
  return *this;
}

NatParam moment_to_natural(const IsotropicGaussian& q) {
  return {Family::isotropic, q.mean, {}, {}};
}

NatParam moment_to_natural(const DiagonalGaussian& q) {
  Vector s = q.precision();
  return {Family::diagonal, s.cwiseProduct(q.mean), -0.5 * s, {}};
}

NatParam moment_to_natural(const FullGaussian& q) {
  return {Family::full, q.precision * q.mean, {}, -0.5 * q.precision};
}

IsotropicGaussian natural_to_isotropic(const NatParam& nat) {
  return {nat.l1};
}

DiagonalGaussian natural_to_diagonal(const NatParam& nat, double delta,
                                     double kappa) {
  Vector s = -2.0 * nat.l2_diag;
  if ((s.array() <= 0.0).any())
    throw NumericalError(
        "natural_to_diagonal: implied precision not positive");
  DiagonalGaussian q{nat.l1.cwiseQuotient(s), s / kappa, delta, kappa};
  q.hess.array() -= delta;
  return q;
}

FullGaussian natural_to_full(const NatParam& nat) {
  Matrix s = -2.0 * nat.l2_full;
  symmetrize(s);
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success)
    throw PdError("natural_to_full: implied precision not positive definite");
  return {llt.solve(nat.l1), s};
}

Vector sample_with_eps(const IsotropicGaussian& q, const Vector& eps) {
  return q.mean + eps;
}

Vector sample_with_eps(const DiagonalGaussian& q, const Vector& eps) {
  return q.mean + q.sigma().cwiseProduct(eps);
}

Vector sample_with_eps(const FullGaussian& q, const Vector& eps) {
  Eigen::LLT<Matrix> llt(q.precision);
  if (llt.info() != Eigen::Success)
    throw PdError("sample: precision not positive definite");
  // cov = S^-1 = L^-T L^-1, so theta = m + L^-T eps.
  return q.mean + llt.matrixU().solve(eps);
}

namespace {

Vector batch_grad(const LossOracle& loss, std::span<const int> idx,
                  const Vector& theta) {
  Vector g = Vector::Zero(theta.size());
  for (int i : idx) g += loss.grad(i, theta);
  return g / static_cast<double>(idx.size());
}

Matrix batch_hess(const LossOracle& loss, std::span<const int> idx,
                  const Vector& theta) {
  Matrix h = Matrix::Zero(theta.size(), theta.size());
  for (int i : idx) h += loss.hess(i, theta);
  return h / static_cast<double>(idx.size());
}

Vector batch_hess_diag(const LossOracle& loss, std::span<const int> idx,
                       const Vector& theta) {
  Vector h = Vector::Zero(theta.size());
  for (int i : idx) h += loss.hess_diag(i, theta);
  return h / static_cast<double>(idx.size());
}

void check_mc_inputs(std::span<const int> idx, const McOptions& opts) {
  if (idx.empty())
    throw ConfigError("natgrad_mc: empty index set");
  if (opts.samples < 1) throw ConfigError("natgrad_mc: samples >= 1");
}

// Draws the k-th evaluation point; antithetic pairs reuse the previous
// eps with flipped sign.
Vector draw_eps(int k, const McOptions& opts, rng::Stream& rs, int d,
                Vector& cache) {
  if (opts.antithetic && k % 2 == 1) return -cache;
  cache.resize(d);
  for (int j = 0; j < d; ++j) cache[j] = rs.normal();
  return cache;
}

}  // namespace

NatGrad natgrad_mc(const IsotropicGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs) {
  check_mc_inputs(idx, opts);
  const int d = static_cast<int>(q.mean.size());
  NatGrad out{Family::isotropic, Vector::Zero(d), {}, {}, q.mean};
  if (rs.zero_noise()) {
    out.g1 = batch_grad(loss, idx, q.mean);
    return out;
  }
  Vector cache;
  for (int k = 0; k < opts.samples; ++k) {
    Vector theta = sample_with_eps(q, draw_eps(k, opts, rs, d, cache));
    out.g1 += batch_grad(loss, idx, theta);
  }
  out.g1 /= opts.samples;
  return out;
}

NatGrad natgrad_mc(const DiagonalGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs) {
  check_mc_inputs(idx, opts);
  const int d = static_cast<int>(q.mean.size());
  NatGrad out{Family::diagonal, Vector::Zero(d), Vector::Zero(d), {}, q.mean};
  if (rs.zero_noise()) {
    out.g1 = batch_grad(loss, idx, q.mean);
    out.g2_diag = batch_hess_diag(loss, idx, q.mean);
    return out;
  }
  const Vector inv_sigma2 = q.precision();
  Vector cache;
  for (int k = 0; k < opts.samples; ++k) {
    Vector theta = sample_with_eps(q, draw_eps(k, opts, rs, d, cache));
    Vector g = batch_grad(loss, idx, theta);
    out.g1 += g;
    if (opts.curvature == CurvatureMode::exact_diag)
      out.g2_diag += batch_hess_diag(loss, idx, theta);
    else
      out.g2_diag +=
          g.cwiseProduct((theta - q.mean).cwiseProduct(inv_sigma2));
  }
  out.g1 /= opts.samples;
  out.g2_diag /= opts.samples;
  return out;
}

NatGrad natgrad_mc(const FullGaussian& q, const LossOracle& loss,
                   std::span<const int> idx, const McOptions& opts,
                   rng::Stream& rs) {
  check_mc_inputs(idx, opts);
  const int d = static_cast<int>(q.mean.size());
  NatGrad out{Family::full, Vector::Zero(d), {}, Matrix::Zero(d, d), q.mean};
  if (rs.zero_noise()) {
    Matrix h = batch_hess(loss, idx, q.mean);
    out.g1 = batch_grad(loss, idx, q.mean) - h * q.mean;
    out.g2_full = 0.5 * h;
    return out;
  }
  Vector cache;
  for (int k = 0; k < opts.samples; ++k) {
    Vector theta = sample_with_eps(q, draw_eps(k, opts, rs, d, cache));
    Matrix h = batch_hess(loss, idx, theta);
    out.g1 += batch_grad(loss, idx, theta) - h * q.mean;
    out.g2_full += 0.5 * h;
  }
  out.g1 /= opts.samples;
  out.g2_full /= opts.samples;
  return out;
}

NatParam to_lambda_grad(const NatGrad& g) {
  switch (g.family) {
    case Family::isotropic:
      return {Family::isotropic, g.g1, {}, {}};
    case Family::diagonal:
      return {Family::diagonal, g.g1 - g.g2_diag.cwiseProduct(g.mean_at),
              0.5 * g.g2_diag, {}};
    case Family::full:
      return {Family::full, g.g1, {}, g.g2_full};
  }
  throw NumericalError("to_lambda_grad: bad family tag");
}

void natural_step(NatParam& lambda, const NatParam& grad, double eta_decay,
                  double eta_scale) {
  if (lambda.family != grad.family)
    throw ConfigError("natural_step: family mismatch");
  if (lambda.family != Family::isotropic) lambda.scale(1.0 - eta_decay);
  lambda.add_scaled(grad, -eta_scale);
}

}  // namespace pocoopt::expfam
