#pragma once

#include <cstdint>

#include "pocoopt/expfam.hpp"
#include "pocoopt/problems.hpp"
#include "pocoopt/rng.hpp"

// Mega-batch / full-batch outer-state construction: site estimates g_out and
// h_out/H_out with moving averages, plus snapshots of (m_out, sigma_out or
// S_out) taken from the same posterior and sample.
namespace pocoopt::outer {

// Sum convention is fixed per algorithm: the SVRG/PoCo/VON refreshes use
// sums with the 1/N factor applied in the inner step; the IVON form uses
// means (1/M outer, 1/B inner).
enum class SumConvention { sum, mean };

enum class CurvatureKind { none, full_hessian, diag_reparam, diag_exact };

struct RefreshOptions {
  SumConvention convention = SumConvention::sum;
  CurvatureKind curvature = CurvatureKind::none;
  double rho1 = 0.0;  // 0 adopts the freshest estimate, 1 never updates
  double rho2 = 0.0;
  // Number of posterior draws averaged per refresh; the algorithms use a
  // single draw, extra draws are an experimental knob. The first draw is
  // kept as the correction anchor theta_out.
  int mc_samples = 1;
  bool parallel = false;
};

struct OuterState {
  Vector g_out;
  Vector h_out;      // diagonal curvature estimate
  Matrix big_h_out;  // full curvature estimate
  Vector m_out;
  Vector sigma_out;  // isotropic/diagonal scale snapshot
  Matrix s_out;      // full-precision snapshot
  Vector theta_out;  // sample the sums were evaluated at
  std::int64_t refreshes = 0;
};

// Exact sums over the whole dataset at a single posterior sample (at the
// mean when the noise stream is zeroed). The first refresh adopts the
// fresh estimate; later refreshes mix with rates rho1/rho2.
OuterState refresh_full(const LossOracle& loss,
                        const expfam::IsotropicGaussian& q, rng::Stream& rs,
                        const RefreshOptions& opts,
                        const OuterState* prev = nullptr);
OuterState refresh_full(const LossOracle& loss,
                        const expfam::DiagonalGaussian& q, rng::Stream& rs,
                        const RefreshOptions& opts,
                        const OuterState* prev = nullptr);
OuterState refresh_full(const LossOracle& loss, const expfam::FullGaussian& q,
                        rng::Stream& rs, const RefreshOptions& opts,
                        const OuterState* prev = nullptr);

// Degenerate point-mass refresh at a fixed parameter (the SVRG anchor).
OuterState refresh_at(const LossOracle& loss, const Vector& theta,
                      const RefreshOptions& opts,
                      const OuterState* prev = nullptr);

// Draws mega indices without replacement from pick, then proceeds like
// refresh_full over that subset. Requires 1 <= mega <= N.
OuterState refresh_mega(const LossOracle& loss,
                        const expfam::IsotropicGaussian& q, int mega,
                        rng::Stream& rs, rng::Stream& pick,
                        const RefreshOptions& opts,
                        const OuterState* prev = nullptr);
OuterState refresh_mega(const LossOracle& loss,
                        const expfam::DiagonalGaussian& q, int mega,
                        rng::Stream& rs, rng::Stream& pick,
                        const RefreshOptions& opts,
                        const OuterState* prev = nullptr);
OuterState refresh_mega(const LossOracle& loss, const expfam::FullGaussian& q,
                        int mega, rng::Stream& rs, rng::Stream& pick,
                        const RefreshOptions& opts,
                        const OuterState* prev = nullptr);

}  // namespace pocoopt::outer
