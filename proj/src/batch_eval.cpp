#include "pocoopt/batch_eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pocoopt::batch {

namespace {

// Block counts are pure functions of the element count; matrix partials
// get fewer blocks to bound transient memory at d = 512.
constexpr int kVectorBlocks = 64;
constexpr int kMatrixBlocks = 16;

int nblocks_for(int n, int cap) { return std::min(cap, std::max(n, 1)); }

template <class T>
T tree_reduce(std::vector<T>& partials) {
  std::size_t m = partials.size();
  while (m > 1) {
    std::size_t h = 0;
    for (std::size_t i = 0; i + 1 < m; i += 2)
      partials[h++] = partials[i] + partials[i + 1];
    if (m % 2 == 1) partials[h++] = std::move(partials[m - 1]);
    m = h;
  }
  return partials[0];
}

// block(lo, hi, acc) accumulates elements [lo, hi) into acc serially.
template <class T, class BlockFn>
T blocked_sum(int n, int cap, bool parallel, const T& zero, BlockFn block) {
  const int nb = nblocks_for(n, cap);
  std::vector<T> partials(static_cast<std::size_t>(nb), zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int b = 0; b < nb; ++b) {
    const int lo = static_cast<int>(static_cast<long long>(n) * b / nb);
    const int hi = static_cast<int>(static_cast<long long>(n) * (b + 1) / nb);
    T acc = zero;
    block(lo, hi, acc);
    partials[static_cast<std::size_t>(b)] = std::move(acc);
  }
  return tree_reduce(partials);
}

std::span<const int> all_indices(const LossOracle& loss,
                                 std::vector<int>& storage) {
  storage.resize(static_cast<std::size_t>(loss.num_examples()));
  std::iota(storage.begin(), storage.end(), 0);
  return storage;
}

}  // namespace

int apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("POCOOPT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int configured_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("POCOOPT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double objective_sum(const LossOracle& loss, std::span<const int> idx,
                     const Vector& theta, bool parallel) {
  return blocked_sum<double>(
      static_cast<int>(idx.size()), kVectorBlocks, parallel, 0.0,
      [&](int lo, int hi, double& acc) {
        for (int k = lo; k < hi; ++k)
          acc += loss.value(idx[static_cast<std::size_t>(k)], theta);
      });
}

Vector grad_sum(const LossOracle& loss, std::span<const int> idx,
                const Vector& theta, bool parallel) {
  const Vector zero = Vector::Zero(theta.size());
  return blocked_sum<Vector>(
      static_cast<int>(idx.size()), kVectorBlocks, parallel, zero,
      [&](int lo, int hi, Vector& acc) {
        for (int k = lo; k < hi; ++k)
          loss.grad_accumulate(idx[static_cast<std::size_t>(k)], theta, acc);
      });
}

Matrix hess_sum(const LossOracle& loss, std::span<const int> idx,
                const Vector& theta, bool parallel) {
  const Matrix zero = Matrix::Zero(theta.size(), theta.size());
  return blocked_sum<Matrix>(
      static_cast<int>(idx.size()), kMatrixBlocks, parallel, zero,
      [&](int lo, int hi, Matrix& acc) {
        for (int k = lo; k < hi; ++k)
          loss.hess_accumulate(idx[static_cast<std::size_t>(k)], theta, acc);
      });
}

Vector hess_diag_sum(const LossOracle& loss, std::span<const int> idx,
                     const Vector& theta, bool parallel) {
  const Vector zero = Vector::Zero(theta.size());
  return blocked_sum<Vector>(
      static_cast<int>(idx.size()), kVectorBlocks, parallel, zero,
      [&](int lo, int hi, Vector& acc) {
        for (int k = lo; k < hi; ++k)
          acc += loss.hess_diag(idx[static_cast<std::size_t>(k)], theta);
      });
}

double objective_sum(const LossOracle& loss, const Vector& theta,
                     bool parallel) {
  std::vector<int> storage;
  return objective_sum(loss, all_indices(loss, storage), theta, parallel);
}

Vector grad_sum(const LossOracle& loss, const Vector& theta, bool parallel) {
  std::vector<int> storage;
  return grad_sum(loss, all_indices(loss, storage), theta, parallel);
}

Matrix hess_sum(const LossOracle& loss, const Vector& theta, bool parallel) {
  std::vector<int> storage;
  return hess_sum(loss, all_indices(loss, storage), theta, parallel);
}

Vector hess_diag_sum(const LossOracle& loss, const Vector& theta,
                     bool parallel) {
  std::vector<int> storage;
  return hess_diag_sum(loss, all_indices(loss, storage), theta, parallel);
}

double full_objective(const Problem& p, const Vector& theta, bool parallel) {
  return objective_sum(*p.loss, theta, parallel) + p.reg.value(theta);
}

}  // namespace pocoopt::batch
