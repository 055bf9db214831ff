#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>

#include "pocoopt/linalg.hpp"

namespace pocoopt {

struct Dataset {
  Matrix x;  // N x d feature rows
  Vector y;  // length N; {-1,+1} for classification, reals for regression

  int num_examples() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }

  // N >= 1, finite entries, row/label counts agree. Throws ConfigError.
  void validate(bool classification) const;
};

enum class DatasetFormat { sparse, csv };

// sparse: one example per line, "<label> <index>:<value> ...", 1-based
// indices. csv: header "label,f1,...,fd". expected_dim = 0 infers the
// dimension (sparse: max index seen).
Dataset load_dataset(const std::string& path, DatasetFormat format,
                     int expected_dim = 0, bool classification = true);

// Per-example loss with value, gradient and (optionally) Hessian. Oracles
// are immutable after construction and safe for concurrent reads.
class LossOracle {
 public:
  virtual ~LossOracle() = default;
  virtual int num_examples() const = 0;
  virtual int dim() const = 0;
  virtual double value(int i, const Vector& theta) const = 0;
  virtual Vector grad(int i, const Vector& theta) const = 0;
  virtual Matrix hess(int i, const Vector& theta) const = 0;
  virtual Vector hess_diag(int i, const Vector& theta) const;

  // Accumulating forms for batched sums; concrete losses override these
  // to avoid per-example temporaries in the hot reduction loops.
  virtual void grad_accumulate(int i, const Vector& theta, Vector& acc) const;
  virtual void hess_accumulate(int i, const Vector& theta, Matrix& acc) const;

 protected:
  void check_index(int i) const;
};

// l_i(theta) = log(1 + exp(-y_i x_i' theta)), computed in softplus form so
// saturated margins do not overflow.
class LogisticLoss : public LossOracle {
 public:
  explicit LogisticLoss(Dataset data);
  int num_examples() const override { return data_.num_examples(); }
  int dim() const override { return data_.dim(); }
  double value(int i, const Vector& theta) const override;
  Vector grad(int i, const Vector& theta) const override;
  Matrix hess(int i, const Vector& theta) const override;
  Vector hess_diag(int i, const Vector& theta) const override;
  void grad_accumulate(int i, const Vector& theta, Vector& acc) const override;
  void hess_accumulate(int i, const Vector& theta, Matrix& acc) const override;
  const Dataset& data() const { return data_; }

 private:
  Dataset data_;
};

// l_i(theta) = (theta-c)' A (theta-c) / (2N); the factor 1/N makes the
// sum over examples the usual quadratic.
class QuadraticLoss : public LossOracle {
 public:
  QuadraticLoss(Matrix a, Vector c, int n);
  int num_examples() const override { return n_; }
  int dim() const override { return static_cast<int>(c_.size()); }
  double value(int i, const Vector& theta) const override;
  Vector grad(int i, const Vector& theta) const override;
  Matrix hess(int i, const Vector& theta) const override;
  Vector hess_diag(int i, const Vector& theta) const override;
  void hess_accumulate(int i, const Vector& theta, Matrix& acc) const override;
  const Matrix& a() const { return a_; }
  const Vector& c() const { return c_; }

 private:
  Matrix a_;
  Vector c_;
  int n_;
};

// l_0(theta) = s0 * theta'theta / 2
struct Regularizer {
  double s0 = 0.0;
  double value(const Vector& theta) const {
    return 0.5 * s0 * theta.squaredNorm();
  }
  Vector grad(const Vector& theta) const { return s0 * theta; }
};

// Redefines the losses as l_i + l_0/N so algorithms that work on the bare
// empirical sum still minimize the regularized objective.
class AbsorbedLoss : public LossOracle {
 public:
  AbsorbedLoss(std::shared_ptr<const LossOracle> inner, Regularizer reg);
  int num_examples() const override { return inner_->num_examples(); }
  int dim() const override { return inner_->dim(); }
  double value(int i, const Vector& theta) const override;
  Vector grad(int i, const Vector& theta) const override;
  Matrix hess(int i, const Vector& theta) const override;
  Vector hess_diag(int i, const Vector& theta) const override;
  void grad_accumulate(int i, const Vector& theta, Vector& acc) const override;
  void hess_accumulate(int i, const Vector& theta, Matrix& acc) const override;

 private:
  std::shared_ptr<const LossOracle> inner_;
  Regularizer reg_;
};

struct Problem {
  std::shared_ptr<const LossOracle> loss;
  Regularizer reg;
  // Optimum of the full objective when known (synthetic problems);
  // reference_objective = +inf marks "unknown".
  double reference_objective = std::numeric_limits<double>::infinity();

  int num_examples() const { return loss->num_examples(); }
  int dim() const { return loss->dim(); }
  std::shared_ptr<const LossOracle> absorbed() const {
    return std::make_shared<AbsorbedLoss>(loss, reg);
  }
};

// Gaussian class-conditional features with margin "separability"; the
// reference optimum is a full-batch damped-Newton solve of the regularized
// objective to gradient norm <= 1e-10.
Problem make_synthetic_logreg(int n, int d, double separability,
                              std::uint64_t seed, double s0 = 1.0);

Problem make_random_quadratic(int n, int d, std::uint64_t seed,
                              double s0 = 0.0);

}  // namespace pocoopt
