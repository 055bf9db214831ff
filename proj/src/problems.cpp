#include "pocoopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pocoopt/errors.hpp"
#include "pocoopt/oracle.hpp"
#include "pocoopt/rng.hpp"

namespace pocoopt {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow for large t.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

}  // namespace

void Dataset::validate(bool classification) const {
  if (x.rows() < 1) throw ConfigError("dataset: need at least one example");
  if (x.rows() != y.size())
    throw ConfigError("dataset: row count does not match label count");
  if (!all_finite(x) || !all_finite(y))
    throw ConfigError("dataset: non-finite entry");
  if (classification) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 1.0 && y[i] != -1.0)
        throw ConfigError("dataset: classification label not in {-1,+1} at row " +
                          std::to_string(i + 1));
    }
  }
}

void LossOracle::check_index(int i) const {
  if (i < 0 || i >= num_examples())
    throw ConfigError("loss oracle: example index " + std::to_string(i) +
                      " out of range [0," + std::to_string(num_examples()) +
                      ")");
}

Vector LossOracle::hess_diag(int i, const Vector& theta) const {
  return hess(i, theta).diagonal();
}

void LossOracle::grad_accumulate(int i, const Vector& theta,
                                 Vector& acc) const {
  acc += grad(i, theta);
}

void LossOracle::hess_accumulate(int i, const Vector& theta,
                                 Matrix& acc) const {
  acc += hess(i, theta);
}

LogisticLoss::LogisticLoss(Dataset data) : data_(std::move(data)) {
  data_.validate(true);
}

double LogisticLoss::value(int i, const Vector& theta) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  return softplus(-data_.y[i] * z);
}

Vector LogisticLoss::grad(int i, const Vector& theta) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  double coef = -data_.y[i] * sigmoid(-data_.y[i] * z);
  return coef * data_.x.row(i).transpose();
}

Matrix LogisticLoss::hess(int i, const Vector& theta) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  double s = sigmoid(z);
  double coef = s * (1.0 - s);
  return coef * (data_.x.row(i).transpose() * data_.x.row(i));
}

Vector LogisticLoss::hess_diag(int i, const Vector& theta) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  double s = sigmoid(z);
  return (s * (1.0 - s)) * data_.x.row(i).transpose().cwiseAbs2();
}

void LogisticLoss::grad_accumulate(int i, const Vector& theta,
                                   Vector& acc) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  double coef = -data_.y[i] * sigmoid(-data_.y[i] * z);
  acc.noalias() += coef * data_.x.row(i).transpose();
}

void LogisticLoss::hess_accumulate(int i, const Vector& theta,
                                   Matrix& acc) const {
  check_index(i);
  double z = data_.x.row(i).dot(theta);
  double s = sigmoid(z);
  acc.noalias() += (s * (1.0 - s)) *
                   (data_.x.row(i).transpose() * data_.x.row(i));
}

QuadraticLoss::QuadraticLoss(Matrix a, Vector c, int n)
    : a_(std::move(a)), c_(std::move(c)), n_(n) {
  if (n_ < 1) throw ConfigError("quadratic loss: need n >= 1");
  if (a_.rows() != a_.cols() || a_.rows() != c_.size())
    throw ConfigError("quadratic loss: dimension mismatch");
}

double QuadraticLoss::value(int i, const Vector& theta) const {
  check_index(i);
  Vector r = theta - c_;
  return 0.5 * r.dot(a_ * r) / n_;
}

Vector QuadraticLoss::grad(int i, const Vector& theta) const {
  check_index(i);
  return a_ * (theta - c_) / n_;
}

Matrix QuadraticLoss::hess(int i, const Vector& theta) const {
  check_index(i);
  (void)theta;
  return a_ / n_;
}

Vector QuadraticLoss::hess_diag(int i, const Vector& theta) const {
  check_index(i);
  (void)theta;
  return a_.diagonal() / n_;
}

void QuadraticLoss::hess_accumulate(int i, const Vector& theta,
                                    Matrix& acc) const {
  check_index(i);
  (void)theta;
  acc += a_ / n_;
}

AbsorbedLoss::AbsorbedLoss(std::shared_ptr<const LossOracle> inner,
                           Regularizer reg)
    : inner_(std::move(inner)), reg_(reg) {}

double AbsorbedLoss::value(int i, const Vector& theta) const {
  return inner_->value(i, theta) + reg_.value(theta) / num_examples();
}

Vector AbsorbedLoss::grad(int i, const Vector& theta) const {
  return inner_->grad(i, theta) + reg_.grad(theta) / num_examples();
}

Matrix AbsorbedLoss::hess(int i, const Vector& theta) const {
  Matrix h = inner_->hess(i, theta);
  h.diagonal().array() += reg_.s0 / num_examples();
  return h;
}

Vector AbsorbedLoss::hess_diag(int i, const Vector& theta) const {
  return inner_->hess_diag(i, theta).array() + reg_.s0 / num_examples();
}

void AbsorbedLoss::grad_accumulate(int i, const Vector& theta,
                                   Vector& acc) const {
  inner_->grad_accumulate(i, theta, acc);
  acc += reg_.grad(theta) / num_examples();
}

void AbsorbedLoss::hess_accumulate(int i, const Vector& theta,
                                   Matrix& acc) const {
  inner_->hess_accumulate(i, theta, acc);
  acc.diagonal().array() += reg_.s0 / num_examples();
}

Dataset load_dataset(const std::string& path, DatasetFormat format,
                     int expected_dim, bool classification) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset file: " + path);

  std::vector<double> labels;
  if (format == DatasetFormat::sparse) {
    std::vector<std::vector<std::pair<int, double>>> rows;
    int max_index = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      double label;
      if (!(ls >> label)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": cannot parse label");
      }
      std::vector<std::pair<int, double>> row;
      std::string tok;
      while (ls >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": expected <index>:<value>, got '" + tok + "'");
        int idx;
        double val;
        try {
          idx = std::stoi(tok.substr(0, colon));
          val = std::stod(tok.substr(colon + 1));
        } catch (const std::exception&) {
          throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": bad feature token '" + tok + "'");
        }
        if (idx < 1)
          throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": indices are 1-based");
        max_index = std::max(max_index, idx);
        row.emplace_back(idx, val);
      }
      labels.push_back(label);
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError(path + ": empty dataset file");
    int d = expected_dim > 0 ? expected_dim : max_index;
    if (max_index > d)
      throw ConfigError(path + ": feature index " + std::to_string(max_index) +
                        " exceeds declared dimension " + std::to_string(d));
    Dataset ds;
    ds.x = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), d);
    ds.y = Eigen::Map<Vector>(labels.data(),
                              static_cast<Eigen::Index>(labels.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto [idx, val] : rows[r])
        ds.x(static_cast<Eigen::Index>(r), idx - 1) = val;
    ds.validate(classification);
    return ds;
  }

  // csv with header label,f1,...,fd
  std::string header;
  if (!std::getline(in, header)) throw ConfigError(path + ": empty dataset file");
  if (header.rfind("label", 0) != 0)
    throw ConfigError(path + ":1: csv header must start with 'label'");
  int d = static_cast<int>(std::count(header.begin(), header.end(), ','));
  if (expected_dim > 0 && d != expected_dim)
    throw ConfigError(path + ": csv has " + std::to_string(d) +
                      " features, expected " + std::to_string(expected_dim));
  std::vector<double> values;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": bad numeric cell '" + cell + "'");
      }
      ++col;
    }
    if (col != d + 1)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(d + 1) + " columns, got " +
                        std::to_string(col));
  }
  auto n = static_cast<Eigen::Index>(values.size() / (d + 1));
  if (n == 0) throw ConfigError(path + ": empty dataset file");
  Dataset ds;
  ds.x.resize(n, d);
  ds.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    ds.y[r] = values[static_cast<std::size_t>(r) * (d + 1)];
    for (int j = 0; j < d; ++j)
      ds.x(r, j) = values[static_cast<std::size_t>(r) * (d + 1) + 1 + j];
  }
  ds.validate(classification);
  return ds;
}

Problem make_synthetic_logreg(int n, int d, double separability,
                              std::uint64_t seed, double s0) {
  if (n < 1 || d < 1) throw ConfigError("make_synthetic_logreg: n, d >= 1");
  rng::Stream rs(seed, rng::Purpose::problem_gen);
  Vector direction(d);
  for (int j = 0; j < d; ++j) direction[j] = rs.normal();
  direction.normalize();

  Dataset ds;
  ds.x.resize(n, d);
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) {
    double label = rs.below(2) == 0 ? -1.0 : 1.0;
    ds.y[i] = label;
    for (int j = 0; j < d; ++j)
      ds.x(i, j) = label * separability * direction[j] + rs.normal();
  }
  ds.validate(true);

  Problem p;
  p.loss = std::make_shared<LogisticLoss>(std::move(ds));
  p.reg = Regularizer{s0};
  auto ref = oracle::newton_reference(p);
  p.reference_objective = ref.objective;
  return p;
}

Problem make_random_quadratic(int n, int d, std::uint64_t seed, double s0) {
  if (n < 1 || d < 1) throw ConfigError("make_random_quadratic: n, d >= 1");
  rng::Stream rs(seed, rng::Purpose::problem_gen, 1);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rs.normal();
  Matrix a = g.transpose() * g / d + 0.5 * Matrix::Identity(d, d);
  Vector c(d);
  for (int j = 0; j < d; ++j) c[j] = rs.normal();

  Problem p;
  p.loss = std::make_shared<QuadraticLoss>(std::move(a), std::move(c), n);
  p.reg = Regularizer{s0};
  auto ref = oracle::newton_reference(p);
  p.reference_objective = ref.objective;
  return p;
}

}  // namespace pocoopt
