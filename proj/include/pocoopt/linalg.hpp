#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <cstring>

namespace pocoopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

// FNV-1a over the little-endian byte image of the coefficients. Stable
// across runs and platforms with IEEE-754 doubles; used for parameter
// snapshots in traces.
inline std::uint64_t hash_vector(const Vector& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    double x = v[i];
    std::memcpy(&bits, &x, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace pocoopt
