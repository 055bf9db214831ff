#include "pocoopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pocoopt::rng {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

Stream::Stream(std::uint64_t seed, Purpose purpose, std::uint64_t key1,
               std::uint64_t key2) {
  std::uint64_t s = mix64(seed + kGamma);
  s = mix64(s ^ (static_cast<std::uint64_t>(purpose) * 0xda942042e4dd58b5ULL));
  s = mix64(s ^ (key1 * 0xd6e8feb86659fd93ULL));
  s = mix64(s ^ (key2 * 0xa0761d6478bd642fULL));
  state_ = s;
}

std::uint64_t Stream::next_u64() { return mix64(state_ + (++ctr_) * kGamma); }

double Stream::uniform() {
  // 53-bit mantissa, strictly inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  if (zero_noise_) return 0.0;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Stream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Stream::below: n must be >= 1");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::vector<double> Stream::normal_vec(int d) {
  std::vector<double> v(static_cast<std::size_t>(d));
  for (auto& x : v) x = normal();
  return v;
}

void shuffle(std::vector<int>& idx, Stream& rs) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rs.below(i));
    std::swap(idx[i - 1], idx[j]);
  }
}

std::vector<int> sample_without_replacement(int n, int k, Stream& rs) {
  if (k > n)
    throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: first k entries after k swaps.
  for (int i = 0; i < k; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rs.below(
                        static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace pocoopt::rng
