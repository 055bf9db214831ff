#pragma once

#include <cstdint>
#include <vector>

namespace pocoopt::rng {

// Purpose tags for the named substreams. Every optimizer draws sampling
// noise, data order and mega-batch choices from separate streams, so a run
// is bit-reproducible and each substream can be replayed on its own.
enum class Purpose : std::uint64_t {
  init = 1,
  noise_in = 2,
  noise_out = 3,
  data_order = 4,
  mega_batch = 5,
  problem_gen = 6,
  generic = 7,
};

std::uint64_t mix64(std::uint64_t z);

// Counter-based generator: output i is a pure function of
// (seed, purpose, key1, key2, i). Streams with different keys never
// interact, so adding a draw to one stream cannot shift another.
class Stream {
 public:
  Stream(std::uint64_t seed, Purpose purpose, std::uint64_t key1 = 0,
         std::uint64_t key2 = 0);

  std::uint64_t next_u64();
  double uniform();  // (0, 1)
  // Standard normal via Box-Muller; consumes two counter positions.
  // Returns 0 when the stream is in zero-noise mode.
  double normal();
  // Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

  std::vector<double> normal_vec(int d);

  // Zero-noise mode models the delta-method reduction (epsilon = 0).
  void set_zero_noise(bool z) { zero_noise_ = z; }
  bool zero_noise() const { return zero_noise_; }

 private:
  std::uint64_t state_;
  std::uint64_t ctr_ = 0;
  bool zero_noise_ = false;
};

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
void shuffle(std::vector<int>& idx, Stream& rs);

// k distinct indices from [0, n), order of selection; k <= n.
std::vector<int> sample_without_replacement(int n, int k, Stream& rs);

}  // namespace pocoopt::rng
