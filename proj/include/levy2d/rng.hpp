#pragma once

#include <cstdint>

namespace levy2d {

// One Philox 4x32 block, ten rounds: counter and key in, four words out.
// Pure function of its arguments, no state.
void philox4x32_block(const std::uint32_t counter[4], const std::uint32_t key[2],
                      std::uint32_t out[4]);

// Counter-based stream keyed by (seed, stream). Streams with distinct keys
// or stream ids are independent, so paths can be generated in any order or
// thread without changing their draws.
class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();  // [0, 1)
  double next_open();  // (0, 1), safe under log
  // Box-Muller pair, standard normal
  void gaussian_pair(double& z0, double& z1);

 private:
  std::uint32_t key_[2];
  std::uint32_t stream_[2];
  std::uint64_t block_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int left_ = 0;
};

// Poisson draw by uniform products, split into bounded chunks so the
// product threshold exp(-lambda) stays in normal double range.
std::uint64_t poisson_count(PhiloxRng& g, double lambda);

}  // namespace levy2d
