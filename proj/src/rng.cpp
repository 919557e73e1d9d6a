#include "levy2d/rng.hpp"

#include <cmath>

#include "levy2d/errors.hpp"

namespace levy2d {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t x[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
  const std::uint32_t y0 =
      static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0];
  const std::uint32_t y1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t y2 =
      static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1];
  const std::uint32_t y3 = static_cast<std::uint32_t>(p0);
  x[0] = y0;
  x[1] = y1;
  x[2] = y2;
  x[3] = y3;
}

}  // namespace

void philox4x32_block(const std::uint32_t counter[4], const std::uint32_t key[2],
                      std::uint32_t out[4]) {
  std::uint32_t x[4] = {counter[0], counter[1], counter[2], counter[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) {
    if (r != 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    round_once(x, k);
  }
  out[0] = x[0];
  out[1] = x[1];
  out[2] = x[2];
  out[3] = x[3];
}

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream) {
  key_[0] = static_cast<std::uint32_t>(seed);
  key_[1] = static_cast<std::uint32_t>(seed >> 32);
  stream_[0] = static_cast<std::uint32_t>(stream);
  stream_[1] = static_cast<std::uint32_t>(stream >> 32);
}

std::uint32_t PhiloxRng::next_u32() {
  if (left_ == 0) {
    const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  stream_[0], stream_[1]};
    philox4x32_block(ctr, key_, buf_);
    ++block_;
    left_ = 4;
  }
  return buf_[4 - left_--];
}

std::uint64_t PhiloxRng::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double PhiloxRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxRng::next_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

void PhiloxRng::gaussian_pair(double& z0, double& z1) {
  const double u1 = next_open();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

std::uint64_t poisson_count(PhiloxRng& g, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError("poisson_count needs a finite nonnegative rate");
  std::uint64_t total = 0;
  // chunks keep exp(-chunk) well above the smallest normal double
  constexpr double kChunk = 256.0;
  while (lambda > 0.0) {
    const double part = lambda > kChunk ? kChunk : lambda;
    lambda -= part;
    const double threshold = std::exp(-part);
    double prod = g.next_open();
    while (prod > threshold) {
      ++total;
      prod *= g.next_open();
    }
  }
  return total;
}

}  // namespace levy2d
