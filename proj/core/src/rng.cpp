#include "abf/rng.hpp"

#include <cmath>
#include <numbers>

namespace abf {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// 53-bit uniform in the open interval (0, 1).
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const {
  Key key = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<double, 2> RandomStream::uniforms(std::uint64_t pos, std::uint32_t block) const {
  const auto r = gen_(counter(pos, block));
  return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
}

void RandomStream::normals(std::uint64_t pos, std::span<double> out) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::uint32_t block = 0;
  for (std::size_t i = 0; i < out.size(); i += 2, ++block) {
    const auto u = uniforms(pos, block);
    const double radius = std::sqrt(-2.0 * std::log(u[0]));
    const double angle = two_pi * u[1];
    out[i] = radius * std::cos(angle);
    if (i + 1 < out.size()) out[i + 1] = radius * std::sin(angle);
  }
}

double SequentialStream::uniform() {
  if (uleft_ == 0) {
    ubuf_ = stream_.uniforms(pos_++);
    uleft_ = 2;
  }
  return ubuf_[2 - uleft_--];
}

double SequentialStream::normal() {
  if (nready_) {
    nready_ = false;
    return nbuf_;
  }
  double pair[2];
  stream_.normals(pos_++, pair);
  nbuf_ = pair[1];
  nready_ = true;
  return pair[0];
}

}  // namespace abf
