#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace abf {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
/// pure function of (key, counter), so any stream can be advanced or replayed
/// without state and independently of thread scheduling.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter ctr) const;

 private:
  Key key_;
};

/// Reserved stream id for initial-condition sampling; particle n uses stream n.
inline constexpr std::uint32_t kInitStream = 0xFFFFFFFFu;

/// One independent random stream of a master seed. Counter layout:
/// words 0-1 hold a 64-bit position (e.g. step index), word 2 a block index
/// within that position, word 3 the stream id.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint32_t stream) : gen_(seed), stream_(stream) {}

  /// Fills `out` with standard normals for position `pos` (Box-Muller).
  void normals(std::uint64_t pos, std::span<double> out) const;

  /// Two uniforms in (0, 1) for position `pos` and block `block`.
  std::array<double, 2> uniforms(std::uint64_t pos, std::uint32_t block = 0) const;

  std::uint32_t id() const { return stream_; }

 private:
  Philox4x32::Counter counter(std::uint64_t pos, std::uint32_t block) const {
    return {static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(pos >> 32), block, stream_};
  }

  Philox4x32 gen_;
  std::uint32_t stream_;
};

/// Sequential view over a stream, for code that draws an unknown number of
/// variates (rejection sampling).
class SequentialStream {
 public:
  SequentialStream(std::uint64_t seed, std::uint32_t stream) : stream_(seed, stream) {}

  double uniform();
  double normal();

 private:
  RandomStream stream_;
  std::uint64_t pos_ = 0;
  std::array<double, 2> ubuf_{};
  int uleft_ = 0;
  double nbuf_ = 0.0;
  bool nready_ = false;
};

}  // namespace abf
