#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "abf/rng.hpp"

namespace abf {
namespace {

// Known-answer vectors published with the Random123 library.
TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32(0)(C{0, 0, 0, 0}), (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32(0xffffffffffffffffull)(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32(0x299f31d0a4093822ull)(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RandomStream, PureFunctionOfPosition) {
  RandomStream a(42, 3), b(42, 3);
  std::vector<double> x(5), y(5);
  a.normals(1000, x);
  b.normals(7, y);
  b.normals(1000, y);
  EXPECT_EQ(x, y);
}

TEST(RandomStream, StreamsAndSeedsDiffer) {
  std::vector<double> a(4), b(4), c(4);
  RandomStream(1, 0).normals(0, a);
  RandomStream(1, 1).normals(0, b);
  RandomStream(2, 0).normals(0, c);
  EXPECT_NE(a, b);
  EXPECT_NE(a, c);
}

TEST(RandomStream, UniformsInOpenUnitInterval) {
  RandomStream s(5, 0);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const auto u = s.uniforms(i);
    ASSERT_GT(u[0], 0.0);
    ASSERT_LT(u[0], 1.0);
    ASSERT_GT(u[1], 0.0);
    ASSERT_LT(u[1], 1.0);
  }
}

TEST(RandomStream, NormalMomentsWithinSamplingError) {
  const int n = 200000;
  std::vector<double> z(3);
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  RandomStream s(9, 0);
  for (int i = 0; i < n; ++i) {
    s.normals(static_cast<std::uint64_t>(i), z);
    for (double v : z) {
      s1 += v;
      s2 += v * v;
      s4 += v * v * v * v;
    }
  }
  const double m = 3.0 * n;
  EXPECT_NEAR(s1 / m, 0.0, 5.0 / std::sqrt(m));
  EXPECT_NEAR(s2 / m, 1.0, 5.0 * std::sqrt(2.0 / m));
  EXPECT_NEAR(s4 / m, 3.0, 5.0 * std::sqrt(96.0 / m));
}

TEST(SequentialStream, ReproducibleAndDistinct) {
  SequentialStream a(3, kInitStream), b(3, kInitStream);
  std::set<double> seen;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    ASSERT_EQ(u, b.uniform());
    seen.insert(u);
    ASSERT_EQ(a.normal(), b.normal());
  }
  EXPECT_EQ(seen.size(), 1000u);
}

}  // namespace
}  // namespace abf
