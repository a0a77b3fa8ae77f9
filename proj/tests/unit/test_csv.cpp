#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "abf/csv.hpp"
#include "abf/ensemble.hpp"
#include "abf/error.hpp"

namespace abf {
namespace {

TEST(FormatDouble, RoundTrips) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    ASSERT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Csv, ParticlesRoundTripWithHeader) {
  const auto dir = std::filesystem::temp_directory_path() / "abf_csv_test";
  std::filesystem::create_directories(dir);
  auto ens = sample_initial({}, 25, 3, Potential::v1());
  ens.step = 17;
  ens.time = 0.17;
  write_particles(dir / "p.csv", ens);
  std::ifstream in(dir / "p.csv");
  std::string header, columns;
  std::getline(in, header);
  std::getline(in, columns);
  EXPECT_EQ(header, "# abf-csv v1 particles");
  EXPECT_EQ(columns, "step,time,particle,x1,x2");
  const auto back = read_particles(dir / "p.csv", 4.0);
  EXPECT_EQ(back.positions, ens.positions);
  EXPECT_EQ(back.step, 17u);
  std::filesystem::remove_all(dir);
}

TEST(Csv, RowWidthChecked) {
  const auto path = std::filesystem::temp_directory_path() / "abf_csv_width.csv";
  CsvWriter w(path, "t", {"a", "b"});
  EXPECT_THROW(w.row({1.0}), UsageError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace abf
