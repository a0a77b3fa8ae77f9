#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "abf/ensemble.hpp"
#include "abf/profile.hpp"

namespace abf {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// CSV writer. The first line is a schema comment "# abf-csv v<version> <schema>".
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& schema, const std::vector<std::string>& columns);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

/// Columns step,time,particle,x1,x2,...
void write_particles(const std::filesystem::path& path, const ParticleEnsemble& ens);
/// Appends a snapshot to an open particle writer.
void append_particles(CsvWriter& writer, const ParticleEnsemble& ens);
std::vector<std::string> particle_columns(std::size_t dimension);

/// Columns z,<names...> for one or more profiles on the same grid.
void write_profiles(const std::filesystem::path& path, const std::string& schema,
                    const std::vector<std::string>& names, const std::vector<const MeanForceProfile*>& profiles);

/// Reads a particle CSV written by write_particles (last snapshot only).
ParticleEnsemble read_particles(const std::filesystem::path& path, double period);

}  // namespace abf
